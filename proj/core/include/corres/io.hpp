/*
 * io.hpp
 *
 * File ingestion and result serialization. Input partitions are labels-TSV:
 * one `element<TAB>label` or `element<TAB>label<TAB>weight` row per line,
 * `#` starts a comment, missing weights default to 1. Results are emitted
 * as JSON text with stable key names, plus a DOT rendering of basis trees.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <corres/cut_basis.hpp>
#include <corres/partition.hpp>
#include <corres/solver.hpp>

namespace corres {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses labels-TSV text; `origin` names the source in error messages.
/// Throws ParseError with a line number on duplicate elements, malformed
/// lines and negative weights.
Partition parse_partition_text(std::string_view text, std::string_view origin);

/// Reads and parses a labels-TSV file.
Partition parse_partition_file(const std::string &path);

/// The inverse of parsing: one `element<TAB>label<TAB>weight` row per
/// element, in ground-set order.
std::string serialize_partition_tsv(const Partition &p);

/// Run parameters echoed into every result document.
struct DocumentMeta {
    std::string input_a, input_b;
    bool intersect = false;
    std::string constraint, solver;
    std::optional<double> time_limit_s;
    bool early_exit = true;
    bool timings = false; // include wall-clock times (breaks byte stability)
};

/// JSON for a full cut basis: metadata, one entry per cut (s_side labels,
/// partner labels, value, mutual, status), the tree edges, the exact total
/// dissimilarity as fraction and decimal, and aggregated search stats.
std::string basis_document(const CutBasis &basis, const ContingencyTable &t,
                           const DocumentMeta &meta);

/// Same document shape with the optional all-pairs diagnostic matrix.
std::string basis_document(const CutBasis &basis, const ContingencyTable &t,
                           const DocumentMeta &meta,
                           const std::vector<std::vector<weight_t>> *all_pairs);

/// JSON for a single min cut.
std::string mincut_document(const MinCutResult &res, const ContingencyTable &t,
                            const DocumentMeta &meta);

/// JSON for an optimal partner query.
std::string partner_document(const PartSet &s, const PartSet &partner, weight_t value,
                             bool mutual, const ContingencyTable &t,
                             const DocumentMeta &meta);

/// JSON for the bipartite basis; node names are prefixed "A:" / "B:" to
/// keep the two partitions apart.
std::string cv_basis_document(const BipartiteBasis &basis, const ContingencyTable &t,
                              const DocumentMeta &meta);

/// The basis tree as an undirected DOT graph; node names are the original
/// part labels, edge labels the cut values.
std::string emit_dot(const CutBasis &basis, const ContingencyTable &t);

/// The contingency table as TSV with row/column labels and totals.
std::string format_table_tsv(const ContingencyTable &t);

} // namespace corres
