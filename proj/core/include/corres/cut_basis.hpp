/*
 * cut_basis.hpp
 *
 * Minimum cut bases: |P|-1 minimum P_s-P_t cuts of P assembled into a
 * flow-equivalent tree by the Gusfield scheme over any min s-t cut solver,
 * and the analogous basis of the edge-weighted bipartite graph on
 * P together with P', whose cuts are correspondences with at least one
 * nontrivial side.
 */
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <corres/objective.hpp>
#include <corres/partition.hpp>
#include <corres/solver.hpp>

namespace corres {

struct BasisCut {
    std::size_t node = 0;   // part whose tree edge this cut realizes
    std::size_t parent = 0; // its tree parent at solve time
    MinCutResult result;
};

struct CutBasis {
    Constraint constraint = Constraint::CP;
    SolverKind solver = SolverKind::BnB;
    std::vector<BasisCut> cuts;          // for nodes 1..|P|-1, in order
    std::vector<std::size_t> parent;     // per part; parent[0] == 0
    std::vector<weight_t> edge_weight;   // per part; entry 0 unused
    SolveStats stats;                    // summed over all solves
};

/// Gusfield scheme: start from a star rooted at part 0; for each part i
/// solve a minimum cut against its current parent and re-parent every
/// later part that was attached to the parent but lies on i's side.
/// With the greedy solver the values are upper bounds. A CM-infeasible
/// pair yields a cut with status Infeasible, an empty side and value 0.
CutBasis cut_basis(const ContingencyTable &t, Constraint constraint, SolverKind solver,
                   const SolverConfig &cfg = {});

/// Minimum edge weight on the tree path between two parts. Equals the
/// minimum a-b cut value by flow equivalence.
weight_t tree_path_min(const CutBasis &basis, std::size_t a, std::size_t b);

/// Exact rational, reduced.
struct Ratio {
    weight_t num = 0;
    weight_t den = 1;
    double value() const { return den == 0 ? 0.0 : double(num) / double(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Sum of the basis cut values divided by the total ground-set weight.
Ratio total_dissimilarity(const CutBasis &basis, const ContingencyTable &t);

/// The edge-weighted bipartite graph on P joined with P': one node per
/// part of either partition, an edge {P_i, P'_j} of weight n[i][j] for
/// every nonzero table entry.
struct BipartiteGraph {
    std::size_t n_left = 0, n_right = 0;
    struct Edge {
        std::size_t u, v;
        weight_t w;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<weight_t>> capacity; // dense, symmetric

    std::size_t size() const { return n_left + n_right; }
    static BipartiteGraph from_table(const ContingencyTable &t);
};

/// Exact min s-t cut by maximum flow with shortest augmenting paths.
/// Returns the src-side node set and the cut weight.
std::pair<std::vector<bool>, weight_t>
min_st_cut_graph(const BipartiteGraph &g, std::size_t src, std::size_t dst);

struct BipartiteBasis {
    std::vector<std::size_t> node;       // graph node of each cut, in order
    std::vector<Correspondence> correspondences;
    std::vector<std::size_t> parent;     // per graph node; parent[0] == 0
    std::vector<weight_t> edge_weight;   // per graph node; entry 0 unused
};

/// Gusfield scheme on the bipartite graph; every one of the
/// |P|+|P'|-1 cuts (S joined with S', complement) is returned as the
/// correspondence (S, S'), whose phi value equals the cut weight.
BipartiteBasis bipartite_basis(const ContingencyTable &t);

weight_t tree_path_min(const BipartiteBasis &basis, std::size_t a, std::size_t b);

/// Diagnostic only: all pairwise cut values from independent solves, run
/// on up to `threads` concurrent workers. CM-infeasible pairs yield -1.
std::vector<std::vector<weight_t>>
all_pairs_cut_values(const ContingencyTable &t, Constraint constraint, SolverKind solver,
                     const SolverConfig &cfg = {}, unsigned threads = 1);

} // namespace corres
