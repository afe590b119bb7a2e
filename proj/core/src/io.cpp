#include <corres/io.hpp>

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace corres {

namespace {

using nlohmann::json;

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

[[noreturn]] void fail(std::string_view origin, std::size_t line_no, const std::string &msg) {
    std::ostringstream os;
    os << origin << ":" << line_no << ": " << msg;
    throw ParseError(os.str());
}

json labels_of(const PartSet &s, const std::vector<std::string> &names) {
    json out = json::array();
    s.for_each([&](std::size_t i) { out.push_back(names[i]); });
    return out;
}

json stats_json(const SolveStats &stats, bool timings) {
    json out{{"nodes", stats.nodes}, {"backtracks", stats.backtracks}};
    if (timings)
        out["wall_ms"] = stats.wall_ms;
    return out;
}

json meta_json(const DocumentMeta &meta) {
    json out{{"input_a", meta.input_a},
             {"input_b", meta.input_b},
             {"intersect", meta.intersect}};
    if (!meta.constraint.empty())
        out["constraint"] = meta.constraint;
    if (!meta.solver.empty())
        out["solver"] = meta.solver;
    if (meta.time_limit_s)
        out["time_limit_s"] = *meta.time_limit_s;
    out["early_exit"] = meta.early_exit;
    return out;
}

json cut_json(const MinCutResult &res, const ContingencyTable &t) {
    json out;
    out["s_side"] = labels_of(res.s_side, t.row_names);
    out["partner"] = labels_of(res.partner, t.col_names);
    if (res.s_side.empty())
        out["value"] = nullptr;
    else
        out["value"] = res.value;
    out["mutual"] = !res.s_side.empty() && is_mutual(res.s_side, res.partner, t);
    out["status"] = to_string(res.status);
    return out;
}

std::string dump(const json &doc) { return doc.dump(2) + "\n"; }

} // namespace

Partition parse_partition_text(std::string_view text, std::string_view origin) {
    std::vector<std::pair<std::string, weight_t>> items;
    std::vector<std::string> element_labels;
    std::unordered_map<std::string, std::size_t> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#')
            continue;

        const auto fields = split_tabs(line);
        if (fields.size() < 2 || fields.size() > 3)
            fail(origin, line_no, "expected element<TAB>label[<TAB>weight]");
        if (fields[0].empty() || fields[1].empty())
            fail(origin, line_no, "empty element or label");
        const std::string element(fields[0]);
        if (!seen.emplace(element, line_no).second)
            fail(origin, line_no, "duplicate element '" + element + "'");

        weight_t weight = 1;
        if (fields.size() == 3) {
            try {
                std::size_t used = 0;
                weight = std::stoll(std::string(fields[2]), &used);
                if (used != fields[2].size())
                    throw std::invalid_argument("");
            } catch (const std::exception &) {
                fail(origin, line_no, "malformed weight '" + std::string(fields[2]) + "'");
            }
            if (weight < 0)
                fail(origin, line_no, "negative weight");
        }
        items.emplace_back(element, weight);
        element_labels.emplace_back(fields[1]);
    }
    if (items.empty())
        throw ParseError(std::string(origin) + ": no elements");

    auto ground = make_ground_set(items);
    std::unordered_map<std::string, std::string> assignment;
    assignment.reserve(items.size());
    for (std::size_t e = 0; e < items.size(); ++e)
        assignment.emplace(items[e].first, element_labels[e]);
    return build_partition(std::move(ground), assignment);
}

Partition parse_partition_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_partition_text(buf.str(), path);
}

std::string serialize_partition_tsv(const Partition &p) {
    std::ostringstream os;
    for (std::size_t e = 0; e < p.ground->size(); ++e)
        os << p.ground->elements[e] << '\t' << p.part_names[p.labels[e]] << '\t'
           << p.ground->weights[e] << '\n';
    return os.str();
}

std::string basis_document(const CutBasis &basis, const ContingencyTable &t,
                           const DocumentMeta &meta) {
    return basis_document(basis, t, meta, nullptr);
}

std::string basis_document(const CutBasis &basis, const ContingencyTable &t,
                           const DocumentMeta &meta,
                           const std::vector<std::vector<weight_t>> *all_pairs) {
    json doc;
    doc["metadata"] = meta_json(meta);
    doc["constraint"] = to_string(basis.constraint);
    doc["solver"] = to_string(basis.solver);
    doc["cuts"] = json::array();
    for (const auto &cut : basis.cuts)
        doc["cuts"].push_back(cut_json(cut.result, t));
    doc["tree"] = json::array();
    for (const auto &cut : basis.cuts)
        doc["tree"].push_back(json{{"node", t.row_names[cut.node]},
                                   {"parent", t.row_names[cut.parent]},
                                   {"weight", cut.result.value}});
    const Ratio total = total_dissimilarity(basis, t);
    doc["total_dissimilarity"] = json{{"fraction", total.str()}, {"decimal", total.value()}};
    doc["stats"] = stats_json(basis.stats, meta.timings);
    if (all_pairs)
        doc["all_pairs"] = *all_pairs;
    return dump(doc);
}

std::string mincut_document(const MinCutResult &res, const ContingencyTable &t,
                            const DocumentMeta &meta) {
    json doc;
    doc["metadata"] = meta_json(meta);
    doc["constraint"] = meta.constraint;
    doc["solver"] = meta.solver;
    doc["cuts"] = json::array({cut_json(res, t)});
    doc["stats"] = stats_json(res.stats, meta.timings);
    return dump(doc);
}

std::string partner_document(const PartSet &s, const PartSet &partner, weight_t value,
                             bool mutual, const ContingencyTable &t,
                             const DocumentMeta &meta) {
    json doc;
    doc["metadata"] = meta_json(meta);
    doc["s_side"] = labels_of(s, t.row_names);
    doc["partner"] = labels_of(partner, t.col_names);
    doc["value"] = value;
    doc["mutual"] = mutual;
    return dump(doc);
}

std::string cv_basis_document(const BipartiteBasis &basis, const ContingencyTable &t,
                              const DocumentMeta &meta) {
    const auto node_name = [&](std::size_t v) {
        return v < t.rows ? "A:" + t.row_names[v] : "B:" + t.col_names[v - t.rows];
    };
    json doc;
    doc["metadata"] = meta_json(meta);
    doc["constraint"] = "cv";
    doc["solver"] = "maxflow";
    doc["cuts"] = json::array();
    for (const auto &corr : basis.correspondences) {
        json cut;
        cut["s_side"] = labels_of(corr.s, t.row_names);
        cut["partner"] = labels_of(corr.s_prime, t.col_names);
        cut["value"] = corr.value;
        cut["mutual"] = corr.mutual;
        cut["status"] = "optimal";
        doc["cuts"].push_back(std::move(cut));
    }
    doc["tree"] = json::array();
    for (std::size_t idx = 0; idx < basis.node.size(); ++idx) {
        const std::size_t v = basis.node[idx];
        doc["tree"].push_back(json{{"node", node_name(v)},
                                   {"parent", node_name(basis.parent[v])},
                                   {"weight", basis.edge_weight[v]}});
    }
    weight_t sum = 0;
    for (const auto &corr : basis.correspondences)
        sum += corr.value;
    Ratio total{sum, t.total};
    const weight_t g = std::gcd(total.num, total.den);
    if (g > 1) {
        total.num /= g;
        total.den /= g;
    }
    doc["total_dissimilarity"] = json{{"fraction", total.str()}, {"decimal", total.value()}};
    return dump(doc);
}

std::string emit_dot(const CutBasis &basis, const ContingencyTable &t) {
    std::ostringstream os;
    os << "graph mincut_basis {\n";
    for (const auto &cut : basis.cuts)
        os << "  \"" << t.row_names[cut.node] << "\" -- \"" << t.row_names[cut.parent]
           << "\" [label=\"" << cut.result.value << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string format_table_tsv(const ContingencyTable &t) {
    std::ostringstream os;
    for (std::size_t j = 0; j < t.cols; ++j)
        os << '\t' << t.col_names[j];
    os << "\ttotal\n";
    for (std::size_t i = 0; i < t.rows; ++i) {
        os << t.row_names[i];
        for (std::size_t j = 0; j < t.cols; ++j)
            os << '\t' << t.at(i, j);
        os << '\t' << t.row_sums[i] << '\n';
    }
    os << "total";
    for (std::size_t j = 0; j < t.cols; ++j)
        os << '\t' << t.col_sums[j];
    os << '\t' << t.total << '\n';
    return os.str();
}

} // namespace corres
