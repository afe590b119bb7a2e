#include <corres/partition.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace corres {

namespace {

// Doubled weights and sums of cut values must stay inside 64 bits.
constexpr weight_t kMaxTotalWeight = std::numeric_limits<weight_t>::max() / 4;

} // namespace

std::shared_ptr<const GroundSet>
make_ground_set(const std::vector<std::pair<std::string, weight_t>> &items) {
    auto g = std::make_shared<GroundSet>();
    g->elements.reserve(items.size());
    g->weights.reserve(items.size());
    for (const auto &[id, w] : items) {
        if (w < 0)
            throw std::invalid_argument("negative weight for element '" + id + "'");
        if (!g->index_of.emplace(id, g->elements.size()).second)
            throw std::invalid_argument("duplicate element '" + id + "'");
        g->elements.push_back(id);
        g->weights.push_back(w);
        if (w > kMaxTotalWeight - g->total_weight)
            throw std::invalid_argument("total weight too large");
        g->total_weight += w;
    }
    return g;
}

std::shared_ptr<const GroundSet> make_unit_ground_set(const std::vector<std::string> &ids) {
    std::vector<std::pair<std::string, weight_t>> items;
    items.reserve(ids.size());
    for (const auto &id : ids)
        items.emplace_back(id, 1);
    return make_ground_set(items);
}

Partition build_partition(std::shared_ptr<const GroundSet> ground,
                          const std::unordered_map<std::string, std::string> &assignment) {
    if (!ground)
        throw std::invalid_argument("null ground set");
    for (const auto &[id, label] : assignment) {
        (void)label;
        if (!ground->index_of.count(id))
            throw std::invalid_argument("assignment mentions unknown element '" + id + "'");
    }

    Partition p;
    p.ground = std::move(ground);
    p.labels.resize(p.ground->size());
    std::unordered_map<std::string, std::size_t> part_index;
    for (std::size_t e = 0; e < p.ground->size(); ++e) {
        const auto it = assignment.find(p.ground->elements[e]);
        if (it == assignment.end())
            throw std::invalid_argument("element '" + p.ground->elements[e] +
                                        "' missing from assignment");
        auto [pit, inserted] = part_index.emplace(it->second, p.part_names.size());
        if (inserted) {
            p.part_names.push_back(it->second);
            p.part_weights.push_back(0);
        }
        p.labels[e] = pit->second;
        p.part_weights[pit->second] += p.ground->weights[e];
    }
    p.k = p.part_names.size();
    return p;
}

Partition make_partition(std::shared_ptr<const GroundSet> ground,
                         std::vector<std::size_t> labels,
                         std::vector<std::string> part_names) {
    if (!ground || labels.size() != ground->size())
        throw std::invalid_argument("label vector does not match ground set");
    Partition p;
    p.ground = std::move(ground);
    p.k = part_names.size();
    p.part_names = std::move(part_names);
    p.labels = std::move(labels);
    p.part_weights.assign(p.k, 0);
    std::vector<bool> seen(p.k, false);
    for (std::size_t e = 0; e < p.labels.size(); ++e) {
        if (p.labels[e] >= p.k)
            throw std::invalid_argument("part index out of range");
        p.part_weights[p.labels[e]] += p.ground->weights[e];
        seen[p.labels[e]] = true;
    }
    for (std::size_t i = 0; i < p.k; ++i)
        if (!seen[i])
            throw std::invalid_argument("empty part '" + p.part_names[i] + "'");
    return p;
}

namespace {

Partition restrict_to(const Partition &p, const std::shared_ptr<const GroundSet> &w) {
    // Keep surviving parts in their original relative order.
    std::vector<std::size_t> new_index(p.k, SIZE_MAX);
    std::vector<std::size_t> labels(w->size());
    std::vector<bool> seen(p.k, false);
    for (std::size_t e = 0; e < w->size(); ++e)
        seen[p.labels[p.ground->index_of.at(w->elements[e])]] = true;

    std::vector<std::string> names;
    for (std::size_t i = 0; i < p.k; ++i) {
        if (seen[i]) {
            new_index[i] = names.size();
            names.push_back(p.part_names[i]);
        }
    }
    for (std::size_t e = 0; e < w->size(); ++e)
        labels[e] = new_index[p.labels[p.ground->index_of.at(w->elements[e])]];
    return make_partition(w, std::move(labels), std::move(names));
}

} // namespace

std::pair<Partition, Partition> intersect_ground(const Partition &a, const Partition &b) {
    std::vector<std::pair<std::string, weight_t>> common;
    for (std::size_t e = 0; e < a.ground->size(); ++e) {
        const auto &id = a.ground->elements[e];
        const auto it = b.ground->index_of.find(id);
        if (it == b.ground->index_of.end())
            continue;
        if (b.ground->weights[it->second] != a.ground->weights[e])
            throw std::runtime_error("element '" + id + "' has conflicting weights");
        common.emplace_back(id, a.ground->weights[e]);
    }
    if (common.empty())
        throw std::runtime_error("empty intersection of ground sets");
    auto w = make_ground_set(common);
    return {restrict_to(a, w), restrict_to(b, w)};
}

std::pair<Partition, Partition> align_partitions(const Partition &a, const Partition &b) {
    if (a.ground == b.ground || *a.ground == *b.ground)
        return {a, b};
    if (a.ground->size() != b.ground->size())
        throw std::runtime_error("ground sets differ (use intersection)");
    std::vector<std::size_t> labels(a.ground->size());
    for (std::size_t e = 0; e < a.ground->size(); ++e) {
        const auto it = b.ground->index_of.find(a.ground->elements[e]);
        if (it == b.ground->index_of.end())
            throw std::runtime_error("ground sets differ (use intersection)");
        if (b.ground->weights[it->second] != a.ground->weights[e])
            throw std::runtime_error("element '" + a.ground->elements[e] +
                                     "' has conflicting weights");
        labels[e] = b.labels[it->second];
    }
    Partition nb = make_partition(a.ground, std::move(labels), b.part_names);
    return {a, nb};
}

ContingencyTable build_contingency(const Partition &a, const Partition &b) {
    if (a.ground != b.ground && !(*a.ground == *b.ground))
        throw std::invalid_argument("partitions are over different ground sets");

    ContingencyTable t;
    t.rows = a.k;
    t.cols = b.k;
    t.cells.assign(t.rows * t.cols, 0);
    t.row_names = a.part_names;
    t.col_names = b.part_names;
    for (std::size_t e = 0; e < a.ground->size(); ++e)
        t.cells[a.labels[e] * t.cols + b.labels[e]] += a.ground->weights[e];

    t.row_sums.assign(t.rows, 0);
    t.col_sums.assign(t.cols, 0);
    for (std::size_t i = 0; i < t.rows; ++i)
        for (std::size_t j = 0; j < t.cols; ++j) {
            t.row_sums[i] += t.at(i, j);
            t.col_sums[j] += t.at(i, j);
            t.total += t.at(i, j);
        }
    return t;
}

ContingencyTable make_table(const std::vector<std::vector<weight_t>> &cells,
                            std::vector<std::string> row_names,
                            std::vector<std::string> col_names) {
    if (cells.empty() || cells.front().empty())
        throw std::invalid_argument("empty contingency matrix");
    ContingencyTable t;
    t.rows = cells.size();
    t.cols = cells.front().size();
    for (const auto &r : cells)
        if (r.size() != t.cols)
            throw std::invalid_argument("ragged contingency matrix");
    t.cells.reserve(t.rows * t.cols);
    for (const auto &r : cells)
        for (weight_t v : r) {
            if (v < 0)
                throw std::invalid_argument("negative table entry");
            t.cells.push_back(v);
        }
    t.row_sums.assign(t.rows, 0);
    t.col_sums.assign(t.cols, 0);
    for (std::size_t i = 0; i < t.rows; ++i)
        for (std::size_t j = 0; j < t.cols; ++j) {
            t.row_sums[i] += t.at(i, j);
            t.col_sums[j] += t.at(i, j);
            t.total += t.at(i, j);
        }
    t.row_names.resize(t.rows);
    t.col_names.resize(t.cols);
    for (std::size_t i = 0; i < t.rows; ++i)
        t.row_names[i] = i < row_names.size() ? row_names[i] : std::to_string(i);
    for (std::size_t j = 0; j < t.cols; ++j)
        t.col_names[j] = j < col_names.size() ? col_names[j] : std::to_string(j);
    return t;
}

PartSet PartSet::full(std::size_t universe) {
    PartSet s(universe);
    for (std::size_t i = 0; i < universe; ++i)
        s.add(i);
    return s;
}

PartSet PartSet::of(std::size_t universe, std::initializer_list<std::size_t> indices) {
    PartSet s(universe);
    for (std::size_t i : indices)
        s.add(i);
    return s;
}

PartSet PartSet::complement() const {
    PartSet c(universe_);
    for (std::size_t i = 0; i < universe_; ++i)
        if (!contains(i))
            c.add(i);
    return c;
}

std::vector<std::size_t> PartSet::indices() const {
    std::vector<std::size_t> out;
    out.reserve(count_);
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
}

OverlapProfile::OverlapProfile(const ContingencyTable &t, Axis axis)
    : table_(&t), axis_(axis),
      overlap_(axis == Axis::Rows ? t.cols : t.rows, 0) {}

void OverlapProfile::add(std::size_t part) {
    if (axis_ == Axis::Rows) {
        union_weight_ += table_->row_sums[part];
        const auto r = table_->row(part);
        for (std::size_t j = 0; j < overlap_.size(); ++j)
            overlap_[j] += r[j];
    } else {
        union_weight_ += table_->col_sums[part];
        for (std::size_t i = 0; i < overlap_.size(); ++i)
            overlap_[i] += table_->at(i, part);
    }
}

void OverlapProfile::remove(std::size_t part) {
    if (axis_ == Axis::Rows) {
        union_weight_ -= table_->row_sums[part];
        const auto r = table_->row(part);
        for (std::size_t j = 0; j < overlap_.size(); ++j)
            overlap_[j] -= r[j];
    } else {
        union_weight_ -= table_->col_sums[part];
        for (std::size_t i = 0; i < overlap_.size(); ++i)
            overlap_[i] -= table_->at(i, part);
    }
}

OverlapProfile profile_of(const PartSet &s, const ContingencyTable &t, Axis axis) {
    OverlapProfile p(t, axis);
    s.for_each([&](std::size_t i) { p.add(i); });
    return p;
}

} // namespace corres
