/*
 * partition.hpp
 *
 * Ground sets, partitions over them, contingency tables and subsets of
 * part indices. Everything here is immutable after construction except
 * PartSet and OverlapProfile, which are per-task values.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace corres {

/// Element weights and all derived quantities are exact 64-bit integers.
using weight_t = std::int64_t;

/// A weighted set of uniquely named elements.
struct GroundSet {
    std::vector<std::string> elements;
    std::vector<weight_t> weights;
    weight_t total_weight = 0;
    std::unordered_map<std::string, std::size_t> index_of;

    std::size_t size() const { return elements.size(); }

    friend bool operator==(const GroundSet &a, const GroundSet &b) {
        return a.elements == b.elements && a.weights == b.weights;
    }
};

/// Builds a ground set from (element, weight) pairs, keeping the given order.
/// Throws std::invalid_argument on duplicate ids or negative weights.
std::shared_ptr<const GroundSet>
make_ground_set(const std::vector<std::pair<std::string, weight_t>> &items);

/// Unit-weight convenience.
std::shared_ptr<const GroundSet> make_unit_ground_set(const std::vector<std::string> &ids);

/// A partition of a ground set into k nonempty parts with dense indices
/// 0..k-1. Original part labels are kept for reporting.
struct Partition {
    std::shared_ptr<const GroundSet> ground;
    std::vector<std::size_t> labels; // per element
    std::vector<weight_t> part_weights;
    std::vector<std::string> part_names;
    std::size_t k = 0;
};

/// Builds a partition from an element -> label assignment. Part indices are
/// assigned 0..k-1 in order of first appearance (element order of the ground
/// set). Throws if an element of the ground set is missing from the
/// assignment or if the assignment mentions unknown elements.
Partition build_partition(std::shared_ptr<const GroundSet> ground,
                          const std::unordered_map<std::string, std::string> &assignment);

/// Low-level constructor from a dense label vector (one entry per element).
/// Validates that all indices 0..k-1 occur.
Partition make_partition(std::shared_ptr<const GroundSet> ground,
                         std::vector<std::size_t> labels,
                         std::vector<std::string> part_names);

/// Restricts both partitions to the common element set W, drops parts that
/// become empty and re-densifies part indices (surviving parts keep their
/// relative order). Throws if W is empty or the inputs disagree on the
/// weight of a common element.
std::pair<Partition, Partition> intersect_ground(const Partition &a, const Partition &b);

/// Rebuilds b over a's ground set if the two grounds hold the same elements
/// and weights (element order may differ). Throws otherwise; callers with
/// genuinely different element sets should use intersect_ground.
std::pair<Partition, Partition> align_partitions(const Partition &a, const Partition &b);

/// The |P| x |P'| matrix of intersection weights together with its
/// marginals. Column j equals the distribution of P'_j over the parts of P.
struct ContingencyTable {
    std::size_t rows = 0, cols = 0;
    std::vector<weight_t> cells; // row-major
    std::vector<weight_t> row_sums, col_sums;
    weight_t total = 0;
    std::vector<std::string> row_names, col_names;

    weight_t at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
    std::span<const weight_t> row(std::size_t i) const {
        return {cells.data() + i * cols, cols};
    }
};

/// Fills the table in one traversal of the ground set. Both partitions must
/// be over the same ground set (same object or equal content).
ContingencyTable build_contingency(const Partition &a, const Partition &b);

/// Direct construction from a dense matrix; names default to "0", "1", ...
ContingencyTable make_table(const std::vector<std::vector<weight_t>> &cells,
                            std::vector<std::string> row_names = {},
                            std::vector<std::string> col_names = {});

/// A subset of the part indices of one partition, stored as a bitmask.
class PartSet {
public:
    PartSet() = default;
    explicit PartSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    static PartSet full(std::size_t universe);
    static PartSet of(std::size_t universe, std::initializer_list<std::size_t> indices);

    std::size_t universe() const { return universe_; }
    std::size_t count() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool is_full() const { return count_ == universe_; }

    bool contains(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void add(std::size_t i) {
        std::uint64_t &w = words_[i >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }
    void remove(std::size_t i) {
        std::uint64_t &w = words_[i >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (w & bit) {
            w &= ~bit;
            --count_;
        }
    }

    PartSet complement() const;
    std::vector<std::size_t> indices() const;

    template <class F> void for_each(F &&f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = __builtin_ctzll(bits);
                f(w * 64 + static_cast<std::size_t>(b));
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const PartSet &a, const PartSet &b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

private:
    std::size_t universe_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Which axis of the table a set lives on: Rows means a subset of P whose
/// overlaps are taken against the parts of P', Cols the other way round.
enum class Axis { Rows, Cols };

/// Incrementally maintained union weight |U_S| and overlap vector
/// (|U_S ∩ P'_j|)_j of a part subset against a fixed table.
class OverlapProfile {
public:
    OverlapProfile(const ContingencyTable &t, Axis axis);
    OverlapProfile(const ContingencyTable &&, Axis) = delete; // keeps a reference

    void add(std::size_t part);
    void remove(std::size_t part);

    weight_t union_weight() const { return union_weight_; }
    std::span<const weight_t> overlaps() const { return overlap_; }
    Axis axis() const { return axis_; }
    const ContingencyTable &table() const { return *table_; }

private:
    const ContingencyTable *table_;
    Axis axis_;
    weight_t union_weight_ = 0;
    std::vector<weight_t> overlap_;
};

/// Fresh profile of a given set (recomputes from the table).
OverlapProfile profile_of(const PartSet &s, const ContingencyTable &t, Axis axis);

} // namespace corres
