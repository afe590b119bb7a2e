/*
 * Exhaustive reference computations straight from the definitions. All
 * minima are taken by enumerating subsets of both partitions; nothing here
 * uses the library's analytic shortcuts, partner rules or bounds.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <corres/partition.hpp>
#include <corres/solver.hpp>

namespace corres::testing {

class EnumOracle {
public:
    using mask_t = std::uint32_t;

    explicit EnumOracle(const corres::ContingencyTable &t); // rows, cols <= 14

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mask_t full_s() const { return (mask_t{1} << rows_) - 1; }
    mask_t full_sp() const { return (mask_t{1} << cols_) - 1; }

    /// |U_S symdiff U_S'| from the table entries.
    corres::weight_t phi(mask_t s, mask_t s_prime) const;

    /// min over all S' (enumerated).
    corres::weight_t phi_min(mask_t s) const { return phi_min_[s]; }

    /// min over nontrivial S'; 0 for trivial S.
    corres::weight_t phi_star(mask_t s) const { return phi_star_[s]; }

    /// Some S' satisfying all four mutuality conditions exists.
    bool mutual_exists(mask_t s) const { return mutual_[s]; }

    bool is_mutual(mask_t s, mask_t s_prime) const;

    /// Minimum over all cuts separating a from b; nullopt when no feasible
    /// cut exists (CM only).
    std::optional<corres::weight_t> min_cut(std::size_t a, std::size_t b,
                                            corres::Constraint c) const;

    std::span<const corres::weight_t> overlaps(mask_t s) const {
        return {overlap_.data() + std::size_t{s} * cols_, cols_};
    }

private:
    std::size_t rows_, cols_;
    std::vector<corres::weight_t> row_sums_, col_sums_;
    std::vector<corres::weight_t> overlap_;  // [s * cols + j]
    std::vector<corres::weight_t> coverage_; // [s_prime * rows + i]
    std::vector<corres::weight_t> phi_min_, phi_star_;
    std::vector<bool> mutual_;
};

/// |U_S symdiff U_S'| by scanning the ground set of two partitions.
corres::weight_t element_phi(const corres::Partition &a, const corres::Partition &b,
                             EnumOracle::mask_t s, EnumOracle::mask_t s_prime);

} // namespace corres::testing
