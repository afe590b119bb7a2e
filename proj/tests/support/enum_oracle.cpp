#include "enum_oracle.hpp"

#include <limits>
#include <stdexcept>

namespace corres::testing {

EnumOracle::EnumOracle(const corres::ContingencyTable &t)
    : rows_(t.rows), cols_(t.cols), row_sums_(t.row_sums), col_sums_(t.col_sums) {
    if (rows_ > 14 || cols_ > 14)
        throw std::invalid_argument("EnumOracle: instance too large");
    const std::size_t s_masks = std::size_t{1} << rows_;
    const std::size_t sp_masks = std::size_t{1} << cols_;

    overlap_.assign(s_masks * cols_, 0);
    for (std::size_t s = 1; s < s_masks; ++s) {
        const std::size_t i = static_cast<std::size_t>(__builtin_ctzll(s));
        const std::size_t prev = s & (s - 1);
        for (std::size_t j = 0; j < cols_; ++j)
            overlap_[s * cols_ + j] = overlap_[prev * cols_ + j] + t.at(i, j);
    }
    coverage_.assign(sp_masks * rows_, 0);
    for (std::size_t sp = 1; sp < sp_masks; ++sp) {
        const std::size_t j = static_cast<std::size_t>(__builtin_ctzll(sp));
        const std::size_t prev = sp & (sp - 1);
        for (std::size_t i = 0; i < rows_; ++i)
            coverage_[sp * rows_ + i] = coverage_[prev * rows_ + i] + t.at(i, j);
    }

    phi_min_.assign(s_masks, 0);
    phi_star_.assign(s_masks, 0);
    mutual_.assign(s_masks, false);
    for (std::size_t s = 0; s < s_masks; ++s) {
        corres::weight_t best_all = std::numeric_limits<corres::weight_t>::max();
        corres::weight_t best_nontrivial = std::numeric_limits<corres::weight_t>::max();
        bool any_mutual = false;
        for (std::size_t sp = 0; sp < sp_masks; ++sp) {
            const corres::weight_t v = phi(static_cast<mask_t>(s), static_cast<mask_t>(sp));
            best_all = std::min(best_all, v);
            if (sp != 0 && sp != sp_masks - 1)
                best_nontrivial = std::min(best_nontrivial, v);
            if (!any_mutual &&
                is_mutual(static_cast<mask_t>(s), static_cast<mask_t>(sp)))
                any_mutual = true;
        }
        phi_min_[s] = best_all;
        const bool trivial_s = s == 0 || s == s_masks - 1;
        phi_star_[s] = trivial_s ? 0 : best_nontrivial;
        mutual_[s] = any_mutual;
    }
}

corres::weight_t EnumOracle::phi(mask_t s, mask_t s_prime) const {
    const corres::weight_t *o = overlap_.data() + std::size_t{s} * cols_;
    corres::weight_t total = 0;
    for (std::size_t j = 0; j < cols_; ++j)
        total += ((s_prime >> j) & 1) ? col_sums_[j] - o[j] : o[j];
    return total;
}

bool EnumOracle::is_mutual(mask_t s, mask_t s_prime) const {
    const corres::weight_t *o = overlap_.data() + std::size_t{s} * cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
        if ((s_prime >> j) & 1) {
            if (2 * o[j] < col_sums_[j])
                return false;
        } else if (2 * o[j] > col_sums_[j]) {
            return false;
        }
    }
    const corres::weight_t *cov = coverage_.data() + std::size_t{s_prime} * rows_;
    for (std::size_t i = 0; i < rows_; ++i) {
        if ((s >> i) & 1) {
            if (2 * cov[i] < row_sums_[i])
                return false;
        } else if (2 * cov[i] > row_sums_[i]) {
            return false;
        }
    }
    return true;
}

std::optional<corres::weight_t> EnumOracle::min_cut(std::size_t a, std::size_t b,
                                                    corres::Constraint c) const {
    if (a == b || a >= rows_ || b >= rows_)
        throw std::invalid_argument("EnumOracle::min_cut: bad terminals");
    const std::size_t s_masks = std::size_t{1} << rows_;
    std::optional<corres::weight_t> best;
    for (std::size_t s = 0; s < s_masks; ++s) {
        if (!((s >> a) & 1) || ((s >> b) & 1))
            continue;
        corres::weight_t v = 0;
        switch (c) {
        case corres::Constraint::CP:
            v = phi_min_[s];
            break;
        case corres::Constraint::CAnd:
            v = phi_star_[s];
            break;
        case corres::Constraint::CM:
            if (!mutual_[s])
                continue;
            v = phi_min_[s];
            break;
        }
        if (!best || v < *best)
            best = v;
    }
    return best;
}

corres::weight_t element_phi(const corres::Partition &a, const corres::Partition &b,
                             EnumOracle::mask_t s, EnumOracle::mask_t s_prime) {
    corres::weight_t total = 0;
    for (std::size_t e = 0; e < a.ground->size(); ++e) {
        const bool in_s = (s >> a.labels[e]) & 1;
        const bool in_sp = (s_prime >> b.labels[e]) & 1;
        if (in_s != in_sp)
            total += a.ground->weights[e];
    }
    return total;
}

} // namespace corres::testing
