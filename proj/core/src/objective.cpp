#include <corres/objective.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace corres {

namespace {

void check_dims(const PartSet &s, std::size_t expected, const char *what) {
    if (s.universe() != expected)
        throw std::out_of_range(std::string(what) + ": set universe does not match table");
}

std::vector<weight_t> row_overlaps(const PartSet &s, const ContingencyTable &t) {
    std::vector<weight_t> o(t.cols, 0);
    s.for_each([&](std::size_t i) {
        const auto r = t.row(i);
        for (std::size_t j = 0; j < t.cols; ++j)
            o[j] += r[j];
    });
    return o;
}

// Per-row coverage |P_i ∩ U_{S'}| for a column subset.
std::vector<weight_t> coverage_of(const PartSet &s_prime, const ContingencyTable &t) {
    std::vector<weight_t> cov(t.rows, 0);
    s_prime.for_each([&](std::size_t j) {
        for (std::size_t i = 0; i < t.rows; ++i)
            cov[i] += t.at(i, j);
    });
    return cov;
}

} // namespace

weight_t scaled_peak(weight_t numer, weight_t denom) {
    if (denom <= 0)
        throw std::invalid_argument("scaled_peak: denominator must be positive");
    if (numer < 0 || numer > denom)
        throw std::invalid_argument("scaled_peak: numerator out of range");
    return std::min(numer, denom - numer);
}

weight_t phi(const PartSet &s, const PartSet &s_prime, const ContingencyTable &t) {
    check_dims(s, t.rows, "phi");
    check_dims(s_prime, t.cols, "phi");
    const auto o = row_overlaps(s, t);
    weight_t total = 0;
    for (std::size_t j = 0; j < t.cols; ++j)
        total += s_prime.contains(j) ? t.col_sums[j] - o[j] : o[j];
    return total;
}

PartSet partner_from_overlaps(std::span<const weight_t> overlaps,
                              std::span<const weight_t> col_sums) {
    PartSet p(col_sums.size());
    for (std::size_t j = 0; j < col_sums.size(); ++j)
        if (2 * overlaps[j] > col_sums[j])
            p.add(j);
    return p;
}

PartSet optimal_partner(const PartSet &s, const ContingencyTable &t) {
    check_dims(s, t.rows, "optimal_partner");
    return partner_from_overlaps(row_overlaps(s, t), t.col_sums);
}

weight_t phi_min_from_overlaps(std::span<const weight_t> overlaps,
                               std::span<const weight_t> col_sums) {
    weight_t total = 0;
    for (std::size_t j = 0; j < col_sums.size(); ++j)
        total += std::min(overlaps[j], col_sums[j] - overlaps[j]);
    return total;
}

weight_t phi_min(const PartSet &s, const ContingencyTable &t) {
    check_dims(s, t.rows, "phi_min");
    return phi_min_from_overlaps(row_overlaps(s, t), t.col_sums);
}

weight_t phi_star_from_overlaps(std::span<const weight_t> overlaps,
                                std::span<const weight_t> col_sums) {
    weight_t base = 0;
    std::size_t majors = 0;
    weight_t min_flip = std::numeric_limits<weight_t>::max();
    for (std::size_t j = 0; j < col_sums.size(); ++j) {
        const weight_t o = overlaps[j];
        const weight_t c = col_sums[j];
        base += std::min(o, c - o);
        if (2 * o > c)
            ++majors;
        min_flip = std::min(min_flip, c > 2 * o ? c - 2 * o : 2 * o - c);
    }
    if (majors > 0 && majors < col_sums.size())
        return base; // the strict-majority partner is already nontrivial
    return base + min_flip;
}

weight_t phi_star(const PartSet &s, const ContingencyTable &t) {
    check_dims(s, t.rows, "phi_star");
    if (s.empty() || s.is_full())
        return 0;
    if (t.cols < 2)
        throw std::invalid_argument("phi_star: no nontrivial partner exists with |P'| < 2");
    return phi_star_from_overlaps(row_overlaps(s, t), t.col_sums);
}

PartSet repaired_partner(const PartSet &s, const ContingencyTable &t) {
    check_dims(s, t.rows, "repaired_partner");
    if (t.cols < 2)
        throw std::invalid_argument("repaired_partner: requires |P'| >= 2");
    const auto o = row_overlaps(s, t);
    PartSet p = partner_from_overlaps(o, t.col_sums);
    if (!p.empty() && !p.is_full())
        return p;
    std::size_t best = 0;
    weight_t best_cost = std::numeric_limits<weight_t>::max();
    for (std::size_t j = 0; j < t.cols; ++j) {
        const weight_t twice = 2 * o[j];
        const weight_t cost = t.col_sums[j] > twice ? t.col_sums[j] - twice
                                                    : twice - t.col_sums[j];
        if (cost < best_cost) {
            best_cost = cost;
            best = j;
        }
    }
    if (p.empty())
        p.add(best);
    else
        p.remove(best);
    return p;
}

weight_t phi_star_constrained(const PartSet &s, std::size_t i_prime,
                              std::size_t j_prime, const ContingencyTable &t) {
    check_dims(s, t.rows, "phi_star_constrained");
    if (i_prime == j_prime)
        throw std::invalid_argument("phi_star_constrained: i' and j' must differ");
    if (i_prime >= t.cols || j_prime >= t.cols)
        throw std::out_of_range("phi_star_constrained: column index out of range");
    const auto o = row_overlaps(s, t);
    weight_t total = o[j_prime] + t.col_sums[i_prime] - o[i_prime];
    for (std::size_t j = 0; j < t.cols; ++j) {
        if (j == i_prime || j == j_prime)
            continue;
        total += std::min(o[j], t.col_sums[j] - o[j]);
    }
    return total;
}

bool is_mutual(const PartSet &s, const PartSet &s_prime, const ContingencyTable &t) {
    check_dims(s, t.rows, "is_mutual");
    check_dims(s_prime, t.cols, "is_mutual");
    const auto o = row_overlaps(s, t);
    for (std::size_t j = 0; j < t.cols; ++j) {
        if (s_prime.contains(j) && 2 * o[j] < t.col_sums[j])
            return false;
        if (!s_prime.contains(j) && 2 * o[j] > t.col_sums[j])
            return false;
    }
    const auto cov = coverage_of(s_prime, t);
    for (std::size_t i = 0; i < t.rows; ++i) {
        if (s.contains(i) && 2 * cov[i] < t.row_sums[i])
            return false;
        if (!s.contains(i) && 2 * cov[i] > t.row_sums[i])
            return false;
    }
    return true;
}

std::optional<PartSet> mutual_partner_from_overlaps(const PartSet &s,
                                                    std::span<const weight_t> overlaps,
                                                    const ContingencyTable &t,
                                                    int tie_cap) {
    // Conditions 3 and 4 pin every non-tied column; only exact-half columns
    // are free to choose.
    PartSet base(t.cols);
    std::vector<std::size_t> ties;
    for (std::size_t j = 0; j < t.cols; ++j) {
        if (2 * overlaps[j] > t.col_sums[j])
            base.add(j);
        else if (2 * overlaps[j] == t.col_sums[j])
            ties.push_back(j);
    }
    if (ties.size() > static_cast<std::size_t>(tie_cap))
        throw std::runtime_error("mutual_partner: too many half-covered columns");

    std::vector<weight_t> base_cov = coverage_of(base, t);
    std::vector<weight_t> cov(t.rows);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ties.size()); ++mask) {
        cov = base_cov;
        for (std::size_t b = 0; b < ties.size(); ++b)
            if ((mask >> b) & 1)
                for (std::size_t i = 0; i < t.rows; ++i)
                    cov[i] += t.at(i, ties[b]);
        bool ok = true;
        for (std::size_t i = 0; i < t.rows && ok; ++i) {
            if (s.contains(i))
                ok = 2 * cov[i] >= t.row_sums[i];
            else
                ok = 2 * cov[i] <= t.row_sums[i];
        }
        if (ok) {
            PartSet partner = base;
            for (std::size_t b = 0; b < ties.size(); ++b)
                if ((mask >> b) & 1)
                    partner.add(ties[b]);
            return partner;
        }
    }
    return std::nullopt;
}

std::optional<PartSet> mutual_partner(const PartSet &s, const ContingencyTable &t,
                                      int tie_cap) {
    check_dims(s, t.rows, "mutual_partner");
    const auto o = row_overlaps(s, t);
    return mutual_partner_from_overlaps(s, o, t, tie_cap);
}

Correspondence make_correspondence(PartSet s, PartSet s_prime, const ContingencyTable &t) {
    Correspondence c;
    c.value = phi(s, s_prime, t);
    c.mutual = is_mutual(s, s_prime, t);
    c.s = std::move(s);
    c.s_prime = std::move(s_prime);
    return c;
}

} // namespace corres
