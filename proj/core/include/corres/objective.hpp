/*
 * objective.hpp
 *
 * Correspondence objectives over a contingency table: the symmetric
 * difference weight phi(S, S'), its minimum phi_min(S) over all partners,
 * the nontrivial-partner variant phi_star(S), the partner-constrained
 * phi_star_constrained, and mutuality of a correspondence.
 *
 * All comparisons against half a part's weight are done on doubled
 * integers, so exact-half ties are detected exactly.
 */
#pragma once

#include <optional>
#include <span>

#include <corres/partition.hpp>

namespace corres {

/// min(numer, denom - numer): the weight-scaled classification-error term
/// of one column. Requires 0 <= numer <= denom, denom > 0.
weight_t scaled_peak(weight_t numer, weight_t denom);

/// |U_S symdiff U_S'| computed from the table only.
weight_t phi(const PartSet &s, const PartSet &s_prime, const ContingencyTable &t);

/// Canonical optimal partner: all P'_j with 2|U_S ∩ P'_j| > |P'_j|.
/// Parts covered exactly half are excluded.
PartSet optimal_partner(const PartSet &s, const ContingencyTable &t);
PartSet partner_from_overlaps(std::span<const weight_t> overlaps,
                              std::span<const weight_t> col_sums);

/// min over all S' of phi(S, S'), evaluated in O(|P'|) from overlaps.
weight_t phi_min(const PartSet &s, const ContingencyTable &t);
weight_t phi_min_from_overlaps(std::span<const weight_t> overlaps,
                               std::span<const weight_t> col_sums);

/// min over nontrivial S' (neither empty nor all of P') of phi(S, S');
/// 0 when S itself is trivial. Requires |P'| >= 2 for nontrivial S.
weight_t phi_star(const PartSet &s, const ContingencyTable &t);
weight_t phi_star_from_overlaps(std::span<const weight_t> overlaps,
                                std::span<const weight_t> col_sums);

/// Canonical partner repaired to be nontrivial: when the strict-majority
/// partner is empty (or all of P'), the single column with the cheapest
/// flip cost ||P'_j| - 2|U_S ∩ P'_j|| is flipped in (or out), ties going
/// to the lowest column index. phi(S, repaired_partner(S)) == phi_star(S).
PartSet repaired_partner(const PartSet &s, const ContingencyTable &t);

/// Objective value under the constraint P'_i in S', P'_j not in S':
/// |U_S ∩ P'_j| + |P'_i| - |U_S ∩ P'_i| plus the peak terms of the
/// remaining columns. Requires i_prime != j_prime.
weight_t phi_star_constrained(const PartSet &s, std::size_t i_prime,
                              std::size_t j_prime, const ContingencyTable &t);

/// The four half-overlap conditions of a mutual correspondence.
bool is_mutual(const PartSet &s, const PartSet &s_prime, const ContingencyTable &t);

/// Searches for any partner that makes (S, S') mutual. The partner must
/// contain every strictly majority-covered column and exclude every strictly
/// minority-covered one; columns covered exactly half are free, and all
/// 2^#ties choices are tried in ascending bitmask order. Throws when more
/// than tie_cap columns are tied.
std::optional<PartSet> mutual_partner(const PartSet &s, const ContingencyTable &t,
                                      int tie_cap = 20);
std::optional<PartSet> mutual_partner_from_overlaps(const PartSet &s,
                                                    std::span<const weight_t> overlaps,
                                                    const ContingencyTable &t,
                                                    int tie_cap = 20);

/// A correspondence (S, S') with its value and mutuality flag.
struct Correspondence {
    PartSet s;
    PartSet s_prime;
    weight_t value = 0;
    bool mutual = false;
};

Correspondence make_correspondence(PartSet s, PartSet s_prime, const ContingencyTable &t);

} // namespace corres
