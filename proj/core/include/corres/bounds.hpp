/*
 * bounds.hpp
 *
 * Admissible lower bounds for the branch-and-bound search over partial
 * side assignments (S_s, S_t).
 */
#pragma once

#include <corres/partition.hpp>

namespace corres {

enum class Side { S, T };

/// The running distributions of both sides over the parts of P':
/// d_s[j] = |U_{S_s} ∩ P'_j| and d_t[j] = |U_{S_t} ∩ P'_j|, maintained
/// incrementally by adding or removing one row at a time.
class SideDistributions {
public:
    explicit SideDistributions(const ContingencyTable &t)
        : s_(t, Axis::Rows), t_(t, Axis::Rows) {}

    void add(Side side, std::size_t part) {
        (side == Side::S ? s_ : t_).add(part);
    }
    void remove(Side side, std::size_t part) {
        (side == Side::S ? s_ : t_).remove(part);
    }

    std::span<const weight_t> d_s() const { return s_.overlaps(); }
    std::span<const weight_t> d_t() const { return t_.overlaps(); }
    weight_t s_weight() const { return s_.union_weight(); }
    weight_t t_weight() const { return t_.union_weight(); }

private:
    OverlapProfile s_, t_;
};

/// b(S_s, S_t) = sum_j min(d_s[j], d_t[j]). Lower-bounds phi_min(S) for
/// every completion S containing S_s and disjoint from S_t, with equality
/// once S_s and S_t cover all parts.
weight_t bound_b(const SideDistributions &sd);

/// b plus, for every unassigned part, the smaller of its forced future
/// contributions: a column already held at least half by one side adds the
/// part's overlap with it whenever the part joins the other side. A column
/// held exactly half by both sides is excluded from both terms.
weight_t bound_tightened(const SideDistributions &sd, const PartSet &unassigned,
                         const ContingencyTable &t);

} // namespace corres
