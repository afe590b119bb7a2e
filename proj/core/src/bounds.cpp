#include <corres/bounds.hpp>

#include <algorithm>

namespace corres {

weight_t bound_b(const SideDistributions &sd) {
    const auto ds = sd.d_s();
    const auto dt = sd.d_t();
    weight_t total = 0;
    for (std::size_t j = 0; j < ds.size(); ++j)
        total += std::min(ds[j], dt[j]);
    return total;
}

weight_t bound_tightened(const SideDistributions &sd, const PartSet &unassigned,
                         const ContingencyTable &t) {
    const auto ds = sd.d_s();
    const auto dt = sd.d_t();
    weight_t extra = 0;
    unassigned.for_each([&](std::size_t i) {
        const auto r = t.row(i);
        weight_t inc_s = 0, inc_t = 0;
        for (std::size_t j = 0; j < t.cols; ++j) {
            const bool s_holds_half = 2 * ds[j] >= t.col_sums[j];
            const bool t_holds_half = 2 * dt[j] >= t.col_sums[j];
            if (s_holds_half && t_holds_half)
                continue;
            if (t_holds_half)
                inc_s += r[j]; // joining the s-side loses this overlap
            else if (s_holds_half)
                inc_t += r[j];
        }
        extra += std::min(inc_s, inc_t);
    });
    return bound_b(sd) + extra;
}

} // namespace corres
