#include <corres/solver.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace corres {

std::string to_string(Constraint c) {
    switch (c) {
    case Constraint::CP:
        return "cp";
    case Constraint::CAnd:
        return "cand";
    case Constraint::CM:
        return "cm";
    }
    return "?";
}

std::string to_string(SolverKind s) {
    switch (s) {
    case SolverKind::BnB:
        return "bnb";
    case SolverKind::Greedy:
        return "greedy";
    case SolverKind::Brute:
        return "brute";
    }
    return "?";
}

std::string to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Optimal:
        return "optimal";
    case SolveStatus::Heuristic:
        return "heuristic";
    case SolveStatus::TimeLimit:
        return "time_limit";
    case SolveStatus::Infeasible:
        return "infeasible";
    }
    return "?";
}

std::optional<Constraint> constraint_from_string(const std::string &s) {
    if (s == "cp")
        return Constraint::CP;
    if (s == "cand")
        return Constraint::CAnd;
    if (s == "cm")
        return Constraint::CM;
    return std::nullopt;
}

std::optional<SolverKind> solver_from_string(const std::string &s) {
    if (s == "bnb")
        return SolverKind::BnB;
    if (s == "greedy")
        return SolverKind::Greedy;
    if (s == "brute")
        return SolverKind::Brute;
    return std::nullopt;
}

SolverState::SolverState(const ContingencyTable &t, std::size_t s_part, std::size_t t_part)
    : table_(&t), s_part_(s_part), t_part_(t_part), s_side_(t.rows), t_side_(t.rows),
      unassigned_(PartSet::full(t.rows)), sd_(t) {
    if (s_part >= t.rows || t_part >= t.rows)
        throw std::out_of_range("part index out of range");
    if (s_part == t_part)
        throw std::invalid_argument("source and sink part must differ");
    s_side_.add(s_part);
    unassigned_.remove(s_part);
    sd_.add(Side::S, s_part);
    t_side_.add(t_part);
    unassigned_.remove(t_part);
    sd_.add(Side::T, t_part);
}

void SolverState::assign(std::size_t part, Side side, bool alternative_tried) {
    (side == Side::S ? s_side_ : t_side_).add(part);
    unassigned_.remove(part);
    sd_.add(side, part);
    stack_.push_back({part, side, alternative_tried});
}

Assignment SolverState::pop() {
    Assignment a = stack_.back();
    stack_.pop_back();
    (a.side == Side::S ? s_side_ : t_side_).remove(a.part);
    unassigned_.add(a.part);
    sd_.remove(a.side, a.part);
    return a;
}

void SolverState::flip_top() {
    const Assignment a = pop();
    assign(a.part, a.side == Side::S ? Side::T : Side::S, true);
}

void SolverState::mark_top_tried() { stack_.back().alternative_tried = true; }

void SolverState::verify() const {
    const auto fresh_s = profile_of(s_side_, *table_, Axis::Rows);
    const auto fresh_t = profile_of(t_side_, *table_, Axis::Rows);
    const auto ds = sd_.d_s();
    const auto dt = sd_.d_t();
    for (std::size_t j = 0; j < table_->cols; ++j)
        if (fresh_s.overlaps()[j] != ds[j] || fresh_t.overlaps()[j] != dt[j])
            throw std::logic_error("side distributions out of sync");
    if (fresh_s.union_weight() != sd_.s_weight() || fresh_t.union_weight() != sd_.t_weight())
        throw std::logic_error("side weights out of sync");
    if (!s_side_.contains(s_part_) || !t_side_.contains(t_part_))
        throw std::logic_error("terminal part left its side");
    for (std::size_t i = 0; i < table_->rows; ++i) {
        const int where = int(s_side_.contains(i)) + int(t_side_.contains(i)) +
                          int(unassigned_.contains(i));
        if (where != 1)
            throw std::logic_error("part is not on exactly one side");
    }
}

namespace {

struct Pick {
    std::size_t part = SIZE_MAX;
    weight_t bound_if_s = 0;
    weight_t bound_if_t = 0;
};

// Eq-style selection: the unassigned part whose side choice changes the
// bound the most; ties keep the lowest index.
Pick pick_next(const SolverState &st) {
    const auto &t = st.table();
    const auto ds = st.distributions().d_s();
    const auto dt = st.distributions().d_t();
    Pick best;
    weight_t best_delta = -1;
    st.unassigned().for_each([&](std::size_t p) {
        const auto r = t.row(p);
        weight_t bs = 0, bt = 0;
        for (std::size_t j = 0; j < t.cols; ++j) {
            bs += std::min(ds[j] + r[j], dt[j]);
            bt += std::min(ds[j], dt[j] + r[j]);
        }
        const weight_t delta = bs > bt ? bs - bt : bt - bs;
        if (delta > best_delta) {
            best_delta = delta;
            best = {p, bs, bt};
        }
    });
    if (best.part == SIZE_MAX)
        throw std::logic_error("no unassigned part to select");
    return best;
}

void validate_instance(const ContingencyTable &t, std::size_t s, std::size_t tt,
                       Constraint c) {
    if (t.rows < 2)
        throw std::invalid_argument("need at least two parts in P");
    if (s >= t.rows || tt >= t.rows)
        throw std::out_of_range("part index out of range");
    if (s == tt)
        throw std::invalid_argument("source and sink part must differ");
    if ((c == Constraint::CAnd || c == Constraint::CM) && t.cols < 2)
        throw std::invalid_argument("constraint '" + to_string(c) +
                                    "' needs at least two parts in P'");
}

enum class StepOutcome { Complete, PrunedByB, PrunedByOther, TimedOut };

struct SearchCtx {
    SearchCtx(const ContingencyTable &table, Constraint c, const SolverConfig &config)
        : t(table), constraint(c), cfg(config) {}

    const ContingencyTable &t;
    Constraint constraint;
    const SolverConfig &cfg;
    SolveStats stats;
    bool found = false;
    weight_t best = std::numeric_limits<weight_t>::max();
    PartSet best_cut;
    bool has_deadline = false;
    std::chrono::steady_clock::time_point deadline{};
    bool timed_out = false;
    std::vector<weight_t> scratch;

    bool expired() {
        if (!has_deadline || timed_out)
            return timed_out;
        timed_out = std::chrono::steady_clock::now() >= deadline;
        return timed_out;
    }
};

// Objective value of the cut whose s-side is `cut`, given that side's
// overlap vector; nullopt when the cut is unusable under the constraint.
std::optional<weight_t> cut_value(SearchCtx &ctx, const PartSet &cut,
                                  std::span<const weight_t> d) {
    switch (ctx.constraint) {
    case Constraint::CP:
        return phi_min_from_overlaps(d, ctx.t.col_sums);
    case Constraint::CAnd:
        return phi_star_from_overlaps(d, ctx.t.col_sums);
    case Constraint::CM: {
        const weight_t v = phi_min_from_overlaps(d, ctx.t.col_sums);
        if (ctx.found && v >= ctx.best)
            return std::nullopt; // cannot improve, skip the feasibility work
        if (!mutual_partner_from_overlaps(cut, d, ctx.t, ctx.cfg.tie_cap))
            return std::nullopt;
        return v;
    }
    }
    return std::nullopt;
}

void consider_cut(SearchCtx &ctx, const PartSet &cut, std::span<const weight_t> d) {
    const auto v = cut_value(ctx, cut, d);
    if (v && (!ctx.found || *v < ctx.best)) {
        ctx.found = true;
        ctx.best = *v;
        ctx.best_cut = cut;
    }
}

// Interprets the current sides as two finished cuts: S_s with everything
// else on the t-side, and P minus S_t with everything else on the s-side.
void early_exits(SearchCtx &ctx, const SolverState &st) {
    consider_cut(ctx, st.s_side(), st.distributions().d_s());
    const auto dt = st.distributions().d_t();
    ctx.scratch.resize(ctx.t.cols);
    for (std::size_t j = 0; j < ctx.t.cols; ++j)
        ctx.scratch[j] = ctx.t.col_sums[j] - dt[j];
    consider_cut(ctx, st.t_side().complement(), ctx.scratch);
}

// No mutual completion can exist once some part of the opposite side is
// strictly majority-covered by the columns a side already strictly holds.
bool half_side_conflict(const ContingencyTable &t, std::span<const weight_t> d,
                        const PartSet &other_side) {
    std::vector<weight_t> cov(t.rows, 0);
    for (std::size_t j = 0; j < t.cols; ++j)
        if (2 * d[j] > t.col_sums[j])
            for (std::size_t i = 0; i < t.rows; ++i)
                cov[i] += t.at(i, j);
    bool conflict = false;
    other_side.for_each([&](std::size_t i) {
        if (2 * cov[i] > t.row_sums[i])
            conflict = true;
    });
    return conflict;
}

bool cm_conflict(SearchCtx &ctx, const SolverState &st) {
    return half_side_conflict(ctx.t, st.distributions().d_s(), st.t_side()) ||
           half_side_conflict(ctx.t, st.distributions().d_t(), st.s_side());
}

StepOutcome descend(SearchCtx &ctx, SolverState &st) {
    while (true) {
        if (ctx.cfg.verify_state)
            st.verify();
        if (st.complete())
            return StepOutcome::Complete;
        if (ctx.cfg.early_exit)
            early_exits(ctx, st);
        if (ctx.expired())
            return StepOutcome::TimedOut;
        if (ctx.found) {
            if (bound_b(st.distributions()) >= ctx.best)
                return StepOutcome::PrunedByB;
            if (ctx.cfg.tightened_bound &&
                bound_tightened(st.distributions(), st.unassigned(), ctx.t) >= ctx.best)
                return StepOutcome::PrunedByOther;
        }
        if (ctx.constraint == Constraint::CM && ctx.cfg.cm_interrupt && cm_conflict(ctx, st))
            return StepOutcome::PrunedByOther;
        const Pick p = pick_next(st);
        st.assign(p.part, p.bound_if_s < p.bound_if_t ? Side::S : Side::T);
        ++ctx.stats.nodes;
    }
}

PartSet partner_for(Constraint c, const PartSet &cut, const ContingencyTable &t,
                    int tie_cap) {
    switch (c) {
    case Constraint::CP:
        return optimal_partner(cut, t);
    case Constraint::CAnd:
        return repaired_partner(cut, t);
    case Constraint::CM: {
        const auto p = mutual_partner(cut, t, tie_cap);
        return p ? *p : PartSet(t.cols);
    }
    }
    return PartSet(t.cols);
}

MinCutResult finalize(SearchCtx &ctx, const ContingencyTable &t,
                      std::chrono::steady_clock::time_point start, SolveStatus ok_status) {
    MinCutResult r;
    r.stats = ctx.stats;
    r.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (ctx.timed_out)
        r.status = SolveStatus::TimeLimit;
    else if (!ctx.found)
        r.status = SolveStatus::Infeasible;
    else
        r.status = ok_status;
    if (ctx.found) {
        r.s_side = ctx.best_cut;
        r.value = ctx.best;
        r.partner = partner_for(ctx.constraint, ctx.best_cut, t, ctx.cfg.tie_cap);
    } else {
        r.s_side = PartSet(t.rows);
        r.partner = PartSet(t.cols);
        r.value = 0;
    }
    return r;
}

} // namespace

std::size_t select_next_part(const SolverState &state) { return pick_next(state).part; }

GreedyOutcome greedy_extend(SolverState &state, weight_t best_so_far) {
    while (!state.complete()) {
        if (bound_b(state.distributions()) >= best_so_far)
            return GreedyOutcome::Pruned;
        const Pick p = pick_next(state);
        state.assign(p.part, p.bound_if_s < p.bound_if_t ? Side::S : Side::T);
    }
    return GreedyOutcome::Complete;
}

MinCutResult bnb_min_st_cut(const ContingencyTable &t, std::size_t s_part,
                            std::size_t t_part, Constraint constraint,
                            const SolverConfig &cfg) {
    validate_instance(t, s_part, t_part, constraint);
    const auto start = std::chrono::steady_clock::now();
    SearchCtx ctx{t, constraint, cfg};
    if (cfg.time_limit_s) {
        ctx.has_deadline = true;
        ctx.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                   std::chrono::duration<double>(*cfg.time_limit_s));
    }

    SolverState st(t, s_part, t_part);
    StepOutcome out = descend(ctx, st);
    while (true) {
        if (out == StepOutcome::TimedOut)
            break;
        if (out == StepOutcome::Complete) {
            consider_cut(ctx, st.s_side(), st.distributions().d_s());
            // At a finished cut the bound equals the objective, so the
            // sibling leaf cannot be strictly better under CP. Under CAnd
            // and CM the leaf value is not the bound, so the sibling must
            // still be visited.
            if (constraint == Constraint::CP && st.depth() > 0)
                st.mark_top_tried();
        } else if (out == StepOutcome::PrunedByB && st.depth() > 0) {
            // The newest part went to the bound-minimizing side, so the
            // sibling's bound is no smaller and prunes as well.
            st.mark_top_tried();
        }

        while (st.depth() > 0 && st.stack().back().alternative_tried)
            st.pop();
        if (st.depth() == 0)
            break;
        st.flip_top();
        ++ctx.stats.backtracks;
        ++ctx.stats.nodes;
        out = descend(ctx, st);
    }
    return finalize(ctx, t, start, SolveStatus::Optimal);
}

MinCutResult greedy_min_st_cut(const ContingencyTable &t, std::size_t s_part,
                               std::size_t t_part, Constraint constraint,
                               const SolverConfig &cfg) {
    validate_instance(t, s_part, t_part, constraint);
    const auto start = std::chrono::steady_clock::now();
    SearchCtx ctx{t, constraint, cfg};

    SolverState st(t, s_part, t_part);
    greedy_extend(st, std::numeric_limits<weight_t>::max());
    ctx.stats.nodes = st.depth();
    consider_cut(ctx, st.s_side(), st.distributions().d_s());
    return finalize(ctx, t, start, SolveStatus::Heuristic);
}

MinCutResult brute_force_min_st_cut(const ContingencyTable &t, std::size_t s_part,
                                    std::size_t t_part, Constraint constraint) {
    validate_instance(t, s_part, t_part, constraint);
    if (t.rows > 22 || t.cols > 20 || (constraint == Constraint::CM && t.cols > 16))
        throw std::invalid_argument("instance too large for exhaustive enumeration");
    const auto start = std::chrono::steady_clock::now();
    const std::size_t kp = t.cols;
    const std::uint32_t partner_masks = std::uint32_t{1} << kp;

    // Row coverage for every partner subset, needed by the mutuality check.
    std::vector<std::vector<weight_t>> cov;
    if (constraint == Constraint::CM) {
        cov.assign(partner_masks, std::vector<weight_t>(t.rows, 0));
        for (std::uint32_t m = 1; m < partner_masks; ++m) {
            const std::uint32_t j = static_cast<std::uint32_t>(__builtin_ctz(m));
            const std::uint32_t prev = m & (m - 1);
            for (std::size_t i = 0; i < t.rows; ++i)
                cov[m][i] = cov[prev][i] + t.at(i, j);
        }
    }

    std::vector<std::size_t> free_parts;
    for (std::size_t i = 0; i < t.rows; ++i)
        if (i != s_part && i != t_part)
            free_parts.push_back(i);

    PartSet cur = PartSet::of(t.rows, {s_part});
    std::vector<weight_t> o(kp);
    for (std::size_t j = 0; j < kp; ++j)
        o[j] = t.at(s_part, j);

    bool found = false;
    weight_t best = 0;
    PartSet best_cut;
    std::uint64_t evaluated = 0;

    const auto evaluate = [&]() {
        ++evaluated;
        bool any = false;
        weight_t value = 0;
        for (std::uint32_t m = 0; m < partner_masks; ++m) {
            if (constraint != Constraint::CP && (m == 0 || m == partner_masks - 1))
                continue;
            if (constraint == Constraint::CM) {
                bool ok = true;
                for (std::size_t j = 0; j < kp && ok; ++j) {
                    if ((m >> j) & 1)
                        ok = 2 * o[j] >= t.col_sums[j];
                    else
                        ok = 2 * o[j] <= t.col_sums[j];
                }
                for (std::size_t i = 0; i < t.rows && ok; ++i) {
                    if (cur.contains(i))
                        ok = 2 * cov[m][i] >= t.row_sums[i];
                    else
                        ok = 2 * cov[m][i] <= t.row_sums[i];
                }
                if (!ok)
                    continue;
            }
            weight_t v = 0;
            for (std::size_t j = 0; j < kp; ++j)
                v += ((m >> j) & 1) ? t.col_sums[j] - o[j] : o[j];
            if (!any || v < value) {
                any = true;
                value = v;
            }
        }
        if (any && (!found || value < best)) {
            found = true;
            best = value;
            best_cut = cur;
        }
    };

    evaluate();
    std::uint32_t gray_prev = 0;
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << free_parts.size()); ++m) {
        const std::uint32_t gray = m ^ (m >> 1);
        const std::uint32_t diff = gray ^ gray_prev;
        gray_prev = gray;
        const std::size_t part = free_parts[static_cast<std::size_t>(__builtin_ctz(diff))];
        const auto r = t.row(part);
        if (gray & diff) {
            cur.add(part);
            for (std::size_t j = 0; j < kp; ++j)
                o[j] += r[j];
        } else {
            cur.remove(part);
            for (std::size_t j = 0; j < kp; ++j)
                o[j] -= r[j];
        }
        evaluate();
    }

    MinCutResult r;
    r.stats.nodes = evaluated;
    r.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (found) {
        r.status = SolveStatus::Optimal;
        r.s_side = best_cut;
        r.value = best;
        r.partner = partner_for(constraint, best_cut, t, 20);
    } else {
        r.status = SolveStatus::Infeasible;
        r.s_side = PartSet(t.rows);
        r.partner = PartSet(t.cols);
    }
    return r;
}

MinCutResult min_st_cut(const ContingencyTable &t, std::size_t s_part, std::size_t t_part,
                        Constraint constraint, SolverKind solver, const SolverConfig &cfg) {
    switch (solver) {
    case SolverKind::BnB:
        return bnb_min_st_cut(t, s_part, t_part, constraint, cfg);
    case SolverKind::Greedy:
        return greedy_min_st_cut(t, s_part, t_part, constraint, cfg);
    case SolverKind::Brute:
        return brute_force_min_st_cut(t, s_part, t_part, constraint);
    }
    throw std::logic_error("unknown solver kind");
}

} // namespace corres
