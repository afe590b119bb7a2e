/*
 * solver.hpp
 *
 * Minimum P_s-P_t cut solvers over a contingency table: the greedy
 * heuristic, exact branch-and-bound with backtracking, and an exhaustive
 * enumeration solver for small instances. All three support the
 * constraints CP (cut of P only), CAnd (both partner sides nontrivial)
 * and CM (mutual correspondences).
 */
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <corres/bounds.hpp>
#include <corres/objective.hpp>
#include <corres/partition.hpp>

namespace corres {

enum class Constraint { CP, CAnd, CM };
enum class SolverKind { BnB, Greedy, Brute };
enum class SolveStatus { Optimal, Heuristic, TimeLimit, Infeasible };

std::string to_string(Constraint c);
std::string to_string(SolverKind s);
std::string to_string(SolveStatus s);
std::optional<Constraint> constraint_from_string(const std::string &s);
std::optional<SolverKind> solver_from_string(const std::string &s);

struct SolverConfig {
    std::optional<double> time_limit_s;  // none: run to completion
    bool early_exit = true;              // side-as-cut incumbents at every node
    bool tightened_bound = true;         // prune with the tightened bound
    bool cm_interrupt = true;            // CM conflict pruning at partial states
    int tie_cap = 20;                    // max half-covered columns in CM checks
#ifdef NDEBUG
    bool verify_state = false;
#else
    bool verify_state = true;            // recheck incremental state per node
#endif
};

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
    double wall_ms = 0.0;
};

struct MinCutResult {
    PartSet s_side;      // contains P_s; empty when no cut was found
    weight_t value = 0;  // objective of s_side under the constraint
    PartSet partner;     // canonical / repaired / mutual partner over P'
    SolveStatus status = SolveStatus::Optimal;
    SolveStats stats;
};

/// One entry of the assignment stack. Parts below P_s and P_t on the stack
/// appear in assignment order; alternative_tried marks entries whose flipped
/// branch has already been entered.
struct Assignment {
    std::size_t part;
    Side side;
    bool alternative_tried;
};

/// Working state of one solver run: the two growing sides with their
/// distributions and the assignment stack.
class SolverState {
public:
    SolverState(const ContingencyTable &t, std::size_t s_part, std::size_t t_part);
    SolverState(const ContingencyTable &&, std::size_t, std::size_t) = delete;

    const ContingencyTable &table() const { return *table_; }
    std::size_t s_part() const { return s_part_; }
    std::size_t t_part() const { return t_part_; }
    const PartSet &s_side() const { return s_side_; }
    const PartSet &t_side() const { return t_side_; }
    const PartSet &unassigned() const { return unassigned_; }
    const SideDistributions &distributions() const { return sd_; }
    const std::vector<Assignment> &stack() const { return stack_; }

    bool complete() const { return unassigned_.empty(); }
    std::size_t depth() const { return stack_.size(); }

    void assign(std::size_t part, Side side, bool alternative_tried = false);
    Assignment pop();
    /// Moves the newest assigned part to the other side and marks its
    /// alternative as tried.
    void flip_top();
    void mark_top_tried();

    /// Recomputes the distributions from scratch and checks them against the
    /// incrementally maintained ones. Throws std::logic_error on mismatch.
    void verify() const;

private:
    const ContingencyTable *table_;
    std::size_t s_part_, t_part_;
    PartSet s_side_, t_side_, unassigned_;
    SideDistributions sd_;
    std::vector<Assignment> stack_;
};

/// The part whose side choice matters most: argmax over unassigned parts of
/// |b(S_s+P, S_t) - b(S_s, S_t+P)|, ties to the lowest part index.
std::size_t select_next_part(const SolverState &state);

enum class GreedyOutcome { Complete, Pruned };

/// Extends the state by repeatedly assigning the selected part to the side
/// with the strictly smaller resulting bound (ties go to the t-side), until
/// all parts are assigned or bound_b >= best_so_far.
GreedyOutcome greedy_extend(SolverState &state, weight_t best_so_far);

/// Exact minimum P_s-P_t cut by branch-and-bound. For CM returns
/// Infeasible when no mutual P_s-P_t correspondence exists. Honors the
/// config time limit with status TimeLimit carrying the incumbent.
MinCutResult bnb_min_st_cut(const ContingencyTable &t, std::size_t s_part,
                            std::size_t t_part, Constraint constraint,
                            const SolverConfig &cfg = {});

/// One greedy descent; the value is an upper bound on the true minimum.
/// For CM the single greedy cut may fail the mutuality check, in which case
/// the result is marked Infeasible (the heuristic found no feasible cut).
MinCutResult greedy_min_st_cut(const ContingencyTable &t, std::size_t s_part,
                               std::size_t t_part, Constraint constraint,
                               const SolverConfig &cfg = {});

/// Exhaustive enumeration of all 2^(|P|-2) assignments, minimizing over all
/// partner subsets directly. Ground truth for solver tests; requires
/// |P| <= 22 and |P'| <= 20 (16 for CM).
MinCutResult brute_force_min_st_cut(const ContingencyTable &t, std::size_t s_part,
                                    std::size_t t_part, Constraint constraint);

/// Dispatch on SolverKind.
MinCutResult min_st_cut(const ContingencyTable &t, std::size_t s_part,
                        std::size_t t_part, Constraint constraint,
                        SolverKind solver, const SolverConfig &cfg = {});

} // namespace corres
