/*
 * End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
 * the process exits nonzero if any criterion fails.
 */
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include <corres/bounds.hpp>
#include <corres/cut_basis.hpp>
#include <corres/io.hpp>
#include <corres/objective.hpp>
#include <corres/partition.hpp>
#include <corres/solver.hpp>

#include "enum_oracle.hpp"
#include "generators.hpp"
#include "proc.hpp"
#include "toy.hpp"

using namespace corres;
using namespace corres::testing;

namespace {

int g_failures = 0;

void report(int idx, const std::string &name, bool ok, const std::string &detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++g_failures;
}

SolverConfig quiet() {
    SolverConfig cfg;
    cfg.verify_state = false;
    return cfg;
}

// ---------------------------------------------------------------- 1
// Exact agreement of the branch-and-bound solver with exhaustive
// enumeration on 200 random instances, every terminal pair, every
// constraint; infeasibility statuses must agree as well.
void criterion_1() {
    std::mt19937_64 rng(20250101);
    bool ok = true;
    std::string detail;
    for (int it = 0; it < 200 && ok; ++it) {
        // every fourth instance is pinned at the maximum advertised size
        const RandomInstance inst = it % 4 == 0 ? random_instance(rng, 10, 8, 60, 5, 10, 8)
                                                : random_instance(rng, 10, 8, 60, 5);
        const EnumOracle oracle(inst.table);
        const bool check_brute = it < 10;
        for (std::size_t s = 0; s < inst.table.rows && ok; ++s)
            for (std::size_t t = 0; t < inst.table.rows && ok; ++t) {
                if (s == t)
                    continue;
                for (const Constraint c :
                     {Constraint::CP, Constraint::CAnd, Constraint::CM}) {
                    const auto expect = oracle.min_cut(s, t, c);
                    const MinCutResult got = bnb_min_st_cut(inst.table, s, t, c, quiet());
                    const bool match =
                        expect ? (got.status == SolveStatus::Optimal && got.value == *expect)
                               : got.status == SolveStatus::Infeasible;
                    bool brute_match = true;
                    if (check_brute && s < t) {
                        const MinCutResult br = brute_force_min_st_cut(inst.table, s, t, c);
                        brute_match =
                            expect ? (br.status == SolveStatus::Optimal && br.value == *expect)
                                   : br.status == SolveStatus::Infeasible;
                    }
                    if (!match || !brute_match) {
                        ok = false;
                        std::ostringstream os;
                        os << "instance " << it << " pair (" << s << "," << t << ") "
                           << to_string(c);
                        detail = os.str();
                        break;
                    }
                }
            }
    }
    report(1, "solver equals exhaustive enumeration (200 instances, all pairs, "
              "cp/cand/cm)",
           ok, detail);
}

// ---------------------------------------------------------------- 2
// Objective identities, exhaustive for |P| = 10.
void criterion_2() {
    std::mt19937_64 rng(20250102);
    bool ok = true;
    std::string detail;
    for (int it = 0; it < 3 && ok; ++it) {
        const RandomInstance inst =
            it == 0 ? random_instance(rng, 10, 8, 60, 5, 10, 2)
                    : random_instance(rng, 10, 8, 60, 5);
        const std::size_t k = inst.table.rows;
        const std::uint32_t full = (1u << k) - 1;
        const EnumOracle oracle(inst.table);
        std::vector<weight_t> f(std::size_t{full} + 1);
        for (std::uint32_t s = 0; s <= full; ++s) {
            const PartSet set = set_of(k, s);
            f[s] = phi_min(set, inst.table);
            if (f[s] != oracle.phi_min(s)) {
                ok = false;
                detail = "phi_min differs from the enumerated minimum";
                break;
            }
            if (phi(set, optimal_partner(set, inst.table), inst.table) != f[s]) {
                ok = false;
                detail = "optimal partner does not realize phi_min";
                break;
            }
        }
        for (std::uint32_t s = 0; ok && s <= full; ++s)
            if (f[s] != f[full & ~s]) {
                ok = false;
                detail = "phi_min is not symmetric";
            }
        for (std::uint32_t s1 = 0; ok && s1 <= full; ++s1)
            for (std::uint32_t s2 = s1; s2 <= full; ++s2)
                if (f[s1 | s2] + f[s1 & s2] > f[s1] + f[s2]) {
                    ok = false;
                    detail = "submodular inequality violated";
                    break;
                }
    }
    report(2, "objective identities, exhaustive up to |P| = 10", ok, detail);
}

// ---------------------------------------------------------------- 3
// Golden values on the toy instance.
void criterion_3() {
    const ContingencyTable t = toy_table();
    bool ok = true;
    const auto expect = [&](bool cond, const char *what, std::string &detail) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    };
    std::string detail;
    expect(phi_star(set_of(3, 0b101), t) == 1, "phi_star({p1,p3}) != 1", detail);
    expect(phi_star(set_of(3, 0b110), t) == 1, "phi_star({p2,p3}) != 1", detail);
    expect(phi_star(set_of(3, 0b100), t) == 5, "phi_star({p3}) != 5", detail);
    expect(phi_star(set_of(3, 0b111), t) == 0, "phi_star(P) != 0", detail);
    expect(phi_star_constrained(set_of(3, 0b001), 0, 1, t) == 1,
           "constrained value (q1 in, q2 out) != 1", detail);
    expect(phi_star_constrained(set_of(3, 0b001), 1, 0, t) == 9,
           "constrained value (q2 in, q1 out) != 9", detail);
    expect(is_mutual(set_of(3, 0b001), set_of(2, 0b01), t), "({p1},{q1}) not mutual",
           detail);
    expect(is_mutual(set_of(3, 0b010), set_of(2, 0b10), t), "({p2},{q2}) not mutual",
           detail);
    for (std::uint32_t sp = 0; sp < 4; ++sp)
        expect(!is_mutual(set_of(3, 0b011), set_of(2, sp), t),
               "{p1,p2} has a mutual partner", detail);
    report(3, "toy-instance golden values (phi_star, constrained, mutuality)", ok, detail);
}

// ---------------------------------------------------------------- 4
// Bound admissibility, exhaustive over all partial assignments and
// completions on 50 random instances with |P| <= 8.
void criterion_4() {
    std::mt19937_64 rng(20250104);
    bool ok = true;
    std::string detail;
    for (int it = 0; it < 50 && ok; ++it) {
        const RandomInstance inst = random_instance(rng, 8, 8, 60, 5);
        const ContingencyTable &t = inst.table;
        const std::size_t k = t.rows;
        const std::uint32_t full = (1u << k) - 1;
        std::vector<weight_t> f(std::size_t{full} + 1);
        for (std::uint32_t s = 0; s <= full; ++s)
            f[s] = phi_min(set_of(k, s), t);

        for (std::uint32_t s_mask = 1; s_mask <= full && ok; ++s_mask) {
            const std::uint32_t rest = full & ~s_mask;
            for (std::uint32_t t_mask = rest; t_mask; t_mask = (t_mask - 1) & rest) {
                SideDistributions sd(t);
                for (std::size_t i = 0; i < k; ++i) {
                    if ((s_mask >> i) & 1)
                        sd.add(Side::S, i);
                    else if ((t_mask >> i) & 1)
                        sd.add(Side::T, i);
                }
                const weight_t b = bound_b(sd);
                const std::uint32_t free = full & ~(s_mask | t_mask);
                const weight_t bt = bound_tightened(sd, set_of(k, free), t);
                if (b > bt) {
                    ok = false;
                    detail = "tightened bound below the basic bound";
                    break;
                }
                std::uint32_t sub = free;
                while (true) {
                    if (bt > f[s_mask | sub]) {
                        ok = false;
                        detail = "bound exceeds a completion value";
                        break;
                    }
                    if (sub == 0)
                        break;
                    sub = (sub - 1) & free;
                }
                if (!ok)
                    break;
            }
        }
    }
    report(4, "bound admissibility for every partial state and completion", ok, detail);
}

// ---------------------------------------------------------------- 5
// Flow equivalence of the cut-basis tree.
void criterion_5() {
    std::mt19937_64 rng(20250105);
    bool ok = true;
    std::string detail;
    for (int it = 0; it < 50 && ok; ++it) {
        const RandomInstance inst = random_instance(rng, 8, 8, 60, 5);
        const EnumOracle oracle(inst.table);
        const CutBasis basis = cut_basis(inst.table, Constraint::CP, SolverKind::BnB, quiet());
        if (basis.cuts.size() != inst.table.rows - 1) {
            ok = false;
            detail = "basis size is not |P|-1";
            break;
        }
        for (std::size_t a = 0; a < inst.table.rows && ok; ++a)
            for (std::size_t b = a + 1; b < inst.table.rows; ++b)
                if (tree_path_min(basis, a, b) != *oracle.min_cut(a, b, Constraint::CP)) {
                    ok = false;
                    detail = "tree path minimum differs from the enumerated cut";
                    break;
                }
    }
    report(5, "cut-basis tree is flow-equivalent on 50 random instances", ok, detail);
}

// ---------------------------------------------------------------- 6
// Bipartite basis: cut weight equals phi of the correspondence.
void criterion_6() {
    std::mt19937_64 rng(20250106);
    bool ok = true;
    std::string detail;
    for (int it = 0; it < 50 && ok; ++it) {
        const RandomInstance inst = random_instance(rng, 8, 8, 60, 5, 2, 1);
        const BipartiteBasis basis = bipartite_basis(inst.table);
        if (basis.correspondences.size() != inst.table.rows + inst.table.cols - 1) {
            ok = false;
            detail = "basis size is not |P|+|P'|-1";
            break;
        }
        for (std::size_t i = 0; i < basis.correspondences.size(); ++i) {
            const auto &corr = basis.correspondences[i];
            if (basis.edge_weight[basis.node[i]] != corr.value ||
                corr.value != phi(corr.s, corr.s_prime, inst.table)) {
                ok = false;
                detail = "graph cut weight differs from phi(S, S')";
                break;
            }
        }
    }
    report(6, "bipartite basis cut weights equal phi on 50 random instances", ok, detail);
}

// ---------------------------------------------------------------- 7
// Every enumerated optimal correspondence under CP and CAnd is mutual or
// has a simple side.
void criterion_7() {
    std::mt19937_64 rng(20250107);
    bool ok = true;
    std::string detail;
    for (int it = 0; it < 50 && ok; ++it) {
        const RandomInstance inst = random_instance(rng, 7, 6, 50, 5);
        const EnumOracle oracle(inst.table);
        const std::size_t k = inst.table.rows, kp = inst.table.cols;
        for (const Constraint c : {Constraint::CP, Constraint::CAnd}) {
            weight_t best = -1;
            for (std::uint32_t s = 1; s < oracle.full_s(); ++s)
                for (std::uint32_t sp = 0; sp <= oracle.full_sp(); ++sp) {
                    if (c == Constraint::CAnd && (sp == 0 || sp == oracle.full_sp()))
                        continue;
                    const weight_t v = oracle.phi(s, sp);
                    if (best < 0 || v < best)
                        best = v;
                }
            for (std::uint32_t s = 1; s < oracle.full_s() && ok; ++s)
                for (std::uint32_t sp = 0; sp <= oracle.full_sp(); ++sp) {
                    if (c == Constraint::CAnd && (sp == 0 || sp == oracle.full_sp()))
                        continue;
                    if (oracle.phi(s, sp) != best)
                        continue;
                    const std::size_t ssz = static_cast<std::size_t>(__builtin_popcount(s));
                    const std::size_t spsz =
                        static_cast<std::size_t>(__builtin_popcount(sp));
                    const bool simple =
                        ssz == 1 || ssz == k - 1 || spsz == 1 || spsz == kp - 1;
                    if (!oracle.is_mutual(s, sp) && !simple) {
                        ok = false;
                        detail = "optimal correspondence neither mutual nor simple";
                        break;
                    }
                }
            if (!ok)
                break;
        }
    }
    report(7, "optimal cp/cand correspondences are mutual or simple", ok, detail);
}

// ---------------------------------------------------------------- 8
// Greedy basis quality: never better than exact. The four-scenario totals
// (cp/cand, exact/heuristic) and their ratios are reported for reference.
void criterion_8() {
    std::mt19937_64 rng(20250108);
    bool ok = true;
    std::string detail;
    double worst_ratio = 1.0, sum_ratio = 0.0;
    int samples = 0;
    // r1 = d_P / d_and, r2 = d_P / d^h_P, r3 = d_P / d^h_and
    double r_min[3] = {1e9, 1e9, 1e9}, r_max[3] = {0, 0, 0};

    const auto run_batch = [&](const RandomInstance &inst) {
        double d_p = 0, d_and = 0, dh_p = 0, dh_and = 0;
        for (const Constraint c : {Constraint::CP, Constraint::CAnd}) {
            const CutBasis exact = cut_basis(inst.table, c, SolverKind::BnB, quiet());
            const CutBasis greedy = cut_basis(inst.table, c, SolverKind::Greedy, quiet());
            const Ratio re = total_dissimilarity(exact, inst.table);
            const Ratio rg = total_dissimilarity(greedy, inst.table);
            if (rg.num * re.den < re.num * rg.den) {
                ok = false;
                detail = "greedy total dissimilarity below the exact one";
                return;
            }
            if (re.num > 0) {
                const double ratio = rg.value() / re.value();
                worst_ratio = std::max(worst_ratio, ratio);
                sum_ratio += ratio;
                ++samples;
            }
            (c == Constraint::CP ? d_p : d_and) = re.value();
            (c == Constraint::CP ? dh_p : dh_and) = rg.value();
        }
        if (d_p > 0 && d_and > 0 && dh_p > 0 && dh_and > 0) {
            const double r[3] = {d_p / d_and, d_p / dh_p, d_p / dh_and};
            for (int i = 0; i < 3; ++i) {
                r_min[i] = std::min(r_min[i], r[i]);
                r_max[i] = std::max(r_max[i], r[i]);
            }
        }
    };

    for (int it = 0; it < 50 && ok; ++it)
        run_batch(random_instance(rng, 9, 7, 60, 5));
    // near-matching pairs, the regime the reference range was measured in
    for (int it = 0; it < 10 && ok; ++it)
        run_batch(planted_instance(2000, 12, 0.05, 20250108 + it));

    std::ostringstream os;
    os.precision(4);
    os << "heuristic/exact per constraint: mean " << (samples ? sum_ratio / samples : 1.0)
       << ", max " << worst_ratio << "; r1 in [" << r_min[0] << "," << r_max[0]
       << "], r2 in [" << r_min[1] << "," << r_max[1] << "], r3 in [" << r_min[2] << ","
       << r_max[2] << "] (reference 1.0..1.024 on community pairs; instance-dependent, "
       << "not asserted)";
    report(8, "greedy basis never beats the exact basis", ok, ok ? os.str() : detail);
}

// ---------------------------------------------------------------- 9
// Desk-scale performance: greedy basis on 500k elements, 200 x 200 parts
// with 5% label noise, in under a minute.
void criterion_9() {
    const RandomInstance inst = planted_instance(500000, 200, 0.05, 20250109);
    const auto start = std::chrono::steady_clock::now();
    const ContingencyTable table = build_contingency(inst.a, inst.b);
    const CutBasis basis = cut_basis(table, Constraint::CP, SolverKind::Greedy, quiet());
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = seconds < 60.0 && basis.cuts.size() == 199;
    std::ostringstream os;
    os.precision(3);
    os << "|V|=500000, |P|=|P'|=200, greedy basis in " << seconds << " s";
    report(9, "greedy cut basis at desk scale finishes under 60 s", ok, os.str());
}

// ---------------------------------------------------------------- 10
// CLI regression: byte-stable golden output on the toy instance.
void criterion_10() {
    const std::string cli = CORRES_CLI_PATH;
    const std::string data = CORRES_DATA_DIR;
    const std::string cmd = "cd " + data + " && " + cli +
                            " basis toy_a.tsv toy_b.tsv --constraint cp --solver bnb";
    bool ok = true;
    std::string detail;
    try {
        const ProcResult first = run_process(cmd);
        const ProcResult second = run_process(cmd);
        const std::string golden = read_file(data + "/toy_basis_cp_bnb.golden.json");
        if (first.exit_code != 0) {
            ok = false;
            detail = "nonzero exit";
        } else if (first.out != second.out) {
            ok = false;
            detail = "output differs between runs";
        } else if (first.out != golden) {
            ok = false;
            detail = "output differs from the golden file";
        } else {
            const auto doc = nlohmann::json::parse(first.out);
            if (doc["total_dissimilarity"]["decimal"] != 0.2 ||
                doc["cuts"].size() != 2 || doc["cuts"][0]["value"] != 1 ||
                doc["cuts"][1]["value"] != 1) {
                ok = false;
                detail = "golden values drifted";
            }
        }
    } catch (const std::exception &e) {
        ok = false;
        detail = e.what();
    }
    report(10, "CLI golden output is byte-stable", ok, detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures)
        std::printf("%d criterion(s) failed\n", g_failures);
    else
        std::printf("all criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
