/*
 * corres_cli.cpp
 *
 * Command-line front end. Subcommands:
 *   table    print the contingency table of two partitions
 *   partner  optimal partner and value of a given part subset
 *   mincut   minimum P_s-P_t cut under a constraint
 *   basis    full minimum cut basis with total dissimilarity
 *   cv-basis cut basis of the bipartite part graph
 *
 * Exit codes: 0 success, 1 usage error, 2 data error, 3 infeasible (cm),
 * 4 time limit hit.
 */
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include <corres/cut_basis.hpp>
#include <corres/io.hpp>
#include <corres/objective.hpp>
#include <corres/partition.hpp>
#include <corres/solver.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitTimeLimit = 4;

struct Options {
    std::string input_a, input_b;
    bool intersect = false;
    std::string out_path;
    std::string dot_path;
    std::string constraint = "cp";
    std::string solver = "bnb";
    double time_limit_s = 300.0; // 0 disables the limit
    bool no_early_exit = false;
    bool all_pairs = false;
    bool timings = false;
    std::vector<std::string> set_labels;
    std::string s_label, t_label;
};

std::pair<corres::Partition, corres::Partition> load_pair(const Options &o) {
    corres::Partition a = corres::parse_partition_file(o.input_a);
    corres::Partition b = corres::parse_partition_file(o.input_b);
    if (o.intersect)
        return corres::intersect_ground(a, b);
    return corres::align_partitions(a, b);
}

void write_output(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::size_t row_index(const corres::ContingencyTable &t, const std::string &label) {
    for (std::size_t i = 0; i < t.rows; ++i)
        if (t.row_names[i] == label)
            return i;
    throw std::runtime_error("unknown part label '" + label + "'");
}

corres::SolverConfig config_of(const Options &o) {
    corres::SolverConfig cfg;
    if (o.time_limit_s > 0)
        cfg.time_limit_s = o.time_limit_s;
    cfg.early_exit = !o.no_early_exit;
    return cfg;
}

corres::DocumentMeta meta_of(const Options &o, bool with_search_params) {
    corres::DocumentMeta meta;
    meta.input_a = o.input_a;
    meta.input_b = o.input_b;
    meta.intersect = o.intersect;
    meta.timings = o.timings;
    if (with_search_params) {
        meta.constraint = o.constraint;
        meta.solver = o.solver;
        if (o.time_limit_s > 0)
            meta.time_limit_s = o.time_limit_s;
        meta.early_exit = !o.no_early_exit;
    }
    return meta;
}

unsigned diagnostic_threads() {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("CORRESP_THREADS")) {
        char *end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end && *end == '\0' && parsed > 0)
            threads = std::min<unsigned>(threads, static_cast<unsigned>(parsed));
    }
    return threads;
}

int status_exit(corres::SolveStatus status) {
    switch (status) {
    case corres::SolveStatus::TimeLimit:
        return kExitTimeLimit;
    case corres::SolveStatus::Infeasible:
        return kExitInfeasible;
    default:
        return kExitOk;
    }
}

int run_table(const Options &o) {
    auto [a, b] = load_pair(o);
    const auto table = corres::build_contingency(a, b);
    write_output(corres::format_table_tsv(table), o.out_path);
    return kExitOk;
}

int run_partner(const Options &o) {
    auto [a, b] = load_pair(o);
    const auto table = corres::build_contingency(a, b);
    corres::PartSet s(table.rows);
    for (const auto &label : o.set_labels)
        s.add(row_index(table, label));
    const corres::PartSet partner = corres::optimal_partner(s, table);
    const corres::weight_t value = corres::phi(s, partner, table);
    const bool mutual = corres::is_mutual(s, partner, table);
    write_output(corres::partner_document(s, partner, value, mutual, table, meta_of(o, false)),
                 o.out_path);
    return kExitOk;
}

int run_mincut(const Options &o) {
    auto [a, b] = load_pair(o);
    const auto table = corres::build_contingency(a, b);
    const auto constraint = *corres::constraint_from_string(o.constraint);
    const auto solver = *corres::solver_from_string(o.solver);
    const auto res = corres::min_st_cut(table, row_index(table, o.s_label),
                                        row_index(table, o.t_label), constraint, solver,
                                        config_of(o));
    write_output(corres::mincut_document(res, table, meta_of(o, true)), o.out_path);
    return status_exit(res.status);
}

int run_basis(const Options &o) {
    auto [a, b] = load_pair(o);
    const auto table = corres::build_contingency(a, b);
    const auto constraint = *corres::constraint_from_string(o.constraint);
    const auto solver = *corres::solver_from_string(o.solver);
    const auto cfg = config_of(o);
    const auto basis = corres::cut_basis(table, constraint, solver, cfg);

    std::vector<std::vector<corres::weight_t>> pairs;
    const std::vector<std::vector<corres::weight_t>> *pairs_ptr = nullptr;
    if (o.all_pairs) {
        pairs = corres::all_pairs_cut_values(table, constraint, solver, cfg,
                                             diagnostic_threads());
        pairs_ptr = &pairs;
    }
    write_output(corres::basis_document(basis, table, meta_of(o, true), pairs_ptr),
                 o.out_path);
    if (!o.dot_path.empty())
        write_output(corres::emit_dot(basis, table), o.dot_path);

    int exit_code = kExitOk;
    for (const auto &cut : basis.cuts) {
        const int e = status_exit(cut.result.status);
        if (e == kExitTimeLimit)
            return kExitTimeLimit;
        if (e != kExitOk)
            exit_code = e;
    }
    return exit_code;
}

int run_cv_basis(const Options &o) {
    auto [a, b] = load_pair(o);
    const auto table = corres::build_contingency(a, b);
    const auto basis = corres::bipartite_basis(table);
    write_output(corres::cv_basis_document(basis, table, meta_of(o, false)), o.out_path);
    return kExitOk;
}

void add_common(CLI::App *cmd, Options &o) {
    cmd->add_option("A", o.input_a, "labels-TSV file of the first partition")->required();
    cmd->add_option("B", o.input_b, "labels-TSV file of the second partition")->required();
    cmd->add_flag("--intersect", o.intersect,
                  "restrict both partitions to their common element set");
}

void add_search(CLI::App *cmd, Options &o) {
    cmd->add_option("--constraint", o.constraint, "correspondence constraint")
        ->check(CLI::IsMember({"cp", "cand", "cm"}))
        ->capture_default_str();
    cmd->add_option("--solver", o.solver, "cut solver")
        ->check(CLI::IsMember({"bnb", "greedy", "brute"}))
        ->capture_default_str();
    cmd->add_option("--time-limit", o.time_limit_s, "seconds, 0 disables")
        ->capture_default_str();
    cmd->add_flag("--no-early-exit", o.no_early_exit,
                  "disable side-as-cut incumbents inside the search");
    cmd->add_flag("--timings", o.timings, "include wall-clock stats in the output");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"best many-to-many correspondences between two partitions"};
    app.require_subcommand(1);
    Options o;

    CLI::App *table = app.add_subcommand("table", "print the contingency table");
    add_common(table, o);
    table->add_option("--out", o.out_path, "write to file instead of stdout");

    CLI::App *partner = app.add_subcommand("partner", "optimal partner of a part subset");
    add_common(partner, o);
    partner->add_option("--set", o.set_labels, "comma-separated part labels of A")
        ->required()
        ->delimiter(',');
    partner->add_option("--out", o.out_path, "write to file instead of stdout");

    CLI::App *mincut = app.add_subcommand("mincut", "minimum P_s-P_t cut");
    add_common(mincut, o);
    mincut->add_option("--s", o.s_label, "part label of A on the s-side")->required();
    mincut->add_option("--t", o.t_label, "part label of A on the t-side")->required();
    add_search(mincut, o);
    mincut->add_option("--out", o.out_path, "write to file instead of stdout");

    CLI::App *basis = app.add_subcommand("basis", "minimum cut basis of A w.r.t. B");
    add_common(basis, o);
    add_search(basis, o);
    basis->add_option("--out", o.out_path, "write to file instead of stdout");
    basis->add_option("--dot", o.dot_path, "also write the tree as DOT text");
    basis->add_flag("--all-pairs", o.all_pairs,
                    "add the all-pairs cut value matrix (diagnostic; "
                    "CORRESP_THREADS caps the concurrent solves)");

    CLI::App *cv = app.add_subcommand("cv-basis", "cut basis of the bipartite part graph");
    add_common(cv, o);
    cv->add_option("--out", o.out_path, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    if (mincut->parsed() && o.s_label == o.t_label) {
        std::cerr << "error: --s and --t must name different parts\n";
        return kExitUsage;
    }

    try {
        if (table->parsed())
            return run_table(o);
        if (partner->parsed())
            return run_partner(o);
        if (mincut->parsed())
            return run_mincut(o);
        if (basis->parsed())
            return run_basis(o);
        if (cv->parsed())
            return run_cv_basis(o);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
