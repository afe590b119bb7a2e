#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include <corres/cut_basis.hpp>
#include <corres/solver.hpp>

using namespace corres;

namespace {

SolverConfig quiet() {
    SolverConfig cfg;
    cfg.verify_state = false;
    return cfg;
}

std::vector<std::string> numbered(const std::string &prefix, std::size_t n) {
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i)
        names[i] = prefix + std::to_string(i);
    return names;
}

// k equal blocks versus the same blocks with a noise fraction relabeled.
std::pair<Partition, Partition> planted(std::size_t v, std::size_t k, double noise,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> ids(v);
    for (std::size_t e = 0; e < v; ++e)
        ids[e] = "e" + std::to_string(e);
    auto ground = make_unit_ground_set(ids);

    const std::size_t block = v / k;
    std::vector<std::size_t> labels_a(v), labels_b(v);
    for (std::size_t e = 0; e < v; ++e)
        labels_a[e] = std::min(e / block, k - 1);
    labels_b = labels_a;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> part(0, k - 1);
    for (std::size_t e = 0; e < v; ++e)
        if (coin(rng) < noise)
            labels_b[e] = part(rng);

    Partition a = make_partition(ground, std::move(labels_a), numbered("a", k));
    Partition b = make_partition(ground, std::move(labels_b), numbered("b", k));
    return {std::move(a), std::move(b)};
}

// Unrelated random partitions; harder for the exact search.
ContingencyTable random_table(std::size_t k, std::size_t kp, std::size_t v,
                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> ids(v);
    for (std::size_t e = 0; e < v; ++e)
        ids[e] = "e" + std::to_string(e);
    auto ground = make_unit_ground_set(ids);

    const auto labels = [&](std::size_t parts) {
        std::vector<std::size_t> l(v);
        std::uniform_int_distribution<std::size_t> d(0, parts - 1);
        for (auto &x : l)
            x = d(rng);
        for (std::size_t i = 0; i < parts; ++i)
            l[i] = i;
        return l;
    };
    Partition a = make_partition(ground, labels(k), numbered("a", k));
    Partition b = make_partition(ground, labels(kp), numbered("b", kp));
    return build_contingency(a, b);
}

void BM_build_contingency(benchmark::State &state) {
    const auto v = static_cast<std::size_t>(state.range(0));
    const auto [a, b] = planted(v, 64, 0.05, 42);
    for (auto _ : state) {
        const ContingencyTable t = build_contingency(a, b);
        benchmark::DoNotOptimize(t.total);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(v));
}
BENCHMARK(BM_build_contingency)->Arg(100000)->Arg(500000);

void BM_greedy_mincut(benchmark::State &state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto [a, b] = planted(k * 2000, k, 0.05, 42);
    const ContingencyTable t = build_contingency(a, b);
    for (auto _ : state) {
        const MinCutResult res = greedy_min_st_cut(t, 0, 1, Constraint::CP, quiet());
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(BM_greedy_mincut)->Arg(50)->Arg(100)->Arg(200);

void BM_greedy_basis(benchmark::State &state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto [a, b] = planted(k * 2000, k, 0.05, 42);
    const ContingencyTable t = build_contingency(a, b);
    for (auto _ : state) {
        const CutBasis basis = cut_basis(t, Constraint::CP, SolverKind::Greedy, quiet());
        benchmark::DoNotOptimize(basis.cuts.size());
    }
}
BENCHMARK(BM_greedy_basis)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_bnb_mincut(benchmark::State &state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const ContingencyTable t = random_table(k, 8, 40 * k, k * 977);
    for (auto _ : state) {
        const MinCutResult res = bnb_min_st_cut(t, 0, 1, Constraint::CP, quiet());
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(BM_bnb_mincut)->Arg(10)->Arg(14)->Arg(18);

void BM_bipartite_basis(benchmark::State &state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto [a, b] = planted(k * 500, k, 0.05, 42);
    const ContingencyTable t = build_contingency(a, b);
    for (auto _ : state) {
        const BipartiteBasis basis = bipartite_basis(t);
        benchmark::DoNotOptimize(basis.correspondences.size());
    }
}
BENCHMARK(BM_bipartite_basis)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
