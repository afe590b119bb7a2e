#include <corres/cut_basis.hpp>

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace corres {

CutBasis cut_basis(const ContingencyTable &t, Constraint constraint, SolverKind solver,
                   const SolverConfig &cfg) {
    if (t.rows < 2)
        throw std::invalid_argument("cut basis needs at least two parts");
    CutBasis basis;
    basis.constraint = constraint;
    basis.solver = solver;
    basis.parent.assign(t.rows, 0);
    basis.edge_weight.assign(t.rows, 0);

    for (std::size_t i = 1; i < t.rows; ++i) {
        const std::size_t p = basis.parent[i];
        MinCutResult res = min_st_cut(t, i, p, constraint, solver, cfg);
        for (std::size_t j = i + 1; j < t.rows; ++j)
            if (basis.parent[j] == p && res.s_side.contains(j))
                basis.parent[j] = i;
        basis.edge_weight[i] = res.value;
        basis.stats.nodes += res.stats.nodes;
        basis.stats.backtracks += res.stats.backtracks;
        basis.stats.wall_ms += res.stats.wall_ms;
        basis.cuts.push_back({i, p, std::move(res)});
    }
    return basis;
}

namespace {

// Parents always precede their node, so lifting the larger index walks
// both endpoints to their meeting point.
template <class Parents, class Weights>
weight_t path_min(const Parents &parent, const Weights &weight, std::size_t a,
                  std::size_t b) {
    if (a == b)
        throw std::invalid_argument("path minimum of a node with itself");
    weight_t result = std::numeric_limits<weight_t>::max();
    while (a != b) {
        if (a < b)
            std::swap(a, b);
        result = std::min(result, weight[a]);
        a = parent[a];
    }
    return result;
}

} // namespace

weight_t tree_path_min(const CutBasis &basis, std::size_t a, std::size_t b) {
    return path_min(basis.parent, basis.edge_weight, a, b);
}

weight_t tree_path_min(const BipartiteBasis &basis, std::size_t a, std::size_t b) {
    return path_min(basis.parent, basis.edge_weight, a, b);
}

Ratio total_dissimilarity(const CutBasis &basis, const ContingencyTable &t) {
    weight_t sum = 0;
    for (const auto &c : basis.cuts)
        sum += c.result.value;
    Ratio r{sum, t.total};
    if (r.den <= 0)
        throw std::invalid_argument("empty ground set");
    const weight_t g = std::gcd(r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return r;
}

BipartiteGraph BipartiteGraph::from_table(const ContingencyTable &t) {
    BipartiteGraph g;
    g.n_left = t.rows;
    g.n_right = t.cols;
    g.capacity.assign(g.size(), std::vector<weight_t>(g.size(), 0));
    for (std::size_t i = 0; i < t.rows; ++i)
        for (std::size_t j = 0; j < t.cols; ++j)
            if (t.at(i, j) > 0) {
                const std::size_t u = i, v = t.rows + j;
                g.edges.push_back({u, v, t.at(i, j)});
                g.capacity[u][v] = g.capacity[v][u] = t.at(i, j);
            }
    return g;
}

std::pair<std::vector<bool>, weight_t>
min_st_cut_graph(const BipartiteGraph &g, std::size_t src, std::size_t dst) {
    const std::size_t n = g.size();
    if (src >= n || dst >= n)
        throw std::out_of_range("graph node out of range");
    if (src == dst)
        throw std::invalid_argument("source and sink node must differ");

    std::vector<std::vector<weight_t>> residual = g.capacity;
    std::vector<std::size_t> pred(n);
    weight_t flow = 0;

    const auto bfs = [&](std::vector<std::size_t> &out) {
        std::fill(out.begin(), out.end(), SIZE_MAX);
        out[src] = src;
        std::deque<std::size_t> queue{src};
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v = 0; v < n; ++v)
                if (out[v] == SIZE_MAX && residual[u][v] > 0) {
                    out[v] = u;
                    queue.push_back(v);
                }
        }
    };

    while (true) {
        bfs(pred);
        if (pred[dst] == SIZE_MAX)
            break;
        weight_t bottleneck = std::numeric_limits<weight_t>::max();
        for (std::size_t v = dst; v != src; v = pred[v])
            bottleneck = std::min(bottleneck, residual[pred[v]][v]);
        for (std::size_t v = dst; v != src; v = pred[v]) {
            residual[pred[v]][v] -= bottleneck;
            residual[v][pred[v]] += bottleneck;
        }
        flow += bottleneck;
    }

    bfs(pred);
    std::vector<bool> side(n, false);
    for (std::size_t v = 0; v < n; ++v)
        side[v] = pred[v] != SIZE_MAX;
    return {side, flow};
}

BipartiteBasis bipartite_basis(const ContingencyTable &t) {
    const BipartiteGraph g = BipartiteGraph::from_table(t);
    const std::size_t n = g.size();
    if (n < 2)
        throw std::invalid_argument("bipartite basis needs at least two nodes");

    BipartiteBasis basis;
    basis.parent.assign(n, 0);
    basis.edge_weight.assign(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t p = basis.parent[i];
        auto [side, w] = min_st_cut_graph(g, i, p);
        for (std::size_t j = i + 1; j < n; ++j)
            if (basis.parent[j] == p && side[j])
                basis.parent[j] = i;
        basis.edge_weight[i] = w;

        PartSet s(t.rows), s_prime(t.cols);
        for (std::size_t u = 0; u < t.rows; ++u)
            if (side[u])
                s.add(u);
        for (std::size_t v = 0; v < t.cols; ++v)
            if (side[t.rows + v])
                s_prime.add(v);
        basis.node.push_back(i);
        basis.correspondences.push_back(make_correspondence(std::move(s), std::move(s_prime), t));
    }
    return basis;
}

std::vector<std::vector<weight_t>>
all_pairs_cut_values(const ContingencyTable &t, Constraint constraint, SolverKind solver,
                     const SolverConfig &cfg, unsigned threads) {
    const std::size_t k = t.rows;
    std::vector<std::vector<weight_t>> values(k, std::vector<weight_t>(k, 0));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            pairs.emplace_back(a, b);

    const unsigned workers =
        std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pairs.size())));
    std::atomic<std::size_t> next{0};
    const auto run = [&]() {
        for (std::size_t idx = next.fetch_add(1); idx < pairs.size();
             idx = next.fetch_add(1)) {
            const auto [a, b] = pairs[idx];
            const MinCutResult res = min_st_cut(t, a, b, constraint, solver, cfg);
            const weight_t v = res.status == SolveStatus::Infeasible ? -1 : res.value;
            values[a][b] = values[b][a] = v;
        }
    };

    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run);
        for (auto &th : pool)
            th.join();
    }
    return values;
}

} // namespace corres
