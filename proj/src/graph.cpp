#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>

#include "rng.hpp"

namespace spx {

Graph::Graph(int n_, std::vector<Edge> edges_) : n(n_), edges(std::move(edges_)) {
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw Error(ErrorCode::InvalidArgument,
                        "edge endpoint out of range: " + std::to_string(e.u) + " " +
                            std::to_string(e.v));
        if (e.u == e.v)
            throw Error(ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(e.u));
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw Error(ErrorCode::InvalidArgument,
                        "duplicate edge between " + std::to_string(key.first) + " and " +
                            std::to_string(key.second));
    }
}

bool Graph::has_directed_edges() const {
    for (const Edge& e : edges)
        if (e.directed) return true;
    return false;
}

double DistanceMatrix::diameter() const {
    double m = 0;
    for (double x : d) m = std::max(m, x);
    return m;
}

static std::vector<std::vector<int>> undirected_adjacency(const Graph& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (const Edge& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    return adj;
}

bool is_connected(const Graph& g) {
    if (g.n <= 1) return true;
    auto adj = undirected_adjacency(g);
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == g.n;
}

static std::vector<std::vector<int>> directed_adjacency(const Graph& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (const Edge& e : g.edges)
        if (e.directed) adj[e.u].push_back(e.v);
    return adj;
}

bool is_dag(const Graph& g) {
    auto adj = directed_adjacency(g);
    std::vector<int> indeg(g.n, 0);
    for (int u = 0; u < g.n; ++u)
        for (int v : adj[u]) ++indeg[v];
    std::vector<int> stack;
    for (int u = 0; u < g.n; ++u)
        if (indeg[u] == 0) stack.push_back(u);
    int processed = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++processed;
        for (int v : adj[u])
            if (--indeg[v] == 0) stack.push_back(v);
    }
    return processed == g.n;
}

std::vector<int> topological_order(const Graph& g) {
    auto adj = directed_adjacency(g);
    std::vector<int> indeg(g.n, 0);
    for (int u = 0; u < g.n; ++u)
        for (int v : adj[u]) ++indeg[v];
    // min-heap on vertex index keeps the order canonical
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int u = 0; u < g.n; ++u)
        if (indeg[u] == 0) ready.push(u);
    std::vector<int> order;
    order.reserve(g.n);
    while (!ready.empty()) {
        int u = ready.top();
        ready.pop();
        order.push_back(u);
        for (int v : adj[u])
            if (--indeg[v] == 0) ready.push(v);
    }
    if (int(order.size()) != g.n)
        throw Error(ErrorCode::NotADag, "directed subgraph contains a cycle");
    return order;
}

DistanceMatrix all_pairs_shortest_paths(const Graph& g) {
    auto adj = undirected_adjacency(g);
    DistanceMatrix dm;
    dm.n = g.n;
    dm.d.assign(size_t(g.n) * g.n, -1.0);
    dm.w.assign(size_t(g.n) * g.n, 0.0);
    std::vector<int> dist(g.n);
    for (int s = 0; s < g.n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    q.push(v);
                }
            }
        }
        for (int t = 0; t < g.n; ++t) {
            if (dist[t] < 0)
                throw Error(ErrorCode::DisconnectedGraph,
                            "no path between vertices " + std::to_string(s) + " and " +
                                std::to_string(t));
            dm.d[size_t(s) * g.n + t] = dist[t];
            dm.w[size_t(s) * g.n + t] = (s == t) ? 0.0 : 1.0 / double(dist[t] * dist[t]);
        }
    }
    return dm;
}

std::vector<std::pair<int, int>> independent_edge_pairs(const Graph& g) {
    std::vector<std::pair<int, int>> pairs;
    const int m = int(g.edges.size());
    for (int i = 0; i < m; ++i) {
        const Edge& a = g.edges[i];
        for (int j = i + 1; j < m; ++j) {
            const Edge& b = g.edges[j];
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
            pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

// True when `to` is reachable from `from` along directed edges.
static bool reaches(const std::vector<std::vector<int>>& adj, int from, int to) {
    if (from == to) return true;
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
            if (v == to) return true;
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return false;
}

Graph generate_random_dag(int n, double density, uint64_t seed) {
    if (n < 2)
        throw Error(ErrorCode::InvalidArgument, "generate_random_dag needs n >= 2");
    const long long target = llround(density * n);
    const long long max_edges = (long long)n * (n - 1) / 2;
    if (target < 1 || target > max_edges)
        throw Error(ErrorCode::InvalidArgument,
                    "edge budget " + std::to_string(target) + " not achievable with n = " +
                        std::to_string(n));
    if (target < n - 1)
        throw Error(ErrorCode::GenerationFailed,
                    "edge budget " + std::to_string(target) + " cannot connect " +
                        std::to_string(n) + " vertices");
    const int retry_budget = 1000;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        Rng rng(mix64(seed, uint64_t(attempt)));
        std::vector<std::vector<int>> out_adj(n);
        std::vector<char> pair_used(size_t(n) * n, 0);
        std::vector<Edge> edges;
        long long draws = 0;
        const long long draw_budget = 100000 + 1000LL * n * n;
        while ((long long)edges.size() < target && draws < draw_budget) {
            ++draws;
            int u = rng.uniform_int(n);
            int v = rng.uniform_int(n);
            if (u == v || pair_used[size_t(u) * n + v]) continue;
            if (reaches(out_adj, v, u)) continue; // u -> v would close a cycle
            out_adj[u].push_back(v);
            pair_used[size_t(u) * n + v] = pair_used[size_t(v) * n + u] = 1;
            edges.push_back({u, v, true});
        }
        if ((long long)edges.size() != target) continue;
        Graph g(n, std::move(edges));
        if (is_connected(g)) return g;
    }
    throw Error(ErrorCode::GenerationFailed,
                "no connected DAG with n = " + std::to_string(n) + " after " +
                    std::to_string(retry_budget) + " attempts");
}

Graph generate_binary_tree(int depth) {
    if (depth < 1 || depth > 20)
        throw Error(ErrorCode::InvalidArgument, "tree depth must be in [1, 20]");
    const int n = (1 << (depth + 1)) - 1;
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int u = 0; 2 * u + 2 < n; ++u) {
        edges.push_back({u, 2 * u + 1, true});
        edges.push_back({u, 2 * u + 2, true});
    }
    return Graph(n, std::move(edges));
}

Graph generate_community_graph(int n, int communities, double p_in, double p_out, uint64_t seed) {
    if (n < 1 || communities < 1 || communities > n)
        throw Error(ErrorCode::InvalidArgument, "need 1 <= communities <= n");
    if (p_in < 0 || p_in > 1 || p_out < 0 || p_out > 1)
        throw Error(ErrorCode::InvalidArgument, "probabilities must lie in [0, 1]");
    // near-equal contiguous blocks; the first n % communities blocks get the
    // extra vertex
    std::vector<int> block(n);
    {
        int v = 0;
        for (int c = 0; c < communities; ++c) {
            int size = n / communities + (c < n % communities ? 1 : 0);
            for (int k = 0; k < size; ++k) block[v++] = c;
        }
    }
    const int retry_budget = 1000;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        Rng rng(mix64(seed, uint64_t(attempt)));
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double p = (block[i] == block[j]) ? p_in : p_out;
                if (rng.bernoulli(p)) edges.push_back({i, j, false});
            }
        }
        Graph g(n, std::move(edges));
        if (is_connected(g)) return g;
    }
    throw Error(ErrorCode::GenerationFailed,
                "no connected community graph with n = " + std::to_string(n) + " after " +
                    std::to_string(retry_budget) + " attempts");
}

} // namespace spx
