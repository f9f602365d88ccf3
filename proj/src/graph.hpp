#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "error.hpp"

namespace spx {

struct Edge {
    int u = 0;
    int v = 0;
    bool directed = false; // directed edges point u -> v
};

// Vertices are dense 0-based indices. At most one edge per unordered vertex
// pair, no self-loops; the constructor enforces both.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;

    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    bool has_directed_edges() const;
};

// Unweighted hop-count distances plus the d^-2 stress weights, row-major.
struct DistanceMatrix {
    int n = 0;
    std::vector<double> d;
    std::vector<double> w;

    double dist(int i, int j) const { return d[size_t(i) * n + j]; }
    double weight(int i, int j) const { return w[size_t(i) * n + j]; }
    double diameter() const;
};

// Connectivity ignores edge directions.
bool is_connected(const Graph& g);

// Acyclicity of the directed subgraph; undirected edges are ignored.
bool is_dag(const Graph& g);

// Topological order of the directed subgraph (lowest vertex index first among
// ready vertices, so the order is canonical). Throws NotADag on a cycle.
std::vector<int> topological_order(const Graph& g);

// BFS from every vertex. Throws DisconnectedGraph if any pair is unreachable.
DistanceMatrix all_pairs_shortest_paths(const Graph& g);

// All unordered edge-index pairs (i < j) with four distinct endpoints, in
// lexicographic order.
std::vector<std::pair<int, int>> independent_edge_pairs(const Graph& g);

// Connected DAG with round(density * n) directed edges: repeatedly sample a
// vertex pair and keep the edge only if it closes no cycle; a draw that comes
// out disconnected is discarded and regenerated from the next derived seed.
// Throws GenerationFailed once the retry budget is spent.
Graph generate_random_dag(int n, double density, uint64_t seed);

// Complete balanced binary tree with 2^(depth+1)-1 vertices, every edge
// directed root -> leaf.
Graph generate_binary_tree(int depth);

// Planted-partition graph: vertices split into near-equal contiguous blocks,
// each pair joined with probability p_in (same block) or p_out (different
// blocks). Regenerated from derived seeds until connected; GenerationFailed
// once the retry budget is spent.
Graph generate_community_graph(int n, int communities, double p_in, double p_out, uint64_t seed);

} // namespace spx
