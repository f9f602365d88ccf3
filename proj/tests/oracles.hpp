#pragma once

// Reference implementations the tests trust instead of the library's own
// code paths. Each one is written directly from the defining property it
// checks and stays independent of how the library computes the same value.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "geometry.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace oracle {

// Floyd-Warshall over the undirected adjacency; -1 for unreachable.
inline std::vector<double> floyd_warshall(const spx::Graph& g) {
    const int n = g.n;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(size_t(n) * n, inf);
    for (int i = 0; i < n; ++i) d[size_t(i) * n + i] = 0;
    for (const spx::Edge& e : g.edges) {
        d[size_t(e.u) * n + e.v] = 1;
        d[size_t(e.v) * n + e.u] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[size_t(i) * n + j] =
                    std::min(d[size_t(i) * n + j], d[size_t(i) * n + k] + d[size_t(k) * n + j]);
    for (double& x : d)
        if (x == inf) x = -1;
    return d;
}

// Proper segment intersection via the parametric 2x2 solve: both parameters
// strictly inside (0, 1).
inline bool segments_cross_parametric(const spx::Segment& a, const spx::Segment& b) {
    const spx::Vec2 r = a.q - a.p;
    const spx::Vec2 s = b.q - b.p;
    const double det = spx::cross(r, s);
    if (std::abs(det) < 1e-12) return false;
    const spx::Vec2 pq = b.p - a.p;
    const double t = spx::cross(pq, s) / det;
    const double u = spx::cross(pq, r) / det;
    return t > 0 && t < 1 && u > 0 && u < 1;
}

// Acute line-line angle via atan2 of each direction.
inline double crossing_angle_atan2(const spx::Segment& a, const spx::Segment& b) {
    const spx::Vec2 da = a.q - a.p;
    const spx::Vec2 db = b.q - b.p;
    double ang = std::abs(std::atan2(da.y, da.x) - std::atan2(db.y, db.x));
    const double pi = std::acos(-1.0);
    while (ang > pi) ang = std::abs(ang - 2 * pi);
    if (ang > pi / 2) ang = pi - ang;
    return ang;
}

// DFS three-color cycle detection on the directed subgraph.
inline bool has_directed_cycle(const spx::Graph& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (const spx::Edge& e : g.edges)
        if (e.directed) adj[e.u].push_back(e.v);
    std::vector<int> color(g.n, 0); // 0 white, 1 gray, 2 black
    std::function<bool(int)> visit = [&](int u) {
        color[u] = 1;
        for (int v : adj[u]) {
            if (color[v] == 1) return true;
            if (color[v] == 0 && visit(v)) return true;
        }
        color[u] = 2;
        return false;
    };
    for (int u = 0; u < g.n; ++u)
        if (color[u] == 0 && visit(u)) return true;
    return false;
}

// Crossing count over independent edge pairs, using the parametric predicate
// and its own pair enumeration.
inline int count_crossings_parametric(const spx::Layout& l, const spx::Graph& g) {
    int count = 0;
    const int m = int(g.edges.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const spx::Edge& a = g.edges[i];
            const spx::Edge& b = g.edges[j];
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
            spx::Segment sa{l[a.u], l[a.v]};
            spx::Segment sb{l[b.u], l[b.v]};
            if (segments_cross_parametric(sa, sb)) ++count;
        }
    }
    return count;
}

// Hinge objective the separator LP minimizes, evaluated directly.
inline double separator_objective(const spx::Segment& a, const spx::Segment& b, double ux,
                                  double uy, double gamma) {
    double f = 0;
    f += std::max(0.0, -(a.p.x * ux + a.p.y * uy) - gamma);
    f += std::max(0.0, -(a.q.x * ux + a.q.y * uy) - gamma);
    f += std::max(0.0, (b.p.x * ux + b.p.y * uy) + 1 + gamma);
    f += std::max(0.0, (b.q.x * ux + b.q.y * uy) + 1 + gamma);
    return f;
}

// Exact separator optimum by enumerating the dual's vertices. The primal
//   min over (u, gamma) of sum_k max(0, z_k)   with affine z_k
// has the linear-programming dual
//   max lambda3 + lambda4  s.t.  sum_k lambda_k a_k = 0,  0 <= lambda <= 1,
// where a_k is the gradient of z_k in (ux, uy, gamma). Three equalities in
// four unknowns leave a segment, so every vertex pins one lambda at a bound
// and solves a 3x3 system for the rest; the best feasible vertex is the
// optimum by strong duality.
inline double separator_dual_exact(const spx::Segment& a, const spx::Segment& b) {
    const double rows[4][3] = {
        {-a.p.x, -a.p.y, -1},
        {-a.q.x, -a.q.y, -1},
        {b.p.x, b.p.y, 1},
        {b.q.x, b.q.y, 1},
    };
    double best = 0; // lambda = 0 is always feasible and scores 0
    for (int j = 0; j < 4; ++j) {
        for (int fixed = 0; fixed <= 1; ++fixed) {
            double m[3][3], rhs[3];
            int cols[3], c = 0;
            for (int k = 0; k < 4; ++k)
                if (k != j) cols[c++] = k;
            for (int r = 0; r < 3; ++r) {
                for (int cc = 0; cc < 3; ++cc) m[r][cc] = rows[cols[cc]][r];
                rhs[r] = -double(fixed) * rows[j][r];
            }
            const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            if (std::abs(det) < 1e-12) continue;
            auto det3 = [&](int col) {
                double t[3][3];
                for (int r = 0; r < 3; ++r)
                    for (int cc = 0; cc < 3; ++cc) t[r][cc] = cc == col ? rhs[r] : m[r][cc];
                return t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
                       t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
                       t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
            };
            double lambda[4];
            lambda[j] = fixed;
            bool ok = true;
            for (int cc = 0; cc < 3; ++cc) {
                lambda[cols[cc]] = det3(cc) / det;
                ok = ok && lambda[cols[cc]] >= -1e-9 && lambda[cols[cc]] <= 1 + 1e-9;
            }
            if (ok) best = std::max(best, lambda[2] + lambda[3]);
        }
    }
    return best;
}

// Grid minimization of the separator objective: expanding coarse boxes (the
// optimum sits far out for shallow crossings), then halving refinements
// around the incumbent. Box and refinement sizes are validated against
// separator_dual_exact in the unit tests.
inline double separator_grid_minimum(const spx::Segment& a, const spx::Segment& b) {
    double best = std::numeric_limits<double>::infinity();
    double bx = 0, by = 0, bg = 0;
    auto scan = [&](double cx, double cy, double cg, double ru, double rg, int steps) {
        for (int i = 0; i <= steps; ++i) {
            double ux = cx - ru + 2 * ru * i / steps;
            for (int j = 0; j <= steps; ++j) {
                double uy = cy - ru + 2 * ru * j / steps;
                for (int k = 0; k <= steps; ++k) {
                    double gm = cg - rg + 2 * rg * k / steps;
                    double f = separator_objective(a, b, ux, uy, gm);
                    if (f < best) {
                        best = f;
                        bx = ux;
                        by = uy;
                        bg = gm;
                    }
                }
            }
        }
    };
    double coord = 1;
    for (const spx::Point& p : {a.p, a.q, b.p, b.q})
        coord = std::max({coord, std::abs(p.x), std::abs(p.y)});
    for (double box = 3; box <= 48; box *= 2) scan(0, 0, 0, box, box * coord + 2, 32);
    double ru = 2 * 48.0 / 32;                // largest coarse cell, u axes
    double rg = 2 * (48.0 * coord + 2) / 32;  // largest coarse cell, gamma axis
    for (int level = 0; level < 24; ++level) {
        // walk the re-centered box along the valley until it stops paying
        // off, otherwise halving can strand the box away from the optimum
        for (int rep = 0; rep < 50; ++rep) {
            const double before = best;
            scan(bx, by, bg, ru, rg, 16);
            if (best > before - 1e-9 * std::max(1.0, before)) break;
        }
        ru /= 2;
        rg /= 2;
    }

    // Valleys narrower than any grid spacing: polish with exact line minima.
    // Along a fixed direction the objective is piecewise-linear convex, so
    // its minimum on the line sits where some row crosses zero.
    const double rows[4][4] = {
        // gradient in (ux, uy, gamma) and constant offset, row value is
        // grad . x + offset
        {-a.p.x, -a.p.y, -1, 0},
        {-a.q.x, -a.q.y, -1, 0},
        {b.p.x, b.p.y, 1, 1},
        {b.q.x, b.q.y, 1, 1},
    };
    auto line_min = [&](double d0, double d1, double d2) {
        bool improved = false;
        for (int k = 0; k < 4; ++k) {
            const double slope = rows[k][0] * d0 + rows[k][1] * d1 + rows[k][2] * d2;
            if (std::abs(slope) < 1e-12) continue;
            const double z = rows[k][0] * bx + rows[k][1] * by + rows[k][2] * bg + rows[k][3];
            const double t = -z / slope;
            const double f = separator_objective(a, b, bx + t * d0, by + t * d1, bg + t * d2);
            if (f < best) {
                best = f;
                bx += t * d0;
                by += t * d1;
                bg += t * d2;
                improved = true;
            }
        }
        return improved;
    };
    spx::Rng dirs(20240);
    for (int round = 0; round < 60; ++round) {
        bool improved = false;
        // ridge directions: the cross product of two row gradients moves
        // along the line where both rows keep their values, and the
        // remaining rows' kinks on that line include the optimal vertex
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                const double cx = rows[i][1] * rows[j][2] - rows[i][2] * rows[j][1];
                const double cy = rows[i][2] * rows[j][0] - rows[i][0] * rows[j][2];
                const double cz = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
                if (std::abs(cx) + std::abs(cy) + std::abs(cz) > 1e-12)
                    improved = line_min(cx, cy, cz) || improved;
            }
        }
        improved = line_min(1, 0, 0) || improved;
        improved = line_min(0, 1, 0) || improved;
        improved = line_min(0, 0, 1) || improved;
        for (int r = 0; r < 8; ++r)
            improved =
                line_min(dirs.uniform(-1, 1), dirs.uniform(-1, 1), dirs.uniform(-1, 1)) ||
                improved;
        if (!improved) break;
    }
    return best;
}

// Central finite difference of a scalar function of one coordinate.
inline double central_diff(const std::function<double(double)>& f, double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2 * h);
}

// Connected test graph: random spanning tree plus extra random edges. This is
// a test input source, not an oracle; it avoids retry loops by construction.
inline spx::Graph random_connected_graph(int n, int extra_edges, uint64_t seed) {
    spx::Rng rng(spx::mix64(seed, 0x7357));
    std::vector<spx::Edge> edges;
    std::vector<char> used(size_t(n) * n, 0);
    for (int v = 1; v < n; ++v) {
        int u = rng.uniform_int(v);
        edges.push_back({u, v, false});
        used[size_t(u) * n + v] = used[size_t(v) * n + u] = 1;
    }
    int placed = 0, tries = 0;
    while (placed < extra_edges && tries < 100 * (extra_edges + 1)) {
        ++tries;
        int u = rng.uniform_int(n);
        int v = rng.uniform_int(n);
        if (u == v || used[size_t(u) * n + v]) continue;
        edges.push_back({u, v, false});
        used[size_t(u) * n + v] = used[size_t(v) * n + u] = 1;
        ++placed;
    }
    return spx::Graph(n, std::move(edges));
}

inline spx::Layout random_layout(int n, double extent, uint64_t seed) {
    spx::Rng rng(spx::mix64(seed, 0x1a70u));
    spx::Layout l(n);
    for (int i = 0; i < n; ++i) {
        l[i].x = rng.uniform(0, extent);
        l[i].y = rng.uniform(0, extent);
    }
    return l;
}

} // namespace oracle
