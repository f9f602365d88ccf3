#include "penalties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace spx {

namespace {

// The separation objective in standard LP form. Free variables are split
// into positive parts, one slack per hinge term and one surplus per row:
//
//   columns 0..5   u_x+, u_x-, u_y+, u_y-, gamma+, gamma-
//   columns 6..9   s1, s2, t1, t2          (the hinge slacks, cost 1)
//   columns 10..13 surplus of each row
//
//   row 0:  A1 . u + gamma + s1 - r1 = 0
//   row 1:  A2 . u + gamma + s2 - r2 = 0
//   row 2: -B1 . u - gamma + t1 - r3 = 1
//   row 3: -B2 . u - gamma + t2 - r4 = 1
//
// s/t start basic at (0, 0, 1, 1), which is feasible, so no phase-one is
// needed. Bland's rule keeps the pivoting cycle-free.
constexpr int kRows = 4;
constexpr int kCols = 14;
constexpr int kPivotBudget = 200;
constexpr double kEps = 1e-9;

struct SimplexOutcome {
    bool ok = false;
    double value = 0;
    double ux = 0, uy = 0, gamma = 0;
};

SimplexOutcome run_simplex(const Point a1, const Point a2, const Point b1, const Point b2) {
    double t[kRows][kCols + 1] = {};
    const Point arows[2] = {a1, a2};
    const Point brows[2] = {b1, b2};
    for (int k = 0; k < 2; ++k) {
        t[k][0] = arows[k].x;
        t[k][1] = -arows[k].x;
        t[k][2] = arows[k].y;
        t[k][3] = -arows[k].y;
        t[k][4] = 1;
        t[k][5] = -1;
        t[k][6 + k] = 1;
        t[k][10 + k] = -1;
        t[k][kCols] = 0;
    }
    for (int k = 0; k < 2; ++k) {
        t[2 + k][0] = -brows[k].x;
        t[2 + k][1] = brows[k].x;
        t[2 + k][2] = -brows[k].y;
        t[2 + k][3] = brows[k].y;
        t[2 + k][4] = -1;
        t[2 + k][5] = 1;
        t[2 + k][8 + k] = 1;
        t[2 + k][12 + k] = -1;
        t[2 + k][kCols] = 1;
    }
    double cost[kCols] = {};
    for (int j = 6; j <= 9; ++j) cost[j] = 1;
    int basis[kRows] = {6, 7, 8, 9};

    SimplexOutcome out;
    for (int pivots = 0; pivots < kPivotBudget; ++pivots) {
        // entering column: lowest index with negative reduced cost (Bland)
        int enter = -1;
        for (int j = 0; j < kCols; ++j) {
            double rc = cost[j];
            for (int i = 0; i < kRows; ++i) rc -= cost[basis[i]] * t[i][j];
            if (rc < -kEps) {
                enter = j;
                break;
            }
        }
        if (enter < 0) {
            out.ok = true;
            break;
        }
        // leaving row: minimum ratio, ties to the lowest basis index (Bland)
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kRows; ++i) {
            if (t[i][enter] > kEps) {
                const double ratio = t[i][kCols] / t[i][enter];
                if (ratio < best_ratio - kEps ||
                    (ratio < best_ratio + kEps && (leave < 0 || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) return out; // objective is bounded, so this is numeric failure
        const double pivot = t[leave][enter];
        for (int j = 0; j <= kCols; ++j) t[leave][j] /= pivot;
        for (int i = 0; i < kRows; ++i) {
            if (i == leave) continue;
            const double factor = t[i][enter];
            if (factor == 0) continue;
            for (int j = 0; j <= kCols; ++j) t[i][j] -= factor * t[leave][j];
        }
        basis[leave] = enter;
    }
    if (!out.ok) return out;

    double x[kCols] = {};
    for (int i = 0; i < kRows; ++i) x[basis[i]] = t[i][kCols];
    out.value = std::max(0.0, x[6] + x[7] + x[8] + x[9]);
    out.ux = x[0] - x[1];
    out.uy = x[2] - x[3];
    out.gamma = x[4] - x[5];
    return out;
}

double separation_objective(const Point a1, const Point a2, const Point b1, const Point b2,
                            double ux, double uy, double gamma) {
    double f = 0;
    f += std::max(0.0, -(a1.x * ux + a1.y * uy) - gamma);
    f += std::max(0.0, -(a2.x * ux + a2.y * uy) - gamma);
    f += std::max(0.0, (b1.x * ux + b1.y * uy) + 1 + gamma);
    f += std::max(0.0, (b2.x * ux + b2.y * uy) + 1 + gamma);
    return f;
}

void check_not_degenerate(const Segment& a, const Segment& b) {
    if (norm(a.q - a.p) == 0 || norm(b.q - b.p) == 0)
        throw Error(ErrorCode::DegenerateSegment, "edge pair contains a zero-length segment");
}

} // namespace

SeparatorResult separator_grid_search(const Segment& a, const Segment& b) {
    check_not_degenerate(a, b);
    SeparatorResult res;
    res.used_fallback = true;
    double best = std::numeric_limits<double>::infinity();
    double bx = 0, by = 0, bg = 0;
    auto scan = [&](double cx, double cy, double cg, double radius, int steps) {
        for (int i = 0; i <= steps; ++i) {
            const double ux = cx - radius + 2 * radius * i / steps;
            for (int j = 0; j <= steps; ++j) {
                const double uy = cy - radius + 2 * radius * j / steps;
                for (int k = 0; k <= steps; ++k) {
                    const double gm = cg - radius + 2 * radius * k / steps;
                    const double f = separation_objective(a.p, a.q, b.p, b.q, ux, uy, gm);
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
    scan(0, 0, 0, 3.0, 24);
    double radius = 3.0 / 12;
    for (int level = 0; level < 5; ++level) {
        scan(bx, by, bg, radius, 16);
        radius /= 4;
    }
    res.sep.u = {bx, by};
    res.sep.gamma = bg;
    res.penalty = best;
    return res;
}

SeparatorResult solve_separator(const Segment& a, const Segment& b) {
    check_not_degenerate(a, b);
    SimplexOutcome lp = run_simplex(a.p, a.q, b.p, b.q);
    if (!lp.ok) return separator_grid_search(a, b);
    SeparatorResult res;
    res.sep.u = {lp.ux, lp.uy};
    res.sep.gamma = lp.gamma;
    res.penalty = lp.value;
    res.used_fallback = false;
    return res;
}

std::vector<PairState> refresh_pair_states(const Layout& l, const Graph& g,
                                           const std::vector<std::pair<int, int>>& pairs,
                                           PairDiagnostics* diag) {
    std::vector<PairState> states;
    states.reserve(pairs.size());
    for (const auto& [ei, ej] : pairs) {
        PairState st;
        st.e1 = ei;
        st.e2 = ej;
        const Edge& ea = g.edges[ei];
        const Edge& eb = g.edges[ej];
        const Segment sa{l[ea.u], l[ea.v]};
        const Segment sb{l[eb.u], l[eb.v]};
        try {
            SeparatorResult sep = solve_separator(sa, sb);
            st.sep = sep.sep;
            st.penalty = sep.penalty;
            st.rho = segments_cross(sa, sb) ? 1 : 0;
            if (st.rho) st.theta = crossing_angle(sa, sb);
            if (diag && sep.used_fallback) ++diag->lp_fallbacks;
        } catch (const Error&) {
            // degenerate geometry: drop the pair from this iteration
            st.rho = 0;
            st.penalty = 0;
            if (diag) ++diag->skipped;
        }
        states.push_back(st);
    }
    return states;
}

static double pair_weight(const PairState& st, PenaltyMode mode) {
    if (mode == PenaltyMode::CrossingOnly) return 0.5 * st.rho;
    const double c = std::cos(st.theta);
    return 0.5 * st.rho * c * c;
}

double penalty_sum(const std::vector<PairState>& states, PenaltyMode mode) {
    double sum = 0;
    for (const PairState& st : states) {
        if (!st.rho) continue;
        sum += pair_weight(st, mode) * st.penalty;
    }
    return sum;
}

double frozen_penalty_value(const Layout& l, const Graph& g,
                            const std::vector<PairState>& states, PenaltyMode mode,
                            bool frozen_theta) {
    double sum = 0;
    for (const PairState& st : states) {
        if (!st.rho) continue;
        const Edge& ea = g.edges[st.e1];
        const Edge& eb = g.edges[st.e2];
        const Point a1 = l[ea.u], a2 = l[ea.v], b1 = l[eb.u], b2 = l[eb.v];
        const double h =
            separation_objective(a1, a2, b1, b2, st.sep.u.x, st.sep.u.y, st.sep.gamma);
        double w = 0.5;
        if (mode == PenaltyMode::CrossingAngle) {
            if (frozen_theta) {
                const double c = std::cos(st.theta);
                w *= c * c;
            } else {
                const Vec2 da = a2 - a1;
                const Vec2 db = b2 - b1;
                const double f = dot(da, db);
                w *= f * f / (dot(da, da) * dot(db, db));
            }
        }
        sum += w * h;
    }
    return sum;
}

Grad penalty_gradient(const Layout& l, const Graph& g, const std::vector<PairState>& states,
                      PenaltyMode mode, bool frozen_theta) {
    Grad grad(l.size());
    for (const PairState& st : states) {
        if (!st.rho) continue;
        const Edge& ea = g.edges[st.e1];
        const Edge& eb = g.edges[st.e2];
        const int p = ea.u, q = ea.v, r = eb.u, s = eb.v;
        const Point a1 = l[p], a2 = l[q], b1 = l[r], b2 = l[s];
        const Vec2 u = st.sep.u;
        const double gamma = st.sep.gamma;

        const double za1 = -dot(a1, u) - gamma;
        const double za2 = -dot(a2, u) - gamma;
        const double zb1 = dot(b1, u) + 1 + gamma;
        const double zb2 = dot(b2, u) + 1 + gamma;

        double w = 0.5;
        double c2 = 1;
        Vec2 da = a2 - a1, db = b2 - b1;
        double f = 0, g1s = 0, g2s = 0;
        if (mode == PenaltyMode::CrossingAngle) {
            if (frozen_theta) {
                const double c = std::cos(st.theta);
                c2 = c * c;
            } else {
                f = dot(da, db);
                g1s = dot(da, da);
                g2s = dot(db, db);
                c2 = f * f / (g1s * g2s);
            }
            w *= c2;
        }

        // hinge part: d max(0, z)/d endpoint is -u or +u on the active side
        if (za1 > 0) grad[p] -= u * w;
        if (za2 > 0) grad[q] -= u * w;
        if (zb1 > 0) grad[r] += u * w;
        if (zb2 > 0) grad[s] += u * w;

        // product rule for the recomputed cos^2 factor
        if (mode == PenaltyMode::CrossingAngle && !frozen_theta) {
            const double h = std::max(0.0, za1) + std::max(0.0, za2) + std::max(0.0, zb1) +
                             std::max(0.0, zb2);
            if (h > 0) {
                const Vec2 dc2_da = db * (2 * f / (g1s * g2s)) - da * (2 * f * f / (g1s * g1s * g2s));
                const Vec2 dc2_db = da * (2 * f / (g1s * g2s)) - db * (2 * f * f / (g1s * g2s * g2s));
                const double scale = 0.5 * h;
                grad[p] -= dc2_da * scale;
                grad[q] += dc2_da * scale;
                grad[r] -= dc2_db * scale;
                grad[s] += dc2_db * scale;
            }
        }
    }
    return grad;
}

double total_cost(const Layout& l, const DistanceMatrix& dm,
                  const std::vector<PairState>& states, double K, PenaltyMode mode) {
    return stress_value(l, dm) + K * penalty_sum(states, mode);
}

} // namespace spx
