#pragma once

#include <utility>
#include <vector>

#include "geometry.hpp"
#include "graph.hpp"
#include "stress.hpp"

namespace spx {

// Candidate separating line u . x + gamma = 0 for an edge pair.
struct Separator {
    Vec2 u;
    double gamma = 0;
};

struct PairState {
    int e1 = -1; // edge indices into Graph::edges
    int e2 = -1;
    Separator sep;
    int rho = 0;        // 1 iff the pair crosses in the current layout
    double theta = 0;   // crossing angle in radians, meaningful when rho == 1
    double penalty = 0; // optimum of the separation objective
};

enum class PenaltyMode {
    CrossingOnly,  // per-pair weight rho/2
    CrossingAngle, // per-pair weight (rho/2) * cos^2(theta)
};

struct SeparatorResult {
    Separator sep;
    double penalty = 0;
    bool used_fallback = false;
};

// Minimize over (u, gamma) the total violation of the separation system
//   A u + gamma e >= 0,   B u + (1 + gamma) e <= 0
// where the rows of A are segment a's endpoints and the rows of B are
// segment b's: the objective is the L1 norm of the clamped violations
//   ||max(0, -(A u + gamma e))||_1 + ||max(0, B u + (1 + gamma) e)||_1.
// The optimum is 0 exactly when a strictly separating line exists, i.e. when
// the segments do not properly cross, and never exceeds 2 because
// u = 0, gamma = -1/2 always scores 2. Solved by a small dense simplex; if
// the pivot budget runs out the result comes from a grid search instead and
// is flagged. Throws DegenerateSegment on zero-length input.
SeparatorResult solve_separator(const Segment& a, const Segment& b);

// Grid minimization of the same objective; the guard path behind
// solve_separator, exposed so tests can pin the two against each other.
SeparatorResult separator_grid_search(const Segment& a, const Segment& b);

struct PairDiagnostics {
    int lp_fallbacks = 0; // pivot budget exhausted, grid result used
    int skipped = 0;      // degenerate pair dropped with rho = 0
};

// Recompute every pair's segments, crossing flag, separator, penalty and
// crossing angle from the current layout. Pair order follows the input list,
// so results are deterministic. Degenerate pairs (a zero-length segment) are
// recorded with rho = 0, penalty = 0 and counted in diag->skipped.
std::vector<PairState> refresh_pair_states(const Layout& l, const Graph& g,
                                           const std::vector<std::pair<int, int>>& pairs,
                                           PairDiagnostics* diag = nullptr);

// Sum of per-pair weights times penalties, in list order.
double penalty_sum(const std::vector<PairState>& states, PenaltyMode mode);

// The quantity one gradient step descends: penalties re-evaluated from the
// layout with each pair's (u, gamma, rho) held fixed. In CrossingAngle mode
// the cos^2 factor is recomputed from the layout unless frozen_theta, in
// which case the stored angle is used.
double frozen_penalty_value(const Layout& l, const Graph& g,
                            const std::vector<PairState>& states, PenaltyMode mode,
                            bool frozen_theta = false);

// Gradient of frozen_penalty_value with respect to the coordinates.
Grad penalty_gradient(const Layout& l, const Graph& g, const std::vector<PairState>& states,
                      PenaltyMode mode, bool frozen_theta = false);

// stress + K * penalty_sum
double total_cost(const Layout& l, const DistanceMatrix& dm,
                  const std::vector<PairState>& states, double K, PenaltyMode mode);

} // namespace spx
