#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "penalties.hpp"

namespace spx {

enum class GDVariant { Vanilla, Momentum, Nesterov, Adagrad, RMSprop, Adam };
enum class InitMethod { StressMajorization, ForceDirected, Random };
enum class Selection { MinCost, MaxMinAngle, MinCrossings };

struct GDParams {
    // learning_rate <= 0 means the per-variant default: 0.01 * graph diameter
    // for Vanilla/Momentum/Nesterov, 0.05 for the adaptive variants.
    double learning_rate = 0;
    double momentum = 0.9;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double rmsprop_decay = 0.9;
};

struct RunConfig {
    double K = 2.0;
    GDVariant variant = GDVariant::Vanilla;
    PenaltyMode mode = PenaltyMode::CrossingOnly;
    InitMethod init = InitMethod::StressMajorization;
    uint64_t seed = 0;
    int outer_iters = 100;
    int inner_steps = 1;
    bool upward = false;
    double upward_eps = 0.01;
    double upward_mu = 10.0;
    bool frozen_theta = false;
    GDParams gd;
};

struct TraceRow {
    int iter = 0;
    int crossings = 0;
    double stress = 0;
    double min_angle_deg = 90;
    double cost = 0;
};

struct RunDiagnostics {
    int lp_fallbacks = 0;
    int pairs_skipped = 0;
    int jitters = 0;
    bool aborted = false;
};

struct RunResult {
    Layout layout;
    double final_cost = 0;
    double final_stress = 0;
    int final_crossings = 0;
    double final_min_angle_deg = 90;
    std::vector<TraceRow> trace;
    RunConfig config;
    RunDiagnostics diag;
    bool valid = false;
};

// Momentum-style velocity plus the per-coordinate accumulators of the
// adaptive variants; sized lazily on first use.
struct GDState {
    std::vector<Vec2> velocity;
    std::vector<Vec2> accum;
    std::vector<Vec2> m;
    std::vector<Vec2> v;
    int step = 0;
};

// Seeded starting layout: uniform random in [0, sqrt(n)]^2, a force-directed
// arrangement refined for 500 iterations, or full stress majorization from a
// random start.
Layout initial_layout(const Graph& g, InitMethod method, uint64_t seed);

// Where the gradient should be evaluated for the given variant: the layout
// itself, or the momentum look-ahead point for Nesterov.
Layout gd_eval_point(const Layout& l, const GDState& state, GDVariant variant, const GDParams& p);

// One descent step in place. Throws NonFiniteUpdate if any coordinate leaves
// the finite range.
void gd_step(Layout& l, const Grad& grad, GDState& state, GDVariant variant, const GDParams& p);

// Raise each vertex above its predecessors: processed in topological order,
// y_v becomes max(y_v, max over directed edges u->v of y_u + eps). Only ever
// increases y, and a repaired layout passes through unchanged. Throws NotADag.
Layout upward_repair(const Layout& l, const Graph& g, double eps);

// The full per-graph optimization: each outer iteration refreshes every
// pair's separator, crossing flag and angle, then takes one descent step on
// the frozen objective (plus the hinge that pushes directed edges upward when
// cfg.upward). The trace records the state seen at the top of each iteration.
// A non-finite update aborts the run, which keeps its partial trace and
// reports valid = false instead of throwing.
RunResult spx_optimize(const Graph& g, const DistanceMatrix& dm, const RunConfig& cfg);

struct SweepGrid {
    std::vector<double> k_values;
    std::vector<GDVariant> variants;
    std::vector<InitMethod> inits;
};

// Penalty weights 2^-5 .. 2^5, all six variants, all three initializations.
SweepGrid default_sweep_grid();

struct SweepResult {
    std::vector<RunResult> runs; // restart varies fastest, then init, variant, K
    int best = -1;               // index into runs, -1 when every run failed
    int failed = 0;
};

// Cartesian sweep over grid x restarts. Cell seeds derive from defaults.seed
// and the grid coordinates, each run is single-threaded, and results land in
// per-cell slots, so the outcome is identical for any thread count.
// Selection: lowest final cost, largest final minimum crossing angle, or
// fewest final crossings; ties fall back to cost, then cell order. Invalid
// runs are skipped and counted in failed.
SweepResult sweep(const Graph& g, const SweepGrid& grid, int restarts, const RunConfig& defaults,
                  Selection selection, int threads = 0);

} // namespace spx
