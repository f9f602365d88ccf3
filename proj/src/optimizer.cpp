#include "optimizer.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "rng.hpp"

namespace spx {

static const double kPi = std::acos(-1.0);

static Layout random_layout(int n, uint64_t seed) {
    Rng rng(seed);
    const double extent = std::sqrt(double(n));
    Layout l(n);
    for (int i = 0; i < n; ++i) {
        l[i].x = rng.uniform(0, extent);
        l[i].y = rng.uniform(0, extent);
    }
    return l;
}

// Classic force-directed refinement: k^2/d repulsion between all pairs,
// d^2/k attraction along edges, displacement capped by a linearly cooling
// temperature.
static Layout force_directed_layout(const Graph& g, uint64_t seed) {
    const int n = g.n;
    const int iters = 500;
    const double k = 1.0;
    Layout pos = random_layout(n, mix64(seed, 0xfd));
    Rng tie_rng(mix64(seed, 0xfd7));
    std::vector<Vec2> disp(n);
    const double t0 = std::sqrt(double(n)) / 10;
    for (int iter = 0; iter < iters; ++iter) {
        const double t = t0 * (1.0 - double(iter) / iters);
        for (Vec2& d : disp) d = {0, 0};
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                Vec2 delta = pos[i] - pos[j];
                double d = norm(delta);
                if (d < 1e-9) {
                    const double ang = tie_rng.uniform(0, 2 * kPi);
                    delta = {std::cos(ang) * 1e-9, std::sin(ang) * 1e-9};
                    d = 1e-9;
                }
                const Vec2 push = delta * (k * k / (d * d));
                disp[i] += push;
                disp[j] -= push;
            }
        }
        for (const Edge& e : g.edges) {
            Vec2 delta = pos[e.u] - pos[e.v];
            double d = norm(delta);
            if (d < 1e-9) continue;
            const Vec2 pull = delta * (d / k);
            disp[e.u] -= pull;
            disp[e.v] += pull;
        }
        for (int i = 0; i < n; ++i) {
            const double d = norm(disp[i]);
            if (d > 0) pos[i] += disp[i] * (std::min(d, t) / d);
        }
    }
    return pos;
}

static Layout initial_layout_with_dm(const Graph& g, const DistanceMatrix& dm, InitMethod method,
                                     uint64_t seed) {
    switch (method) {
    case InitMethod::Random:
        return random_layout(g.n, mix64(seed, 0x7a));
    case InitMethod::ForceDirected:
        return force_directed_layout(g, seed);
    case InitMethod::StressMajorization:
        return stress_majorize(g, dm, random_layout(g.n, mix64(seed, 0x5b)));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown initialization method");
}

Layout initial_layout(const Graph& g, InitMethod method, uint64_t seed) {
    if (method == InitMethod::StressMajorization)
        return initial_layout_with_dm(g, all_pairs_shortest_paths(g), method, seed);
    DistanceMatrix unused;
    return initial_layout_with_dm(g, unused, method, seed);
}

Layout gd_eval_point(const Layout& l, const GDState& state, GDVariant variant, const GDParams& p) {
    if (variant != GDVariant::Nesterov || state.velocity.empty()) return l;
    Layout ahead = l;
    for (int i = 0; i < l.size(); ++i)
        ahead[i] -= state.velocity[i] * (p.learning_rate * p.momentum);
    return ahead;
}

static void ensure_state(GDState& state, int n) {
    if (int(state.velocity.size()) != n) {
        state.velocity.assign(n, {});
        state.accum.assign(n, {});
        state.m.assign(n, {});
        state.v.assign(n, {});
        state.step = 0;
    }
}

void gd_step(Layout& l, const Grad& grad, GDState& state, GDVariant variant, const GDParams& p) {
    const int n = l.size();
    ensure_state(state, n);
    const double lr = p.learning_rate;
    switch (variant) {
    case GDVariant::Vanilla:
        for (int i = 0; i < n; ++i) l[i] -= grad[i] * lr;
        break;
    case GDVariant::Momentum:
    case GDVariant::Nesterov:
        // same recurrence; Nesterov differs in where the gradient was taken
        for (int i = 0; i < n; ++i) {
            state.velocity[i] = state.velocity[i] * p.momentum + grad[i];
            l[i] -= state.velocity[i] * lr;
        }
        break;
    case GDVariant::Adagrad:
        for (int i = 0; i < n; ++i) {
            state.accum[i].x += grad[i].x * grad[i].x;
            state.accum[i].y += grad[i].y * grad[i].y;
            l[i].x -= lr * grad[i].x / (std::sqrt(state.accum[i].x) + p.epsilon);
            l[i].y -= lr * grad[i].y / (std::sqrt(state.accum[i].y) + p.epsilon);
        }
        break;
    case GDVariant::RMSprop:
        for (int i = 0; i < n; ++i) {
            state.accum[i].x =
                p.rmsprop_decay * state.accum[i].x + (1 - p.rmsprop_decay) * grad[i].x * grad[i].x;
            state.accum[i].y =
                p.rmsprop_decay * state.accum[i].y + (1 - p.rmsprop_decay) * grad[i].y * grad[i].y;
            l[i].x -= lr * grad[i].x / (std::sqrt(state.accum[i].x) + p.epsilon);
            l[i].y -= lr * grad[i].y / (std::sqrt(state.accum[i].y) + p.epsilon);
        }
        break;
    case GDVariant::Adam: {
        ++state.step;
        const double bc1 = 1 - std::pow(p.beta1, state.step);
        const double bc2 = 1 - std::pow(p.beta2, state.step);
        for (int i = 0; i < n; ++i) {
            state.m[i] = state.m[i] * p.beta1 + grad[i] * (1 - p.beta1);
            state.v[i].x = p.beta2 * state.v[i].x + (1 - p.beta2) * grad[i].x * grad[i].x;
            state.v[i].y = p.beta2 * state.v[i].y + (1 - p.beta2) * grad[i].y * grad[i].y;
            l[i].x -= lr * (state.m[i].x / bc1) / (std::sqrt(state.v[i].x / bc2) + p.epsilon);
            l[i].y -= lr * (state.m[i].y / bc1) / (std::sqrt(state.v[i].y / bc2) + p.epsilon);
        }
        break;
    }
    }
    for (const Point& pt : l.pts)
        if (!std::isfinite(pt.x) || !std::isfinite(pt.y))
            throw Error(ErrorCode::NonFiniteUpdate, "descent step left the finite range");
}

Layout upward_repair(const Layout& l, const Graph& g, double eps) {
    std::vector<int> order = topological_order(g);
    std::vector<std::vector<int>> in_adj(g.n);
    for (const Edge& e : g.edges)
        if (e.directed) in_adj[e.v].push_back(e.u);
    Layout out = l;
    for (int v : order)
        for (int u : in_adj[v]) out[v].y = std::max(out[v].y, out[u].y + eps);
    return out;
}

static double upward_hinge_value(const Layout& l, const Graph& g, double eps) {
    double sum = 0;
    for (const Edge& e : g.edges)
        if (e.directed) sum += std::max(0.0, eps - (l[e.v].y - l[e.u].y));
    return sum;
}

static void add_upward_hinge_gradient(Grad& grad, const Layout& l, const Graph& g, double eps,
                                      double mu) {
    for (const Edge& e : g.edges) {
        if (!e.directed) continue;
        if (eps - (l[e.v].y - l[e.u].y) > 0) {
            grad[e.v].y -= mu;
            grad[e.u].y += mu;
        }
    }
}

static GDParams resolve_gd_params(const RunConfig& cfg, const DistanceMatrix& dm) {
    GDParams p = cfg.gd;
    if (p.learning_rate <= 0) {
        switch (cfg.variant) {
        case GDVariant::Vanilla:
        case GDVariant::Momentum:
        case GDVariant::Nesterov:
            p.learning_rate = 0.01 * dm.diameter();
            break;
        default:
            p.learning_rate = 0.05;
        }
    }
    return p;
}

static double min_angle_deg(const std::vector<PairState>& states) {
    double best = kPi / 2;
    bool any = false;
    for (const PairState& st : states)
        if (st.rho) {
            best = std::min(best, st.theta);
            any = true;
        }
    if (!any) return 90.0;
    return best * 180.0 / kPi;
}

static int crossing_count(const std::vector<PairState>& states) {
    int c = 0;
    for (const PairState& st : states) c += st.rho;
    return c;
}

RunResult spx_optimize(const Graph& g, const DistanceMatrix& dm, const RunConfig& cfg) {
    if (cfg.K <= 0) throw Error(ErrorCode::InvalidArgument, "penalty weight K must be positive");
    if (cfg.outer_iters < 0 || cfg.inner_steps < 1)
        throw Error(ErrorCode::InvalidArgument, "iteration counts out of range");
    if (cfg.upward && !is_dag(g))
        throw Error(ErrorCode::NotADag, "upward mode needs an acyclic directed subgraph");

    RunResult run;
    run.config = cfg;
    const GDParams gd = resolve_gd_params(cfg, dm);
    const auto pairs = independent_edge_pairs(g);
    Layout layout = initial_layout_with_dm(g, dm, cfg.init, cfg.seed);
    // Start upward runs from a feasible layout: descent then only has to hold
    // the ordering (via the hinge) instead of rebuilding it, and the final
    // repair stays a small correction rather than a large rearrangement.
    if (cfg.upward) layout = upward_repair(layout, g, cfg.upward_eps);
    GDState state;

    try {
        for (int iter = 0; iter < cfg.outer_iters; ++iter) {
            PairDiagnostics pd;
            const auto states = refresh_pair_states(layout, g, pairs, &pd);
            run.diag.lp_fallbacks += pd.lp_fallbacks;
            run.diag.pairs_skipped += pd.skipped;

            TraceRow row;
            row.iter = iter;
            row.crossings = crossing_count(states);
            row.stress = stress_value(layout, dm);
            row.min_angle_deg = min_angle_deg(states);
            row.cost = row.stress + cfg.K * penalty_sum(states, cfg.mode);
            if (cfg.upward)
                row.cost += cfg.upward_mu * upward_hinge_value(layout, g, cfg.upward_eps);
            run.trace.push_back(row);

            for (int step = 0; step < cfg.inner_steps; ++step) {
                const Layout at = gd_eval_point(layout, state, cfg.variant, gd);
                Grad grad = stress_gradient(at, dm, &run.diag.jitters);
                const Grad pgrad =
                    penalty_gradient(at, g, states, cfg.mode, cfg.frozen_theta);
                for (int i = 0; i < g.n; ++i) grad[i] += pgrad[i] * cfg.K;
                if (cfg.upward)
                    add_upward_hinge_gradient(grad, at, g, cfg.upward_eps, cfg.upward_mu);
                gd_step(layout, grad, state, cfg.variant, gd);
            }
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NonFiniteUpdate) throw;
        run.diag.aborted = true;
        run.valid = false;
        run.layout = layout;
        return run;
    }

    if (cfg.upward) layout = upward_repair(layout, g, cfg.upward_eps);

    PairDiagnostics pd;
    const auto states = refresh_pair_states(layout, g, pairs, &pd);
    run.diag.lp_fallbacks += pd.lp_fallbacks;
    run.diag.pairs_skipped += pd.skipped;
    run.layout = layout;
    run.final_stress = stress_value(layout, dm);
    run.final_crossings = crossing_count(states);
    run.final_min_angle_deg = min_angle_deg(states);
    run.final_cost = run.final_stress + cfg.K * penalty_sum(states, cfg.mode);
    run.valid = true;
    return run;
}

SweepGrid default_sweep_grid() {
    SweepGrid grid;
    for (int e = -5; e <= 5; ++e) grid.k_values.push_back(std::ldexp(1.0, e));
    grid.variants = {GDVariant::Vanilla,  GDVariant::Momentum, GDVariant::Nesterov,
                     GDVariant::Adagrad,  GDVariant::RMSprop,  GDVariant::Adam};
    grid.inits = {InitMethod::StressMajorization, InitMethod::ForceDirected, InitMethod::Random};
    return grid;
}

// true when a beats b under the selection rule; ties resolve by cost, then
// by keeping the earlier cell
static bool run_beats(const RunResult& a, const RunResult& b, Selection sel) {
    switch (sel) {
    case Selection::MinCost:
        return a.final_cost < b.final_cost;
    case Selection::MaxMinAngle:
        if (a.final_min_angle_deg != b.final_min_angle_deg)
            return a.final_min_angle_deg > b.final_min_angle_deg;
        return a.final_cost < b.final_cost;
    case Selection::MinCrossings:
        if (a.final_crossings != b.final_crossings) return a.final_crossings < b.final_crossings;
        return a.final_cost < b.final_cost;
    }
    return false;
}

SweepResult sweep(const Graph& g, const SweepGrid& grid, int restarts, const RunConfig& defaults,
                  Selection selection, int threads) {
    if (restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be at least 1");
    if (grid.k_values.empty() || grid.variants.empty() || grid.inits.empty())
        throw Error(ErrorCode::InvalidArgument, "sweep grid has an empty axis");
    const DistanceMatrix dm = all_pairs_shortest_paths(g);

    std::vector<RunConfig> cells;
    for (size_t ki = 0; ki < grid.k_values.size(); ++ki) {
        for (size_t vi = 0; vi < grid.variants.size(); ++vi) {
            for (size_t ii = 0; ii < grid.inits.size(); ++ii) {
                for (int ri = 0; ri < restarts; ++ri) {
                    RunConfig cfg = defaults;
                    cfg.K = grid.k_values[ki];
                    cfg.variant = grid.variants[vi];
                    cfg.init = grid.inits[ii];
                    cfg.seed = mix64(mix64(mix64(mix64(defaults.seed, ki), vi), ii), uint64_t(ri));
                    cells.push_back(cfg);
                }
            }
        }
    }

    SweepResult result;
    result.runs.resize(cells.size());
    auto run_cell = [&](size_t i) {
        try {
            result.runs[i] = spx_optimize(g, dm, cells[i]);
        } catch (const Error&) {
            result.runs[i].config = cells[i];
            result.runs[i].valid = false;
            result.runs[i].diag.aborted = true;
        }
    };

    int workers = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, int(cells.size())));
    if (workers == 1) {
        for (size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
                    run_cell(i);
            });
        }
        for (std::thread& th : pool) th.join();
    }

    for (size_t i = 0; i < result.runs.size(); ++i) {
        if (!result.runs[i].valid) {
            ++result.failed;
            continue;
        }
        if (result.best < 0 || run_beats(result.runs[i], result.runs[size_t(result.best)], selection))
            result.best = int(i);
    }
    return result;
}

} // namespace spx
