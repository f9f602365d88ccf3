#include "spx/spx.h"

#include <cstring>
#include <string>

#include "io.hpp"
#include "metrics.hpp"
#include "optimizer.hpp"

struct spx_graph {
    spx::Graph g;
};

struct spx_layout {
    spx::Layout l;
};

struct spx_result {
    spx::RunResult r;
    spx_layout layout_view;
};

struct spx_sweep_result {
    std::vector<spx_result> runs;
    int best = -1;
    int failed = 0;
};

namespace {

thread_local std::string g_last_error = "no error";

spx_status map_code(spx::ErrorCode code) {
    using spx::ErrorCode;
    switch (code) {
    case ErrorCode::InvalidArgument: return SPX_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return SPX_ERR_PARSE;
    case ErrorCode::DisconnectedGraph: return SPX_ERR_DISCONNECTED;
    case ErrorCode::NotADag: return SPX_ERR_NOT_A_DAG;
    case ErrorCode::GenerationFailed: return SPX_ERR_GENERATION_FAILED;
    case ErrorCode::DegenerateSegment: return SPX_ERR_DEGENERATE_SEGMENT;
    case ErrorCode::LpFailure: return SPX_ERR_LP_FAILURE;
    case ErrorCode::SingularSystem: return SPX_ERR_SINGULAR_SYSTEM;
    case ErrorCode::NonFiniteUpdate: return SPX_ERR_NON_FINITE;
    case ErrorCode::Io: return SPX_ERR_IO;
    }
    return SPX_ERR_INTERNAL;
}

template <typename F>
spx_status guarded(F&& fn) noexcept {
    try {
        fn();
        return SPX_OK;
    } catch (const spx::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SPX_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SPX_ERR_INTERNAL;
    }
}

spx_status require(bool ok, const char* msg) {
    if (!ok) {
        g_last_error = msg;
        return SPX_ERR_INVALID_ARGUMENT;
    }
    return SPX_OK;
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

spx::RunConfig to_run_config(const spx_run_config& c) {
    spx::RunConfig cfg;
    cfg.K = c.K;
    cfg.variant = static_cast<spx::GDVariant>(c.variant);
    cfg.mode = static_cast<spx::PenaltyMode>(c.mode);
    cfg.init = static_cast<spx::InitMethod>(c.init);
    cfg.seed = c.seed;
    cfg.outer_iters = c.outer_iters;
    cfg.inner_steps = c.inner_steps;
    cfg.upward = c.upward != 0;
    cfg.upward_eps = c.upward_eps;
    cfg.upward_mu = c.upward_mu;
    cfg.frozen_theta = c.frozen_theta != 0;
    cfg.gd.learning_rate = c.learning_rate;
    return cfg;
}

spx_run_config from_run_config(const spx::RunConfig& cfg) {
    spx_run_config c;
    c.K = cfg.K;
    c.variant = static_cast<int>(cfg.variant);
    c.mode = static_cast<int>(cfg.mode);
    c.init = static_cast<int>(cfg.init);
    c.seed = cfg.seed;
    c.outer_iters = cfg.outer_iters;
    c.inner_steps = cfg.inner_steps;
    c.upward = cfg.upward ? 1 : 0;
    c.upward_eps = cfg.upward_eps;
    c.upward_mu = cfg.upward_mu;
    c.frozen_theta = cfg.frozen_theta ? 1 : 0;
    c.learning_rate = cfg.gd.learning_rate;
    return c;
}

bool valid_enum(int v, int count) { return v >= 0 && v < count; }

spx_status check_run_config(const spx_run_config* cfg) {
    if (!cfg) return require(false, "config is NULL");
    if (!valid_enum(cfg->variant, 6)) return require(false, "unknown descent variant");
    if (!valid_enum(cfg->mode, 2)) return require(false, "unknown penalty mode");
    if (!valid_enum(cfg->init, 3)) return require(false, "unknown initialization method");
    return SPX_OK;
}

spx_result wrap_result(spx::RunResult&& r) {
    spx_result out;
    out.r = std::move(r);
    out.layout_view.l = out.r.layout;
    return out;
}

} // namespace

extern "C" {

const char* spx_version(void) { return "0.1.0"; }

const char* spx_last_error(void) { return g_last_error.c_str(); }

void spx_string_free(char* s) { delete[] s; }

/* ---- graphs ------------------------------------------------------------ */

spx_status spx_graph_parse(const char* text, spx_graph** out) {
    if (spx_status st = require(text && out, "text and out must not be NULL")) return st;
    return guarded([&] { *out = new spx_graph{spx::parse_graph(text)}; });
}

spx_status spx_graph_write(const spx_graph* g, char** out_text) {
    if (spx_status st = require(g && out_text, "graph and out must not be NULL")) return st;
    return guarded([&] { *out_text = copy_string(spx::write_graph(g->g)); });
}

spx_status spx_graph_create(int n, const int* edges_uv, const int* directed, int edge_count,
                            spx_graph** out) {
    if (spx_status st = require(out && (edge_count == 0 || edges_uv) && edge_count >= 0,
                                "bad edge array"))
        return st;
    return guarded([&] {
        std::vector<spx::Edge> edges(edge_count);
        for (int i = 0; i < edge_count; ++i)
            edges[i] = {edges_uv[2 * i], edges_uv[2 * i + 1], directed && directed[i] != 0};
        *out = new spx_graph{spx::Graph(n, std::move(edges))};
    });
}

spx_status spx_graph_gen_dag(int n, double density, uint64_t seed, spx_graph** out) {
    if (spx_status st = require(out != nullptr, "out must not be NULL")) return st;
    return guarded([&] { *out = new spx_graph{spx::generate_random_dag(n, density, seed)}; });
}

spx_status spx_graph_gen_tree(int depth, spx_graph** out) {
    if (spx_status st = require(out != nullptr, "out must not be NULL")) return st;
    return guarded([&] { *out = new spx_graph{spx::generate_binary_tree(depth)}; });
}

spx_status spx_graph_gen_community(int n, int communities, double p_in, double p_out,
                                   uint64_t seed, spx_graph** out) {
    if (spx_status st = require(out != nullptr, "out must not be NULL")) return st;
    return guarded([&] {
        *out = new spx_graph{spx::generate_community_graph(n, communities, p_in, p_out, seed)};
    });
}

int spx_graph_vertex_count(const spx_graph* g) { return g ? g->g.n : 0; }

int spx_graph_edge_count(const spx_graph* g) { return g ? int(g->g.edges.size()) : 0; }

void spx_graph_edge(const spx_graph* g, int index, int* u, int* v, int* directed) {
    if (!g || index < 0 || index >= int(g->g.edges.size())) return;
    const spx::Edge& e = g->g.edges[index];
    if (u) *u = e.u;
    if (v) *v = e.v;
    if (directed) *directed = e.directed ? 1 : 0;
}

int spx_graph_is_dag(const spx_graph* g) { return g && spx::is_dag(g->g) ? 1 : 0; }

int spx_graph_is_connected(const spx_graph* g) { return g && spx::is_connected(g->g) ? 1 : 0; }

void spx_graph_free(spx_graph* g) { delete g; }

/* ---- layouts ----------------------------------------------------------- */

spx_status spx_layout_parse(const char* json, spx_layout** out) {
    if (spx_status st = require(json && out, "json and out must not be NULL")) return st;
    return guarded([&] { *out = new spx_layout{spx::layout_from_json(json)}; });
}

spx_status spx_layout_to_json(const spx_layout* l, char** out_json) {
    if (spx_status st = require(l && out_json, "layout and out must not be NULL")) return st;
    return guarded([&] { *out_json = copy_string(spx::layout_to_json(l->l)); });
}

spx_status spx_layout_create(const double* xy, int n, spx_layout** out) {
    if (spx_status st = require(out && n >= 0 && (n == 0 || xy), "bad coordinate array"))
        return st;
    return guarded([&] {
        spx::Layout l(n);
        for (int i = 0; i < n; ++i) {
            l[i].x = xy[2 * i];
            l[i].y = xy[2 * i + 1];
        }
        *out = new spx_layout{std::move(l)};
    });
}

int spx_layout_size(const spx_layout* l) { return l ? l->l.size() : 0; }

void spx_layout_get(const spx_layout* l, int index, double* x, double* y) {
    if (!l || index < 0 || index >= l->l.size()) return;
    if (x) *x = l->l[index].x;
    if (y) *y = l->l[index].y;
}

void spx_layout_free(spx_layout* l) { delete l; }

spx_status spx_initial_layout(const spx_graph* g, int init_method, uint64_t seed,
                              spx_layout** out) {
    if (spx_status st = require(g && out, "graph and out must not be NULL")) return st;
    if (spx_status st = require(valid_enum(init_method, 3), "unknown initialization method"))
        return st;
    return guarded([&] {
        *out = new spx_layout{
            spx::initial_layout(g->g, static_cast<spx::InitMethod>(init_method), seed)};
    });
}

/* ---- optimization ------------------------------------------------------ */

void spx_run_config_init(spx_run_config* cfg) {
    if (!cfg) return;
    spx::RunConfig defaults;
    *cfg = from_run_config(defaults);
}

spx_status spx_run(const spx_graph* g, const spx_run_config* cfg, spx_result** out) {
    if (spx_status st = require(g && out, "graph and out must not be NULL")) return st;
    if (spx_status st = check_run_config(cfg)) return st;
    return guarded([&] {
        const spx::DistanceMatrix dm = spx::all_pairs_shortest_paths(g->g);
        *out = new spx_result(wrap_result(spx::spx_optimize(g->g, dm, to_run_config(*cfg))));
    });
}

const spx_layout* spx_result_layout(const spx_result* r) { return r ? &r->layout_view : nullptr; }

int spx_result_valid(const spx_result* r) { return r && r->r.valid ? 1 : 0; }

double spx_result_final_cost(const spx_result* r) { return r ? r->r.final_cost : 0; }

double spx_result_final_stress(const spx_result* r) { return r ? r->r.final_stress : 0; }

int spx_result_final_crossings(const spx_result* r) { return r ? r->r.final_crossings : 0; }

double spx_result_final_min_angle(const spx_result* r) {
    return r ? r->r.final_min_angle_deg : 90;
}

int spx_result_trace_len(const spx_result* r) { return r ? int(r->r.trace.size()) : 0; }

void spx_result_trace_row(const spx_result* r, int index, int* iter, int* crossings,
                          double* stress, double* min_angle_deg, double* cost) {
    if (!r || index < 0 || index >= int(r->r.trace.size())) return;
    const spx::TraceRow& row = r->r.trace[index];
    if (iter) *iter = row.iter;
    if (crossings) *crossings = row.crossings;
    if (stress) *stress = row.stress;
    if (min_angle_deg) *min_angle_deg = row.min_angle_deg;
    if (cost) *cost = row.cost;
}

spx_status spx_result_trace_csv(const spx_result* r, char** out_csv) {
    if (spx_status st = require(r && out_csv, "result and out must not be NULL")) return st;
    return guarded([&] { *out_csv = copy_string(spx::trace_to_csv(r->r.trace)); });
}

void spx_result_config(const spx_result* r, spx_run_config* out) {
    if (!r || !out) return;
    *out = from_run_config(r->r.config);
}

int spx_result_lp_fallbacks(const spx_result* r) { return r ? r->r.diag.lp_fallbacks : 0; }

int spx_result_pairs_skipped(const spx_result* r) { return r ? r->r.diag.pairs_skipped : 0; }

int spx_result_jitters(const spx_result* r) { return r ? r->r.diag.jitters : 0; }

void spx_result_free(spx_result* r) { delete r; }

/* ---- parameter sweep --------------------------------------------------- */

void spx_sweep_config_init(spx_sweep_config* cfg) {
    if (!cfg) return;
    spx_run_config_init(&cfg->base);
    cfg->k_values = nullptr;
    cfg->k_count = 0;
    cfg->variants = nullptr;
    cfg->variant_count = 0;
    cfg->inits = nullptr;
    cfg->init_count = 0;
    cfg->restarts = 5;
    cfg->selection = SPX_SELECT_MIN_COST;
    cfg->threads = 0;
}

spx_status spx_sweep_run(const spx_graph* g, const spx_sweep_config* cfg,
                         spx_sweep_result** out) {
    if (spx_status st = require(g && cfg && out, "graph, config and out must not be NULL"))
        return st;
    if (spx_status st = check_run_config(&cfg->base)) return st;
    if (spx_status st = require(valid_enum(cfg->selection, 3), "unknown selection rule"))
        return st;
    return guarded([&] {
        spx::SweepGrid grid = spx::default_sweep_grid();
        if (cfg->k_values && cfg->k_count > 0)
            grid.k_values.assign(cfg->k_values, cfg->k_values + cfg->k_count);
        if (cfg->variants && cfg->variant_count > 0) {
            grid.variants.clear();
            for (int i = 0; i < cfg->variant_count; ++i) {
                if (!valid_enum(cfg->variants[i], 6))
                    throw spx::Error(spx::ErrorCode::InvalidArgument, "unknown descent variant");
                grid.variants.push_back(static_cast<spx::GDVariant>(cfg->variants[i]));
            }
        }
        if (cfg->inits && cfg->init_count > 0) {
            grid.inits.clear();
            for (int i = 0; i < cfg->init_count; ++i) {
                if (!valid_enum(cfg->inits[i], 3))
                    throw spx::Error(spx::ErrorCode::InvalidArgument,
                                     "unknown initialization method");
                grid.inits.push_back(static_cast<spx::InitMethod>(cfg->inits[i]));
            }
        }
        spx::SweepResult res =
            spx::sweep(g->g, grid, cfg->restarts, to_run_config(cfg->base),
                       static_cast<spx::Selection>(cfg->selection), cfg->threads);
        auto* wrapper = new spx_sweep_result;
        wrapper->runs.reserve(res.runs.size());
        for (spx::RunResult& r : res.runs) wrapper->runs.push_back(wrap_result(std::move(r)));
        wrapper->best = res.best;
        wrapper->failed = res.failed;
        *out = wrapper;
    });
}

int spx_sweep_result_count(const spx_sweep_result* s) { return s ? int(s->runs.size()) : 0; }

const spx_result* spx_sweep_result_run(const spx_sweep_result* s, int index) {
    if (!s || index < 0 || index >= int(s->runs.size())) return nullptr;
    return &s->runs[index];
}

int spx_sweep_result_best_index(const spx_sweep_result* s) { return s ? s->best : -1; }

int spx_sweep_result_failed_count(const spx_sweep_result* s) { return s ? s->failed : 0; }

void spx_sweep_result_free(spx_sweep_result* s) { delete s; }

/* ---- metrics and rendering --------------------------------------------- */

spx_status spx_metrics_json(const spx_graph* g, const spx_layout* l, char** out_json) {
    if (spx_status st = require(g && l && out_json, "graph, layout and out must not be NULL"))
        return st;
    if (spx_status st = require(l->l.size() == g->g.n, "layout size does not match vertex count"))
        return st;
    return guarded([&] {
        const spx::DistanceMatrix dm = spx::all_pairs_shortest_paths(g->g);
        *out_json = copy_string(spx::metrics_to_json(spx::report(l->l, g->g, dm)));
    });
}

void spx_svg_options_init(spx_svg_options* opt) {
    if (!opt) return;
    spx::SvgOptions defaults;
    opt->scale = defaults.scale;
    opt->node_radius = defaults.node_radius;
    opt->stroke_width = defaults.stroke_width;
    opt->arrowheads = defaults.arrowheads ? 1 : 0;
}

spx_status spx_render_svg(const spx_graph* g, const spx_layout* l, const spx_svg_options* opt,
                          char** out_svg) {
    if (spx_status st = require(g && l && out_svg, "graph, layout and out must not be NULL"))
        return st;
    if (spx_status st = require(l->l.size() == g->g.n, "layout size does not match vertex count"))
        return st;
    return guarded([&] {
        spx::SvgOptions options;
        if (opt) {
            options.scale = opt->scale;
            options.node_radius = opt->node_radius;
            options.stroke_width = opt->stroke_width;
            options.arrowheads = opt->arrowheads != 0;
        }
        *out_svg = copy_string(spx::render_svg(l->l, g->g, options));
    });
}

} // extern "C"
