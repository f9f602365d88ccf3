// Command-line front end over the spx C API: single layout runs, parameter
// sweeps, metric reports, corpus generation, and a small benchmark driver.
// Exit codes: 0 success, 1 usage error, 2 input/data error, 3 runtime failure.
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spx/spx.h"

namespace {

struct Fail {
    int code;
    std::string msg;
};

int exit_code_for(spx_status st) {
    switch (st) {
    case SPX_ERR_PARSE:
    case SPX_ERR_INVALID_ARGUMENT:
    case SPX_ERR_DISCONNECTED:
    case SPX_ERR_NOT_A_DAG:
        return 2;
    default:
        return 3;
    }
}

void check(spx_status st, const char* what) {
    if (st != SPX_OK) throw Fail{exit_code_for(st), std::string(what) + ": " + spx_last_error()};
}

// Owning wrappers so early throws cannot leak API objects.
struct OwnedStr {
    char* p = nullptr;
    ~OwnedStr() { spx_string_free(p); }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

template <typename T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(p); }
    T** out() { return &p; }
    operator T*() const { return p; }
};

using GraphHandle = Handle<spx_graph, spx_graph_free>;
using LayoutHandle = Handle<spx_layout, spx_layout_free>;
using ResultHandle = Handle<spx_result, spx_result_free>;
using SweepHandle = Handle<spx_sweep_result, spx_sweep_result_free>;

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Fail{2, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Fail{2, "read failed on " + path};
    return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Fail{3, "cannot write " + path};
    out << content;
    out.flush();
    if (!out) throw Fail{3, "write failed on " + path};
}

// Empty path means stdout.
void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::fwrite(content.data(), 1, content.size(), stdout);
    else
        write_text(path, content);
}

// Shortest decimal form that round-trips; independent of the locale.
std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

const std::map<std::string, int> kVariantMap{{"vanilla", SPX_GD_VANILLA},
                                             {"momentum", SPX_GD_MOMENTUM},
                                             {"nesterov", SPX_GD_NESTEROV},
                                             {"adagrad", SPX_GD_ADAGRAD},
                                             {"rmsprop", SPX_GD_RMSPROP},
                                             {"adam", SPX_GD_ADAM}};
const std::map<std::string, int> kInitMap{{"sm", SPX_INIT_STRESS_MAJORIZATION},
                                          {"fd", SPX_INIT_FORCE_DIRECTED},
                                          {"random", SPX_INIT_RANDOM}};
const std::map<std::string, int> kModeMap{{"crossing", SPX_MODE_CROSSING},
                                          {"angle", SPX_MODE_CROSSING_ANGLE}};
const std::map<std::string, int> kSelectMap{{"cost", SPX_SELECT_MIN_COST},
                                            {"angle", SPX_SELECT_MAX_MIN_ANGLE},
                                            {"crossings", SPX_SELECT_MIN_CROSSINGS}};

const char* kVariantNames[] = {"vanilla", "momentum", "nesterov", "adagrad", "rmsprop", "adam"};
const char* kInitNames[] = {"sm", "fd", "random"};

// Options shared by layout, sweep and bench.
struct RunOptions {
    double K = 2.0;
    int variant = SPX_GD_VANILLA;
    int mode = SPX_MODE_CROSSING;
    int init = SPX_INIT_STRESS_MAJORIZATION;
    uint64_t seed = 0;
    int iters = 100;
    bool upward = false;
    double upward_eps = 0.01;
    double upward_mu = 10.0;
    bool frozen_theta = false;
    double lr = 0;
};

void add_run_options(CLI::App* cmd, RunOptions& o, bool single_run) {
    if (single_run) {
        cmd->add_option("-K,--penalty-weight", o.K, "penalty weight")->capture_default_str();
        cmd->add_option("--variant", o.variant, "descent variant")
            ->transform(CLI::CheckedTransformer(kVariantMap, CLI::ignore_case));
        cmd->add_option("--init", o.init, "initial layout: sm, fd or random")
            ->transform(CLI::CheckedTransformer(kInitMap, CLI::ignore_case));
    }
    cmd->add_option("--mode", o.mode, "penalty mode: crossing or angle")
        ->transform(CLI::CheckedTransformer(kModeMap, CLI::ignore_case));
    cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
    cmd->add_option("--iters", o.iters, "outer iterations")->capture_default_str();
    cmd->add_flag("--upward", o.upward, "enforce upward directed edges (DAG input)");
    cmd->add_option("--upward-eps", o.upward_eps, "minimum upward y gap")->capture_default_str();
    cmd->add_option("--upward-mu", o.upward_mu, "upward hinge weight")->capture_default_str();
    cmd->add_flag("--frozen-theta", o.frozen_theta,
                  "keep crossing angles constant within each descent step");
    cmd->add_option("--lr", o.lr, "learning rate (<= 0: per-variant default)");
}

spx_run_config make_run_config(const RunOptions& o) {
    spx_run_config cfg;
    spx_run_config_init(&cfg);
    cfg.K = o.K;
    cfg.variant = o.variant;
    cfg.mode = o.mode;
    cfg.init = o.init;
    cfg.seed = o.seed;
    cfg.outer_iters = o.iters;
    cfg.upward = o.upward ? 1 : 0;
    cfg.upward_eps = o.upward_eps;
    cfg.upward_mu = o.upward_mu;
    cfg.frozen_theta = o.frozen_theta ? 1 : 0;
    cfg.learning_rate = o.lr;
    return cfg;
}

// Options specific to the sweep grid.
struct SweepOptions {
    std::string k_grid;
    std::vector<int> variants;
    std::vector<int> inits;
    int restarts = 5;
    int selection = SPX_SELECT_MIN_COST;
    int threads = 0;
};

void add_sweep_options(CLI::App* cmd, SweepOptions& o) {
    cmd->add_option("--k-grid", o.k_grid,
                    "penalty weights: lo..hi expands to the powers of two in range "
                    "(2^-5 style accepted); a single value is used as-is");
    cmd->add_option("--variants", o.variants, "descent variants to sweep (comma separated)")
        ->delimiter(',')
        ->transform(CLI::CheckedTransformer(kVariantMap, CLI::ignore_case));
    cmd->add_option("--inits", o.inits, "initial layouts to sweep (comma separated)")
        ->delimiter(',')
        ->transform(CLI::CheckedTransformer(kInitMap, CLI::ignore_case));
    cmd->add_option("--restarts", o.restarts, "restarts per grid cell")->capture_default_str();
    cmd->add_option("--select", o.selection, "winner rule: cost, angle or crossings")
        ->transform(CLI::CheckedTransformer(kSelectMap, CLI::ignore_case));
    cmd->add_option("--threads", o.threads, "worker threads (0: hardware)")->capture_default_str();
}

double parse_k_value(const std::string& s) {
    if (s.rfind("2^", 0) == 0) {
        int e = 0;
        auto res = std::from_chars(s.data() + 2, s.data() + s.size(), e);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw Fail{1, "bad exponent in '" + s + "'"};
        return std::ldexp(1.0, e);
    }
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw Fail{1, "bad value '" + s + "'"};
    return v;
}

std::vector<double> parse_k_grid(const std::string& text) {
    auto pos = text.find("..");
    if (pos == std::string::npos) {
        double v = parse_k_value(text);
        if (!(v > 0)) throw Fail{1, "--k-grid values must be positive"};
        return {v};
    }
    double lo = parse_k_value(text.substr(0, pos));
    double hi = parse_k_value(text.substr(pos + 2));
    if (!(lo > 0) || !(hi >= lo)) throw Fail{1, "bad --k-grid range '" + text + "'"};
    std::vector<double> ks;
    for (int e = -64; e <= 64; ++e) {
        double v = std::ldexp(1.0, e);
        if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12)) ks.push_back(v);
    }
    if (ks.empty()) throw Fail{1, "no powers of two inside '" + text + "'"};
    return ks;
}

void fill_sweep_config(spx_sweep_config& sc, const RunOptions& run, const SweepOptions& sw,
                       std::vector<double>& k_storage) {
    spx_sweep_config_init(&sc);
    sc.base = make_run_config(run);
    if (!sw.k_grid.empty()) {
        k_storage = parse_k_grid(sw.k_grid);
        sc.k_values = k_storage.data();
        sc.k_count = int(k_storage.size());
    }
    if (!sw.variants.empty()) {
        sc.variants = sw.variants.data();
        sc.variant_count = int(sw.variants.size());
    }
    if (!sw.inits.empty()) {
        sc.inits = sw.inits.data();
        sc.init_count = int(sw.inits.size());
    }
    sc.restarts = sw.restarts;
    sc.selection = sw.selection;
    sc.threads = sw.threads;
}

void parse_graph_file(const std::string& path, GraphHandle& g) {
    std::string text = read_text(path);
    if (spx_status st = spx_graph_parse(text.c_str(), g.out()); st != SPX_OK)
        throw Fail{exit_code_for(st), path + ": " + spx_last_error()};
}

std::string layout_json_of(const spx_layout* l) {
    OwnedStr js;
    check(spx_layout_to_json(l, &js.p), "serialize layout");
    return js.str() + "\n";
}

std::string runs_csv(const spx_sweep_result* s, int restarts) {
    std::string csv =
        "index,K,variant,init,restart,seed,valid,final_cost,final_stress,"
        "final_crossings,final_min_angle\n";
    const int count = spx_sweep_result_count(s);
    for (int i = 0; i < count; ++i) {
        const spx_result* r = spx_sweep_result_run(s, i);
        spx_run_config rc;
        spx_result_config(r, &rc);
        csv += std::to_string(i) + ',' + fmt(rc.K) + ',' + kVariantNames[rc.variant] + ',' +
               kInitNames[rc.init] + ',' + std::to_string(restarts > 0 ? i % restarts : 0) + ',' +
               std::to_string(rc.seed) + ',' + (spx_result_valid(r) ? '1' : '0') + ',' +
               fmt(spx_result_final_cost(r)) + ',' + fmt(spx_result_final_stress(r)) + ',' +
               std::to_string(spx_result_final_crossings(r)) + ',' +
               fmt(spx_result_final_min_angle(r)) + '\n';
    }
    return csv;
}

// One CSV row of the metric report for a named graph/algorithm pair.
std::string metrics_row(const std::string& graph_name, const std::string& algorithm,
                        const spx_graph* g, const spx_layout* l) {
    OwnedStr js;
    check(spx_metrics_json(g, l, &js.p), "metrics");
    nlohmann::json j = nlohmann::json::parse(js.str());
    auto d = [&](const char* key) { return fmt(j.at(key).get<double>()); };
    return graph_name + ',' + algorithm + ',' + d("stress") + ',' +
           std::to_string(j.at("crossings").get<long long>()) + ',' +
           d("min_crossing_angle_deg") + ',' + d("avg_crossing_angle_deg") + ',' +
           d("neighborhood_preservation") + ',' + d("drawing_width") + ',' +
           d("drawing_height") + ',' + d("drawing_area") + ',' + d("upward_fraction") + '\n';
}

double layout_stress(const spx_graph* g, const spx_layout* l) {
    OwnedStr js;
    check(spx_metrics_json(g, l, &js.p), "metrics");
    return nlohmann::json::parse(js.str()).at("stress").get<double>();
}

/* ---- subcommands ------------------------------------------------------- */

int cmd_layout(const std::string& graph_path, const RunOptions& run, const std::string& out_path,
               const std::string& svg_path, const std::string& trace_path) {
    GraphHandle g;
    parse_graph_file(graph_path, g);
    spx_run_config cfg = make_run_config(run);
    ResultHandle r;
    check(spx_run(g, &cfg, r.out()), "layout");
    if (!spx_result_valid(r)) throw Fail{3, "optimization diverged; partial trace discarded"};
    emit(out_path, layout_json_of(spx_result_layout(r)));
    if (!svg_path.empty()) {
        OwnedStr svg;
        check(spx_render_svg(g, spx_result_layout(r), nullptr, &svg.p), "render svg");
        write_text(svg_path, svg.str());
    }
    if (!trace_path.empty()) {
        OwnedStr csv;
        check(spx_result_trace_csv(r, &csv.p), "trace");
        write_text(trace_path, csv.str());
    }
    std::fprintf(stderr, "cost %s  stress %s  crossings %d  min angle %s deg\n",
                 fmt(spx_result_final_cost(r)).c_str(), fmt(spx_result_final_stress(r)).c_str(),
                 spx_result_final_crossings(r), fmt(spx_result_final_min_angle(r)).c_str());
    return 0;
}

int cmd_sweep(const std::string& graph_path, const RunOptions& run, const SweepOptions& sw,
              const std::string& out_path, const std::string& all_csv_path) {
    GraphHandle g;
    parse_graph_file(graph_path, g);
    spx_sweep_config sc;
    std::vector<double> k_storage;
    fill_sweep_config(sc, run, sw, k_storage);
    SweepHandle s;
    check(spx_sweep_run(g, &sc, s.out()), "sweep");
    if (!all_csv_path.empty()) write_text(all_csv_path, runs_csv(s, sw.restarts));
    const int best = spx_sweep_result_best_index(s);
    if (best < 0) throw Fail{3, "every sweep run diverged"};
    const spx_result* winner = spx_sweep_result_run(s, best);
    emit(out_path, layout_json_of(spx_result_layout(winner)));
    std::fprintf(stderr, "%d runs (%d failed), best #%d: cost %s  crossings %d\n",
                 spx_sweep_result_count(s), spx_sweep_result_failed_count(s), best,
                 fmt(spx_result_final_cost(winner)).c_str(), spx_result_final_crossings(winner));
    return 0;
}

int cmd_metrics(const std::string& graph_path, const std::string& layout_path,
                const std::string& out_path) {
    GraphHandle g;
    parse_graph_file(graph_path, g);
    LayoutHandle l;
    std::string text = read_text(layout_path);
    if (spx_status st = spx_layout_parse(text.c_str(), l.out()); st != SPX_OK)
        throw Fail{exit_code_for(st), layout_path + ": " + spx_last_error()};
    OwnedStr js;
    check(spx_metrics_json(g, l, &js.p), "metrics");
    emit(out_path, js.str() + "\n");
    return 0;
}

int cmd_gen(const GraphHandle& g, const std::string& out_path) {
    OwnedStr text;
    check(spx_graph_write(g, &text.p), "serialize graph");
    emit(out_path, text.str());
    return 0;
}

int cmd_bench(const std::string& corpus_dir, const std::string& baseline, const RunOptions& run,
              const SweepOptions& sw, const std::string& out_path) {
    if (baseline != "stress") throw Fail{1, "unknown baseline '" + baseline + "'"};
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    if (ec) throw Fail{2, "cannot read directory " + corpus_dir};
    if (files.empty()) throw Fail{2, "no .txt graphs under " + corpus_dir};
    std::sort(files.begin(), files.end());

    std::string csv =
        "graph,algorithm,stress,crossings,min_crossing_angle_deg,avg_crossing_angle_deg,"
        "neighborhood_preservation,drawing_width,drawing_height,drawing_area,upward_fraction\n";
    for (const auto& path : files) {
        GraphHandle g;
        parse_graph_file(path.string(), g);
        const std::string name = path.filename().string();

        // Baseline: best of the same number of restarts by stress alone.
        LayoutHandle base_best;
        double base_stress = 0;
        for (int r = 0; r < std::max(1, sw.restarts); ++r) {
            LayoutHandle l;
            check(spx_initial_layout(g, SPX_INIT_STRESS_MAJORIZATION, run.seed + uint64_t(r),
                                     l.out()),
                  "baseline layout");
            double s = layout_stress(g, l);
            if (!base_best.p || s < base_stress) {
                std::swap(base_best.p, l.p);
                base_stress = s;
            }
        }
        csv += metrics_row(name, baseline, g, base_best);

        spx_sweep_config sc;
        std::vector<double> k_storage;
        fill_sweep_config(sc, run, sw, k_storage);
        SweepHandle s;
        check(spx_sweep_run(g, &sc, s.out()), "sweep");
        const int best = spx_sweep_result_best_index(s);
        if (best < 0) throw Fail{3, "every sweep run diverged on " + name};
        csv += metrics_row(name, "spx", g, spx_result_layout(spx_sweep_result_run(s, best)));
        std::fprintf(stderr, "%s done\n", name.c_str());
    }
    emit(out_path, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph layout by joint minimization of stress and crossing penalties"};
    app.set_version_flag("--version", spx_version());
    app.require_subcommand(1);

    std::string graph_path, layout_path, out_path, svg_path, trace_path, all_csv_path;
    std::string corpus_dir, baseline = "stress";
    RunOptions run;
    SweepOptions sw;

    CLI::App* layout = app.add_subcommand("layout", "optimize one layout");
    layout->add_option("graph", graph_path, "graph file")->required();
    add_run_options(layout, run, true);
    layout->add_option("-o,--out", out_path, "layout JSON destination (default stdout)");
    layout->add_option("--svg", svg_path, "also render an SVG here");
    layout->add_option("--trace", trace_path, "write the per-iteration trace CSV here");

    CLI::App* sweep = app.add_subcommand("sweep", "grid sweep, keep the best layout");
    sweep->add_option("graph", graph_path, "graph file")->required();
    add_run_options(sweep, run, false);
    add_sweep_options(sweep, sw);
    sweep->add_option("-o,--out", out_path, "best layout JSON destination (default stdout)");
    sweep->add_option("--all-csv", all_csv_path, "write one CSV row per run here");

    CLI::App* metrics = app.add_subcommand("metrics", "measure a stored layout");
    metrics->add_option("graph", graph_path, "graph file")->required();
    metrics->add_option("layout", layout_path, "layout JSON file")->required();
    metrics->add_option("-o,--out", out_path, "report destination (default stdout)");

    CLI::App* gen = app.add_subcommand("gen", "generate a graph");
    gen->require_subcommand(1);
    int gen_n = 10, gen_depth = 3, gen_communities = 5;
    double gen_density = 2.0, gen_p_in = 0.3, gen_p_out = 0.01;
    uint64_t gen_seed = 0;
    CLI::App* gen_dag = gen->add_subcommand("dag", "random connected DAG");
    gen_dag->add_option("--n", gen_n, "vertices")->capture_default_str();
    gen_dag->add_option("--density", gen_density, "edges per vertex")->capture_default_str();
    gen_dag->add_option("--seed", gen_seed, "random seed")->capture_default_str();
    CLI::App* gen_tree = gen->add_subcommand("tree", "complete binary tree, root downward");
    gen_tree->add_option("--depth", gen_depth, "tree depth")->capture_default_str();
    CLI::App* gen_community = gen->add_subcommand("community", "planted-partition graph");
    gen_community->add_option("--n", gen_n, "vertices")->capture_default_str();
    gen_community->add_option("--communities", gen_communities, "blocks")->capture_default_str();
    gen_community->add_option("--p-in", gen_p_in, "within-block edge probability")
        ->capture_default_str();
    gen_community->add_option("--p-out", gen_p_out, "between-block edge probability")
        ->capture_default_str();
    gen_community->add_option("--seed", gen_seed, "random seed")->capture_default_str();
    for (CLI::App* sub : {gen_dag, gen_tree, gen_community})
        sub->add_option("-o,--out", out_path, "graph file destination (default stdout)");

    CLI::App* bench = app.add_subcommand("bench", "sweep a corpus against a plain-stress baseline");
    bench->add_option("corpus", corpus_dir, "directory of .txt graph files")->required();
    bench->add_option("--baseline", baseline, "baseline algorithm (stress)")
        ->capture_default_str();
    add_run_options(bench, run, false);
    add_sweep_options(bench, sw);
    bench->add_option("-o,--out", out_path, "results CSV destination (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*layout) return cmd_layout(graph_path, run, out_path, svg_path, trace_path);
        if (*sweep) return cmd_sweep(graph_path, run, sw, out_path, all_csv_path);
        if (*metrics) return cmd_metrics(graph_path, layout_path, out_path);
        if (*gen) {
            GraphHandle g;
            if (*gen_dag)
                check(spx_graph_gen_dag(gen_n, gen_density, gen_seed, g.out()), "generate");
            else if (*gen_tree)
                check(spx_graph_gen_tree(gen_depth, g.out()), "generate");
            else
                check(spx_graph_gen_community(gen_n, gen_communities, gen_p_in, gen_p_out,
                                              gen_seed, g.out()),
                      "generate");
            return cmd_gen(g, out_path);
        }
        if (*bench) return cmd_bench(corpus_dir, baseline, run, sw, out_path);
    } catch (const Fail& f) {
        std::fprintf(stderr, "error: %s\n", f.msg.c_str());
        return f.code;
    }
    return 0;
}
