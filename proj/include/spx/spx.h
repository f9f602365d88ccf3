/* spx: graph layout by joint minimization of stress and edge-crossing,
 * crossing-angle and upwardness penalties.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Functions that can fail return spx_status; SPX_OK is zero, and on any
 * failure spx_last_error() describes what went wrong (thread-local).
 * Strings the library hands out are released with spx_string_free().
 */
#ifndef SPX_H
#define SPX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spx_status {
    SPX_OK = 0,
    SPX_ERR_INVALID_ARGUMENT = 1,
    SPX_ERR_PARSE = 2,
    SPX_ERR_DISCONNECTED = 3,
    SPX_ERR_NOT_A_DAG = 4,
    SPX_ERR_GENERATION_FAILED = 5,
    SPX_ERR_DEGENERATE_SEGMENT = 6,
    SPX_ERR_LP_FAILURE = 7,
    SPX_ERR_SINGULAR_SYSTEM = 8,
    SPX_ERR_NON_FINITE = 9,
    SPX_ERR_IO = 10,
    SPX_ERR_INTERNAL = 11
} spx_status;

typedef enum spx_gd_variant {
    SPX_GD_VANILLA = 0,
    SPX_GD_MOMENTUM = 1,
    SPX_GD_NESTEROV = 2,
    SPX_GD_ADAGRAD = 3,
    SPX_GD_RMSPROP = 4,
    SPX_GD_ADAM = 5
} spx_gd_variant;

typedef enum spx_penalty_mode {
    SPX_MODE_CROSSING = 0,       /* penalize crossings */
    SPX_MODE_CROSSING_ANGLE = 1  /* additionally favor right-angle crossings */
} spx_penalty_mode;

typedef enum spx_init_method {
    SPX_INIT_STRESS_MAJORIZATION = 0,
    SPX_INIT_FORCE_DIRECTED = 1,
    SPX_INIT_RANDOM = 2
} spx_init_method;

typedef enum spx_selection {
    SPX_SELECT_MIN_COST = 0,
    SPX_SELECT_MAX_MIN_ANGLE = 1,
    SPX_SELECT_MIN_CROSSINGS = 2
} spx_selection;

typedef struct spx_graph spx_graph;
typedef struct spx_layout spx_layout;
typedef struct spx_result spx_result;
typedef struct spx_sweep_result spx_sweep_result;

const char* spx_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* spx_last_error(void);

void spx_string_free(char* s);

/* ---- graphs ------------------------------------------------------------ */

/* Text format: "n <count>" header, then "u v" (undirected) or "u > v"
 * (directed) per line; '#' comments and blank lines are ignored. */
spx_status spx_graph_parse(const char* text, spx_graph** out);
spx_status spx_graph_write(const spx_graph* g, char** out_text);

/* edges_uv holds edge_count (u, v) pairs; directed may be NULL for all-
 * undirected, otherwise one flag per edge. */
spx_status spx_graph_create(int n, const int* edges_uv, const int* directed, int edge_count,
                            spx_graph** out);

spx_status spx_graph_gen_dag(int n, double density, uint64_t seed, spx_graph** out);
spx_status spx_graph_gen_tree(int depth, spx_graph** out);
spx_status spx_graph_gen_community(int n, int communities, double p_in, double p_out,
                                   uint64_t seed, spx_graph** out);

int spx_graph_vertex_count(const spx_graph* g);
int spx_graph_edge_count(const spx_graph* g);
void spx_graph_edge(const spx_graph* g, int index, int* u, int* v, int* directed);
int spx_graph_is_dag(const spx_graph* g);
int spx_graph_is_connected(const spx_graph* g);
void spx_graph_free(spx_graph* g);

/* ---- layouts ----------------------------------------------------------- */

/* JSON form: {"n": <count>, "coords": [[x, y], ...]} */
spx_status spx_layout_parse(const char* json, spx_layout** out);
spx_status spx_layout_to_json(const spx_layout* l, char** out_json);
spx_status spx_layout_create(const double* xy, int n, spx_layout** out);
int spx_layout_size(const spx_layout* l);
void spx_layout_get(const spx_layout* l, int index, double* x, double* y);
void spx_layout_free(spx_layout* l);

/* Seeded starting layout on its own (also the stress-only baseline when
 * method is SPX_INIT_STRESS_MAJORIZATION). */
spx_status spx_initial_layout(const spx_graph* g, int init_method, uint64_t seed,
                              spx_layout** out);

/* ---- optimization ------------------------------------------------------ */

typedef struct spx_run_config {
    double K;              /* penalty weight, > 0 */
    int variant;           /* spx_gd_variant */
    int mode;              /* spx_penalty_mode */
    int init;              /* spx_init_method */
    uint64_t seed;
    int outer_iters;       /* separator refresh + descent step cycles */
    int inner_steps;       /* descent steps per refresh, normally 1 */
    int upward;            /* nonzero: directed edges must point upward */
    double upward_eps;     /* minimum y gap enforced by the repair pass */
    double upward_mu;      /* weight of the upwardness hinge during descent */
    int frozen_theta;      /* nonzero: keep cos^2(theta) constant in the step */
    double learning_rate;  /* <= 0 selects the per-variant default */
} spx_run_config;

void spx_run_config_init(spx_run_config* cfg);

spx_status spx_run(const spx_graph* g, const spx_run_config* cfg, spx_result** out);

/* Borrowed pointer, valid while the result lives. */
const spx_layout* spx_result_layout(const spx_result* r);
int spx_result_valid(const spx_result* r);
double spx_result_final_cost(const spx_result* r);
double spx_result_final_stress(const spx_result* r);
int spx_result_final_crossings(const spx_result* r);
double spx_result_final_min_angle(const spx_result* r);
int spx_result_trace_len(const spx_result* r);
void spx_result_trace_row(const spx_result* r, int index, int* iter, int* crossings,
                          double* stress, double* min_angle_deg, double* cost);
/* Header iter,crossings,stress,min_angle,cost plus one row per iteration. */
spx_status spx_result_trace_csv(const spx_result* r, char** out_csv);
void spx_result_config(const spx_result* r, spx_run_config* out);
int spx_result_lp_fallbacks(const spx_result* r);
int spx_result_pairs_skipped(const spx_result* r);
int spx_result_jitters(const spx_result* r);
void spx_result_free(spx_result* r);

/* ---- parameter sweep --------------------------------------------------- */

typedef struct spx_sweep_config {
    spx_run_config base;    /* seed, iters, mode, upward, gd settings */
    const double* k_values; /* NULL: default 2^-5 .. 2^5 */
    int k_count;
    const int* variants;    /* NULL: all six */
    int variant_count;
    const int* inits;       /* NULL: all three */
    int init_count;
    int restarts;           /* per cell; default 5 */
    int selection;          /* spx_selection */
    int threads;            /* 0: one per hardware thread */
} spx_sweep_config;

void spx_sweep_config_init(spx_sweep_config* cfg);

/* Runs the full cartesian grid. Cell order: restart fastest, then init,
 * variant, K; cell seeds derive from base.seed and the grid coordinates, so
 * results do not depend on the thread count. */
spx_status spx_sweep_run(const spx_graph* g, const spx_sweep_config* cfg,
                         spx_sweep_result** out);
int spx_sweep_result_count(const spx_sweep_result* s);
const spx_result* spx_sweep_result_run(const spx_sweep_result* s, int index);
int spx_sweep_result_best_index(const spx_sweep_result* s); /* -1: all failed */
int spx_sweep_result_failed_count(const spx_sweep_result* s);
void spx_sweep_result_free(spx_sweep_result* s);

/* ---- metrics and rendering --------------------------------------------- */

/* Flat JSON object: stress, crossings, min/avg crossing angle (degrees),
 * neighborhood preservation, drawing width/height/area, upward fraction. */
spx_status spx_metrics_json(const spx_graph* g, const spx_layout* l, char** out_json);

typedef struct spx_svg_options {
    double scale;        /* drawing units to pixels */
    double node_radius;  /* pixels */
    double stroke_width; /* pixels */
    int arrowheads;      /* nonzero: mark directed edges */
} spx_svg_options;

void spx_svg_options_init(spx_svg_options* opt);
spx_status spx_render_svg(const spx_graph* g, const spx_layout* l, const spx_svg_options* opt,
                          char** out_svg);

#ifdef __cplusplus
}
#endif

#endif /* SPX_H */
