/* fairclust: fair (balanced) clustering toolkit, C interface.
 *
 * All functions returning fc_status set a thread-local error message on
 * failure, readable via fc_last_error_message(). Objects returned through
 * out-parameters are owned by the caller and released with the matching
 * _free function. Exponents are positive integers at this boundary, with
 * FC_EXP_INF standing for the infinity norm.
 */
#ifndef FAIRCLUST_H
#define FAIRCLUST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
    FC_OK = 0,
    FC_ERR_INVALID_ARGUMENT = 1,
    FC_ERR_DIMENSION_MISMATCH = 2,
    FC_ERR_UNBALANCED_DATASET = 3,
    FC_ERR_INFEASIBLE = 4,
    FC_ERR_TOO_LARGE = 5,
    FC_ERR_UNSUPPORTED = 6,
    FC_ERR_PARSE = 7,
    FC_ERR_IO = 8,
    FC_ERR_INTERNAL = 9
} fc_status;

#define FC_EXP_INF (-1)

typedef struct fc_dataset fc_dataset;
typedef struct fc_emd_table fc_emd_table;
typedef struct fc_result fc_result;
typedef struct fc_spec fc_spec;

/* Message for the most recent failure on this thread; never NULL. */
const char* fc_last_error_message(void);
const char* fc_status_name(fc_status status);

/* The library's seed-stream mixer; lets callers derive per-task seeds the
 * same way the library does internally. */
uint64_t fc_mix_seed(uint64_t seed, uint64_t stream);

/* ---- datasets ---- */

/* Coordinate dataset: num_points x dim row-major coordinates plus a color
 * (protected-group label) per point. Colors must cover 0..max contiguously. */
fc_status fc_dataset_create(const double* coords, int num_points, int dim, const int* colors,
                            fc_dataset** out);

/* Metric dataset: explicit num_points x num_points distance matrix, validated
 * as a metric (symmetry, zero diagonal, triangle inequality). */
fc_status fc_dataset_create_metric(const double* distances, int num_points, const int* colors,
                                   fc_dataset** out);

/* Numeric CSV with a header; the column named "color" holds the labels and
 * every other column is a coordinate. */
fc_status fc_dataset_read_points_csv(const char* path, fc_dataset** out);

/* Gaussian blobs shared by all colors with a per-color shift along the first
 * axis; the synthetic benchmark family. */
fc_status fc_dataset_gaussian_mixture(int colors, int per_color, int dim, int blobs,
                                      double blob_spread, double noise_sigma, double color_shift,
                                      uint64_t seed, fc_dataset** out);

void fc_dataset_free(fc_dataset* ds);
int fc_dataset_num_points(const fc_dataset* ds);
int fc_dataset_dim(const fc_dataset* ds);
int fc_dataset_num_colors(const fc_dataset* ds);
int fc_dataset_balanced(const fc_dataset* ds);

/* ---- earth mover's distance ---- */

/* EMD between two equal-size color classes under the (p, q) norm: the cost of
 * an optimal perfect matching (greedy != 0 switches to the greedy matcher). */
fc_status fc_emd(const fc_dataset* ds, int color_a, int color_b, int p, int q, int greedy,
                 double* out);

/* All pairwise EMD values and matchings, computed once and shareable across
 * runs on the same dataset. */
fc_status fc_emd_table_create(const fc_dataset* ds, int p, int q, int greedy,
                              fc_emd_table** out);
void fc_emd_table_free(fc_emd_table* table);
fc_status fc_emd_table_value(const fc_emd_table* table, int color_a, int color_b, double* out);
/* (sum_j EMD(base, j)^p)^(1/p), max over j when p is FC_EXP_INF. */
fc_status fc_emd_table_aggregate(const fc_emd_table* table, int base_color, int p, double* out);

/* ---- clustering methods ---- */

typedef enum fc_method {
    FC_METHOD_RELAY_ALL = 0,     /* per-color solve + matching relay, best color */
    FC_METHOD_RELAY_MIN_EMD = 1, /* solve only the min-aggregate-EMD color */
    FC_METHOD_TRANSPORT_ALL = 2, /* per-color solve + exact fair reassignment */
    FC_METHOD_RELAY_SAMPLED = 3, /* relay at a sampled base color */
    FC_METHOD_FAIRLET_BOUND = 4, /* cheapest fairlet decomposition, ignores k */
    FC_METHOD_KMEDIANPP = 5,     /* unconstrained baseline, not balanced */
    FC_METHOD_FAIR_KCENTER = 6   /* farthest-first + balanced assignment */
} fc_method;

typedef enum fc_solver {
    FC_SOLVER_LOCAL_SEARCH = 0,
    FC_SOLVER_KPP_MEDOIDS = 1,
    FC_SOLVER_FARTHEST_FIRST = 2,
    FC_SOLVER_LLOYD = 3,
    FC_SOLVER_EXHAUSTIVE = 4
} fc_solver;

typedef struct fc_run_options {
    int k;
    int p;                        /* aggregation exponent, FC_EXP_INF for max */
    int q;                        /* ground norm exponent */
    int method;                   /* fc_method */
    int solver;                   /* fc_solver, used inside reductions */
    int max_iterations;
    double improvement_threshold; /* relative, for local search / refinement */
    double delta;                 /* failure probability, sampled variant */
    int greedy_emd;               /* nonzero: greedy matchings where allowed */
    uint64_t seed;
} fc_run_options;

/* Fills in the documented defaults: k=2, p=q=1, relay_all, local search,
 * 100 iterations, threshold 1e-4, delta 0.1, exact EMD, seed 0. */
void fc_run_options_init(fc_run_options* opts);

/* Runs one method. `table` may be NULL; when given it must have been created
 * on the same dataset and is used only where its norm and mode apply. */
fc_status fc_run_method(const fc_dataset* ds, const fc_run_options* opts,
                        const fc_emd_table* table, fc_result** out);

/* Clusters an externally supplied fairlet decomposition: fairlet_ids holds
 * one group id per point, each group with exactly one point per color. */
fc_status fc_run_external_fairlets(const fc_dataset* ds, const int* fairlet_ids,
                                   const fc_run_options* opts, fc_result** out);

/* ---- results ---- */

void fc_result_free(fc_result* result);
double fc_result_cost(const fc_result* result);
int fc_result_balanced(const fc_result* result);
int fc_result_base_color(const fc_result* result); /* -1 when not applicable */
double fc_result_wall_ms(const fc_result* result);
int fc_result_num_centers(const fc_result* result);
/* Coordinate dimension of the centers, 0 when they are dataset points. */
int fc_result_center_dim(const fc_result* result);
/* Cluster slot per point; `assignment` must hold num_points ints. */
fc_status fc_result_assignment(const fc_result* result, int* assignment);
/* Dataset index of a medoid center, or -1 for coordinate centers. */
fc_status fc_result_center_index(const fc_result* result, int slot, int* out);
/* Coordinates of one center when center_dim > 0; `out` must hold center_dim
 * doubles. Medoid centers are read through fc_result_center_index instead. */
fc_status fc_result_center_coords(const fc_result* result, int slot, double* out);

/* ---- exhaustive oracles (tiny inputs) ---- */

/* Optimal balanced clustering; bounds as documented for the oracle module. */
fc_status fc_oracle_fair_opt(const fc_dataset* ds, int k, int p, int q, fc_result** out);

/* Optimal balanced assignment to fixed medoid centers. */
fc_status fc_oracle_fair_assign(const fc_dataset* ds, const int* center_indices, int k, int p,
                                int q, fc_result** out);

/* Cost of the optimal unconstrained medoid clustering. */
fc_status fc_oracle_unconstrained(const fc_dataset* ds, int k, int p, int q, double* out);

/* ---- spec-driven corpora ---- */

/* Opens a dataset spec file and loads its CSV source eagerly. */
fc_status fc_spec_open(const char* path, fc_spec** out);
void fc_spec_free(fc_spec* spec);
const char* fc_spec_name(const fc_spec* spec);
int fc_spec_num_samples(const fc_spec* spec);
int fc_spec_subsample_size(const fc_spec* spec);
int fc_spec_num_colors(const fc_spec* spec);
long fc_spec_rows_kept(const fc_spec* spec);
/* Balanced subsample number `sample_id`, seeded by the spec seed. */
fc_status fc_spec_sample(const fc_spec* spec, int sample_id, fc_dataset** out);

/* ---- certification ---- */

typedef struct fc_certify_report {
    long trials;
    long relay_checked;
    long center_checked;
    long violations;
    double max_relay_ratio;   /* certified bound: 3 */
    double max_min_emd_ratio; /* certified bound: 5 */
    double max_center_ratio;  /* certified bound: 3 */
    int ok;
} fc_certify_report;

/* Random small instances checked against the exhaustive oracles. */
fc_status fc_certify(long trials, uint64_t seed, fc_certify_report* out);

#ifdef __cplusplus
}
#endif

#endif /* FAIRCLUST_H */
