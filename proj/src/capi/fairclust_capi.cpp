#include "fairclust/fairclust.h"

#include <chrono>
#include <cstdlib>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bench.hpp"
#include "data.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "fair_center.hpp"
#include "matching.hpp"
#include "oracle.hpp"
#include "reduce.hpp"
#include "rng.hpp"

namespace fc = fairclust;

struct fc_dataset {
    fc::ColoredDataset ds;
};

struct fc_emd_table {
    const fc_dataset* owner;
    std::shared_ptr<const fc::EmdTable> table;
};

struct fc_result {
    fc::MethodRun run;
    int num_points;
};

struct fc_spec {
    fc::DatasetSpec spec;
    fc::RawTable table;
};

namespace {

thread_local std::string t_error = "ok";

fc_status to_status(fc::errc code) {
    switch (code) {
        case fc::errc::invalid_argument: return FC_ERR_INVALID_ARGUMENT;
        case fc::errc::dimension_mismatch: return FC_ERR_DIMENSION_MISMATCH;
        case fc::errc::unbalanced_dataset: return FC_ERR_UNBALANCED_DATASET;
        case fc::errc::infeasible: return FC_ERR_INFEASIBLE;
        case fc::errc::too_large: return FC_ERR_TOO_LARGE;
        case fc::errc::unsupported: return FC_ERR_UNSUPPORTED;
        case fc::errc::parse_error: return FC_ERR_PARSE;
        case fc::errc::io_error: return FC_ERR_IO;
        case fc::errc::internal_error: return FC_ERR_INTERNAL;
    }
    return FC_ERR_INTERNAL;
}

template <typename F>
fc_status guard(F&& f) {
    try {
        f();
        return FC_OK;
    } catch (const fc::Error& e) {
        t_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        t_error = e.what();
        return FC_ERR_INTERNAL;
    }
}

fc_status fail(fc_status status, const char* msg) {
    t_error = msg;
    return status;
}

fc::Exponent to_exp(int v, const char* what) {
    if (v == FC_EXP_INF) return fc::Exponent::infinity();
    if (v >= 1) return fc::Exponent::finite(v);
    fc::raise(fc::errc::invalid_argument,
              std::string(what) + " must be a positive integer or FC_EXP_INF");
}

fc::NormSpec to_norm(int p, int q) { return fc::NormSpec{to_exp(p, "p"), to_exp(q, "q")}; }

fc::SolverAlgorithm to_solver(int solver) {
    switch (solver) {
        case FC_SOLVER_LOCAL_SEARCH: return fc::SolverAlgorithm::local_search_kmedian;
        case FC_SOLVER_KPP_MEDOIDS: return fc::SolverAlgorithm::kpp_seed_medoids;
        case FC_SOLVER_FARTHEST_FIRST: return fc::SolverAlgorithm::farthest_first;
        case FC_SOLVER_LLOYD: return fc::SolverAlgorithm::lloyd_kmeans;
        case FC_SOLVER_EXHAUSTIVE: return fc::SolverAlgorithm::exhaustive;
        default: fc::raise(fc::errc::invalid_argument, "unknown solver id");
    }
}

fc::RunOptions to_run_options(const fc_run_options& o) {
    if (o.method < 0 || o.method >= fc::kNumMethods)
        fc::raise(fc::errc::invalid_argument, "unknown method id");
    fc::RunOptions opts;
    opts.k = o.k;
    opts.norm = to_norm(o.p, o.q);
    opts.algorithm = to_solver(o.solver);
    opts.max_iterations = o.max_iterations;
    opts.improvement_threshold = o.improvement_threshold;
    opts.delta = o.delta;
    opts.emd_mode = o.greedy_emd ? fc::EmdMode::greedy : fc::EmdMode::exact;
    opts.seed = o.seed;
    return opts;
}

fc_result* wrap_clustering(const fc::ColoredDataset& ds, fc::FairClustering clustering,
                           double wall_ms) {
    fc::MethodRun run;
    run.cost = clustering.cost;
    run.balanced = fc::verify_balance(ds, clustering).balanced;
    run.base_color = -1;
    run.wall_ms = wall_ms;
    run.clustering = std::move(clustering);
    return new fc_result{std::move(run), ds.num_points()};
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

extern "C" {

const char* fc_last_error_message(void) { return t_error.c_str(); }

uint64_t fc_mix_seed(uint64_t seed, uint64_t stream) { return fc::mix_seed(seed, stream); }

const char* fc_status_name(fc_status status) {
    switch (status) {
        case FC_OK: return "ok";
        case FC_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case FC_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
        case FC_ERR_UNBALANCED_DATASET: return "unbalanced_dataset";
        case FC_ERR_INFEASIBLE: return "infeasible";
        case FC_ERR_TOO_LARGE: return "too_large";
        case FC_ERR_UNSUPPORTED: return "unsupported";
        case FC_ERR_PARSE: return "parse_error";
        case FC_ERR_IO: return "io_error";
        case FC_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

fc_status fc_dataset_create(const double* coords, int num_points, int dim, const int* colors,
                            fc_dataset** out) {
    if (!coords || !colors || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    if (num_points < 1 || dim < 1)
        return fail(FC_ERR_INVALID_ARGUMENT, "num_points and dim must be positive");
    return guard([&] {
        std::vector<double> c(coords, coords + static_cast<std::size_t>(num_points) * dim);
        std::vector<int> col(colors, colors + num_points);
        *out = new fc_dataset{fc::ColoredDataset(std::move(c), dim, std::move(col))};
    });
}

fc_status fc_dataset_create_metric(const double* distances, int num_points, const int* colors,
                                   fc_dataset** out) {
    if (!distances || !colors || !out)
        return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    if (num_points < 1) return fail(FC_ERR_INVALID_ARGUMENT, "num_points must be positive");
    return guard([&] {
        std::vector<double> d(distances,
                              distances + static_cast<std::size_t>(num_points) * num_points);
        std::vector<int> col(colors, colors + num_points);
        *out = new fc_dataset{
            fc::ColoredDataset::from_distance_matrix(std::move(d), std::move(col))};
    });
}

fc_status fc_dataset_read_points_csv(const char* path, fc_dataset** out) {
    if (!path || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] {
        const auto rows = fc::read_csv_rows(path);
        const auto& header = rows.front();
        int color_col = -1;
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == "color") color_col = static_cast<int>(c);
        if (color_col < 0)
            fc::raise(fc::errc::parse_error, std::string(path) + ": no 'color' column");
        const int dim = static_cast<int>(header.size()) - 1;
        if (dim < 1) fc::raise(fc::errc::parse_error, std::string(path) + ": no feature columns");
        std::vector<double> coords;
        std::vector<int> colors;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            if (rows[r].size() != header.size())
                fc::raise(fc::errc::parse_error,
                          std::string(path) + ": row " + std::to_string(r) + ": wrong field count");
            for (std::size_t c = 0; c < rows[r].size(); ++c) {
                char* end = nullptr;
                const std::string& cell = rows[r][c];
                double v = std::strtod(cell.c_str(), &end);
                if (cell.empty() || end != cell.c_str() + cell.size())
                    fc::raise(fc::errc::parse_error, std::string(path) + ": row " +
                                                         std::to_string(r) + ": non-numeric '" +
                                                         cell + "'");
                if (static_cast<int>(c) == color_col)
                    colors.push_back(static_cast<int>(v));
                else
                    coords.push_back(v);
            }
        }
        *out = new fc_dataset{fc::ColoredDataset(std::move(coords), dim, std::move(colors))};
    });
}

fc_status fc_dataset_gaussian_mixture(int colors, int per_color, int dim, int blobs,
                                      double blob_spread, double noise_sigma, double color_shift,
                                      uint64_t seed, fc_dataset** out) {
    if (!out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] {
        *out = new fc_dataset{fc::make_gaussian_mixture(colors, per_color, dim, blobs, blob_spread,
                                                        noise_sigma, color_shift, seed)};
    });
}

void fc_dataset_free(fc_dataset* ds) { delete ds; }

int fc_dataset_num_points(const fc_dataset* ds) { return ds ? ds->ds.num_points() : 0; }
int fc_dataset_dim(const fc_dataset* ds) { return ds ? ds->ds.dim() : 0; }
int fc_dataset_num_colors(const fc_dataset* ds) { return ds ? ds->ds.num_colors() : 0; }
int fc_dataset_balanced(const fc_dataset* ds) { return ds && ds->ds.balanced() ? 1 : 0; }

fc_status fc_emd(const fc_dataset* ds, int color_a, int color_b, int p, int q, int greedy,
                 double* out) {
    if (!ds || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] {
        *out = fc::emd(ds->ds, color_a, color_b, to_norm(p, q),
                       greedy ? fc::EmdMode::greedy : fc::EmdMode::exact);
    });
}

fc_status fc_emd_table_create(const fc_dataset* ds, int p, int q, int greedy,
                              fc_emd_table** out) {
    if (!ds || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] {
        auto table = std::make_shared<fc::EmdTable>(fc::EmdTable::compute(
            ds->ds, to_norm(p, q), greedy ? fc::EmdMode::greedy : fc::EmdMode::exact));
        *out = new fc_emd_table{ds, std::move(table)};
    });
}

void fc_emd_table_free(fc_emd_table* table) { delete table; }

fc_status fc_emd_table_value(const fc_emd_table* table, int color_a, int color_b, double* out) {
    if (!table || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] { *out = table->table->value(color_a, color_b); });
}

fc_status fc_emd_table_aggregate(const fc_emd_table* table, int base_color, int p, double* out) {
    if (!table || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] { *out = table->table->aggregate(base_color, to_exp(p, "p")); });
}

void fc_run_options_init(fc_run_options* opts) {
    if (!opts) return;
    opts->k = 2;
    opts->p = 1;
    opts->q = 1;
    opts->method = FC_METHOD_RELAY_ALL;
    opts->solver = FC_SOLVER_LOCAL_SEARCH;
    opts->max_iterations = 100;
    opts->improvement_threshold = 1e-4;
    opts->delta = 0.1;
    opts->greedy_emd = 0;
    opts->seed = 0;
}

fc_status fc_run_method(const fc_dataset* ds, const fc_run_options* opts,
                        const fc_emd_table* table, fc_result** out) {
    if (!ds || !opts || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    if (table && table->owner != ds)
        return fail(FC_ERR_INVALID_ARGUMENT, "EMD table belongs to a different dataset");
    return guard([&] {
        fc::MethodRun run = fc::run_method(ds->ds, static_cast<fc::Method>(opts->method),
                                           to_run_options(*opts), table ? table->table : nullptr);
        *out = new fc_result{std::move(run), ds->ds.num_points()};
    });
}

fc_status fc_run_external_fairlets(const fc_dataset* ds, const int* fairlet_ids,
                                   const fc_run_options* opts, fc_result** out) {
    if (!ds || !fairlet_ids || !opts || !out)
        return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] {
        std::vector<int> ids(fairlet_ids, fairlet_ids + ds->ds.num_points());
        fc::SolverConfig cfg;
        cfg.algorithm = to_solver(opts->solver);
        cfg.seed = opts->seed;
        cfg.max_iterations = opts->max_iterations;
        cfg.improvement_threshold = opts->improvement_threshold;
        const Clock::time_point t0 = Clock::now();
        fc::FairClustering fcl =
            fc::cluster_fairlets(ds->ds, ids, opts->k, to_norm(opts->p, opts->q), cfg);
        *out = wrap_clustering(ds->ds, std::move(fcl), ms_since(t0));
    });
}

void fc_result_free(fc_result* result) { delete result; }

double fc_result_cost(const fc_result* result) { return result ? result->run.cost : 0.0; }
int fc_result_balanced(const fc_result* result) { return result && result->run.balanced ? 1 : 0; }
int fc_result_base_color(const fc_result* result) { return result ? result->run.base_color : -1; }
double fc_result_wall_ms(const fc_result* result) { return result ? result->run.wall_ms : 0.0; }

int fc_result_num_centers(const fc_result* result) {
    return result ? result->run.clustering.centers.size() : 0;
}

int fc_result_center_dim(const fc_result* result) {
    if (!result) return 0;
    const fc::CenterSet& cs = result->run.clustering.centers;
    return cs.index_mode() ? 0 : cs.dim;
}

fc_status fc_result_assignment(const fc_result* result, int* assignment) {
    if (!result || !assignment) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    const auto& a = result->run.clustering.assignment;
    for (std::size_t i = 0; i < a.size(); ++i) assignment[i] = a[i];
    return FC_OK;
}

fc_status fc_result_center_index(const fc_result* result, int slot, int* out) {
    if (!result || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    const fc::CenterSet& cs = result->run.clustering.centers;
    if (slot < 0 || slot >= cs.size()) return fail(FC_ERR_INVALID_ARGUMENT, "center slot out of range");
    *out = cs.index_mode() ? cs.indices[static_cast<std::size_t>(slot)] : -1;
    return FC_OK;
}

fc_status fc_result_center_coords(const fc_result* result, int slot, double* out) {
    if (!result || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    const fc::CenterSet& cs = result->run.clustering.centers;
    if (slot < 0 || slot >= cs.size()) return fail(FC_ERR_INVALID_ARGUMENT, "center slot out of range");
    if (cs.index_mode())
        return fail(FC_ERR_UNSUPPORTED,
                    "center is a dataset point; use fc_result_center_index");
    for (int d = 0; d < cs.dim; ++d)
        out[d] = cs.coords[static_cast<std::size_t>(slot) * cs.dim + d];
    return FC_OK;
}

fc_status fc_oracle_fair_opt(const fc_dataset* ds, int k, int p, int q, fc_result** out) {
    if (!ds || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] {
        const Clock::time_point t0 = Clock::now();
        fc::FairClustering fcl = fc::brute_fair_opt(ds->ds, k, to_norm(p, q));
        *out = wrap_clustering(ds->ds, std::move(fcl), ms_since(t0));
    });
}

fc_status fc_oracle_fair_assign(const fc_dataset* ds, const int* center_indices, int k, int p,
                                int q, fc_result** out) {
    if (!ds || !center_indices || !out)
        return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    if (k < 1) return fail(FC_ERR_INVALID_ARGUMENT, "k must be positive");
    return guard([&] {
        fc::CenterSet cs = fc::CenterSet::from_indices(
            std::vector<int>(center_indices, center_indices + k));
        const Clock::time_point t0 = Clock::now();
        fc::FairClustering fcl = fc::brute_fair_assign(ds->ds, cs, to_norm(p, q));
        *out = wrap_clustering(ds->ds, std::move(fcl), ms_since(t0));
    });
}

fc_status fc_oracle_unconstrained(const fc_dataset* ds, int k, int p, int q, double* out) {
    if (!ds || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] {
        std::vector<int> points(static_cast<std::size_t>(ds->ds.num_points()));
        for (int i = 0; i < ds->ds.num_points(); ++i) points[static_cast<std::size_t>(i)] = i;
        *out = fc::brute_unconstrained_opt(ds->ds, points, k, to_norm(p, q)).cost;
    });
}

fc_status fc_spec_open(const char* path, fc_spec** out) {
    if (!path || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] {
        fc::DatasetSpec spec = fc::parse_spec_file(path);
        fc::RawTable table = fc::load_csv(spec);
        *out = new fc_spec{std::move(spec), std::move(table)};
    });
}

void fc_spec_free(fc_spec* spec) { delete spec; }

const char* fc_spec_name(const fc_spec* spec) { return spec ? spec->spec.name.c_str() : ""; }
int fc_spec_num_samples(const fc_spec* spec) { return spec ? spec->spec.num_samples : 0; }
int fc_spec_subsample_size(const fc_spec* spec) { return spec ? spec->spec.subsample_size : 0; }
int fc_spec_num_colors(const fc_spec* spec) { return spec ? spec->table.num_colors : 0; }
long fc_spec_rows_kept(const fc_spec* spec) { return spec ? spec->table.report.rows_kept : 0; }

fc_status fc_spec_sample(const fc_spec* spec, int sample_id, fc_dataset** out) {
    if (!spec || !out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    if (sample_id < 0) return fail(FC_ERR_INVALID_ARGUMENT, "sample_id must be non-negative");
    return guard([&] {
        fc::ColoredDataset ds = fc::balanced_subsample(
            spec->table, spec->spec.subsample_size,
            fc::mix_seed(spec->spec.seed, static_cast<std::uint64_t>(sample_id)));
        *out = new fc_dataset{std::move(ds)};
    });
}

fc_status fc_certify(long trials, uint64_t seed, fc_certify_report* out) {
    if (!out) return fail(FC_ERR_INVALID_ARGUMENT, "null pointer argument");
    return guard([&] {
        fc::CertifyOptions opts;
        opts.trials = trials;
        opts.seed = seed;
        fc::CertifyReport rep = fc::certify(opts);
        out->trials = rep.trials;
        out->relay_checked = rep.relay_checked;
        out->center_checked = rep.center_checked;
        out->violations = rep.violations;
        out->max_relay_ratio = rep.max_relay_ratio;
        out->max_min_emd_ratio = rep.max_min_emd_ratio;
        out->max_center_ratio = rep.max_center_ratio;
        out->ok = rep.ok ? 1 : 0;
    });
}

}  // extern "C"
