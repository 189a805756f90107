#include "bench.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <utility>

#include "error.hpp"
#include "fair_center.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace fairclust {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

constexpr std::string_view kMethodNames[kNumMethods] = {
    "relay_all", "relay_min_emd", "transport_all", "relay_sampled",
    "fairlet_bound", "kmedianpp", "fair_kcenter",
};

bool table_matches(const std::shared_ptr<const EmdTable>& table, NormSpec norm, EmdMode mode) {
    return table && table->mode() == mode && table->norm().p == norm.p &&
           table->norm().q == norm.q;
}

// fair_kcenter decomposes fairlets under (1, q) regardless of the run norm.
std::shared_ptr<const EmdTable> table_for_kcenter(const std::shared_ptr<const EmdTable>& table,
                                                  Exponent q) {
    if (table && table->mode() == EmdMode::exact && !table->norm().p.is_infinite() &&
        table->norm().p.value() == 1 && table->norm().q == q)
        return table;
    return nullptr;
}

}  // namespace

std::string_view method_name(Method method) {
    return kMethodNames[static_cast<int>(method)];
}

std::optional<Method> method_from_name(std::string_view name) {
    for (int i = 0; i < kNumMethods; ++i)
        if (kMethodNames[i] == name) return static_cast<Method>(i);
    return std::nullopt;
}

bool method_is_fair(Method method) { return method != Method::kmedianpp; }

MethodRun run_method(const ColoredDataset& ds, Method method, const RunOptions& opts,
                     std::shared_ptr<const EmdTable> table) {
    SolverConfig cfg;
    cfg.algorithm = opts.algorithm;
    cfg.seed = opts.seed;
    cfg.max_iterations = opts.max_iterations;
    cfg.improvement_threshold = opts.improvement_threshold;

    const auto exact_table =
        table_matches(table, opts.norm, EmdMode::exact) ? table : nullptr;
    const auto mode_table = table_matches(table, opts.norm, opts.emd_mode) ? table : nullptr;

    MethodRun out;
    const Clock::time_point t0 = Clock::now();
    switch (method) {
        case Method::relay_all: {
            ReductionResult r = relay_all(ds, opts.k, opts.norm, cfg, exact_table);
            out.clustering = std::move(r.clustering);
            out.base_color = r.base_color;
            break;
        }
        case Method::relay_min_emd: {
            ReductionResult r = relay_min_emd(ds, opts.k, opts.norm, cfg, exact_table);
            out.clustering = std::move(r.clustering);
            out.base_color = r.base_color;
            break;
        }
        case Method::transport_all: {
            ReductionResult r = transport_all(ds, opts.k, opts.norm, cfg, exact_table);
            out.clustering = std::move(r.clustering);
            out.base_color = r.base_color;
            break;
        }
        case Method::relay_sampled: {
            ReductionResult r = relay_sampled(ds, opts.k, opts.norm, cfg, opts.delta,
                                              opts.emd_mode, opts.seed, mode_table);
            out.clustering = std::move(r.clustering);
            out.base_color = r.base_color;
            break;
        }
        case Method::fairlet_bound: {
            ReductionResult r = fairlet_bound(ds, opts.norm, exact_table);
            out.clustering = std::move(r.clustering);
            out.base_color = r.base_color;
            break;
        }
        case Method::kmedianpp: {
            std::vector<int> all(static_cast<std::size_t>(ds.num_points()));
            std::iota(all.begin(), all.end(), 0);
            SolverConfig baseline = cfg;
            baseline.algorithm = SolverAlgorithm::kpp_seed_medoids;
            SolverResult sr = run_solver(ds, all, opts.k, opts.norm, baseline);
            FairClustering fc;
            fc.centers = std::move(sr.centers);
            fc.norm = opts.norm;
            fc.assignment.resize(all.size());
            for (int i = 0; i < ds.num_points(); ++i)
                fc.assignment[static_cast<std::size_t>(i)] =
                    nearest_center(ds, i, fc.centers, opts.norm.q);
            fc.cost = clustering_cost(ds, fc.centers, fc.assignment, opts.norm);
            out.clustering = std::move(fc);
            break;
        }
        case Method::fair_kcenter: {
            FarthestFirstResult ff = fair_kcenter_centers(ds, opts.k, opts.norm.q, opts.seed);
            FairKCenterAssignment fa = fair_kcenter_assign(
                ds, ff.centers, opts.norm.q, opts.seed, table_for_kcenter(table, opts.norm.q));
            out.clustering = std::move(fa.clustering);
            break;
        }
    }
    if (method == Method::fair_kcenter)
        out.cost = clustering_cost(ds, out.clustering.centers, out.clustering.assignment,
                                   opts.norm);
    else
        out.cost = out.clustering.cost;
    out.balanced = verify_balance(ds, out.clustering).balanced;
    out.wall_ms = ms_since(t0);
    return out;
}

ColoredDataset make_gaussian_mixture(int colors, int per_color, int dim, int blobs,
                                     double blob_spread, double noise_sigma, double color_shift,
                                     std::uint64_t seed) {
    if (colors < 1 || per_color < 1 || dim < 1)
        raise(errc::invalid_argument, "mixture needs at least one color, point and dimension");
    if (blobs < 1 || blobs > 8)
        raise(errc::invalid_argument, "mixture supports between 1 and 8 blobs");
    static constexpr double kCorners[8][3] = {
        {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
        {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
    };
    Rng rng(seed);
    std::vector<double> coords;
    std::vector<int> point_colors;
    coords.reserve(static_cast<std::size_t>(colors) * per_color * dim);
    point_colors.reserve(static_cast<std::size_t>(colors) * per_color);
    for (int c = 0; c < colors; ++c) {
        const double shift = colors > 1 ? color_shift * c / (colors - 1) : 0.0;
        for (int i = 0; i < per_color; ++i) {
            const std::size_t blob = rng.uniform_index(static_cast<std::size_t>(blobs));
            for (int d = 0; d < dim; ++d) {
                double v = d < 3 ? blob_spread * kCorners[blob][d] : 0.0;
                if (d == 0) v += shift;
                coords.push_back(v + noise_sigma * rng.next_gaussian());
            }
            point_colors.push_back(c);
        }
    }
    return ColoredDataset(std::move(coords), dim, std::move(point_colors));
}

CertifyReport certify(const CertifyOptions& opts) {
    if (opts.trials < 1) raise(errc::invalid_argument, "certify needs at least one trial");
    if (opts.max_colors < 1 || opts.max_colors > 3)
        raise(errc::invalid_argument, "certify supports 1 to 3 colors");
    if (opts.max_per_color < 2) raise(errc::invalid_argument, "certify needs >= 2 points per color");
    if (opts.max_k < 1) raise(errc::invalid_argument, "certify needs k >= 1");

    // (2,2) is excluded: its oracle optimizes over exact centroids, which the
    // medoid-based guarantees are not stated against.
    static const NormSpec kNorms[] = {
        {Exponent::finite(1), Exponent::finite(1)}, {Exponent::finite(1), Exponent::finite(2)},
        {Exponent::finite(2), Exponent::finite(1)}, {Exponent::infinity(), Exponent::finite(1)},
        {Exponent::infinity(), Exponent::finite(2)},
    };
    constexpr double kSlack = 1.0 + 1e-9;

    CertifyReport rep;
    rep.trials = opts.trials;
    Rng rng(opts.seed);
    for (long trial = 0; trial < opts.trials; ++trial) {
        const int l = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(opts.max_colors)));
        int per = 2 + static_cast<int>(
                          rng.uniform_index(static_cast<std::size_t>(opts.max_per_color - 1)));
        per = std::min(per, 12 / l);
        const int k = std::min(
            {1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(opts.max_k))), 3, per});
        const NormSpec norm = kNorms[rng.uniform_index(5)];

        std::vector<double> coords;
        std::vector<int> point_colors;
        for (int c = 0; c < l; ++c)
            for (int i = 0; i < per; ++i) {
                coords.push_back(4.0 * rng.next_gaussian());
                coords.push_back(4.0 * rng.next_gaussian());
                point_colors.push_back(c);
            }
        ColoredDataset ds(std::move(coords), 2, std::move(point_colors));

        SolverConfig cfg;
        cfg.algorithm = SolverAlgorithm::exhaustive;
        cfg.seed = mix_seed(opts.seed, static_cast<std::uint64_t>(trial) + 1);

        const FairClustering opt = brute_fair_opt(ds, k, norm);
        const ReductionResult ra = relay_all(ds, k, norm, cfg);
        const ReductionResult rm = relay_min_emd(ds, k, norm, cfg, ra.emd_table);
        ++rep.relay_checked;
        if (opt.cost > 0.0) {
            rep.max_relay_ratio = std::max(rep.max_relay_ratio, ra.clustering.cost / opt.cost);
            rep.max_min_emd_ratio = std::max(rep.max_min_emd_ratio, rm.clustering.cost / opt.cost);
            if (ra.clustering.cost > 3.0 * opt.cost * kSlack) ++rep.violations;
            if (rm.clustering.cost > 5.0 * opt.cost * kSlack) ++rep.violations;
        } else {
            if (ra.clustering.cost > 1e-9) ++rep.violations;
            if (rm.clustering.cost > 1e-9) ++rep.violations;
        }
        const NormSpec center_norm{Exponent::infinity(), norm.q};
        const FarthestFirstResult ff = fair_kcenter_centers(ds, k, norm.q, cfg.seed);
        const FairClustering assigned = brute_fair_assign(ds, ff.centers, center_norm);
        const FairClustering copt = brute_fair_opt(ds, k, center_norm);
        ++rep.center_checked;
        if (copt.cost > 0.0) {
            rep.max_center_ratio = std::max(rep.max_center_ratio, assigned.cost / copt.cost);
            if (assigned.cost > 3.0 * copt.cost * kSlack) ++rep.violations;
        } else if (assigned.cost > 1e-9) {
            ++rep.violations;
        }
    }
    rep.ok = rep.violations == 0;
    return rep;
}

}  // namespace fairclust
