#include "solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oracle.hpp"

namespace fairclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_config(const SolverConfig& config) {
    if (config.max_iterations < 1)
        raise(errc::invalid_argument, "max_iterations must be at least 1");
    if (!(config.improvement_threshold > 0.0 && config.improvement_threshold < 1.0))
        raise(errc::invalid_argument, "improvement_threshold must lie in (0,1)");
}

// First occurrence of every distinct location among `points` (coincidence
// means ground distance exactly zero).
std::vector<int> distinct_points(const ColoredDataset& ds, const std::vector<int>& points,
                                 Exponent q) {
    std::vector<int> out;
    for (int p : points) {
        bool dup = false;
        for (int c : out)
            if (ds.distance(p, c, q) == 0.0) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
    }
    return out;
}

double nearest_point_cost(const ColoredDataset& ds, const std::vector<int>& points,
                          const CenterSet& centers, NormSpec norm) {
    CostAggregate agg(norm.p);
    for (int p : points) {
        double best = kInf;
        for (int c = 0; c < centers.size(); ++c)
            best = std::min(best, center_distance(ds, p, centers, c, norm.q));
        agg.add(best);
    }
    return agg.value();
}

}  // namespace

CenterSet kpp_seed(const ColoredDataset& ds, const std::vector<int>& points, int k, NormSpec norm,
                   Rng& rng) {
    int n = static_cast<int>(points.size());
    if (k < 1) raise(errc::invalid_argument, "k must be at least 1");
    if (k > n) raise(errc::invalid_argument, "k exceeds the number of points");
    bool means_weighting = !norm.p.is_infinite() && !norm.q.is_infinite() &&
                           norm.p.value() == 2 && norm.q.value() == 2;
    std::vector<int> chosen;
    chosen.push_back(points[rng.uniform_index(n)]);
    std::vector<double> weight(n);
    while (static_cast<int>(chosen.size()) < k) {
        for (int i = 0; i < n; ++i) {
            double best = kInf;
            for (int c : chosen) best = std::min(best, ds.distance(points[i], c, norm.q));
            weight[i] = means_weighting ? best * best : best;
        }
        chosen.push_back(points[rng.weighted_index(weight)]);
    }
    return CenterSet::from_indices(std::move(chosen));
}

SolverResult local_search_kmedian(const ColoredDataset& ds, const std::vector<int>& points, int k,
                                  NormSpec norm, const SolverConfig& config) {
    check_config(config);
    if (norm.p.is_infinite())
        raise(errc::unsupported, "local search requires a finite aggregation exponent");
    if (points.empty()) raise(errc::invalid_argument, "no points to cluster");
    std::vector<int> candidates = distinct_points(ds, points, norm.q);
    int n = static_cast<int>(points.size());
    int c_count = static_cast<int>(candidates.size());
    if (k > c_count)
        raise(errc::invalid_argument, "k=" + std::to_string(k) + " exceeds the " +
                                          std::to_string(c_count) + " distinct points");

    // Powered distances candidate x point.
    std::vector<double> d(static_cast<std::size_t>(c_count) * n);
    for (int c = 0; c < c_count; ++c)
        for (int i = 0; i < n; ++i)
            d[static_cast<std::size_t>(c) * n + i] =
                pow_exp(ds.distance(candidates[c], points[i], norm.q), norm.p);

    Rng rng(config.seed);
    CenterSet init = kpp_seed(ds, points, k, norm, rng);
    // Map seeded centers onto canonical candidate ids (first coincident).
    std::vector<int> center_ids(k, -1);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < c_count; ++c)
            if (ds.distance(init.indices[r], candidates[c], norm.q) == 0.0) {
                center_ids[r] = c;
                break;
            }
    }
    // Seeding with k <= distinct points never repeats a location, but make
    // sure anyway: repair any duplicate slots with unused candidates.
    for (int r = 0; r < k; ++r) {
        bool dup = false;
        for (int s = 0; s < r; ++s)
            if (center_ids[s] == center_ids[r]) dup = true;
        if (!dup) continue;
        for (int c = 0; c < c_count; ++c) {
            bool used = false;
            for (int s = 0; s < k; ++s)
                if (center_ids[s] == c) used = true;
            if (!used) {
                center_ids[r] = c;
                break;
            }
        }
    }

    std::vector<int> n1(n);
    std::vector<double> d1(n), d2(n);
    std::vector<char> is_center(c_count, 0);
    auto rebuild = [&]() {
        std::fill(is_center.begin(), is_center.end(), 0);
        for (int r = 0; r < k; ++r) is_center[center_ids[r]] = 1;
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double b1 = kInf, b2 = kInf;
            int w1 = -1;
            for (int r = 0; r < k; ++r) {
                double v = d[static_cast<std::size_t>(center_ids[r]) * n + i];
                if (v < b1) {
                    b2 = b1;
                    b1 = v;
                    w1 = r;
                } else if (v < b2) {
                    b2 = v;
                }
            }
            n1[i] = w1;
            d1[i] = b1;
            d2[i] = b2;
            total += b1;
        }
        return total;
    };

    double cur = rebuild();
    SolverResult result;
    result.cost_trace.push_back(root_exp(cur, norm.p));

    // First-improvement sweeps over (slot, candidate) pairs; a full pass with
    // no accepted swap certifies 1-swap stability.
    long max_sweeps = static_cast<long>(config.max_iterations) * k;
    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
        bool improved = false;
        for (int r = 0; r < k && !improved; ++r) {
            for (int c = 0; c < c_count && !improved; ++c) {
                if (is_center[c]) continue;
                double acc = 0.0;
                double bound = cur * (1.0 - config.improvement_threshold);
                const double* row = &d[static_cast<std::size_t>(c) * n];
                for (int i = 0; i < n; ++i) {
                    double base = (n1[i] == r) ? d2[i] : d1[i];
                    acc += std::min(base, row[i]);
                    if (acc >= bound) break;
                }
                if (acc < bound) {
                    center_ids[r] = c;
                    cur = rebuild();
                    result.cost_trace.push_back(root_exp(cur, norm.p));
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }

    std::vector<int> final_centers(k);
    for (int r = 0; r < k; ++r) final_centers[r] = candidates[center_ids[r]];
    result.centers = CenterSet::from_indices(std::move(final_centers));
    result.cost = root_exp(cur, norm.p);
    return result;
}

SolverResult kmedoids_refine(const ColoredDataset& ds, const std::vector<int>& points,
                             const CenterSet& initial, NormSpec norm, const SolverConfig& config) {
    check_config(config);
    if (!initial.index_mode())
        raise(errc::unsupported, "medoid refinement requires index-mode centers");
    if (points.empty()) raise(errc::invalid_argument, "no points to cluster");
    int n = static_cast<int>(points.size());
    int k = initial.size();
    if (k < 1) raise(errc::invalid_argument, "empty center set");

    // Point-point ground distances, cached once per call.
    std::vector<double> pd(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pd[static_cast<std::size_t>(i) * n + j] = ds.distance(points[i], points[j], norm.q);

    // Centers as positions within `points` (fall back to direct distance for
    // centers that are not among the clustered points).
    std::vector<int> center_pos(k, -1);
    std::vector<int> center_idx(k);
    for (int r = 0; r < k; ++r) {
        center_idx[r] = initial.indices[r];
        for (int i = 0; i < n; ++i)
            if (points[i] == center_idx[r]) {
                center_pos[r] = i;
                break;
            }
    }
    auto dist_to_center = [&](int i, int r) {
        if (center_pos[r] >= 0) return pd[static_cast<std::size_t>(i) * n + center_pos[r]];
        return ds.distance(points[i], center_idx[r], norm.q);
    };

    SolverResult result;
    std::vector<int> assign(n);
    double prev = kInf;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = dist_to_center(i, 0);
            for (int r = 1; r < k; ++r) {
                double v = dist_to_center(i, r);
                if (v < best_d) {
                    best_d = v;
                    best = r;
                }
            }
            assign[i] = best;
        }
        // Re-seed empty clusters at the point currently farthest from its
        // center; repeat until no cluster is empty.
        for (int round = 0; round < k + 1; ++round) {
            std::vector<long> count(k, 0);
            for (int i = 0; i < n; ++i) count[assign[i]] += 1;
            int empty = -1;
            for (int r = 0; r < k; ++r)
                if (count[r] == 0) {
                    empty = r;
                    break;
                }
            if (empty < 0) break;
            int far = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                double v = dist_to_center(i, assign[i]);
                if (v > far_d && count[assign[i]] > 1) {
                    far_d = v;
                    far = i;
                }
            }
            if (far < 0) break;  // only singletons left, cluster must stay empty
            center_pos[empty] = far;
            center_idx[empty] = points[far];
            assign[far] = empty;
        }

        CostAggregate agg(norm.p);
        for (int i = 0; i < n; ++i) agg.add(dist_to_center(i, assign[i]));
        double cost = agg.value();
        result.cost_trace.push_back(cost);
        if (prev < kInf && prev - cost < config.improvement_threshold * prev) break;
        prev = cost;

        // Medoid update: best member per cluster under the cluster aggregate.
        bool changed = false;
        for (int r = 0; r < k; ++r) {
            int best_m = -1;
            double best_v = kInf;
            for (int m = 0; m < n; ++m) {
                if (assign[m] != r) continue;
                CostAggregate ca(norm.p);
                for (int i = 0; i < n; ++i)
                    if (assign[i] == r) ca.add(pd[static_cast<std::size_t>(i) * n + m]);
                double v = ca.powered();
                if (v < best_v) {
                    best_v = v;
                    best_m = m;
                }
            }
            if (best_m >= 0 && center_pos[r] != best_m) {
                center_pos[r] = best_m;
                center_idx[r] = points[best_m];
                changed = true;
            }
        }
        if (!changed) break;
    }

    // Final assignment and cost for the returned centers.
    for (int i = 0; i < n; ++i) {
        int best = 0;
        double best_d = dist_to_center(i, 0);
        for (int r = 1; r < k; ++r) {
            double v = dist_to_center(i, r);
            if (v < best_d) {
                best_d = v;
                best = r;
            }
        }
        assign[i] = best;
    }
    CostAggregate agg(norm.p);
    for (int i = 0; i < n; ++i) agg.add(dist_to_center(i, assign[i]));
    result.cost = agg.value();
    result.centers = CenterSet::from_indices(std::move(center_idx));
    return result;
}

FarthestFirstResult farthest_first(const ColoredDataset& ds, const std::vector<int>& points, int k,
                                   Exponent q, std::uint64_t seed) {
    int n = static_cast<int>(points.size());
    if (k < 1) raise(errc::invalid_argument, "k must be at least 1");
    if (k > n) raise(errc::invalid_argument, "k exceeds the number of points");
    Rng rng(seed);
    FarthestFirstResult result;
    int first = static_cast<int>(rng.uniform_index(n));
    result.order.push_back(points[first]);
    result.radius_trace.push_back(kInf);
    std::vector<double> dmin(n);
    for (int i = 0; i < n; ++i) dmin[i] = ds.distance(points[i], points[first], q);
    while (static_cast<int>(result.order.size()) < k) {
        int far = 0;
        for (int i = 1; i < n; ++i)
            if (dmin[i] > dmin[far]) far = i;
        result.radius_trace.push_back(dmin[far]);
        result.order.push_back(points[far]);
        for (int i = 0; i < n; ++i) dmin[i] = std::min(dmin[i], ds.distance(points[i], points[far], q));
    }
    result.centers = CenterSet::from_indices(result.order);
    return result;
}

SolverResult lloyd_kmeans(const ColoredDataset& ds, const std::vector<int>& points, int k,
                          const SolverConfig& config) {
    check_config(config);
    if (ds.metric_mode()) raise(errc::unsupported, "Lloyd iteration requires coordinates");
    int n = static_cast<int>(points.size());
    if (k < 1) raise(errc::invalid_argument, "k must be at least 1");
    if (k > n) raise(errc::invalid_argument, "k exceeds the number of points");
    int dim = ds.dim();
    NormSpec means_norm{Exponent::finite(2), Exponent::finite(2)};

    Rng rng(config.seed);
    CenterSet init = kpp_seed(ds, points, k, means_norm, rng);
    std::vector<double> centers(static_cast<std::size_t>(k) * dim);
    for (int r = 0; r < k; ++r) {
        std::span<const double> pt = ds.point(init.indices[r]);
        std::copy(pt.begin(), pt.end(), centers.begin() + static_cast<std::size_t>(r) * dim);
    }

    auto sqdist = [&](int i, int r) {
        std::span<const double> pt = ds.point(points[i]);
        double s = 0.0;
        for (int t = 0; t < dim; ++t) {
            double diff = pt[t] - centers[static_cast<std::size_t>(r) * dim + t];
            s += diff * diff;
        }
        return s;
    };

    SolverResult result;
    std::vector<int> assign(n);
    double prev = kInf;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        double cost = 0.0;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sqdist(i, 0);
            for (int r = 1; r < k; ++r) {
                double v = sqdist(i, r);
                if (v < best_d) {
                    best_d = v;
                    best = r;
                }
            }
            assign[i] = best;
            cost += best_d;
        }
        // Farthest-point re-seed for empty clusters.
        for (int round = 0; round < k + 1; ++round) {
            std::vector<long> count(k, 0);
            for (int i = 0; i < n; ++i) count[assign[i]] += 1;
            int empty = -1;
            for (int r = 0; r < k; ++r)
                if (count[r] == 0) {
                    empty = r;
                    break;
                }
            if (empty < 0) break;
            int far = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                double v = sqdist(i, assign[i]);
                if (v > far_d && count[assign[i]] > 1) {
                    far_d = v;
                    far = i;
                }
            }
            if (far < 0) break;
            std::span<const double> pt = ds.point(points[far]);
            std::copy(pt.begin(), pt.end(),
                      centers.begin() + static_cast<std::size_t>(empty) * dim);
            assign[far] = empty;
            cost = 0.0;
            for (int i = 0; i < n; ++i) cost += sqdist(i, assign[i]);
        }
        result.cost_trace.push_back(cost);
        if (prev < kInf && prev - cost < config.improvement_threshold * prev) break;
        prev = cost;

        std::vector<double> sums(static_cast<std::size_t>(k) * dim, 0.0);
        std::vector<long> count(k, 0);
        for (int i = 0; i < n; ++i) {
            std::span<const double> pt = ds.point(points[i]);
            for (int t = 0; t < dim; ++t) sums[static_cast<std::size_t>(assign[i]) * dim + t] += pt[t];
            count[assign[i]] += 1;
        }
        for (int r = 0; r < k; ++r)
            for (int t = 0; t < dim; ++t)
                centers[static_cast<std::size_t>(r) * dim + t] =
                    sums[static_cast<std::size_t>(r) * dim + t] / static_cast<double>(count[r]);
    }

    double cost = 0.0;
    for (int i = 0; i < n; ++i) {
        int best = 0;
        double best_d = sqdist(i, 0);
        for (int r = 1; r < k; ++r) {
            double v = sqdist(i, r);
            if (v < best_d) {
                best_d = v;
                best = r;
            }
        }
        assign[i] = best;
        cost += best_d;
    }
    result.centers = CenterSet::from_coords(std::move(centers), dim);
    result.cost = cost;
    return result;
}

SolverResult run_solver(const ColoredDataset& ds, const std::vector<int>& points, int k,
                        NormSpec norm, const SolverConfig& config) {
    switch (config.algorithm) {
        case SolverAlgorithm::local_search_kmedian:
            return local_search_kmedian(ds, points, k, norm, config);
        case SolverAlgorithm::kpp_seed_medoids: {
            Rng rng(config.seed);
            CenterSet init = kpp_seed(ds, points, k, norm, rng);
            return kmedoids_refine(ds, points, init, norm, config);
        }
        case SolverAlgorithm::farthest_first: {
            FarthestFirstResult ff = farthest_first(ds, points, k, norm.q, config.seed);
            SolverResult result;
            result.cost = nearest_point_cost(ds, points, ff.centers, norm);
            result.cost_trace = ff.radius_trace;
            result.centers = std::move(ff.centers);
            return result;
        }
        case SolverAlgorithm::lloyd_kmeans:
            return lloyd_kmeans(ds, points, k, config);
        case SolverAlgorithm::exhaustive: {
            std::vector<int> pool(ds.num_points());
            for (int i = 0; i < ds.num_points(); ++i) pool[i] = i;
            return brute_unconstrained_opt(ds, points, std::min<int>(k, static_cast<int>(points.size())),
                                           norm, pool);
        }
    }
    raise(errc::invalid_argument, "unknown solver algorithm");
}

}  // namespace fairclust
