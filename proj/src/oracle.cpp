#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "transport.hpp"

namespace fairclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<int>> combinations(int m, int k) {
    std::vector<std::vector<int>> out;
    if (k > m || k < 0) return out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == m - k + i) --i;
        if (i < 0) break;
        cur[i] += 1;
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::vector<std::vector<long>> compositions(int total, int parts) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(parts, 0);
    // Lexicographic enumeration of nonnegative integer vectors summing to total.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == parts - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    if (parts > 0) rec(rec, 0, total);
    return out;
}

// Minimal radius at which a single color admits a b-matching to the centers
// with the given capacities, over the sorted candidate radii.
double color_bottleneck_radius(const ColoredDataset& ds, const std::vector<int>& cls,
                               const CenterSet& centers, const std::vector<long>& sizes,
                               const std::vector<double>& levels, Exponent q) {
    int lo = 0, hi = static_cast<int>(levels.size()) - 1;
    auto feasible = [&](double r) {
        int n = static_cast<int>(cls.size());
        int k = centers.size();
        FlowNetwork net(n + k + 2);
        int source = n + k, sink = n + k + 1;
        for (int s = 0; s < n; ++s) net.add_edge(source, s, 1);
        for (int s = 0; s < n; ++s)
            for (int c = 0; c < k; ++c)
                if (center_distance(ds, cls[s], centers, c, q) <= r) net.add_edge(s, n + c, 1);
        for (int c = 0; c < k; ++c) net.add_edge(n + c, sink, sizes[c]);
        return net.max_flow(source, sink) == n;
    };
    if (!feasible(levels[hi])) return kInf;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (feasible(levels[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return levels[lo];
}

FairClustering fair_opt_pairing(const ColoredDataset& ds, NormSpec norm) {
    CostMatrix m = build_cost_matrix(ds, 0, 1, norm.q);
    if (m.n > 8) raise(errc::too_large, "pairing oracle limited to 8 points per color");
    // The exact matcher, not the factorial scan: ground distances can tie two
    // optimal matchings at the same real cost (Manhattan nesting), and the
    // two algorithms then round their sums differently. Using the matcher the
    // pairwise table uses keeps equal inputs bit-identical end to end; its
    // exactness is certified against the factorial scan separately.
    Matching best = min_cost_perfect_matching(m, Exponent::finite(1));
    const std::vector<int>& ca = ds.color_class(0);
    const std::vector<int>& cb = ds.color_class(1);
    FairClustering out;
    out.centers = CenterSet::from_indices(ca);
    out.norm = norm;
    out.assignment.assign(ds.num_points(), -1);
    for (int s = 0; s < m.n; ++s) {
        out.assignment[ca[s]] = s;
        out.assignment[cb[best.perm[s]]] = s;
    }
    // The matching's own cost: summed in row order, like the pairwise table,
    // so equal matchings produce identical values down to rounding.
    out.cost = best.cost;
    return out;
}

// Balanced-assignment enumeration with exact centroids, for the (2,2) norm on
// coordinate data. Walks all k^N assignments, pruning unbalanced ones.
FairClustering fair_opt_centroids(const ColoredDataset& ds, int k, NormSpec norm) {
    int n_points = ds.num_points();
    int l = ds.num_colors();
    int per = ds.per_color_count();
    int dim = ds.dim();
    std::vector<int> assign(n_points, 0);
    std::vector<int> best_assign;
    double best_powered = kInf;
    // counts[slot][color]
    std::vector<std::vector<int>> counts(k, std::vector<int>(l, 0));
    (void)per;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n_points) {
            for (int c = 0; c < k; ++c)
                for (int col = 1; col < l; ++col)
                    if (counts[c][col] != counts[c][0]) return;
            double total = 0.0;
            for (int c = 0; c < k; ++c) {
                long sz = 0;
                std::vector<double> mean(dim, 0.0);
                for (int x = 0; x < n_points; ++x) {
                    if (assign[x] != c) continue;
                    std::span<const double> pt = ds.point(x);
                    for (int t = 0; t < dim; ++t) mean[t] += pt[t];
                    sz += 1;
                }
                if (sz == 0) continue;
                for (int t = 0; t < dim; ++t) mean[t] /= static_cast<double>(sz);
                for (int x = 0; x < n_points; ++x) {
                    if (assign[x] != c) continue;
                    std::span<const double> pt = ds.point(x);
                    for (int t = 0; t < dim; ++t) {
                        double diff = pt[t] - mean[t];
                        total += diff * diff;
                    }
                }
            }
            if (total < best_powered) {
                best_powered = total;
                best_assign = assign;
            }
            return;
        }
        for (int c = 0; c < k; ++c) {
            counts[c][ds.color(i)] += 1;
            assign[i] = c;
            self(self, i + 1);
            counts[c][ds.color(i)] -= 1;
        }
    };
    rec(rec, 0);
    if (best_assign.empty()) raise(errc::internal_error, "no balanced assignment found");

    FairClustering out;
    out.norm = norm;
    out.assignment = best_assign;
    std::vector<double> centroids(static_cast<std::size_t>(k) * dim, 0.0);
    std::vector<long> sz(k, 0);
    for (int x = 0; x < n_points; ++x) {
        std::span<const double> pt = ds.point(x);
        for (int t = 0; t < dim; ++t)
            centroids[static_cast<std::size_t>(best_assign[x]) * dim + t] += pt[t];
        sz[best_assign[x]] += 1;
    }
    for (int c = 0; c < k; ++c) {
        // Park empty slots on the first point so distances stay finite.
        if (sz[c] == 0) {
            std::span<const double> pt = ds.point(0);
            std::copy(pt.begin(), pt.end(), centroids.begin() + static_cast<std::size_t>(c) * dim);
            continue;
        }
        for (int t = 0; t < dim; ++t)
            centroids[static_cast<std::size_t>(c) * dim + t] /= static_cast<double>(sz[c]);
    }
    out.centers = CenterSet::from_coords(std::move(centroids), dim);
    out.cost = clustering_cost(ds, out.centers, out.assignment, norm);
    return out;
}

}  // namespace

Matching brute_matching(const CostMatrix& m, Exponent p) {
    if (m.n > 8) raise(errc::too_large, "brute-force matching limited to n <= 8");
    if (m.n == 0) raise(errc::invalid_argument, "empty cost matrix");
    std::vector<int> perm(m.n);
    std::iota(perm.begin(), perm.end(), 0);
    Matching best;
    best.cost = kInf;
    do {
        CostAggregate agg(p);
        for (int r = 0; r < m.n; ++r) agg.add(m.at(r, perm[r]));
        double value = agg.value();
        if (value < best.cost) {
            best.cost = value;
            best.powered_cost = agg.powered();
            best.perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

SolverResult brute_unconstrained_opt(const ColoredDataset& ds, const std::vector<int>& points,
                                     int k, NormSpec norm, const std::vector<int>& candidates) {
    if (points.empty()) raise(errc::invalid_argument, "no points to cluster");
    const std::vector<int>& pool = candidates.empty() ? points : candidates;
    if (static_cast<int>(pool.size()) > 14)
        raise(errc::too_large, "exhaustive solver limited to 14 candidate centers");
    if (k < 1) raise(errc::invalid_argument, "k must be at least 1");
    int k_eff = std::min<int>(k, static_cast<int>(pool.size()));
    if (k_eff > 3 && k_eff < static_cast<int>(pool.size()))
        raise(errc::too_large, "exhaustive solver limited to k <= 3");

    SolverResult best;
    best.cost = kInf;
    for (const std::vector<int>& subset : combinations(static_cast<int>(pool.size()), k_eff)) {
        std::vector<int> centers(k_eff);
        for (int i = 0; i < k_eff; ++i) centers[i] = pool[subset[i]];
        CenterSet cs = CenterSet::from_indices(centers);
        CostAggregate agg(norm.p);
        for (int p : points) {
            double bd = kInf;
            for (int c = 0; c < k_eff; ++c)
                bd = std::min(bd, center_distance(ds, p, cs, c, norm.q));
            agg.add(bd);
        }
        double value = agg.value();
        if (value < best.cost) {
            best.cost = value;
            best.centers = std::move(cs);
        }
    }
    return best;
}

FairClustering brute_fair_opt(const ColoredDataset& ds, int k, NormSpec norm) {
    ds.require_balanced();
    int l = ds.num_colors();
    int per = ds.per_color_count();
    int n_points = ds.num_points();
    if (k < 1) raise(errc::invalid_argument, "k must be at least 1");

    if (l == 2 && k == per && !norm.p.is_infinite() && norm.p.value() == 1)
        return fair_opt_pairing(ds, norm);

    if (n_points > 12) raise(errc::too_large, "fair optimum oracle limited to 12 points");
    if (k > 3) raise(errc::too_large, "fair optimum oracle limited to k <= 3");

    bool kmeans_mode = !ds.metric_mode() && !norm.p.is_infinite() && !norm.q.is_infinite() &&
                       norm.p.value() == 2 && norm.q.value() == 2;
    if (kmeans_mode) return fair_opt_centroids(ds, k, norm);

    std::vector<std::vector<long>> size_vectors = compositions(per, k);
    double best_key = kInf;
    std::vector<int> best_centers;
    std::vector<long> best_sizes;

    std::vector<double> levels;
    for (const std::vector<int>& subset : combinations(n_points, k)) {
        CenterSet cs = CenterSet::from_indices(subset);
        if (norm.p.is_infinite()) {
            levels.clear();
            for (int i = 0; i < n_points; ++i)
                for (int c = 0; c < k; ++c) levels.push_back(center_distance(ds, i, cs, c, norm.q));
            std::sort(levels.begin(), levels.end());
            levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
            for (const std::vector<long>& sizes : size_vectors) {
                double radius = 0.0;
                for (int color = 0; color < l && radius < kInf; ++color)
                    radius = std::max(radius, color_bottleneck_radius(ds, ds.color_class(color), cs,
                                                                      sizes, levels, norm.q));
                if (radius < best_key) {
                    best_key = radius;
                    best_centers = subset;
                    best_sizes = sizes;
                }
            }
        } else {
            for (const std::vector<long>& sizes : size_vectors) {
                double powered_total = 0.0;
                for (int color = 0; color < l; ++color) {
                    const std::vector<int>& cls = ds.color_class(color);
                    TransportInstance inst;
                    inst.num_sources = static_cast<int>(cls.size());
                    inst.demands = sizes;
                    inst.costs.resize(cls.size() * static_cast<std::size_t>(k));
                    for (std::size_t s = 0; s < cls.size(); ++s)
                        for (int c = 0; c < k; ++c)
                            inst.costs[s * k + c] =
                                pow_exp(center_distance(ds, cls[s], cs, c, norm.q), norm.p);
                    powered_total += min_cost_transport(inst).cost;
                }
                if (powered_total < best_key) {
                    best_key = powered_total;
                    best_centers = subset;
                    best_sizes = sizes;
                }
            }
        }
    }
    if (best_centers.empty()) raise(errc::internal_error, "fair optimum search found no solution");
    FairClustering out =
        fair_assign_fixed_sizes(ds, CenterSet::from_indices(best_centers), best_sizes, norm);
    return out;
}

FairClustering brute_fair_assign(const ColoredDataset& ds, const CenterSet& centers,
                                 NormSpec norm) {
    ds.require_balanced();
    int per = ds.per_color_count();
    int k = centers.size();
    if (per > 8) raise(errc::too_large, "fair assignment oracle limited to 8 points per color");
    if (k > 4) raise(errc::too_large, "fair assignment oracle limited to 4 centers");

    double best_key = kInf;
    std::vector<long> best_sizes;
    std::vector<double> levels;
    if (norm.p.is_infinite()) {
        for (int i = 0; i < ds.num_points(); ++i)
            for (int c = 0; c < k; ++c) levels.push_back(center_distance(ds, i, centers, c, norm.q));
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    }
    for (const std::vector<long>& sizes : compositions(per, k)) {
        double key;
        if (norm.p.is_infinite()) {
            key = 0.0;
            for (int color = 0; color < ds.num_colors() && key < kInf; ++color)
                key = std::max(key, color_bottleneck_radius(ds, ds.color_class(color), centers,
                                                            sizes, levels, norm.q));
        } else {
            key = 0.0;
            for (int color = 0; color < ds.num_colors(); ++color) {
                const std::vector<int>& cls = ds.color_class(color);
                TransportInstance inst;
                inst.num_sources = static_cast<int>(cls.size());
                inst.demands = sizes;
                inst.costs.resize(cls.size() * static_cast<std::size_t>(k));
                for (std::size_t s = 0; s < cls.size(); ++s)
                    for (int c = 0; c < k; ++c)
                        inst.costs[s * k + c] =
                            pow_exp(center_distance(ds, cls[s], centers, c, norm.q), norm.p);
                key += min_cost_transport(inst).cost;
            }
        }
        if (key < best_key) {
            best_key = key;
            best_sizes = sizes;
        }
    }
    if (best_sizes.empty()) raise(errc::internal_error, "fair assignment search found no solution");
    return fair_assign_fixed_sizes(ds, centers, best_sizes, norm);
}

}  // namespace fairclust
