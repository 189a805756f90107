#include "fair_center.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "transport.hpp"

namespace fairclust {

FarthestFirstResult fair_kcenter_centers(const ColoredDataset& ds, int k, Exponent q,
                                         std::uint64_t seed) {
    std::vector<int> all(ds.num_points());
    for (int i = 0; i < ds.num_points(); ++i) all[i] = i;
    return farthest_first(ds, all, k, q, seed);
}

FairKCenterAssignment fair_kcenter_assign(const ColoredDataset& ds, const CenterSet& centers,
                                          Exponent q, std::uint64_t seed,
                                          std::shared_ptr<const EmdTable> table) {
    ds.require_balanced();
    int k = centers.size();
    if (k < 1) raise(errc::invalid_argument, "empty center set");
    NormSpec norm{Exponent::infinity(), q};
    FairKCenterAssignment out;

    if (ds.num_colors() == 1) {
        out.clustering.centers = centers;
        out.clustering.norm = norm;
        out.clustering.assignment.resize(ds.num_points());
        for (int i = 0; i < ds.num_points(); ++i)
            out.clustering.assignment[i] = nearest_center(ds, i, centers, q);
        out.clustering.cost = clustering_cost(ds, centers, out.clustering.assignment, norm);
        out.radius = out.clustering.cost;
        return out;
    }

    if (ds.num_colors() == 2) {
        std::vector<double> levels;
        levels.reserve(static_cast<std::size_t>(ds.num_points()) * k);
        for (int i = 0; i < ds.num_points(); ++i)
            for (int c = 0; c < k; ++c) levels.push_back(center_distance(ds, i, centers, c, q));
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        int lo = 0, hi = static_cast<int>(levels.size()) - 1;
        if (!kcenter_feasible_assign(ds, centers, levels[hi], q))
            raise(errc::internal_error, "complete threshold graph reported infeasible");
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            if (kcenter_feasible_assign(ds, centers, levels[mid], q))
                hi = mid;
            else
                lo = mid + 1;
        }
        auto assigned = kcenter_feasible_assign(ds, centers, levels[lo], q);
        out.clustering = std::move(*assigned);
        out.radius = out.clustering.cost;
        return out;
    }

    // Three or more colors: relay whole fairlets.
    NormSpec fairlet_norm{Exponent::finite(1), q};
    ReductionResult decomposition =
        sampled_fairlets(ds, fairlet_norm, 0.1, EmdMode::exact, seed, std::move(table));
    const FairClustering& fairlets = decomposition.clustering;
    int per = ds.per_color_count();
    std::vector<std::vector<int>> groups(per);
    for (int i = 0; i < ds.num_points(); ++i) groups[fairlets.assignment[i]].push_back(i);

    out.clustering.centers = centers;
    out.clustering.norm = norm;
    out.clustering.assignment.assign(ds.num_points(), -1);
    for (int f = 0; f < per; ++f) {
        int best = -1;
        double best_r = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            double r = 0.0;
            for (int i : groups[f]) r = std::max(r, center_distance(ds, i, centers, c, q));
            if (r < best_r) {
                best_r = r;
                best = c;
            }
        }
        for (int i : groups[f]) out.clustering.assignment[i] = best;
    }
    out.clustering.cost = clustering_cost(ds, centers, out.clustering.assignment, norm);
    out.radius = out.clustering.cost;
    return out;
}

}  // namespace fairclust
