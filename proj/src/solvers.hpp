#pragma once

#include <cstdint>
#include <vector>

#include "dataset.hpp"
#include "rng.hpp"

namespace fairclust {

enum class SolverAlgorithm {
    local_search_kmedian,
    kpp_seed_medoids,
    farthest_first,
    lloyd_kmeans,
    exhaustive,  // brute-force optimum, tiny inputs only
};

struct SolverConfig {
    SolverAlgorithm algorithm = SolverAlgorithm::local_search_kmedian;
    std::uint64_t seed = 0;
    int max_iterations = 100;
    double improvement_threshold = 1e-4;
};

struct SolverResult {
    CenterSet centers;
    double cost = 0.0;
    std::vector<double> cost_trace;
};

// Single-swap local search over medoids. A swap is accepted only when it
// improves the cost by at least the relative improvement_threshold; sweeps are
// capped at max_iterations * k. Requires finite p.
SolverResult local_search_kmedian(const ColoredDataset& ds, const std::vector<int>& points, int k,
                                  NormSpec norm, const SolverConfig& config);

// Seeding in the k-means++ style: first center uniform, each next center
// sampled proportional to d(x, chosen)^w with w=2 for the (2,2) objective and
// w=1 otherwise.
CenterSet kpp_seed(const ColoredDataset& ds, const std::vector<int>& points, int k, NormSpec norm,
                   Rng& rng);

// Alternating nearest-center assignment and per-cluster medoid recomputation.
// Cost trace is non-increasing; empty clusters are re-seeded at the point
// currently farthest from its center.
SolverResult kmedoids_refine(const ColoredDataset& ds, const std::vector<int>& points,
                             const CenterSet& initial, NormSpec norm, const SolverConfig& config);

struct FarthestFirstResult {
    CenterSet centers;
    std::vector<int> order;         // dataset point indices in visit order
    std::vector<double> radius_trace;  // distance of each pick to the prior set
};

// Farthest-first traversal; the first center is drawn uniformly by seed.
FarthestFirstResult farthest_first(const ColoredDataset& ds, const std::vector<int>& points, int k,
                                   Exponent q, std::uint64_t seed);

// Standard Lloyd iteration with k-means++ seeding. Coordinate datasets only;
// cost is the sum of squared Euclidean distances.
SolverResult lloyd_kmeans(const ColoredDataset& ds, const std::vector<int>& points, int k,
                          const SolverConfig& config);

// Dispatch on config.algorithm. The exhaustive algorithm enumerates center
// subsets drawn from the full dataset (not just `points`), matching the center
// convention of the brute-force fair optimum it is compared against.
SolverResult run_solver(const ColoredDataset& ds, const std::vector<int>& points, int k,
                        NormSpec norm, const SolverConfig& config);

}  // namespace fairclust
