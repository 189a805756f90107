#pragma once

#include <vector>

#include "dataset.hpp"
#include "matching.hpp"
#include "solvers.hpp"

namespace fairclust {

// Exhaustive minimum over all n! permutations. n <= 8.
Matching brute_matching(const CostMatrix& m, Exponent p);

// Exhaustive unconstrained optimum: every size-k subset of `candidates` as
// medoids, nearest assignment. `candidates` defaults to `points`; passing a
// wider pool (e.g. the whole dataset) matches the center convention of
// brute_fair_opt so approximation ratios compare like against like.
// |candidates| <= 14, k <= 3, except k may equal |points| (cost 0 case).
// Deterministic: lexicographic subset order.
SolverResult brute_unconstrained_opt(const ColoredDataset& ds, const std::vector<int>& points,
                                     int k, NormSpec norm,
                                     const std::vector<int>& candidates = {});

// Exhaustive optimal balanced clustering. General path: center subsets over
// all points x shared per-center size vectors x per-color optimal transport
// (bottleneck search for infinite p). Bounds: l*n <= 12 points, k <= 3.
// Norm (2,2) on coordinate data instead enumerates balanced assignments with
// exact centroid centers. The two-color p=1 case additionally supports k = n
// (optimal pairing via exact matching, n <= 8).
// cost is always the cascaded norm value of the returned assignment.
FairClustering brute_fair_opt(const ColoredDataset& ds, int k, NormSpec norm);

// Exhaustive optimal balanced assignment for fixed centers: minimum over all
// shared per-center size vectors, exact transport per color. n <= 8 per color,
// k <= 4.
FairClustering brute_fair_assign(const ColoredDataset& ds, const CenterSet& centers,
                                 NormSpec norm);

}  // namespace fairclust
