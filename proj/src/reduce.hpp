#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "matching.hpp"
#include "solvers.hpp"

namespace fairclust {

struct CandidateCost {
    int color;
    double cost;
};

struct PhaseTimes {
    double matching_ms = 0.0;
    double solver_ms = 0.0;
    double assign_ms = 0.0;
};

// Output of one reduction run: the chosen fair clustering, which base color
// produced it, and the cost of every base color that was tried.
// clustering.cost always equals the minimum over per_color_candidates.
struct ReductionResult {
    FairClustering clustering;
    int base_color = -1;
    std::vector<CandidateCost> per_color_candidates;
    std::shared_ptr<const EmdTable> emd_table;
    PhaseTimes wall_times;
};

// Base points go to their nearest center (ties to the lowest center slot);
// every other-color point follows its matched partner. Balanced because all
// partners of one base point share its center.
FairClustering assign_via_matchings(const ColoredDataset& ds, int base_color,
                                    const CenterSet& centers, const EmdTable& table,
                                    NormSpec norm);

// The n-cluster decomposition induced by one base color: cluster s holds base
// point s and its matched partner from every other color, centered on the
// base point. The reported cost is the aggregated matching cost of the base
// color (identical for either orientation of a two-color matching, so the
// value does not depend on which side was cheapest to compute).
FairClustering fairlet_decomposition(const ColoredDataset& ds, int base_color,
                                     const EmdTable& table, NormSpec norm);

// Full reduction: solve the unconstrained problem on every color class, relay
// the other colors through optimal matchings, keep the cheapest result.
// Per-color solver seeds are derived as mix(config.seed, color).
ReductionResult relay_all(const ColoredDataset& ds, int k, NormSpec norm,
                          const SolverConfig& config,
                          std::shared_ptr<const EmdTable> table = nullptr);

// Single-base variant: only the color minimizing the aggregated EMD to all
// other colors is solved and relayed. One solver invocation.
ReductionResult relay_min_emd(const ColoredDataset& ds, int k, NormSpec norm,
                              const SolverConfig& config,
                              std::shared_ptr<const EmdTable> table = nullptr);

// Per-color solve, then exact transportation: the base color's nearest-center
// assignment fixes the per-center sizes and every color is shipped optimally
// to those sizes. Never worse than the matching relay for the same solver
// output.
ReductionResult transport_all(const ColoredDataset& ds, int k, NormSpec norm,
                              const SolverConfig& config,
                              std::shared_ptr<const EmdTable> table = nullptr);

// Randomized fairlet decomposition: sample ceil(log2(1/delta)) base-color
// candidates with replacement, score each by its aggregated EMD over all
// colors, and decompose around the cheapest sampled candidate. Requires p=1.
ReductionResult sampled_fairlets(const ColoredDataset& ds, NormSpec norm, double delta,
                                 EmdMode mode, std::uint64_t seed,
                                 std::shared_ptr<const EmdTable> table = nullptr);

// k-clustering counterpart of sampled_fairlets: the same randomized base-color
// selection, followed by the solver and matching relay on the chosen color.
ReductionResult relay_sampled(const ColoredDataset& ds, int k, NormSpec norm,
                              const SolverConfig& config, double delta, EmdMode mode,
                              std::uint64_t seed,
                              std::shared_ptr<const EmdTable> table = nullptr);

// Deterministic fairlet decomposition around the globally cheapest base color;
// its cost lower-bounds every fairlet-based clustering of the same dataset.
ReductionResult fairlet_bound(const ColoredDataset& ds, NormSpec norm,
                              std::shared_ptr<const EmdTable> table = nullptr);

// Clusters an externally supplied fairlet decomposition: fairlet_ids assigns
// every point to one of n groups, each holding exactly one point per color.
// Each group is represented by its medoid, representatives are clustered with
// the solver, and whole groups follow their representative.
FairClustering cluster_fairlets(const ColoredDataset& ds, const std::vector<int>& fairlet_ids,
                                int k, NormSpec norm, const SolverConfig& config);

}  // namespace fairclust
