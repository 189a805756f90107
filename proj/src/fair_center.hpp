#pragma once

#include <cstdint>
#include <memory>

#include "reduce.hpp"
#include "solvers.hpp"

namespace fairclust {

// Farthest-first traversal over the pooled point set (all colors). The
// returned radius trace starts at infinity and is non-increasing; its final
// value is the distance of the last pick to the earlier centers.
FarthestFirstResult fair_kcenter_centers(const ColoredDataset& ds, int k, Exponent q,
                                         std::uint64_t seed);

struct FairKCenterAssignment {
    FairClustering clustering;
    double radius = 0.0;
};

// Balanced assignment of all points to the given centers, minimizing the
// maximum distance heuristically:
//   - one color: plain nearest-center assignment (already balanced);
//   - two colors: exact minimum radius by binary search over threshold
//     feasibility (flow-based), so the result is optimal for the centers;
//   - three or more colors: fairlet decomposition (exact EMD, delta=0.1),
//     then each whole fairlet goes to the center minimizing the fairlet's
//     maximum point distance. Feasible, not optimal; optimal assignment for
//     fixed centers is NP-hard at three or more colors.
// If `table` is supplied it must be an exact table under (1, q).
FairKCenterAssignment fair_kcenter_assign(const ColoredDataset& ds, const CenterSet& centers,
                                          Exponent q, std::uint64_t seed,
                                          std::shared_ptr<const EmdTable> table = nullptr);

}  // namespace fairclust
