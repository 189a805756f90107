#pragma once

#include <optional>
#include <vector>

#include "dataset.hpp"

namespace fairclust {

// Min-cost transportation with unit supplies: every source (one point of a
// single color) ships one unit, center c absorbs demands[c] units.
// costs[s * num_centers + c] is the cost of sending source s to center c.
struct TransportInstance {
    int num_sources = 0;
    std::vector<long> demands;
    std::vector<double> costs;

    int num_centers() const { return static_cast<int>(demands.size()); }
    double cost_at(int s, int c) const {
        return costs[static_cast<std::size_t>(s) * demands.size() + c];
    }
};

struct TransportResult {
    std::vector<int> assignment;  // per source: center index
    double cost = 0.0;
};

// Exact integral optimum via successive shortest augmenting paths with
// Johnson potentials. Each augmentation routes one unit, so the solution is
// integral by construction.
TransportResult min_cost_transport(const TransportInstance& instance);

// Balanced assignment with fixed centers and fixed per-center cluster sizes:
// one transport solve per color, all colors sharing the same demands. Finite p
// ships p-th powers of distances; infinite p minimizes the maximum distance by
// binary search on a threshold radius.
FairClustering fair_assign_fixed_sizes(const ColoredDataset& ds, const CenterSet& centers,
                                       const std::vector<long>& sizes, NormSpec norm);

// Balanced assignment with every point within `radius` of its center, or
// nullopt when impossible. Supported for one or two colors: one color is a
// plain threshold check; two colors route through a chained flow network in
// which each center's inflow (color one) must equal its outflow (color two),
// so equal per-center counts are enforced without enumerating size vectors.
std::optional<FairClustering> kcenter_feasible_assign(const ColoredDataset& ds,
                                                      const CenterSet& centers, double radius,
                                                      Exponent q);

// Max-flow on a small directed graph (Dinic). Used for threshold feasibility
// probes; exposed for tests.
class FlowNetwork {
public:
    explicit FlowNetwork(int num_nodes);
    void add_edge(int from, int to, long capacity);
    long max_flow(int source, int sink);
    // Flow currently on the i-th added edge (valid after max_flow).
    long edge_flow(int edge_index) const;

private:
    bool bfs(int source, int sink);
    long dfs(int node, int sink, long pushed);

    struct Edge {
        int to;
        long cap;
    };
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> iter_;
};

}  // namespace fairclust
