#include "transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace fairclust {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TransportResult min_cost_transport(const TransportInstance& instance) {
    int n = instance.num_sources;
    int k = instance.num_centers();
    if (n <= 0 || k <= 0) raise(errc::invalid_argument, "transport instance is empty");
    if (instance.costs.size() != static_cast<std::size_t>(n) * k)
        raise(errc::dimension_mismatch, "transport cost matrix size does not match sources*centers");
    long total_demand = 0;
    for (long d : instance.demands) {
        if (d < 0) raise(errc::invalid_argument, "transport demands must be nonnegative");
        total_demand += d;
    }
    if (total_demand != n)
        raise(errc::infeasible, "transport demands sum to " + std::to_string(total_demand) +
                                    " but there are " + std::to_string(n) + " unit supplies");
    for (double c : instance.costs)
        if (!std::isfinite(c) || c < 0.0)
            raise(errc::invalid_argument, "transport costs must be finite and nonnegative");

    // Successive shortest paths. Node ids: sources 0..n-1, centers n..n+k-1.
    // Residual edges: s -> c (forward, cost c_sc) for every pair except the
    // current assignment of s, and c -> s (backward, cost -c_sc) when s is
    // assigned to c. Dijkstra runs on costs reduced by Johnson potentials.
    std::vector<int> assigned(n, -1);
    std::vector<long> remaining(instance.demands);
    std::vector<std::vector<int>> center_members(k);
    std::vector<double> potential(n + k, 0.0);
    std::vector<double> dist(n + k);
    std::vector<int> prev_node(n + k);
    std::vector<char> settled(n + k);

    for (int start = 0; start < n; ++start) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(prev_node.begin(), prev_node.end(), -1);
        std::fill(settled.begin(), settled.end(), 0);
        dist[start] = 0.0;
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        heap.emplace(0.0, start);
        int reached_center = -1;
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (settled[u]) continue;
            settled[u] = 1;
            if (u >= n && remaining[u - n] > 0) {
                reached_center = u - n;
                break;
            }
            if (u < n) {
                int skip = assigned[u];
                for (int c = 0; c < k; ++c) {
                    if (c == skip) continue;
                    int v = n + c;
                    if (settled[v]) continue;
                    double w = instance.cost_at(u, c) + potential[u] - potential[v];
                    if (d + w < dist[v]) {
                        dist[v] = d + w;
                        prev_node[v] = u;
                        heap.emplace(dist[v], v);
                    }
                }
            } else {
                int c = u - n;
                for (int s : center_members[c]) {
                    if (settled[s]) continue;
                    double w = -instance.cost_at(s, c) + potential[u] - potential[s];
                    if (d + w < dist[s]) {
                        dist[s] = d + w;
                        prev_node[s] = u;
                        heap.emplace(dist[s], s);
                    }
                }
            }
        }
        if (reached_center < 0)
            raise(errc::internal_error, "transport: no augmenting path despite feasible totals");

        double reached_dist = dist[n + reached_center];
        for (int v = 0; v < n + k; ++v)
            potential[v] += std::min(dist[v], reached_dist);

        // Walk the path back, flipping assignments along it.
        int node = n + reached_center;
        remaining[reached_center] -= 1;
        while (node != start) {
            int before = prev_node[node];
            if (node >= n) {
                // before is a source newly assigned to this center
                int c = node - n;
                int s = before;
                if (assigned[s] >= 0) {
                    auto& members = center_members[assigned[s]];
                    members.erase(std::find(members.begin(), members.end(), s));
                }
                assigned[s] = c;
                center_members[c].push_back(s);
            }
            node = before;
        }
    }

    TransportResult result;
    result.assignment = std::move(assigned);
    double total = 0.0;
    for (int s = 0; s < n; ++s) total += instance.cost_at(s, result.assignment[s]);
    result.cost = total;
    return result;
}

FlowNetwork::FlowNetwork(int num_nodes) : adj_(num_nodes) {}

void FlowNetwork::add_edge(int from, int to, long capacity) {
    adj_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, capacity});
    adj_[to].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0});
}

bool FlowNetwork::bfs(int source, int sink) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int id : adj_[u]) {
            const Edge& e = edges_[id];
            if (e.cap > 0 && level_[e.to] < 0) {
                level_[e.to] = level_[u] + 1;
                q.push(e.to);
            }
        }
    }
    return level_[sink] >= 0;
}

long FlowNetwork::dfs(int node, int sink, long pushed) {
    if (node == sink) return pushed;
    for (std::size_t& i = iter_[node]; i < adj_[node].size(); ++i) {
        int id = adj_[node][i];
        Edge& e = edges_[id];
        if (e.cap > 0 && level_[e.to] == level_[node] + 1) {
            long got = dfs(e.to, sink, std::min(pushed, e.cap));
            if (got > 0) {
                e.cap -= got;
                edges_[id ^ 1].cap += got;
                return got;
            }
        }
    }
    return 0;
}

long FlowNetwork::max_flow(int source, int sink) {
    long flow = 0;
    while (bfs(source, sink)) {
        iter_.assign(adj_.size(), 0);
        while (long pushed = dfs(source, sink, std::numeric_limits<long>::max())) flow += pushed;
    }
    return flow;
}

long FlowNetwork::edge_flow(int edge_index) const {
    return edges_[static_cast<std::size_t>(edge_index) * 2 + 1].cap;
}

namespace {

// Threshold b-matching feasibility for a single color: every class point must
// reach some center within `radius`, center c taking exactly sizes[c] points.
// Returns the per-point center assignment, or nullopt.
std::optional<std::vector<int>> threshold_color_assign(const ColoredDataset& ds,
                                                       const std::vector<int>& class_points,
                                                       const CenterSet& centers,
                                                       const std::vector<long>& sizes,
                                                       double radius, Exponent q) {
    int n = static_cast<int>(class_points.size());
    int k = centers.size();
    int source = n + k, sink = n + k + 1;
    FlowNetwork net(n + k + 2);
    for (int s = 0; s < n; ++s) net.add_edge(source, s, 1);
    std::vector<std::pair<int, int>> pairs;
    for (int s = 0; s < n; ++s)
        for (int c = 0; c < k; ++c)
            if (center_distance(ds, class_points[s], centers, c, q) <= radius) {
                pairs.emplace_back(s, c);
                net.add_edge(s, n + c, 1);
            }
    for (int c = 0; c < k; ++c) net.add_edge(n + c, sink, sizes[c]);
    if (net.max_flow(source, sink) != n) return std::nullopt;
    std::vector<int> assign(n, -1);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (net.edge_flow(static_cast<int>(n + i)) > 0) assign[pairs[i].first] = pairs[i].second;
    return assign;
}

bool sizes_feasible_at(const ColoredDataset& ds, const CenterSet& centers,
                       const std::vector<long>& sizes, double radius, Exponent q) {
    for (int color = 0; color < ds.num_colors(); ++color)
        if (!threshold_color_assign(ds, ds.color_class(color), centers, sizes, radius, q))
            return false;
    return true;
}

}  // namespace

FairClustering fair_assign_fixed_sizes(const ColoredDataset& ds, const CenterSet& centers,
                                       const std::vector<long>& sizes, NormSpec norm) {
    ds.require_balanced();
    int k = centers.size();
    if (static_cast<int>(sizes.size()) != k)
        raise(errc::dimension_mismatch, "sizes length does not match number of centers");
    long total = 0;
    for (long s : sizes) {
        if (s < 0) raise(errc::invalid_argument, "cluster sizes must be nonnegative");
        total += s;
    }
    int per_color = ds.per_color_count();
    if (total != per_color)
        raise(errc::infeasible, "cluster sizes sum to " + std::to_string(total) +
                                    " but each color has " + std::to_string(per_color) +
                                    " points");

    FairClustering out;
    out.centers = centers;
    out.norm = norm;
    out.assignment.assign(ds.num_points(), -1);

    if (norm.p.is_infinite()) {
        // Minimize the max distance: binary search over realized distances,
        // then extract one feasible flow per color at the best radius.
        std::vector<double> levels;
        levels.reserve(static_cast<std::size_t>(ds.num_points()) * k);
        for (int i = 0; i < ds.num_points(); ++i)
            for (int c = 0; c < k; ++c) levels.push_back(center_distance(ds, i, centers, c, norm.q));
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        int lo = 0, hi = static_cast<int>(levels.size()) - 1;
        if (!sizes_feasible_at(ds, centers, sizes, levels[hi], norm.q))
            raise(errc::infeasible, "no balanced assignment with the given sizes exists");
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            if (sizes_feasible_at(ds, centers, sizes, levels[mid], norm.q))
                hi = mid;
            else
                lo = mid + 1;
        }
        for (int color = 0; color < ds.num_colors(); ++color) {
            const std::vector<int>& cls = ds.color_class(color);
            auto assign = threshold_color_assign(ds, cls, centers, sizes, levels[lo], norm.q);
            if (!assign) raise(errc::internal_error, "feasible radius lost during extraction");
            for (std::size_t s = 0; s < cls.size(); ++s) out.assignment[cls[s]] = (*assign)[s];
        }
        out.cost = clustering_cost(ds, centers, out.assignment, norm);
        return out;
    }

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
        TransportResult res = min_cost_transport(inst);
        for (std::size_t s = 0; s < cls.size(); ++s) out.assignment[cls[s]] = res.assignment[s];
    }
    out.cost = clustering_cost(ds, centers, out.assignment, norm);
    return out;
}

std::optional<FairClustering> kcenter_feasible_assign(const ColoredDataset& ds,
                                                      const CenterSet& centers, double radius,
                                                      Exponent q) {
    if (radius < 0.0) raise(errc::invalid_argument, "radius must be nonnegative");
    ds.require_balanced();
    int l = ds.num_colors();
    if (l > 2)
        raise(errc::unsupported,
              "threshold-feasible balanced assignment is only supported for one or two colors");
    int k = centers.size();

    FairClustering out;
    out.centers = centers;
    out.norm = NormSpec{Exponent::infinity(), q};
    out.assignment.assign(ds.num_points(), -1);

    if (l == 1) {
        for (int i = 0; i < ds.num_points(); ++i) {
            int best = -1;
            double best_d = kInf;
            for (int c = 0; c < k; ++c) {
                double d = center_distance(ds, i, centers, c, q);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (best_d > radius) return std::nullopt;
            out.assignment[i] = best;
        }
        out.cost = clustering_cost(ds, centers, out.assignment, out.norm);
        return out;
    }

    // Two colors: S -> a_i -> center -> b_j -> T with unit point capacities.
    // Flow conservation at each center forces equal counts from both colors.
    const std::vector<int>& ca = ds.color_class(0);
    const std::vector<int>& cb = ds.color_class(1);
    int n = static_cast<int>(ca.size());
    int source = 2 * n + k, sink = 2 * n + k + 1;
    FlowNetwork net(2 * n + k + 2);
    for (int s = 0; s < n; ++s) net.add_edge(source, s, 1);
    std::vector<std::pair<int, int>> a_pairs;
    std::vector<int> a_edge_ids;
    for (int s = 0; s < n; ++s)
        for (int c = 0; c < k; ++c)
            if (center_distance(ds, ca[s], centers, c, q) <= radius) {
                a_edge_ids.push_back(n + static_cast<int>(a_pairs.size()));
                a_pairs.emplace_back(s, c);
                net.add_edge(s, 2 * n + c, 1);
            }
    std::vector<std::pair<int, int>> b_pairs;
    std::vector<int> b_edge_ids;
    for (int c = 0; c < k; ++c)
        for (int t = 0; t < n; ++t)
            if (center_distance(ds, cb[t], centers, c, q) <= radius) {
                b_edge_ids.push_back(n + static_cast<int>(a_pairs.size()) +
                                     static_cast<int>(b_pairs.size()));
                b_pairs.emplace_back(c, t);
                net.add_edge(2 * n + c, n + t, 1);
            }
    for (int t = 0; t < n; ++t) net.add_edge(n + t, sink, 1);
    if (net.max_flow(source, sink) != n) return std::nullopt;
    for (std::size_t i = 0; i < a_pairs.size(); ++i)
        if (net.edge_flow(a_edge_ids[i]) > 0) out.assignment[ca[a_pairs[i].first]] = a_pairs[i].second;
    for (std::size_t i = 0; i < b_pairs.size(); ++i)
        if (net.edge_flow(b_edge_ids[i]) > 0) out.assignment[cb[b_pairs[i].second]] = b_pairs[i].first;
    out.cost = clustering_cost(ds, centers, out.assignment, out.norm);
    return out;
}

}  // namespace fairclust
