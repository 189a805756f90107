#include "reduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "transport.hpp"

namespace fairclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kSamplingStream = 0x9d2c5680u;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::shared_ptr<const EmdTable> ensure_table(const ColoredDataset& ds, NormSpec norm, EmdMode mode,
                                             std::shared_ptr<const EmdTable> table,
                                             double* matching_ms) {
    if (table) return table;
    Clock::time_point t0 = Clock::now();
    auto computed = std::make_shared<EmdTable>(EmdTable::compute(ds, norm, mode));
    if (matching_ms) *matching_ms += ms_since(t0);
    return computed;
}

int clamp_k_to_class(const ColoredDataset& ds, const std::vector<int>& cls, int k, Exponent q) {
    if (k <= 1 || k <= static_cast<int>(cls.size()) / 2) return k;
    int distinct = 0;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        bool dup = false;
        for (std::size_t j = 0; j < i && !dup; ++j)
            if (ds.distance(cls[i], cls[j], q) == 0.0) dup = true;
        if (!dup) ++distinct;
    }
    return std::min(k, distinct);
}

SolverConfig per_color_config(const SolverConfig& config, int color) {
    SolverConfig local = config;
    local.seed = mix_seed(config.seed, static_cast<std::uint64_t>(color));
    return local;
}

// Sampled base-color candidates: ceil(log2(1/delta)) draws with replacement,
// deduplicated in first-seen order.
std::vector<int> sample_base_colors(int num_colors, double delta, std::uint64_t seed) {
    if (!(delta > 0.0 && delta < 1.0))
        raise(errc::invalid_argument, "delta must lie strictly between 0 and 1");
    int draws = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / delta))));
    Rng rng(mix_seed(seed, kSamplingStream));
    std::vector<int> sampled;
    for (int i = 0; i < draws; ++i) {
        int t = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(num_colors)));
        if (std::find(sampled.begin(), sampled.end(), t) == sampled.end()) sampled.push_back(t);
    }
    return sampled;
}

int cheapest_aggregate(const EmdTable& table, const std::vector<int>& colors, Exponent p) {
    int best = -1;
    double best_v = kInf;
    for (int t : colors) {
        double v = table.aggregate(t, p);
        if (v < best_v || (v == best_v && best >= 0 && t < best)) {
            best_v = v;
            best = t;
        }
    }
    return best;
}

}  // namespace

FairClustering assign_via_matchings(const ColoredDataset& ds, int base_color,
                                    const CenterSet& centers, const EmdTable& table,
                                    NormSpec norm) {
    if (table.num_colors() != ds.num_colors())
        raise(errc::invalid_argument, "matching table does not cover this dataset's colors");
    const std::vector<int>& base = ds.color_class(base_color);
    FairClustering out;
    out.centers = centers;
    out.norm = norm;
    out.assignment.assign(ds.num_points(), -1);
    std::vector<int> base_slot(base.size());
    for (std::size_t s = 0; s < base.size(); ++s) {
        base_slot[s] = nearest_center(ds, base[s], centers, norm.q);
        out.assignment[base[s]] = base_slot[s];
    }
    for (int j = 0; j < ds.num_colors(); ++j) {
        if (j == base_color) continue;
        const std::vector<int>& perm = table.matching(base_color, j);
        const std::vector<int>& cls = ds.color_class(j);
        if (perm.size() != base.size())
            raise(errc::internal_error, "matching size does not match color class size");
        for (std::size_t s = 0; s < base.size(); ++s) out.assignment[cls[perm[s]]] = base_slot[s];
    }
    out.cost = clustering_cost(ds, centers, out.assignment, norm);
    return out;
}

FairClustering fairlet_decomposition(const ColoredDataset& ds, int base_color,
                                     const EmdTable& table, NormSpec norm) {
    const std::vector<int>& base = ds.color_class(base_color);
    FairClustering out;
    out.centers = CenterSet::from_indices(base);
    out.norm = norm;
    out.assignment.assign(ds.num_points(), -1);
    for (std::size_t s = 0; s < base.size(); ++s) out.assignment[base[s]] = static_cast<int>(s);
    for (int j = 0; j < ds.num_colors(); ++j) {
        if (j == base_color) continue;
        const std::vector<int>& perm = table.matching(base_color, j);
        const std::vector<int>& cls = ds.color_class(j);
        for (std::size_t s = 0; s < base.size(); ++s)
            out.assignment[cls[perm[s]]] = static_cast<int>(s);
    }
    out.cost = table.aggregate(base_color, norm.p);
    return out;
}

ReductionResult relay_all(const ColoredDataset& ds, int k, NormSpec norm,
                          const SolverConfig& config, std::shared_ptr<const EmdTable> table) {
    ds.require_balanced();
    if (k < 1) raise(errc::invalid_argument, "k must be at least 1");
    ReductionResult result;
    result.emd_table = ensure_table(ds, norm, EmdMode::exact, std::move(table),
                                    &result.wall_times.matching_ms);
    double best = kInf;
    for (int color = 0; color < ds.num_colors(); ++color) {
        const std::vector<int>& cls = ds.color_class(color);
        Clock::time_point t0 = Clock::now();
        SolverResult sr = run_solver(ds, cls, clamp_k_to_class(ds, cls, k, norm.q), norm,
                                     per_color_config(config, color));
        result.wall_times.solver_ms += ms_since(t0);
        Clock::time_point t1 = Clock::now();
        FairClustering fc = assign_via_matchings(ds, color, sr.centers, *result.emd_table, norm);
        result.wall_times.assign_ms += ms_since(t1);
        result.per_color_candidates.push_back({color, fc.cost});
        if (fc.cost < best) {
            best = fc.cost;
            result.base_color = color;
            result.clustering = std::move(fc);
        }
    }
    return result;
}

ReductionResult relay_min_emd(const ColoredDataset& ds, int k, NormSpec norm,
                              const SolverConfig& config, std::shared_ptr<const EmdTable> table) {
    ds.require_balanced();
    if (k < 1) raise(errc::invalid_argument, "k must be at least 1");
    ReductionResult result;
    result.emd_table = ensure_table(ds, norm, EmdMode::exact, std::move(table),
                                    &result.wall_times.matching_ms);
    std::vector<int> all_colors(ds.num_colors());
    for (int c = 0; c < ds.num_colors(); ++c) all_colors[c] = c;
    int base = cheapest_aggregate(*result.emd_table, all_colors, norm.p);
    const std::vector<int>& cls = ds.color_class(base);
    Clock::time_point t0 = Clock::now();
    SolverResult sr = run_solver(ds, cls, clamp_k_to_class(ds, cls, k, norm.q), norm,
                                 per_color_config(config, base));
    result.wall_times.solver_ms += ms_since(t0);
    Clock::time_point t1 = Clock::now();
    result.clustering = assign_via_matchings(ds, base, sr.centers, *result.emd_table, norm);
    result.wall_times.assign_ms += ms_since(t1);
    result.base_color = base;
    result.per_color_candidates.push_back({base, result.clustering.cost});
    return result;
}

ReductionResult transport_all(const ColoredDataset& ds, int k, NormSpec norm,
                              const SolverConfig& config, std::shared_ptr<const EmdTable> table) {
    ds.require_balanced();
    if (k < 1) raise(errc::invalid_argument, "k must be at least 1");
    ReductionResult result;
    result.emd_table = std::move(table);
    double best = kInf;
    for (int color = 0; color < ds.num_colors(); ++color) {
        const std::vector<int>& cls = ds.color_class(color);
        Clock::time_point t0 = Clock::now();
        int k_eff = clamp_k_to_class(ds, cls, k, norm.q);
        SolverResult sr =
            run_solver(ds, cls, k_eff, norm, per_color_config(config, color));
        result.wall_times.solver_ms += ms_since(t0);
        Clock::time_point t1 = Clock::now();
        std::vector<long> sizes(sr.centers.size(), 0);
        for (int p : cls) sizes[nearest_center(ds, p, sr.centers, norm.q)] += 1;
        FairClustering fc = fair_assign_fixed_sizes(ds, sr.centers, sizes, norm);
        result.wall_times.assign_ms += ms_since(t1);
        result.per_color_candidates.push_back({color, fc.cost});
        if (fc.cost < best) {
            best = fc.cost;
            result.base_color = color;
            result.clustering = std::move(fc);
        }
    }
    return result;
}

ReductionResult sampled_fairlets(const ColoredDataset& ds, NormSpec norm, double delta,
                                 EmdMode mode, std::uint64_t seed,
                                 std::shared_ptr<const EmdTable> table) {
    ds.require_balanced();
    if (norm.p.is_infinite() || norm.p.value() != 1)
        raise(errc::unsupported, "fairlet decomposition is defined for the p=1 objective");
    ReductionResult result;
    result.emd_table =
        ensure_table(ds, norm, mode, std::move(table), &result.wall_times.matching_ms);
    std::vector<int> sampled = sample_base_colors(ds.num_colors(), delta, seed);
    for (int t : sampled)
        result.per_color_candidates.push_back({t, result.emd_table->aggregate(t, norm.p)});
    int base = cheapest_aggregate(*result.emd_table, sampled, norm.p);
    Clock::time_point t0 = Clock::now();
    result.clustering = fairlet_decomposition(ds, base, *result.emd_table, norm);
    result.wall_times.assign_ms += ms_since(t0);
    result.base_color = base;
    return result;
}

ReductionResult relay_sampled(const ColoredDataset& ds, int k, NormSpec norm,
                              const SolverConfig& config, double delta, EmdMode mode,
                              std::uint64_t seed, std::shared_ptr<const EmdTable> table) {
    ds.require_balanced();
    if (k < 1) raise(errc::invalid_argument, "k must be at least 1");
    ReductionResult result;
    result.emd_table =
        ensure_table(ds, norm, mode, std::move(table), &result.wall_times.matching_ms);
    std::vector<int> sampled = sample_base_colors(ds.num_colors(), delta, seed);
    int base = cheapest_aggregate(*result.emd_table, sampled, norm.p);
    const std::vector<int>& cls = ds.color_class(base);
    Clock::time_point t0 = Clock::now();
    SolverResult sr = run_solver(ds, cls, clamp_k_to_class(ds, cls, k, norm.q), norm,
                                 per_color_config(config, base));
    result.wall_times.solver_ms += ms_since(t0);
    Clock::time_point t1 = Clock::now();
    result.clustering = assign_via_matchings(ds, base, sr.centers, *result.emd_table, norm);
    result.wall_times.assign_ms += ms_since(t1);
    result.base_color = base;
    result.per_color_candidates.push_back({base, result.clustering.cost});
    return result;
}

ReductionResult fairlet_bound(const ColoredDataset& ds, NormSpec norm,
                              std::shared_ptr<const EmdTable> table) {
    ds.require_balanced();
    ReductionResult result;
    result.emd_table = ensure_table(ds, norm, EmdMode::exact, std::move(table),
                                    &result.wall_times.matching_ms);
    std::vector<int> all_colors(ds.num_colors());
    for (int c = 0; c < ds.num_colors(); ++c) all_colors[c] = c;
    for (int t : all_colors)
        result.per_color_candidates.push_back({t, result.emd_table->aggregate(t, norm.p)});
    int base = cheapest_aggregate(*result.emd_table, all_colors, norm.p);
    Clock::time_point t0 = Clock::now();
    result.clustering = fairlet_decomposition(ds, base, *result.emd_table, norm);
    result.wall_times.assign_ms += ms_since(t0);
    result.base_color = base;
    return result;
}

FairClustering cluster_fairlets(const ColoredDataset& ds, const std::vector<int>& fairlet_ids,
                                int k, NormSpec norm, const SolverConfig& config) {
    ds.require_balanced();
    int per = ds.per_color_count();
    if (fairlet_ids.size() != static_cast<std::size_t>(ds.num_points()))
        raise(errc::dimension_mismatch, "one fairlet id per point required");
    std::vector<std::vector<int>> groups(per);
    for (int i = 0; i < ds.num_points(); ++i) {
        int f = fairlet_ids[i];
        if (f < 0 || f >= per)
            raise(errc::invalid_argument, "fairlet id " + std::to_string(f) + " out of range");
        groups[f].push_back(i);
    }
    for (int f = 0; f < per; ++f) {
        if (static_cast<int>(groups[f].size()) != ds.num_colors())
            raise(errc::invalid_argument,
                  "fairlet " + std::to_string(f) + " does not hold one point per color");
        std::vector<char> seen(ds.num_colors(), 0);
        for (int i : groups[f]) {
            if (seen[ds.color(i)])
                raise(errc::invalid_argument,
                      "fairlet " + std::to_string(f) + " holds two points of one color");
            seen[ds.color(i)] = 1;
        }
    }

    // Representative: the group medoid under the (p,q) aggregate.
    std::vector<int> reps(per);
    for (int f = 0; f < per; ++f) {
        int best = -1;
        double best_v = std::numeric_limits<double>::infinity();
        for (int m : groups[f]) {
            CostAggregate agg(norm.p);
            for (int x : groups[f]) agg.add(ds.distance(x, m, norm.q));
            double v = agg.powered();
            if (v < best_v) {
                best_v = v;
                best = m;
            }
        }
        reps[f] = best;
    }

    SolverResult sr = run_solver(ds, reps, std::min(k, per), norm, config);
    FairClustering out;
    out.centers = sr.centers;
    out.norm = norm;
    out.assignment.assign(ds.num_points(), -1);
    for (int f = 0; f < per; ++f) {
        int slot = nearest_center(ds, reps[f], sr.centers, norm.q);
        for (int i : groups[f]) out.assignment[i] = slot;
    }
    out.cost = clustering_cost(ds, out.centers, out.assignment, norm);
    return out;
}

}  // namespace fairclust
