#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "dataset.hpp"
#include "matching.hpp"
#include "norms.hpp"
#include "reduce.hpp"
#include "solvers.hpp"

namespace fairclust {

// The methods the benchmark harness can run on one sample. All of them except
// kmedianpp produce balanced clusterings; fairlet_bound ignores k and reports
// the k-independent cost of the cheapest fairlet decomposition.
enum class Method {
    relay_all,      // per-color solve, relay partners, best color
    relay_min_emd,  // solve only at the color with the cheapest matchings
    transport_all,  // per-color solve with an exact fair reassignment
    relay_sampled,  // relay at a randomly sampled base color
    fairlet_bound,  // cost of the cheapest fairlet decomposition (any k)
    kmedianpp,      // unconstrained seeding + medoid refinement baseline
    fair_kcenter,   // farthest-first centers with a balanced assignment
};

inline constexpr int kNumMethods = 7;

std::string_view method_name(Method method);
std::optional<Method> method_from_name(std::string_view name);
bool method_is_fair(Method method);

struct RunOptions {
    int k = 2;
    NormSpec norm{Exponent::finite(1), Exponent::finite(1)};
    SolverAlgorithm algorithm = SolverAlgorithm::local_search_kmedian;
    int max_iterations = 100;
    double improvement_threshold = 1e-4;
    double delta = 0.1;  // failure probability for the sampled variant
    EmdMode emd_mode = EmdMode::exact;
    std::uint64_t seed = 0;
};

struct MethodRun {
    double cost = 0.0;        // cost of the produced clustering under opts.norm
    bool balanced = false;    // verified on the actual assignment
    int base_color = -1;      // -1 when the method has no base color
    double wall_ms = 0.0;
    FairClustering clustering;
};

// Runs one method on one sample. A precomputed matching table may be shared
// across calls; it is used only when compatible with the requested mode.
MethodRun run_method(const ColoredDataset& ds, Method method, const RunOptions& opts,
                     std::shared_ptr<const EmdTable> table = nullptr);

// Well separated Gaussian blobs shared by all colors, with a per-color shift
// along the first axis. Points are emitted color-major, colors contiguous.
ColoredDataset make_gaussian_mixture(int colors, int per_color, int dim, int blobs,
                                     double blob_spread, double noise_sigma, double color_shift,
                                     std::uint64_t seed);

struct CertifyOptions {
    long trials = 200;
    std::uint64_t seed = 1;
    int max_colors = 3;
    int max_per_color = 4;  // points per color, total capped for the oracle
    int max_k = 2;
};

struct CertifyReport {
    long trials = 0;
    long relay_checked = 0;
    long center_checked = 0;
    double max_relay_ratio = 0.0;     // certified bound 3
    double max_min_emd_ratio = 0.0;   // certified bound 5
    double max_center_ratio = 0.0;    // certified bound 3
    long violations = 0;
    bool ok = false;
};

// Random small instances checked against the exhaustive oracles: the relay
// reduction must stay within 3x optimal, its single-base variant within 5x,
// and the balanced center assignment within 3x the fair center optimum.
CertifyReport certify(const CertifyOptions& opts);

}  // namespace fairclust
