#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "dataset.hpp"
#include "doctest.h"
#include "error.hpp"
#include "fair_center.hpp"
#include "oracle.hpp"
#include "rng.hpp"

using namespace fairclust;

namespace {

const Exponent kQ1 = Exponent::finite(1);

ColoredDataset random_colored(int l, int n, Rng& rng, double scale = 10.0) {
    std::vector<double> coords;
    std::vector<int> colors;
    for (int c = 0; c < l; ++c)
        for (int i = 0; i < n; ++i) {
            coords.push_back(rng.next_double() * scale);
            colors.push_back(c);
        }
    return ColoredDataset(coords, 1, colors);
}

double max_center_distance(const ColoredDataset& ds, const FairClustering& fc, Exponent q) {
    double worst = 0.0;
    for (int i = 0; i < ds.num_points(); ++i)
        worst = std::max(worst, center_distance(ds, i, fc.centers,
                                                fc.assignment[static_cast<std::size_t>(i)], q));
    return worst;
}

}  // namespace

TEST_CASE("center selection") {
    SUBCASE("k=1 yields a single seeded pick") {
        ColoredDataset ds({0, 1, 100, 101}, 1, {0, 0, 1, 1});
        FarthestFirstResult r = fair_kcenter_centers(ds, 1, kQ1, 3);
        CHECK(r.centers.size() == 1);
    }
    SUBCASE("second pick crosses the gap") {
        ColoredDataset ds({0, 1, 100, 101}, 1, {0, 0, 1, 1});
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            FarthestFirstResult r = fair_kcenter_centers(ds, 2, kQ1, seed);
            const double gap = ds.distance(r.order[0], r.order[1], kQ1);
            CHECK(gap >= 99.0);
        }
    }
    SUBCASE("radius trace is non-increasing") {
        Rng rng(301);
        ColoredDataset ds = random_colored(2, 8, rng);
        FarthestFirstResult r = fair_kcenter_centers(ds, 5, kQ1, 11);
        for (std::size_t i = 1; i < r.radius_trace.size(); ++i)
            CHECK(r.radius_trace[i] <= r.radius_trace[i - 1]);
    }
}

TEST_CASE("one color reduces to nearest assignment") {
    Rng rng(303);
    ColoredDataset ds = random_colored(1, 10, rng);
    FarthestFirstResult centers = fair_kcenter_centers(ds, 3, kQ1, 7);
    FairKCenterAssignment r = fair_kcenter_assign(ds, centers.centers, kQ1, 7);
    for (int i = 0; i < ds.num_points(); ++i)
        CHECK(r.clustering.assignment[static_cast<std::size_t>(i)] ==
              nearest_center(ds, i, centers.centers, kQ1));
    CHECK(r.radius == doctest::Approx(max_center_distance(ds, r.clustering, kQ1)));
}

TEST_CASE("two colors reach the optimal radius for the centers") {
    SUBCASE("coincident classes add no fairness penalty") {
        // colors sit on identical coordinates, so the balanced radius equals
        // the unconstrained nearest radius
        ColoredDataset ds({0, 6, 14, 0, 6, 14}, 1, {0, 0, 0, 1, 1, 1});
        CenterSet centers = CenterSet::from_indices({0, 2});
        FairKCenterAssignment r = fair_kcenter_assign(ds, centers, kQ1, 5);
        CHECK(verify_balance(ds, r.clustering).balanced);
        CHECK(r.radius == doctest::Approx(6.0));
    }
    SUBCASE("matches the exhaustive fixed-center oracle") {
        Rng rng(305);
        const NormSpec infq{Exponent::infinity(), kQ1};
        for (int trial = 0; trial < 30; ++trial) {
            ColoredDataset ds = random_colored(2, 4, rng);
            FarthestFirstResult centers =
                fair_kcenter_centers(ds, 2, kQ1, static_cast<std::uint64_t>(trial));
            FairKCenterAssignment r =
                fair_kcenter_assign(ds, centers.centers, kQ1, static_cast<std::uint64_t>(trial));
            FairClustering oracle = brute_fair_assign(ds, centers.centers, infq);
            CHECK(verify_balance(ds, r.clustering).balanced);
            CHECK(r.radius == doctest::Approx(oracle.cost));
        }
    }
}

TEST_CASE("three colors stay feasible and balanced") {
    Rng rng(307);
    const NormSpec infq{Exponent::infinity(), kQ1};
    for (int trial = 0; trial < 15; ++trial) {
        ColoredDataset ds = random_colored(3, 4, rng);
        FarthestFirstResult centers =
            fair_kcenter_centers(ds, 2, kQ1, static_cast<std::uint64_t>(trial));
        FairKCenterAssignment r =
            fair_kcenter_assign(ds, centers.centers, kQ1, static_cast<std::uint64_t>(trial));
        CHECK(verify_balance(ds, r.clustering).balanced);
        CHECK(r.radius == doctest::Approx(max_center_distance(ds, r.clustering, kQ1)));
        FairClustering oracle = brute_fair_assign(ds, centers.centers, infq);
        CHECK(r.radius >= oracle.cost - 1e-9);  // heuristic cannot beat the oracle
    }
}

TEST_CASE("whole pipeline stays within a constant factor of the fair optimum") {
    Rng rng(309);
    const NormSpec infq{Exponent::infinity(), kQ1};
    for (int trial = 0; trial < 20; ++trial) {
        const int l = 1 + static_cast<int>(rng.uniform_index(2));
        ColoredDataset ds = random_colored(l, 4, rng);
        FairClustering opt = brute_fair_opt(ds, 2, infq);
        FarthestFirstResult centers =
            fair_kcenter_centers(ds, 2, kQ1, static_cast<std::uint64_t>(trial));
        FairKCenterAssignment r =
            fair_kcenter_assign(ds, centers.centers, kQ1, static_cast<std::uint64_t>(trial));
        if (opt.cost <= 1e-12) {
            CHECK(r.radius <= 1e-9);
        } else {
            CHECK(r.radius <= 3.0 * opt.cost * (1 + 1e-9));
        }
    }
}

TEST_CASE("deterministic in the seed") {
    Rng rng(311);
    ColoredDataset ds = random_colored(2, 6, rng);
    FarthestFirstResult a = fair_kcenter_centers(ds, 3, kQ1, 42);
    FarthestFirstResult b = fair_kcenter_centers(ds, 3, kQ1, 42);
    CHECK(a.order == b.order);
    FairKCenterAssignment ra = fair_kcenter_assign(ds, a.centers, kQ1, 42);
    FairKCenterAssignment rb = fair_kcenter_assign(ds, b.centers, kQ1, 42);
    CHECK(ra.clustering.assignment == rb.clustering.assignment);
    CHECK(ra.radius == rb.radius);
}
