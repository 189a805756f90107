#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "dataset.hpp"
#include "doctest.h"
#include "error.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "transport.hpp"

using namespace fairclust;

namespace {

// Exhaustive minimum over all center assignments respecting the demands.
double enumerate_transport(const TransportInstance& inst, std::vector<int>* best_assign) {
    const int n = inst.num_sources;
    const int k = inst.num_centers();
    std::vector<int> assign(n, 0), cur_counts(k, 0);
    std::vector<int> best;
    double best_cost = -1.0;
    auto rec = [&](auto&& self, int s, double acc) -> void {
        if (s == n) {
            for (int c = 0; c < k; ++c)
                if (cur_counts[c] != inst.demands[c]) return;
            if (best_cost < 0 || acc < best_cost) {
                best_cost = acc;
                best = assign;
            }
            return;
        }
        for (int c = 0; c < k; ++c) {
            if (cur_counts[c] == inst.demands[c]) continue;
            cur_counts[c]++;
            assign[s] = c;
            self(self, s + 1, acc + inst.cost_at(s, c));
            cur_counts[c]--;
        }
    };
    rec(rec, 0, 0.0);
    if (best_assign) *best_assign = best;
    return best_cost;
}

const NormSpec kP1Q1{Exponent::finite(1), Exponent::finite(1)};

}  // namespace

TEST_CASE("transport examples") {
    SUBCASE("points on their own centers cost nothing") {
        TransportInstance inst{2, {1, 1}, {0, 10, 10, 0}};
        TransportResult r = min_cost_transport(inst);
        CHECK(r.assignment == std::vector<int>{0, 1});
        CHECK(r.cost == doctest::Approx(0.0));
    }
    SUBCASE("forced split pays the far assignment") {
        // points {0,1}, centers {0,10}, sizes (1,1): 0->0, 1->10, cost 9.
        TransportInstance inst{2, {1, 1}, {0, 10, 1, 9}};
        TransportResult r = min_cost_transport(inst);
        CHECK(r.assignment == std::vector<int>{0, 1});
        CHECK(r.cost == doctest::Approx(9.0));
    }
    SUBCASE("demands must cover the sources") {
        TransportInstance inst{2, {1, 2}, {0, 1, 1, 0}};
        CHECK_THROWS_AS(min_cost_transport(inst), Error);
    }
}

TEST_CASE("transport equals assignment enumeration on random instances") {
    Rng rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 8;
        const int k = 2 + static_cast<int>(rng.uniform_index(3));
        TransportInstance inst;
        inst.num_sources = n;
        inst.demands.assign(k, 0);
        for (int i = 0; i < n; ++i) inst.demands[rng.uniform_index(k)]++;
        inst.costs.resize(static_cast<std::size_t>(n) * k);
        for (double& c : inst.costs) c = rng.next_double() * 7.0;
        TransportResult r = min_cost_transport(inst);
        const double brute = enumerate_transport(inst, nullptr);
        CHECK(r.cost == doctest::Approx(brute).epsilon(1e-12));
        std::vector<long> counts(k, 0);
        for (int c : r.assignment) counts[c]++;
        CHECK(counts == inst.demands);  // integral, exact per-center counts
    }
}

TEST_CASE("fair assignment with fixed sizes") {
    SUBCASE("single center takes everything") {
        // sizes are per-color counts per center, so one center absorbing both
        // points of every color is written {2}
        ColoredDataset ds({0, 1, 10, 11}, 1, {0, 1, 0, 1});
        FairClustering fc =
            fair_assign_fixed_sizes(ds, CenterSet::from_indices({0}), {2}, kP1Q1);
        CHECK(fc.assignment == std::vector<int>{0, 0, 0, 0});
        CHECK(fc.cost == doctest::Approx(22.0));
        CHECK(verify_balance(ds, fc).balanced);
    }
    SUBCASE("coincident color classes pay the same per color") {
        ColoredDataset ds({0, 4, 0, 4}, 1, {0, 0, 1, 1});
        CenterSet cs = CenterSet::from_indices({0, 1});
        FairClustering fc = fair_assign_fixed_sizes(ds, cs, {1, 1}, kP1Q1);
        CHECK(verify_balance(ds, fc).balanced);
        CHECK(fc.assignment[0] == fc.assignment[2]);
        CHECK(fc.assignment[1] == fc.assignment[3]);
        CHECK(fc.cost == doctest::Approx(0.0));
    }
    SUBCASE("sizes must cover each color class") {
        ColoredDataset ds({0, 1, 10, 11}, 1, {0, 1, 0, 1});
        CHECK_THROWS_AS(
            fair_assign_fixed_sizes(ds, CenterSet::from_indices({0, 2}), {1, 2}, kP1Q1), Error);
    }
    SUBCASE("matches the oracle optimum for those centers when sizes are best") {
        Rng rng(17);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<double> coords;
            std::vector<int> colors;
            for (int c = 0; c < 2; ++c)
                for (int i = 0; i < 4; ++i) {
                    coords.push_back(rng.next_gaussian() * 5.0);
                    colors.push_back(c);
                }
            ColoredDataset ds(coords, 1, colors);
            CenterSet cs = CenterSet::from_indices({0, 4});
            const NormSpec norm{Exponent::finite(1), Exponent::finite(2)};
            FairClustering oracle_best = brute_fair_assign(ds, cs, norm);
            // minimize over all size splits through the transport path
            double best = -1.0;
            for (long s0 = 0; s0 <= 4; ++s0) {
                FairClustering fc = fair_assign_fixed_sizes(ds, cs, {s0, 4 - s0}, norm);
                if (best < 0 || fc.cost < best) best = fc.cost;
            }
            CHECK(best == doctest::Approx(oracle_best.cost).epsilon(1e-12));
        }
    }
    SUBCASE("infinite p minimizes the maximum distance") {
        ColoredDataset ds({0, 3, 10, 13, 1, 2, 11, 12}, 1, {0, 0, 0, 0, 1, 1, 1, 1});
        CenterSet cs = CenterSet::from_indices({0, 2});
        const NormSpec norm{Exponent::infinity(), Exponent::finite(1)};
        FairClustering fc = fair_assign_fixed_sizes(ds, cs, {2, 2}, norm);
        CHECK(verify_balance(ds, fc).balanced);
        FairClustering oracle_best = brute_fair_assign(ds, cs, norm);
        // the even split happens to be optimal here
        CHECK(fc.cost == doctest::Approx(oracle_best.cost));
    }
}

TEST_CASE("threshold feasibility assignment") {
    ColoredDataset ds({0, 1, 10, 11}, 1, {0, 1, 0, 1});
    CenterSet cs = CenterSet::from_indices({0, 2});
    SUBCASE("huge radius is feasible") {
        auto fc = kcenter_feasible_assign(ds, cs, 100.0, Exponent::finite(1));
        REQUIRE(fc.has_value());
        CHECK(verify_balance(ds, *fc).balanced);
    }
    SUBCASE("radius below the reachable distance is infeasible") {
        CHECK_FALSE(kcenter_feasible_assign(ds, cs, 0.5, Exponent::finite(1)).has_value());
    }
    SUBCASE("binary search over the radius matches the oracle") {
        Rng rng(23);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<double> coords;
            std::vector<int> colors;
            for (int c = 0; c < 2; ++c)
                for (int i = 0; i < 4; ++i) {
                    coords.push_back(rng.next_gaussian() * 5.0);
                    colors.push_back(c);
                }
            ColoredDataset rds(coords, 1, colors);
            CenterSet rcs = CenterSet::from_indices({0, 4});
            const NormSpec norm{Exponent::infinity(), Exponent::finite(1)};
            FairClustering oracle_best = brute_fair_assign(rds, rcs, norm);
            // collect candidate radii: all point-center distances
            std::vector<double> levels;
            for (int i = 0; i < rds.num_points(); ++i)
                for (int c = 0; c < rcs.size(); ++c)
                    levels.push_back(center_distance(rds, i, rcs, c, norm.q));
            std::sort(levels.begin(), levels.end());
            double best = -1.0;
            for (double r : levels) {
                if (kcenter_feasible_assign(rds, rcs, r, norm.q).has_value()) {
                    best = r;
                    break;
                }
            }
            CHECK(best == doctest::Approx(oracle_best.cost));
        }
    }
    SUBCASE("three colors are not supported by the flow construction") {
        ColoredDataset three({0, 1, 2}, 1, {0, 1, 2});
        CHECK_THROWS_AS(
            kcenter_feasible_assign(three, CenterSet::from_indices({0}), 5.0, Exponent::finite(1)),
            Error);
    }
}

TEST_CASE("flow network basics") {
    // source 0 -> {1,2} -> sink 3, unit capacities except a doubled top path
    FlowNetwork net(4);
    net.add_edge(0, 1, 2);
    net.add_edge(0, 2, 1);
    net.add_edge(1, 3, 1);
    net.add_edge(2, 3, 1);
    CHECK(net.max_flow(0, 3) == 2);
    CHECK(net.edge_flow(0) == 1);  // top path limited by its outlet
    CHECK(net.edge_flow(1) == 1);
}
