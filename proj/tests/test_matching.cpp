#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "error.hpp"
#include "matching.hpp"
#include "oracle.hpp"
#include "rng.hpp"

using namespace fairclust;

namespace {

CostMatrix matrix(int n, std::vector<double> entries) { return CostMatrix{n, std::move(entries)}; }

CostMatrix random_matrix(int n, Rng& rng) {
    std::vector<double> e(static_cast<std::size_t>(n) * n);
    for (double& v : e) v = rng.next_double() * 10.0;
    return CostMatrix{n, std::move(e)};
}

const NormSpec kP1Q1{Exponent::finite(1), Exponent::finite(1)};

}  // namespace

TEST_CASE("hungarian examples") {
    SUBCASE("zero diagonal picks the identity") {
        Matching m = hungarian_matching(matrix(2, {0, 1, 1, 0}));
        CHECK(m.perm == std::vector<int>{0, 1});
        CHECK(m.cost == doctest::Approx(0.0));
    }
    SUBCASE("identity beats the swap") {
        Matching m = hungarian_matching(matrix(2, {1, 2, 2, 1}));
        CHECK(m.perm == std::vector<int>{0, 1});
        CHECK(m.cost == doctest::Approx(2.0));
    }
}

TEST_CASE("exact matcher equals the permutation oracle") {
    Rng rng(7);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(5));  // up to 6
        CostMatrix m = random_matrix(n, rng);
        SUBCASE("") {}
        for (Exponent p : {Exponent::finite(1), Exponent::finite(2), Exponent::infinity()}) {
            Matching exact = min_cost_perfect_matching(m, p);
            Matching brute = brute_matching(m, p);
            CHECK(exact.cost == brute.cost);  // exact equality
        }
    }
}

TEST_CASE("bottleneck matching minimizes the maximum entry") {
    Matching m = bottleneck_matching(matrix(2, {1, 9, 9, 1}));
    CHECK(m.perm == std::vector<int>{0, 1});
    CHECK(m.cost == doctest::Approx(1.0));
    Matching swap = bottleneck_matching(matrix(2, {9, 1, 1, 9}));
    CHECK(swap.perm == std::vector<int>{1, 0});
    CHECK(swap.cost == doctest::Approx(1.0));
}

TEST_CASE("greedy matching examples and dominance") {
    SUBCASE("zero costs give the identity") {
        Matching m = greedy_matching(matrix(2, {0, 5, 5, 0}), Exponent::finite(1));
        CHECK(m.perm == std::vector<int>{0, 1});
        CHECK(m.cost == doctest::Approx(0.0));
    }
    SUBCASE("ties break to the lexicographically first pair") {
        Matching m = greedy_matching(matrix(2, {1, 1, 1, 1}), Exponent::finite(1));
        CHECK(m.perm == std::vector<int>{0, 1});
        CHECK(m.cost == doctest::Approx(2.0));
    }
    SUBCASE("agrees with exact on the 2x2 example") {
        Matching m = greedy_matching(matrix(2, {1, 2, 2, 1}), Exponent::finite(1));
        CHECK(m.perm == std::vector<int>{0, 1});
        CHECK(m.cost == doctest::Approx(2.0));
    }
    SUBCASE("never better than exact") {
        Rng rng(21);
        for (int trial = 0; trial < 100; ++trial) {
            CostMatrix m = random_matrix(5, rng);
            for (Exponent p : {Exponent::finite(1), Exponent::infinity()}) {
                CHECK(greedy_matching(m, p).cost >=
                      min_cost_perfect_matching(m, p).cost - 1e-12);
            }
        }
    }
}

TEST_CASE("emd examples") {
    SUBCASE("1-D two-point classes") {
        ColoredDataset ds({0, 10, 1, 9}, 1, {0, 0, 1, 1});
        CHECK(emd(ds, 0, 1, kP1Q1) == doctest::Approx(2.0));
        CHECK(emd(ds, 1, 0, kP1Q1) == doctest::Approx(2.0));
    }
    SUBCASE("a class against itself") {
        ColoredDataset ds({0, 10, 0, 10}, 1, {0, 0, 1, 1});
        CHECK(emd(ds, 0, 1, kP1Q1) == 0.0);
    }
    SUBCASE("unequal class sizes are rejected") {
        ColoredDataset ds({0, 1, 2}, 1, {0, 0, 1});
        CHECK_THROWS_AS(emd(ds, 0, 1, kP1Q1), Error);
    }
    SUBCASE("triangle inequality over three classes") {
        Rng rng(5);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> coords;
            std::vector<int> colors;
            for (int c = 0; c < 3; ++c)
                for (int i = 0; i < 4; ++i) {
                    coords.push_back(rng.next_gaussian() * 3.0);
                    coords.push_back(rng.next_gaussian() * 3.0);
                    colors.push_back(c);
                }
            ColoredDataset ds(coords, 2, colors);
            const NormSpec norm{Exponent::finite(1), Exponent::finite(2)};
            const double d01 = emd(ds, 0, 1, norm);
            const double d12 = emd(ds, 1, 2, norm);
            const double d02 = emd(ds, 0, 2, norm);
            CHECK(d02 <= d01 + d12 + 1e-9);
        }
    }
}

TEST_CASE("emd table") {
    SUBCASE("single color") {
        ColoredDataset ds({0, 1}, 1, {0, 0});
        EmdTable t = EmdTable::compute(ds, kP1Q1, EmdMode::exact);
        CHECK(t.num_colors() == 1);
        CHECK(t.value(0, 0) == 0.0);
        CHECK(t.aggregate(0, Exponent::finite(1)) == 0.0);
    }
    SUBCASE("two colors are symmetric") {
        ColoredDataset ds({0, 10, 1, 9}, 1, {0, 0, 1, 1});
        EmdTable t = EmdTable::compute(ds, kP1Q1, EmdMode::exact);
        CHECK(t.value(0, 1) == t.value(1, 0));
        CHECK(t.value(0, 1) == doctest::Approx(2.0));
    }
    SUBCASE("three-color entries match per-pair brute force") {
        Rng rng(11);
        std::vector<double> coords;
        std::vector<int> colors;
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < 5; ++i) {
                coords.push_back(rng.next_gaussian() * 4.0);
                colors.push_back(c);
            }
        ColoredDataset ds(coords, 1, colors);
        const NormSpec norm{Exponent::finite(2), Exponent::finite(1)};
        EmdTable t = EmdTable::compute(ds, norm, EmdMode::exact);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == b) continue;
                CostMatrix m = build_cost_matrix(ds, a, b, norm.q);
                CHECK(t.value(a, b) == brute_matching(m, norm.p).cost);
            }
    }
    SUBCASE("stored matchings are mutually inverse") {
        Rng rng(13);
        std::vector<double> coords;
        std::vector<int> colors;
        for (int c = 0; c < 2; ++c)
            for (int i = 0; i < 6; ++i) {
                coords.push_back(rng.next_double() * 9.0);
                colors.push_back(c);
            }
        ColoredDataset ds(coords, 1, colors);
        EmdTable t = EmdTable::compute(ds, kP1Q1, EmdMode::exact);
        const auto& fwd = t.matching(0, 1);
        const auto& bwd = t.matching(1, 0);
        for (int s = 0; s < 6; ++s) CHECK(bwd[fwd[s]] == s);
    }
    SUBCASE("aggregate follows the p-norm of the row") {
        ColoredDataset ds({0, 1, 2, 7, 8, 9}, 1, {0, 1, 2, 0, 1, 2});
        const NormSpec norm{Exponent::finite(2), Exponent::finite(1)};
        EmdTable t = EmdTable::compute(ds, norm, EmdMode::exact);
        const double expect =
            std::sqrt(t.value(0, 1) * t.value(0, 1) + t.value(0, 2) * t.value(0, 2));
        CHECK(t.aggregate(0, norm.p) == doctest::Approx(expect));
        EmdTable tinf = EmdTable::compute(
            ds, NormSpec{Exponent::infinity(), Exponent::finite(1)}, EmdMode::exact);
        CHECK(tinf.aggregate(0, Exponent::infinity()) ==
              doctest::Approx(std::max(tinf.value(0, 1), tinf.value(0, 2))));
    }
}

TEST_CASE("matching cost currency is the norm value") {
    // For (2,2) the matching cost must be the square root of the summed
    // squared entries, not the raw powered sum.
    ColoredDataset ds({0, 0, 3, 4}, 2, {0, 1});
    const NormSpec norm{Exponent::finite(2), Exponent::finite(2)};
    CHECK(emd(ds, 0, 1, norm) == doctest::Approx(5.0));
}
