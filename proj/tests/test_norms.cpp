#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "error.hpp"
#include "norms.hpp"
#include "rng.hpp"

using namespace fairclust;

TEST_CASE("exponent construction and accessors") {
    CHECK(Exponent::finite(1).value() == 1);
    CHECK(Exponent::finite(7).value() == 7);
    CHECK_FALSE(Exponent::finite(2).is_infinite());
    CHECK(Exponent::infinity().is_infinite());
    CHECK(Exponent::finite(3).str() == "3");
    CHECK(Exponent::infinity().str() == "inf");
    CHECK_THROWS_AS(Exponent::finite(0), Error);
    CHECK_THROWS_AS(Exponent::finite(-2), Error);
    CHECK(Exponent::finite(2) == Exponent::finite(2));
    CHECK(Exponent::finite(2) != Exponent::infinity());
}

TEST_CASE("lq distance examples") {
    std::vector<double> a{0, 0}, b{3, 4};
    CHECK(lq_distance(a, b, Exponent::finite(2)) == doctest::Approx(5.0));
    CHECK(lq_distance(b, b, Exponent::finite(2)) == 0.0);
    CHECK(lq_distance(b, b, Exponent::infinity()) == 0.0);
    std::vector<double> c{1, 1}, d{4, 5};
    CHECK(lq_distance(c, d, Exponent::infinity()) == doctest::Approx(4.0));
    CHECK(lq_distance(c, d, Exponent::finite(1)) == doctest::Approx(7.0));
    CHECK(lq_distance(c, d, Exponent::finite(3)) == doctest::Approx(std::pow(27.0 + 64.0, 1.0 / 3.0)));
}

TEST_CASE("lq distance metric axioms on random points") {
    Rng rng(99);
    const Exponent qs[] = {Exponent::finite(1), Exponent::finite(2), Exponent::finite(3),
                           Exponent::infinity()};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(3), y(3), z(3);
        for (int d = 0; d < 3; ++d) {
            x[d] = rng.next_gaussian();
            y[d] = rng.next_gaussian();
            z[d] = rng.next_gaussian();
        }
        for (Exponent q : qs) {
            const double dxy = lq_distance(x, y, q);
            const double dyx = lq_distance(y, x, q);
            const double dxz = lq_distance(x, z, q);
            const double dzy = lq_distance(z, y, q);
            CHECK(dxy == dyx);
            CHECK(dxy >= 0.0);
            CHECK(dxy <= dxz + dzy + 1e-9);
        }
    }
}

TEST_CASE("pow and root fast paths agree with std::pow") {
    for (double x : {0.0, 0.5, 1.0, 2.25, 10.0}) {
        CHECK(pow_exp(x, Exponent::finite(1)) == x);
        CHECK(pow_exp(x, Exponent::finite(2)) == x * x);
        CHECK(pow_exp(x, Exponent::finite(3)) == doctest::Approx(std::pow(x, 3.0)));
        CHECK(root_exp(x, Exponent::finite(1)) == x);
        CHECK(root_exp(x, Exponent::finite(2)) == doctest::Approx(std::sqrt(x)));
        CHECK(root_exp(pow_exp(x, Exponent::finite(4)), Exponent::finite(4)) ==
              doctest::Approx(x));
    }
}

TEST_CASE("cost aggregate matches closed forms") {
    SUBCASE("finite p") {
        CostAggregate agg(Exponent::finite(2));
        agg.add(3.0);
        agg.add(4.0);
        CHECK(agg.powered() == doctest::Approx(25.0));
        CHECK(agg.value() == doctest::Approx(5.0));
    }
    SUBCASE("infinite p") {
        CostAggregate agg(Exponent::infinity());
        agg.add(1.0);
        agg.add(2.0);
        agg.add(0.5);
        CHECK(agg.value() == doctest::Approx(2.0));
        CHECK(agg.powered() == doctest::Approx(2.0));
    }
    SUBCASE("add_powered mirrors add for p=3") {
        CostAggregate a(Exponent::finite(3)), b(Exponent::finite(3));
        a.add(2.0);
        b.add_powered(8.0);
        CHECK(a.value() == doctest::Approx(b.value()));
    }
}

TEST_CASE("cascaded norm examples") {
    SUBCASE("Frobenius") {
        std::vector<double> m{3, 4, 0, 0};
        CHECK(cascaded_norm(m, 2, 2, Exponent::finite(2), Exponent::finite(2)) ==
              doctest::Approx(5.0));
    }
    SUBCASE("sum of absolute entries") {
        std::vector<double> m{1, 1, 2, 2};
        CHECK(cascaded_norm(m, 2, 2, Exponent::finite(1), Exponent::finite(1)) ==
              doctest::Approx(6.0));
    }
    SUBCASE("max of row norms") {
        std::vector<double> m{3, 4, 6, 8};
        CHECK(cascaded_norm(m, 2, 2, Exponent::infinity(), Exponent::finite(2)) ==
              doctest::Approx(10.0));
    }
}
