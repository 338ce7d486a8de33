#include <doctest.h>

#include "darboux/jetpoly.hpp"
#include "random_inputs.hpp"

using namespace darboux;

namespace {

DiffPoly U(int a, int j = 0) { return DiffPoly::jet(a, j); }

ScalarField two_u(int a, long p, long q) {
    return ScalarField(PuiseuxPoly(PuiseuxMonomial{Gaussian(1), {{-2, Exponent(p, q)}, {a, Exponent(p, q)}}}));
}

} // namespace

TEST_CASE("total derivative") {
    CHECK(total_derivative(DiffPoly(5)).is_zero());
    CHECK(total_derivative(DiffPoly(two_u(1, 1, 2))) == DiffPoly(two_u(1, -1, 2)) * U(1, 1));
    CHECK(total_derivative(U(1, 1).pow(2).scaled(rational(1, 2))) == U(1, 1) * U(1, 2));
    CHECK(total_derivative(U(1) * U(2)) == U(1, 1) * U(2) + U(1) * U(2, 1));
}

TEST_CASE("variational derivative") {
    CHECK(variational_derivative(U(1), 1) == DiffPoly(1));
    CHECK(variational_derivative(DiffPoly(two_u(1, 1, 2)), 1) == DiffPoly(two_u(1, -1, 2)));
    CHECK(variational_derivative(U(1) * U(1, 2), 1) == U(1, 2).scaled(2));
    CHECK(variational_derivative(U(1, 1).pow(2), 1) == U(1, 2).scaled(-2));
}

TEST_CASE("total derivative detection") {
    auto r1 = is_total_derivative(U(1, 1));
    CHECK(r1.exact);
    REQUIRE(r1.witness.has_value());
    CHECK(*r1.witness == U(1));

    auto r2 = is_total_derivative(U(1, 1) * U(1, 2));
    CHECK(r2.exact);
    REQUIRE(r2.witness.has_value());
    CHECK(*r2.witness == U(1, 1).pow(2).scaled(rational(1, 2)));

    CHECK_FALSE(is_total_derivative(U(1, 1).pow(2)).exact);
    CHECK_FALSE(is_total_derivative(DiffPoly(3)).exact);

    // exact but the log witness is out of reach: u_x / u = D(log u)
    auto r3 = is_total_derivative(U(1, 1).scaled(ScalarField::variable(1).inv()));
    CHECK(r3.exact);
    CHECK_FALSE(r3.witness.has_value());

    CHECK(functionally_equal(U(1) * U(1, 2), -U(1, 1).pow(2)));
}

TEST_CASE("homogeneous split") {
    CHECK(homogeneous_split(DiffPoly()).empty());
    DiffPoly p = DiffPoly(two_u(1, 1, 2)) + U(1, 1);
    auto parts = homogeneous_split(p);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == DiffPoly(two_u(1, 1, 2)));
    CHECK(parts[1] == U(1, 1));
}

TEST_CASE("euler operator kills total derivatives on random inputs") {
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + iter % 2;
        DiffPoly p = testing::random_diffpoly(rng, n, 2, 3);
        DiffPoly dp = total_derivative(p);
        for (int a = 1; a <= n; ++a) CHECK(variational_derivative(dp, a).is_zero());
    }
}

TEST_CASE("D raises homogeneous degree by one and obeys Leibniz") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 60; ++iter) {
        DiffPoly p = testing::random_diffpoly(rng, 2, 2, 3);
        DiffPoly q = testing::random_diffpoly(rng, 2, 2, 2);
        CHECK(total_derivative(p * q) == total_derivative(p) * q + p * total_derivative(q));
        for (const auto& [deg, part] : homogeneous_split(p)) {
            DiffPoly d = total_derivative(part);
            CHECK((d.is_zero() || d.is_homogeneous(deg + 1)));
            // kernel of D is constants only
            if (!(deg == 0 && part.degree_zero_part().is_constant())) CHECK_FALSE(d.is_zero());
        }
        auto r = is_total_derivative(total_derivative(p) , 2);
        CHECK(r.exact);
    }
}
