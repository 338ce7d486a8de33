#include <doctest.h>

#include "darboux/hamops.hpp"
#include "oracles.hpp"
#include "random_inputs.hpp"

#include <random>

using namespace darboux;
using darboux::testing::random_affine_triple;
using darboux::testing::third_order_oracle;
using darboux::testing::random_unimodular;

namespace {

DiffPoly U(int a, int j = 0) { return DiffPoly::jet(a, j); }

} // namespace

TEST_CASE("christoffel symbols") {
    auto c0 = christoffel(MetricChart::constant(RMatrix::identity(2)));
    CHECK(c0.upper.is_zero());

    auto t2 = builtin_algebra("t2");
    auto c = christoffel(MetricChart::affine(t2));
    for (int al = 0; al < 2; ++al) {
        for (int be = 0; be < 2; ++be) {
            for (int s = 0; s < 2; ++s) CHECK(c.upper(al, be, s) == ScalarField(-t2.a(al, be, s)));
        }
    }

    SMatrix g(1, 1);
    g(0, 0) = ScalarField::variable(1) * ScalarField(2);
    auto scalar = christoffel(MetricChart::general(g));
    CHECK(scalar.upper(0, 0, 0) == ScalarField(-1));

    // a genuinely curved-coordinate flat metric: polar-like g = diag(1, 1/(u^1)^2)
    SMatrix polar(2, 2);
    polar(0, 0) = 1;
    polar(1, 1) = ScalarField::variable(1).pow(-2);
    auto cp = christoffel(MetricChart::general(polar));
    // nabla g = 0 in the contravariant form
    for (int al = 0; al < 2; ++al) {
        for (int be = 0; be < 2; ++be) {
            for (int s = 0; s < 2; ++s) {
                CHECK((polar(al, be).partial(s + 1) + cp.upper(al, be, s) + cp.upper(be, al, s)).is_zero());
            }
        }
    }
    CHECK(cp.lower(1, 1, 0) == ScalarField::variable(1).inv());

    SMatrix degenerate(2, 2);
    degenerate(0, 0) = ScalarField::variable(1);
    degenerate(0, 1) = ScalarField::variable(1);
    degenerate(1, 0) = ScalarField::variable(1);
    degenerate(1, 1) = ScalarField::variable(1);
    CHECK_THROWS_AS(christoffel(MetricChart::general(degenerate)), Error);
}

TEST_CASE("tau recursion") {
    Connection zero(2);
    CHECK(tau(zero, 3).is_zero());

    Connection g1(1);
    ScalarField gamma = ScalarField::variable(1).pow(2) + ScalarField(3);
    g1(0, 0, 0) = gamma;
    CHECK(tau(g1, 1)(0, 0) == -U(1, 1).scaled(gamma));
    DiffPoly expect = U(1, 1).pow(2).scaled(gamma * gamma) - U(1, 1).pow(2).scaled(gamma.partial(1)) - U(1, 2).scaled(gamma);
    CHECK(tau(g1, 2)(0, 0) == expect);
    CHECK(tau(g1, 3)(0, 0).is_homogeneous(3));
}

TEST_CASE("operators from metrics and triples") {
    auto t1 = builtin_algebra("t1");
    HamiltonianOperator a = build_A(t1, AVariant::Miura);
    CHECK(a.at(1)(0, 0) == U(1).scaled(ScalarField(2)));
    CHECK(a.at(0)(0, 0) == U(1, 1));

    FrobeniusTriple flat;
    flat.n = 2;
    flat.a = Tensor3(2);
    flat.b = RMatrix::identity(2).scaled(Rational(1, 2));
    flat.h = RMatrix::identity(2);
    HamiltonianOperator id = build_A(flat);
    CHECK(id.at(1) == DMatrix::identity(2));
    CHECK(id.at(0).is_zero());

    HamiltonianOperator b = build_B(RMatrix::identity(1), 3);
    CHECK(b.k == 3);
    CHECK(b.at(3)(0, 0) == DiffPoly(1));
    CHECK_THROWS_AS(build_B(RMatrix(2, 2), 3), Error);
    CHECK(build_B(RMatrix::identity(2), 5).at(5) == DMatrix::identity(2));

    // first-order Levi-Civita operator of an affine chart equals build_A
    auto t2 = builtin_algebra("t3");
    CHECK(build_darboux_operator(MetricChart::affine(t2).g, christoffel(MetricChart::affine(t2)).lower, 1) == build_A(t2));
    CHECK(build_A(MetricChart::general(MetricChart::affine(t2).g)) == build_A(t2));

    Connection none(2);
    CHECK(build_darboux_operator(SMatrix::identity(2), none, 5) == build_B(RMatrix::identity(2), 5));
}

TEST_CASE("applying operators") {
    HamiltonianOperator a = build_A(builtin_algebra("t1"), AVariant::Miura);
    CHECK(darboux::apply(a, {DiffPoly(1)})[0] == U(1, 1));

    // D^3 (2u)^{-1/2}
    ScalarField w = root(ScalarField::variable(1) * ScalarField(2), 2).inv();
    auto hd = darboux::apply(build_B(RMatrix::identity(1), 3), {DiffPoly(w)});
    CHECK(hd[0] == total_derivative(DiffPoly(w), 3));
    CHECK(hd[0].is_homogeneous(3));
    CHECK_THROWS_AS(darboux::apply(a, {DiffPoly(1), DiffPoly(2)}), Error);
}

TEST_CASE("brackets are skew modulo total derivatives") {
    auto p = build_A(builtin_algebra("t1"), AVariant::Miura) + build_B(RMatrix::identity(1), 3);
    CHECK((is_total_derivative(bracket(p, U(1), U(1)), 1).exact || bracket(p, U(1), U(1)).is_zero()));

    // {u, u^2/2} for 2uD + u_x: integrand u_x u + ..., reduces to zero
    DiffPoly h2 = U(1).pow(2).scaled(rational(1, 2));
    DiffPoly br = bracket(build_A(builtin_algebra("t1"), AVariant::Miura), U(1), h2);
    // delta(u)=1, P(u) = 2u u_x + u_x u = 3 u u_x which is D(3u^2/2)
    CHECK(br.is_zero());

    std::mt19937 rng(424242);
    auto ops = {build_A(builtin_algebra("t2")), build_B(builtin_algebra("t2").h, 3)};
    for (const auto& op : ops) {
        for (int iter = 0; iter < 6; ++iter) {
            DiffPoly x = testing::random_diffpoly(rng, 2, 1, 2);
            DiffPoly y = testing::random_diffpoly(rng, 2, 1, 2);
            DiffPoly sym = bracket(op, x, y) + bracket(op, y, x);
            CHECK((sym.is_zero() || is_total_derivative(sym, 2).exact));
        }
    }
}

TEST_CASE("reduction modulo total derivatives") {
    CHECK(reduce_modulo_derivatives(U(1, 1) * U(1, 2)).is_zero());
    CHECK(reduce_modulo_derivatives(U(1) * U(1, 2)) == -U(1, 1).pow(2));
    DiffPoly p = U(1, 1) * U(2) + U(1) * U(2, 1);
    CHECK(reduce_modulo_derivatives(p).is_zero());
    std::mt19937 rng(77);
    for (int iter = 0; iter < 30; ++iter) {
        DiffPoly q = testing::random_diffpoly(rng, 2, 2, 3);
        DiffPoly r = reduce_modulo_derivatives(q);
        CHECK(functionally_equal(q, r, 2));
    }
}

TEST_CASE("third-order operator matches the literal expansion") {
    std::mt19937 rng(1234);
    for (int n : {2, 3}) {
        for (int iter = 0; iter < (n == 2 ? 3 : 1); ++iter) {
            auto t = random_affine_triple(rng, n);
            REQUIRE(check_triple(t).ok());
            MetricChart chart = MetricChart::affine(t);
            auto ch = christoffel(chart);
            auto op = build_darboux_operator(chart.g, ch.lower, 3);
            CHECK(op.graded());
            CHECK(op == third_order_oracle(chart.g, ch.lower));
        }
    }
}

TEST_CASE("build_darboux_operator rejects bad connections") {
    Connection torsion(2);
    torsion(0, 0, 1) = 1;
    CHECK_THROWS_AS(build_darboux_operator(SMatrix::identity(2), torsion, 3), Error);
    Connection sym(1);
    sym(0, 0, 0) = 1;
    try {
        build_darboux_operator(SMatrix::identity(1), sym, 3);
        FAIL("expected NotParallel");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotParallel);
    }
    CHECK_THROWS_AS(build_darboux_operator(SMatrix::identity(1), Connection(1), 2), Error);
}

TEST_CASE("compatibility gate") {
    auto t2 = builtin_algebra("t2");
    auto chart = MetricChart::affine(t2);
    SMatrix h = t2.h.map([](const Rational& q) { return ScalarField(q); });
    auto r3 = compatibility_check(chart, h, 3);
    CHECK(r3.pass);
    REQUIRE(r3.triple.has_value());
    CHECK(r3.triple->a == t2.a);

    auto r5 = compatibility_check(chart, h, 5);
    CHECK_FALSE(r5.pass);
    REQUIRE(r5.witness.has_value());
    CHECK_FALSE(r5.witness_value->is_zero());

    auto flat = compatibility_check(MetricChart::constant(RMatrix::identity(2)), h, 7);
    CHECK(flat.pass);

    for (int k : {2, 1, -3}) {
        try {
            compatibility_check(chart, h, k);
            FAIL("expected UnsupportedOrder");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UnsupportedOrder);
        }
    }

    // family (41): a4 with diagonal forms
    FrobeniusTriple f41;
    f41.n = 2;
    f41.a = Tensor3(2);
    f41.a(0, 0, 0) = 1;
    f41.a(1, 1, 1) = 1;
    f41.b = RMatrix(2, 2);
    f41.b(0, 0) = 3;
    f41.b(1, 1) = -2;
    f41.h = RMatrix(2, 2);
    f41.h(0, 0) = 5;
    f41.h(1, 1) = 7;
    auto hf = f41.h.map([](const Rational& q) { return ScalarField(q); });
    CHECK(compatibility_check(MetricChart::affine(f41), hf, 3).pass);

    // wrong h breaks invariance
    SMatrix bad = h;
    bad(0, 0) = 1;
    auto rb = compatibility_check(chart, bad, 3);
    CHECK_FALSE(rb.pass);
}

TEST_CASE("affine changes of coordinates") {
    std::mt19937 rng(8);
    for (int iter = 0; iter < 6; ++iter) {
        auto t = builtin_algebra(iter % 2 == 0 ? "t2" : "t3");
        int n = t.n;
        AffineMap map{random_unimodular(rng, n), std::vector<Rational>(static_cast<std::size_t>(n))};
        for (auto& c : map.c) c = static_cast<long>(rng() % 5) - 2;
        auto op = build_A(t) + build_B(t.h, 3);
        auto moved = transform_operator(op, map);
        auto tt = transform_triple(t, map);
        CHECK(check_triple(tt).ok());
        CHECK(moved == build_A(tt) + build_B(tt.h, 3));
        CHECK(moved.at(3) == (map.M * t.h * map.M.transposed()).map([](const Rational& q) { return DiffPoly(ScalarField(q)); }));
        CHECK(transform_operator(moved, map.inverse()) == op);
    }
}
