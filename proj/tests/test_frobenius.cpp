#include <doctest.h>

#include "darboux/frobenius.hpp"

#include <random>

using namespace darboux;

namespace {

RMatrix rmat(std::initializer_list<std::initializer_list<long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = static_cast<int>(rows.begin()->size());
    RMatrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

GMatrix gmat(const RMatrix& m) {
    return m.map([](const Rational& q) { return Gaussian(q); });
}

SMatrix smat(const RMatrix& m) {
    return m.map([](const Rational& q) { return ScalarField(q); });
}

bool has_failure(const TripleReport& r, const std::string& cond, std::vector<int> idx) {
    for (const auto& f : r.failures) {
        if (f.condition == cond && f.indices == idx) return true;
    }
    return false;
}

// Random invertible integer matrix: unit lower times unit upper triangular.
RMatrix random_unimodular(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> d(-2, 2);
    RMatrix lo = RMatrix::identity(n);
    RMatrix up = RMatrix::identity(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            lo(i, j) = d(rng);
            up(j, i) = d(rng);
        }
    }
    return lo * up;
}

// Oracle for lemm3: c from b^{-1} computed by cofactors rather than elimination.
Rational inverse_entry_2x2(const RMatrix& b, int i, int j) {
    Rational det = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
    RMatrix adj(2, 2);
    adj(0, 0) = b(1, 1);
    adj(1, 1) = b(0, 0);
    adj(0, 1) = -b(0, 1);
    adj(1, 0) = -b(1, 0);
    return adj(i, j) / det;
}

} // namespace

TEST_CASE("check_triple accepts the valid examples") {
    CHECK(check_triple(builtin_algebra("t2")).ok());
    CHECK(check_triple(builtin_algebra("t3")).ok());
    CHECK(check_triple(builtin_algebra("example4d")).ok());
    CHECK(check_triple(tn_defining(4)).ok());

    FrobeniusTriple trivial;
    trivial.n = 2;
    trivial.a = Tensor3(2);
    trivial.b = RMatrix::identity(2);
    trivial.h = RMatrix::identity(2);
    CHECK(check_triple(trivial).ok());
}

TEST_CASE("check_triple reports witnesses") {
    FrobeniusTriple t = builtin_algebra("t2");
    t.h = rmat({{0, 1}, {-1, 0}});
    auto report = check_triple(t);
    CHECK_FALSE(report.ok());
    CHECK(has_failure(report, "h-invariance", {2, 2, 1}));
    CHECK(has_failure(report, "h-symmetry", {2, 1}));
    CHECK_FALSE(has_failure(report, "b-invariance", {2, 2, 1}));

    FrobeniusTriple bad = builtin_algebra("t2");
    bad.a(0, 1, 0) = 5;
    auto r2 = check_triple(bad);
    CHECK(has_failure(r2, "commutativity", {2, 1, 1}));

    FrobeniusTriple degenerate = builtin_algebra("t2");
    degenerate.b = RMatrix(2, 2);
    CHECK(has_failure(check_triple(degenerate), "b-nondegeneracy", {}));

    FrobeniusTriple wrong = builtin_algebra("t2");
    wrong.h = RMatrix::identity(3);
    CHECK_THROWS_AS(check_triple(wrong), Error);
}

TEST_CASE("unity") {
    auto e = unity(tn_defining(3).a);
    REQUIRE(e.has_value());
    CHECK(*e == std::vector<Rational>{1, 0, 0});

    CHECK_FALSE(unity(Tensor3(2)).has_value());

    auto e4 = unity(builtin_algebra("example4d").a);
    REQUIRE(e4.has_value());
    CHECK(*e4 == std::vector<Rational>{1, 0, 0, 0});

    // in the dual-basis form of t_n the unity sits in the last slot
    auto e2 = unity(builtin_algebra("t2").a);
    REQUIRE(e2.has_value());
    CHECK(*e2 == std::vector<Rational>{0, 1});
}

TEST_CASE("dual algebra") {
    FrobeniusTriple scalar;
    scalar.n = 1;
    scalar.a = Tensor3(1);
    scalar.a(0, 0, 0) = 2;
    scalar.b = rmat({{1}});
    scalar.h = rmat({{1}});
    CHECK(dual_algebra(scalar).c(0, 0, 0) == 1);

    // c takes the t_n table for the built-in t_n
    for (int n = 1; n <= 4; ++n) {
        auto d = dual_algebra(builtin_algebra("t" + std::to_string(n)));
        auto tn = tn_defining(n).a;
        for (int be = 0; be < n; ++be) {
            for (int p = 0; p < n; ++p) {
                for (int s = 0; s < n; ++s) CHECK(d.c(be, p, s) == tn(p, s, be));
            }
        }
        REQUIRE(d.f.has_value());
        std::vector<Rational> f(static_cast<std::size_t>(n), Rational(0));
        f[0] = 1;
        CHECK(*d.f == f);
    }

    // u = c(v, v)/2 with u^1 = v^1 v^4 + (v^2)^2/2 + (v^3)^2/2
    auto d4 = dual_algebra(builtin_algebra("example4d"));
    CHECK(d4.c(0, 0, 3) == Rational(1));
    CHECK(d4.c(0, 1, 1) == Rational(1));
    CHECK(d4.c(0, 2, 2) == Rational(1));
    CHECK(d4.c(3, 3, 3) == Rational(1));

    FrobeniusTriple singular = builtin_algebra("t2");
    singular.b = RMatrix(2, 2);
    try {
        dual_algebra(singular);
        FAIL("expected SingularForm");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularForm);
    }
}

TEST_CASE("dual algebra agrees with a cofactor oracle and satisfies the algebra identities") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 20; ++iter) {
        auto t = transform(builtin_algebra("t2"), random_unimodular(rng, 2));
        if (iter % 3 == 0) t = transform(direct_sum(builtin_algebra("t1"), builtin_algebra("t1")), random_unimodular(rng, 2));
        REQUIRE(check_triple(t).ok());
        auto d = dual_algebra(t);
        for (int be = 0; be < 2; ++be) {
            for (int p = 0; p < 2; ++p) {
                for (int s = 0; s < 2; ++s) {
                    Rational v(0);
                    for (int q = 0; q < 2; ++q) v += inverse_entry_2x2(t.b, p, q) * t.a(q, be, s);
                    CHECK(d.c(be, p, s) == v / 2);
                }
            }
        }
        REQUIRE(d.f.has_value());
        // f is the unity of c
        for (int be = 0; be < 2; ++be) {
            for (int s = 0; s < 2; ++s) {
                Rational v(0);
                for (int p = 0; p < 2; ++p) v += d.c(be, p, s) * (*d.f)[p];
                CHECK(v == (be == s ? 1 : 0));
            }
        }
    }
}

TEST_CASE("r matrix") {
    CHECK(r_matrix(builtin_algebra("t3")) == RMatrix::identity(3));
    FrobeniusTriple scalar;
    scalar.n = 1;
    scalar.a = Tensor3(1);
    scalar.b = rmat({{1}});
    scalar.h = rmat({{1}});
    CHECK(r_matrix(scalar)(0, 0) == Rational(1, 2));
}

TEST_CASE("good square roots") {
    auto id = good_sqrt(gmat(RMatrix::identity(3)));
    CHECK(id.L == smat(RMatrix::identity(3)));
    REQUIRE(id.p.size() == 3);
    CHECK(id.p[0] == ScalarField(1));
    CHECK(id.p[1].is_zero());

    auto j = good_sqrt(gmat(rmat({{1, 0}, {1, 1}})));
    SMatrix expect(2, 2);
    expect(0, 0) = 1;
    expect(1, 1) = 1;
    expect(1, 0) = rational(1, 2);
    CHECK(j.L == expect);

    auto minus = good_sqrt(gmat(rmat({{1, 0}, {1, 1}})), -1);
    CHECK(minus.L == expect.scaled(ScalarField(-1)));

    // lambda (I + N) with lambda = 4 and a 3x3 Jordan block
    auto big = good_sqrt(gmat(rmat({{4, 0, 0}, {4, 4, 0}, {0, 4, 4}})));
    CHECK(big.L * big.L == smat(rmat({{4, 0, 0}, {4, 4, 0}, {0, 4, 4}})));

    // block diagonal, one block needs a radical
    auto blocks = good_sqrt(gmat(rmat({{2, 0, 0}, {0, 9, 0}, {0, 9, 9}})));
    CHECK(blocks.L(0, 0) == sqrt_of(2));
    CHECK(blocks.L(1, 1) == ScalarField(3));

    // diagonalizable with distinct rational eigenvalues 1 and 4, not triangular
    auto diag = good_sqrt(gmat(rmat({{2, 1}, {2, 3}})));
    CHECK(diag.L == smat(rmat({{4, 1}, {2, 5}})).scaled(rational(1, 3)));

    // eigenvalues +-2i with square roots 1 +- i
    auto rot = good_sqrt(gmat(rmat({{0, -2}, {2, 0}})));
    CHECK(rot.L == smat(rmat({{1, -1}, {1, 1}})));
    // +-i has no square root in Q(i)
    CHECK_THROWS_AS(good_sqrt(gmat(rmat({{0, -1}, {1, 0}}))), Error);

    CHECK_THROWS_AS(good_sqrt(gmat(rmat({{0, 0}, {1, 0}}))), Error);
    try {
        good_sqrt(gmat(rmat({{0, 2}, {1, 0}})));
        FAIL("expected UnsupportedSpectrum");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedSpectrum);
    }
}

TEST_CASE("symbolic good square root of 2U") {
    // 2U for t_2 at u: [[2u1, 0], [2u2, 2u1]]
    SMatrix r(2, 2);
    r(0, 0) = ScalarField::variable(1) * ScalarField(2);
    r(1, 1) = r(0, 0);
    r(1, 0) = ScalarField::variable(2) * ScalarField(2);
    auto g = good_sqrt(r);
    CHECK(g.L * g.L == r);
    CHECK(g.L(0, 0) == root(r(0, 0), 2));
}

TEST_CASE("intertwining and exactness on built-ins") {
    for (const auto& name : builtin_names()) {
        auto t = builtin_algebra(name);
        auto d = dual_algebra(t);
        auto l = good_sqrt(gmat(r_matrix(t)));
        auto li = inverse(l.L);
        REQUIRE(li.has_value());
        CHECK(intertwines(d.c, l.L));
        CHECK(intertwines(d.c, *li));
        CHECK(forms_are_exact(t));
    }
}

TEST_CASE("intertwining on random triples with nontrivial r") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> coef(1, 4);
    for (int iter = 0; iter < 12; ++iter) {
        // h = a-contraction against a random vector m with m^top != 0
        FrobeniusTriple t = tn_defining(2 + iter % 2);
        int n = t.n;
        std::vector<Rational> m(static_cast<std::size_t>(n));
        for (auto& x : m) x = coef(rng);
        for (int al = 0; al < n; ++al) {
            for (int be = 0; be < n; ++be) {
                Rational v(0);
                for (int s = 0; s < n; ++s) v += t.a(al, be, s) * m[s];
                t.h(al, be) = v;
            }
        }
        t = transform(t, random_unimodular(rng, n));
        REQUIRE(check_triple(t).ok());
        auto d = dual_algebra(t);
        auto l = good_sqrt(gmat(r_matrix(t)));
        auto li = inverse(l.L);
        REQUIRE(li.has_value());
        CHECK(intertwines(d.c, l.L));
        CHECK(intertwines(d.c, *li));
        CHECK(forms_are_exact(t));
    }
}

TEST_CASE("direct sums and transforms") {
    auto s = direct_sum(builtin_algebra("t1"), builtin_algebra("t1"));
    CHECK(s.n == 2);
    CHECK(s.b == rmat({{1, 0}, {0, 1}}).scaled(Rational(1, 2)));
    CHECK(check_triple(s).ok());

    auto s3 = direct_sum(builtin_algebra("t2"), builtin_algebra("t1"));
    CHECK(s3.n == 3);
    CHECK(check_triple(s3).ok());

    FrobeniusTriple zero;
    zero.a = Tensor3(0);
    auto same = direct_sum(builtin_algebra("t2"), zero);
    CHECK(same.a == builtin_algebra("t2").a);
    CHECK(same.h == builtin_algebra("t2").h);

    std::mt19937 rng(5);
    for (int iter = 0; iter < 10; ++iter) {
        RMatrix m = random_unimodular(rng, 3);
        auto t = transform(builtin_algebra("t3"), m);
        CHECK(check_triple(t).ok());
        auto back = transform(t, *inverse(m));
        CHECK(back.a == builtin_algebra("t3").a);
    }

    CHECK_THROWS_AS(builtin_algebra("nope"), Error);
    CHECK(builtin_algebra("t_3").a == builtin_algebra("t3").a);
}
