#include <doctest.h>

#include "darboux/hierarchy.hpp"

#include <random>

using namespace darboux;

namespace {

DiffPoly J(int a, int j = 0) { return DiffPoly::jet(a, j); }
ScalarField u(int a, Exponent e = Exponent(1)) { return ScalarField::variable(a, e); }
// (2 u^a)^(k/2)
ScalarField two_u(int a, long k) { return root(ScalarField(2) * u(a), 2).pow(k); }
ScalarField q(long p, long r = 1) { return ScalarField(make_rational(p, r)); }

HierarchySolution solve(const std::string& name, int imax, int branch = 1, Variant v = Variant::Miura) {
    return solve_recursion(make_problem(builtin_algebra(name), v, branch), imax);
}

// The scalar Riccati recursion u = v^2/2 + v_x solved term by term:
// v_{i+1} = -(1/v_1)(1/2 sum_{j=2}^{i} v_j v_{i+2-j} + (v_i)_x).
std::vector<DiffPoly> scalar_oracle(int imax, int sign) {
    std::vector<DiffPoly> v{DiffPoly(two_u(1, 1) * ScalarField(sign))};
    ScalarField inv_v1 = two_u(1, -1) * ScalarField(sign);
    for (int i = 1; i < imax; ++i) {
        DiffPoly acc = total_derivative(v[i - 1]);
        for (int j = 2; j <= i; ++j) acc += (v[j - 1] * v[i + 1 - j]).scaled(q(1, 2));
        v.push_back((-acc).scaled(inv_v1).simplified());
    }
    return v;
}

std::vector<DiffPoly> dxxx(const std::vector<ScalarField>& f) {
    std::vector<DiffPoly> out;
    for (const auto& x : f) out.push_back(total_derivative(DiffPoly(x), 3).simplified());
    return out;
}

} // namespace

TEST_CASE("scalar first component and branches") {
    auto p = make_problem(builtin_algebra("t1"));
    auto v1 = solve_v1(p);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0] == two_u(1, 1));
    CHECK(solve_v1(make_problem(builtin_algebra("t1"), Variant::Miura, -1))[0] == -two_u(1, 1));
    auto sol = solve("t1", 2);
    CHECK(sol.component(1, 2) == (J(1, 1) * DiffPoly(u(1, -1) * q(-1, 2))).simplified());
}

TEST_CASE("scalar recursion matches the direct Riccati solve") {
    for (int sign : {1, -1}) {
        auto sol = solve("t1", 6, sign);
        auto oracle = scalar_oracle(6, sign);
        for (int i = 1; i <= 6; ++i) CHECK(sol.component(1, i) == oracle[i - 1]);
    }
}

TEST_CASE("branch flip multiplies v_i by (-1)^i") {
    auto plus = solve("t1", 4, 1);
    auto minus = solve("t1", 4, -1);
    for (int i = 1; i <= 4; ++i) {
        DiffPoly expect = i % 2 == 0 ? plus.component(1, i) : -plus.component(1, i);
        CHECK(minus.component(1, i) == expect);
    }
}

TEST_CASE("components are graded and even ones exact") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto sol = solve(name, 4);
        for (int a = 1; a <= sol.n; ++a) {
            CHECK(sol.v[a - 1].graded());
            CHECK(is_total_derivative(sol.component(a, 2), sol.n).exact);
            CHECK(is_total_derivative(sol.component(a, 4), sol.n).exact);
        }
    }
}

TEST_CASE("first densities of t2 and t3") {
    auto t2 = solve("t2", 1);
    CHECK(functionally_equal(t2.density(1, 1), DiffPoly(two_u(1, 1)), 2));
    CHECK(functionally_equal(t2.density(2, 1), DiffPoly(u(2) * two_u(1, -1)), 2));

    auto t3 = solve("t3", 1);
    CHECK(functionally_equal(t3.density(1, 1), DiffPoly(two_u(1, 1)), 3));
    CHECK(functionally_equal(t3.density(2, 1), DiffPoly(u(2) * two_u(1, -1)), 3));
    ScalarField h3 = u(3) * two_u(1, -1) - q(1, 2) * u(2).pow(2) * two_u(1, -3);
    CHECK(functionally_equal(t3.density(3, 1), DiffPoly(h3), 3));

    // Without the factor 1/2 the third row of c(v, v)/2 = u breaks:
    // v1 v3 + v2^2 / 2 = u3 in t_3.
    ScalarField v1 = two_u(1, 1), v2 = u(2) * two_u(1, -1);
    auto third_row = [&](const ScalarField& v3) { return v1 * v3 + q(1, 2) * v2 * v2; };
    CHECK(third_row(h3) == u(3));
    CHECK(third_row(u(3) * two_u(1, -1) - u(2).pow(2) * two_u(1, -3)) != u(3));
}

TEST_CASE("four-dimensional example") {
    auto p = make_problem(builtin_algebra("example4d"));
    auto sol = solve_recursion(p, 3);
    CHECK(functionally_equal(sol.density(4, 1), DiffPoly(two_u(4, 1)), 4));
    CHECK(functionally_equal(sol.density(3, 1), DiffPoly(u(3) * two_u(4, -1)), 4));
    CHECK(functionally_equal(sol.density(2, 1), DiffPoly(u(2) * two_u(4, -1)), 4));
    ScalarField h1 = u(1) * two_u(4, -1) - q(1, 2) * (u(2).pow(2) + u(3).pow(2)) * two_u(4, -3);
    CHECK(functionally_equal(sol.density(1, 1), DiffPoly(h1), 4));

    auto ops = chain_operators(p);
    auto flow = hd_equation(sol, ops.A, ops.B, 1, 1);
    std::vector<ScalarField> inner{
        q(3, 2) * (u(2).pow(2) + u(3).pow(2)) * two_u(4, -5) - u(1) * two_u(4, -3),
        -u(2) * two_u(4, -3),
        -u(3) * two_u(4, -3),
        two_u(4, -1),
    };
    CHECK(flow == dxxx(inner));
}

TEST_CASE("scalar Lenard-Magri chain reproduces Harry Dym") {
    auto p = make_problem(builtin_algebra("t1"));
    auto ops = chain_operators(p);
    CHECK(ops.A.at(0)(0, 0) == J(1, 1));
    CHECK(ops.A.at(1)(0, 0) == J(1).scaled(2));
    auto sol = solve_recursion(p, 7);
    auto rep = verify_chain(sol, ops.A, ops.B, 3);
    CHECK(rep.ok());
    CHECK(hd_equation(sol, ops.A, ops.B, 1, 1) == dxxx({two_u(1, -1)}));
    CHECK(hd_equation(sol, ops.A, ops.B, 1, 0) == std::vector<DiffPoly>{DiffPoly()});
    // H_2 carries u_xx and u_x^2 over (2u)^{5/2}
    auto d2 = variational_derivative(sol.density(1, 2), 1).simplified();
    CHECK(!d2.is_zero());
    CHECK(d2.depends_on_jet(1, 2));
}

TEST_CASE("chains of the built-in triples") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto p = make_problem(builtin_algebra(name));
        auto sol = solve_recursion(p, 5);
        auto ops = chain_operators(p);
        CHECK(verify_chain(sol, ops.A, ops.B, 2).ok());
    }
}

TEST_CASE("broken chains are reported") {
    auto p = make_problem(builtin_algebra("t2"));
    auto sol = solve_recursion(p, 5);
    auto ops = chain_operators(p);
    auto B2 = build_B(p.triple.h.map([](const Rational& x) { return Rational(2 * x); }), 3);
    auto rep = verify_chain(sol, ops.A, B2, 2);
    REQUIRE(!rep.ok());
    CHECK(rep.failure->i == 1);
    CHECK_THROWS_AS(rep.require(), Error);
    CHECK_THROWS_AS(hd_equation(sol, ops.A, B2, 1, 1), Error);
    // a constant density is a Casimir of both operators
    std::vector<DiffPoly> consts{DiffPoly(3), DiffPoly(0), DiffPoly(0)};
    CHECK(verify_densities(consts, ops.A, ops.B, 2).ok());
}

TEST_CASE("linear combinations of hierarchies stay chains") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    for (const auto& name : {"t2", "t3"}) {
        auto p = make_problem(builtin_algebra(name));
        auto sol = solve_recursion(p, 5);
        auto ops = chain_operators(p);
        for (int trial = 0; trial < 2; ++trial) {
            std::vector<DiffPoly> H(3);
            for (int a = 1; a <= sol.n; ++a) {
                ScalarField w(make_rational(d(rng), 1 + trial));
                for (int i = 1; i <= 3; ++i) H[i - 1] += sol.density(a, i).scaled(w);
            }
            H[0] += DiffPoly(d(rng));
            CHECK(verify_densities(H, ops.A, ops.B, 2).ok());
        }
    }
}

TEST_CASE("flows commute") {
    for (const auto& name : {"t1", "t2"}) {
        CAPTURE(name);
        auto p = make_problem(builtin_algebra(name));
        auto sol = solve_recursion(p, 3);
        auto ops = chain_operators(p);
        std::vector<std::vector<DiffPoly>> flows;
        for (int a = 1; a <= sol.n; ++a) {
            for (int i = 1; i <= 2; ++i) flows.push_back(darboux::apply(ops.B, variational_gradient(sol.density(a, i), sol.n)));
        }
        for (std::size_t x = 0; x < flows.size(); ++x) {
            for (std::size_t y = x + 1; y < flows.size(); ++y) {
                for (const auto& c : flow_commutator(flows[x], flows[y])) CHECK(c.is_zero());
            }
        }
    }
    // u u_x against u_xx does not commute
    std::vector<DiffPoly> x{J(1) * J(1, 1)}, y{J(1, 2)};
    CHECK(!flow_commutator(x, y)[0].is_zero());
}

TEST_CASE("full variant in shifted coordinates") {
    auto t = builtin_algebra("t2");
    auto p = make_problem(t, Variant::Full);
    auto sh = p.shift();
    CHECK(sh == std::vector<Rational>{Rational(1, 2), Rational(0)});
    AffineMap m{RMatrix::identity(2), sh};
    CHECK(transform_operator(build_A(t, AVariant::Full), m).simplified() == build_A(t, AVariant::Miura));

    auto miura = solve_recursion(make_problem(t), 5);
    auto full = solve_recursion(p, 5);
    CHECK(full.component(1, 1) == (miura.component(1, 1) - DiffPoly(1)).simplified());
    CHECK(full.component(2, 1) == miura.component(2, 1));
    for (int i = 2; i <= 5; ++i) CHECK(full.component(2, i) == miura.component(2, i));
    auto ops = chain_operators(p);
    CHECK(verify_chain(full, ops.A, ops.B, 2).ok());

    // v_1 solves v + c(v, v)/2 = u in the original coordinates
    auto v1 = solve_v1(p);
    auto c = p.c;
    for (int b = 0; b < 2; ++b) {
        ScalarField lhs = v1[b];
        for (int r = 0; r < 2; ++r) {
            for (int s = 0; s < 2; ++s) lhs += q(1, 2) * ScalarField(c(b, r, s)) * v1[r] * v1[s];
        }
        CHECK(lhs == u(b + 1) - ScalarField(sh[b]));
    }
}

TEST_CASE("recursion rejects unsupported input") {
    FrobeniusTriple z{2, Tensor3(2), RMatrix::identity(2), RMatrix::identity(2)};
    REQUIRE(check_triple(z).ok());
    try {
        make_problem(z);
        FAIL("expected UnsupportedAlgebra");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedAlgebra);
    }
    auto bad = builtin_algebra("t2");
    bad.h(0, 1) = 5;
    CHECK_THROWS_AS(make_problem(bad), Error);
    CHECK_THROWS_AS(solve_recursion(make_problem(builtin_algebra("t1")), 0), Error);
}

TEST_CASE("Hunter-Saxton systems") {
    auto v = [](int a, int j = 0) { return J(a, j); };
    auto hs1 = hs_equation(builtin_algebra("t1"));
    CHECK(hs1.equations[0] == v(1, 2) * v(1) + (v(1, 1) * v(1, 1)).scaled(q(1, 2)));

    auto hs2 = hs_equation(builtin_algebra("t2"));
    CHECK(hs2.equations[0] == hs1.equations[0]);
    CHECK(hs2.equations[1] == v(1, 2) * v(2) + v(1, 1) * v(2, 1) + v(1) * v(2, 2));

    auto hs3 = hs_equation(builtin_algebra("t3"));
    CHECK(hs3.equations[1] == hs2.equations[1]);
    CHECK(hs3.equations[2] == v(2, 2) * v(2) + (v(2, 1) * v(2, 1)).scaled(q(1, 2)) + v(1) * v(3, 2) +
                                  v(1, 1) * v(3, 1) + v(1, 2) * v(3));

    auto hs4 = hs_equation(builtin_algebra("example4d"));
    auto pair = [&](int a, int b) { return v(a, 2) * v(b) + v(a, 1) * v(b, 1) + v(a) * v(b, 2); };
    auto self = [&](int a) { return v(a, 2) * v(a) + (v(a, 1) * v(a, 1)).scaled(q(1, 2)); };
    CHECK(hs4.equations[0] == pair(1, 4) + self(2) + self(3));
    CHECK(hs4.equations[1] == pair(4, 2));
    CHECK(hs4.equations[2] == pair(4, 3));
    CHECK(hs4.equations[3] == self(4));

    for (int k = 1; k <= 4; ++k) CHECK(hs_matrix_form(k).ok);
    CHECK_THROWS_AS(hs_matrix_form(builtin_algebra("example4d")), Error);
    CHECK_THROWS_AS(hs_matrix_form(0), Error);
    FrobeniusTriple z{1, Tensor3(1), RMatrix::identity(1), RMatrix::identity(1)};
    try {
        hs_equation(z);
        FAIL("expected NoUnity");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoUnity);
    }
}

TEST_CASE("cbar is symmetric") {
    for (const auto& name : builtin_names()) {
        auto s = hs_equation(builtin_algebra(name));
        for (int a = 0; a < s.n; ++a)
            for (int p = 0; p < s.n; ++p)
                for (int r = 0; r < s.n; ++r) CHECK(s.cbar(a, p, r) == s.cbar(a, r, p));
    }
}
