#include "darboux/classify2d.hpp"

#include <algorithm>

namespace darboux {

namespace {

using Vec = std::vector<ScalarField>;

SMatrix lift(const RMatrix& m) {
    return m.map([](const Rational& x) { return ScalarField(x); });
}

ScalarField half(const ScalarField& x) { return x * ScalarField(Rational(1, 2)); }

double real_value(const ScalarField& x) { return x.to_complex().real(); }

// Exact zero test first, the sign of a real constant numerically after.
int sign_of(const ScalarField& x) {
    if (x.simplified().is_zero()) return 0;
    return real_value(x) > 0 ? 1 : -1;
}

bool less(const ScalarField& x, const ScalarField& y) { return sign_of(y - x) > 0; }

ScalarField sqrt_abs(const ScalarField& x) {
    ScalarField v = sign_of(x) < 0 ? -x : x;
    return root(v, 2);
}

Vec product(const Tensor3& a, const Vec& x, const Vec& y) {
    Vec out(2);
    for (int s = 0; s < 2; ++s) {
        ScalarField v;
        for (int al = 0; al < 2; ++al) {
            for (int be = 0; be < 2; ++be) {
                if (sgn(a(al, be, s)) != 0 && !x[al].is_zero() && !y[be].is_zero()) {
                    v += x[al] * y[be] * ScalarField(a(al, be, s));
                }
            }
        }
        out[s] = v.simplified();
    }
    return out;
}

Vec rvec(const std::vector<Rational>& v) {
    Vec out;
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

Vec combine(const ScalarField& p, const Vec& x, const ScalarField& q, const Vec& y) {
    return {(p * x[0] + q * y[0]).simplified(), (p * x[1] + q * y[1]).simplified()};
}

bool is_zero(const Vec& v) { return v[0].is_zero() && v[1].is_zero(); }

SMatrix rows(const Vec& r1, const Vec& r2) {
    SMatrix m(2, 2);
    m(0, 0) = r1[0];
    m(0, 1) = r1[1];
    m(1, 0) = r2[0];
    m(1, 1) = r2[1];
    return m;
}

SMatrix simplified(const SMatrix& m) {
    return m.map([](const ScalarField& x) { return x.simplified(); });
}

SMatrix congruence(const SMatrix& m, const SMatrix& form) { return simplified(m * form * m.transposed()); }

ScalarField form(const SMatrix& g, const Vec& x, const Vec& y) {
    ScalarField v;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (!g(i, j).is_zero()) v += x[i] * g(i, j) * y[j];
        }
    }
    return v.simplified();
}

// x T for a row vector x
Vec row_times(const Vec& x, const SMatrix& t) {
    return {(x[0] * t(0, 0) + x[1] * t(1, 0)).simplified(), (x[0] * t(0, 1) + x[1] * t(1, 1)).simplified()};
}

// Nonzero x with x T = 0 for a singular 2 x 2 matrix T.
Vec left_kernel(const SMatrix& t) {
    Vec x{t(1, 0), -t(0, 0)};
    if (is_zero(x)) x = {t(1, 1), -t(0, 1)};
    if (is_zero(x)) x = {ScalarField(1), ScalarField(0)};
    return x;
}

// x * x = p x + q e
std::pair<ScalarField, ScalarField> square_coordinates(const Tensor3& a, const Vec& x, const Vec& e) {
    Vec sq = product(a, x, x);
    SMatrix m(2, 2);
    for (int i = 0; i < 2; ++i) {
        m(i, 0) = x[i];
        m(i, 1) = e[i];
    }
    auto sol = solve_linear(m, sq);
    if (!sol) throw Error(ErrorKind::Domain, "basis element outside the algebra");
    return {(*sol)[0].simplified(), (*sol)[1].simplified()};
}

Vec basis_vector(int i) {
    Vec v(2, ScalarField(0));
    v[static_cast<std::size_t>(i)] = ScalarField(1);
    return v;
}

// An element whose square is nonzero.
Vec non_annihilated(const Tensor3& a) {
    for (const Vec& x : {basis_vector(0), basis_vector(1), Vec{ScalarField(1), ScalarField(1)}}) {
        if (!is_zero(product(a, x, x))) return x;
    }
    throw Error(ErrorKind::Domain, "every square vanishes");
}

// Element of the unital algebra not proportional to e.
Vec off_unity(const Vec& e) { return e[1].is_zero() ? basis_vector(1) : basis_vector(0); }

Tensor3 structure(AlgebraTag tag) {
    Tensor3 a(2);
    switch (tag) {
    case AlgebraTag::a0: break;
    case AlgebraTag::a1: a(1, 1, 1) = 1; break;
    case AlgebraTag::a2: a(1, 1, 0) = 1; break;
    case AlgebraTag::a3:
        a(1, 1, 1) = 1;
        a(0, 1, 0) = a(1, 0, 0) = 1;
        break;
    case AlgebraTag::a4:
        a(0, 0, 0) = 1;
        a(1, 1, 1) = 1;
        break;
    case AlgebraTag::a5:
        a(1, 1, 1) = 1;
        a(0, 0, 1) = -1;
        a(0, 1, 0) = a(1, 0, 0) = 1;
        break;
    }
    return a;
}

struct FamilyInfo {
    const char* name;
    AlgebraTag tag;
    std::vector<std::string> params;
};

const std::vector<FamilyInfo>& families() {
    static const std::vector<FamilyInfo> list{
        {"01", AlgebraTag::a0, {"h1", "h2"}},
        {"02", AlgebraTag::a0, {"h1", "h2"}},
        {"03", AlgebraTag::a0, {"h1", "h2"}},
        {"04", AlgebraTag::a0, {"h1"}},
        {"05", AlgebraTag::a0, {"h1", "h2"}},
        {"11", AlgebraTag::a1, {"h1", "h2", "b2"}},
        {"12", AlgebraTag::a1, {"h1", "h2", "b2"}},
        {"21", AlgebraTag::a2, {"h1", "h2"}},
        {"31", AlgebraTag::a3, {"h1", "h2", "b2"}},
        {"41", AlgebraTag::a4, {"h1", "h2", "b1", "b2"}},
        {"51", AlgebraTag::a5, {"h1", "h2", "b1", "b2"}},
    };
    return list;
}

const FamilyInfo& family_info(const std::string& name) {
    for (const auto& f : families()) {
        if (name == f.name) return f;
    }
    throw Error(ErrorKind::UnknownName, "no normal form family " + name);
}

SMatrix sym(const ScalarField& x11, const ScalarField& x12, const ScalarField& x22) {
    SMatrix m(2, 2);
    m(0, 0) = x11;
    m(0, 1) = m(1, 0) = x12;
    m(1, 1) = x22;
    return m;
}

NormalForm2D with_params(const std::string& family, const std::vector<ScalarField>& values) {
    const FamilyInfo& f = family_info(family);
    if (values.size() != f.params.size()) {
        throw Error(ErrorKind::Domain, "family " + family + " takes " + std::to_string(f.params.size()) + " parameters");
    }
    NormalForm2D nf;
    nf.family = family;
    nf.algebra = f.tag;
    for (std::size_t i = 0; i < values.size(); ++i) nf.params.emplace_back(f.params[i], values[i].simplified());
    nf.transform = FieldAffineMap::lift(AffineMap::identity(2));
    return nf;
}

void throw_for(const TripleFailure& f) {
    if (f.condition == "commutativity") throw Error(ErrorKind::NotCommutative, f.detail);
    if (f.condition == "associativity") throw Error(ErrorKind::NotAssociative, f.detail);
    if (f.condition.find("nondegeneracy") != std::string::npos) throw Error(ErrorKind::Degenerate, f.condition);
    throw Error(ErrorKind::Domain, "not a Frobenius triple: " + f.condition + " " + f.detail);
}

} // namespace

std::string to_string(AlgebraTag tag) {
    static const char* names[] = {"a0", "a1", "a2", "a3", "a4", "a5"};
    return names[static_cast<int>(tag)];
}

AlgebraTag identify_algebra(const Tensor3& a) {
    if (a.n() != 2) throw Error(ErrorKind::DimensionMismatch, "identify_algebra needs dimension two");
    FrobeniusTriple probe{2, a, RMatrix::identity(2), RMatrix::identity(2)};
    for (const auto& f : check_triple(probe).failures) {
        if (f.condition == "commutativity" || f.condition == "associativity") throw_for(f);
    }
    if (a.is_zero()) return AlgebraTag::a0;
    auto e = unity(a);
    if (!e) {
        // nilpotent iff (x y) z = 0 for all basis elements
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                Vec xy = product(a, basis_vector(i), basis_vector(j));
                for (int k = 0; k < 2; ++k) {
                    if (!is_zero(product(a, xy, basis_vector(k)))) return AlgebraTag::a1;
                }
            }
        }
        return AlgebraTag::a2;
    }
    Vec ev = rvec(*e);
    auto [p, q] = square_coordinates(a, off_unity(ev), ev);
    int d = sign_of(p * p + ScalarField(4) * q);
    return d > 0 ? AlgebraTag::a4 : d == 0 ? AlgebraTag::a3 : AlgebraTag::a5;
}

const ScalarField& NormalForm2D::param(const std::string& name) const {
    for (const auto& [k, v] : params) {
        if (k == name) return v;
    }
    throw Error(ErrorKind::Domain, "family " + family + " has no parameter " + name);
}

std::vector<std::string> family_names() {
    std::vector<std::string> out;
    for (const auto& f : families()) out.emplace_back(f.name);
    return out;
}

std::vector<std::string> family_parameters(const std::string& family) { return family_info(family).params; }

AlgebraTag family_algebra(const std::string& family) { return family_info(family).tag; }

FieldTriple canonical_triple(const NormalForm2D& nf) {
    auto P = [&](const char* name) { return nf.param(name); };
    ScalarField zero(0), one(1);
    FieldTriple t{structure(nf.algebra), SMatrix(2, 2), SMatrix(2, 2)};
    const std::string& f = nf.family;
    if (f == "01" || f == "02" || f == "03") {
        ScalarField g11 = f == "01" ? one : -one;
        ScalarField g22 = f == "03" ? -one : one;
        t.b = sym(half(g11), zero, half(g22));
        t.h = sym(P("h1"), zero, P("h2"));
    } else if (f == "04") {
        t.b = sym(zero, half(one), zero);
        t.h = sym(zero, P("h1"), one);
    } else if (f == "05") {
        t.b = sym(zero, half(one), zero);
        t.h = sym(-P("h2"), P("h1"), P("h2"));
    } else if (f == "11" || f == "12") {
        t.b = sym(f == "11" ? one : -one, zero, P("b2"));
        t.h = sym(P("h1"), zero, P("h2"));
    } else if (f == "21") {
        t.b = sym(zero, one, zero);
        t.h = sym(zero, P("h1"), P("h2"));
    } else if (f == "31") {
        t.b = sym(zero, one, P("b2"));
        t.h = sym(zero, P("h1"), P("h2"));
    } else if (f == "41") {
        t.b = sym(P("b1"), zero, P("b2"));
        t.h = sym(P("h1"), zero, P("h2"));
    } else if (f == "51") {
        t.b = sym(-P("b2"), P("b1"), P("b2"));
        t.h = sym(-P("h2"), P("h1"), P("h2"));
    } else {
        throw Error(ErrorKind::UnknownName, "no normal form family " + f);
    }
    return t;
}

NormalForm2D make_normal_form(const std::string& family, const std::vector<ScalarField>& values) {
    NormalForm2D nf = with_params(family, values);
    FieldTriple t = canonical_triple(nf);
    if (determinant(t.h).simplified().is_zero()) throw Error(ErrorKind::Degenerate, "h is singular");
    if (determinant(t.b).simplified().is_zero()) throw Error(ErrorKind::Degenerate, "g is singular at the point");
    if (family == "05" && nf.param("h2").is_zero()) throw Error(ErrorKind::Degenerate, "family 05 needs h2 != 0");
    return nf;
}

bool is_canonical(const NormalForm2D& nf) {
    const std::string& f = nf.family;
    auto P = [&](const char* name) { return nf.param(name); };
    if (f == "01" || f == "03") return !less(P("h2"), P("h1"));
    if (f == "05") return sign_of(P("h2")) > 0;
    if (f == "41") {
        int c = sign_of(P("b2") - P("b1"));
        return c > 0 || (c == 0 && !less(P("h2"), P("h1")));
    }
    if (f == "51") {
        int c = sign_of(P("b1"));
        return c > 0 || (c == 0 && sign_of(P("h1")) >= 0);
    }
    return true;
}

HamiltonianOperator rebuild(const NormalForm2D& nf) {
    FieldTriple t = canonical_triple(nf);
    HamiltonianOperator p = zero_operator(2, 3);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            p.coeffs[3](i, j) = DiffPoly(t.h(i, j));
            DiffPoly g(t.b(i, j));
            DiffPoly ux;
            for (int s = 0; s < 2; ++s) {
                if (sgn(t.a(i, j, s)) == 0) continue;
                g += DiffPoly::jet(s + 1).scaled(ScalarField(t.a(i, j, s)));
                ux += DiffPoly::jet(s + 1, 1).scaled(ScalarField(t.a(i, j, s)));
            }
            p.coeffs[1](i, j) = g.scaled(ScalarField(2)).simplified();
            p.coeffs[0](i, j) = ux;
        }
    }
    return p;
}

FieldTriple transform_field(const FrobeniusTriple& t, const FieldAffineMap& map) {
    int n = t.n;
    const SMatrix& m = map.M;
    auto mi_opt = inverse(m);
    if (!mi_opt) throw Error(ErrorKind::Singular, "transformation matrix");
    SMatrix mi = simplified(*mi_opt);
    FieldTriple out{Tensor3(n), congruence(m, lift(t.b)), congruence(m, lift(t.h))};
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            for (int s = 0; s < n; ++s) {
                ScalarField v;
                for (int p = 0; p < n; ++p) {
                    for (int q = 0; q < n; ++q) {
                        for (int r = 0; r < n; ++r) {
                            if (sgn(t.a(p, q, r)) == 0) continue;
                            v += m(al, p) * m(be, q) * ScalarField(t.a(p, q, r)) * mi(r, s);
                        }
                    }
                }
                Rational value;
                if (!v.simplified().is_rational_constant(&value)) {
                    throw Error(ErrorKind::Domain, "structure constants left the rationals");
                }
                out.a(al, be, s) = value;
            }
        }
    }
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            ScalarField v = out.b(al, be);
            for (int s = 0; s < n; ++s) {
                if (sgn(out.a(al, be, s)) != 0) v -= ScalarField(out.a(al, be, s)) * map.c[s];
            }
            out.b(al, be) = v.simplified();
        }
    }
    return out;
}

namespace {

// Pairs of forms (a = 0).  g = 2b is the matrix in front of D.
std::pair<std::string, SMatrix> classify_pair(const SMatrix& g, const SMatrix& h, std::vector<ScalarField>& params) {
    auto gi = inverse(g);
    if (!gi) throw Error(ErrorKind::Degenerate, "g is singular");
    SMatrix S = simplified(h * *gi);  // h(x, y) = g(x S, y)
    ScalarField tr = (S(0, 0) + S(1, 1)).simplified();
    ScalarField det = (S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0)).simplified();
    ScalarField disc = (tr * tr - ScalarField(4) * det).simplified();
    int ds = sign_of(disc);

    auto unit = [&](const Vec& x) {
        ScalarField n2 = form(g, x, x);
        ScalarField s = sqrt_abs(n2).inv();
        return std::make_pair(Vec{(x[0] * s).simplified(), (x[1] * s).simplified()}, sign_of(n2));
    };
    auto diagonal = [&](Vec x1, int s1, ScalarField l1, Vec x2, int s2, ScalarField l2) -> std::pair<std::string, SMatrix> {
        // h(m, m) = lambda g(m, m) on an eigenrow
        ScalarField h1 = s1 > 0 ? l1 : -l1, h2 = s2 > 0 ? l2 : -l2;
        if (s1 != s2) {
            if (s1 > 0) {
                std::swap(x1, x2);
                std::swap(h1, h2);
            }
            params = {h1, h2};
            return {"02", rows(x1, x2)};
        }
        if (less(h2, h1)) {
            std::swap(x1, x2);
            std::swap(h1, h2);
        }
        params = {h1, h2};
        return {s1 > 0 ? "01" : "03", rows(x1, x2)};
    };

    SMatrix T = S;
    ScalarField lam = half(tr);
    T(0, 0) = (T(0, 0) - lam).simplified();
    T(1, 1) = (T(1, 1) - lam).simplified();
    if (ds == 0 && T.is_zero()) {
        // h = lambda g: any g-orthonormal basis
        Vec e = basis_vector(0);
        if (form(g, e, e).is_zero()) e = basis_vector(1);
        if (form(g, e, e).is_zero()) e = {ScalarField(1), ScalarField(1)};
        Vec ge = row_times(e, g);
        Vec v{-ge[1], ge[0]};
        auto [m1, s1] = unit(e);
        auto [m2, s2] = unit(v);
        return diagonal(m1, s1, lam, m2, s2, lam);
    }
    if (ds > 0) {
        ScalarField sd = root(disc, 2);
        ScalarField l1 = half(tr - sd), l2 = half(tr + sd);
        auto eigenrow = [&](const ScalarField& l) {
            SMatrix t = S;
            t(0, 0) = (t(0, 0) - l).simplified();
            t(1, 1) = (t(1, 1) - l).simplified();
            return left_kernel(t);
        };
        auto [m1, s1] = unit(eigenrow(l1));
        auto [m2, s2] = unit(eigenrow(l2));
        return diagonal(m1, s1, l1.simplified(), m2, s2, l2.simplified());
    }
    if (ds == 0) {
        // N = S - lambda nilpotent; its left kernel is isotropic
        Vec k = left_kernel(T);
        Vec y = row_times(basis_vector(0), T).front().is_zero() && row_times(basis_vector(0), T).back().is_zero()
                    ? basis_vector(1)
                    : basis_vector(0);
        Vec yn = row_times(y, T);
        ScalarField c = (!k[0].is_zero() ? yn[0] / k[0] : yn[1] / k[1]).simplified();
        ScalarField gky = form(g, k, y);
        ScalarField cg = (c * gky).simplified();
        if (sign_of(cg) < 0) {
            throw Error(ErrorKind::Unclassifiable,
                        "Jordan pair with negative sign: g = [[0,1],[1,0]], h = [[0,h1],[h1,-1]] is not in the list");
        }
        ScalarField s = root(cg, 2).inv();
        ScalarField t = (s * gky).inv();
        ScalarField r = (-s * form(g, y, y) / (ScalarField(2) * gky)).simplified();
        Vec m1{(t * k[0]).simplified(), (t * k[1]).simplified()};
        Vec m2 = combine(s, y, r, k);
        params = {lam};
        return {"04", rows(m1, m2)};
    }
    // complex pair h1 +- i h2 with h2 > 0
    ScalarField h2 = half(root(-disc, 2));
    SMatrix N = T.map([&](const ScalarField& x) { return (x / h2).simplified(); });
    // an isotropic row of g
    Vec x;
    if (g(0, 0).is_zero()) {
        x = basis_vector(0);
    } else {
        // g11 x1^2 + 2 g12 x1 x2 + g22 x2^2 = 0 with x2 = 1
        ScalarField rd = root((g(0, 1) * g(0, 1) - g(0, 0) * g(1, 1)).simplified(), 2);
        x = {((-g(0, 1) + rd) / g(0, 0)).simplified(), ScalarField(1)};
    }
    ScalarField w = form(g, row_times(x, N), x);
    if (sign_of(w) > 0) {
        x = row_times(x, N);
        w = form(g, row_times(x, N), x);
    }
    ScalarField s = root(-w, 2).inv();
    Vec m1{(x[0] * s).simplified(), (x[1] * s).simplified()};
    Vec mn = row_times(m1, N);
    Vec m2{(-mn[0]).simplified(), (-mn[1]).simplified()};
    params = {lam, h2.simplified()};
    return {"05", rows(m1, m2)};
}

// Basis of the algebra in which a has the listed structure relations.
SMatrix algebra_basis(AlgebraTag tag, const Tensor3& a) {
    switch (tag) {
    case AlgebraTag::a0: return SMatrix::identity(2);
    case AlgebraTag::a1: {
        Vec x = non_annihilated(a);
        Vec w = product(a, x, x);
        Vec ww = product(a, w, w);
        ScalarField kappa = (!w[0].is_zero() ? ww[0] / w[0] : ww[1] / w[1]).simplified();
        Vec e{(w[0] / kappa).simplified(), (w[1] / kappa).simplified()};
        // the annihilator is the kernel of y -> y * e and of y -> y * x
        Vec n;
        for (const Vec& y : {basis_vector(0), basis_vector(1)}) {
            Vec ye = product(a, y, e);
            Vec cand = combine(ScalarField(1), y, ScalarField(-1), ye);
            if (!is_zero(cand)) {
                n = cand;
                break;
            }
        }
        return rows(n, e);
    }
    case AlgebraTag::a2: {
        Vec x = non_annihilated(a);
        return rows(product(a, x, x), x);
    }
    default: break;
    }
    Vec e = rvec(*unity(a));
    Vec x = off_unity(e);
    auto [p, q] = square_coordinates(a, x, e);
    ScalarField hp = half(p);
    Vec centered = combine(ScalarField(1), x, -hp, e);
    if (tag == AlgebraTag::a3) return rows(centered, e);
    ScalarField disc = (p * p + ScalarField(4) * q).simplified();
    if (tag == AlgebraTag::a4) {
        ScalarField sd = root(disc, 2);
        ScalarField tm = half(p - sd), tp = half(p + sd);
        Vec e1 = combine(sd.inv(), x, (-tm / sd).simplified(), e);
        Vec e2 = combine((-sd).inv(), x, (tp / sd).simplified(), e);
        return rows(e1, e2);
    }
    ScalarField s = half(root((-disc).simplified(), 2));
    Vec j = combine(s.inv(), centered, ScalarField(0), e);
    return rows(j, e);
}

// Residual change inside the algebra basis normalizing b; fills the family.
SMatrix residual(AlgebraTag tag, const FieldTriple& t, std::string& family) {
    const SMatrix& b = t.b;
    const SMatrix& h = t.h;
    SMatrix id = SMatrix::identity(2);
    switch (tag) {
    case AlgebraTag::a1: {
        int s = sign_of(b(0, 0));
        if (s == 0) throw Error(ErrorKind::Degenerate, "g is singular at the point");
        family = s > 0 ? "11" : "12";
        SMatrix m = id;
        m(0, 0) = sqrt_abs(b(0, 0)).inv();
        return m;
    }
    case AlgebraTag::a2: {
        ScalarField x = b(0, 1);
        if (x.is_zero()) throw Error(ErrorKind::Degenerate, "g is singular at the point");
        ScalarField al = root(x, 3).inv();
        ScalarField be = (-al * b(1, 1) / (ScalarField(2) * x)).simplified();
        family = "21";
        SMatrix m(2, 2);
        m(0, 0) = (al * al).simplified();
        m(1, 0) = be;
        m(1, 1) = al;
        return m;
    }
    case AlgebraTag::a3: {
        if (b(0, 1).is_zero()) throw Error(ErrorKind::Degenerate, "g is singular at the point");
        family = "31";
        SMatrix m = id;
        m(0, 0) = b(0, 1).inv();
        return m;
    }
    case AlgebraTag::a4: {
        family = "41";
        int c = sign_of(b(1, 1) - b(0, 0));
        bool swap = c < 0 || (c == 0 && less(h(1, 1), h(0, 0)));
        if (!swap) return id;
        SMatrix m(2, 2);
        m(0, 1) = m(1, 0) = ScalarField(1);
        return m;
    }
    case AlgebraTag::a5: {
        family = "51";
        int c = sign_of(b(0, 1));
        bool flip = c < 0 || (c == 0 && sign_of(h(0, 1)) < 0);
        SMatrix m = id;
        if (flip) m(0, 0) = ScalarField(-1);
        return m;
    }
    default: break;
    }
    return id;
}

std::vector<ScalarField> read_params(const std::string& family, const FieldTriple& t) {
    std::vector<ScalarField> out;
    for (const auto& name : family_parameters(family)) {
        if (name == "h1") {
            out.push_back(family == "11" || family == "12" || family == "41" || family <= "03" ? t.h(0, 0) : t.h(0, 1));
        } else if (name == "h2") {
            out.push_back(t.h(1, 1));
        } else if (name == "b1") {
            out.push_back(family == "41" ? t.b(0, 0) : t.b(0, 1));
        } else {
            out.push_back(t.b(1, 1));
        }
    }
    return out;
}

bool same(const SMatrix& x, const SMatrix& y) {
    for (int i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < x.cols(); ++j) {
            if ((x(i, j) - y(i, j)).simplified() != ScalarField(0)) return false;
        }
    }
    return true;
}

} // namespace

NormalForm2D normalize(const FrobeniusTriple& t, const std::vector<Rational>& point) {
    if (t.n != 2) throw Error(ErrorKind::DimensionMismatch, "classification is two-dimensional");
    std::vector<Rational> p = point.empty() ? std::vector<Rational>(2, Rational(0)) : point;
    if (p.size() != 2) throw Error(ErrorKind::DimensionMismatch, "point must have two coordinates");

    // centered chart: b becomes the value of g/2 at p
    AffineMap center{RMatrix::identity(2), {-p[0], -p[1]}};
    FrobeniusTriple c = transform_triple(t, center);
    for (const auto& f : check_triple(c).failures) throw_for(f);
    AlgebraTag tag = identify_algebra(t.a);

    std::string family;
    std::vector<ScalarField> params;
    SMatrix M;
    if (tag == AlgebraTag::a0) {
        auto [fam, m] = classify_pair(lift(c.b).map([](const ScalarField& x) { return x * ScalarField(2); }), lift(c.h),
                                      params);
        family = fam;
        M = m;
    } else {
        SMatrix m0 = algebra_basis(tag, c.a);
        FieldTriple step = transform_field(c, {m0, {ScalarField(0), ScalarField(0)}});
        if (!(step.a == structure(tag))) throw Error(ErrorKind::Domain, "algebra basis construction failed");
        SMatrix m1 = residual(tag, step, family);
        M = simplified(m1 * m0);
    }
    FieldAffineMap shift = FieldAffineMap::lift(center);
    FieldAffineMap full = shift.then({M, {ScalarField(0), ScalarField(0)}});
    FieldTriple out = transform_field(t, full);
    if (tag != AlgebraTag::a0) params = read_params(family, out);

    NormalForm2D nf = make_normal_form(family, params);
    nf.transform = full;
    FieldTriple expect = canonical_triple(nf);
    if (!(out.a == expect.a) || !same(out.b, expect.b) || !same(out.h, expect.h)) {
        throw Error(ErrorKind::Domain, "normal form verification failed for family " + family);
    }
    return nf;
}

FrobeniusTriple triple_from_operator(const HamiltonianOperator& p) {
    if (p.n != 2 || p.k != 3) throw Error(ErrorKind::DimensionMismatch, "expected a 2 x 2 operator of order 3");
    if (!p.at(2).is_zero()) throw Error(ErrorKind::Domain, "the D^2 coefficient must vanish");
    FrobeniusTriple t{2, Tensor3(2), RMatrix(2, 2), RMatrix(2, 2)};
    SMatrix g(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const DiffPoly& hij = p.at(3)(i, j);
            if (!hij.is_zero() && (hij.terms().size() != 1 || !hij.terms().begin()->first.empty() ||
                                   !hij.degree_zero_part().is_rational_constant(&t.h(i, j)))) {
                throw Error(ErrorKind::Domain, "the leading coefficient must be constant");
            }
            const DiffPoly& gij = p.at(1)(i, j);
            if (!gij.is_zero() && (gij.terms().size() != 1 || !gij.terms().begin()->first.empty())) {
                throw Error(ErrorKind::Domain, "the D coefficient must not contain derivatives");
            }
            g(i, j) = gij.degree_zero_part();
        }
    }
    MetricChart chart = MetricChart::general(g);
    if (chart.kind == ChartKind::General) throw Error(ErrorKind::Domain, "g is not affine");
    t.a = chart.a;
    t.b = chart.b;
    HamiltonianOperator expect = build_A(t);
    if (!(expect.at(0) == p.at(0))) throw Error(ErrorKind::Domain, "the D^0 coefficient must be a u_x");
    return t;
}

NormalForm2D normalize(const HamiltonianOperator& p, const std::vector<Rational>& point) {
    return normalize(triple_from_operator(p), point);
}

} // namespace darboux
