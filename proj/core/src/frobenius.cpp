#include "darboux/frobenius.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace darboux {

bool Tensor3::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

namespace {

std::string tuple_text(std::initializer_list<int> idx) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (int i : idx) {
        if (!first) os << ',';
        os << i;
        first = false;
    }
    os << ')';
    return os.str();
}

void check_shapes(const FrobeniusTriple& t) {
    int n = t.n;
    if (n < 0 || t.a.n() != n || t.b.rows() != n || t.b.cols() != n || t.h.rows() != n || t.h.cols() != n) {
        throw Error(ErrorKind::DimensionMismatch, "triple components disagree on the dimension");
    }
}

void check_form(const FrobeniusTriple& t, const RMatrix& form, const std::string& name, TripleReport& report) {
    int n = t.n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            if (form(i, j) != form(j, i)) {
                report.failures.push_back({name + "-symmetry", {i + 1, j + 1}, name + " is not symmetric"});
            }
        }
    }
    // a^{ab}_q f^{qg} = a^{gb}_q f^{qa}; the identity is antisymmetric in (a, g)
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            for (int ga = 0; ga < al; ++ga) {
                Rational lhs(0);
                Rational rhs(0);
                for (int q = 0; q < n; ++q) {
                    lhs += t.a(al, be, q) * form(q, ga);
                    rhs += t.a(ga, be, q) * form(q, al);
                }
                if (lhs != rhs) {
                    report.failures.push_back({name + "-invariance", {al + 1, be + 1, ga + 1},
                                               "a^{ab}_q " + name + "^{qg} = " + to_string(lhs) + " but a^{gb}_q " +
                                                   name + "^{qa} = " + to_string(rhs)});
                }
            }
        }
    }
    if (sgn(determinant(form)) == 0) report.failures.push_back({name + "-nondegeneracy", {}, "det " + name + " = 0"});
}

Rational half() { return Rational(1, 2); }

} // namespace

TripleReport check_triple(const FrobeniusTriple& t) {
    check_shapes(t);
    TripleReport report;
    int n = t.n;
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < al; ++be) {
            for (int s = 0; s < n; ++s) {
                if (t.a(al, be, s) != t.a(be, al, s)) {
                    report.failures.push_back({"commutativity", {al + 1, be + 1, s + 1},
                                               "a^{ab}_s = " + to_string(t.a(al, be, s)) + " but a^{ba}_s = " +
                                                   to_string(t.a(be, al, s))});
                }
            }
        }
    }
    // a^{ab}_q a^{qg}_s = a^{gb}_q a^{qa}_s, antisymmetric in (a, g)
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            for (int ga = 0; ga < al; ++ga) {
                for (int s = 0; s < n; ++s) {
                    Rational lhs(0);
                    Rational rhs(0);
                    for (int q = 0; q < n; ++q) {
                        lhs += t.a(al, be, q) * t.a(q, ga, s);
                        rhs += t.a(ga, be, q) * t.a(q, al, s);
                    }
                    if (lhs != rhs) {
                        report.failures.push_back({"associativity", {al + 1, be + 1, ga + 1, s + 1},
                                                   to_string(lhs) + " != " + to_string(rhs)});
                    }
                }
            }
        }
    }
    check_form(t, t.b, "b", report);
    check_form(t, t.h, "h", report);
    return report;
}

std::optional<std::vector<Rational>> unity(const Tensor3& a) {
    int n = a.n();
    if (n == 0) return std::vector<Rational>{};
    RMatrix sys(n * n, n);
    std::vector<Rational> rhs(static_cast<std::size_t>(n * n), Rational(0));
    for (int al = 0; al < n; ++al) {
        for (int s = 0; s < n; ++s) {
            for (int q = 0; q < n; ++q) sys(al * n + s, q) = a(al, q, s);
            if (al == s) rhs[static_cast<std::size_t>(al * n + s)] = 1;
        }
    }
    bool unique = false;
    auto e = solve_linear(sys, rhs, &unique);
    if (!e || !unique) return std::nullopt;
    return e;
}

RMatrix rational_inverse(const RMatrix& m, ErrorKind on_singular, const std::string& what) {
    auto inv = inverse(m);
    if (!inv) throw Error(on_singular, what + " is singular");
    return *inv;
}

DualAlgebra dual_algebra(const FrobeniusTriple& t) {
    check_shapes(t);
    int n = t.n;
    RMatrix blow = rational_inverse(t.b, ErrorKind::SingularForm, "b");
    DualAlgebra d;
    d.c = Tensor3(n);
    for (int be = 0; be < n; ++be) {
        for (int p = 0; p < n; ++p) {
            for (int s = 0; s < n; ++s) {
                Rational v(0);
                for (int q = 0; q < n; ++q) v += blow(p, q) * t.a(q, be, s);
                d.c(be, p, s) = half() * v;
            }
        }
    }
    for (int be = 0; be < n; ++be) {
        for (int p = 0; p < n; ++p) {
            for (int s = 0; s < p; ++s) {
                if (d.c(be, p, s) != d.c(be, s, p)) {
                    throw Error(ErrorKind::NotCommutative, "dual structure constants at " + tuple_text({be + 1, p + 1, s + 1}));
                }
            }
            for (int s = 0; s < n; ++s) {
                for (int r = 0; r < n; ++r) {
                    Rational lhs(0);
                    Rational rhs(0);
                    for (int q = 0; q < n; ++q) {
                        lhs += d.c(be, s, q) * d.c(q, p, r);
                        rhs += d.c(q, s, p) * d.c(be, q, r);
                    }
                    if (lhs != rhs) {
                        throw Error(ErrorKind::NotAssociative,
                                    "dual structure constants at " + tuple_text({be + 1, p + 1, s + 1, r + 1}));
                    }
                }
            }
        }
    }
    if (auto e = unity(t.a)) {
        std::vector<Rational> f(static_cast<std::size_t>(n), Rational(0));
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) f[p] += 2 * t.b(p, q) * (*e)[q];
        }
        d.f = f;
    }
    return d;
}

RMatrix r_matrix(const FrobeniusTriple& t) {
    check_shapes(t);
    RMatrix blow = rational_inverse(t.b, ErrorKind::SingularForm, "b");
    return (t.h * blow).scaled(half());
}

Rational binomial_half(const Rational& alpha, int i) {
    Rational r(1);
    for (int k = 0; k < i; ++k) r = r * (alpha - k) / (k + 1);
    return r;
}

// ---------------------------------------------------------------------------
// square roots

namespace {

using GPoly = std::vector<Gaussian>;  // coefficients from t^0 upwards

GPoly char_poly(const GMatrix& b) {
    int m = b.rows();
    GPoly c(static_cast<std::size_t>(m + 1), Gaussian(0));
    c[m] = 1;
    GMatrix mk(m, m);
    for (int k = 1; k <= m; ++k) {
        mk = b * mk;
        for (int i = 0; i < m; ++i) mk(i, i) = mk(i, i) + c[m - k + 1];
        c[m - k] = -trace(b * mk) / Gaussian(k);
    }
    return c;
}

Gaussian eval(const GPoly& p, const Gaussian& x) {
    Gaussian r(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

GPoly deflate(const GPoly& p, const Gaussian& root) {
    int d = static_cast<int>(p.size()) - 1;
    GPoly q(static_cast<std::size_t>(d), Gaussian(0));
    Gaussian carry(0);
    for (int k = d; k >= 1; --k) {
        carry = carry * root + p[k];
        q[k - 1] = carry;
    }
    return q;
}

std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> ds{Integer(1)};
    for (const auto& [p, mult] : factor_integer(n)) {
        std::size_t cur = ds.size();
        Integer pk = 1;
        for (long e = 1; e <= mult; ++e) {
            pk *= p;
            for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
        }
    }
    return ds;
}

std::optional<Gaussian> rational_root(const GPoly& p) {
    for (const auto& c : p) {
        if (!c.is_real()) return std::nullopt;
    }
    if (p[0].is_zero()) return Gaussian(0);
    Integer l = 1;
    for (const auto& c : p) l = lcm(l, c.re().get_den());
    Integer lead = Rational(p.back().re() * l).get_num();
    Integer tail = Rational(p.front().re() * l).get_num();
    for (const auto& num : divisors(abs(tail))) {
        for (const auto& den : divisors(abs(lead))) {
            for (int sign : {1, -1}) {
                Rational cand(num * sign, den);
                cand.canonicalize();
                if (eval(p, Gaussian(cand)).is_zero()) return Gaussian(cand);
            }
        }
    }
    return std::nullopt;
}

// Distinct roots of p in Q(i).
std::vector<Gaussian> split(GPoly p) {
    std::vector<Gaussian> roots;
    auto add = [&](const Gaussian& r) {
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    };
    while (p.size() > 1) {
        int d = static_cast<int>(p.size()) - 1;
        if (d == 1) {
            add(-p[0] / p[1]);
            break;
        }
        if (d == 2) {
            Gaussian disc = p[1] * p[1] - Gaussian(4) * p[2] * p[0];
            Gaussian s;
            if (!exact_sqrt(disc, s)) throw Error(ErrorKind::UnsupportedSpectrum, "eigenvalues outside Q(i)");
            add((-p[1] + s) / (Gaussian(2) * p[2]));
            add((-p[1] - s) / (Gaussian(2) * p[2]));
            break;
        }
        auto r = rational_root(p);
        if (!r) throw Error(ErrorKind::UnsupportedSpectrum, "characteristic polynomial does not split over Q(i)");
        add(*r);
        p = deflate(p, *r);
    }
    return roots;
}

SMatrix to_field(const GMatrix& g) {
    return g.map([](const Gaussian& x) { return ScalarField(x); });
}

bool constant_matrix(const SMatrix& m, GMatrix* out) {
    GMatrix g(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            const ScalarField& x = m(i, j);
            if (x.is_zero()) continue;
            if (!x.is_polynomial() || !x.numerator().is_constant()) return false;
            const auto& terms = x.numerator().terms();
            if (terms.size() != 1 || !terms.begin()->first.empty()) return false;
            g(i, j) = terms.begin()->second;
        }
    }
    if (out != nullptr) *out = g;
    return true;
}

// Lagrange interpolation of square roots on a diagonalizable constant block.
SMatrix diagonalizable_root(const GMatrix& b) {
    int m = b.rows();
    auto spectrum = split(char_poly(b));
    GMatrix prod = GMatrix::identity(m);
    for (const auto& lam : spectrum) {
        if (lam.is_zero()) throw Error(ErrorKind::Singular, "zero eigenvalue");
        prod = prod * (b - GMatrix::identity(m).scaled(lam));
    }
    if (!prod.is_zero()) throw Error(ErrorKind::UnsupportedSpectrum, "block is neither nilpotent-shifted nor diagonalizable");
    SMatrix l(m, m);
    SMatrix bf = to_field(b);
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        SMatrix term = SMatrix::identity(m).scaled(root(ScalarField(spectrum[j]), 2));
        for (std::size_t k = 0; k < spectrum.size(); ++k) {
            if (k == j) continue;
            ScalarField w = ScalarField(Gaussian(1) / (spectrum[j] - spectrum[k]));
            term = term * (bf - SMatrix::identity(m).scaled(ScalarField(spectrum[k]))).scaled(w);
        }
        l = l + term;
    }
    return l;
}

SMatrix block_root(const SMatrix& b) {
    int m = b.rows();
    ScalarField lam = (trace(b) / ScalarField(static_cast<long>(m))).simplified();
    SMatrix nil = b - SMatrix::identity(m).scaled(lam);
    if (matrix_power(nil, m).map([](const ScalarField& x) { return x.simplified(); }).is_zero()) {
        if (lam.is_zero()) throw Error(ErrorKind::Singular, "nilpotent block");
        ScalarField sq = root(lam, 2);
        SMatrix t = nil.scaled(lam.inv());
        SMatrix term = SMatrix::identity(m);
        SMatrix l(m, m);
        for (int i = 0; i < m; ++i) {
            l = l + term.scaled(ScalarField(binomial_half(half(), i)));
            term = term * t;
        }
        return l.scaled(sq).map([](const ScalarField& x) { return x.simplified(); });
    }
    GMatrix g;
    if (!constant_matrix(b, &g)) {
        throw Error(ErrorKind::UnsupportedSpectrum, "non-constant block is not a multiple of unipotent");
    }
    return diagonalizable_root(g);
}

// Connected components of the sparsity graph.
std::vector<std::vector<int>> blocks_of(const SMatrix& r) {
    int n = r.rows();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && !r(i, j).is_zero()) parent[find(i)] = find(j);
        }
    }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        int root_i = find(i);
        if (slot[root_i] < 0) {
            slot[root_i] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[root_i]].push_back(i);
    }
    return out;
}

} // namespace

GoodRoot good_sqrt(const SMatrix& r, int branch) {
    if (!r.square()) throw Error(ErrorKind::DimensionMismatch, "good_sqrt needs a square matrix");
    if (branch != 1 && branch != -1) throw Error(ErrorKind::Domain, "branch must be +1 or -1");
    int n = r.rows();
    if (determinant(r).simplified().is_zero()) throw Error(ErrorKind::Singular, "det R = 0");

    SMatrix l(n, n);
    for (const auto& idx : blocks_of(r)) {
        int m = static_cast<int>(idx.size());
        SMatrix b(m, m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) b(i, j) = r(idx[i], idx[j]);
        }
        SMatrix lb = block_root(b);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) l(idx[i], idx[j]) = lb(i, j);
        }
    }

    // p from the Krylov system sum_k p_k R^k = L
    SMatrix sys(n * n, n);
    std::vector<ScalarField> rhs(static_cast<std::size_t>(n * n));
    SMatrix power = SMatrix::identity(n);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) sys(i * n + j, k) = power(i, j);
        }
        power = power * r;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) rhs[static_cast<std::size_t>(i * n + j)] = l(i, j);
    }
    auto p = solve_linear(sys, rhs);
    if (!p) throw Error(ErrorKind::UnsupportedSpectrum, "square root is not a polynomial in R");

    GoodRoot out;
    out.L = l.scaled(ScalarField(static_cast<long>(branch)));
    for (auto& c : *p) out.p.push_back((c * ScalarField(static_cast<long>(branch))).simplified());

    if (!(out.L * out.L == r)) throw Error(ErrorKind::UnsupportedSpectrum, "L^2 = R verification failed");
    SMatrix pr(n, n);
    power = SMatrix::identity(n);
    for (const auto& c : out.p) {
        pr = pr + power.scaled(c);
        power = power * r;
    }
    if (!(pr == out.L)) throw Error(ErrorKind::UnsupportedSpectrum, "L = p(R) verification failed");
    return out;
}

GoodRoot good_sqrt(const GMatrix& r, int branch) { return good_sqrt(to_field(r), branch); }

// ---------------------------------------------------------------------------
// built-in triples

namespace {

FrobeniusTriple empty_triple(int n) {
    FrobeniusTriple t;
    t.n = n;
    t.a = Tensor3(n);
    t.b = RMatrix(n, n);
    t.h = RMatrix(n, n);
    return t;
}

// t_n in the basis where the dual constants c take the t_n table.
FrobeniusTriple tn_dual_basis(int n) {
    FrobeniusTriple t = empty_triple(n);
    for (int al = 1; al <= n; ++al) {
        for (int be = 1; be <= n; ++be) {
            int s = al + be - n;
            if (s >= 1) t.a(al - 1, be - 1, s - 1) = 1;
            if (al + be == n + 1) t.h(al - 1, be - 1) = 1;
        }
    }
    t.b = t.h.scaled(half());
    return t;
}

FrobeniusTriple example4d() {
    FrobeniusTriple t = empty_triple(4);
    for (int i = 0; i < 4; ++i) {
        t.a(0, i, i) = 1;
        t.a(i, 0, i) = 1;
    }
    t.a(1, 1, 3) = 1;
    t.a(2, 2, 3) = 1;
    for (int al = 0; al < 4; ++al) {
        for (int be = 0; be < 4; ++be) t.h(al, be) = t.a(al, be, 3);
    }
    t.b = t.h.scaled(half());
    return t;
}

} // namespace

FrobeniusTriple tn_defining(int n) {
    if (n < 1) throw Error(ErrorKind::Domain, "t_n needs n >= 1");
    FrobeniusTriple t = empty_triple(n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            int k = i + j - 1;
            if (k <= n) t.a(i - 1, j - 1, k - 1) = 1;
            // h^{ij} = a^{ij}_n, the contraction against the top dual vector
            if (i + j == n + 1) t.h(i - 1, j - 1) = 1;
        }
    }
    t.b = t.h.scaled(half());
    return t;
}

FrobeniusTriple builtin_algebra(const std::string& name) {
    if (name == "example4d") return example4d();
    std::string digits;
    if (name.size() >= 2 && name[0] == 't') {
        digits = name.substr(1);
        if (!digits.empty() && digits.front() == '_') digits = digits.substr(1);
        if (digits.size() >= 2 && digits.front() == '(' && digits.back() == ')') digits = digits.substr(1, digits.size() - 2);
    }
    if (!digits.empty() && digits.size() <= 2 && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        int n = std::stoi(digits);
        if (n >= 1) return tn_dual_basis(n);
    }
    throw Error(ErrorKind::UnknownName, "no built-in algebra named '" + name + "'");
}

std::vector<std::string> builtin_names() { return {"t1", "t2", "t3", "t4", "example4d"}; }

FrobeniusTriple direct_sum(const FrobeniusTriple& x, const FrobeniusTriple& y) {
    check_shapes(x);
    check_shapes(y);
    int n = x.n + y.n;
    FrobeniusTriple t = empty_triple(n);
    auto place = [&](const FrobeniusTriple& part, int off) {
        for (int i = 0; i < part.n; ++i) {
            for (int j = 0; j < part.n; ++j) {
                t.b(off + i, off + j) = part.b(i, j);
                t.h(off + i, off + j) = part.h(i, j);
                for (int k = 0; k < part.n; ++k) t.a(off + i, off + j, off + k) = part.a(i, j, k);
            }
        }
    };
    place(x, 0);
    place(y, x.n);
    return t;
}

FrobeniusTriple transform(const FrobeniusTriple& t, const RMatrix& m) {
    check_shapes(t);
    int n = t.n;
    if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::DimensionMismatch, "transformation matrix shape");
    RMatrix mi = rational_inverse(m, ErrorKind::Singular, "transformation matrix");
    FrobeniusTriple out = empty_triple(n);
    out.b = m * t.b * m.transposed();
    out.h = m * t.h * m.transposed();
    // first push the upper indices, then pull the lower one
    Tensor3 tmp(n);
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            for (int r = 0; r < n; ++r) {
                Rational v(0);
                for (int p = 0; p < n; ++p) {
                    if (sgn(m(al, p)) == 0) continue;
                    for (int q = 0; q < n; ++q) v += m(al, p) * m(be, q) * t.a(p, q, r);
                }
                tmp(al, be, r) = v;
            }
        }
    }
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            for (int s = 0; s < n; ++s) {
                Rational v(0);
                for (int r = 0; r < n; ++r) v += tmp(al, be, r) * mi(r, s);
                out.a(al, be, s) = v;
            }
        }
    }
    return out;
}

bool intertwines(const Tensor3& c, const SMatrix& m) {
    int n = c.n();
    if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::DimensionMismatch, "intertwiner shape");
    for (int be = 0; be < n; ++be) {
        for (int p = 0; p < n; ++p) {
            for (int s = 0; s < n; ++s) {
                ScalarField x;
                ScalarField y;
                ScalarField z;
                for (int r = 0; r < n; ++r) {
                    x += m(be, r) * ScalarField(c(r, p, s));
                    y += ScalarField(c(be, p, r)) * m(r, s);
                    z += m(r, p) * ScalarField(c(be, r, s));
                }
                if (x != y || y != z) return false;
            }
        }
    }
    return true;
}

bool forms_are_exact(const FrobeniusTriple& t) {
    check_shapes(t);
    auto e = unity(t.a);
    if (!e) return false;
    int n = t.n;
    for (const RMatrix* form : {&t.b, &t.h}) {
        std::vector<Rational> mv(static_cast<std::size_t>(n), Rational(0));
        for (int s = 0; s < n; ++s) {
            for (int q = 0; q < n; ++q) mv[s] += (*form)(q, s) * (*e)[q];
        }
        for (int al = 0; al < n; ++al) {
            for (int be = 0; be < n; ++be) {
                Rational v(0);
                for (int s = 0; s < n; ++s) v += t.a(al, be, s) * mv[s];
                if (v != (*form)(al, be)) return false;
            }
        }
    }
    return true;
}

} // namespace darboux
