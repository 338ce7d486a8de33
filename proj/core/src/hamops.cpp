#include "darboux/hamops.hpp"

#include <algorithm>
#include <sstream>

namespace darboux {

bool Connection::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const ScalarField& f) { return f.is_zero(); });
}

Connection Connection::simplified() const {
    Connection c = *this;
    for (auto& f : c.data_) f = f.simplified();
    return c;
}

bool operator==(const Connection& a, const Connection& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        if (a.data_[i] != b.data_[i]) return false;
    }
    return true;
}

namespace {

DiffPoly ux(int s, int order = 1) { return DiffPoly::jet(s, order); }

SMatrix lift(const RMatrix& m) {
    return m.map([](const Rational& q) { return ScalarField(q); });
}

DMatrix lift(const SMatrix& m) {
    return m.map([](const ScalarField& f) { return DiffPoly(f); });
}

// Laplace expansion keeps entries polynomial when g is.
ScalarField laplace_det(const SMatrix& m) {
    int n = m.rows();
    if (n == 0) return ScalarField(1);
    if (n == 1) return m(0, 0);
    ScalarField det;
    for (int j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        SMatrix minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            for (int c = 0, cc = 0; c < n; ++c) {
                if (c == j) continue;
                minor(i - 1, cc++) = m(i, c);
            }
        }
        ScalarField term = m(0, j) * laplace_det(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

SMatrix adjugate_inverse(const SMatrix& m, ErrorKind on_singular) {
    int n = m.rows();
    ScalarField det = laplace_det(m).simplified();
    if (det.is_zero()) throw Error(on_singular, "determinant vanishes identically");
    ScalarField inv_det = det.inv();
    SMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            SMatrix minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            ScalarField cof = laplace_det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            out(j, i) = (cof * inv_det).simplified();
        }
    }
    return out;
}

std::optional<Rational> rational_value(const ScalarField& f) {
    Rational q;
    if (f.is_zero()) return Rational(0);
    if (f.is_rational_constant(&q)) return q;
    return std::nullopt;
}

// Reads an entry as c0 + sum_s c_s u^s with rational c.
bool affine_entry(const ScalarField& f, int n, Rational& c0, std::vector<Rational>& lin) {
    c0 = 0;
    lin.assign(static_cast<std::size_t>(n), Rational(0));
    if (f.is_zero()) return true;
    ScalarField s = f.simplified();
    if (!s.is_polynomial()) return false;
    for (const auto& [e, c] : s.numerator().terms()) {
        if (!c.is_real()) return false;
        if (e.empty()) {
            c0 = c.re();
        } else if (e.size() == 1 && e[0].first >= 1 && e[0].first <= n && e[0].second == Exponent(1)) {
            lin[static_cast<std::size_t>(e[0].first - 1)] = c.re();
        } else {
            return false;
        }
    }
    return true;
}

void require_odd(int k) {
    if (k < 1 || k % 2 == 0) throw Error(ErrorKind::UnsupportedOrder, "order must be odd and positive, got " + std::to_string(k));
}

Integer binomial(int k, int j) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
    return r;
}

} // namespace

MetricChart MetricChart::constant(const RMatrix& g) {
    MetricChart c;
    c.g = lift(g);
    c.kind = ChartKind::Constant;
    c.b = g.scaled(Rational(1, 2));
    c.a = Tensor3(g.rows());
    return c;
}

MetricChart MetricChart::affine(const RMatrix& b, const Tensor3& a) {
    int n = b.rows();
    if (a.n() != n || b.cols() != n) throw Error(ErrorKind::DimensionMismatch, "affine metric data");
    MetricChart c;
    c.kind = a.is_zero() ? ChartKind::Constant : ChartKind::Affine;
    c.b = b;
    c.a = a;
    c.g = SMatrix(n, n);
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            ScalarField v(b(al, be));
            for (int s = 0; s < n; ++s) {
                if (sgn(a(al, be, s)) != 0) v += ScalarField(a(al, be, s)) * ScalarField::variable(s + 1);
            }
            c.g(al, be) = v * ScalarField(2);
        }
    }
    return c;
}

MetricChart MetricChart::general(const SMatrix& g) {
    int n = g.rows();
    if (!g.square()) throw Error(ErrorKind::DimensionMismatch, "metric must be square");
    RMatrix b(n, n);
    Tensor3 a(n);
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            Rational c0;
            std::vector<Rational> lin;
            if (!affine_entry(g(al, be), n, c0, lin)) {
                MetricChart c;
                c.g = g;
                c.kind = ChartKind::General;
                return c;
            }
            b(al, be) = c0 / 2;
            for (int s = 0; s < n; ++s) a(al, be, s) = lin[s] / 2;
        }
    }
    return affine(b, a);
}

ChristoffelData christoffel(const MetricChart& chart) {
    int n = chart.n();
    ChristoffelData out{Connection(n), Connection(n)};
    if (chart.kind == ChartKind::Constant) {
        if (laplace_det(chart.g).is_zero()) throw Error(ErrorKind::SingularMetric, "constant metric is degenerate");
        return out;
    }
    const SMatrix& g = chart.g;
    SMatrix glow = adjugate_inverse(g, ErrorKind::SingularMetric);
    std::vector<SMatrix> dg;
    for (int m = 0; m < n; ++m) dg.push_back(g.map([&](const ScalarField& f) { return f.partial(m + 1); }));

    // Gamma^{ab}_s = -1/2 d_s g^{ab} + 1/2 g_{cs}(g^{bm} d_m g^{ac} - g^{am} d_m g^{bc})
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            std::vector<ScalarField> inner(static_cast<std::size_t>(n));
            for (int c = 0; c < n; ++c) {
                ScalarField v;
                for (int m = 0; m < n; ++m) v += g(be, m) * dg[m](al, c) - g(al, m) * dg[m](be, c);
                inner[c] = v.simplified();
            }
            for (int s = 0; s < n; ++s) {
                ScalarField v = dg[s](al, be) * rational(-1, 2);
                for (int c = 0; c < n; ++c) {
                    if (!inner[c].is_zero()) v += glow(c, s) * inner[c] * rational(1, 2);
                }
                out.upper(al, be, s) = v.simplified();
            }
        }
    }
    for (int be = 0; be < n; ++be) {
        for (int q = 0; q < n; ++q) {
            for (int s = 0; s < n; ++s) {
                ScalarField v;
                for (int al = 0; al < n; ++al) {
                    if (!out.upper(al, be, s).is_zero()) v += glow(q, al) * out.upper(al, be, s);
                }
                out.lower(be, q, s) = v.simplified();
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

bool HamiltonianOperator::graded() const {
    for (int j = 0; j <= k; ++j) {
        const DMatrix& c = at(k - j);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (!c(a, b).is_homogeneous(j)) return false;
            }
        }
    }
    return true;
}

HamiltonianOperator HamiltonianOperator::simplified() const {
    HamiltonianOperator out = *this;
    for (auto& c : out.coeffs) c = c.map([](const DiffPoly& p) { return p.simplified(); });
    return out;
}

bool operator==(const HamiltonianOperator& a, const HamiltonianOperator& b) {
    if (a.n != b.n) return false;
    int k = std::max(a.k, b.k);
    for (int j = 0; j <= k; ++j) {
        DMatrix x = j <= a.k ? a.at(j) : DMatrix(a.n, a.n);
        DMatrix y = j <= b.k ? b.at(j) : DMatrix(b.n, b.n);
        if (x != y) return false;
    }
    return true;
}

HamiltonianOperator operator+(const HamiltonianOperator& a, const HamiltonianOperator& b) {
    if (a.n != b.n) throw Error(ErrorKind::DimensionMismatch, "operator sum");
    HamiltonianOperator out = zero_operator(a.n, std::max(a.k, b.k));
    for (int j = 0; j <= a.k; ++j) out.coeffs[j] = out.coeffs[j] + a.at(j);
    for (int j = 0; j <= b.k; ++j) out.coeffs[j] = out.coeffs[j] + b.at(j);
    return out;
}

HamiltonianOperator zero_operator(int n, int k) {
    HamiltonianOperator p;
    p.n = n;
    p.k = k;
    p.coeffs.assign(static_cast<std::size_t>(k + 1), DMatrix(n, n));
    return p;
}

std::vector<DMatrix> tau_sequence(const Connection& lower, int jmax) {
    int n = lower.n();
    std::vector<DMatrix> out;
    if (jmax < 1) return out;
    DMatrix t1(n, n);
    for (int be = 0; be < n; ++be) {
        for (int q = 0; q < n; ++q) {
            DiffPoly v;
            for (int s = 0; s < n; ++s) {
                if (!lower(be, q, s).is_zero()) v -= ux(s + 1).scaled(lower(be, q, s));
            }
            t1(be, q) = v;
        }
    }
    out.push_back(t1);
    for (int j = 2; j <= jmax; ++j) {
        const DMatrix& prev = out.back();
        DMatrix next(n, n);
        for (int be = 0; be < n; ++be) {
            for (int q = 0; q < n; ++q) {
                DiffPoly v = total_derivative(prev(be, q));
                for (int m = 0; m < n; ++m) {
                    if (!t1(m, q).is_zero() && !prev(be, m).is_zero()) v += t1(m, q) * prev(be, m);
                }
                next(be, q) = v.simplified();
            }
        }
        out.push_back(next);
    }
    return out;
}

DMatrix tau(const Connection& lower, int j) {
    if (j < 1) throw Error(ErrorKind::Domain, "tau needs j >= 1");
    return tau_sequence(lower, j).back();
}

HamiltonianOperator build_darboux_operator(const SMatrix& h, const Connection& lower, int k) {
    require_odd(k);
    int n = h.rows();
    if (!h.square() || lower.n() != n) throw Error(ErrorKind::DimensionMismatch, "metric and connection sizes");
    if (laplace_det(h).simplified().is_zero()) throw Error(ErrorKind::SingularMetric, "leading matrix is degenerate");

    for (int be = 0; be < n; ++be) {
        for (int q = 0; q < n; ++q) {
            for (int s = 0; s < q; ++s) {
                if (lower(be, q, s) != lower(be, s, q)) {
                    throw Error(ErrorKind::NotFlat, "connection has torsion at (" + std::to_string(be + 1) + "," +
                                                        std::to_string(q + 1) + "," + std::to_string(s + 1) + ")");
                }
            }
        }
    }
    // d_s h^{ab} + h^{aq} G^b_{qs} + h^{bq} G^a_{qs} = 0
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            for (int s = 0; s < n; ++s) {
                ScalarField v = h(al, be).partial(s + 1);
                for (int q = 0; q < n; ++q) v += h(al, q) * lower(be, q, s) + h(be, q) * lower(al, q, s);
                if (!v.is_zero()) {
                    throw Error(ErrorKind::NotParallel, "nabla h != 0 at (" + std::to_string(al + 1) + "," +
                                                            std::to_string(be + 1) + "," + std::to_string(s + 1) + ")");
                }
            }
        }
    }
    // R^b_{qrs} = d_r G^b_{qs} - d_s G^b_{qr} + G^b_{mr} G^m_{qs} - G^b_{ms} G^m_{qr}
    for (int be = 0; be < n; ++be) {
        for (int q = 0; q < n; ++q) {
            for (int r = 0; r < n; ++r) {
                for (int s = 0; s < r; ++s) {
                    ScalarField v = lower(be, q, s).partial(r + 1) - lower(be, q, r).partial(s + 1);
                    for (int m = 0; m < n; ++m) v += lower(be, m, r) * lower(m, q, s) - lower(be, m, s) * lower(m, q, r);
                    if (!v.is_zero()) throw Error(ErrorKind::NotFlat, "curvature does not vanish");
                }
            }
        }
    }

    HamiltonianOperator p = zero_operator(n, k);
    p.coeffs[k] = lift(h);
    auto taus = tau_sequence(lower, k);
    for (int j = 1; j <= k; ++j) {
        ScalarField bin(Rational(binomial(k, j)));
        const DMatrix& t = taus[j - 1];
        DMatrix c(n, n);
        for (int al = 0; al < n; ++al) {
            for (int be = 0; be < n; ++be) {
                DiffPoly v;
                for (int q = 0; q < n; ++q) {
                    if (!h(al, q).is_zero()) v += t(be, q).scaled(h(al, q));
                }
                c(al, be) = v.scaled(bin).simplified();
            }
        }
        p.coeffs[k - j] = c;
    }
    return p;
}

HamiltonianOperator build_A(const FrobeniusTriple& t, AVariant variant) {
    int n = t.n;
    HamiltonianOperator p = zero_operator(n, 1);
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            DiffPoly lead = variant == AVariant::Full ? DiffPoly(ScalarField(t.b(al, be))) : DiffPoly();
            DiffPoly low;
            for (int s = 0; s < n; ++s) {
                const Rational& c = t.a(al, be, s);
                if (sgn(c) == 0) continue;
                lead += DiffPoly::jet(s + 1).scaled(ScalarField(c));
                low += ux(s + 1).scaled(ScalarField(c));
            }
            p.coeffs[1](al, be) = lead.scaled(ScalarField(2));
            p.coeffs[0](al, be) = low;
        }
    }
    return p;
}

HamiltonianOperator build_A(const MetricChart& chart) {
    int n = chart.n();
    if (chart.kind == ChartKind::Constant) {
        HamiltonianOperator p = zero_operator(n, 1);
        p.coeffs[1] = lift(chart.g);
        return p;
    }
    if (chart.kind == ChartKind::Affine) {
        FrobeniusTriple t;
        t.n = n;
        t.a = chart.a;
        t.b = chart.b;
        t.h = RMatrix(n, n);
        return build_A(t, AVariant::Full);
    }
    return build_darboux_operator(chart.g, christoffel(chart).lower, 1);
}

HamiltonianOperator build_B(const RMatrix& h, int k) {
    require_odd(k);
    if (!h.square()) throw Error(ErrorKind::DimensionMismatch, "leading matrix must be square");
    if (sgn(determinant(h)) == 0) throw Error(ErrorKind::Singular, "det h = 0");
    HamiltonianOperator p = zero_operator(h.rows(), k);
    p.coeffs[k] = lift(lift(h));
    return p;
}

std::vector<DiffPoly> apply(const HamiltonianOperator& p, const std::vector<DiffPoly>& w) {
    int n = p.n;
    if (static_cast<int>(w.size()) != n) throw Error(ErrorKind::DimensionMismatch, "covector length differs from operator size");
    std::vector<std::vector<DiffPoly>> derivs(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) {
        derivs[b].push_back(w[b]);
        for (int j = 1; j <= p.k; ++j) derivs[b].push_back(total_derivative(derivs[b].back()));
    }
    std::vector<DiffPoly> out(static_cast<std::size_t>(n));
    for (int j = 0; j <= p.k; ++j) {
        const DMatrix& c = p.at(j);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (!c(a, b).is_zero() && !derivs[b][j].is_zero()) out[a] += c(a, b) * derivs[b][j];
            }
        }
    }
    for (auto& x : out) x = x.simplified();
    return out;
}

DiffPoly bracket(const HamiltonianOperator& p, const DiffPoly& h1, const DiffPoly& h2) {
    auto d1 = variational_gradient(h1, p.n);
    auto d2 = variational_gradient(h2, p.n);
    auto pw = darboux::apply(p, d2);
    DiffPoly integrand;
    for (int a = 0; a < p.n; ++a) integrand += d1[a] * pw[a];
    return reduce_modulo_derivatives(integrand.simplified());
}

CompatibilityReport compatibility_check(const MetricChart& g, const SMatrix& h, int k) {
    if (k < 3 || k % 2 == 0) {
        throw Error(ErrorKind::UnsupportedOrder, "compatibility is decided for odd k >= 3, got " + std::to_string(k));
    }
    int n = g.n();
    if (h.rows() != n || h.cols() != n) throw Error(ErrorKind::DimensionMismatch, "metric sizes differ");
    RMatrix hr(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            auto v = rational_value(h(i, j));
            if (!v) throw Error(ErrorKind::Domain, "B must be given in Darboux coordinates (constant rational h)");
            hr(i, j) = *v;
        }
    }

    CompatibilityReport rep;
    // h is constant, so its symbols vanish and S is the contravariant symbol of g
    rep.S = christoffel(g).upper;
    for (int al = 0; al < n && !rep.witness; ++al) {
        for (int be = 0; be < n && !rep.witness; ++be) {
            for (int s = 0; s < n && !rep.witness; ++s) {
                if (!rep.S(al, be, s).is_zero()) {
                    rep.witness = std::vector<int>{al + 1, be + 1, s + 1};
                    rep.witness_value = rep.S(al, be, s);
                }
            }
        }
    }

    if (k >= 5) {
        if (rep.witness) rep.failures.push_back("S != 0: g is not constant in the Darboux chart of h");
        rep.pass = rep.failures.empty();
        return rep;
    }

    MetricChart chart = g.kind == ChartKind::General ? MetricChart::general(g.g) : g;
    if (chart.kind == ChartKind::General) {
        rep.failures.push_back("g is not affine in the Darboux chart of h");
        return rep;
    }
    FrobeniusTriple t;
    t.n = n;
    t.a = chart.a;
    t.b = chart.b;
    t.h = hr;
    for (const auto& f : check_triple(t).failures) {
        std::ostringstream os;
        os << f.condition;
        if (!f.indices.empty()) {
            os << " at (";
            for (std::size_t i = 0; i < f.indices.size(); ++i) os << (i ? "," : "") << f.indices[i];
            os << ")";
        }
        rep.failures.push_back(os.str());
    }
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            for (int s = 0; s < n; ++s) {
                if (rep.S(al, be, s) != ScalarField(-t.a(al, be, s))) {
                    rep.failures.push_back("a != -S at (" + std::to_string(al + 1) + "," + std::to_string(be + 1) + "," +
                                           std::to_string(s + 1) + ")");
                }
            }
        }
    }
    rep.triple = t;
    rep.pass = rep.failures.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// affine changes of coordinates

AffineMap AffineMap::identity(int n) { return {RMatrix::identity(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))}; }

AffineMap AffineMap::inverse() const {
    RMatrix mi = rational_inverse(M, ErrorKind::Singular, "affine map");
    std::vector<Rational> ci = mi.apply(c);
    for (auto& x : ci) x = -x;
    return {mi, ci};
}

AffineMap AffineMap::then(const AffineMap& next) const {
    std::vector<Rational> shifted = next.M.apply(c);
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += next.c[i];
    return {next.M * M, shifted};
}

FieldAffineMap FieldAffineMap::lift(const AffineMap& m) {
    FieldAffineMap out{darboux::lift(m.M), {}};
    for (const auto& x : m.c) out.c.emplace_back(x);
    return out;
}

FieldAffineMap FieldAffineMap::inverse() const {
    auto mi = darboux::inverse(M);
    if (!mi) throw Error(ErrorKind::Singular, "affine map");
    FieldAffineMap out{mi->map([](const ScalarField& x) { return x.simplified(); }), {}};
    for (const auto& x : out.M.apply(c)) out.c.push_back((-x).simplified());
    return out;
}

FieldAffineMap FieldAffineMap::then(const FieldAffineMap& next) const {
    FieldAffineMap out{(next.M * M).map([](const ScalarField& x) { return x.simplified(); }), next.M.apply(c)};
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = (out.c[i] + next.c[i]).simplified();
    return out;
}

std::optional<AffineMap> FieldAffineMap::rational() const {
    int n = M.rows();
    AffineMap out{RMatrix(n, n), std::vector<Rational>(static_cast<std::size_t>(n))};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!M(i, j).is_rational_constant(&out.M(i, j))) return std::nullopt;
        }
        if (!c[i].is_rational_constant(&out.c[i])) return std::nullopt;
    }
    return out;
}

namespace {

ScalarField substitute_poly(const PuiseuxPoly& p, const std::vector<ScalarField>& images) {
    ScalarField out;
    for (const auto& [e, c] : p.terms()) {
        PuiseuxMonomial radicals{c, {}};
        ScalarField prod(1);
        for (const auto& [key, ex] : e) {
            if (key < 0) {
                radicals.exponents.emplace_back(key, ex);
                continue;
            }
            if (ex.denominator() != 1) throw Error(ErrorKind::Domain, "affine substitution needs integer exponents");
            if (key > static_cast<int>(images.size())) throw Error(ErrorKind::DimensionMismatch, "variable outside the chart");
            prod *= images[static_cast<std::size_t>(key - 1)].pow(ex.numerator());
        }
        out += ScalarField(PuiseuxPoly(radicals)) * prod;
    }
    return out;
}

std::vector<ScalarField> variable_images(const FieldAffineMap& inv) {
    int n = inv.M.rows();
    std::vector<ScalarField> images;
    for (int a = 0; a < n; ++a) {
        ScalarField v = inv.c[a];
        for (int b = 0; b < n; ++b) {
            if (!inv.M(a, b).is_zero()) v += inv.M(a, b) * ScalarField::variable(b + 1);
        }
        images.push_back(v);
    }
    return images;
}

} // namespace

ScalarField substitute_affine(const ScalarField& f, const FieldAffineMap& inverse_map) {
    auto images = variable_images(inverse_map);
    ScalarField out = substitute_poly(f.numerator(), images);
    for (const auto& [factor, power] : f.denominator_factors()) out /= substitute_poly(factor, images).pow(power);
    return out.simplified();
}

DiffPoly substitute_affine(const DiffPoly& p, const FieldAffineMap& inverse_map) {
    int n = inverse_map.M.rows();
    DiffPoly out;
    for (const auto& [key, c] : p.terms()) {
        DiffPoly term(substitute_affine(c, inverse_map));
        for (const auto& f : key) {
            DiffPoly image;
            for (int b = 0; b < n; ++b) {
                const ScalarField& m = inverse_map.M(f.alpha - 1, b);
                if (!m.is_zero()) image += DiffPoly::jet(b + 1, f.order).scaled(m);
            }
            term = term * image.pow(static_cast<unsigned>(f.power));
        }
        out += term;
    }
    return out;
}

ScalarField substitute_affine(const ScalarField& f, const AffineMap& inverse_map) {
    return substitute_affine(f, FieldAffineMap::lift(inverse_map));
}

DiffPoly substitute_affine(const DiffPoly& p, const AffineMap& inverse_map) {
    return substitute_affine(p, FieldAffineMap::lift(inverse_map));
}

HamiltonianOperator transform_operator(const HamiltonianOperator& p, const FieldAffineMap& map) {
    FieldAffineMap inv = map.inverse();
    DMatrix m = lift(map.M);
    DMatrix mt = m.transposed();
    HamiltonianOperator out = zero_operator(p.n, p.k);
    for (int j = 0; j <= p.k; ++j) {
        DMatrix sub = p.at(j).map([&](const DiffPoly& x) { return substitute_affine(x, inv); });
        out.coeffs[j] = (m * sub * mt).map([](const DiffPoly& x) { return x.simplified(); });
    }
    return out;
}

HamiltonianOperator transform_operator(const HamiltonianOperator& p, const AffineMap& map) {
    return transform_operator(p, FieldAffineMap::lift(map));
}

FrobeniusTriple transform_triple(const FrobeniusTriple& t, const AffineMap& map) {
    FrobeniusTriple out = transform(t, map.M);
    int n = t.n;
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            for (int s = 0; s < n; ++s) out.b(al, be) -= out.a(al, be, s) * map.c[s];
        }
    }
    return out;
}

} // namespace darboux
