#include "darboux/jetpoly.hpp"

#include "darboux/error.hpp"

#include <algorithm>
#include <tuple>

namespace darboux {

namespace {

JetKey multiply_keys(const JetKey& a, const JetKey& b) {
    JetKey out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    auto less = [](const JetFactor& x, const JetFactor& y) {
        return x.alpha != y.alpha ? x.alpha < y.alpha : x.order < y.order;
    };
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && less(*ia, *ib))) {
            out.push_back(*ia++);
        } else if (ia == a.end() || less(*ib, *ia)) {
            out.push_back(*ib++);
        } else {
            out.push_back({ia->alpha, ia->order, ia->power + ib->power});
            ++ia;
            ++ib;
        }
    }
    return out;
}

// key with the power of (alpha, order) shifted by delta; drops zero powers
JetKey shift_power(const JetKey& key, int alpha, int order, int delta) {
    JetKey k = multiply_keys(key, JetKey{{alpha, order, delta}});
    k.erase(std::remove_if(k.begin(), k.end(), [](const JetFactor& f) { return f.power == 0; }), k.end());
    return k;
}

} // namespace

int differential_degree(const JetKey& key) {
    int d = 0;
    for (const auto& f : key) d += f.order * f.power;
    return d;
}

DiffPoly::DiffPoly(const ScalarField& c) {
    if (!c.is_zero()) terms_.emplace(JetKey{}, c);
}

DiffPoly DiffPoly::jet(int alpha, int order) {
    if (alpha <= 0 || order < 0) throw Error(ErrorKind::Domain, "invalid jet variable");
    if (order == 0) return DiffPoly(ScalarField::variable(alpha));
    DiffPoly p;
    p.terms_.emplace(JetKey{{alpha, order, 1}}, ScalarField(1));
    return p;
}

DiffPoly DiffPoly::monomial(const ScalarField& c, JetKey key) {
    std::sort(key.begin(), key.end());
    JetKey merged;
    for (const auto& f : key) {
        if (f.order <= 0 || f.power <= 0) throw Error(ErrorKind::Domain, "jet factor needs positive order and power");
        merged = multiply_keys(merged, JetKey{f});
    }
    DiffPoly p;
    p.add_term(merged, c);
    return p;
}

void DiffPoly::add_term(const JetKey& key, const ScalarField& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ScalarField DiffPoly::degree_zero_part() const {
    auto it = terms_.find(JetKey{});
    return it == terms_.end() ? ScalarField(0) : it->second;
}

bool DiffPoly::is_homogeneous(int degree) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return differential_degree(t.first) == degree; });
}

int DiffPoly::max_order() const {
    int m = 0;
    for (const auto& [k, c] : terms_) {
        for (const auto& f : k) m = std::max(m, f.order);
    }
    return m;
}

int DiffPoly::max_variable() const {
    int m = 0;
    for (const auto& [k, c] : terms_) {
        m = std::max(m, c.max_variable());
        for (const auto& f : k) m = std::max(m, f.alpha);
    }
    return m;
}

bool DiffPoly::depends_on_jet(int alpha, int order) const {
    for (const auto& [k, c] : terms_) {
        if (order == 0 && c.depends_on(alpha)) return true;
        for (const auto& f : k) {
            if (f.alpha == alpha && f.order == order) return true;
        }
    }
    return false;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly out;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) out.add_term(multiply_keys(ka, kb), ca * cb);
    }
    return out;
}

DiffPoly DiffPoly::scaled(const ScalarField& c) const {
    if (c.is_zero()) return {};
    DiffPoly out;
    for (const auto& [k, v] : terms_) out.add_term(k, v * c);
    return out;
}

DiffPoly DiffPoly::pow(unsigned k) const {
    DiffPoly result(1);
    for (unsigned i = 0; i < k; ++i) result = result * *this;
    return result;
}

DiffPoly DiffPoly::partial(int alpha, int order) const {
    DiffPoly out;
    for (const auto& [k, c] : terms_) {
        if (order == 0) {
            out.add_term(k, c.partial(alpha));
            continue;
        }
        for (const auto& f : k) {
            if (f.alpha == alpha && f.order == order) {
                out.add_term(shift_power(k, alpha, order, -1), c * ScalarField(static_cast<long>(f.power)));
            }
        }
    }
    return out;
}

DiffPoly DiffPoly::simplified() const {
    DiffPoly out;
    for (const auto& [k, c] : terms_) out.add_term(k, c.simplified());
    return out;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) { return (a - b).is_zero(); }

DiffPoly total_derivative(const DiffPoly& p) {
    DiffPoly out;
    int n = p.max_variable();
    for (const auto& [k, c] : p.terms()) {
        for (int beta = 1; beta <= n; ++beta) {
            if (!c.depends_on(beta)) continue;
            out += DiffPoly::monomial(c.partial(beta), multiply_keys(k, JetKey{{beta, 1, 1}}));
        }
        for (const auto& f : k) {
            JetKey lowered = shift_power(k, f.alpha, f.order, -1);
            JetKey raised = multiply_keys(lowered, JetKey{{f.alpha, f.order + 1, 1}});
            out += DiffPoly::monomial(c * ScalarField(static_cast<long>(f.power)), raised);
        }
    }
    return out;
}

DiffPoly total_derivative(const DiffPoly& p, int times) {
    DiffPoly out = p;
    for (int i = 0; i < times; ++i) out = total_derivative(out);
    return out;
}

DiffPoly variational_derivative(const DiffPoly& p, int alpha) {
    DiffPoly out;
    int m = p.max_order();
    for (int j = m; j >= 0; --j) {
        // Horner form: E = d_0 - D(d_1 - D(d_2 - ...))
        out = p.partial(alpha, j) - total_derivative(out);
    }
    return out;
}

std::vector<DiffPoly> variational_gradient(const DiffPoly& p, int n) {
    std::vector<DiffPoly> out;
    for (int a = 1; a <= n; ++a) out.push_back(variational_derivative(p, a));
    return out;
}

namespace {

std::optional<DiffPoly> extract_witness(const DiffPoly& p) {
    DiffPoly rest = p;
    DiffPoly witness;
    for (int iter = 0; iter < 256; ++iter) {
        if (rest.is_zero()) return witness;
        int m = rest.max_order();
        if (m == 0) return std::nullopt;
        int alpha = 0;
        for (const auto& [k, c] : rest.terms()) {
            for (const auto& f : k) {
                if (f.order == m && (alpha == 0 || f.alpha < alpha)) alpha = f.alpha;
            }
        }
        DiffPoly coeff;
        for (const auto& [k, c] : rest.terms()) {
            auto it = std::find_if(k.begin(), k.end(), [&](const JetFactor& f) { return f.alpha == alpha && f.order == m; });
            if (it == k.end()) continue;
            if (it->power != 1) return std::nullopt;
            JetKey others = k;
            others.erase(others.begin() + (it - k.begin()));
            coeff += DiffPoly::monomial(c, others);
        }
        if (coeff.max_order() >= m) return std::nullopt;
        DiffPoly anti;
        for (const auto& [k, c] : coeff.terms()) {
            if (m - 1 >= 1) {
                auto it = std::find_if(k.begin(), k.end(), [&](const JetFactor& f) { return f.alpha == alpha && f.order == m - 1; });
                int pw = it == k.end() ? 0 : it->power;
                anti += DiffPoly::monomial(c * rational(1, pw + 1), shift_power(k, alpha, m - 1, 1));
            } else {
                auto ic = c.integrate(alpha);
                if (!ic) return std::nullopt;
                anti += DiffPoly::monomial(*ic, k);
            }
        }
        witness += anti;
        rest -= total_derivative(anti);
    }
    return std::nullopt;
}

} // namespace

ExactnessResult is_total_derivative(const DiffPoly& p, int n) {
    ExactnessResult r;
    n = std::max(n, p.max_variable());
    ScalarField c0 = p.degree_zero_part();
    if (!c0.is_zero() && c0.is_constant()) return r;
    for (int a = 1; a <= n; ++a) {
        if (!variational_derivative(p, a).is_zero()) return r;
    }
    r.exact = true;
    r.witness = extract_witness(p);
    if (r.witness && total_derivative(*r.witness) != p) r.witness.reset();
    return r;
}

bool functionally_equal(const DiffPoly& p, const DiffPoly& q, int n) {
    DiffPoly d = p - q;
    ScalarField c0 = d.degree_zero_part();
    if (!c0.is_zero() && c0.is_constant()) d -= DiffPoly(c0);
    return d.is_zero() || is_total_derivative(d, n).exact;
}

std::map<int, DiffPoly> homogeneous_split(const DiffPoly& p) {
    std::map<int, DiffPoly> out;
    for (const auto& [k, c] : p.terms()) out[differential_degree(k)] += DiffPoly::monomial(c, k);
    return out;
}

namespace {

// Antiderivative F of the term c * key in its top jet with D(F) = term + lower
// terms, or nullopt when the term is not of that shape.
std::optional<std::pair<JetFactor, DiffPoly>> top_antiderivative(const JetKey& key, const ScalarField& c) {
    if (key.empty()) return std::nullopt;
    auto top = std::max_element(key.begin(), key.end(), [](const JetFactor& x, const JetFactor& y) {
        return std::tie(x.order, x.alpha) < std::tie(y.order, y.alpha);
    });
    if (top->power != 1) return std::nullopt;
    int m = top->order;
    int alpha = top->alpha;
    JetKey others;
    for (auto it = key.begin(); it != key.end(); ++it) {
        if (it == top) continue;
        if (it->order == m) return std::nullopt;
        if (it->order == m - 1 && it->alpha > alpha) return std::nullopt;
        others.push_back(*it);
    }
    if (m == 1) {
        for (int b = alpha + 1; b <= c.max_variable(); ++b) {
            if (c.depends_on(b)) return std::nullopt;
        }
        auto ic = c.integrate(alpha);
        if (!ic) return std::nullopt;
        return std::make_pair(*top, DiffPoly::monomial(*ic, others));
    }
    auto it = std::find_if(others.begin(), others.end(), [&](const JetFactor& f) { return f.alpha == alpha && f.order == m - 1; });
    int pw = it == others.end() ? 0 : it->power;
    return std::make_pair(*top, DiffPoly::monomial(c * rational(1, pw + 1), shift_power(others, alpha, m - 1, 1)));
}

} // namespace

DiffPoly reduce_modulo_derivatives(const DiffPoly& p) {
    DiffPoly rest = p;
    for (int iter = 0; iter < 4096; ++iter) {
        std::optional<std::pair<JetFactor, DiffPoly>> best;
        for (const auto& [k, c] : rest.terms()) {
            auto cand = top_antiderivative(k, c);
            if (!cand) continue;
            if (!best || std::tie(cand->first.order, cand->first.alpha) > std::tie(best->first.order, best->first.alpha)) {
                best = std::move(cand);
            }
        }
        if (!best) break;
        rest -= total_derivative(best->second);
    }
    return rest;
}

bool DensitySeries::graded() const {
    for (int i = 1; i <= size(); ++i) {
        if (!at(i).is_zero() && !at(i).is_homogeneous(i - 1)) return false;
    }
    return true;
}

} // namespace darboux
