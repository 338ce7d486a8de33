#include "darboux/coeffring.hpp"

#include "darboux/error.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>

namespace darboux {

namespace {

std::int64_t floor_of(const Exponent& e) {
    std::int64_t n = e.numerator();
    std::int64_t d = e.denominator();
    std::int64_t q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

// Compares the entries of a and b whose key satisfies pred, treating absent
// keys as exponent 0 and earlier keys as more significant.
template <class Pred>
int dense_compare(const ExponentMap& a, const ExponentMap& b, Pred pred) {
    auto ia = a.begin();
    auto ib = b.begin();
    auto skip = [&](ExponentMap::const_iterator& it, const ExponentMap& m) {
        while (it != m.end() && !pred(it->first)) ++it;
    };
    for (;;) {
        skip(ia, a);
        skip(ib, b);
        bool ea = ia == a.end();
        bool eb = ib == b.end();
        if (ea && eb) return 0;
        if (!ea && (eb || ia->first < ib->first)) {
            return ia->second > Exponent(0) ? 1 : -1;
        }
        if (!eb && (ea || ib->first < ia->first)) {
            return ib->second > Exponent(0) ? -1 : 1;
        }
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        ++ia;
        ++ib;
    }
}

int compare_gaussian(const Gaussian& a, const Gaussian& b) {
    int c = cmp(a.re(), b.re());
    if (c != 0) return c;
    return cmp(a.im(), b.im());
}

ExponentMap variable_part(const ExponentMap& e) {
    ExponentMap out;
    for (const auto& [k, v] : e) {
        if (k > 0) out.emplace_back(k, v);
    }
    return out;
}

Gaussian integer_power(long base, std::int64_t k) {
    return pow(Gaussian(base), k);
}

} // namespace

bool MonomialOrder::operator()(const ExponentMap& a, const ExponentMap& b) const {
    int c = dense_compare(a, b, [](int k) { return k > 0; });
    if (c != 0) return c < 0;
    return dense_compare(a, b, [](int k) { return k < 0; }) < 0;
}

PuiseuxMonomial multiply(const PuiseuxMonomial& a, const PuiseuxMonomial& b) {
    PuiseuxMonomial out;
    out.coefficient = a.coefficient * b.coefficient;
    auto ia = a.exponents.begin();
    auto ib = b.exponents.begin();
    auto push = [&](int key, Exponent e) {
        if (key < 0) {
            std::int64_t whole = floor_of(e);
            if (whole != 0) {
                out.coefficient *= integer_power(-key, whole);
                e -= whole;
            }
        }
        if (e != Exponent(0)) out.exponents.emplace_back(key, e);
    };
    while (ia != a.exponents.end() || ib != b.exponents.end()) {
        if (ib == b.exponents.end() || (ia != a.exponents.end() && ia->first < ib->first)) {
            push(ia->first, ia->second);
            ++ia;
        } else if (ia == a.exponents.end() || ib->first < ia->first) {
            push(ib->first, ib->second);
            ++ib;
        } else {
            push(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return out;
}

PuiseuxMonomial inverse(const PuiseuxMonomial& m) {
    if (m.coefficient.is_zero()) throw Error(ErrorKind::ZeroDivision, "inverse of a zero monomial");
    PuiseuxMonomial neg;
    neg.coefficient = Gaussian(1) / m.coefficient;
    for (const auto& [k, e] : m.exponents) neg.exponents.emplace_back(k, -e);
    // run through multiply so that radical exponents are reduced again
    return multiply(PuiseuxMonomial{Gaussian(1), {}}, neg);
}

PuiseuxPoly::PuiseuxPoly(const Gaussian& constant) {
    if (!constant.is_zero()) terms_.emplace(ExponentMap{}, constant);
}

PuiseuxPoly::PuiseuxPoly(const PuiseuxMonomial& m) { add_term(m); }

PuiseuxPoly PuiseuxPoly::variable(int alpha, Exponent power) {
    if (alpha <= 0) throw Error(ErrorKind::Domain, "field variable index must be positive");
    PuiseuxPoly p;
    if (power == Exponent(0)) {
        p.terms_.emplace(ExponentMap{}, Gaussian(1));
    } else {
        p.terms_.emplace(ExponentMap{{alpha, power}}, Gaussian(1));
    }
    return p;
}

bool PuiseuxPoly::is_constant() const {
    for (const auto& [e, c] : terms_) {
        for (const auto& kv : e) {
            if (kv.first > 0) return false;
        }
    }
    return true;
}

bool PuiseuxPoly::is_rational_constant(Rational* value) const {
    if (terms_.empty()) {
        if (value != nullptr) *value = 0;
        return true;
    }
    if (terms_.size() != 1) return false;
    const auto& [e, c] = *terms_.begin();
    if (!e.empty() || !c.is_real()) return false;
    if (value != nullptr) *value = c.re();
    return true;
}

bool PuiseuxPoly::depends_on(int alpha) const {
    for (const auto& [e, c] : terms_) {
        for (const auto& kv : e) {
            if (kv.first == alpha) return true;
        }
    }
    return false;
}

int PuiseuxPoly::max_variable() const {
    int m = 0;
    for (const auto& [e, c] : terms_) {
        for (const auto& kv : e) m = std::max(m, kv.first);
    }
    return m;
}

PuiseuxMonomial PuiseuxPoly::leading() const {
    if (terms_.empty()) throw Error(ErrorKind::Domain, "leading term of zero polynomial");
    const auto& [e, c] = *terms_.rbegin();
    return {c, e};
}

PuiseuxMonomial PuiseuxPoly::as_monomial() const {
    if (terms_.empty()) return {Gaussian(0), {}};
    if (terms_.size() != 1) throw Error(ErrorKind::Domain, "polynomial is not a monomial");
    const auto& [e, c] = *terms_.begin();
    return {c, e};
}

void PuiseuxPoly::add_term(const ExponentMap& e, const Gaussian& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void PuiseuxPoly::add_term(const PuiseuxMonomial& m) {
    // normalize radical exponents before storing
    PuiseuxMonomial r = multiply(PuiseuxMonomial{Gaussian(1), {}}, m);
    add_term(r.exponents, r.coefficient);
}

PuiseuxPoly PuiseuxPoly::operator-() const {
    PuiseuxPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

PuiseuxPoly& PuiseuxPoly::operator+=(const PuiseuxPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

PuiseuxPoly& PuiseuxPoly::operator-=(const PuiseuxPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

namespace {

// Exponent part of the product of two reduced monomials; radical overflow
// goes into coef.
void merge_exponents(const ExponentMap& a, const ExponentMap& b, ExponentMap& out, Gaussian& coef) {
    out.clear();
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == a.end() || ib->first < ia->first) {
            out.push_back(*ib++);
        } else {
            Exponent e = ia->second + ib->second;
            int key = ia->first;
            ++ia;
            ++ib;
            if (key < 0 && e >= Exponent(1)) {
                coef *= Gaussian(-key);
                e -= 1;
            }
            if (e != Exponent(0)) out.emplace_back(key, e);
        }
    }
}

} // namespace

PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    PuiseuxPoly out;
    if (a.terms_.size() == 1 && a.terms_.begin()->first.empty()) return b.scaled(a.terms_.begin()->second);
    if (b.terms_.size() == 1 && b.terms_.begin()->first.empty()) return a.scaled(b.terms_.begin()->second);
    ExponentMap e;
    Gaussian c;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            c = ca;
            c *= cb;
            merge_exponents(ea, eb, e, c);
            out.add_term(e, c);
        }
    }
    return out;
}

PuiseuxPoly PuiseuxPoly::times(const PuiseuxMonomial& m) const {
    PuiseuxPoly out;
    for (const auto& [e, c] : terms_) {
        PuiseuxMonomial r = multiply({c, e}, m);
        out.add_term(r.exponents, r.coefficient);
    }
    return out;
}

PuiseuxPoly PuiseuxPoly::scaled(const Gaussian& c) const {
    if (c.is_zero()) return {};
    PuiseuxPoly out = *this;
    for (auto& [e, v] : out.terms_) v *= c;
    return out;
}

PuiseuxPoly PuiseuxPoly::pow(unsigned k) const {
    PuiseuxPoly result(Gaussian(1));
    PuiseuxPoly base = *this;
    while (k > 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

PuiseuxPoly PuiseuxPoly::partial(int alpha) const {
    PuiseuxPoly out;
    for (const auto& [e, c] : terms_) {
        auto it = std::find_if(e.begin(), e.end(), [&](const auto& kv) { return kv.first == alpha; });
        if (it == e.end()) continue;
        Exponent p = it->second;
        ExponentMap ne = e;
        auto nit = ne.begin() + (it - e.begin());
        if (p == Exponent(1)) {
            ne.erase(nit);
        } else {
            nit->second = p - 1;
        }
        out.add_term(ne, c * Gaussian(Rational(p.numerator(), p.denominator())));
    }
    return out;
}

std::optional<PuiseuxPoly> PuiseuxPoly::integrate(int alpha) const {
    PuiseuxPoly out;
    for (const auto& [e, c] : terms_) {
        ExponentMap ne = e;
        auto it = std::find_if(ne.begin(), ne.end(), [&](const auto& kv) { return kv.first == alpha; });
        Exponent p(0);
        if (it != ne.end()) p = it->second;
        if (p == Exponent(-1)) return std::nullopt;
        Exponent q = p + 1;
        if (it != ne.end()) {
            it->second = q;
        } else {
            auto pos = std::lower_bound(ne.begin(), ne.end(), alpha,
                                        [](const auto& kv, int key) { return kv.first < key; });
            ne.insert(pos, {alpha, q});
        }
        out.add_term(ne, c / Gaussian(Rational(q.numerator(), q.denominator())));
    }
    return out;
}

std::optional<PuiseuxPoly> PuiseuxPoly::divide_exact(const PuiseuxPoly& dividend, const PuiseuxPoly& divisor) {
    if (divisor.is_zero()) throw Error(ErrorKind::ZeroDivision, "exact division by zero");
    if (dividend.is_zero()) return PuiseuxPoly{};
    if (divisor.is_monomial()) return dividend.times(inverse(divisor.as_monomial()));

    // Greedy leading-term division.  The variable part of every quotient term
    // lies between low(A)/low(B) and high(A)/high(B); stepping below that
    // window, or running past a step budget, means no exact quotient.
    MonomialOrder order;
    PuiseuxMonomial lead_b = divisor.leading();
    PuiseuxMonomial inv_lead_b = inverse(lead_b);
    ExponentMap low_a = variable_part(dividend.terms_.begin()->first);
    ExponentMap low_b = variable_part(divisor.terms_.begin()->first);
    ExponentMap floor_q = multiply({Gaussian(1), low_a}, inverse({Gaussian(1), low_b})).exponents;

    PuiseuxPoly rest = dividend;
    PuiseuxPoly quotient;
    std::size_t budget = 8 * (dividend.size() + 1) * (divisor.size() + 1) + 64;
    while (!rest.is_zero()) {
        if (budget-- == 0) return std::nullopt;
        PuiseuxMonomial step = multiply(rest.leading(), inv_lead_b);
        if (order(variable_part(step.exponents), floor_q)) return std::nullopt;
        quotient.add_term(step);
        rest -= divisor.times(step);
    }
    if (quotient * divisor != dividend) return std::nullopt;
    return quotient;
}

std::complex<double> PuiseuxPoly::evaluate(const std::vector<std::complex<double>>& point) const {
    std::complex<double> sum = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> term = c.to_complex();
        for (const auto& [k, p] : e) {
            double ex = static_cast<double>(p.numerator()) / static_cast<double>(p.denominator());
            if (k < 0) {
                term *= std::pow(static_cast<double>(-k), ex);
            } else {
                if (static_cast<std::size_t>(k) > point.size()) {
                    throw Error(ErrorKind::Domain, "evaluation point lacks u^" + std::to_string(k));
                }
                term *= std::pow(point[k - 1], ex);
            }
        }
        sum += term;
    }
    return sum;
}

bool poly_less(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    MonomialOrder order;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end(); ++ia, ++ib) {
        if (order(ia->first, ib->first)) return true;
        if (order(ib->first, ia->first)) return false;
        int c = compare_gaussian(ia->second, ib->second);
        if (c != 0) return c < 0;
    }
    return false;
}

// ---------------------------------------------------------------------------

ScalarField ScalarField::variable(int alpha, Exponent power) {
    return ScalarField(PuiseuxPoly::variable(alpha, power));
}

ScalarField ScalarField::fraction(const PuiseuxPoly& num, const PuiseuxPoly& den) {
    if (den.is_zero()) throw Error(ErrorKind::ZeroDivision, "fraction with zero denominator");
    ScalarField f(num);
    if (f.is_zero()) return f;
    f.add_factor(den, 1);
    return f;
}

namespace {

// p = r^k for an ordinary polynomial p with leading coefficient 1, found by
// matching leading terms; r comes out with leading coefficient 1 as well.
// Lex is a monomial order, so each step fixes the next term of r.
std::optional<std::pair<PuiseuxPoly, int>> perfect_power(const PuiseuxPoly& p) {
    std::int64_t degree = 0;
    for (const auto& [e, c] : p.terms()) {
        std::int64_t d = 0;
        for (const auto& [key, x] : e) {
            if (key < 0 || x.denominator() != 1 || x < Exponent(0)) return std::nullopt;
            d += x.numerator();
        }
        degree = std::max(degree, d);
    }
    PuiseuxMonomial lead = p.leading();
    std::int64_t g = 0;
    for (const auto& [key, x] : lead.exponents) g = std::gcd(g, x.numerator());
    for (std::int64_t k = g; k >= 2; --k) {
        if (g % k != 0) continue;
        PuiseuxMonomial top{Gaussian(1), {}};
        for (const auto& [key, x] : lead.exponents) top.exponents.emplace_back(key, x / Exponent(k));
        PuiseuxMonomial scale{Gaussian(Rational(k)), {}};
        for (std::int64_t i = 1; i < k; ++i) scale = multiply(scale, top);
        PuiseuxMonomial step = inverse(scale);
        PuiseuxPoly r(top);
        for (std::size_t iter = 0; iter <= 4 * p.size() + 8; ++iter) {
            PuiseuxPoly rem = p - r.pow(static_cast<unsigned>(k));
            if (rem.is_zero()) return std::make_pair(r, static_cast<int>(k));
            PuiseuxMonomial t = multiply(rem.leading(), step);
            std::int64_t d = 0;
            bool ok = true;
            for (const auto& [key, x] : t.exponents) {
                ok = ok && key > 0 && x.denominator() == 1 && x >= Exponent(0);
                d += x.numerator();
            }
            if (!ok || d * k > degree) break;
            r += PuiseuxPoly(t);
        }
    }
    return std::nullopt;
}

} // namespace

void ScalarField::add_factor(const PuiseuxPoly& factor, int power) {
    if (power == 0) return;
    if (factor.is_zero()) throw Error(ErrorKind::ZeroDivision, "zero denominator factor");
    if (factor.is_monomial()) {
        PuiseuxMonomial m = inverse(factor.as_monomial());
        PuiseuxMonomial acc{Gaussian(1), {}};
        for (int i = 0; i < power; ++i) acc = multiply(acc, m);
        num_ = num_.times(acc);
        return;
    }
    PuiseuxMonomial lead_inv = inverse(factor.leading());
    // store c r^k as r so that numerators can cancel it one power at a time
    if (auto pw = perfect_power(factor.scaled(lead_inv.coefficient))) {
        PuiseuxMonomial c{lead_inv.coefficient, {}};
        for (int i = 0; i < power; ++i) num_ = num_.times(c);
        add_factor(pw->first, power * pw->second);
        return;
    }
    PuiseuxPoly normalized = factor.times(lead_inv);
    PuiseuxMonomial acc{Gaussian(1), {}};
    for (int i = 0; i < power; ++i) acc = multiply(acc, lead_inv);
    num_ = num_.times(acc);
    for (auto& [p, e] : den_) {
        if (p == normalized) {
            e += power;
            return;
        }
    }
    den_.emplace_back(std::move(normalized), power);
    normalize_factors();
}

void ScalarField::normalize_factors() {
    std::sort(den_.begin(), den_.end(), [](const Factor& a, const Factor& b) { return poly_less(a.first, b.first); });
}

PuiseuxPoly ScalarField::denominator() const {
    PuiseuxPoly d(Gaussian(1));
    for (const auto& [p, e] : den_) d = d * p.pow(static_cast<unsigned>(e));
    return d;
}

bool ScalarField::is_constant() const {
    if (!num_.is_constant()) {
        return false;
    }
    return std::all_of(den_.begin(), den_.end(), [](const Factor& f) { return f.first.is_constant(); });
}

bool ScalarField::is_one() const { return (*this - ScalarField(1)).is_zero(); }

bool ScalarField::is_rational_constant(Rational* value) const {
    if (den_.empty()) return num_.is_rational_constant(value);
    ScalarField s = simplified();
    if (!s.den_.empty()) return false;
    return s.num_.is_rational_constant(value);
}

bool ScalarField::depends_on(int alpha) const {
    if (num_.depends_on(alpha)) return true;
    return std::any_of(den_.begin(), den_.end(), [&](const Factor& f) { return f.first.depends_on(alpha); });
}

int ScalarField::max_variable() const {
    int m = num_.max_variable();
    for (const auto& [p, e] : den_) m = std::max(m, p.max_variable());
    return m;
}

ScalarField ScalarField::operator-() const {
    ScalarField out = *this;
    out.num_ = -out.num_;
    return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_.empty() && o.den_.empty()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        if (num_.is_zero()) den_.clear();
        return *this;
    }
    std::vector<Factor> lcm = den_;
    for (const auto& [p, e] : o.den_) {
        auto it = std::find_if(lcm.begin(), lcm.end(), [&](const Factor& f) { return f.first == p; });
        if (it == lcm.end()) {
            lcm.emplace_back(p, e);
        } else {
            it->second = std::max(it->second, e);
        }
    }
    auto cofactor = [&](const std::vector<Factor>& own) {
        PuiseuxPoly c(Gaussian(1));
        for (const auto& [p, e] : lcm) {
            auto it = std::find_if(own.begin(), own.end(), [&](const Factor& f) { return f.first == p; });
            int have = it == own.end() ? 0 : it->second;
            if (e > have) c = c * p.pow(static_cast<unsigned>(e - have));
        }
        return c;
    };
    num_ = num_ * cofactor(den_) + o.num_ * cofactor(o.den_);
    den_ = std::move(lcm);
    normalize_factors();
    if (num_.is_zero()) den_.clear();
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) { return *this += -o; }

ScalarField& ScalarField::operator*=(const ScalarField& o) {
    num_ = num_ * o.num_;
    if (num_.is_zero()) {
        den_.clear();
        return *this;
    }
    for (const auto& [p, e] : o.den_) {
        auto it = std::find_if(den_.begin(), den_.end(), [&](const Factor& f) { return f.first == p; });
        if (it == den_.end()) {
            den_.emplace_back(p, e);
        } else {
            it->second += e;
        }
    }
    normalize_factors();
    return *this;
}

ScalarField& ScalarField::operator/=(const ScalarField& o) { return *this *= o.inv(); }

ScalarField ScalarField::inv() const {
    if (is_zero()) throw Error(ErrorKind::ZeroDivision, "inverse of zero field value");
    ScalarField s = den_.empty() ? *this : simplified();
    ScalarField out(s.denominator());
    out.add_factor(s.num_, 1);
    return out;
}

ScalarField ScalarField::pow(long k) const {
    if (k < 0) return inv().pow(-k);
    ScalarField result(1);
    ScalarField base = *this;
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return result;
}

ScalarField ScalarField::partial(int alpha) const {
    if (den_.empty()) return ScalarField(num_.partial(alpha));
    if (!depends_on(alpha)) return {};
    // d(N / prod P_i^e_i) = (N' prod P_i - N sum e_i P_i' prod_{j!=i} P_j) / prod P_i^(e_i+1)
    std::vector<PuiseuxPoly> derivs;
    bool any = false;
    for (const auto& [p, e] : den_) {
        derivs.push_back(p.partial(alpha));
        any = any || !derivs.back().is_zero();
    }
    if (!any) {
        ScalarField out = *this;
        out.num_ = num_.partial(alpha);
        if (out.num_.is_zero()) out.den_.clear();
        return out;
    }
    PuiseuxPoly prod_all(Gaussian(1));
    std::vector<Factor> new_den;
    for (std::size_t i = 0; i < den_.size(); ++i) {
        if (derivs[i].is_zero()) {
            new_den.push_back(den_[i]);
            continue;
        }
        prod_all = prod_all * den_[i].first;
        new_den.emplace_back(den_[i].first, den_[i].second + 1);
    }
    PuiseuxPoly num = num_.partial(alpha) * prod_all;
    for (std::size_t i = 0; i < den_.size(); ++i) {
        if (derivs[i].is_zero()) continue;
        PuiseuxPoly others(Gaussian(1));
        for (std::size_t j = 0; j < den_.size(); ++j) {
            if (j != i && !derivs[j].is_zero()) others = others * den_[j].first;
        }
        num -= (num_ * derivs[i] * others).scaled(Gaussian(den_[i].second));
    }
    ScalarField out;
    out.num_ = std::move(num);
    if (!out.num_.is_zero()) out.den_ = std::move(new_den);
    return out;
}

std::optional<ScalarField> ScalarField::integrate(int alpha) const {
    ScalarField s = simplified();
    for (const auto& [p, e] : s.den_) {
        if (p.depends_on(alpha)) return std::nullopt;
    }
    auto anti = s.num_.integrate(alpha);
    if (!anti) return std::nullopt;
    ScalarField out = s;
    out.num_ = std::move(*anti);
    if (out.num_.is_zero()) out.den_.clear();
    return out;
}

ScalarField ScalarField::simplified() const {
    ScalarField out;
    out.num_ = num_;
    if (num_.is_zero()) return out;
    for (const auto& [p, e] : den_) {
        int left = e;
        while (left > 0) {
            auto q = PuiseuxPoly::divide_exact(out.num_, p);
            if (!q) break;
            out.num_ = std::move(*q);
            --left;
        }
        if (left > 0) out.den_.emplace_back(p, left);
    }
    return out;
}

std::complex<double> ScalarField::evaluate(const std::vector<std::complex<double>>& point) const {
    std::complex<double> v = num_.evaluate(point);
    if (den_.empty()) return v;
    return v / denominator().evaluate(point);
}

bool operator==(const ScalarField& a, const ScalarField& b) {
    if (a.den_.empty() && b.den_.empty()) return a.num_ == b.num_;
    return (a - b).is_zero();
}

ScalarField root(const ScalarField& value, int n) {
    if (n <= 0) throw Error(ErrorKind::Domain, "root order must be positive");
    if (n == 1 || value.is_zero()) return value;
    ScalarField s = value.simplified();
    if (!s.is_polynomial() || !s.numerator().is_monomial()) {
        throw Error(ErrorKind::UnsupportedSpectrum, "root of a non-monomial field value");
    }
    PuiseuxMonomial m = s.numerator().as_monomial();
    PuiseuxMonomial out{Gaussian(1), {}};
    for (const auto& [k, e] : m.exponents) out.exponents.emplace_back(k, e / Exponent(n));
    out = multiply(PuiseuxMonomial{Gaussian(1), {}}, out);

    const Gaussian& c = m.coefficient;
    if (!c.is_real()) {
        Gaussian r;
        if (n != 2 || !exact_sqrt(c, r)) {
            throw Error(ErrorKind::UnsupportedSpectrum, "root of non-real coefficient " + c.to_string());
        }
        out.coefficient = out.coefficient * r;
        return ScalarField(PuiseuxPoly(out));
    }
    Rational q = c.re();
    Gaussian sign(1);
    if (sgn(q) < 0) {
        if (n % 2 == 1) {
            sign = Gaussian(-1);
        } else if (n == 2) {
            sign = Gaussian::i();
        } else {
            throw Error(ErrorKind::UnsupportedSpectrum, "even root of a negative constant");
        }
        q = -q;
    }
    auto attach = [&](const Integer& value, long direction) {
        for (const auto& [p, mult] : factor_integer(value)) {
            if (!p.fits_sint_p() || p > INT_MAX) {
                throw Error(ErrorKind::UnsupportedSpectrum, "radical base too large");
            }
            int key = -static_cast<int>(p.get_si());
            out = multiply(out, PuiseuxMonomial{Gaussian(1), {{key, Exponent(direction * mult, n)}}});
        }
    };
    attach(q.get_num(), 1);
    attach(q.get_den(), -1);
    out.coefficient = out.coefficient * sign;
    return ScalarField(PuiseuxPoly(out));
}

ScalarField rational(long num, long den) { return ScalarField(make_rational(num, den)); }

ScalarField sqrt_of(long value) { return root(ScalarField(value), 2); }

} // namespace darboux
