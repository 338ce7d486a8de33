#pragma once

#include "darboux/numbers.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace darboux {

// Sparse exponent vector of a Puiseux monomial, sorted by key.
//   key > 0 : field variable u^key, any rational exponent except 0
//   key < 0 : radical constant with base -key (a prime), exponent in (0, 1)
// Integer powers of radical bases are always folded into the coefficient, so
// every exponent map has a unique reduced form.
using ExponentMap = std::vector<std::pair<int, Exponent>>;

// Term order: dense lexicographic on the field variables (u^1 most
// significant), ties broken by dense lexicographic order on radical bases.
// Iteration over a PuiseuxPoly therefore visits terms in increasing order;
// renderers print them in decreasing order.
struct MonomialOrder {
    bool operator()(const ExponentMap& a, const ExponentMap& b) const;
};

struct PuiseuxMonomial {
    Gaussian coefficient;
    ExponentMap exponents;
};

// Multiplies two monomials, reducing radical exponents into [0, 1).
PuiseuxMonomial multiply(const PuiseuxMonomial& a, const PuiseuxMonomial& b);
PuiseuxMonomial inverse(const PuiseuxMonomial& m);

// Finite Gaussian-rational combination of Puiseux monomials.
class PuiseuxPoly {
public:
    using Terms = std::map<ExponentMap, Gaussian, MonomialOrder>;

    PuiseuxPoly() = default;
    explicit PuiseuxPoly(const Gaussian& constant);
    explicit PuiseuxPoly(const PuiseuxMonomial& m);

    static PuiseuxPoly variable(int alpha, Exponent power = Exponent(1));

    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const;  // no field variables; radicals allowed
    bool is_rational_constant(Rational* value = nullptr) const;
    bool depends_on(int alpha) const;
    int max_variable() const;  // 0 for constants

    PuiseuxMonomial leading() const;  // largest term in MonomialOrder
    PuiseuxMonomial as_monomial() const;  // requires is_monomial()

    void add_term(const PuiseuxMonomial& m);
    void add_term(const ExponentMap& e, const Gaussian& c);

    PuiseuxPoly operator-() const;
    PuiseuxPoly& operator+=(const PuiseuxPoly& o);
    PuiseuxPoly& operator-=(const PuiseuxPoly& o);
    friend PuiseuxPoly operator+(PuiseuxPoly a, const PuiseuxPoly& b) { return a += b; }
    friend PuiseuxPoly operator-(PuiseuxPoly a, const PuiseuxPoly& b) { return a -= b; }
    friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b);
    PuiseuxPoly times(const PuiseuxMonomial& m) const;
    PuiseuxPoly scaled(const Gaussian& c) const;
    PuiseuxPoly pow(unsigned k) const;

    PuiseuxPoly partial(int alpha) const;

    // Antiderivative in u^alpha; nullopt when an exponent -1 would need a log.
    std::optional<PuiseuxPoly> integrate(int alpha) const;

    // q with q * divisor == *this, if such a Puiseux polynomial exists and the
    // bounded division search finds it.
    static std::optional<PuiseuxPoly> divide_exact(const PuiseuxPoly& dividend,
                                                   const PuiseuxPoly& divisor);

    std::complex<double> evaluate(const std::vector<std::complex<double>>& point) const;

    friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const PuiseuxPoly& a, const PuiseuxPoly& b) { return !(a == b); }

private:
    Terms terms_;
};

// Strict weak ordering used to keep denominator factor lists canonical.
bool poly_less(const PuiseuxPoly& a, const PuiseuxPoly& b);

// Exact fraction of Puiseux polynomials.  The denominator is kept as a
// product of non-monomial factors raised to positive powers; monomial parts
// are always folded into the numerator (Puiseux monomials are units).  Each
// factor is normalized to have leading term exactly 1.  Fractions are not
// gcd-reduced; equality is decided by cross-multiplication.
class ScalarField {
public:
    using Factor = std::pair<PuiseuxPoly, int>;

    ScalarField() = default;
    ScalarField(long c) : num_(Gaussian(c)) {}  // NOLINT(google-explicit-constructor)
    ScalarField(const Gaussian& c) : num_(c) {}  // NOLINT
    ScalarField(const Rational& c) : num_(Gaussian(c)) {}  // NOLINT
    explicit ScalarField(PuiseuxPoly num) : num_(std::move(num)) {}

    static ScalarField variable(int alpha, Exponent power = Exponent(1));
    static ScalarField fraction(const PuiseuxPoly& num, const PuiseuxPoly& den);

    const PuiseuxPoly& numerator() const { return num_; }
    const std::vector<Factor>& denominator_factors() const { return den_; }
    PuiseuxPoly denominator() const;  // expanded product

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    bool is_rational_constant(Rational* value = nullptr) const;
    bool depends_on(int alpha) const;
    int max_variable() const;

    ScalarField operator-() const;
    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(const ScalarField& o);
    ScalarField& operator/=(const ScalarField& o);
    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
    friend ScalarField operator/(ScalarField a, const ScalarField& b) { return a /= b; }

    ScalarField inv() const;
    ScalarField pow(long k) const;
    ScalarField partial(int alpha) const;
    std::optional<ScalarField> integrate(int alpha) const;

    // Cancels denominator factors that divide the numerator exactly.
    ScalarField simplified() const;

    std::complex<double> evaluate(const std::vector<std::complex<double>>& point) const;
    std::complex<double> to_complex() const { return evaluate({}); }

    friend bool operator==(const ScalarField& a, const ScalarField& b);
    friend bool operator!=(const ScalarField& a, const ScalarField& b) { return !(a == b); }

private:
    void add_factor(const PuiseuxPoly& factor, int power);
    void normalize_factors();

    PuiseuxPoly num_;
    std::vector<Factor> den_;
};

inline bool vanishes(const ScalarField& f) { return f.is_zero(); }

// Free-function spellings of the ring operations.
inline ScalarField sf_add(const ScalarField& f, const ScalarField& g) { return f + g; }
inline ScalarField sf_mul(const ScalarField& f, const ScalarField& g) { return f * g; }
inline ScalarField sf_inv(const ScalarField& f) { return f.inv(); }
inline ScalarField sf_partial(const ScalarField& f, int alpha) { return f.partial(alpha); }

// Principal n-th root of a single-monomial field value c * prod p^e * prod u^f.
// Rational coefficients get radical constants; negative values under an odd
// root keep their sign, under a square root pick up a factor i.  Raises
// UnsupportedSpectrum when the root leaves the representable class.
ScalarField root(const ScalarField& value, int n);

// Convenience constructors.
ScalarField rational(long num, long den = 1);
ScalarField sqrt_of(long value);

} // namespace darboux
