#pragma once

#include <gmpxx.h>

#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace darboux {

using Integer = mpz_class;
using Rational = mpq_class;

// Exponents of field variables and radical constants stay tiny; a 64-bit
// rational is plenty.
using Exponent = boost::rational<std::int64_t>;

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& q);
std::string to_string(const Exponent& e);

// Exact Gaussian rational re + im*i.
class Gaussian {
public:
    Gaussian() = default;
    Gaussian(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
    Gaussian(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
    Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Gaussian i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Gaussian conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    Gaussian operator-() const { return {-re_, -im_}; }
    Gaussian& operator+=(const Gaussian& o);
    Gaussian& operator-=(const Gaussian& o);
    Gaussian& operator*=(const Gaussian& o);
    Gaussian& operator/=(const Gaussian& o);

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
    std::string to_string() const;

private:
    Rational re_{0};
    Rational im_{0};
};

Gaussian pow(const Gaussian& base, std::int64_t k);

inline bool vanishes(const Rational& q) { return sgn(q) == 0; }
inline bool vanishes(const Gaussian& g) { return g.is_zero(); }

// Factorization of |n| into (prime, multiplicity) pairs.  Trial division up
// to a fixed bound; a remaining cofactor is accepted only when GMP reports it
// as a probable prime, otherwise Error(UnsupportedSpectrum) is raised.
std::vector<std::pair<Integer, long>> factor_integer(const Integer& n);

// Exact square root of a Gaussian rational when it exists inside Q(i).
bool exact_sqrt(const Gaussian& value, Gaussian& root);

} // namespace darboux
