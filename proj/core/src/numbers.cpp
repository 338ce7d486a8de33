#include "darboux/numbers.hpp"

#include "darboux/error.hpp"

#include <sstream>

namespace darboux {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ZeroDivision: return "ZeroDivision";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularForm: return "SingularForm";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::UnsupportedSpectrum: return "UnsupportedSpectrum";
    case ErrorKind::UnsupportedAlgebra: return "UnsupportedAlgebra";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::NotParallel: return "NotParallel";
    case ErrorKind::NotFlat: return "NotFlat";
    case ErrorKind::NonInvertibleStep: return "NonInvertibleStep";
    case ErrorKind::ChainBroken: return "ChainBroken";
    case ErrorKind::NoUnity: return "NoUnity";
    case ErrorKind::WrongAlgebra: return "WrongAlgebra";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::Unclassifiable: return "Unclassifiable";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Domain: return "Domain";
    }
    return "Unknown";
}

Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Exponent& e) {
    if (e.denominator() == 1) return std::to_string(e.numerator());
    return std::to_string(e.numerator()) + "/" + std::to_string(e.denominator());
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
    if (o.is_zero()) throw Error(ErrorKind::ZeroDivision, "division of a Gaussian rational by zero");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    Rational n = o.norm();
    Gaussian num = *this * o.conj();
    re_ = num.re_ / n;
    im_ = num.im_ / n;
    return *this;
}

std::string Gaussian::to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::ostringstream os;
    if (sgn(re_) == 0) {
        if (im_ == 1) return "i";
        if (im_ == -1) return "-i";
        os << im_.get_str() << "*i";
        return os.str();
    }
    os << "(" << re_.get_str();
    if (sgn(im_) > 0) os << "+";
    if (im_ == 1) os << "i";
    else if (im_ == -1) os << "-i";
    else os << im_.get_str() << "*i";
    os << ")";
    return os.str();
}

Gaussian pow(const Gaussian& base, std::int64_t k) {
    if (k < 0) return pow(Gaussian(1) / base, -k);
    Gaussian result(1);
    Gaussian b = base;
    while (k > 0) {
        if (k & 1) result *= b;
        b *= b;
        k >>= 1;
    }
    return result;
}

std::vector<std::pair<Integer, long>> factor_integer(const Integer& n) {
    std::vector<std::pair<Integer, long>> out;
    Integer m = abs(n);
    if (m <= 1) return out;
    constexpr unsigned long kTrialBound = 100000;
    for (unsigned long p = 2; p <= kTrialBound && p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
        long mult = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++mult;
        }
        out.emplace_back(Integer(p), mult);
    }
    if (m > 1) {
        if (mpz_probab_prime_p(m.get_mpz_t(), 30) == 0) {
            throw Error(ErrorKind::UnsupportedSpectrum,
                        "cannot factor integer " + n.get_str() + " for an exact radical");
        }
        out.emplace_back(m, 1);
    }
    return out;
}

namespace {

bool rational_sqrt(const Rational& q, Rational& root) {
    if (sgn(q) < 0) return false;
    Integer num = q.get_num();
    Integer den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
        return false;
    }
    Integer rn;
    Integer rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

} // namespace

bool exact_sqrt(const Gaussian& value, Gaussian& root) {
    if (value.is_real()) {
        Rational r;
        if (sgn(value.re()) >= 0) {
            if (!rational_sqrt(value.re(), r)) return false;
            root = Gaussian(r);
            return true;
        }
        if (!rational_sqrt(-value.re(), r)) return false;
        root = Gaussian(Rational(0), r);
        return true;
    }
    // (x + iy)^2 = a + ib  =>  x^2 = (a + |v|)/2, y = b/(2x)
    Rational modulus;
    if (!rational_sqrt(value.norm(), modulus)) return false;
    Rational x2 = (value.re() + modulus) / 2;
    Rational x;
    if (!rational_sqrt(x2, x) || sgn(x) == 0) return false;
    Rational y = value.im() / (2 * x);
    root = Gaussian(x, y);
    return true;
}

} // namespace darboux
