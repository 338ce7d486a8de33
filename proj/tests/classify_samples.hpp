#pragma once

// Random admissible normal-form parameters and coordinate changes.

#include "darboux/classify2d.hpp"

#include <random>

namespace darboux::testing {

inline ScalarField make_rational_field(long p, long r = 1) { return ScalarField(make_rational(p, r)); }

inline Rational rational_value(const ScalarField& x) {
    Rational v;
    if (!x.simplified().is_rational_constant(&v)) throw Error(ErrorKind::Domain, "expected a rational constant");
    return v;
}

// Nonzero small rationals, optionally with a fixed sign.
struct Sampler {
    std::mt19937 rng{20261019};
    ScalarField nonzero() {
        std::uniform_int_distribution<long> num(1, 7), den(1, 3), sign(0, 1);
        long p = num(rng) * (sign(rng) ? 1 : -1);
        return make_rational_field(p, den(rng));
    }
    ScalarField any() { return std::uniform_int_distribution<int>(0, 4)(rng) == 0 ? make_rational_field(0) : nonzero(); }
    RMatrix invertible() {
        std::uniform_int_distribution<long> e(-3, 3);
        for (;;) {
            RMatrix m(2, 2);
            for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = Rational(e(rng));
            if (sgn(Rational(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0))) != 0) return m;
        }
    }
    std::vector<Rational> shift() {
        std::uniform_int_distribution<long> e(-4, 4);
        return {Rational(e(rng)), make_rational(e(rng), 2)};
    }
};

// Admissible canonical parameters for each family.
inline std::vector<ScalarField> sample_params(const std::string& f, Sampler& s) {
    for (;;) {
        std::vector<ScalarField> v;
        for (std::size_t i = 0; i < family_parameters(f).size(); ++i) v.push_back(s.nonzero());
        if (f == "05") v[1] = make_rational_field(std::abs(rational_value(v[1]).get_num().get_si()), 1);
        if (f == "01" || f == "03") {
            if (rational_value(v[1]) < rational_value(v[0])) std::swap(v[0], v[1]);
        }
        if (f == "41" && (rational_value(v[3]) < rational_value(v[2]) || (rational_value(v[3]) == rational_value(v[2]) && rational_value(v[1]) < rational_value(v[0])))) {
            std::swap(v[0], v[1]);
            std::swap(v[2], v[3]);
        }
        if (f == "51" && rational_value(v[2]) < 0) v[2] = -v[2];
        if (f == "04" || f == "21" || f == "31" || f == "05") {
            // the second parameter of these families may vanish
            if (v.size() > 1 && f != "05") v[1] = s.any();
        }
        try {
            auto nf = make_normal_form(f, v);
            if (is_canonical(nf)) return v;
        } catch (const Error&) {
        }
    }
}

} // namespace darboux::testing
