#pragma once

#include "darboux/coeffring.hpp"

#include <compare>
#include <map>
#include <optional>
#include <vector>

namespace darboux {

// One factor (u^alpha_{x^order})^power of a jet monomial, order >= 1.
struct JetFactor {
    int alpha;
    int order;
    int power;
    auto operator<=>(const JetFactor&) const = default;
};

// Sorted by (alpha, order); no repeated (alpha, order) pairs.
using JetKey = std::vector<JetFactor>;

int differential_degree(const JetKey& key);

// Finite sum of ScalarField coefficients times jet monomials.
class DiffPoly {
public:
    using Terms = std::map<JetKey, ScalarField>;

    DiffPoly() = default;
    DiffPoly(const ScalarField& c);  // NOLINT(google-explicit-constructor)
    DiffPoly(long c) : DiffPoly(ScalarField(c)) {}  // NOLINT

    // u^alpha for order 0, u^alpha_{x^order} otherwise.
    static DiffPoly jet(int alpha, int order = 0);
    static DiffPoly monomial(const ScalarField& c, JetKey key);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Coefficient of the pure function part (empty jet key).
    ScalarField degree_zero_part() const;
    bool is_homogeneous(int degree) const;
    int max_order() const;
    int max_variable() const;
    bool depends_on_jet(int alpha, int order) const;

    DiffPoly operator-() const;
    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    DiffPoly scaled(const ScalarField& c) const;
    DiffPoly pow(unsigned k) const;

    // Partial derivative in u^alpha_{x^order}; order 0 differentiates coefficients.
    DiffPoly partial(int alpha, int order) const;

    // Coefficients run through ScalarField::simplified().
    DiffPoly simplified() const;

    friend bool operator==(const DiffPoly& a, const DiffPoly& b);
    friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

private:
    void add_term(const JetKey& key, const ScalarField& c);
    Terms terms_;
};

inline bool vanishes(const DiffPoly& p) { return p.is_zero(); }

DiffPoly total_derivative(const DiffPoly& p);
DiffPoly total_derivative(const DiffPoly& p, int times);

// Euler operator sum_j (-D)^j dp/du^alpha_{x^j}.
DiffPoly variational_derivative(const DiffPoly& p, int alpha);
std::vector<DiffPoly> variational_gradient(const DiffPoly& p, int n);

struct ExactnessResult {
    bool exact = false;
    // q with D(q) = p when the highest-jet extraction succeeds.
    std::optional<DiffPoly> witness;
};

// Exact iff every Euler derivative vanishes and there is no pure-constant part.
ExactnessResult is_total_derivative(const DiffPoly& p, int n = 0);

// p and q define the same functional.
bool functionally_equal(const DiffPoly& p, const DiffPoly& q, int n = 0);

std::map<int, DiffPoly> homogeneous_split(const DiffPoly& p);

// Integrates by parts until no term is linear in its top jet u^a_m (highest
// order, then highest a) with an antiderivative that stays below that jet.
// The result differs from p by a total derivative.
DiffPoly reduce_modulo_derivatives(const DiffPoly& p);

// Components v_1, v_2, ... of a formal series, indexed from 1.
struct DensitySeries {
    std::vector<DiffPoly> components;

    const DiffPoly& at(int i) const { return components.at(static_cast<std::size_t>(i - 1)); }
    DiffPoly& at(int i) { return components.at(static_cast<std::size_t>(i - 1)); }
    int size() const { return static_cast<int>(components.size()); }
    // component i is zero or homogeneous of degree i - 1
    bool graded() const;
};

} // namespace darboux
