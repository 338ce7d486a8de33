#pragma once

#include "darboux/frobenius.hpp"
#include "darboux/jetpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace darboux {

using DMatrix = Matrix<DiffPoly>;

// Three-index array of field values, 0-based.  Used for Gamma^b_{qs}
// (lower) and Gamma^{ab}_s (upper) alike.
class Connection {
public:
    Connection() = default;
    explicit Connection(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n)) {}

    int n() const { return n_; }
    ScalarField& operator()(int i, int j, int k) { return data_[static_cast<std::size_t>((i * n_ + j) * n_ + k)]; }
    const ScalarField& operator()(int i, int j, int k) const {
        return data_[static_cast<std::size_t>((i * n_ + j) * n_ + k)];
    }
    bool is_zero() const;
    Connection simplified() const;
    friend bool operator==(const Connection& a, const Connection& b);

private:
    int n_ = 0;
    std::vector<ScalarField> data_;
};

enum class ChartKind { Constant, Affine, General };

// Contravariant metric g^{ab}(u).  Affine charts keep the constants of
// g = 2(b + a u).
struct MetricChart {
    SMatrix g;
    ChartKind kind = ChartKind::General;
    RMatrix b;
    Tensor3 a;

    int n() const { return g.rows(); }

    static MetricChart constant(const RMatrix& g);
    static MetricChart affine(const RMatrix& b, const Tensor3& a);
    static MetricChart affine(const FrobeniusTriple& t) { return affine(t.b, t.a); }
    // Recognizes constant and affine entries.
    static MetricChart general(const SMatrix& g);
};

struct ChristoffelData {
    Connection upper;  // Gamma^{ab}_s = g^{aq} Gamma^b_{qs}
    Connection lower;  // Gamma^b_{qs}
};

// Levi-Civita symbols of g.
ChristoffelData christoffel(const MetricChart& chart);

// Sum_j coeffs[j] D^j, n x n.
struct HamiltonianOperator {
    int n = 0;
    int k = 0;
    std::vector<DMatrix> coeffs;

    const DMatrix& at(int j) const { return coeffs.at(static_cast<std::size_t>(j)); }
    // coefficient of D^{k-j} homogeneous of differential degree j
    bool graded() const;
    HamiltonianOperator simplified() const;
    friend bool operator==(const HamiltonianOperator& a, const HamiltonianOperator& b);
    friend bool operator!=(const HamiltonianOperator& a, const HamiltonianOperator& b) { return !(a == b); }
    friend HamiltonianOperator operator+(const HamiltonianOperator& a, const HamiltonianOperator& b);
};

HamiltonianOperator zero_operator(int n, int k);

// tau(1)^b_q = -Gamma^b_{qs} u^s_x, tau(j+1)^b_q = tau(1)^m_q tau(j)^b_m + D tau(j)^b_q.
// Entry (b, q) of the result.
DMatrix tau(const Connection& lower, int j);
std::vector<DMatrix> tau_sequence(const Connection& lower, int jmax);

// h D^k + sum_j binom(k, j) h tau(j) D^{k-j}.  Checks that the connection
// is symmetric and flat and that h is parallel.
HamiltonianOperator build_darboux_operator(const SMatrix& h, const Connection& lower, int k);

enum class AVariant { Full, Miura };

// 2(b + a u) D + a u_x, or 2 a u D + a u_x for the Miura variant.
HamiltonianOperator build_A(const FrobeniusTriple& t, AVariant variant = AVariant::Full);
// gD for constant charts, the affine formula for affine ones and the
// first-order Levi-Civita operator otherwise.
HamiltonianOperator build_A(const MetricChart& chart);

HamiltonianOperator build_B(const RMatrix& h, int k);

std::vector<DiffPoly> apply(const HamiltonianOperator& p, const std::vector<DiffPoly>& w);

// delta h1 / delta u^a (P delta h2 / delta u)^a, reduced modulo total derivatives.
DiffPoly bracket(const HamiltonianOperator& p, const DiffPoly& h1, const DiffPoly& h2);

struct CompatibilityReport {
    bool pass = false;
    std::vector<std::string> failures;
    // first nonzero entry of S^{ab}_s (1-based), if any
    std::optional<std::vector<int>> witness;
    std::optional<ScalarField> witness_value;
    Connection S;
    std::optional<FrobeniusTriple> triple;  // read off an affine g
};

// B = h D^k in Darboux coordinates, A the first-order operator of g.
CompatibilityReport compatibility_check(const MetricChart& g, const SMatrix& h, int k);

// u-bar = M u + c.
struct AffineMap {
    RMatrix M;
    std::vector<Rational> c;

    static AffineMap identity(int n);
    AffineMap inverse() const;
    AffineMap then(const AffineMap& next) const;  // next after this
};

// The same with constant field entries, for transforms that need radicals.
struct FieldAffineMap {
    SMatrix M;
    std::vector<ScalarField> c;

    static FieldAffineMap lift(const AffineMap& m);
    FieldAffineMap inverse() const;
    FieldAffineMap then(const FieldAffineMap& next) const;
    // nullopt unless every entry is rational
    std::optional<AffineMap> rational() const;
};

// Coefficients must be polynomial in u (integer exponents).
ScalarField substitute_affine(const ScalarField& f, const AffineMap& inverse_map);
DiffPoly substitute_affine(const DiffPoly& p, const AffineMap& inverse_map);
ScalarField substitute_affine(const ScalarField& f, const FieldAffineMap& inverse_map);
DiffPoly substitute_affine(const DiffPoly& p, const FieldAffineMap& inverse_map);

HamiltonianOperator transform_operator(const HamiltonianOperator& p, const AffineMap& map);
HamiltonianOperator transform_operator(const HamiltonianOperator& p, const FieldAffineMap& map);
FrobeniusTriple transform_triple(const FrobeniusTriple& t, const AffineMap& map);

} // namespace darboux
