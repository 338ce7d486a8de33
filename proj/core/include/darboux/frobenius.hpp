#pragma once

#include "darboux/coeffring.hpp"
#include "darboux/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace darboux {

using RMatrix = Matrix<Rational>;
using GMatrix = Matrix<Gaussian>;
using SMatrix = Matrix<ScalarField>;

// Three-index constant array with 0-based indices.  For the algebra a it is
// read as a^{ij}_k, for the dual algebra c as c^i_{jk}.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n), Rational(0)) {}

    int n() const { return n_; }
    Rational& operator()(int i, int j, int k) { return data_[static_cast<std::size_t>((i * n_ + j) * n_ + k)]; }
    const Rational& operator()(int i, int j, int k) const {
        return data_[static_cast<std::size_t>((i * n_ + j) * n_ + k)];
    }
    bool is_zero() const;
    friend bool operator==(const Tensor3& x, const Tensor3& y) { return x.n_ == y.n_ && x.data_ == y.data_; }

private:
    int n_ = 0;
    std::vector<Rational> data_;
};

struct FrobeniusTriple {
    int n = 0;
    Tensor3 a;  // a^{ab}_s
    RMatrix b;  // b^{ab}
    RMatrix h;  // h^{ab}
};

struct TripleFailure {
    std::string condition;     // commutativity, associativity, b-invariance, ...
    std::vector<int> indices;  // 1-based witness
    std::string detail;
};

struct TripleReport {
    std::vector<TripleFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Every violated identity of a Frobenius triple, with a witness index tuple.
TripleReport check_triple(const FrobeniusTriple& t);

// Solves a^{aq}_s e_q = delta^a_s.
std::optional<std::vector<Rational>> unity(const Tensor3& a);

struct DualAlgebra {
    Tensor3 c;                             // c^b_{ps} = 1/2 b_{pq} a^{qb}_s
    std::optional<std::vector<Rational>> f;  // f^p = 2 b^{pq} e_q
};

DualAlgebra dual_algebra(const FrobeniusTriple& t);

// r^b_p = 1/2 h^{bq} b_{qp}
RMatrix r_matrix(const FrobeniusTriple& t);

// L = p(R), L^2 = R.  p holds the coefficients of p(t) from t^0 upwards.
struct GoodRoot {
    SMatrix L;
    std::vector<ScalarField> p;
};

// Supported: R = lambda (I + N) with N nilpotent, block-diagonal combinations
// of such blocks, and diagonalizable constant blocks whose spectrum lies in
// Q(i).  branch = -1 selects -L.  Both postconditions are verified.
GoodRoot good_sqrt(const GMatrix& r, int branch = 1);
GoodRoot good_sqrt(const SMatrix& r, int branch = 1);

// Named algebras: "t1", "t2", ... (basis in which the dual algebra has the
// t_n multiplication table) and "example4d".
FrobeniusTriple builtin_algebra(const std::string& name);
std::vector<std::string> builtin_names();

// t_n in the basis where eta^i * eta^j = eta^{i+j-1}; 2b = h.
FrobeniusTriple tn_defining(int n);

FrobeniusTriple direct_sum(const FrobeniusTriple& x, const FrobeniusTriple& y);

// The same triple in coordinates ubar = M u.
FrobeniusTriple transform(const FrobeniusTriple& t, const RMatrix& m);

RMatrix rational_inverse(const RMatrix& m, ErrorKind on_singular, const std::string& what);

// m^b_r c^r_{ps} = c^b_{pr} m^r_s = m^r_p c^b_{rs}
bool intertwines(const Tensor3& c, const SMatrix& m);

// b^{ab} = a^{ab}_s m^s with m^s = b^{qs} e_q, and the same for h.
bool forms_are_exact(const FrobeniusTriple& t);

Rational binomial_half(const Rational& alpha, int i);

} // namespace darboux
