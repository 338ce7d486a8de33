#pragma once

#include "darboux/frobenius.hpp"
#include "darboux/hamops.hpp"
#include "darboux/jetpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace darboux {

// Full: u = v + c(v,v)/2 + l v_x.  Miura: u = c(v,v)/2 + l v_x.
enum class Variant { Full, Miura };

struct RecursionProblem {
    FrobeniusTriple triple;
    Tensor3 c;                 // c^b_{ps}
    std::vector<Rational> f;   // unity of c
    RMatrix r;
    GoodRoot l;                // good square root of r
    SMatrix l_inverse;
    Variant variant = Variant::Miura;
    int branch = 1;

    int n() const { return triple.n; }
    // The full variant is solved in the shifted coordinates u + f/2, where
    // its first-order operator coincides with the Miura one.  Densities and
    // flows of a solution are written in the coordinates u + shift().
    std::vector<Rational> shift() const;
};

// Validates the triple and derives c, f, r and l.  Raises UnsupportedAlgebra
// when the dual algebra has no unity.
RecursionProblem make_problem(const FrobeniusTriple& t, Variant variant = Variant::Miura, int branch = 1);

// The regular representation U^b_s = c^b_{ps} u^p.
SMatrix regular_matrix(const Tensor3& c, const std::vector<ScalarField>& x);

// v_1 with c(v_1, v_1)/2 = u (shifted coordinates for the full variant).
std::vector<ScalarField> solve_v1(const RecursionProblem& prob);

struct HierarchySolution {
    int n = 0;
    Variant variant = Variant::Miura;
    std::vector<Rational> shift;
    std::vector<DensitySeries> v;  // v[alpha - 1].at(i)

    int depth() const { return v.empty() ? 0 : v.front().size(); }
    const DiffPoly& component(int alpha, int i) const;
    // h^alpha_i = v^alpha_{2i-1}
    const DiffPoly& density(int alpha, int i) const { return component(alpha, 2 * i - 1); }
    int density_count() const { return (depth() + 1) / 2; }
    std::vector<DiffPoly> densities(int alpha) const;
};

// Components v_1 .. v_{i_max}.
HierarchySolution solve_recursion(const RecursionProblem& prob, int i_max);

struct ChainOperators {
    HamiltonianOperator A;
    HamiltonianOperator B;
};

// 2 a u D + a u_x and h D^3, in the coordinates of the solution.
ChainOperators chain_operators(const RecursionProblem& prob);

struct ChainFailure {
    int alpha = 0;  // 0 for a bare density list
    int i = 0;
    std::string what;
    std::vector<DiffPoly> residual;
};

struct ChainReport {
    int checks = 0;
    std::optional<ChainFailure> failure;
    bool ok() const { return !failure; }
    // Raises ChainBroken on failure.
    void require() const;
};

// A(dH_1) = 0 and A(dH_{i+1}) = B(dH_i) for i <= depth.
ChainReport verify_densities(const std::vector<DiffPoly>& H, const HamiltonianOperator& A,
                             const HamiltonianOperator& B, int depth, int alpha = 0);

// The chain for every alpha, plus exactness of the even components.
ChainReport verify_chain(const HierarchySolution& sol, const HamiltonianOperator& A, const HamiltonianOperator& B,
                         int depth);

// B(dH_i); zero for i = 0.
std::vector<DiffPoly> hd_equation(const HierarchySolution& sol, const HamiltonianOperator& A,
                                  const HamiltonianOperator& B, int alpha, int i);

// Sum_{b,j} dF^g/du^b_j D^j G^b
std::vector<DiffPoly> linearization(const std::vector<DiffPoly>& F, const std::vector<DiffPoly>& G);
// X_*(Y) - Y_*(X)
std::vector<DiffPoly> flow_commutator(const std::vector<DiffPoly>& X, const std::vector<DiffPoly>& Y);

// v^a_{xt} = cbar^a_{ps} (v^p_xx v^s + v^p_x v^s_x + v^p v^s_xx) / 2; the
// equations are polynomials in v-jets (printed with the letter v).
struct HSSystem {
    int n = 0;
    Tensor3 cbar;  // h_{pq} a^{aq}_s
    std::vector<DiffPoly> equations;
};

HSSystem hs_equation(const FrobeniusTriple& t);

struct HSMatrixReport {
    int k = 0;
    bool ok = false;
    std::vector<std::string> mismatches;
};

// Compares hs_equation with V_xt = V_xx V + V_x^2 / 2 for the lower-triangular
// Toeplitz V.  Raises WrongAlgebra unless cbar is the t_k table.
HSMatrixReport hs_matrix_form(const FrobeniusTriple& t);
HSMatrixReport hs_matrix_form(int k);

} // namespace darboux
