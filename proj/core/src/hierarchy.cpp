#include "darboux/hierarchy.hpp"

#include <sstream>

namespace darboux {

namespace {

ErrorKind kind_of(const TripleFailure& f) {
    if (f.condition == "commutativity") return ErrorKind::NotCommutative;
    if (f.condition == "associativity") return ErrorKind::NotAssociative;
    if (f.condition.find("nondegeneracy") != std::string::npos) return ErrorKind::SingularForm;
    return ErrorKind::Domain;
}

std::vector<DiffPoly> gradient(const DiffPoly& h, int n) { return variational_gradient(h, n); }

std::vector<DiffPoly> difference(const std::vector<DiffPoly>& x, const std::vector<DiffPoly>& y) {
    std::vector<DiffPoly> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - y[i]).simplified();
    return out;
}

bool all_zero(const std::vector<DiffPoly>& v) {
    for (const auto& p : v) {
        if (!p.is_zero()) return false;
    }
    return true;
}

// Tensor entry as a field value, for the hot loops below.
ScalarField entry(const Tensor3& t, int i, int j, int k) { return ScalarField(t(i, j, k)); }

} // namespace

std::vector<Rational> RecursionProblem::shift() const {
    std::vector<Rational> s(static_cast<std::size_t>(n()), Rational(0));
    if (variant == Variant::Full) {
        for (int i = 0; i < n(); ++i) s[i] = f[i] / 2;
    }
    return s;
}

RecursionProblem make_problem(const FrobeniusTriple& t, Variant variant, int branch) {
    if (branch != 1 && branch != -1) throw Error(ErrorKind::Domain, "branch must be +1 or -1");
    TripleReport report = check_triple(t);
    if (!report.ok()) {
        const TripleFailure& f = report.failures.front();
        throw Error(kind_of(f), "not a Frobenius triple: " + f.condition + " " + f.detail);
    }
    RecursionProblem p;
    p.triple = t;
    p.variant = variant;
    p.branch = branch;
    DualAlgebra dual = dual_algebra(t);
    if (!dual.f) {
        throw Error(ErrorKind::UnsupportedAlgebra,
                    variant == Variant::Miura ? "the Miura variant needs an algebra with unity"
                                              : "no unity: the first equation has no algebraic solution");
    }
    p.c = dual.c;
    p.f = *dual.f;
    p.r = r_matrix(t);
    p.l = good_sqrt(p.r.map([](const Rational& x) { return Gaussian(x); }));
    auto li = inverse(p.l.L);
    if (!li) throw Error(ErrorKind::Singular, "square root of r is singular");
    p.l_inverse = li->map([](const ScalarField& x) { return x.simplified(); });
    return p;
}

SMatrix regular_matrix(const Tensor3& c, const std::vector<ScalarField>& x) {
    int n = c.n();
    if (static_cast<int>(x.size()) != n) throw Error(ErrorKind::DimensionMismatch, "vector length");
    SMatrix m(n, n);
    for (int b = 0; b < n; ++b) {
        for (int s = 0; s < n; ++s) {
            ScalarField v;
            for (int p = 0; p < n; ++p) {
                if (!vanishes(c(b, p, s)) && !x[p].is_zero()) v += x[p] * entry(c, b, p, s);
            }
            m(b, s) = v;
        }
    }
    return m;
}

namespace {

// v_1 together with the matrix C(v_1) = L, which the later steps invert.
std::pair<std::vector<ScalarField>, SMatrix> first_component(const RecursionProblem& prob) {
    int n = prob.n();
    std::vector<ScalarField> u;
    for (int a = 1; a <= n; ++a) u.push_back(ScalarField::variable(a));
    SMatrix two_u = regular_matrix(prob.c, u).map([](const ScalarField& x) { return x * ScalarField(2); });
    GoodRoot root;
    try {
        root = good_sqrt(two_u, prob.branch);
    } catch (const Error& e) {
        throw Error(ErrorKind::UnsupportedAlgebra, std::string("no good square root of 2U: ") + e.what());
    }
    std::vector<ScalarField> fs;
    for (const auto& x : prob.f) fs.emplace_back(x);
    std::vector<ScalarField> w = root.L.apply(fs);
    for (auto& x : w) x = x.simplified();

    // c(w, w) / 2 = u
    for (int b = 0; b < n; ++b) {
        ScalarField lhs;
        for (int p = 0; p < n; ++p) {
            for (int s = 0; s < n; ++s) {
                if (!vanishes(prob.c(b, p, s))) lhs += w[p] * w[s] * entry(prob.c, b, p, s);
            }
        }
        if (lhs * ScalarField(Rational(1, 2)) != u[b]) {
            throw Error(ErrorKind::UnsupportedAlgebra, "square root of 2U does not solve c(v, v)/2 = u");
        }
    }
    return {w, root.L};
}

} // namespace

std::vector<ScalarField> solve_v1(const RecursionProblem& prob) {
    auto [w, L] = first_component(prob);
    if (prob.variant == Variant::Full) {
        for (int i = 0; i < prob.n(); ++i) w[i] = (w[i] - ScalarField(prob.f[i])).simplified();
    }
    return w;
}

const DiffPoly& HierarchySolution::component(int alpha, int i) const {
    if (alpha < 1 || alpha > n) throw Error(ErrorKind::DimensionMismatch, "component index out of range");
    if (i < 1 || i > depth()) throw Error(ErrorKind::Domain, "series component " + std::to_string(i) + " not computed");
    return v[static_cast<std::size_t>(alpha - 1)].at(i);
}

std::vector<DiffPoly> HierarchySolution::densities(int alpha) const {
    std::vector<DiffPoly> out;
    for (int i = 1; i <= density_count(); ++i) out.push_back(density(alpha, i));
    return out;
}

HierarchySolution solve_recursion(const RecursionProblem& prob, int i_max) {
    if (i_max < 1) throw Error(ErrorKind::Domain, "i_max must be at least 1");
    int n = prob.n();
    auto [w, L] = first_component(prob);

    auto cinv = inverse(L);
    if (!cinv) {
        std::ostringstream os;
        os << "C(v_1) is singular, det = " << determinant(L).evaluate(std::vector<std::complex<double>>(n, 1.0));
        throw Error(ErrorKind::NonInvertibleStep, os.str());
    }
    SMatrix Ci = cinv->map([](const ScalarField& x) { return x.simplified(); });

    // comps[i-1][b]
    std::vector<std::vector<DiffPoly>> comps;
    comps.emplace_back();
    for (int b = 0; b < n; ++b) comps.back().emplace_back(w[b]);

    for (int i = 2; i <= i_max; ++i) {
        std::vector<DiffPoly> rhs(static_cast<std::size_t>(n));
        for (int j = 2; j <= i - 1; ++j) {
            int k = i + 1 - j;
            if (k < j) break;
            // the pair (j, k) and (k, j) contribute equally unless j == k
            ScalarField weight = j == k ? ScalarField(Rational(-1, 2)) : ScalarField(-1);
            const auto& vj = comps[j - 1];
            const auto& vk = comps[k - 1];
            for (int b = 0; b < n; ++b) {
                for (int p = 0; p < n; ++p) {
                    if (vj[p].is_zero()) continue;
                    for (int s = 0; s < n; ++s) {
                        if (vanishes(prob.c(b, p, s)) || vk[s].is_zero()) continue;
                        rhs[b] += (vj[p] * vk[s]).scaled(weight * entry(prob.c, b, p, s));
                    }
                }
            }
        }
        std::vector<DiffPoly> dprev;
        for (const auto& x : comps[i - 2]) dprev.push_back(total_derivative(x));
        for (int b = 0; b < n; ++b) {
            for (int s = 0; s < n; ++s) {
                if (!prob.l.L(b, s).is_zero() && !dprev[s].is_zero()) rhs[b] -= dprev[s].scaled(prob.l.L(b, s));
            }
        }
        std::vector<DiffPoly> next(static_cast<std::size_t>(n));
        for (int b = 0; b < n; ++b) {
            for (int q = 0; q < n; ++q) {
                if (!Ci(b, q).is_zero() && !rhs[q].is_zero()) next[b] += rhs[q].scaled(Ci(b, q));
            }
            next[b] = next[b].simplified();
            if (!next[b].is_zero() && !next[b].is_homogeneous(i - 1)) {
                throw Error(ErrorKind::Domain, "series component " + std::to_string(i) + " is not homogeneous");
            }
        }
        comps.push_back(std::move(next));
    }

    HierarchySolution sol;
    sol.n = n;
    sol.variant = prob.variant;
    sol.shift = prob.shift();
    sol.v.resize(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) {
        for (const auto& level : comps) sol.v[b].components.push_back(level[b]);
    }
    if (prob.variant == Variant::Full) {
        for (int b = 0; b < n; ++b) sol.v[b].at(1) = (sol.v[b].at(1) - DiffPoly(ScalarField(prob.f[b]))).simplified();
    }
    return sol;
}

ChainOperators chain_operators(const RecursionProblem& prob) {
    return {build_A(prob.triple, AVariant::Miura), build_B(prob.triple.h, 3)};
}

void ChainReport::require() const {
    if (!failure) return;
    std::ostringstream os;
    os << failure->what << " at";
    if (failure->alpha > 0) os << " alpha = " << failure->alpha << ",";
    os << " i = " << failure->i;
    throw Error(ErrorKind::ChainBroken, os.str());
}

ChainReport verify_densities(const std::vector<DiffPoly>& H, const HamiltonianOperator& A, const HamiltonianOperator& B,
                             int depth, int alpha) {
    if (A.n != B.n) throw Error(ErrorKind::DimensionMismatch, "operator sizes differ");
    if (static_cast<int>(H.size()) < depth + 1) {
        throw Error(ErrorKind::Domain, "chain of depth " + std::to_string(depth) + " needs " +
                                           std::to_string(depth + 1) + " densities");
    }
    int n = A.n;
    ChainReport rep;
    std::vector<DiffPoly> grad = gradient(H[0], n);
    std::vector<DiffPoly> a0 = darboux::apply(A, grad);
    for (auto& x : a0) x = x.simplified();
    ++rep.checks;
    if (!all_zero(a0)) {
        rep.failure = ChainFailure{alpha, 0, "A(dH_1) != 0", a0};
        return rep;
    }
    for (int i = 1; i <= depth; ++i) {
        std::vector<DiffPoly> next = gradient(H[i], n);
        std::vector<DiffPoly> res = difference(darboux::apply(A, next), darboux::apply(B, grad));
        ++rep.checks;
        if (!all_zero(res)) {
            rep.failure = ChainFailure{alpha, i, "A(dH_{i+1}) != B(dH_i)", res};
            return rep;
        }
        grad = std::move(next);
    }
    return rep;
}

ChainReport verify_chain(const HierarchySolution& sol, const HamiltonianOperator& A, const HamiltonianOperator& B,
                         int depth) {
    if (A.n != sol.n) throw Error(ErrorKind::DimensionMismatch, "operator and solution sizes differ");
    ChainReport total;
    for (int a = 1; a <= sol.n; ++a) {
        for (int i = 2; i <= sol.depth(); i += 2) {
            ++total.checks;
            const DiffPoly& even = sol.component(a, i);
            if (!is_total_derivative(even, sol.n).exact) {
                total.failure = ChainFailure{a, i, "even component is not a total derivative", {even}};
                return total;
            }
        }
        ChainReport r = verify_densities(sol.densities(a), A, B, depth, a);
        total.checks += r.checks;
        if (!r.ok()) {
            total.failure = r.failure;
            return total;
        }
    }
    return total;
}

std::vector<DiffPoly> hd_equation(const HierarchySolution& sol, const HamiltonianOperator& A,
                                  const HamiltonianOperator& B, int alpha, int i) {
    if (i < 0) throw Error(ErrorKind::Domain, "flow index must be non-negative");
    if (i == 0) return std::vector<DiffPoly>(static_cast<std::size_t>(sol.n));
    std::vector<DiffPoly> H = sol.densities(alpha);
    if (static_cast<int>(H.size()) < i) throw Error(ErrorKind::Domain, "density " + std::to_string(i) + " not computed");
    int depth = std::min(i, static_cast<int>(H.size()) - 1);
    verify_densities(H, A, B, depth, alpha).require();
    std::vector<DiffPoly> flow = darboux::apply(B, variational_gradient(H[i - 1], sol.n));
    for (auto& x : flow) x = x.simplified();
    return flow;
}

std::vector<DiffPoly> linearization(const std::vector<DiffPoly>& F, const std::vector<DiffPoly>& G) {
    int n = static_cast<int>(G.size());
    int top = 0;
    for (const auto& f : F) top = std::max(top, f.max_order());
    // D^j G^b, shared by every row
    std::vector<std::vector<DiffPoly>> dg(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) {
        dg[b].push_back(G[b]);
        for (int j = 1; j <= top; ++j) dg[b].push_back(total_derivative(dg[b].back()));
    }
    std::vector<DiffPoly> out(F.size());
    for (std::size_t g = 0; g < F.size(); ++g) {
        for (int b = 0; b < n; ++b) {
            for (int j = 0; j <= top; ++j) {
                if (dg[b][j].is_zero()) continue;
                DiffPoly d = F[g].partial(b + 1, j);
                if (!d.is_zero()) out[g] += d * dg[b][j];
            }
        }
        out[g] = out[g].simplified();
    }
    return out;
}

std::vector<DiffPoly> flow_commutator(const std::vector<DiffPoly>& X, const std::vector<DiffPoly>& Y) {
    return difference(linearization(X, Y), linearization(Y, X));
}

HSSystem hs_equation(const FrobeniusTriple& t) {
    int n = t.n;
    if (!unity(t.a)) throw Error(ErrorKind::NoUnity, "the Hunter-Saxton system needs an algebra with unity");
    RMatrix hi = rational_inverse(t.h, ErrorKind::SingularForm, "h");
    HSSystem sys;
    sys.n = n;
    sys.cbar = Tensor3(n);
    for (int al = 0; al < n; ++al) {
        for (int p = 0; p < n; ++p) {
            for (int s = 0; s < n; ++s) {
                Rational v = 0;
                for (int q = 0; q < n; ++q) v += hi(p, q) * t.a(al, q, s);
                sys.cbar(al, p, s) = v;
            }
        }
    }
    std::vector<std::vector<DiffPoly>> jets(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        for (int j = 0; j <= 2; ++j) jets[p].push_back(DiffPoly::jet(p + 1, j));
    }
    for (int al = 0; al < n; ++al) {
        DiffPoly e;
        for (int p = 0; p < n; ++p) {
            for (int s = 0; s < n; ++s) {
                if (vanishes(sys.cbar(al, p, s))) continue;
                DiffPoly term = jets[p][2] * jets[s][0] + jets[p][1] * jets[s][1] + jets[p][0] * jets[s][2];
                e += term.scaled(ScalarField(sys.cbar(al, p, s) / 2));
            }
        }
        sys.equations.push_back(e.simplified());
    }
    return sys;
}

HSMatrixReport hs_matrix_form(const FrobeniusTriple& t) {
    HSSystem sys = hs_equation(t);
    int n = sys.n;
    for (int al = 0; al < n; ++al) {
        for (int p = 0; p < n; ++p) {
            for (int s = 0; s < n; ++s) {
                Rational expect = al == p + s ? 1 : 0;
                if (sys.cbar(al, p, s) != expect) {
                    throw Error(ErrorKind::WrongAlgebra, "cbar is not the t_" + std::to_string(n) + " table");
                }
            }
        }
    }
    // V_{ij} = v^{i-j+1} below the diagonal
    auto toeplitz = [n](int order) {
        DMatrix m(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) m(i, j) = DiffPoly::jet(i - j + 1, order);
        }
        return m;
    };
    DMatrix V = toeplitz(0), Vx = toeplitz(1), Vxx = toeplitz(2);
    DMatrix rhs = Vxx * V;
    DMatrix sq = Vx * Vx;
    HSMatrixReport rep;
    rep.k = n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            DiffPoly entry_ij = (rhs(i, j) + sq(i, j).scaled(ScalarField(Rational(1, 2)))).simplified();
            DiffPoly expect = i >= j ? sys.equations[i - j] : DiffPoly();
            if (entry_ij != expect) {
                rep.mismatches.push_back("entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
            }
        }
    }
    rep.ok = rep.mismatches.empty();
    return rep;
}

HSMatrixReport hs_matrix_form(int k) {
    if (k < 1) throw Error(ErrorKind::WrongAlgebra, "t_k needs k >= 1");
    return hs_matrix_form(builtin_algebra("t" + std::to_string(k)));
}

} // namespace darboux
