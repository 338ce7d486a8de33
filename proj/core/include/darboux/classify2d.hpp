#pragma once

#include "darboux/frobenius.hpp"
#include "darboux/hamops.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace darboux {

// Two-dimensional commutative associative algebras, in the basis where
//   a1: e2 e2 = e2          a2: e2 e2 = e1          a3: e2 e2 = e2, e1 e2 = e1
//   a4: e1 e1 = e1, e2 e2 = e2                      a5: e2 e2 = e2, e1 e1 = -e2, e1 e2 = e1
enum class AlgebraTag { a0, a1, a2, a3, a4, a5 };

std::string to_string(AlgebraTag tag);

// Decided by invariants: zero product, then unity.  Unital algebras split by
// the sign of the discriminant of x * x = p x + q e for any x outside the
// span of e (positive a4, zero a3, negative a5); non-unital ones by
// nilpotency (a2) versus a nonzero idempotent (a1).
AlgebraTag identify_algebra(const Tensor3& a);

// Triple with field-valued forms; a stays rational in every normal form.
struct FieldTriple {
    Tensor3 a;
    SMatrix b;
    SMatrix h;
};

struct NormalForm2D {
    std::string family;  // "01" ... "51"
    AlgebraTag algebra = AlgebraTag::a0;
    std::vector<std::pair<std::string, ScalarField>> params;  // subset of h1, h2, b1, b2 in that order
    FieldAffineMap transform;  // canonical coordinates = M u + c

    const ScalarField& param(const std::string& name) const;
    bool same_class(const NormalForm2D& o) const { return family == o.family && params == o.params; }
};

std::vector<std::string> family_names();
std::vector<std::string> family_parameters(const std::string& family);
AlgebraTag family_algebra(const std::string& family);

// Raises UnknownName for a bad family, Domain for a missing parameter and
// Degenerate when a form of the normal form is singular.
NormalForm2D make_normal_form(const std::string& family, const std::vector<ScalarField>& values);

// Whether the parameters are the representative normalize() picks:
// 01/03 h1 <= h2, 05 h2 > 0, 41 (b1, h1) <= (b2, h2), 51 (b1, h1) >= 0 lexicographically.
bool is_canonical(const NormalForm2D& nf);

// The displayed data: for a = 0 families b is half the matrix in front of D.
FieldTriple canonical_triple(const NormalForm2D& nf);

// h D^3 + 2(b + a u) D + a u_x
HamiltonianOperator rebuild(const NormalForm2D& nf);

// Canonical coordinates are centered at point (the origin by default).
// Raises Degenerate for singular forms, UnsupportedSpectrum when a transform
// entry leaves the radical class, and Unclassifiable for the pair with a
// Jordan block of negative sign, which has no family in the list.
NormalForm2D normalize(const FrobeniusTriple& t, const std::vector<Rational>& point = {});
NormalForm2D normalize(const HamiltonianOperator& p, const std::vector<Rational>& point = {});

// Reads h D^3 + g D + a u_x with affine g = 2(b + a u).
FrobeniusTriple triple_from_operator(const HamiltonianOperator& p);

// The triple in coordinates M u + c; a must come out rational.
FieldTriple transform_field(const FrobeniusTriple& t, const FieldAffineMap& map);

} // namespace darboux
