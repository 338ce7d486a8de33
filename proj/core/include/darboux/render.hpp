#pragma once

#include "darboux/classify2d.hpp"
#include "darboux/hamops.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace darboux {

using Json = nlohmann::json;

enum class Format { Text, Latex };

struct RenderOptions {
    Format format = Format::Text;
    char letter = 'u';  // v for Hunter-Saxton output
};

// Terms print in decreasing term order.  Text writes u^1_xx and (u^1)^(1/2),
// LaTeX writes u^{1}_{xx} and (u^{1})^{\frac{1}{2}}; radical constants print
// as 2^(1/2) resp. \sqrt{2}.
std::string render(const Gaussian& c, Format format = Format::Text);
std::string render(const PuiseuxPoly& p, const RenderOptions& opt = {});
std::string render(const ScalarField& f, const RenderOptions& opt = {});
std::string render(const DiffPoly& p, const RenderOptions& opt = {});
std::string render_jet(int alpha, int order, const RenderOptions& opt = {});

// Text: one "D^j: [[..], [..]]" line per nonzero coefficient.  LaTeX: a sum of
// pmatrix blocks times powers of D.
std::string render(const HamiltonianOperator& p, const RenderOptions& opt = {});
std::string render(const SMatrix& m, const RenderOptions& opt = {});

// Rationals are [num, den]; integers outside 64 bits are decimal strings.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// [{"coeff": [numRe, denRe, numIm, denIm], "exps": {"1": [p, q], "-2": [1, 2]}}]
Json to_json(const PuiseuxPoly& p);
PuiseuxPoly puiseux_from_json(const Json& j);

// {"num": poly, "den": [{"factor": poly, "power": k}]}; den omitted when empty.
Json to_json(const ScalarField& f);
ScalarField scalar_from_json(const Json& j);

// Rational constants as [num, den], anything else as a field object.
Json value_json(const ScalarField& f);

// [{"jet": [[alpha, order, power], ...], "coeff": field}]
Json to_json(const DiffPoly& p);
DiffPoly diffpoly_from_json(const Json& j);

// {"n": n, "k": k, "coeffs": {"3": [[poly, ..], ..], ..}}
Json to_json(const HamiltonianOperator& p);
HamiltonianOperator operator_from_json(const Json& j);

// {"n": n, "a": [[[q, ..], ..], ..], "b": [[q, ..], ..], "h": [[q, ..], ..]}
Json to_json(const FrobeniusTriple& t);
FrobeniusTriple triple_from_json(const Json& j);

// {"family", "algebra", "params": {name: q}, "transform": {"M", "c"}}
Json to_json(const NormalForm2D& nf);

} // namespace darboux
