#include "darboux/render.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace darboux {

namespace {

bool latex(const RenderOptions& o) { return o.format == Format::Latex; }

std::string latex_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_str();
    Integer num = q.get_num();
    std::string sign = sgn(num) < 0 ? "-" : "";
    return sign + "\\frac{" + Integer(abs(num)).get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string exponent_string(const Exponent& e, bool tex) {
    if (!tex) return e.denominator() == 1 && e > 0 ? to_string(e) : "(" + to_string(e) + ")";
    if (e.denominator() == 1) return "{" + to_string(e) + "}";
    std::string sign = e.numerator() < 0 ? "-" : "";
    return "{" + sign + "\\frac{" + std::to_string(std::abs(e.numerator())) + "}{" + std::to_string(e.denominator()) +
           "}}";
}

std::string join_sum(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string out = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) {
        const std::string& t = terms[i];
        out += t.front() == '-' ? " - " + t.substr(1) : " + " + t;
    }
    return out;
}

std::string join_product(const std::vector<std::string>& factors, const RenderOptions& opt) {
    std::string out;
    for (const auto& f : factors) {
        if (!out.empty()) out += latex(opt) ? " " : "*";
        out += f;
    }
    return out;
}

// c * factors with the usual elisions of 1 and -1.
std::string scaled_product(const Gaussian& c, const std::vector<std::string>& factors, const RenderOptions& opt) {
    if (factors.empty()) return render(c, opt.format);
    std::string body = join_product(factors, opt);
    if (!c.is_real()) return "(" + render(c, opt.format) + ")" + (latex(opt) ? " " : "*") + body;
    if (c.re() == 1) return body;
    if (c.re() == -1) return "-" + body;
    return render(c, opt.format) + (latex(opt) ? " " : "*") + body;
}

std::vector<std::string> exponent_factors(const ExponentMap& e, const RenderOptions& opt) {
    bool tex = latex(opt);
    std::vector<std::string> out;
    // radical constants first, then field variables
    for (const auto& [key, power] : e) {
        if (key > 0) continue;
        std::string base = std::to_string(-key);
        if (tex && power == Exponent(1, 2)) out.push_back("\\sqrt{" + base + "}");
        else out.push_back(base + "^" + exponent_string(power, tex));
    }
    for (const auto& [key, power] : e) {
        if (key < 0) continue;
        std::string var = tex ? std::string(1, opt.letter) + "^{" + std::to_string(key) + "}"
                              : std::string(1, opt.letter) + "^" + std::to_string(key);
        if (power == Exponent(1)) out.push_back(var);
        else out.push_back("(" + var + ")^" + exponent_string(power, tex));
    }
    return out;
}

std::vector<std::string> jet_factors(const JetKey& key, const RenderOptions& opt) {
    std::vector<std::string> out;
    for (const auto& f : key) {
        std::string j = render_jet(f.alpha, f.order, opt);
        if (f.power == 1) out.push_back(j);
        else out.push_back("(" + j + ")^" + (latex(opt) ? "{" + std::to_string(f.power) + "}" : std::to_string(f.power)));
    }
    return out;
}

std::string parenthesized(const std::string& s) { return "(" + s + ")"; }

Json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw Error(ErrorKind::Parse, "expected an integer, got " + j.dump());
}

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Parse, std::string(what) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw Error(ErrorKind::Parse, std::string(what) + ": " + e.what());
    }
}

Json rmatrix_json(const RMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

RMatrix rmatrix_from_json(const Json& j, int n, const char* name) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        throw Error(ErrorKind::Parse, std::string(name) + " must be an " + std::to_string(n) + " x " + std::to_string(n) +
                                          " array");
    }
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw Error(ErrorKind::Parse, std::string(name) + " row " + std::to_string(i + 1) + " has the wrong length");
        }
        for (int k = 0; k < n; ++k) m(i, k) = rational_from_json(row[static_cast<std::size_t>(k)]);
    }
    return m;
}

} // namespace

std::string render(const Gaussian& c, Format format) {
    if (format == Format::Text) return c.to_string();
    if (c.is_real()) return latex_rational(c.re());
    std::string im = c.im() == 1 ? "i" : c.im() == -1 ? "-i" : latex_rational(c.im()) + " i";
    if (sgn(c.re()) == 0) return im;
    return "\\left(" + latex_rational(c.re()) + (im.front() == '-' ? " - " + im.substr(1) : " + " + im) + "\\right)";
}

std::string render_jet(int alpha, int order, const RenderOptions& opt) {
    std::string a = std::to_string(alpha);
    std::string xs = order <= 4 ? std::string(static_cast<std::size_t>(order), 'x') : "x^" + std::to_string(order);
    if (latex(opt)) {
        if (order > 4) xs = "x^{" + std::to_string(order) + "}";
        return std::string(1, opt.letter) + "^{" + a + "}" + (order > 0 ? "_{" + xs + "}" : "");
    }
    if (order > 4) xs = "(" + xs + ")";
    return std::string(1, opt.letter) + "^" + a + (order > 0 ? "_" + xs : "");
}

std::string render(const PuiseuxPoly& p, const RenderOptions& opt) {
    std::vector<std::string> terms;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        terms.push_back(scaled_product(it->second, exponent_factors(it->first, opt), opt));
    }
    return join_sum(terms);
}

std::string render(const ScalarField& f, const RenderOptions& opt) {
    if (f.is_polynomial()) return render(f.numerator(), opt);
    // display only: clear negative powers of u inside each factor
    PuiseuxPoly numerator = f.numerator();
    std::vector<PuiseuxPoly> factors;
    for (const auto& [factor, power] : f.denominator_factors()) {
        std::map<int, Exponent> lowest;
        for (const auto& [e, c] : factor.terms()) {
            for (const auto& [key, x] : e) {
                if (key > 0) lowest[key] = lowest.count(key) ? std::min(lowest[key], x) : x;
            }
        }
        PuiseuxPoly scale{Gaussian(1)};
        for (const auto& [key, x] : lowest) {
            // variables missing from some term have exponent 0 there
            bool everywhere = true;
            for (const auto& [e, c] : factor.terms()) {
                everywhere = everywhere && std::any_of(e.begin(), e.end(), [&](const auto& kv) { return kv.first == key; });
            }
            Exponent low = everywhere ? x : std::min(x, Exponent(0));
            if (low < 0) scale = scale * PuiseuxPoly::variable(key, -low);
        }
        factors.push_back(factor * scale);
        numerator = numerator * scale.pow(static_cast<unsigned>(power));
    }
    std::string num = render(numerator, opt);
    std::vector<std::string> den;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        int power = f.denominator_factors()[i].second;
        std::string d = parenthesized(render(factors[i], opt));
        if (power != 1) d += "^" + (latex(opt) ? "{" + std::to_string(power) + "}" : std::to_string(power));
        den.push_back(d);
    }
    if (latex(opt)) return "\\frac{" + num + "}{" + join_product(den, opt) + "}";
    if (!numerator.is_monomial() || num.find('/') != std::string::npos) num = parenthesized(num);
    std::string d = join_product(den, opt);
    return num + "/" + (den.size() > 1 ? parenthesized(d) : d);
}

std::string render(const DiffPoly& p, const RenderOptions& opt) {
    std::vector<std::string> terms;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const ScalarField& c = it->second;
        std::vector<std::string> jets = jet_factors(it->first, opt);
        if (jets.empty()) {
            terms.push_back(render(c, opt));
        } else if (c.is_polynomial() && c.numerator().is_monomial()) {
            PuiseuxMonomial m = c.numerator().as_monomial();
            std::vector<std::string> factors = exponent_factors(m.exponents, opt);
            factors.insert(factors.end(), jets.begin(), jets.end());
            terms.push_back(scaled_product(m.coefficient, factors, opt));
        } else {
            std::string cs = render(c, opt);
            if (c.is_polynomial() || !latex(opt)) cs = parenthesized(cs);
            terms.push_back(cs + (latex(opt) ? " " : "*") + join_product(jets, opt));
        }
    }
    return join_sum(terms);
}

std::string render(const SMatrix& m, const RenderOptions& opt) {
    std::ostringstream os;
    if (latex(opt)) {
        os << "\\begin{pmatrix} ";
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) os << (j ? " & " : "") << render(m(i, j), opt);
            if (i + 1 < m.rows()) os << " \\\\ ";
        }
        os << " \\end{pmatrix}";
        return os.str();
    }
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << render(m(i, j), opt);
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string render(const HamiltonianOperator& p, const RenderOptions& opt) {
    std::vector<std::string> parts;
    for (int j = p.k; j >= 0; --j) {
        const DMatrix& c = p.at(j);
        if (c.is_zero()) continue;
        std::ostringstream os;
        if (latex(opt)) {
            os << "\\begin{pmatrix} ";
            for (int a = 0; a < p.n; ++a) {
                for (int b = 0; b < p.n; ++b) os << (b ? " & " : "") << render(c(a, b), opt);
                if (a + 1 < p.n) os << " \\\\ ";
            }
            os << " \\end{pmatrix}";
            if (j == 1) os << " D";
            else if (j > 1) os << " D^{" << j << "}";
        } else {
            os << "D^" << j << ": [";
            for (int a = 0; a < p.n; ++a) {
                os << (a ? ", [" : "[");
                for (int b = 0; b < p.n; ++b) os << (b ? ", " : "") << render(c(a, b), opt);
                os << "]";
            }
            os << "]";
        }
        parts.push_back(os.str());
    }
    if (parts.empty()) return "0";
    std::string out;
    for (const auto& s : parts) {
        if (!out.empty()) out += latex(opt) ? " + " : "\n";
        out += s;
    }
    return out;
}

Json to_json(const Rational& q) { return Json::array({integer_json(q.get_num()), integer_json(q.get_den())}); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        Rational q;
        if (q.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorKind::Parse, "bad rational " + j.dump());
        if (q.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in " + j.dump());
        q.canonicalize();
        return q;
    }
    if (j.is_array() && j.size() == 2) {
        Integer den = integer_from_json(j[1]);
        if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in " + j.dump());
        Rational q(integer_from_json(j[0]), den);
        q.canonicalize();
        return q;
    }
    throw Error(ErrorKind::Parse, "expected a rational [num, den], got " + j.dump());
}

Json to_json(const PuiseuxPoly& p) {
    Json out = Json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const Gaussian& c = it->second;
        Json exps = Json::object();
        for (const auto& [key, e] : it->first) exps[std::to_string(key)] = Json::array({e.numerator(), e.denominator()});
        out.push_back({{"coeff",
                        {integer_json(c.re().get_num()), integer_json(c.re().get_den()), integer_json(c.im().get_num()),
                         integer_json(c.im().get_den())}},
                       {"exps", exps}});
    }
    return out;
}

PuiseuxPoly puiseux_from_json(const Json& j) {
    return guarded("polynomial", [&] {
        if (!j.is_array()) throw Error(ErrorKind::Parse, "a polynomial is an array of monomials");
        PuiseuxPoly p;
        for (const auto& m : j) {
            const Json& c = m.at("coeff");
            if (!c.is_array() || c.size() != 4) throw Error(ErrorKind::Parse, "coeff must have four entries");
            Rational re(integer_from_json(c[0]), integer_from_json(c[1]));
            Rational im(integer_from_json(c[2]), integer_from_json(c[3]));
            re.canonicalize();
            im.canonicalize();
            PuiseuxPoly term{Gaussian(re, im)};
            for (const auto& [key, e] : m.at("exps").items()) {
                int var = std::stoi(key);
                Exponent power(e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>());
                if (var > 0) {
                    term = term * PuiseuxPoly::variable(var, power);
                } else if (var < 0) {
                    // radicals are re-reduced through the root machinery
                    ScalarField r = root(ScalarField(Rational(-var)).pow(power.numerator()), static_cast<int>(power.denominator()));
                    term = term * r.numerator();
                } else {
                    throw Error(ErrorKind::Parse, "exponent key 0");
                }
            }
            p += term;
        }
        return p;
    });
}

Json to_json(const ScalarField& f) {
    Json out{{"num", to_json(f.numerator())}};
    if (!f.is_polynomial()) {
        Json den = Json::array();
        for (const auto& [factor, power] : f.denominator_factors()) den.push_back({{"factor", to_json(factor)}, {"power", power}});
        out["den"] = den;
    }
    return out;
}

ScalarField scalar_from_json(const Json& j) {
    return guarded("field value", [&] {
        ScalarField f(puiseux_from_json(j.at("num")));
        if (j.contains("den")) {
            for (const auto& d : j.at("den")) {
                ScalarField factor(puiseux_from_json(d.at("factor")));
                int power = d.at("power").get<int>();
                if (power < 1) throw Error(ErrorKind::Parse, "denominator powers are positive");
                f /= factor.pow(power);
            }
        }
        return f;
    });
}

Json value_json(const ScalarField& f) {
    Rational q;
    if (f.simplified().is_rational_constant(&q)) return to_json(q);
    return to_json(f);
}

Json to_json(const DiffPoly& p) {
    Json out = Json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        Json jet = Json::array();
        for (const auto& f : it->first) jet.push_back({f.alpha, f.order, f.power});
        out.push_back({{"jet", jet}, {"coeff", to_json(it->second)}});
    }
    return out;
}

DiffPoly diffpoly_from_json(const Json& j) {
    return guarded("differential polynomial", [&] {
        if (!j.is_array()) throw Error(ErrorKind::Parse, "a differential polynomial is an array of terms");
        DiffPoly p;
        for (const auto& t : j) {
            JetKey key;
            for (const auto& f : t.at("jet")) {
                JetFactor jf{f.at(0).get<int>(), f.at(1).get<int>(), f.at(2).get<int>()};
                if (jf.alpha < 1 || jf.order < 1 || jf.power < 1) throw Error(ErrorKind::Parse, "bad jet factor " + f.dump());
                key.push_back(jf);
            }
            std::sort(key.begin(), key.end());
            for (std::size_t i = 1; i < key.size(); ++i) {
                if (key[i].alpha == key[i - 1].alpha && key[i].order == key[i - 1].order) {
                    throw Error(ErrorKind::Parse, "repeated jet factor");
                }
            }
            p += DiffPoly::monomial(scalar_from_json(t.at("coeff")), key);
        }
        return p;
    });
}

Json to_json(const HamiltonianOperator& p) {
    Json coeffs = Json::object();
    for (int j = p.k; j >= 0; --j) {
        if (p.at(j).is_zero()) continue;
        Json rows = Json::array();
        for (int a = 0; a < p.n; ++a) {
            Json r = Json::array();
            for (int b = 0; b < p.n; ++b) r.push_back(to_json(p.at(j)(a, b)));
            rows.push_back(r);
        }
        coeffs[std::to_string(j)] = rows;
    }
    return {{"n", p.n}, {"k", p.k}, {"coeffs", coeffs}};
}

HamiltonianOperator operator_from_json(const Json& j) {
    return guarded("operator", [&] {
        int k = j.at("k").get<int>();
        if (k < 0) throw Error(ErrorKind::Parse, "negative order");
        const Json& coeffs = j.at("coeffs");
        int n = j.contains("n") ? j.at("n").get<int>() : static_cast<int>(coeffs.begin()->size());
        if (n < 1) throw Error(ErrorKind::Parse, "dimension must be positive");
        HamiltonianOperator p = zero_operator(n, k);
        for (const auto& [key, rows] : coeffs.items()) {
            int d = std::stoi(key);
            if (d < 0 || d > k) throw Error(ErrorKind::Parse, "coefficient D^" + key + " outside 0.." + std::to_string(k));
            if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw Error(ErrorKind::Parse, "wrong row count");
            for (int a = 0; a < n; ++a) {
                const Json& r = rows[static_cast<std::size_t>(a)];
                if (!r.is_array() || static_cast<int>(r.size()) != n) throw Error(ErrorKind::Parse, "wrong column count");
                for (int b = 0; b < n; ++b) p.coeffs[static_cast<std::size_t>(d)](a, b) = diffpoly_from_json(r[static_cast<std::size_t>(b)]);
            }
        }
        return p;
    });
}

Json to_json(const FrobeniusTriple& t) {
    Json a = Json::array();
    for (int i = 0; i < t.n; ++i) {
        Json plane = Json::array();
        for (int j = 0; j < t.n; ++j) {
            Json row = Json::array();
            for (int s = 0; s < t.n; ++s) row.push_back(to_json(t.a(i, j, s)));
            plane.push_back(row);
        }
        a.push_back(plane);
    }
    return {{"n", t.n}, {"a", a}, {"b", rmatrix_json(t.b)}, {"h", rmatrix_json(t.h)}};
}

FrobeniusTriple triple_from_json(const Json& j) {
    return guarded("triple", [&] {
        int n = j.at("n").get<int>();
        if (n < 1) throw Error(ErrorKind::Parse, "n must be positive");
        FrobeniusTriple t{n, Tensor3(n), rmatrix_from_json(j.at("b"), n, "b"), rmatrix_from_json(j.at("h"), n, "h")};
        const Json& a = j.at("a");
        if (!a.is_array() || static_cast<int>(a.size()) != n) throw Error(ErrorKind::Parse, "a must be n x n x n");
        for (int i = 0; i < n; ++i) {
            RMatrix plane = rmatrix_from_json(a[static_cast<std::size_t>(i)], n, "a");
            for (int k = 0; k < n; ++k) {
                for (int s = 0; s < n; ++s) t.a(i, k, s) = plane(k, s);
            }
        }
        return t;
    });
}

Json to_json(const NormalForm2D& nf) {
    Json params = Json::object();
    for (const auto& [name, value] : nf.params) params[name] = value_json(value);
    Json m = Json::array();
    for (int i = 0; i < nf.transform.M.rows(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < nf.transform.M.cols(); ++j) r.push_back(value_json(nf.transform.M(i, j)));
        m.push_back(r);
    }
    Json c = Json::array();
    for (const auto& x : nf.transform.c) c.push_back(value_json(x));
    return {{"family", nf.family}, {"algebra", to_string(nf.algebra)}, {"params", params}, {"transform", {{"M", m}, {"c", c}}}};
}

} // namespace darboux
