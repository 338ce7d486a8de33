#include "cli.hpp"

#include "darboux/classify2d.hpp"
#include "darboux/hierarchy.hpp"
#include "darboux/render.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace darboux::cli {

namespace {

struct Config {
    std::string builtin;
    std::string file;
    std::string metric;
    std::string out;
    std::string format = "text";
    std::string branch = "plus";
    std::string variant = "miura";
    std::string point;
    int imax = 1;
    int k = 3;
};

struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Result of a command: what to print and the exit status.
struct Output {
    std::string body;
    int status = Success;
};

bool is_input_error(ErrorKind k) {
    return k == ErrorKind::Parse || k == ErrorKind::UnknownName || k == ErrorKind::DimensionMismatch;
}

Format format_of(const Config& c) { return c.format == "latex" ? Format::Latex : Format::Text; }

RenderOptions options(const Config& c, char letter = 'u') { return {format_of(c), letter}; }

std::string dump(Json j) {
    j["schema"] = 1;
    return j.dump(2) + "\n";
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::Parse, path + " at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

std::string source_name(const Config& c) { return c.builtin.empty() ? c.file : c.builtin; }

Json input_json(const Config& c) {
    if (!c.builtin.empty() && !c.file.empty()) throw BadInput("give either --builtin or --file");
    if (!c.builtin.empty()) return to_json(builtin_algebra(c.builtin));
    if (c.file.empty()) throw BadInput("an input is required: --builtin NAME or --file PATH");
    Json j = read_json(c.file);
    if (j.contains("triple")) return j.at("triple");
    if (j.contains("operator")) return j.at("operator");
    return j;
}

FrobeniusTriple input_triple(const Config& c) {
    if (!c.builtin.empty() && c.file.empty()) return builtin_algebra(c.builtin);
    return triple_from_json(input_json(c));
}

std::vector<Rational> parse_point(const std::string& s) {
    std::vector<Rational> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(rational_from_json(Json(item)));
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

Json poly_list(const std::vector<DiffPoly>& ps) {
    Json out = Json::array();
    for (const auto& p : ps) out.push_back(to_json(p));
    return out;
}

std::string latex_align(const std::vector<std::string>& rows) {
    return "\\begin{align*}\n" + join(rows, " \\\\\n") + "\n\\end{align*}\n";
}

Output cmd_triple_check(const Config& c) {
    FrobeniusTriple t = input_triple(c);
    TripleReport rep = check_triple(t);
    Output o;
    o.status = rep.ok() ? Success : MathFailure;
    if (c.format == "json") {
        Json failures = Json::array();
        for (const auto& f : rep.failures) {
            failures.push_back({{"condition", f.condition}, {"indices", f.indices}, {"detail", f.detail}});
        }
        o.body = dump({{"command", "triple check"}, {"input", source_name(c)}, {"n", t.n}, {"valid", rep.ok()},
                       {"failures", failures}});
        return o;
    }
    std::ostringstream os;
    if (rep.ok()) {
        os << source_name(c) << ": valid Frobenius triple, n = " << t.n << "\n";
    } else {
        os << source_name(c) << ": not a Frobenius triple\n";
        for (const auto& f : rep.failures) {
            std::vector<std::string> idx;
            for (int i : f.indices) idx.push_back(std::to_string(i));
            os << "  " << f.condition << " at (" << join(idx, ",") << ")" << (f.detail.empty() ? "" : ": " + f.detail)
               << "\n";
        }
    }
    o.body = os.str();
    return o;
}

Output cmd_hier(const Config& c) {
    if (c.imax < 1) throw BadInput("--imax must be at least 1");
    FrobeniusTriple t = input_triple(c);
    Variant variant = c.variant == "full" ? Variant::Full : Variant::Miura;
    RecursionProblem prob = make_problem(t, variant, c.branch == "minus" ? -1 : 1);
    HierarchySolution sol = solve_recursion(prob, 2 * c.imax + 1);
    ChainOperators ops = chain_operators(prob);
    ChainReport chain = verify_chain(sol, ops.A, ops.B, c.imax);
    int n = prob.n();
    RenderOptions opt = options(c);

    Output o;
    o.status = chain.ok() ? Success : MathFailure;
    if (c.format == "json") {
        Json entries = Json::array();
        for (int alpha = 1; alpha <= n; ++alpha) {
            for (int i = 1; i <= c.imax; ++i) {
                const DiffPoly& h = sol.density(alpha, i);
                entries.push_back({{"alpha", alpha},
                                   {"i", i},
                                   {"density", to_json(h)},
                                   {"variational_derivative", poly_list(variational_gradient(h, n))},
                                   {"flow", poly_list(hd_equation(sol, ops.A, ops.B, alpha, i))}});
            }
        }
        Json shift = Json::array();
        for (const auto& s : sol.shift) shift.push_back(to_json(s));
        Json report{{"ok", chain.ok()}, {"checks", chain.checks}};
        if (chain.failure) {
            report["failure"] = {{"alpha", chain.failure->alpha}, {"i", chain.failure->i}, {"what", chain.failure->what},
                                 {"residual", poly_list(chain.failure->residual)}};
        }
        o.body = dump({{"command", "hier"}, {"input", source_name(c)}, {"n", n}, {"variant", c.variant},
                       {"branch", c.branch}, {"imax", c.imax}, {"shift", shift}, {"hierarchy", entries},
                       {"chain", report}});
        return o;
    }

    std::vector<std::string> shift;
    for (const auto& s : sol.shift) shift.push_back(to_string(s));
    bool shifted = std::any_of(sol.shift.begin(), sol.shift.end(), [](const Rational& s) { return sgn(s) != 0; });
    std::string chain_line = chain.ok() ? "chain verified through depth " + std::to_string(c.imax) + " (" +
                                              std::to_string(chain.checks) + " checks)"
                                        : "chain broken at alpha = " + std::to_string(chain.failure->alpha) +
                                              ", i = " + std::to_string(chain.failure->i) + ": " + chain.failure->what;
    std::ostringstream os;
    if (format_of(c) == Format::Latex) {
        os << "% hierarchy of " << source_name(c) << ", variant " << c.variant << ", branch " << c.branch << "\n";
        if (shifted) os << "% coordinates u + (" << join(shift, ", ") << ")\n";
        for (int alpha = 1; alpha <= n; ++alpha) {
            for (int i = 1; i <= c.imax; ++i) {
                std::vector<std::string> rows;
                std::string tag = "^{" + std::to_string(alpha) + "}_{" + std::to_string(i) + "}";
                rows.push_back("\\mathcal{H}" + tag + " &= \\int \\left(" + render(sol.density(alpha, i), opt) +
                               "\\right) dx");
                auto flow = hd_equation(sol, ops.A, ops.B, alpha, i);
                for (int b = 0; b < n; ++b) {
                    rows.push_back("u^{" + std::to_string(b + 1) + "}_{t} &= " + render(flow[b], opt));
                }
                os << "% flow of H" << tag << "\n" << latex_align(rows);
            }
        }
        os << "% " << chain_line << "\n";
    } else {
        os << "hierarchy of " << source_name(c) << ": n = " << n << ", variant " << c.variant << ", branch "
           << c.branch << "\n";
        if (shifted) os << "coordinates: u + (" << join(shift, ", ") << ")\n";
        for (int alpha = 1; alpha <= n; ++alpha) {
            for (int i = 1; i <= c.imax; ++i) {
                const DiffPoly& h = sol.density(alpha, i);
                os << "H^" << alpha << "_" << i << " = " << render(h, opt) << "\n";
                auto grad = variational_gradient(h, n);
                auto flow = hd_equation(sol, ops.A, ops.B, alpha, i);
                for (int b = 0; b < n; ++b) os << "  dH/du^" << b + 1 << " = " << render(grad[b], opt) << "\n";
                for (int b = 0; b < n; ++b) os << "  u^" << b + 1 << "_t = " << render(flow[b], opt) << "\n";
            }
        }
        os << chain_line << "\n";
    }
    o.body = os.str();
    return o;
}

Output cmd_emit_hs(const Config& c) {
    HSSystem hs = hs_equation(input_triple(c));
    RenderOptions opt = options(c, 'v');
    Output o;
    if (c.format == "json") {
        Json eqs = Json::array();
        for (int a = 0; a < hs.n; ++a) {
            eqs.push_back({{"lhs", render_jet(a + 1, 2, {Format::Text, 'v'}) + "t"}, {"rhs", to_json(hs.equations[a])}});
        }
        o.body = dump({{"command", "emit hs"}, {"input", source_name(c)}, {"n", hs.n}, {"variable", "v"},
                       {"equations", eqs}});
        return o;
    }
    std::vector<std::string> rows;
    for (int a = 0; a < hs.n; ++a) {
        std::string idx = std::to_string(a + 1);
        if (format_of(c) == Format::Latex) rows.push_back("v^{" + idx + "}_{xt} &= " + render(hs.equations[a], opt));
        else rows.push_back("v^" + idx + "_xt = " + render(hs.equations[a], opt));
    }
    o.body = format_of(c) == Format::Latex ? latex_align(rows) : join(rows, "\n") + "\n";
    return o;
}

Output cmd_classify(const Config& c) {
    std::vector<Rational> point = parse_point(c.point);
    NormalForm2D nf;
    if (!c.file.empty()) {
        Json j = input_json(c);
        nf = j.contains("coeffs") ? normalize(operator_from_json(j), point) : normalize(triple_from_json(j), point);
    } else {
        nf = normalize(input_triple(c), point);
    }
    HamiltonianOperator op = rebuild(nf);
    RenderOptions opt = options(c);
    Output o;
    if (c.format == "json") {
        Json j = to_json(nf);
        j["command"] = "classify";
        j["input"] = source_name(c);
        j["operator"] = to_json(op);
        o.body = dump(j);
        return o;
    }
    std::ostringstream os;
    if (format_of(c) == Format::Latex) {
        os << "% family " << nf.family << ", algebra " << to_string(nf.algebra) << "\n";
        std::vector<std::string> ps;
        for (const auto& [name, v] : nf.params) ps.push_back(name.substr(0, 1) + "_{" + name.substr(1) + "} = " + render(v, opt));
        os << "% " << join(ps, ", ") << "\n";
        os << "\\begin{equation*}\n" << render(op, opt) << "\n\\end{equation*}\n";
    } else {
        os << "family " << nf.family << " (algebra " << to_string(nf.algebra) << ")\n";
        for (const auto& [name, v] : nf.params) os << "  " << name << " = " << render(v, opt) << "\n";
        std::vector<std::string> cs;
        for (const auto& x : nf.transform.c) cs.push_back(render(x, opt));
        os << "transform: M = " << render(nf.transform.M, opt) << ", c = [" << join(cs, ", ") << "]\n";
        os << "operator:\n" << render(op, opt) << "\n";
    }
    o.body = os.str();
    return o;
}

struct MetricInput {
    MetricChart chart;
    RMatrix h;
    std::string name;
};

// affine-NAME or constant-NAME, else the triple input read as an affine chart.
MetricInput metric_input(const Config& c) {
    if (c.metric.empty()) {
        FrobeniusTriple t = input_triple(c);
        return {MetricChart::affine(t), t.h, source_name(c)};
    }
    auto dash = c.metric.find('-');
    if (dash == std::string::npos) throw BadInput("--metric takes affine-NAME or constant-NAME");
    std::string kind = c.metric.substr(0, dash);
    FrobeniusTriple t = builtin_algebra(c.metric.substr(dash + 1));
    if (kind == "affine") return {MetricChart::affine(t), t.h, c.metric};
    if (kind == "constant") return {MetricChart::constant(t.b.scaled(Rational(2))), t.h, c.metric};
    throw BadInput("--metric takes affine-NAME or constant-NAME");
}

Output cmd_op_build(const Config& c) {
    if (c.k < 1 || c.k % 2 == 0) throw BadInput("--k must be odd and positive");
    MetricInput m = metric_input(c);
    HamiltonianOperator p = build_A(m.chart) + build_B(m.h, c.k);
    Output o;
    if (c.format == "json") {
        o.body = dump({{"command", "op build"}, {"input", m.name}, {"operator", to_json(p)}});
        return o;
    }
    if (format_of(c) == Format::Latex) o.body = "\\begin{equation*}\n" + render(p, options(c)) + "\n\\end{equation*}\n";
    else o.body = render(p, options(c)) + "\n";
    return o;
}

Output cmd_compat(const Config& c) {
    MetricInput m = metric_input(c);
    SMatrix h = m.h.map([](const Rational& x) { return ScalarField(x); });
    CompatibilityReport rep = compatibility_check(m.chart, h, c.k);
    Output o;
    o.status = rep.pass ? Success : MathFailure;
    if (c.format == "json") {
        Json j{{"command", "compat"}, {"input", m.name}, {"k", c.k}, {"pass", rep.pass}, {"failures", rep.failures}};
        if (rep.witness) {
            j["witness"] = {{"indices", *rep.witness}, {"value", value_json(*rep.witness_value)}};
        }
        o.body = dump(j);
        return o;
    }
    std::ostringstream os;
    os << m.name << ", k = " << c.k << ": " << (rep.pass ? "compatible" : "not compatible") << "\n";
    for (const auto& f : rep.failures) os << "  " << f << "\n";
    if (rep.witness) {
        const auto& w = *rep.witness;
        os << "  S^{" << w[0] << w[1] << "}_" << w[2] << " = " << render(*rep.witness_value, options(c)) << "\n";
    }
    o.body = os.str();
    return o;
}

void add_common(CLI::App* s, Config& c) {
    s->add_option("--builtin", c.builtin, "built-in triple: t1, t2, ..., example4d");
    s->add_option("--file", c.file, "JSON input file");
    s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "latex", "json"}));
    s->add_option("--out", c.out, "write the result to this file");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Darboux-Poisson structures, Harry Dym hierarchies and 2D normal forms", "darboux"};
    app.require_subcommand(1);

    auto* triple = app.add_subcommand("triple", "Frobenius triples");
    triple->require_subcommand(1);
    auto* check = triple->add_subcommand("check", "validate a triple");
    add_common(check, c);

    auto* hier = app.add_subcommand("hier", "densities, flows and the chain check");
    add_common(hier, c);
    hier->add_option("--imax", c.imax, "number of densities per component")->check(CLI::PositiveNumber);
    hier->add_option("--branch", c.branch, "root of v_1")->check(CLI::IsMember({"plus", "minus"}));
    hier->add_option("--variant", c.variant, "recursion variant")->check(CLI::IsMember({"miura", "full"}));

    auto* emit = app.add_subcommand("emit", "equations");
    emit->require_subcommand(1);
    auto* hs = emit->add_subcommand("hs", "Hunter-Saxton system");
    add_common(hs, c);

    auto* classify = app.add_subcommand("classify", "2D normal form");
    add_common(classify, c);
    classify->add_option("--point", c.point, "marked point, comma separated rationals");

    auto* op = app.add_subcommand("op", "operators");
    op->require_subcommand(1);
    auto* build = op->add_subcommand("build", "first-order plus order-k operator");
    add_common(build, c);
    build->add_option("--metric", c.metric, "affine-NAME or constant-NAME");
    build->add_option("--k", c.k, "order of the leading term");

    auto* compat = app.add_subcommand("compat", "compatibility of g with h D^k");
    add_common(compat, c);
    compat->add_option("--metric", c.metric, "affine-NAME or constant-NAME");
    compat->add_option("--k", c.k, "order of the leading term");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Success : InputError;
    }

    try {
        Output o;
        if (check->parsed()) o = cmd_triple_check(c);
        else if (hier->parsed()) o = cmd_hier(c);
        else if (hs->parsed()) o = cmd_emit_hs(c);
        else if (classify->parsed()) o = cmd_classify(c);
        else if (build->parsed()) o = cmd_op_build(c);
        else o = cmd_compat(c);

        if (c.out.empty()) {
            out << o.body;
        } else {
            std::ofstream f(c.out);
            if (!f) throw BadInput("cannot write " + c.out);
            f << o.body;
        }
        return o.status;
    } catch (const BadInput& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_input_error(e.kind()) ? InputError : MathFailure;
    }
}

} // namespace darboux::cli
