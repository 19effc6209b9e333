// Command-line front end: filter expressions in, polynomials, DNFs, rank
// probabilities, robustness orders, filtered signals, Monte-Carlo reports and
// identity checks out.
//
// Exit codes: 0 success, 2 parse/usage error, 3 capacity exceeded,
// 4 verification mismatch.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lulu/analysis.hpp"
#include "lulu/distribution.hpp"
#include "lulu/event_calculus.hpp"
#include "lulu/expr.hpp"
#include "lulu/simulate.hpp"

using json = nlohmann::json;
using namespace lulu;

namespace {

int enum_cap_from_env() {
    if (const char* s = std::getenv("LULU_ENUM_CAP")) {
        int v = std::atoi(s);
        if (v >= 1 && v <= 30) return v;
        std::cerr << "warning: ignoring LULU_ENUM_CAP=" << s << " (want 1..30)\n";
    }
    return kDefaultEnumCap;
}

FilterExpr parse_expr(const std::string& text, bool pipeline_order) {
    FilterExpr e = parse_filter(text);
    if (pipeline_order) std::reverse(e.atoms.begin(), e.atoms.end());
    return e;
}

json poly_json(const Poly& phi) {
    json coeffs = json::array();
    for (const auto& c : phi.coeffs())
        coeffs.push_back(c.is_integer() ? c.num().to_string() : c.to_string());
    return json{{"basis", "p"}, {"coeffs", coeffs}, {"pretty", phi.to_string()}};
}

json dnf_json(const Pbf& f) {
    json terms = json::array();
    for (const auto& t : f.value_dnf().terms()) {
        json term = json::array();
        for (auto o : t) {
            if (f.dim() == 1)
                term.push_back(o.x);
            else
                term.push_back(json::array({o.x, o.y}));
        }
        terms.push_back(term);
    }
    return terms;
}

// Closed forms exist for single L/U/M/R atoms and the L_nU_n / U_nL_n pairs;
// the recursive route exists for C_n (and F_n through the duality with C_n).
struct FormulaRoute {
    const char* method;  // "closed" or "recursive"
    Poly phi;
};

std::optional<FormulaRoute> formula_route_of(const FilterExpr& e, int cap) {
    auto basic = [&](std::size_t i) -> const BasicAtom* {
        return std::get_if<BasicAtom>(&e.atoms[i]);
    };
    if (e.atoms.size() == 1 && basic(0)) {
        const BasicAtom& a = *basic(0);
        switch (a.kind) {
        case 'L': return FormulaRoute{"closed", phi_closed(BasicFilter::L, a.n)};
        case 'U': return FormulaRoute{"closed", phi_closed(BasicFilter::U, a.n)};
        case 'M': return FormulaRoute{"closed", phi_closed(BasicFilter::Median, a.n)};
        case 'R': return FormulaRoute{"closed", phi_closed(BasicFilter::Rank, a.n, a.k)};
        case 'C':
            return FormulaRoute{"recursive", phi_c_recursive(a.n, GSource::Enumerated, cap)};
        case 'F':
            return FormulaRoute{
                "recursive",
                Poly::one() - phi_c_recursive(a.n, GSource::Enumerated, cap).reflect()};
        default: break;
        }
    }
    if (e.atoms.size() == 2 && basic(0) && basic(1) && basic(0)->n == basic(1)->n) {
        if (basic(0)->kind == 'L' && basic(1)->kind == 'U')
            return FormulaRoute{"closed", phi_closed(BasicFilter::LU, basic(0)->n)};
        if (basic(0)->kind == 'U' && basic(1)->kind == 'L')
            return FormulaRoute{"closed", phi_closed(BasicFilter::UL, basic(0)->n)};
    }
    return std::nullopt;
}

Poly phi_by_enum(const Filter& f, int cap) {
    if (const auto* c = std::get_if<Cascade>(&f)) return phi_enum_cascade(*c, cap);
    return phi_enum(std::get<Pbf>(f), cap);
}

int cmd_phi(const std::string& expr_str, const std::string& method, bool pipeline_order,
            bool as_json) {
    const int cap = enum_cap_from_env();
    FilterExpr e = parse_expr(expr_str, pipeline_order);
    Filter f = build(e);

    struct Result {
        std::string method;
        Poly phi;
    };
    std::vector<Result> results;
    std::vector<std::string> skipped;

    auto want = [&](const char* m) { return method == m || method == "all"; };

    if (want("enum")) results.push_back({"enum", phi_by_enum(f, cap)});
    if (want("ie")) {
        try {
            results.push_back({"ie", phi_incl_excl(to_pbf(f))});
        } catch (const capacity_error&) {
            if (method == "ie") throw;
            skipped.push_back("ie");
        }
    }
    if (want("closed") || want("recursive")) {
        std::optional<FormulaRoute> c = formula_route_of(e, cap);
        bool usable = c && (method == "all" || method == c->method);
        if (usable) {
            results.push_back({c->method, c->phi});
        } else if (method == "closed" || method == "recursive") {
            std::cerr << "error: no " << method << " form is known for this expression\n";
            return 2;
        }
    }
    if (results.empty()) {
        std::cerr << "error: unknown method '" << method << "'\n";
        return 2;
    }
    for (const auto& r : results)
        if (r.phi != results.front().phi) {
            std::cerr << "error: methods disagree\n";
            for (const auto& x : results)
                std::cerr << "  " << x.method << ": " << x.phi.to_string() << "\n";
            return 4;
        }
    for (const auto& s : skipped)
        std::cerr << "note: method '" << s << "' skipped (capacity)\n";

    if (as_json) {
        json out = poly_json(results.front().phi);
        out["filter"] = to_string(e);
        json methods = json::array();
        for (const auto& r : results) methods.push_back(r.method);
        out["methods"] = methods;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << results.front().phi.to_string() << "\n";
    }
    return 0;
}

int cmd_dnf(const std::string& expr_str, bool pipeline_order, bool /*as_json*/) {
    FilterExpr e = parse_expr(expr_str, pipeline_order);
    Pbf f = to_pbf(build(e));
    json window = json::array();
    for (auto o : f.window()) {
        if (f.dim() == 1)
            window.push_back(o.x);
        else
            window.push_back(json::array({o.x, o.y}));
    }
    json out;
    out["filter"] = to_string(e);
    out["window"] = window;
    out["window_size"] = f.window_size();
    out["dnf"] = dnf_json(f);
    std::cout << out.dump(2) << "\n";
    return 0;
}

json rsp_json(const RspVector& r) {
    json v = json::array();
    for (const auto& x : r.rsp) v.push_back(x.to_string());
    return v;
}

int cmd_rsp(const std::string& expr_str, bool pipeline_order, bool as_json) {
    const int cap = enum_cap_from_env();
    FilterExpr e = parse_expr(expr_str, pipeline_order);
    Pbf f = to_pbf(build(e));
    RspVector r = rsp(f, cap);
    if (as_json) {
        json out{{"filter", to_string(e)}, {"window", f.window_size()}, {"rsp", rsp_json(r)}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (int j = 1; j <= f.window_size(); ++j)
            std::cout << "rsp[" << j << "] = " << r.rsp[static_cast<std::size_t>(j - 1)].to_string()
                      << "\n";
    }
    return 0;
}

int cmd_robustness(const std::string& expr_str, bool pipeline_order, bool as_json) {
    const int cap = enum_cap_from_env();
    FilterExpr e = parse_expr(expr_str, pipeline_order);
    Filter f = build(e);
    Poly phi = phi_by_enum(f, cap);
    RobustnessOrders ro = robustness_orders(phi);
    Pbf pf = to_pbf(f);
    RspVector r = rsp(pf, cap);
    if (as_json) {
        json out{{"filter", to_string(e)},
                 {"window", pf.window_size()},
                 {"lower", ro.lower},
                 {"upper", ro.upper},
                 {"rsp", rsp_json(r)},
                 {"phi", poly_json(phi)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "filter  " << to_string(e) << "\n"
                  << "window  " << pf.window_size() << "\n"
                  << "lower   " << ro.lower << "\n"
                  << "upper   " << ro.upper << "\n";
    }
    return 0;
}

// Signal files: 1D one sample per line, 2D CSV rows.
struct LoadedSignal {
    bool two_d = false;
    Series series;
    Grid grid;
};

LoadedSignal load_signal(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open signal file: " + path);
    LoadedSignal s;
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("empty signal file: " + path);
    if (rows[0].size() > 1) {
        s.two_d = true;
        s.grid.rows = rows.size();
        s.grid.cols = rows[0].size();
        for (const auto& r : rows) {
            if (r.size() != s.grid.cols)
                throw std::invalid_argument("ragged CSV rows in " + path);
            s.grid.v.insert(s.grid.v.end(), r.begin(), r.end());
        }
    } else {
        for (const auto& r : rows) s.series.v.push_back(r[0]);
    }
    return s;
}

void write_series(std::ostream& out, const Series& s) {
    char buf[64];
    for (double v : s.v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << "\n";
    }
}

void write_grid(std::ostream& out, const Grid& g) {
    char buf[64];
    for (std::size_t i = 0; i < g.rows; ++i) {
        for (std::size_t j = 0; j < g.cols; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", g.at(i, j));
            out << buf << (j + 1 < g.cols ? "," : "");
        }
        out << "\n";
    }
}

int cmd_apply(const std::string& expr_str, const std::string& in_path, const std::string& out_path,
              const std::string& boundary, bool pipeline_order) {
    FilterExpr e = parse_expr(expr_str, pipeline_order);
    Filter f = build(e);
    Boundary b = boundary == "extend"    ? Boundary::Extend
                 : boundary == "reflect" ? Boundary::Reflect
                                         : Boundary::ValidOnly;
    LoadedSignal sig = load_signal(in_path);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
        out = &file;
    }
    if (sig.two_d) {
        const auto* c = std::get_if<Cascade>(&f);
        if (!c || c->dim() != 2)
            throw std::invalid_argument("2D signal needs a 2D cascade expression");
        write_grid(*out, apply(*c, sig.grid, b));
    } else {
        if (dimension(f) != 1) throw std::invalid_argument("1D signal needs a 1D expression");
        write_series(*out, apply(f, sig.series, b));
    }
    return 0;
}

DistributionSpec parse_dist(const std::string& s) {
    if (s == "uniform" || s == "uniform01") return DistributionSpec::uniform01();
    auto parse_two = [&](std::size_t colon) {
        std::string rest = s.substr(colon + 1);
        std::size_t comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("distribution needs two parameters: " + s);
        return std::make_pair(std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1)));
    };
    if (s.rfind("gaussian:", 0) == 0) {
        auto [mu, sigma] = parse_two(8);
        return DistributionSpec::gaussian(mu, sigma);
    }
    if (s.rfind("pareto:", 0) == 0) {
        auto [alpha, xmin] = parse_two(6);
        return DistributionSpec::pareto(alpha, xmin);
    }
    throw std::invalid_argument("unknown distribution: " + s +
                                " (want uniform, gaussian:mu,sigma or pareto:alpha,xmin)");
}

int cmd_simulate(const std::string& expr_str, const std::string& dist, std::size_t samples,
                 std::uint64_t seed, int streams, bool pipeline_order) {
    const int cap = enum_cap_from_env();
    FilterExpr e = parse_expr(expr_str, pipeline_order);
    Filter f = build(e);
    DistributionSpec d = parse_dist(dist);

    Poly phi = phi_by_enum(f, cap);
    EmpiricalCdf emp = sample_apply(f, d, samples, seed, streams);
    double ks = ks_distance(emp, phi, d);
    SeparatorReport rep = separator_checks(f, 200, seed);

    json out{{"filter", to_string(e)},
             {"distribution", d.name()},
             {"n", samples},
             {"seed", seed},
             {"streams", streams},
             {"ks", ks},
             {"phi", poly_json(phi)},
             {"axioms",
              {{"idempotent", rep.idempotent},
               {"co_idempotent", rep.co_idempotent},
               {"vertical_shift_equivariant", rep.vertical_shift_equivariant},
               {"scale_equivariant", rep.scale_equivariant},
               {"horizontal_shift_equivariant", rep.horizontal_shift_equivariant},
               {"tv_preserving", rep.tv_preserving}}}};
    if (d.family == DistributionSpec::Family::Uniform01) {
        Moments m = moments_uniform(phi);
        out["moments"] = {{"mean", m.mean.to_string()},
                          {"variance", m.variance.to_string()},
                          {"variance_ratio", m.variance_ratio.to_string()},
                          {"std_ratio", m.std_ratio},
                          {"note", m.note}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify(bool quick) {
    const int cap = enum_cap_from_env();
    DerivedPipeline x{Cascade::identity(1), "X"};
    std::vector<IdentityCheck> checks;

    const int l7_max = quick ? 3 : 5;
    for (int n = 2; n <= l7_max; ++n) {
        std::vector<int> offs;
        for (int i = 0; i < n; ++i) offs.push_back(i);
        checks.push_back(check_l7(x, offs, cap));
    }
    const int l8_max = quick ? 4 : 6;
    for (int n = 1; n <= l8_max; ++n) checks.push_back(check_l8(x, n, cap));
    const int r_max = quick ? 1 : 2;
    for (int r = 0; r <= r_max; ++r)
        for (int n = 2; n < 2 * r + 4; ++n) {
            checks.push_back(check_l9(x, r, n, cap));
            checks.push_back(check_l10(x, r, n, cap));
        }
    if (!quick) {
        DerivedPipeline a{dilation_1d(1), "A"};
        DerivedPipeline ero{erosion_1d(1), "E"};
        for (int n = 2; n <= 5; ++n) {
            checks.push_back(check_l9(a, 1, n, cap));
            checks.push_back(check_l10(ero, 1, n, cap));
        }
    }

    int failures = 0;
    for (const auto& c : checks) {
        bool ok = c.holds();
        if (!ok) ++failures;
        std::cout << (ok ? "ok   " : "FAIL ") << c.name << "\n";
        if (!ok)
            std::cout << "     lhs = " << c.lhs.to_string() << "\n     rhs = " << c.rhs.to_string()
                      << "\n";
    }
    std::cout << (failures ? "verification FAILED\n" : "all identities hold\n");
    return failures ? 4 : 0;
}

// "(0,~1,~2,3)" or "((0,0),~(1,0))" with ~ marking "> t"; optional _LABEL tail.
Pattern parse_pattern_text(const std::string& text, const DerivedPipeline& pipe) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c)
            throw parse_error(std::string("expected '") + c + "' in pattern", i);
        ++i;
    };
    auto integer = [&]() {
        skip_ws();
        std::size_t start = i;
        if (i < text.size() && text[i] == '-') ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw parse_error("expected an integer in pattern", i);
        return std::stoi(text.substr(start, i - start));
    };
    expect('(');
    std::vector<Constraint> cs;
    while (true) {
        skip_ws();
        Rel rel = Rel::Le;
        if (i < text.size() && text[i] == '~') {
            rel = Rel::Gt;
            ++i;
        }
        skip_ws();
        Offset o{0, 0};
        if (i < text.size() && text[i] == '(') {
            ++i;
            o.x = integer();
            expect(',');
            o.y = integer();
            expect(')');
        } else {
            o.x = integer();
        }
        cs.push_back({o, rel});
        skip_ws();
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        break;
    }
    expect(')');
    return Pattern(pipe, std::move(cs));
}

int cmd_pattern(const std::string& pattern_str, const std::string& pipe_str, bool pipeline_order) {
    const int cap = enum_cap_from_env();
    DerivedPipeline pipe{Cascade::identity(1), "X"};
    if (!pipe_str.empty()) {
        Filter f = build(parse_expr(pipe_str, pipeline_order));
        const auto* c = std::get_if<Cascade>(&f);
        if (!c) throw std::invalid_argument("pattern pipelines must be cascades");
        pipe = DerivedPipeline{*c, "B"};
        pipe.label = "B";
    }
    std::string body = pattern_str;
    if (auto us = body.rfind('_'); us != std::string::npos && us > 0 && body[us - 1] == ')')
        body = body.substr(0, us);
    Pattern pat = parse_pattern_text(body, pipe);
    std::cout << pattern_prob(pat, cap).to_string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stack filters built from erosion-dilation cascades: exact output "
                 "distributions, robustness orders and rank selection probabilities"};
    app.require_subcommand(1);
    app.footer("Composition order matches operator notation: the leftmost atom is applied last.\n"
               "Use --pipeline to write stages in dataflow order instead.\n"
               "LULU_ENUM_CAP overrides the enumeration cap (default 26 variables).");

    bool as_json = false;
    bool pipeline_order = false;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_flag("--pipeline", pipeline_order, "expression lists stages in application order");
    app.fallthrough();  // let subcommands inherit the global flags

    std::string expr_str, method = "all", in_path, out_path, boundary = "valid";
    std::string dist = "uniform", pattern_str, pipe_str;
    std::size_t samples = 1000000;
    std::uint64_t seed = 1;
    int streams = 1;
    bool quick = false;

    auto* phi = app.add_subcommand("phi", "output distribution polynomial of a filter");
    phi->add_option("expr", expr_str)->required();
    phi->add_option("--method", method, "enum | ie | closed | recursive | all")
        ->check(CLI::IsMember({"enum", "ie", "closed", "recursive", "all"}));

    auto* dnf = app.add_subcommand("dnf", "value-domain DNF (antichain of offset sets)");
    dnf->add_option("expr", expr_str)->required();

    auto* rsp_cmd = app.add_subcommand("rsp", "rank selection probabilities");
    rsp_cmd->add_option("expr", expr_str)->required();

    auto* rob = app.add_subcommand("robustness", "lower/upper robustness orders");
    rob->add_option("expr", expr_str)->required();

    auto* ap = app.add_subcommand("apply", "filter a signal file");
    ap->add_option("expr", expr_str)->required();
    ap->add_option("--in", in_path, "signal file (1D: one sample per line, 2D: CSV)")->required();
    ap->add_option("--out", out_path, "output file (default stdout)");
    ap->add_option("--boundary", boundary, "extend | reflect | valid")
        ->check(CLI::IsMember({"extend", "reflect", "valid"}));

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo check of the transfer polynomial");
    sim->add_option("expr", expr_str)->required();
    sim->add_option("--dist", dist, "uniform | gaussian:mu,sigma | pareto:alpha,xmin");
    sim->add_option("--samples", samples);
    sim->add_option("--seed", seed);
    sim->add_option("--streams", streams);

    auto* ver = app.add_subcommand("verify", "expansion-calculus identity suite");
    ver->add_flag("--quick", quick, "reduced parameter ranges");

    auto* pat = app.add_subcommand("pattern", "exact probability of a threshold pattern");
    pat->add_option("pattern", pattern_str, "e.g. \"(0,~1,~2,3)_B\" with ~ marking > t")
        ->required();
    pat->add_option("--pipe", pipe_str, "cascade expression defining the derived sequence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (phi->parsed()) return cmd_phi(expr_str, method, pipeline_order, as_json);
        if (dnf->parsed()) return cmd_dnf(expr_str, pipeline_order, as_json);
        if (rsp_cmd->parsed()) return cmd_rsp(expr_str, pipeline_order, as_json);
        if (rob->parsed()) return cmd_robustness(expr_str, pipeline_order, as_json);
        if (ap->parsed()) return cmd_apply(expr_str, in_path, out_path, boundary, pipeline_order);
        if (sim->parsed())
            return cmd_simulate(expr_str, dist, samples, seed, streams, pipeline_order);
        if (ver->parsed()) return cmd_verify(quick);
        if (pat->parsed()) return cmd_pattern(pattern_str, pipe_str, pipeline_order);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const capacity_error& e) {
        std::cerr << "capacity exceeded: " << e.what()
                  << "\nhint: raise LULU_ENUM_CAP or simplify the filter\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
