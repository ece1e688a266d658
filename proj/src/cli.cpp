#include "vflab/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vflab/deadline.hpp"
#include "vflab/elementary.hpp"
#include "vflab/multiplier.hpp"
#include "vflab/parse.hpp"

namespace vflab::cli {

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string f, g = "1", weights, a, levels, data, which, model, b_text, p_text, u_text = "1";
    std::string op_text;
    std::string lambda, bound = "1";
    unsigned max_order = 3, max_sdeg = 3, trunc_j = 3, trunc_d = 12, m = 0, L = 0;
    bool exceptional_only = false;
    bool as_json = false;
    bool i_kind = false;
};

json rat_list(const std::vector<Rational>& v) {
    json arr = json::array();
    for (const auto& r : v) arr.push_back(r.str());
    return arr;
}

Polynomial parse_f(const CommonFlags& fl) {
    if (fl.f.empty()) throw std::domain_error("missing --f");
    return parse_polynomial_auto(fl.f);
}

std::pair<Polynomial, WeightVector> parse_f_weights(const CommonFlags& fl) {
    Polynomial f = parse_f(fl);
    if (fl.weights.empty()) throw std::domain_error("missing --weights");
    WeightVector w = validate_weighted_homogeneous(f, parse_rational_list(fl.weights));
    return {std::move(f), std::move(w)};
}

std::vector<Rational> parse_levels(const std::string& text, unsigned grid_den) {
    // Either a comma list, or "start:end" / "start:end:step"; the default
    // step is the model grid.
    auto c1 = text.find(':');
    if (c1 == std::string::npos) return parse_rational_list(text);
    auto c2 = text.find(':', c1 + 1);
    auto lo = Rational::parse(text.substr(0, c1));
    auto hi = Rational::parse(text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos
                                                                          : c2 - c1 - 1));
    Rational step(1, static_cast<long>(grid_den == 0 ? 1 : grid_den));
    if (c2 != std::string::npos) {
        auto s = Rational::parse(text.substr(c2 + 1));
        if (!s || s->sign() <= 0) throw std::domain_error("bad --levels step");
        step = *s;
    }
    if (!lo || !hi) throw std::domain_error("bad --levels range");
    std::vector<Rational> out;
    for (Rational v = *lo; v <= *hi; v += step) out.push_back(v);
    return out;
}

LogResolutionData load_resolution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot open data file: " + path);
    json j = json::parse(in);
    std::vector<ResolutionRow> rows;
    for (const auto& item : j) {
        ResolutionRow row;
        row.a = item.at("a").get<unsigned>();
        row.k = item.at("k").get<unsigned>();
        row.b = item.value("b", 0u);
        row.exceptional = item.value("exceptional", false);
        rows.push_back(row);
    }
    return LogResolutionData(std::move(rows));
}

std::vector<Rational> poly_in_s_coefficients(const std::string& text) {
    VarSet svar({"s"});
    Polynomial p = parse_polynomial(text, svar);
    std::vector<Rational> coeffs(p.degree_in(0) + 1, Rational(0));
    for (const auto& [mono, c] : p.terms()) coeffs[mono[0]] = c;
    return coeffs;
}

json axiom_report_json(const AxiomReport& report) {
    json levels = json::array();
    for (const auto& lr : report.levels) {
        levels.push_back({{"alpha", lr.alpha.str()},
                          {"dim", lr.dim},
                          {"gr_dim", lr.gr_dim},
                          {"saturated", lr.saturated},
                          {"containments",
                           {{"mono", lr.mono_ok},
                            {"t_up", lr.t_up_ok},
                            {"t_eq", lr.t_eq_checked ? json(lr.t_eq_ok) : json(nullptr)},
                            {"dt_down", lr.dt_down_ok}}},
                          {"nilpotency_order", lr.nilpotency_order}});
    }
    json out{{"levels", levels}, {"all_passed", report.all_passed}};
    if (!report.failure.empty()) out["failure"] = report.failure;
    return out;
}

VModel model_from_flags(const CommonFlags& fl) {
    if (fl.model == "snc") {
        if (fl.a.empty()) throw std::domain_error("snc model needs --a");
        return VModel::snc(parse_unsigned_list(fl.a));
    }
    if (fl.model == "qh") {
        auto [f, w] = parse_f_weights(fl);
        return VModel::quasi_homogeneous(std::move(f), std::move(w));
    }
    if (fl.model == "smooth") return VModel::smooth();
    throw std::domain_error("unknown --model (expected smooth|snc|qh)");
}

using Handler = std::function<json(const CommonFlags&)>;

json cmd_bs(const CommonFlags& fl) {
    auto [f, w] = parse_f_weights(fl);
    BFunction b = bs_weighted_homogeneous(f, w);
    auto alpha = minimal_exponent(b);
    return {{"b", b.str()},
            {"minimal_exponent", alpha ? json(alpha->str()) : json("infinity")},
            {"lct", lct_from_bfunction(b).str()}};
}

json cmd_oracle_b(const CommonFlags& fl) {
    Polynomial f = parse_f(fl);
    Polynomial g = parse_polynomial(fl.g, f.vars());
    MinimalBResult res = find_minimal_b_bounded(f, g, fl.max_order, fl.max_sdeg);
    return {{"b", res.b.str()},
            {"P", res.certificate.P.str()},
            {"verified", res.certificate.verify()}};
}

json cmd_lct(const CommonFlags& fl) {
    auto [f, w] = parse_f_weights(fl);
    BFunction b = bs_weighted_homogeneous(f, w);
    return {{"lct", lct_from_bfunction(b).str()}};
}

json cmd_min_exp(const CommonFlags& fl) {
    auto [f, w] = parse_f_weights(fl);
    auto alpha = minimal_exponent(bs_weighted_homogeneous(f, w));
    return {{"minimal_exponent", alpha ? json(alpha->str()) : json("infinity")}};
}

json cmd_sigma(const CommonFlags& fl) {
    auto [f, w] = parse_f_weights(fl);
    SigmaSet sigma = sigma_set(f, w);
    json mults = json::array();
    for (unsigned m : sigma.multiplicities) mults.push_back(m);
    return {{"sigma", rat_list(sigma.values)},
            {"multiplicities", mults},
            {"milnor_number", sigma.milnor_number()},
            {"total_weight", w.total().str()}};
}

json cmd_jumping(const CommonFlags& fl) {
    if (fl.a.empty()) throw std::domain_error("missing --a");
    MonomialDivisor a(parse_unsigned_list(fl.a));
    auto bound = Rational::parse(fl.bound);
    if (!bound) throw std::domain_error("bad --bound");
    return {{"jumping_numbers", rat_list(jumping_numbers_monomial(a, *bound))}};
}

json cmd_mult_ideal(const CommonFlags& fl) {
    if (fl.a.empty()) throw std::domain_error("missing --a");
    if (fl.lambda.empty()) throw std::domain_error("missing --lambda");
    MonomialDivisor a(parse_unsigned_list(fl.a));
    auto lambda = Rational::parse(fl.lambda);
    if (!lambda) throw std::domain_error("bad --lambda");
    MonomialIdeal ideal =
        fl.i_kind ? i_lambda(a, *lambda) : multiplier_ideal_monomial(a, *lambda);
    VModel model = VModel::snc(a.exponents);
    Polynomial gen = Polynomial::term(model.f().vars(), ideal.generator, Rational(1));
    return {{"generator", gen.str()}, {"kind", fl.i_kind ? "i_lambda" : "multiplier_ideal"}};
}

json cmd_verify_beq(const CommonFlags& fl) {
    Polynomial f = parse_f(fl);
    Polynomial g = parse_polynomial(fl.g, f.vars());
    if (fl.b_text.empty()) throw std::domain_error("missing --b");
    if (fl.op_text.empty()) throw std::domain_error("missing --P");
    FunctionalEquationCertificate cert;
    cert.b_coefficients = poly_in_s_coefficients(fl.b_text);
    cert.P = parse_weyl_operator(fl.op_text, twisted_context(f));
    cert.g = g;
    cert.f = f;
    return {{"verified", cert.verify()}};
}

json cmd_vcheck(const CommonFlags& fl) {
    VModel model = model_from_flags(fl);
    if (fl.levels.empty()) throw std::domain_error("missing --levels");
    std::vector<Rational> levels = parse_levels(fl.levels, model.grid_denominator());
    Truncation trunc{fl.trunc_j, fl.trunc_d, 256};
    AxiomReport report = check_axioms(model, levels, trunc);
    return axiom_report_json(report);
}

json cmd_resolution_lct(const CommonFlags& fl) {
    if (fl.data.empty()) throw std::domain_error("missing --data");
    LogResolutionData data = load_resolution(fl.data);
    auto lower = min_exponent_lower_bound(data);
    return {{"lct", lct_from_resolution(data).str()},
            {"lct_g", lct_g_from_resolution(data).str()},
            {"min_exponent_lower_bound", lower ? json(lower->str()) : json("infinity")}};
}

json cmd_root_bounds(const CommonFlags& fl) {
    if (fl.data.empty()) throw std::domain_error("missing --data");
    LogResolutionData data = load_resolution(fl.data);
    RootBoundKind kind;
    if (fl.which == "bf-roots")
        kind = RootBoundKind::bf_roots;
    else if (fl.which == "dtm-roots")
        kind = RootBoundKind::dtm_roots;
    else if (fl.which == "g-dtm-bound")
        kind = RootBoundKind::g_dtm_bound;
    else if (fl.which == "g-delta-bound")
        kind = RootBoundKind::g_delta_bound;
    else
        throw std::domain_error("unknown --which");
    RootBoundResult res = root_bound_candidates(data, kind, fl.m, fl.L, fl.exceptional_only);
    json out;
    if (res.bound) out["bound"] = res.bound->str();
    if (!res.candidates.empty() || !res.bound) out["candidates"] = rat_list(res.candidates);
    return out;
}

json cmd_tau_demo(const CommonFlags& fl) {
    Polynomial f = parse_f(fl);
    Polynomial u = parse_polynomial(fl.u_text, f.vars());
    if (fl.p_text.empty()) throw std::domain_error("missing --p (polynomial in s)");
    BfElement e = tau(poly_in_s_coefficients(fl.p_text), u, f);
    return {{"result", e.str()}};
}

void print_text(std::ostream& out, const json& result, int indent = 0) {
    const std::string pad(indent, ' ');
    for (const auto& [key, value] : result.items()) {
        if (value.is_object()) {
            out << pad << key << ":\n";
            print_text(out, value, indent + 2);
        } else {
            out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                << "\n";
        }
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computer algebra for b-functions, V-filtration models and multiplier ideals"};
    app.require_subcommand(1);

    CommonFlags fl;
    std::map<std::string, Handler> handlers;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json,!--text", fl.as_json, "emit a JSON envelope instead of text");
    };

    auto make = [&](const std::string& name, const std::string& desc, Handler h) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        handlers[name] = std::move(h);
        add_common(cmd);
        return cmd;
    };

    CLI::App* c;
    c = make("bs", "b-function of a weighted homogeneous isolated singularity", cmd_bs);
    c->add_option("--f", fl.f, "polynomial")->required();
    c->add_option("--weights", fl.weights, "comma-separated positive rationals")->required();

    c = make("oracle-b", "bounded-degree functional-equation search for the minimal b", cmd_oracle_b);
    c->add_option("--f", fl.f, "polynomial")->required();
    c->add_option("--g", fl.g, "section polynomial (default 1)");
    c->add_option("--max-order", fl.max_order, "derivative order bound");
    c->add_option("--max-sdeg", fl.max_sdeg, "s-degree bound");

    c = make("lct", "log canonical threshold from the b-function", cmd_lct);
    c->add_option("--f", fl.f, "polynomial")->required();
    c->add_option("--weights", fl.weights, "weights")->required();

    c = make("min-exp", "minimal exponent", cmd_min_exp);
    c->add_option("--f", fl.f, "polynomial")->required();
    c->add_option("--weights", fl.weights, "weights")->required();

    c = make("sigma", "weighted degrees of the Milnor algebra basis", cmd_sigma);
    c->add_option("--f", fl.f, "polynomial")->required();
    c->add_option("--weights", fl.weights, "weights")->required();

    c = make("jumping", "jumping numbers of a monomial divisor", cmd_jumping);
    c->add_option("--a", fl.a, "monomial exponents, e.g. 2,3")->required();
    c->add_option("--bound", fl.bound, "upper bound (default 1)");

    c = make("mult-ideal", "multiplier ideal of a monomial divisor", cmd_mult_ideal);
    c->add_option("--a", fl.a, "monomial exponents")->required();
    c->add_option("--lambda", fl.lambda, "coefficient")->required();
    c->add_flag("--i-lambda", fl.i_kind, "the left-limit ideal I(f^lambda) instead");

    c = make("verify-beq", "verify a functional-equation certificate", cmd_verify_beq);
    c->add_option("--f", fl.f, "polynomial")->required();
    c->add_option("--g", fl.g, "section polynomial (default 1)");
    c->add_option("--b", fl.b_text, "polynomial in s")->required();
    c->add_option("--P", fl.op_text, "operator, e.g. \"1/4*dx^2\"")->required();

    c = make("vcheck", "filtration axiom checks on truncated snapshots", cmd_vcheck);
    c->add_option("--model", fl.model, "smooth|snc|qh")->required();
    c->add_option("--a", fl.a, "snc exponents");
    c->add_option("--f", fl.f, "qh polynomial");
    c->add_option("--weights", fl.weights, "qh weights");
    c->add_option("--levels", fl.levels,
                  "comma list, or start:end[:step] (default step = model grid)")
        ->required();
    c->add_option("--trunc-J", fl.trunc_j, "window derivative order (default 3)");
    c->add_option("--trunc-D", fl.trunc_d, "window degree (default 12)");

    c = make("resolution-lct", "thresholds from numerical log-resolution data", cmd_resolution_lct);
    c->add_option("--data", fl.data, "JSON file of rows")->required();

    c = make("root-bounds", "root candidate sets and bounds from resolution data", cmd_root_bounds);
    c->add_option("--data", fl.data, "JSON file of rows")->required();
    c->add_option("--which", fl.which, "bf-roots|dtm-roots|g-dtm-bound|g-delta-bound")->required();
    c->add_option("--m", fl.m, "derivative shift m");
    c->add_option("--L", fl.L, "enumeration cap (default 3*max a)");
    c->add_flag("--exceptional-only", fl.exceptional_only, "restrict to exceptional rows");

    c = make("tau-demo", "image of P(s) u f^s in the graph-embedding module", cmd_tau_demo);
    c->add_option("--f", fl.f, "polynomial")->required();
    c->add_option("--u", fl.u_text, "section (default 1)");
    c->add_option("--p", fl.p_text, "polynomial in s")->required();

    try {
        // CLI11's vector overload expects the arguments reversed.
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    if (const char* budget = std::getenv("VFLAB_MAX_MS")) {
        Deadline::set_budget_ms(std::atol(budget));
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&start] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    };

    json envelope;
    envelope["command"] = name;
    int code = 0;
    try {
        json result = handlers.at(name)(fl);
        envelope["status"] = "ok";
        envelope["result"] = result;
    } catch (const std::exception& e) {
        envelope["status"] = "error";
        envelope["error"] = e.what();
        code = 1;
    }
    Deadline::clear();
    envelope["timing_ms"] = elapsed_ms();

    if (fl.as_json) {
        out << envelope.dump(2) << "\n";
    } else {
        if (envelope["status"] == "ok") {
            print_text(out, envelope["result"]);
        } else {
            out << "error: " << envelope["error"].get<std::string>() << "\n";
        }
    }
    return code;
}

}  // namespace vflab::cli
