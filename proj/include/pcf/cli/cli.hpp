#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/factorengine/factorengine.hpp"
#include "pcf/obstructions/obstructions.hpp"
#include "pcf/pcforbits/pcforbits.hpp"

namespace pcf::cli {

/// Exit codes.
enum exit_code : int { ok = 0, refuted = 1, inconclusive = 2, usage = 3, unsupported = 4 };

inline int exit_for(verdict v) {
    switch (v) {
        case verdict::verified: return ok;
        case verdict::refuted: return refuted;
        case verdict::inconclusive: return inconclusive;
        case verdict::unsupported: return unsupported;
    }
    return usage;
}

/// Library errors mapped to exit codes: failed identities are refutations,
/// backend and budget limits are Unsupported, everything else is an input error.
inline int exit_for(const pcf::error& e) {
    switch (e.kind()) {
        case error_kind::oracle_mismatch:
        case error_kind::not_divisible:
        case error_kind::shape_violation:
        case error_kind::not_unit: return refuted;
        case error_kind::unsupported:
        case error_kind::budget_exceeded:
        case error_kind::precision_exceeded: return unsupported;
        default: return usage;
    }
}

struct RunConfig {
    std::string subcommand;
    long d = 2;
    std::optional<long> n, m, i, k, kmax, gleason_n, bound;
    std::string misiurewicz, field_path, g, alpha, case_name;
    unsigned T = default_precision;
    long seed = 0;  // every algorithm is deterministic; accepted so scripted runs can pin it
    std::string format = "json";
    unsigned long budget = default_degree_budget;
    bool verify = false;
    bool fallback = false;
};

/// A report: JSON for machines, lines of text for people.
struct Report {
    json data;
    std::string text;
    int code = ok;
};

namespace detail {

inline long positive(const std::optional<long>& v, const char* name) {
    if (!v) throw invalid_argument_error(std::string("--") + name + " is required");
    if (*v < 1) throw invalid_argument_error(std::string("--") + name + " must be positive");
    return *v;
}

inline std::pair<long, long> parse_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw invalid_argument_error("expected m,n but got '" + s + "'");
    try {
        std::size_t a = 0, b = 0;
        const long m = std::stol(s.substr(0, comma), &a);
        const long n = std::stol(s.substr(comma + 1), &b);
        if (a != comma || b != s.size() - comma - 1) throw std::invalid_argument(s);
        return {m, n};
    } catch (const std::logic_error&) {
        throw invalid_argument_error("expected m,n but got '" + s + "'");
    }
}

inline NumberField load_field(const RunConfig& c) {
    const int sources = (c.gleason_n ? 1 : 0) + (c.misiurewicz.empty() ? 0 : 1) + (c.g.empty() ? 0 : 1) +
                        (c.field_path.empty() ? 0 : 1);
    if (sources != 1)
        throw invalid_argument_error("give exactly one field source: --gleason-n, --misiurewicz, --g or --field");
    if (c.gleason_n) return NumberField::create(gleason(c.d, positive(c.gleason_n, "gleason-n"), c.budget));
    if (!c.misiurewicz.empty()) {
        const auto [m, n] = parse_pair(c.misiurewicz);
        return NumberField::create(pcf::misiurewicz(c.d, m, n, c.budget).norm_form);
    }
    if (!c.g.empty()) {
        const auto [g, den] = clear_denominators(parse_rat_poly(c.g, "c"));
        if (den != 1) throw invalid_argument_error("--g must have integer coefficients");
        return NumberField::create(g);
    }
    std::ifstream in(c.field_path);
    if (!in) throw invalid_argument_error("cannot read field file '" + c.field_path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw invalid_argument_error("field file '" + c.field_path + "' is not JSON: " + e.what());
    }
    try {
        const IntPoly g = int_poly_from_json(j.at("g"));
        if (j.value("assume_irreducible", false)) return NumberField::assume_irreducible(g);
        return NumberField::create(g);
    } catch (const json::exception& e) {
        throw invalid_argument_error("field file '" + c.field_path + "': " + e.what());
    }
}

inline NFElem load_alpha(const NumberField& K, const std::string& text, bool required) {
    if (text.empty()) {
        if (required) throw invalid_argument_error("--alpha is required");
        return K.zero();
    }
    return K.parse(text);
}

inline ExactType load_type(const NumberField& K, const RunConfig& c) {
    return exact_type(K, c.d, c.bound.value_or(64));
}

inline std::string prime_text(const Witness& w) {
    if (w.prime) return w.prime->describe();
    if (w.modulus != 0) return "(" + std::to_string(w.modulus) + ", " + to_text(lift_fp(w.residue), "c") + ")";
    return "";
}

inline std::string certificate_text(const Certificate& c, const std::string& indent = "") {
    std::string s = indent + "claim: " + c.claim + "\n" + indent + "verdict: " + to_string(c.result) + "\n";
    for (const auto& w : c.witnesses) {
        s += indent + "  - " + w.step + ": " + w.identity;
        const std::string p = prime_text(w);
        if (!p.empty()) s += " [" + p + (w.valuation ? ", v = " + std::to_string(*w.valuation) : "") + "]";
        s += "\n";
    }
    for (const auto& d : c.diagnostics) s += indent + "  ! " + d + "\n";
    if (c.taint) s += indent + "  taint: defining polynomial irreducibility assumed\n";
    return s;
}

inline int worst(int a, int b) {
    auto rank = [](int c) { return c == refuted ? 3 : c == unsupported ? 2 : c == inconclusive ? 1 : 0; };
    return rank(a) >= rank(b) ? a : b;
}

inline Report cmd_gleason(const RunConfig& c) {
    const long n = positive(c.n, "n");
    const IntPoly G = gleason(c.d, n, c.budget);
    return {json{{"d", c.d}, {"n", n}, {"degree", G.degree()}, {"poly", poly_json(G, "c")}}, to_text(G, "c") + "\n"};
}

inline Report cmd_misiurewicz(const RunConfig& c) {
    const long m = positive(c.m, "m"), n = positive(c.n, "n");
    const MisiurewiczPoly p = pcf::misiurewicz(c.d, m, n, c.budget);
    return {json{{"d", c.d},
                 {"m", m},
                 {"n", n},
                 {"poly", cycpoly_json(p.poly, static_cast<int>(c.d))},
                 {"norm_form", poly_json(p.norm_form, "c")}},
            "poly: " + to_text(p.poly, "c") + "\nnorm form: " + to_text(p.norm_form, "c") + "\n"};
}

inline Report cmd_orbit(const RunConfig& c) {
    const NumberField K = load_field(c);
    const long k = c.k ? positive(c.k, "k") : 8;
    Dynamics dyn(K, c.d, c.budget);
    json orbit = json::array();
    std::string text;
    for (long i = 0; i <= k; ++i) {
        orbit.push_back(element_json(dyn.a(i)));
        text += "a_" + std::to_string(i) + " = " + to_text(dyn.a(i)) + "\n";
    }
    return {json{{"field", field_json(K)}, {"d", c.d}, {"orbit", orbit}}, text};
}

inline Report cmd_exact_type(const RunConfig& c) {
    const NumberField K = load_field(c);
    const ExactType t = load_type(K, c);
    return {json{{"field", field_json(K)}, {"d", c.d}, {"type", exact_type_json(t)}}, t.describe() + "\n"};
}

inline Report cmd_factor(const RunConfig& c, bool certificates_only) {
    const NumberField K = load_field(c);
    const long k = positive(c.k, "k");
    const ExactType t = load_type(K, c);
    if (!t.periodic()) throw hypothesis_unmet_error("factorization needs a periodic parameter, got " + t.describe());
    Dynamics dyn(K, c.d, c.budget);
    const FactorProduct prod = prop31_factorization(dyn, t.n, k);
    Report r;
    std::string text;
    if (!certificates_only) {
        r.data = json{{"field", field_json(K)}, {"d", c.d}, {"n", t.n}, {"k", k},
                      {"factorization", factor_product_json(prod)}};
        for (const auto& f : prod.factors)
            text += f.label.text() + "^" + std::to_string(f.exp) + ": " + to_text(f.poly, "x") + "\n";
        text += "count: " + std::to_string(prod.count()) + "\n";
    }
    if (c.verify || certificates_only) {
        const Certificate cert = verify_factorization(dyn, prod);
        r.code = exit_for(cert.result);
        text += certificate_text(cert);
        if (certificates_only) {
            r.data = json{{"field", field_json(K)}, {"d", c.d}, {"n", t.n}, {"k", k},
                          {"certificate", certificate_json(cert)}};
            json factors = json::array();
            for (const auto& f : prod.factors) {
                const Certificate fc = factor_certificate(dyn, prod, f);
                r.code = worst(r.code, exit_for(fc.result));
                factors.push_back(json{{"label", f.label.text()}, {"certificate", certificate_json(fc)}});
                text += certificate_text(fc);
            }
            r.data["factor_certificates"] = factors;
        } else {
            r.data["certificate"] = certificate_json(cert);
        }
    }
    r.text = text;
    return r;
}

inline Report certificate_report(const Certificate& cert) {
    return {certificate_json(cert), certificate_text(cert), exit_for(cert.result)};
}

inline Report cmd_stability(const RunConfig& c) {
    const NumberField K = load_field(c);
    const NFElem alpha = load_alpha(K, c.alpha, true);
    const long kmax = positive(c.kmax, "kmax");
    Dynamics dyn(K, c.d, c.budget);
    return certificate_report(stability_certificate(dyn, load_type(K, c), alpha, kmax, c.T));
}

inline Report cmd_f_irred(const RunConfig& c) {
    const NumberField K = load_field(c);
    if (!c.k || *c.k < 0) throw invalid_argument_error("--k is required and must be nonnegative");
    const long i = positive(c.i, "i");
    const ExactType t = load_type(K, c);
    if (!t.periodic()) throw hypothesis_unmet_error("F factors need a periodic parameter, got " + t.describe());
    Dynamics dyn(K, c.d, c.budget);
    FIrreducibilityOptions opt;
    opt.cyclotomic_route = !c.fallback;
    return certificate_report(f_irreducibility_certificate(dyn, t.n, *c.k, i, opt));
}

inline Report cmd_disc(const RunConfig& c) {
    const NumberField K = load_field(c);
    const long k = positive(c.k, "k");
    const NFElem x0 = load_alpha(K, c.alpha, false);
    Dynamics dyn(K, c.d, c.budget);
    const DiscTrace t = disc_iterate(dyn, x0, k);
    std::string text;
    for (const auto& s : t.steps)
        text += "disc(f^" + std::to_string(s.k) + " - x0) = " + to_text(s.value) +
                (s.oracle_checked ? " (resultant agrees)" : "") + "\n";
    return {json{{"field", field_json(K)}, {"trace", disc_trace_json(t)}}, text};
}

inline Report cmd_audit(const RunConfig& c) {
    const NumberField K = load_field(c);
    const long i = positive(c.i, "i");
    Dynamics dyn(K, c.d, c.budget);
    const IdealAudit a = ideal_power_audit(dyn, load_type(K, c), i, c.T);
    std::string text = "i = " + std::to_string(i) + ", N(a_i) = " + a.norm.get_str() + "\n";
    if (!a.multiple_of_n) {
        text += std::string("a_i is ") + (a.unit.value_or(false) ? "" : "not ") + "a unit\n";
    } else {
        text += "A_emp = " + (a.a_emp ? std::to_string(*a.a_emp) : std::string("none")) + "\n";
        text += "printed: " + a.printed_divides.get_str() + " (n | m-1), " + a.printed_not_divides.get_str() +
                " (n not dividing m-1); condition " + (a.condition_divides ? "n | m-1" : "n not dividing m-1") +
                " holds\nmatch: " + a.match + "\n";
    }
    return {json{{"field", field_json(K)}, {"audit", ideal_audit_json(a)}}, text};
}

inline Report cmd_nonabelian(const RunConfig& c) {
    const auto which = parse_nonabelian_case(c.case_name);
    if (!which)
        throw invalid_argument_error("--case must be one of periodic-1..periodic-4, preperiodic-1, preperiodic-2");
    const NumberField K = load_field(c);
    const NFElem alpha = load_alpha(K, c.alpha, false);
    Dynamics dyn(K, c.d, c.budget);
    return certificate_report(nonabelian_certificate(*which, dyn, load_type(K, c), alpha, c.T));
}

}  // namespace detail

/// Runs one command. Output goes to `out` only on success paths; errors go to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact arithmetic for post-critically finite x^d + c"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* s, bool field) {
        s->add_option("--d", cfg.d, "degree d (prime)");
        s->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        s->add_option("--seed", cfg.seed, "seed (all computations are deterministic)");
        s->add_option("--budget", cfg.budget, "largest allowed polynomial degree");
        s->add_option("--T", cfg.T, "p-adic lifting precision");
        if (field) {
            s->add_option("--gleason-n", cfg.gleason_n, "field of the Gleason polynomial of period n");
            s->add_option("--misiurewicz", cfg.misiurewicz, "field of the Misiurewicz polynomial of type m,n");
            s->add_option("--g", cfg.g, "defining polynomial in c, e.g. \"c^2 + 1\"");
            s->add_option("--field", cfg.field_path, "JSON file {\"g\": polynomial, \"assume_irreducible\": bool}");
            s->add_option("--bound", cfg.bound, "orbit length searched for the exact type");
        }
    };
    using handler = std::function<Report(const RunConfig&)>;
    std::vector<std::pair<CLI::App*, handler>> subs;
    auto add = [&](const char* name, const char* help, bool field, handler h) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s, field);
        subs.emplace_back(s, std::move(h));
        return s;
    };

    auto* g = add("gleason", "Gleason polynomial G_(d,n)", false, detail::cmd_gleason);
    g->add_option("--n", cfg.n, "period");
    auto* m = add("misiurewicz", "Misiurewicz polynomial M_(d,m,n)", false, detail::cmd_misiurewicz);
    m->add_option("--m", cfg.m, "preperiod");
    m->add_option("--n", cfg.n, "period");
    add("orbit", "critical orbit a_0..a_k", true, detail::cmd_orbit)->add_option("--k", cfg.k, "last index");
    add("exact-type", "exact type of c0", true, detail::cmd_exact_type);
    auto* f = add("factor", "closed-form factorization of f^k", true, [](const RunConfig& c) {
        return detail::cmd_factor(c, false);
    });
    f->add_option("--k", cfg.k, "iterate");
    f->add_flag("--verify", cfg.verify, "attach the factorization certificate");
    add("verify-factor", "factorization and irreducibility certificates", true, [](const RunConfig& c) {
        return detail::cmd_factor(c, true);
    })->add_option("--k", cfg.k, "iterate");
    auto* st = add("stability-cert", "Eisenstein stability certificate", true, detail::cmd_stability);
    st->add_option("--alpha", cfg.alpha, "alpha as a polynomial in c, e.g. 4, 1/2 or c^2");
    st->add_option("--kmax", cfg.kmax, "largest iterate to certify");
    auto* fi = add("f-irred-cert", "irreducibility certificate for F_(k,i)", true, detail::cmd_f_irred);
    fi->add_option("--k", cfg.k, "first index");
    fi->add_option("--i", cfg.i, "second index");
    fi->add_flag("--fallback", cfg.fallback, "skip the cyclotomic route and use mod-prime irreducibility");
    auto* dc = add("disc-check", "discriminant recursion against the resultant", true, detail::cmd_disc);
    dc->add_option("--k", cfg.k, "last iterate");
    dc->add_option("--alpha", cfg.alpha, "x0 (default 0)");
    add("ideal-audit", "ideal-power relation of a_i", true, detail::cmd_audit)->add_option("--i", cfg.i, "index");
    auto* na = add("nonabelian-cert", "non-abelian certificate", true, detail::cmd_nonabelian);
    na->add_option("--case", cfg.case_name, "periodic-1..periodic-4, preperiodic-1, preperiodic-2");
    na->add_option("--alpha", cfg.alpha, "alpha (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    for (auto& [s, h] : subs) {
        if (!s->parsed()) continue;
        cfg.subcommand = s->get_name();
        try {
            require_prime_degree(cfg.d);
            if (cfg.T < 1) throw invalid_argument_error("--T must be positive");
            if (cfg.budget < 1) throw invalid_argument_error("--budget must be positive");
            const Report r = h(cfg);
            if (cfg.format == "text") out << r.text;
            else out << r.data.dump(2) << "\n";
            return r.code;
        } catch (const pcf::error& e) {
            err << "error: " << e.what() << "\n";
            return exit_for(e);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return usage;
        }
    }
    return usage;
}

}  // namespace pcf::cli
