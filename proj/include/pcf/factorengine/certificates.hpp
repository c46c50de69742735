#pragma once

#include <string>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/factorengine/certificate.hpp"
#include "pcf/factorengine/factorization.hpp"
#include "pcf/factorengine/iterate.hpp"
#include "pcf/factorengine/modular.hpp"

namespace pcf {

/// Witness that v_P(x) = v.
inline Witness valuation_witness(std::string step, const NFElem& x, const PrimeAboveD& P, long v) {
    Witness w;
    w.kind = witness_kind::valuation;
    w.step = std::move(step);
    w.identity = "v_P(" + to_text(x) + ") = " + std::to_string(v);
    w.field = x.field();
    w.prime = P;
    w.valuation = v;
    w.elements = {x};
    return w;
}

/// Witness that x is an algebraic unit.
inline Witness unit_witness(std::string step, const NFElem& x) {
    Witness w;
    w.kind = witness_kind::unit;
    w.step = std::move(step);
    w.identity = "N(" + to_text(x) + ") = " + nf_norm(x).get_str();
    w.field = x.field();
    w.elements = {x};
    return w;
}

/**
 * Eisenstein test for a monic h over K at P: every non-leading coefficient
 * has valuation >= 1 and the constant has valuation exactly 1.
 */
inline Certificate eisenstein_certificate(const KPoly& h, const PrimeAboveD& P) {
    if (!h.is_monic()) throw invalid_argument_error("Eisenstein test needs a monic polynomial");
    Certificate cert;
    cert.claim = "degree " + std::to_string(h.degree()) + " polynomial is Eisenstein at " + P.describe();
    cert.taint = P.field.tainted();
    cert.add(Witness::note("maximality", P.maximality_reason()));
    long least = -1;
    for (long j = 1; j < h.degree(); ++j) {
        const NFElem& c = h[static_cast<std::size_t>(j)];
        if (c.is_zero()) continue;
        Valuation v = valuation(c, P);
        long lower = v.value;  // exact, or a lower bound
        if (lower < 1) lower = valuation_exact(c, P);
        if (lower < 1) {
            cert.result = verdict::refuted;
            cert.add(valuation_witness("coefficient of x^" + std::to_string(j), c, P, lower));
            return cert;
        }
        if (least < 0 || lower < least) least = lower;
    }
    cert.add(Witness::note("middle", least < 0 ? "no middle coefficients"
                                               : "all middle coefficients have valuation >= " + std::to_string(least)));
    const NFElem h0 = h.coeff_or_zero(0, P.field.zero());
    if (h0.is_zero()) {
        cert.result = verdict::refuted;
        cert.add(Witness::note("constant", "constant term is zero"));
        return cert;
    }
    const long v0 = valuation_exact(h0, P);
    cert.add(valuation_witness("constant", h0, P, v0));
    cert.result = v0 == 1 ? verdict::verified : verdict::refuted;
    return cert;
}

/**
 * Stability of (f, alpha) up to N, the least multiple of n with N >= k_max.
 * Needs a prime P above d with v_P(alpha) = 1 (periodic) or v_P(alpha) >= 2
 * (preperiodic); f^N - alpha Eisenstein at P gives irreducibility of every
 * f^k - alpha with k <= N, since f^N - alpha = (f^k - alpha) o f^(N-k).
 */
inline Certificate stability_certificate(Dynamics& dyn, const ExactType& type, const NFElem& alpha, long k_max,
                                         unsigned T = default_precision) {
    if (k_max < 1) throw invalid_argument_error("k_max must be at least 1");
    const NumberField& K = dyn.field();
    const long d = dyn.d();
    const auto primes = primes_above(K, static_cast<std::uint64_t>(d), T);
    const bool periodic = type.periodic();
    const std::string need = periodic ? "v_P(alpha) = 1" : "v_P(alpha) >= 2";
    std::optional<PrimeAboveD> chosen;
    std::optional<long> chosen_v;
    std::string seen;
    for (const auto& P : primes) {
        std::optional<long> v;
        if (!alpha.is_zero()) v = valuation_exact(alpha, P);
        seen += (seen.empty() ? "" : ", ") + (v ? std::to_string(*v) : std::string("infinity"));
        const bool ok = periodic ? (v && *v == 1) : (!v || *v >= 2);
        if (ok && !chosen) {
            chosen = P;
            chosen_v = v;
        }
    }
    if (!chosen)
        throw hypothesis_unmet_error("no prime above " + std::to_string(d) + " with " + need +
                                     " (valuations of alpha: " + seen + ")");
    const long N = type.n * ((k_max + type.n - 1) / type.n);
    dyn.degree_of(N);

    Certificate cert;
    cert.claim = "f^k - alpha irreducible over K for 1 <= k <= " + std::to_string(N) + " (d=" + std::to_string(d) +
                 ", " + type.describe() + ", alpha = " + to_text(alpha) + ")";
    cert.taint = K.tainted();
    if (cert.taint) cert.diagnostics.push_back("defining polynomial irreducibility assumed by the user");
    if (chosen_v) cert.add(valuation_witness("hypothesis " + need, alpha, *chosen, *chosen_v));
    else cert.add(Witness::note("hypothesis " + need, "alpha = 0"));

    const IterateForm form = structural_form(dyn, type, N);
    Witness shape;
    shape.kind = witness_kind::shape;
    shape.step = "shape of f^" + std::to_string(N);
    shape.identity = "f^" + std::to_string(N) + " = x^" + std::to_string(form.full.degree()) + " + " +
                     std::to_string(d) + " x^" + std::to_string(d) + " F(x) + " + to_text(form.constant);
    shape.field = K;
    shape.d = d;
    shape.k = N;
    shape.elements = {form.constant};
    cert.add(shape);
    if (form.unit_residual)
        cert.add(unit_witness("a_" + std::to_string(N) + " / a_" + std::to_string(form.index), *form.unit_residual));

    const KPoly h = form.full - KPoly::constant(alpha);
    Certificate e = eisenstein_certificate(h, *chosen);
    for (auto& w : e.witnesses) cert.add(std::move(w));
    Witness eis;
    eis.kind = witness_kind::eisenstein;
    eis.step = "Eisenstein";
    eis.identity = "f^" + std::to_string(N) + " - alpha is Eisenstein at " + chosen->describe();
    eis.field = K;
    eis.prime = *chosen;
    eis.d = d;
    eis.k = N;
    eis.elements = {alpha};
    if (e.verified()) {
        eis.valuation = 1;
        cert.add(std::move(eis));
        cert.add(Witness::note("descent", "f^" + std::to_string(N) + " - alpha = (f^k - alpha) o f^(" +
                                              std::to_string(N) + " - k), so every f^k - alpha with k <= " +
                                              std::to_string(N) + " is irreducible"));
    }
    cert.result = e.result;
    return cert;
}

/**
 * Irreducibility of F_(k,i) over K. The cyclotomic route checks the
 * K-level ingredients of the Eisenstein argument over L = K(zeta) at a prime
 * q above (1 - zeta): d unramified in K, a_i a unit, and
 * f^(m+k) = x^(d^(m+k)) + d x^d F(x) + a_i with m + k = i mod n. Then
 * f^(m+k) - zeta^l a_i = (f^k - zeta^l a_i) o f^m is Eisenstein at q, and
 * Capelli descent gives F_(k,i) irreducible over K. The fallback reduces
 * F_(k,i) modulo a prime of K not dividing disc(g).
 */
struct FIrreducibilityOptions {
    bool cyclotomic_route = true;  // false forces the mod-prime fallback
    std::size_t fallback_primes = 24;
};

inline Certificate f_irreducibility_certificate(Dynamics& dyn, long n, long k, long i,
                                                const FIrreducibilityOptions& opt = {}) {
    const KPoly& F = f_factor(dyn, n, k, i);
    const NumberField& K = dyn.field();
    const long d = dyn.d();
    const std::string label = "F(" + std::to_string(k) + "," + std::to_string(i) + ")";
    Certificate cert;
    cert.claim = label + " irreducible over K (d=" + std::to_string(d) + ", n=" + std::to_string(n) + ")";
    cert.taint = K.tainted();
    if (cert.taint) cert.diagnostics.push_back("defining polynomial irreducibility assumed by the user");

    const long m = (((i - k) % n) + n) % n;
    bool route = opt.cyclotomic_route;
    if (!route) cert.diagnostics.push_back("cyclotomic route disabled");
    else if (mpz_divisible_ui_p(K.disc().get_mpz_t(), static_cast<unsigned long>(d))) {
        route = false;
        cert.diagnostics.push_back(std::to_string(d) + " divides disc(g) = " + K.disc().get_str());
    } else {
        Witness w;
        w.kind = witness_kind::unramified;
        w.step = "unramified";
        w.identity = std::to_string(d) + " does not divide disc(g) = " + K.disc().get_str();
        w.field = K;
        w.d = d;
        cert.add(std::move(w));
    }
    const NFElem ai = dyn.a(i);
    if (route) {
        if (is_unit(ai)) {
            cert.add(unit_witness("a_" + std::to_string(i) + " unit", ai));
        } else {
            route = false;
            cert.diagnostics.push_back("a_" + std::to_string(i) + " is not a unit");
        }
    }
    if (route) {
        try {
            ExactType per;
            per.k = ExactType::kind::periodic;
            per.n = n;
            const IterateForm form = structural_form(dyn, per, m + k);
            Witness w;
            w.kind = witness_kind::shape;
            w.step = "shape of f^" + std::to_string(m + k) + " (m = " + std::to_string(m) + ")";
            w.identity = "f^" + std::to_string(m + k) + " = x^" + std::to_string(form.full.degree()) + " + " +
                         std::to_string(d) + " x^" + std::to_string(d) + " F(x) + a_" + std::to_string(i);
            w.field = K;
            w.d = d;
            w.k = m + k;
            w.elements = {ai};
            cert.add(std::move(w));
        } catch (const pcf::error& e) {
            route = false;
            cert.diagnostics.push_back(std::string("shape check failed: ") + e.what());
        }
    }
    if (route) {
        cert.add(Witness::note(
            "Eisenstein over K(zeta)",
            "for q above (1 - zeta^l): v_q((1 - zeta^l) a_" + std::to_string(i) +
                ") = 1 and middle coefficients lie in d O_K, so f^" + std::to_string(m + k) + " - zeta^l a_" +
                std::to_string(i) + " = (f^" + std::to_string(k) + " - zeta^l a_" + std::to_string(i) + ") o f^" +
                std::to_string(m) + " is Eisenstein at q; Capelli descent gives " + label + " irreducible over K"));
        cert.result = verdict::verified;
        return cert;
    }

    for (std::uint64_t p : detail::auxiliary_primes(d, opt.fallback_primes)) {
        if (mpz_divisible_ui_p(K.disc().get_mpz_t(), p)) continue;
        const ModularImage img = modular_image(K, p);
        auto im = image(img, F);
        if (!im || im->degree() != F.degree() || !is_irreducible(*im)) continue;
        Witness w;
        w.kind = witness_kind::irreducible_mod;
        w.step = "irreducible mod P";
        w.identity = label + " is irreducible modulo (" + std::to_string(p) + ", " + to_text(lift_fp(img.residue), "c") +
                     ")";
        w.field = K;
        w.polys = {F};
        w.modulus = p;
        w.residue = img.residue;
        cert.add(std::move(w));
        cert.diagnostics.push_back("fallback: mod-prime irreducibility");
        cert.result = verdict::verified;
        return cert;
    }
    cert.result = verdict::inconclusive;
    return cert;
}

/// A linear factor is irreducible.
inline Certificate linear_factor_certificate(const NumberField& K, const KPoly& h) {
    if (h.degree() != 1) throw invalid_argument_error("linear factor expected");
    Certificate cert;
    cert.claim = to_text(h, "x") + " irreducible over K";
    cert.taint = K.tainted();
    cert.add(Witness::note("degree", "degree 1"));
    cert.result = verdict::verified;
    return cert;
}

/// Irreducibility certificate for one labeled factor of a factorization product.
inline Certificate factor_certificate(Dynamics& dyn, const FactorProduct& prod, const LabeledFactor& f) {
    if (f.label.linear) return linear_factor_certificate(dyn.field(), f.poly);
    return f_irreducibility_certificate(dyn, prod.n, f.label.k, f.label.i);
}

}  // namespace pcf
