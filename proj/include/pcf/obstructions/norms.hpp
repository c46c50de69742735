#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/factorengine/certificate.hpp"
#include "pcf/factorengine/certificates.hpp"

namespace pcf {

/**
 * Nm_(K(beta)/K)(P(beta)) for beta a root of the monic h, as Res_x(h, P).
 * With this convention Nm(t - beta) = h(t).
 */
inline NFElem relative_norm(const KPoly& h, const KPoly& P) {
    if (h.degree() < 1 || !h.is_monic()) throw invalid_argument_error("relative norm needs a monic h of degree >= 1");
    if (P.is_zero()) return h.lead().field().zero();
    return resultant(h, P);
}

/// Witness that Res_x(h, P) == value.
inline Witness norm_witness(std::string step, std::string identity, const KPoly& h, const KPoly& P,
                            const NFElem& value) {
    Witness w;
    w.kind = witness_kind::norm;
    w.step = std::move(step);
    w.identity = std::move(identity);
    w.field = value.field();
    w.polys = {h, P};
    w.elements = {value};
    return w;
}

inline constexpr unsigned long nonsquare_factor_bound = 10000;

/**
 * Refutes beta in K^(x2) by an odd valuation. Tries the primes above each
 * preferred rational prime, then the primes above small rational primes
 * dividing the numerator or denominator of N(beta). Primes whose valuation
 * backend is unavailable are skipped with a diagnostic. Never claims that
 * beta is a square.
 */
inline Certificate nonsquare_certificate(const NFElem& beta, const std::vector<std::uint64_t>& preferred = {},
                                         unsigned T = default_precision) {
    if (beta.is_zero()) throw invalid_argument_error("nonsquare certificate needs a nonzero element");
    const NumberField& K = beta.field();
    Certificate cert;
    cert.claim = to_text(beta) + " is not a square in K";
    cert.taint = K.tainted();
    if (cert.taint) cert.diagnostics.push_back("defining polynomial irreducibility assumed by the user");

    std::vector<std::uint64_t> candidates = preferred;
    const mpq_class N = nf_norm(beta);
    for (const mpz_class& part : {mpz_class(N.get_num()), mpz_class(N.get_den())})
        for (unsigned long p : small_prime_factors(part, nonsquare_factor_bound).first)
            if (std::find(candidates.begin(), candidates.end(), p) == candidates.end()) candidates.push_back(p);

    std::string tried;
    for (std::uint64_t p : candidates) {
        std::vector<PrimeAboveD> primes;
        try {
            primes = primes_above(K, p, T);
        } catch (const unsupported_error& e) {
            cert.diagnostics.push_back(std::string("skipped: ") + e.what());
            continue;
        }
        for (const auto& P : primes) {
            const long v = valuation_exact(beta, P);
            tried += (tried.empty() ? "" : ", ") + std::to_string(v);
            if (v % 2 == 0) continue;
            cert.add(Witness::note("maximality", P.maximality_reason()));
            cert.add(valuation_witness("odd valuation", beta, P, v));
            cert.add(Witness::note("square class", "every square has even valuation at " + P.describe() +
                                                       ", so " + to_text(beta) + " is not a square"));
            cert.result = verdict::verified;
            return cert;
        }
    }
    cert.diagnostics.push_back(tried.empty() ? "no prime with an available valuation backend"
                                             : "all tested valuations even: " + tried);
    cert.result = verdict::inconclusive;
    return cert;
}

}  // namespace pcf
