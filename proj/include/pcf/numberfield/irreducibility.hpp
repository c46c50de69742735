#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/integers.hpp"
#include "pcf/exactpoly/json.hpp"
#include "pcf/modarith/factor.hpp"
#include "pcf/modarith/hensel.hpp"

namespace pcf {

enum class irreducibility_verdict { certified, refuted, inconclusive };

inline const char* to_string(irreducibility_verdict v) {
    switch (v) {
        case irreducibility_verdict::certified: return "Certified";
        case irreducibility_verdict::refuted: return "Refuted";
        case irreducibility_verdict::inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

/// Factor degrees of g modulo one prime.
struct DegreePattern {
    std::uint64_t p;
    std::vector<int> degrees;
};

/**
 * Evidence for or against irreducibility of a monic g over Q.
 *
 * method is one of: linear, irreducible-mod-p, degree-patterns,
 * factor-search-exhausted (certified); repeated-factor, rational-root,
 * factor-search (refuted); none (inconclusive).
 */
struct IrreducibilityCertificate {
    irreducibility_verdict verdict = irreducibility_verdict::inconclusive;
    std::string method = "none";
    std::vector<DegreePattern> patterns;
    std::optional<IntPoly> factor;
    std::string detail;
};

struct IrreducibilityOptions {
    std::size_t good_primes = 20;      // primes not dividing disc(g) to try
    std::size_t search_factors = 16;   // factor search only when g has at most this many factors mod p
    long rational_root_bound = 1000000;
};

namespace detail {

/// Degrees reachable as sums of sub-multisets of `degs`.
inline std::vector<bool> subset_sums(const std::vector<int>& degs, int n) {
    std::vector<bool> reach(static_cast<std::size_t>(n) + 1, false);
    reach[0] = true;
    for (int d : degs)
        for (int s = n; s >= d; --s)
            if (reach[static_cast<std::size_t>(s - d)]) reach[static_cast<std::size_t>(s)] = true;
    return reach;
}

/// Monic divisor test over Z (h monic).
inline bool divides(const IntPoly& h, const IntPoly& g) { return divrem(g, h).second.is_zero(); }

/// Bound on coefficients of any monic factor of g: 2^deg(g) * (||g||_2 + 1).
inline mpz_class factor_coefficient_bound(const IntPoly& g) {
    mpz_class s = 0;
    for (const auto& c : g.coeffs()) s += c * c;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    mpz_class b = r + 2;
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(g.degree()));
    return b;
}

}  // namespace detail

inline IrreducibilityCertificate irreducibility_certificate(const IntPoly& g, const IrreducibilityOptions& opt = {}) {
    if (g.degree() < 1 || !g.is_monic())
        throw invalid_argument_error("irreducibility certificate needs a monic nonconstant polynomial");
    IrreducibilityCertificate cert;
    const int n = g.degree();
    if (n == 1) {
        cert.verdict = irreducibility_verdict::certified;
        cert.method = "linear";
        return cert;
    }
    const mpz_class disc = discriminant(g);
    if (sgn(disc) == 0) {
        cert.verdict = irreducibility_verdict::refuted;
        cert.method = "repeated-factor";
        cert.factor = gcd(g, derivative(g));
        cert.detail = "discriminant vanishes";
        return cert;
    }

    const mpz_class g0 = abs(g[0]);
    if (sgn(g0) == 0) {
        cert.verdict = irreducibility_verdict::refuted;
        cert.method = "rational-root";
        cert.factor = int_poly({0, 1});
        cert.detail = "root 0";
        return cert;
    }
    if (g0 <= opt.rational_root_bound) {
        for (long r : divisors(g0.get_si())) {
            for (long s : {r, -r}) {
                if (sgn(eval(g, mpz_class(s))) == 0) {
                    cert.verdict = irreducibility_verdict::refuted;
                    cert.method = "rational-root";
                    cert.factor = int_poly({-s, 1});
                    cert.detail = "root " + std::to_string(s);
                    return cert;
                }
            }
        }
    }

    std::vector<bool> common(static_cast<std::size_t>(n) + 1, true);
    std::optional<FpFactorization> best;
    std::uint64_t best_p = 0;
    std::size_t tried = 0;
    for (unsigned long p = 2; tried < opt.good_primes && p < 10000; ++p) {
        if (!is_prime(p) || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        ++tried;
        auto fac = fp_factor(to_fp(g, p));
        DegreePattern pat{p, {}};
        for (const auto& e : fac.factors) pat.degrees.push_back(e.factor.degree());
        cert.patterns.push_back(pat);
        if (fac.factors.size() == 1) {
            cert.verdict = irreducibility_verdict::certified;
            cert.method = "irreducible-mod-p";
            cert.patterns = {pat};
            cert.detail = "irreducible mod " + std::to_string(p);
            return cert;
        }
        auto reach = detail::subset_sums(pat.degrees, n);
        bool only_trivial = true;
        for (int s = 0; s <= n; ++s) {
            common[static_cast<std::size_t>(s)] = common[static_cast<std::size_t>(s)] && reach[static_cast<std::size_t>(s)];
            if (s != 0 && s != n && common[static_cast<std::size_t>(s)]) only_trivial = false;
        }
        if (only_trivial) {
            cert.verdict = irreducibility_verdict::certified;
            cert.method = "degree-patterns";
            cert.detail = "no proper factor degree is compatible with every pattern";
            return cert;
        }
        if (!best || fac.factors.size() < best->factors.size()) {
            best = fac;
            best_p = p;
        }
    }

    if (!best || best->factors.size() > opt.search_factors) return cert;

    // Exhaustive search over products of lifted modular factors of degree <= n/2.
    const mpz_class bound = detail::factor_coefficient_bound(g);
    unsigned T = 1;
    mpz_class pT(std::to_string(best_p));
    while (pT <= 2 * bound) {
        pT *= best_p;
        ++T;
    }
    auto lifted = hensel_lift(g, *best, T);
    const std::size_t r = lifted.factors.size();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << r); ++mask) {
        int deg = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1U) deg += lifted.factors[i].degree();
        if (2 * deg > n) continue;
        IntPoly h = IntPoly::constant(1);
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1U) h = reduce_mod(h * lifted.factors[i], lifted.modulus);
        h = reduce_mod_symmetric(h, lifted.modulus);
        if (detail::divides(h, g)) {
            cert.verdict = irreducibility_verdict::refuted;
            cert.method = "factor-search";
            cert.factor = h;
            cert.detail = "factor found from lifts mod " + std::to_string(best_p) + "^" + std::to_string(T);
            return cert;
        }
    }
    cert.verdict = irreducibility_verdict::certified;
    cert.method = "factor-search-exhausted";
    cert.detail = "no product of lifted factors mod " + std::to_string(best_p) + "^" + std::to_string(T) +
                  " of degree <= " + std::to_string(n / 2) + " divides g";
    return cert;
}

inline json irreducibility_json(const IrreducibilityCertificate& c) {
    json pats = json::array();
    for (const auto& p : c.patterns) pats.push_back(json{{"p", std::to_string(p.p)}, {"degrees", p.degrees}});
    json j{{"verdict", to_string(c.verdict)}, {"method", c.method}, {"patterns", pats}};
    if (c.factor) j["factor"] = poly_json(*c.factor, "c");
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

}  // namespace pcf
