#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/integers.hpp"
#include "pcf/modarith/factor.hpp"

namespace pcf {

/// Default lifting precision: enough to separate valuation 2 from "at least 3".
inline constexpr unsigned default_precision = 3;

/// Bezout pair s*a + t*b = 1 mod p for factor `index` against the product of the later factors.
struct CoprimalityWitness {
    std::size_t index;
    FpPoly s;
    FpPoly t;
};

struct LiftedFactorization {
    std::uint64_t p;
    unsigned T;
    mpz_class modulus;               // p^T
    std::vector<IntPoly> factors;    // monic, coefficients in [0, p^T)
    std::vector<CoprimalityWitness> witnesses;
};

namespace detail {

inline IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const mpz_class& m) { return reduce_mod(a * b, m); }

/// Lifts g = a*b mod p (monic a, b with s*a + t*b = 1 mod p) to g = a*b mod p^T.
inline std::pair<IntPoly, IntPoly> lift_pair(const IntPoly& g, IntPoly a, IntPoly b, const FpPoly& s,
                                             const FpPoly& t, std::uint64_t p, unsigned T) {
    const mpz_class pz(std::to_string(p));
    mpz_class pk = pz;
    const FpPoly a_p = to_fp(a, p);
    for (unsigned k = 1; k < T; ++k) {
        const mpz_class next = pk * pz;
        IntPoly err = reduce_mod(g - a * b, next);
        std::vector<mpz_class> e;
        for (const auto& c : err.coeffs()) {
            if (!mpz_divisible_p(c.get_mpz_t(), pk.get_mpz_t()))
                throw oracle_mismatch_error("Hensel step: product not congruent to g mod p^k");
            e.push_back(c / pk);
        }
        const FpPoly e_p = to_fp(IntPoly(std::move(e)), p);
        const FpPoly da = rem(t * e_p, a_p);
        const FpPoly db = exact_div(e_p - to_fp(b, p) * da, a_p);
        a = reduce_mod(a + lift_fp(da) * pk, next);
        b = reduce_mod(b + lift_fp(db) * pk, next);
        pk = next;
    }
    return {std::move(a), std::move(b)};
}

}  // namespace detail

/**
 * Lifts a squarefree factorization g = prod G_i mod p to p^T.
 *
 * Seeds must be monic, pairwise coprime, and multiply to g mod p. A repeated
 * or shared factor raises not_squarefree_error.
 */
inline LiftedFactorization hensel_lift(const IntPoly& g, const std::vector<FpPoly>& seeds, std::uint64_t p,
                                       unsigned T = default_precision) {
    if (!g.is_monic()) throw invalid_argument_error("Hensel lifting needs a monic polynomial");
    if (!is_prime(p)) throw invalid_argument_error("modulus " + std::to_string(p) + " is not prime");
    if (T < 1) throw invalid_argument_error("precision must be at least 1");
    if (seeds.empty()) throw invalid_argument_error("no seed factors");
    FpPoly product = fp_poly({1}, p);
    for (const auto& s : seeds) {
        if (!s.is_monic()) throw invalid_argument_error("seed factors must be monic");
        product = product * s;
    }
    if (product != to_fp(g, p)) throw invalid_argument_error("seed factors do not multiply to g mod p");
    for (std::size_t i = 0; i < seeds.size(); ++i)
        for (std::size_t j = i + 1; j < seeds.size(); ++j)
            if (gcd(seeds[i], seeds[j]).degree() > 0)
                throw not_squarefree_error("seed factors " + std::to_string(i) + " and " + std::to_string(j) +
                                           " share a root mod " + std::to_string(p));

    LiftedFactorization out;
    out.p = p;
    out.T = T;
    mpz_pow_ui(out.modulus.get_mpz_t(), mpz_class(std::to_string(p)).get_mpz_t(), T);

    IntPoly rest = reduce_mod(g, out.modulus);
    for (std::size_t i = 0; i + 1 < seeds.size(); ++i) {
        FpPoly tail = fp_poly({1}, p);
        for (std::size_t j = i + 1; j < seeds.size(); ++j) tail = tail * seeds[j];
        auto [one, s, t] = xgcd(seeds[i], tail);
        auto [a, b] = detail::lift_pair(rest, lift_fp(seeds[i]), lift_fp(tail), s, t, p, T);
        out.witnesses.push_back({i, s, t});
        out.factors.push_back(std::move(a));
        rest = std::move(b);
    }
    out.factors.push_back(std::move(rest));

    IntPoly check = IntPoly::constant(1);
    for (const auto& f : out.factors) check = detail::mul_mod(check, f, out.modulus);
    if (check != reduce_mod(g, out.modulus))
        throw oracle_mismatch_error("lifted factors do not multiply to g mod p^T");
    return out;
}

/// Convenience: seeds from a factorization mod p; repeated factors are rejected.
inline LiftedFactorization hensel_lift(const IntPoly& g, const FpFactorization& fac, unsigned T = default_precision) {
    if (fac.factors.empty()) throw invalid_argument_error("empty factorization");
    std::vector<FpPoly> seeds;
    for (const auto& e : fac.factors) {
        if (e.multiplicity > 1)
            throw not_squarefree_error("factor of multiplicity " + std::to_string(e.multiplicity) + " mod " +
                                       std::to_string(e.factor.lead().p));
        seeds.push_back(e.factor);
    }
    return hensel_lift(g, seeds, seeds.front().lead().p, T);
}

inline json lifted_json(const LiftedFactorization& lf, const std::string& var) {
    json factors = json::array();
    for (const auto& f : lf.factors) factors.push_back(poly_json(f, var));
    return json{{"p", std::to_string(lf.p)}, {"T", lf.T}, {"modulus", lf.modulus.get_str()}, {"factors", factors}};
}

}  // namespace pcf
