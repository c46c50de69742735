#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/poly.hpp"

namespace pcf {

/// Möbius function.
inline int mobius(long n) {
    if (n < 1) throw invalid_argument_error("mobius: n must be positive");
    int result = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

/// Positive divisors of n in increasing order.
inline std::vector<long> divisors(long n) {
    std::vector<long> small, large;
    for (long k = 1; k * k <= n; ++k) {
        if (n % k != 0) continue;
        small.push_back(k);
        if (k != n / k) large.push_back(n / k);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// The first `count` primes.
inline std::vector<unsigned long> first_primes(std::size_t count) {
    std::vector<unsigned long> out;
    for (unsigned long n = 2; out.size() < count; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

/// Exponent of the prime p in a nonzero integer.
inline long pvaluation(const mpz_class& x, unsigned long p) {
    if (sgn(x) == 0) throw invalid_argument_error("pvaluation of zero");
    mpz_class t = x;
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

/// Prime factors found by trial division up to `bound`; the cofactor is returned separately.
inline std::pair<std::vector<unsigned long>, mpz_class> small_prime_factors(mpz_class n, unsigned long bound) {
    std::vector<unsigned long> ps;
    n = abs(n);
    if (sgn(n) == 0) return {ps, n};
    for (unsigned long p = 2; p <= bound && n > 1; ++p) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
        ps.push_back(p);
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
    return {ps, n};
}

/// Nonnegative gcd of the coefficients.
inline mpz_class content(const IntPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

/// p / content(p), with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    mpz_class g = content(p);
    if (sgn(p.lead()) < 0) g = -g;
    std::vector<mpz_class> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        c.push_back(q);
    }
    return IntPoly(std::move(c));
}

/**
 * gcd in Z[x] by the primitive PRS: the result is primitive with positive
 * leading coefficient (the monic rational gcd scaled to Z[x]).
 */
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) throw invalid_argument_error("gcd(0, 0)");
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    mpz_class ca = content(a), cb = content(b), cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    IntPoly r0 = primitive_part(a), r1 = primitive_part(b);
    if (r0.degree() < r1.degree()) std::swap(r0, r1);
    while (!r1.is_zero()) {
        IntPoly r = pseudo_rem(r0, r1);
        r0 = std::move(r1);
        r1 = r.is_zero() ? r : primitive_part(r);
    }
    return r0 * mpz_class(cg);
}

inline RatPoly to_rat(const IntPoly& p) {
    std::vector<mpq_class> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return RatPoly(std::move(c));
}

/// Clears denominators: returns (N, D) with p = N / D and D > 0 minimal.
inline std::pair<IntPoly, mpz_class> clear_denominators(const RatPoly& p) {
    mpz_class l = 1;
    for (const auto& v : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::vector<mpz_class> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.push_back(mpz_class(v.get_num() * (l / v.get_den())));
    return {IntPoly(std::move(c)), l};
}

/// Coefficients reduced into [0, m).
inline IntPoly reduce_mod(const IntPoly& p, const mpz_class& m) {
    std::vector<mpz_class> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        c.push_back(r);
    }
    return IntPoly(std::move(c));
}

/// Coefficients reduced into the symmetric range (-m/2, m/2].
inline IntPoly reduce_mod_symmetric(const IntPoly& p, const mpz_class& m) {
    std::vector<mpz_class> c;
    c.reserve(p.size());
    const mpz_class half = m / 2;
    for (const auto& v : p.coeffs()) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        if (r > half) r -= m;
        c.push_back(r);
    }
    return IntPoly(std::move(c));
}

/// Integer polynomial from small coefficients, ascending degree.
inline IntPoly int_poly(std::initializer_list<long> coeffs) {
    std::vector<mpz_class> c;
    for (long v : coeffs) c.emplace_back(v);
    return IntPoly(std::move(c));
}

}  // namespace pcf
