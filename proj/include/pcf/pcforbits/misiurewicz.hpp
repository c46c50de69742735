#pragma once

#include "pcf/errors.hpp"
#include "pcf/exactpoly/integers.hpp"
#include "pcf/pcforbits/cyclo.hpp"
#include "pcf/pcforbits/orbit.hpp"

namespace pcf {

struct MisiurewiczPoly {
    long d, m, n;
    CycPoly poly;       // G^zeta_{d,m,n}, zeta the class of z
    IntPoly norm_form;  // product of the d - 1 Galois conjugates
};

/// Product of the d - 1 Galois conjugates of a CycPoly, as an integer polynomial.
inline IntPoly cyclotomic_norm(const CycPoly& p, int d) {
    CycPoly acc = p;
    for (long j = 2; j < d; ++j) acc = acc * conjugate(p, j);
    return scalar_part(acc);
}

/**
 * G^zeta_{d,m,n} = prod over k | n of (a_(m+k-1) - zeta a_(m-1))^mu(n/k),
 * further divided by prod a_k^mu(n/k) when n | (m - 1).
 */
inline MisiurewiczPoly misiurewicz(OrbitSeq& seq, long m, long n) {
    if (m < 2) throw invalid_argument_error("preperiod m must be at least 2");
    if (n < 1) throw invalid_argument_error("period n must be at least 1");
    const int d = static_cast<int>(seq.d());
    const CycInt zeta = CycInt::zeta_power(d, 1, mpz_class(0));
    CycPoly up = to_cyc(d, IntPoly::constant(1)), down = up;
    for (long k : divisors(n)) {
        const int mu = mobius(n / k);
        if (mu == 0) continue;
        CycPoly term = to_cyc(d, seq.a(m + k - 1)) - to_cyc(d, seq.a(m - 1)) * zeta;
        (mu == 1 ? up : down) *= term;
    }
    if ((m - 1) % n == 0) {
        for (long k : divisors(n)) {
            const int mu = mobius(n / k);
            if (mu == 1) down *= to_cyc(d, seq.a(k));
            if (mu == -1) up *= to_cyc(d, seq.a(k));
        }
    }
    CycPoly g = exact_div(up, down);
    if (g * down != up) throw oracle_mismatch_error("Misiurewicz product identity failed after division");
    if (!g.is_monic()) throw oracle_mismatch_error("Misiurewicz polynomial is not monic");
    return MisiurewiczPoly{seq.d(), m, n, g, cyclotomic_norm(g, d)};
}

inline MisiurewiczPoly misiurewicz(long d, long m, long n, unsigned long budget = default_degree_budget) {
    OrbitSeq seq(d, budget);
    return misiurewicz(seq, m, n);
}

}  // namespace pcf
