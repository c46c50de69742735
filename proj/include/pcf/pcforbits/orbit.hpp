#pragma once

#include <deque>
#include <mutex>
#include <string>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/integers.hpp"
#include "pcf/exactpoly/poly.hpp"

namespace pcf {

/// Largest allowed degree d^(i-1) of an orbit polynomial.
inline constexpr unsigned long default_degree_budget = 4096;

inline void require_prime_degree(long d) {
    if (d < 2 || !is_prime(static_cast<unsigned long>(d)))
        throw invalid_argument_error("d must be a prime, got " + std::to_string(d));
}

/// d^e, or 0 when it exceeds `cap`.
inline unsigned long capped_power(unsigned long d, unsigned long e, unsigned long cap) {
    unsigned long r = 1;
    for (unsigned long i = 0; i < e; ++i) {
        if (r > cap / d) return 0;
        r *= d;
    }
    return r;
}

/**
 * Critical orbit polynomials a_1 = c, a_(i+1) = a_i^d + c, cached.
 * Appends are serialised; returned references stay valid for the lifetime
 * of the sequence.
 */
class OrbitSeq {
public:
    explicit OrbitSeq(long d, unsigned long budget = default_degree_budget) : d_(d), budget_(budget) {
        require_prime_degree(d);
        cache_.push_back(IntPoly());  // a_0 = 0
    }

    long d() const { return d_; }
    unsigned long budget() const { return budget_; }

    /// a_i for i >= 0.
    const IntPoly& a(long i) {
        if (i < 0) throw invalid_argument_error("orbit index must be nonnegative");
        if (i > 0 && capped_power(static_cast<unsigned long>(d_), static_cast<unsigned long>(i - 1), budget_) == 0)
            throw budget_exceeded_error("deg a_" + std::to_string(i) + " = " + std::to_string(d_) + "^" +
                                        std::to_string(i - 1) + " exceeds the budget " + std::to_string(budget_));
        std::lock_guard<std::mutex> lock(mu_);
        const IntPoly c = int_poly({0, 1});
        while (static_cast<long>(cache_.size()) <= i) cache_.push_back(pow(cache_.back(), static_cast<unsigned long>(d_)) + c);
        return cache_[static_cast<std::size_t>(i)];
    }

private:
    long d_;
    unsigned long budget_;
    std::deque<IntPoly> cache_;
    std::mutex mu_;
};

inline IntPoly orbit_poly(long d, long i, unsigned long budget = default_degree_budget) {
    if (i < 1) throw invalid_argument_error("orbit index must be at least 1");
    OrbitSeq seq(d, budget);
    return seq.a(i);
}

/// prod over k | n of a_k^mu(n/k), assembled by exact division and re-verified.
inline IntPoly gleason(OrbitSeq& seq, long n) {
    if (n < 1) throw invalid_argument_error("period must be at least 1");
    IntPoly up = IntPoly::constant(1), down = IntPoly::constant(1);
    for (long k : divisors(n)) {
        const int mu = mobius(n / k);
        if (mu == 1) up *= seq.a(k);
        if (mu == -1) down *= seq.a(k);
    }
    IntPoly g = exact_div(up, down);
    if (g * down != up) throw oracle_mismatch_error("Gleason product identity failed after division");
    if (!g.is_monic()) throw oracle_mismatch_error("Gleason polynomial is not monic");
    return g;
}

inline IntPoly gleason(long d, long n, unsigned long budget = default_degree_budget) {
    OrbitSeq seq(d, budget);
    return gleason(seq, n);
}

/// sum over k | n of mu(n/k) d^(k-1).
inline long gleason_degree(long d, long n) {
    long total = 0;
    for (long k : divisors(n)) {
        long p = 1;
        for (long i = 1; i < k; ++i) p *= d;
        total += mobius(n / k) * p;
    }
    return total;
}

}  // namespace pcf
