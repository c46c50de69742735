#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/integers.hpp"
#include "pcf/exactpoly/poly.hpp"

namespace pcf {

/// Residue class v mod p, 0 <= v < p. Each element carries its modulus.
struct FpElem {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    FpElem() = default;
    FpElem(std::uint64_t value, std::uint64_t modulus) : v(value % modulus), p(modulus) {}

    static FpElem from_signed(long long value, std::uint64_t modulus) {
        long long r = value % static_cast<long long>(modulus);
        if (r < 0) r += static_cast<long long>(modulus);
        return FpElem(static_cast<std::uint64_t>(r), modulus);
    }

    static FpElem from_mpz(const mpz_class& value, std::uint64_t modulus) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), modulus);
        return FpElem(r.get_ui(), modulus);
    }

    friend bool operator==(const FpElem& a, const FpElem& b) { return a.v == b.v; }

    friend FpElem operator+(const FpElem& a, const FpElem& b) {
        std::uint64_t s = a.v + b.v;
        if (s >= a.p) s -= a.p;
        return raw(s, a.p);
    }
    friend FpElem operator-(const FpElem& a, const FpElem& b) {
        return raw(a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p);
    }
    friend FpElem operator-(const FpElem& a) { return raw(a.v == 0 ? 0 : a.p - a.v, a.p); }
    friend FpElem operator*(const FpElem& a, const FpElem& b) {
        return raw(static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v) * b.v % a.p), a.p);
    }

    FpElem inverse() const {
        if (v == 0) throw invalid_argument_error("inverse of zero in F_p");
        long long r0 = static_cast<long long>(p), r1 = static_cast<long long>(v);
        long long s0 = 0, s1 = 1;
        while (r1 != 0) {
            long long q = r0 / r1;
            long long t = r0 - q * r1;
            r0 = r1;
            r1 = t;
            t = s0 - q * s1;
            s0 = s1;
            s1 = t;
        }
        return from_signed(s0, p);
    }

private:
    static FpElem raw(std::uint64_t value, std::uint64_t modulus) {
        FpElem e;
        e.v = value;
        e.p = modulus;
        return e;
    }
};

template <>
struct coeff_traits<FpElem> {
    static constexpr bool is_field = true;
    static FpElem zero_like(const FpElem& x) { return FpElem(0, x.p); }
    static FpElem one_like(const FpElem& x) { return FpElem(1, x.p); }
    static FpElem from_int(const FpElem& x, long v) { return FpElem::from_signed(v, x.p); }
    static bool is_zero(const FpElem& x) { return x.v == 0; }
    static FpElem inverse(const FpElem& x) { return x.inverse(); }
    static std::optional<FpElem> divide_exact(const FpElem& a, const FpElem& b) {
        if (b.v == 0) return std::nullopt;
        return a * b.inverse();
    }
};

using FpPoly = Poly<FpElem>;

/**
 * Finite-field traits used by the factoring routines.
 *
 * characteristic/order describe the field of `like`; random draws a uniform
 * element; key gives a total order used to sort factor lists canonically.
 */
template <class F>
struct finite_field_traits;

template <>
struct finite_field_traits<FpElem> {
    static std::uint64_t characteristic(const FpElem& like) { return like.p; }
    static mpz_class order(const FpElem& like) { return mpz_class(std::to_string(like.p)); }
    static FpElem random(const FpElem& like, std::mt19937_64& rng) {
        std::uniform_int_distribution<std::uint64_t> dist(0, like.p - 1);
        return FpElem(dist(rng), like.p);
    }
    static std::vector<std::uint64_t> key(const FpElem& x) { return {x.v}; }
    /// Frobenius is the identity on the prime field.
    static FpElem pth_root(const FpElem& x) { return x; }
};

inline FpPoly to_fp(const IntPoly& g, std::uint64_t p) {
    std::vector<FpElem> c;
    c.reserve(g.size());
    for (const auto& a : g.coeffs()) c.push_back(FpElem::from_mpz(a, p));
    return FpPoly(std::move(c));
}

/// Lifts residues to integers in [0, p).
inline IntPoly lift_fp(const FpPoly& g) {
    std::vector<mpz_class> c;
    c.reserve(g.size());
    for (const auto& a : g.coeffs()) c.emplace_back(std::to_string(a.v));
    return IntPoly(std::move(c));
}

/// Builds an F_p polynomial from small signed coefficients, ascending degree.
inline FpPoly fp_poly(std::initializer_list<long long> coeffs, std::uint64_t p) {
    std::vector<FpElem> c;
    for (long long v : coeffs) c.push_back(FpElem::from_signed(v, p));
    return FpPoly(std::move(c));
}

}  // namespace pcf
