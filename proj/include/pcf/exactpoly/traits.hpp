#pragma once

#include <concepts>
#include <optional>

#include <gmpxx.h>

namespace pcf {

/**
 * Coefficient traits.
 *
 * Polynomial code never constructs coefficients from thin air: number-field
 * and finite-field elements carry a context, so every new zero or one is
 * produced from an existing element ("like"). A specialisation must provide
 *
 *   zero_like, one_like, from_int, is_zero, divide_exact
 *
 * and, for coefficient fields, `is_field = true` plus `inverse`.
 */
template <class T>
struct coeff_traits;

template <>
struct coeff_traits<mpz_class> {
    static constexpr bool is_field = false;
    static mpz_class zero_like(const mpz_class&) { return 0; }
    static mpz_class one_like(const mpz_class&) { return 1; }
    static mpz_class from_int(const mpz_class&, long v) { return v; }
    static bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
    static std::optional<mpz_class> divide_exact(const mpz_class& a, const mpz_class& b) {
        if (sgn(b) == 0) return std::nullopt;
        if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return std::nullopt;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
};

template <>
struct coeff_traits<mpq_class> {
    static constexpr bool is_field = true;
    static mpq_class zero_like(const mpq_class&) { return 0; }
    static mpq_class one_like(const mpq_class&) { return 1; }
    static mpq_class from_int(const mpq_class&, long v) { return v; }
    static bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
    static mpq_class inverse(const mpq_class& x) { return 1 / x; }
    static std::optional<mpq_class> divide_exact(const mpq_class& a, const mpq_class& b) {
        if (sgn(b) == 0) return std::nullopt;
        return mpq_class(a / b);
    }
};

template <class T>
concept coefficient = requires(const T& a, const T& b) {
    { coeff_traits<T>::zero_like(a) } -> std::convertible_to<T>;
    { coeff_traits<T>::one_like(a) } -> std::convertible_to<T>;
    { coeff_traits<T>::from_int(a, 1L) } -> std::convertible_to<T>;
    { coeff_traits<T>::is_zero(a) } -> std::convertible_to<bool>;
    { coeff_traits<T>::divide_exact(a, b) } -> std::convertible_to<std::optional<T>>;
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { a == b } -> std::convertible_to<bool>;
};

template <class T>
concept field_coefficient = coefficient<T> && coeff_traits<T>::is_field && requires(const T& a) {
    { coeff_traits<T>::inverse(a) } -> std::convertible_to<T>;
};

template <coefficient T>
bool is_zero(const T& x) { return coeff_traits<T>::is_zero(x); }

template <coefficient T>
T zero_like(const T& x) { return coeff_traits<T>::zero_like(x); }

template <coefficient T>
T one_like(const T& x) { return coeff_traits<T>::one_like(x); }

template <coefficient T>
bool is_one(const T& x) { return x == coeff_traits<T>::one_like(x); }

/// x^e by repeated squaring.
template <coefficient T>
T power(const T& x, unsigned long e) {
    T result = one_like(x);
    T base = x;
    while (e > 0) {
        if (e & 1UL) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

}  // namespace pcf
