#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/traits.hpp"

namespace pcf {

/// Operand length below which multiplication falls back to schoolbook.
inline constexpr std::size_t karatsuba_threshold = 32;

/**
 * Dense univariate polynomial with exact coefficients, ascending degree.
 *
 * The stored coefficient vector never ends in a zero; the zero polynomial is
 * the empty vector. Values are immutable in spirit: every operation returns
 * a fresh canonical polynomial.
 */
template <coefficient T>
class Poly {
public:
    using coeff_type = T;

    Poly() = default;

    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static Poly constant(T value) { return Poly(std::vector<T>{std::move(value)}); }

    /// value * x^deg
    static Poly monomial(T value, std::size_t deg) {
        std::vector<T> c(deg + 1, zero_like(value));
        c[deg] = std::move(value);
        return Poly(std::move(c));
    }

    /// The polynomial x over the coefficient ring of `like`.
    static Poly x(const T& like) { return monomial(one_like(like), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& operator[](std::size_t i) const { return c_[i]; }
    const T& lead() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && is_one(c_.back()); }

    /// Coefficient of x^i, or a zero built from `like` when i is past the degree.
    T coeff_or_zero(std::size_t i, const T& like) const {
        return i < c_.size() ? c_[i] : zero_like(like);
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const Poly& longer = a.size() >= b.size() ? a : b;
        const Poly& shorter = a.size() >= b.size() ? b : a;
        std::vector<T> r = longer.c_;
        for (std::size_t i = 0; i < shorter.size(); ++i) r[i] = r[i] + shorter.c_[i];
        return Poly(std::move(r));
    }

    friend Poly operator-(const Poly& a) {
        std::vector<T> r;
        r.reserve(a.size());
        for (const T& v : a.c_) r.push_back(-v);
        return Poly(std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return -b;
        std::vector<T> r = a.c_;
        if (r.size() < b.size()) r.resize(b.size(), zero_like(b.c_[0]));
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b.c_[i];
        return Poly(std::move(r));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        return Poly(multiply(std::span<const T>(a.c_), std::span<const T>(b.c_)));
    }

    friend Poly operator*(const Poly& a, const T& s) {
        if (a.is_zero() || pcf::is_zero(s)) return Poly();
        std::vector<T> r;
        r.reserve(a.size());
        for (const T& v : a.c_) r.push_back(v * s);
        return Poly(std::move(r));
    }

    friend Poly operator*(const T& s, const Poly& a) { return a * s; }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Multiplies two coefficient spans (both nonempty).
    static std::vector<T> multiply(std::span<const T> a, std::span<const T> b) {
        const T zero = zero_like(a[0]);
        std::vector<T> out(a.size() + b.size() - 1, zero);
        accumulate_product(a, b, std::span<T>(out), zero);
        return out;
    }

private:
    void normalize() {
        while (!c_.empty() && pcf::is_zero(c_.back())) c_.pop_back();
    }

    static void schoolbook(std::span<const T> a, std::span<const T> b, std::span<T> out) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (pcf::is_zero(a[i])) continue;
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
        }
    }

    static std::vector<T> padded_sum(std::span<const T> lo, std::span<const T> hi, const T& zero) {
        std::vector<T> s(std::max(lo.size(), hi.size()), zero);
        for (std::size_t i = 0; i < lo.size(); ++i) s[i] = lo[i];
        for (std::size_t i = 0; i < hi.size(); ++i) s[i] = s[i] + hi[i];
        return s;
    }

    // out += a * b; out.size() >= a.size() + b.size() - 1
    static void accumulate_product(std::span<const T> a, std::span<const T> b, std::span<T> out,
                                   const T& zero) {
        if (a.size() < b.size()) std::swap(a, b);
        if (b.size() < karatsuba_threshold) {
            schoolbook(a, b, out);
            return;
        }
        const std::size_t nb = b.size();
        if (a.size() >= 2 * nb) {
            for (std::size_t off = 0; off < a.size(); off += nb) {
                const std::size_t len = std::min(nb, a.size() - off);
                accumulate_product(a.subspan(off, len), b, out.subspan(off), zero);
            }
            return;
        }
        const std::size_t m = a.size() / 2;
        auto a0 = a.first(m), a1 = a.subspan(m);
        auto b0 = b.first(m), b1 = b.subspan(m);

        std::vector<T> z0(2 * m - 1, zero);
        accumulate_product(a0, b0, std::span<T>(z0), zero);
        std::vector<T> z2(a1.size() + b1.size() - 1, zero);
        accumulate_product(a1, b1, std::span<T>(z2), zero);

        std::vector<T> sa = padded_sum(a0, a1, zero);
        std::vector<T> sb = padded_sum(b0, b1, zero);
        std::vector<T> z1(sa.size() + sb.size() - 1, zero);
        accumulate_product(std::span<const T>(sa), std::span<const T>(sb), std::span<T>(z1), zero);
        for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = z1[i] - z0[i];
        for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = z1[i] - z2[i];

        for (std::size_t i = 0; i < z0.size(); ++i) out[i] = out[i] + z0[i];
        for (std::size_t i = 0; i < z1.size() && i + m < out.size(); ++i) out[i + m] = out[i + m] + z1[i];
        for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * m] = out[i + 2 * m] + z2[i];
    }

    std::vector<T> c_;
};

using IntPoly = Poly<mpz_class>;
using RatPoly = Poly<mpq_class>;

template <coefficient T>
Poly<T> pow(const Poly<T>& p, unsigned long e) {
    if (p.is_zero()) return Poly<T>();
    Poly<T> result = Poly<T>::constant(one_like(p[0]));
    Poly<T> base = p;
    while (e > 0) {
        if (e & 1UL) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

/// Horner evaluation p(x).
template <coefficient T>
T eval(const Poly<T>& p, const T& x) {
    T acc = zero_like(x);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

/// p(q(x)) by Horner's scheme in the polynomial ring.
template <coefficient T>
Poly<T> compose(const Poly<T>& p, const Poly<T>& q) {
    Poly<T> acc;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * q + Poly<T>::constant(p[i]);
    return acc;
}

template <coefficient T>
Poly<T> derivative(const Poly<T>& p) {
    if (p.size() <= 1) return Poly<T>();
    std::vector<T> r;
    r.reserve(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i)
        r.push_back(p[i] * coeff_traits<T>::from_int(p[i], static_cast<long>(i)));
    return Poly<T>(std::move(r));
}

namespace detail {

template <coefficient T>
T quotient_coeff(const T& num, const T& lead, bool lead_is_one) {
    if (lead_is_one) return num;
    auto q = coeff_traits<T>::divide_exact(num, lead);
    if (!q) throw not_divisible_error("leading coefficient does not divide remainder term");
    return *q;
}

}  // namespace detail

/**
 * Division with remainder, p = q * quotient + remainder, deg remainder < deg q.
 *
 * Defined whenever each quotient coefficient is an exact multiple of lead(q):
 * always over a field, always for monic q, and otherwise fails with
 * not_divisible_error.
 */
template <coefficient T>
std::pair<Poly<T>, Poly<T>> divrem(const Poly<T>& p, const Poly<T>& q) {
    if (q.is_zero()) throw invalid_argument_error("division by the zero polynomial");
    if (p.degree() < q.degree()) return {Poly<T>(), p};
    const std::size_t dq = static_cast<std::size_t>(q.degree());
    const bool lead_is_one = is_one(q.lead());
    std::vector<T> r = p.coeffs();
    std::vector<T> quot(r.size() - dq, zero_like(q.lead()));
    for (std::size_t i = r.size(); i-- > dq;) {
        if (pcf::is_zero(r[i])) continue;
        T t = detail::quotient_coeff(r[i], q.lead(), lead_is_one);
        const std::size_t shift = i - dq;
        for (std::size_t j = 0; j < dq; ++j) r[shift + j] = r[shift + j] - t * q[j];
        r[i] = zero_like(r[i]);
        quot[shift] = std::move(t);
    }
    r.resize(dq, zero_like(q.lead()));
    return {Poly<T>(std::move(quot)), Poly<T>(std::move(r))};
}

template <coefficient T>
Poly<T> rem(const Poly<T>& p, const Poly<T>& q) { return divrem(p, q).second; }

/// Returns r with p = r * q; throws not_divisible_error otherwise.
template <coefficient T>
Poly<T> exact_div(const Poly<T>& p, const Poly<T>& q) {
    auto [quot, r] = divrem(p, q);
    if (!r.is_zero())
        throw not_divisible_error("nonzero remainder of degree " + std::to_string(r.degree()));
    return quot;
}

/// Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a = Q * b + R.
template <coefficient T>
Poly<T> pseudo_rem(const Poly<T>& a, const Poly<T>& b) {
    if (a.degree() < b.degree()) return a;
    const int delta = a.degree() - b.degree();
    const T& lb = b.lead();
    Poly<T> r = a;
    int e = delta + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        Poly<T> t = Poly<T>::monomial(r.lead(), shift);
        r = r * lb - t * b;
        --e;
    }
    if (r.is_zero()) return r;
    return r * power(lb, static_cast<unsigned long>(e));
}

template <field_coefficient T>
Poly<T> monic(const Poly<T>& p) {
    if (p.is_zero() || p.is_monic()) return p;
    return p * coeff_traits<T>::inverse(p.lead());
}

/// Monic gcd over a coefficient field (Euclid). gcd(0, 0) is rejected.
template <field_coefficient T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
    if (a.is_zero() && b.is_zero()) throw invalid_argument_error("gcd(0, 0)");
    while (!b.is_zero()) {
        Poly<T> r = rem(a, monic(b));
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Extended Euclid over a field: returns (g, s, t) with s*a + t*b = g monic.
template <field_coefficient T>
std::tuple<Poly<T>, Poly<T>, Poly<T>> xgcd(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero() && b.is_zero()) throw invalid_argument_error("xgcd(0, 0)");
    const T& like = a.is_zero() ? b.lead() : a.lead();
    Poly<T> r0 = a, r1 = b;
    Poly<T> s0 = Poly<T>::constant(one_like(like)), s1;
    Poly<T> t0, t1 = Poly<T>::constant(one_like(like));
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<T> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<T> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    T inv = coeff_traits<T>::inverse(r0.lead());
    return {r0 * inv, s0 * inv, t0 * inv};
}

/**
 * Resultant via the subresultant PRS (Collins; Cohen, Alg. 3.3.7).
 *
 * Needs only exact division in the coefficient ring, so the same routine
 * serves integers, rationals and number fields. Sign convention:
 * Res(a, b) = lead(a)^deg(b) * prod over roots r of a of b(r).
 */
template <coefficient T>
T resultant(Poly<T> a, Poly<T> b) {
    if (a.is_zero() || b.is_zero()) {
        const Poly<T>& nz = a.is_zero() ? b : a;
        if (nz.is_zero()) throw invalid_argument_error("resultant of two zero polynomials");
        return zero_like(nz.lead());
    }
    const T one = one_like(a.lead());
    T sign = one;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
    }
    if (b.degree() == 0) return sign * power(b.lead(), static_cast<unsigned long>(a.degree()));

    auto div = [](const T& x, const T& y) {
        auto q = coeff_traits<T>::divide_exact(x, y);
        if (!q) throw not_divisible_error("subresultant PRS produced an inexact division");
        return *q;
    };

    T g = one, h = one;
    while (true) {
        const int delta = a.degree() - b.degree();
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
        Poly<T> r = pseudo_rem(a, b);
        a = std::move(b);
        if (r.is_zero()) return zero_like(one);
        const T denom = g * power(h, static_cast<unsigned long>(delta));
        std::vector<T> rc;
        rc.reserve(r.size());
        for (const T& v : r.coeffs()) rc.push_back(div(v, denom));
        b = Poly<T>(std::move(rc));
        g = a.lead();
        if (delta == 0) {
            // h unchanged
        } else {
            h = div(power(g, static_cast<unsigned long>(delta)), power(h, static_cast<unsigned long>(delta - 1)));
        }
        if (b.degree() == 0) break;
    }
    const unsigned long da = static_cast<unsigned long>(a.degree());
    T res = div(power(b.lead(), da), power(h, da - 1));
    return sign * res;
}

/// Discriminant with the convention (-1)^(n(n-1)/2) * Res(p, p') / lead(p).
template <coefficient T>
T discriminant(const Poly<T>& p) {
    if (p.degree() < 1) throw invalid_argument_error("discriminant of a constant polynomial");
    const long n = p.degree();
    T r = resultant(p, derivative(p));
    auto q = coeff_traits<T>::divide_exact(r, p.lead());
    if (!q) throw not_divisible_error("lead coefficient does not divide Res(p, p')");
    return ((n * (n - 1) / 2) % 2 == 1) ? T(-*q) : *q;
}

}  // namespace pcf
