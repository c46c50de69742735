#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/integers.hpp"
#include "pcf/exactpoly/poly.hpp"
#include "pcf/modarith/fp.hpp"

namespace pcf {

/// Seed used when the caller does not supply one.
inline constexpr std::uint64_t default_seed = 1;

template <class F>
concept finite_field_coefficient = field_coefficient<F> && requires(const F& a, std::mt19937_64& rng) {
    { finite_field_traits<F>::characteristic(a) } -> std::convertible_to<std::uint64_t>;
    { finite_field_traits<F>::order(a) } -> std::convertible_to<mpz_class>;
    { finite_field_traits<F>::random(a, rng) } -> std::convertible_to<F>;
    { finite_field_traits<F>::key(a) } -> std::convertible_to<std::vector<std::uint64_t>>;
    { finite_field_traits<F>::pth_root(a) } -> std::convertible_to<F>;
};

template <class F>
struct FactorEntry {
    Poly<F> factor;
    int multiplicity;
};

/// g = unit * prod factor^multiplicity with monic irreducible factors, canonically sorted.
template <class F>
struct Factorization {
    F unit;
    std::vector<FactorEntry<F>> factors;

    bool is_irreducible() const { return factors.size() == 1 && factors[0].multiplicity == 1; }
    bool is_squarefree() const {
        return std::all_of(factors.begin(), factors.end(), [](const auto& e) { return e.multiplicity == 1; });
    }
};

namespace ff {

/// base^e mod m.
template <finite_field_coefficient F>
Poly<F> powmod(Poly<F> base, const mpz_class& e, const Poly<F>& m) {
    const F& like = m.lead();
    Poly<F> result = rem(Poly<F>::constant(one_like(like)), m);
    base = rem(base, m);
    const std::size_t bits = sgn(e) == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = rem(result * result, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(result * base, m);
    }
    return result;
}

template <finite_field_coefficient F>
bool less(const Poly<F>& a, const Poly<F>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.size(); i-- > 0;) {
        auto ka = finite_field_traits<F>::key(a[i]), kb = finite_field_traits<F>::key(b[i]);
        if (ka != kb) return ka < kb;
    }
    return false;
}

/// x^(q^k) mod f by k applications of the Frobenius.
template <finite_field_coefficient F>
Poly<F> frobenius_power_of_x(const Poly<F>& f, std::size_t k) {
    const mpz_class q = finite_field_traits<F>::order(f.lead());
    Poly<F> h = rem(Poly<F>::x(f.lead()), f);
    for (std::size_t i = 0; i < k; ++i) h = powmod(h, q, f);
    return h;
}

inline std::vector<unsigned long> prime_divisors(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long l = 2; l * l <= n; ++l) {
        if (n % l) continue;
        out.push_back(l);
        while (n % l == 0) n /= l;
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// p-th root of a polynomial whose exponents are all multiples of p.
template <finite_field_coefficient F>
Poly<F> pth_root(const Poly<F>& f) {
    const std::uint64_t p = finite_field_traits<F>::characteristic(f.lead());
    std::vector<F> c;
    for (std::size_t i = 0; i < f.size(); i += p) c.push_back(finite_field_traits<F>::pth_root(f[i]));
    return Poly<F>(std::move(c));
}

template <finite_field_coefficient F>
Poly<F> random_poly(const F& like, std::size_t len, std::mt19937_64& rng) {
    std::vector<F> c;
    c.reserve(len);
    for (std::size_t i = 0; i < len; ++i) c.push_back(finite_field_traits<F>::random(like, rng));
    return Poly<F>(std::move(c));
}

}  // namespace ff

/**
 * Rabin's test: monic f of degree n over F_q is irreducible iff
 * x^(q^n) = x mod f and gcd(x^(q^(n/l)) - x, f) = 1 for each prime l | n.
 */
template <finite_field_coefficient F>
bool is_irreducible(const Poly<F>& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    const Poly<F> g = monic(f);
    const auto n = static_cast<unsigned long>(g.degree());
    const Poly<F> x = Poly<F>::x(g.lead());
    for (unsigned long l : ff::prime_divisors(n)) {
        Poly<F> h = ff::frobenius_power_of_x(g, n / l);
        if (gcd(h - x, g).degree() != 0) return false;
    }
    return ff::frobenius_power_of_x(g, n) == rem(x, g);
}

/// Squarefree decomposition of a monic polynomial: pairs (squarefree part, multiplicity).
template <finite_field_coefficient F>
std::vector<FactorEntry<F>> squarefree_decomposition(const Poly<F>& f) {
    std::vector<FactorEntry<F>> out;
    if (f.degree() < 1) return out;
    const std::uint64_t p = finite_field_traits<F>::characteristic(f.lead());
    Poly<F> c = gcd(f, derivative(f));
    Poly<F> w = exact_div(f, c);
    int i = 1;
    while (w.degree() > 0) {
        Poly<F> y = gcd(w, c);
        Poly<F> fac = exact_div(w, y);
        if (fac.degree() > 0) out.push_back({fac, i});
        w = y;
        c = exact_div(c, y);
        ++i;
    }
    if (c.degree() > 0) {
        for (auto& e : squarefree_decomposition(ff::pth_root(c))) {
            e.multiplicity *= static_cast<int>(p);
            out.push_back(std::move(e));
        }
    }
    return out;
}

/// Distinct-degree split of a squarefree monic polynomial: (product of degree-d factors, d).
template <finite_field_coefficient F>
std::vector<std::pair<Poly<F>, int>> distinct_degree(const Poly<F>& f) {
    std::vector<std::pair<Poly<F>, int>> out;
    const mpz_class q = finite_field_traits<F>::order(f.lead());
    const Poly<F> x = Poly<F>::x(f.lead());
    Poly<F> rest = f;
    Poly<F> h = rem(x, rest);
    for (int i = 1; rest.degree() >= 2 * i; ++i) {
        h = ff::powmod(h, q, rest);
        Poly<F> g = gcd(rest, h - x);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            rest = exact_div(rest, g);
            h = rem(h, rest);
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
    return out;
}

/**
 * Cantor-Zassenhaus equal-degree split of a squarefree monic product of
 * degree-d irreducibles. Odd characteristic uses a^((q^d - 1)/2) - 1; in
 * characteristic 2 the trace a + a^2 + ... + a^(2^(kd - 1)) with q = 2^k.
 */
template <finite_field_coefficient F>
std::vector<Poly<F>> equal_degree(const Poly<F>& f, int d, std::mt19937_64& rng) {
    const F& like = f.lead();
    const std::size_t r = static_cast<std::size_t>(f.degree() / d);
    std::vector<Poly<F>> parts{f};
    if (r <= 1) return parts;
    const std::uint64_t p = finite_field_traits<F>::characteristic(like);
    const mpz_class q = finite_field_traits<F>::order(like);
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
    const Poly<F> one = Poly<F>::constant(one_like(like));
    std::size_t trace_terms = 0;
    if (p == 2) trace_terms = mpz_sizeinbase(qd.get_mpz_t(), 2) - 1;
    const mpz_class half = (qd - 1) / 2;

    while (parts.size() < r) {
        Poly<F> a = ff::random_poly(like, static_cast<std::size_t>(f.degree()), rng);
        if (a.degree() < 1) continue;
        Poly<F> b;
        if (p == 2) {
            Poly<F> t = rem(a, f);
            b = t;
            for (std::size_t i = 1; i < trace_terms; ++i) {
                t = rem(t * t, f);
                b = b + t;
            }
        } else {
            b = ff::powmod(a, half, f) - one;
        }
        std::vector<Poly<F>> next;
        for (auto& u : parts) {
            if (u.degree() == d) {
                next.push_back(std::move(u));
                continue;
            }
            Poly<F> br = rem(b, u);
            Poly<F> g = br.is_zero() ? u : gcd(br, u);
            if (g.degree() > 0 && g.degree() < u.degree()) {
                next.push_back(exact_div(u, g));
                next.push_back(std::move(g));
            } else {
                next.push_back(std::move(u));
            }
        }
        parts = std::move(next);
    }
    return parts;
}

/// Complete factorization over a finite field; deterministic for a given seed.
template <finite_field_coefficient F>
Factorization<F> factor(const Poly<F>& g, std::uint64_t seed = default_seed) {
    if (g.is_zero()) throw invalid_argument_error("cannot factor the zero polynomial");
    std::mt19937_64 rng(seed);
    Factorization<F> out{g.lead(), {}};
    const Poly<F> f = monic(g);
    for (const auto& [sf, mult] : squarefree_decomposition(f))
        for (const auto& [block, deg] : distinct_degree(sf))
            for (auto& irr : equal_degree(block, deg, rng)) out.factors.push_back({std::move(irr), mult});
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (ff::less(a.factor, b.factor)) return true;
        if (ff::less(b.factor, a.factor)) return false;
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

/// unit * prod factor^multiplicity, for checking a factorization.
template <finite_field_coefficient F>
Poly<F> expand(const Factorization<F>& fac) {
    Poly<F> r = Poly<F>::constant(fac.unit);
    for (const auto& e : fac.factors) r = r * pow(e.factor, static_cast<unsigned long>(e.multiplicity));
    return r;
}

}  // namespace pcf
