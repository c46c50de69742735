#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/integers.hpp"
#include "pcf/modarith/factor.hpp"
#include "pcf/modarith/hensel.hpp"
#include "pcf/numberfield/field.hpp"

namespace pcf {

enum class prime_backend { unramified, eisenstein };

inline const char* backend_code(prime_backend b) { return b == prime_backend::unramified ? "A" : "B"; }

/**
 * A prime P of O_K above the rational prime p.
 *
 * Backend A (p does not divide disc g): P corresponds to a monic factor G of
 * g mod p, lifted to p^T; e = 1 and f = deg G. Z[c0] is p-maximal because p
 * does not divide the index.
 *
 * Backend B (g(c + s) Eisenstein at p): P is the unique prime above p, totally
 * ramified with e = deg g and uniformizer c0 - s. Z[c0] is p-maximal because
 * an Eisenstein polynomial generates a p-maximal order.
 */
struct PrimeAboveD {
    NumberField field;
    std::uint64_t p = 0;
    prime_backend backend = prime_backend::unramified;
    IntPoly factor;      // A: lifted G mod p^T; B: c - s
    FpPoly residue;      // A: G mod p; B: c - s mod p
    mpz_class shift = 0; // B only
    int e = 1;
    int f = 1;
    unsigned T = default_precision;

    /// Text for witness trails.
    std::string describe() const {
        std::string s = "P above " + std::to_string(p) + " (backend " + backend_code(backend) + ", e=" +
                        std::to_string(e) + ", f=" + std::to_string(f) + ")";
        return s;
    }

    /// Why valuations against Z[c0] are valid at this prime.
    std::string maximality_reason() const {
        if (backend == prime_backend::unramified)
            return std::to_string(p) + " does not divide disc(g), so Z[c0] is " + std::to_string(p) + "-maximal";
        return "g(c + " + shift.get_str() + ") is Eisenstein at " + std::to_string(p) + ", so Z[c0] is " +
               std::to_string(p) + "-maximal";
    }
};

/// Valuation result: finite, a lower bound from limited precision, or infinite (x = 0).
struct Valuation {
    enum class kind { finite, at_least, infinite };
    kind k = kind::finite;
    long value = 0;

    static Valuation finite(long v) { return {kind::finite, v}; }
    static Valuation at_least(long v) { return {kind::at_least, v}; }
    static Valuation infinite() { return {kind::infinite, 0}; }

    bool is_finite() const { return k == kind::finite; }

    /// The exact value; throws precision_exceeded_error for a bare lower bound.
    long exact() const {
        if (k == kind::finite) return value;
        if (k == kind::infinite) throw invalid_argument_error("valuation of zero is infinite");
        throw precision_exceeded_error("valuation only known to be >= " + std::to_string(value));
    }

    friend bool operator==(const Valuation&, const Valuation&) = default;
};

inline std::string to_string(const Valuation& v) {
    switch (v.k) {
        case Valuation::kind::finite: return std::to_string(v.value);
        case Valuation::kind::at_least: return ">=" + std::to_string(v.value);
        case Valuation::kind::infinite: return "inf";
    }
    return "?";
}

inline json valuation_json(const Valuation& v) {
    if (v.k == Valuation::kind::finite) return v.value;
    return to_string(v);
}

namespace detail {

/// Taylor shift h(t) = g(t + s).
inline IntPoly taylor_shift(const IntPoly& g, const mpz_class& s) {
    return compose(g, int_poly({0, 1}) + IntPoly::constant(s));
}

inline bool is_eisenstein(const IntPoly& h, std::uint64_t p) {
    if (!h.is_monic() || h.degree() < 1) return false;
    for (int i = 0; i < h.degree(); ++i)
        if (!mpz_divisible_ui_p(h[static_cast<std::size_t>(i)].get_mpz_t(), p)) return false;
    const mpz_class p2 = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
    return !mpz_divisible_p(h[0].get_mpz_t(), p2.get_mpz_t());
}

/// s in [0, p) with g(c + s) Eisenstein at p, if any.
inline std::optional<mpz_class> eisenstein_shift(const IntPoly& g, std::uint64_t p) {
    const FpPoly gp = to_fp(g, p);
    for (std::uint64_t s = 0; s < p; ++s) {
        // g must reduce to (c - s)^n
        if (gp != pow(fp_poly({-static_cast<long long>(s), 1}, p), static_cast<unsigned long>(g.degree()))) continue;
        mpz_class sz(static_cast<unsigned long>(s));
        if (is_eisenstein(taylor_shift(g, sz), p)) return sz;
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace detail

/**
 * Primes of K above p, by backend A when p does not divide disc g, else by
 * backend B when some shift of g is Eisenstein at p. Throws
 * unsupported_error when neither applies.
 */
inline std::vector<PrimeAboveD> primes_above(const NumberField& k, std::uint64_t p, unsigned T = default_precision) {
    if (!is_prime(p)) throw invalid_argument_error(std::to_string(p) + " is not prime");
    if (T < 1) throw invalid_argument_error("precision must be at least 1");
    std::vector<PrimeAboveD> out;
    if (!mpz_divisible_ui_p(k.disc().get_mpz_t(), p)) {
        auto fac = fp_factor(to_fp(k.g(), p));
        auto lifted = hensel_lift(k.g(), fac, T);
        for (std::size_t i = 0; i < fac.factors.size(); ++i) {
            PrimeAboveD P;
            P.field = k;
            P.p = p;
            P.backend = prime_backend::unramified;
            P.factor = lifted.factors[i];
            P.residue = fac.factors[i].factor;
            P.e = 1;
            P.f = P.residue.degree();
            P.T = T;
            out.push_back(std::move(P));
        }
        return out;
    }
    if (auto s = detail::eisenstein_shift(k.g(), p)) {
        PrimeAboveD P;
        P.field = k;
        P.p = p;
        P.backend = prime_backend::eisenstein;
        P.shift = *s;
        P.factor = int_poly({0, 1}) - IntPoly::constant(*s);
        P.residue = to_fp(P.factor, p);
        P.e = k.degree();
        P.f = 1;
        P.T = T;
        out.push_back(std::move(P));
        return out;
    }
    throw unsupported_error("ramification of " + std::to_string(p) + " in Q[c]/(" + to_text(k.g(), "c") +
                            ") undetermined: " + std::to_string(p) +
                            " divides disc(g) and no shift of g is Eisenstein");
}

/// Strips the largest power of p from the content of a nonzero polynomial.
inline std::pair<IntPoly, long> strip_p_content(const IntPoly& num, std::uint64_t p) {
    long a = pvaluation(content(num), p);
    if (a == 0) return {num, 0};
    mpz_class pa;
    mpz_pow_ui(pa.get_mpz_t(), mpz_class(static_cast<unsigned long>(p)).get_mpz_t(), static_cast<unsigned long>(a));
    std::vector<mpz_class> c;
    for (const auto& v : num.coeffs()) c.push_back(v / pa);
    return {IntPoly(std::move(c)), a};
}

/**
 * v_P(x), normalised so that v_P(p) = e.
 *
 * Backend A reduces the p-free numerator into Z[c]/(p^T, G) and reads off the
 * p-adic valuation of the image; a zero image gives AtLeast. Backend B writes
 * the numerator in powers of the uniformizer pi = c0 - s; the terms
 * b_j pi^j have pairwise distinct valuations e*v_p(b_j) + j, so the answer is
 * always exact.
 */
inline Valuation valuation(const NFElem& x, const PrimeAboveD& P) {
    if (x.is_zero()) return Valuation::infinite();
    const long den_part = pvaluation(x.den(), P.p) * P.e;
    if (P.backend == prime_backend::eisenstein) {
        const IntPoly b = detail::taylor_shift(x.num(), P.shift);
        long best = -1;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (sgn(b[j]) == 0) continue;
            const long v = P.e * pvaluation(b[j], P.p) + static_cast<long>(j);
            if (best < 0 || v < best) best = v;
        }
        return Valuation::finite(best - den_part);
    }
    auto [stripped, a] = strip_p_content(x.num(), P.p);
    mpz_class pT;
    mpz_pow_ui(pT.get_mpz_t(), mpz_class(static_cast<unsigned long>(P.p)).get_mpz_t(), P.T);
    const IntPoly image = reduce_mod(rem(stripped, P.factor), pT);
    if (image.is_zero()) return Valuation::at_least(a + static_cast<long>(P.T) - den_part);
    long best = static_cast<long>(P.T);
    for (const auto& c : image.coeffs())
        if (sgn(c) != 0) best = std::min(best, pvaluation(c, P.p));
    return Valuation::finite(a + best - den_part);
}

/// P recomputed at a higher lifting precision (backend A only; backend B is exact at any T).
inline PrimeAboveD with_precision(const PrimeAboveD& P, unsigned T) {
    if (P.backend == prime_backend::eisenstein || T <= P.T) return P;
    for (auto& Q : primes_above(P.field, P.p, T))
        if (Q.residue == P.residue) return Q;
    throw oracle_mismatch_error("prime lost when raising precision");
}

/**
 * Exact v_P(x) for x != 0. For backend A the lifting precision is raised past
 * v_p(N(num)), which bounds v_P of the p-free numerator.
 */
inline long valuation_exact(const NFElem& x, const PrimeAboveD& P) {
    Valuation v = valuation(x, P);
    if (v.k != Valuation::kind::at_least) return v.exact();
    auto [stripped, a] = strip_p_content(x.num(), P.p);
    const mpq_class n = nf_norm(NFElem(P.field, stripped));
    const long need = pvaluation(n.get_num(), P.p) + 1;
    return valuation(x, with_precision(P, static_cast<unsigned>(std::max<long>(need, P.T + 1)))).exact();
}

/// Residue field O_K/P as an F_q context, with t the image of c0.
inline FqHandle residue_field(const PrimeAboveD& P) { return FqContext::create(P.residue); }

/// Image of x in O_K/P; x must have nonnegative valuation and p must not divide its denominator.
inline FqElem to_residue(const FqHandle& ctx, const NFElem& x) {
    if (mpz_divisible_ui_p(x.den().get_mpz_t(), ctx->p()))
        throw not_integral_error("denominator divisible by the residue characteristic");
    const FqElem num = FqElem::from_poly(ctx, to_fp(x.num(), ctx->p()));
    return num * FqElem::from_fp(ctx, FpElem::from_mpz(x.den(), ctx->p())).inverse();
}

inline json prime_json(const PrimeAboveD& P) {
    json j{{"p", std::to_string(P.p)}, {"backend", backend_code(P.backend)}, {"factor", poly_json(P.factor, "c")},
           {"T", P.T}, {"e", P.e}, {"f", P.f}};
    if (P.backend == prime_backend::eisenstein) j["shift"] = P.shift.get_str();
    return j;
}

}  // namespace pcf
