#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/modarith/ffalgo.hpp"
#include "pcf/modarith/fp.hpp"

namespace pcf {

/// F_q = F_p[t]/(h) for a monic irreducible h of degree f.
class FqContext {
public:
    static std::shared_ptr<const FqContext> create(const FpPoly& h) {
        if (h.degree() < 1 || !h.is_monic())
            throw invalid_argument_error("extension modulus must be monic of positive degree");
        if (!is_irreducible(h)) throw reducible_error("extension modulus is reducible over F_p");
        return std::shared_ptr<const FqContext>(new FqContext(h));
    }

    std::uint64_t p() const { return p_; }
    std::size_t degree() const { return f_; }
    const FpPoly& modulus() const { return h_; }
    const mpz_class& order() const { return q_; }

    /// Low-level product of residue vectors, reduced mod h.
    std::vector<std::uint64_t> multiply(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const {
        std::vector<std::uint64_t> prod(2 * f_ - 1, 0);
        for (std::size_t i = 0; i < f_; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < f_; ++j)
                prod[i + j] = static_cast<std::uint64_t>((prod[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p_);
        }
        for (std::size_t k = prod.size(); k-- > f_;) {
            const std::uint64_t t = prod[k];
            if (t == 0) continue;
            prod[k] = 0;
            // t * t^k = -t * (h - t^f) * t^(k - f)
            for (std::size_t j = 0; j < f_; ++j) {
                const auto hj = h_[j].v;
                const auto sub = static_cast<std::uint64_t>(static_cast<unsigned __int128>(t) * hj % p_);
                prod[k - f_ + j] = (prod[k - f_ + j] + p_ - sub) % p_;
            }
        }
        prod.resize(f_);
        return prod;
    }

private:
    explicit FqContext(FpPoly h) : h_(std::move(h)), p_(h_.lead().p), f_(static_cast<std::size_t>(h_.degree())) {
        mpz_class base(std::to_string(p_));
        mpz_pow_ui(q_.get_mpz_t(), base.get_mpz_t(), f_);
    }

    FpPoly h_;
    std::uint64_t p_;
    std::size_t f_;
    mpz_class q_;
};

using FqHandle = std::shared_ptr<const FqContext>;

/// Element of F_q stored as residues of a polynomial in t of degree < f.
struct FqElem {
    FqHandle ctx;
    std::vector<std::uint64_t> r;

    FqElem() = default;
    FqElem(FqHandle c, std::vector<std::uint64_t> residues) : ctx(std::move(c)), r(std::move(residues)) {
        r.resize(ctx->degree(), 0);
    }

    static FqElem from_fp(const FqHandle& c, const FpElem& x) {
        std::vector<std::uint64_t> v(c->degree(), 0);
        v[0] = x.v % c->p();
        return FqElem(c, std::move(v));
    }

    static FqElem from_int(const FqHandle& c, long long x) { return from_fp(c, FpElem::from_signed(x, c->p())); }

    /// The class of t.
    static FqElem generator(const FqHandle& c) {
        return from_poly(c, FpPoly::x(FpElem(0, c->p())));
    }

    /// Reduces an F_p polynomial in t modulo the defining polynomial.
    static FqElem from_poly(const FqHandle& c, const FpPoly& a) {
        const FpPoly red = rem(a, c->modulus());
        std::vector<std::uint64_t> v(c->degree(), 0);
        for (std::size_t i = 0; i < red.size(); ++i) v[i] = red[i].v;
        return FqElem(c, std::move(v));
    }

    FpPoly to_poly() const {
        std::vector<FpElem> c;
        for (auto x : r) c.emplace_back(x, ctx->p());
        return FpPoly(std::move(c));
    }

    bool is_zero() const {
        for (auto x : r)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const FqElem& a, const FqElem& b) { return a.r == b.r; }

    friend FqElem operator+(const FqElem& a, const FqElem& b) {
        const auto p = a.ctx->p();
        std::vector<std::uint64_t> v(a.r.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.r[i] + b.r[i]) % p;
        return FqElem(a.ctx, std::move(v));
    }
    friend FqElem operator-(const FqElem& a, const FqElem& b) {
        const auto p = a.ctx->p();
        std::vector<std::uint64_t> v(a.r.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.r[i] + p - b.r[i]) % p;
        return FqElem(a.ctx, std::move(v));
    }
    friend FqElem operator-(const FqElem& a) {
        const auto p = a.ctx->p();
        std::vector<std::uint64_t> v(a.r.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = (p - a.r[i]) % p;
        return FqElem(a.ctx, std::move(v));
    }
    friend FqElem operator*(const FqElem& a, const FqElem& b) { return FqElem(a.ctx, a.ctx->multiply(a.r, b.r)); }

    FqElem inverse() const {
        if (is_zero()) throw invalid_argument_error("inverse of zero in F_q");
        auto [g, s, t] = xgcd(to_poly(), ctx->modulus());
        // g is a nonzero constant because the modulus is irreducible
        return from_poly(ctx, s * g[0].inverse());
    }
};

template <>
struct coeff_traits<FqElem> {
    static constexpr bool is_field = true;
    static FqElem zero_like(const FqElem& x) { return FqElem::from_int(x.ctx, 0); }
    static FqElem one_like(const FqElem& x) { return FqElem::from_int(x.ctx, 1); }
    static FqElem from_int(const FqElem& x, long v) { return FqElem::from_int(x.ctx, v); }
    static bool is_zero(const FqElem& x) { return x.is_zero(); }
    static FqElem inverse(const FqElem& x) { return x.inverse(); }
    static std::optional<FqElem> divide_exact(const FqElem& a, const FqElem& b) {
        if (b.is_zero()) return std::nullopt;
        return a * b.inverse();
    }
};

template <>
struct finite_field_traits<FqElem> {
    static std::uint64_t characteristic(const FqElem& like) { return like.ctx->p(); }
    static mpz_class order(const FqElem& like) { return like.ctx->order(); }
    static FqElem random(const FqElem& like, std::mt19937_64& rng) {
        std::uniform_int_distribution<std::uint64_t> dist(0, like.ctx->p() - 1);
        std::vector<std::uint64_t> v(like.ctx->degree());
        for (auto& x : v) x = dist(rng);
        return FqElem(like.ctx, std::move(v));
    }
    static std::vector<std::uint64_t> key(const FqElem& x) { return {x.r.rbegin(), x.r.rend()}; }
    /// a^(q/p), the inverse of the Frobenius.
    static FqElem pth_root(const FqElem& x) {
        FqElem y = x;
        for (std::size_t i = 1; i < x.ctx->degree(); ++i) y = power(y, x.ctx->p());
        return y;
    }
};

using FqPoly = Poly<FqElem>;

/// Embeds an F_p polynomial into F_q[x].
inline FqPoly to_fq(const FqHandle& ctx, const FpPoly& g) {
    std::vector<FqElem> c;
    for (const auto& a : g.coeffs()) c.push_back(FqElem::from_fp(ctx, a));
    return FqPoly(std::move(c));
}

}  // namespace pcf
