#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/format.hpp"
#include "pcf/exactpoly/integers.hpp"
#include "pcf/exactpoly/json.hpp"
#include "pcf/exactpoly/poly.hpp"

namespace pcf {

/**
 * Element of R[z]/Phi_d(z) for a prime d, stored in the power basis
 * 1, z, ..., z^(d-2). zeta is the class of z; for d = 2 the ring is R itself
 * with zeta = -1.
 */
template <coefficient R>
class Cyclo {
public:
    Cyclo() = default;

    Cyclo(int d, std::vector<R> coeffs) : d_(d), c_(std::move(coeffs)) {
        if (d_ < 2) throw invalid_argument_error("cyclotomic order must be at least 2");
        if (c_.empty()) throw invalid_argument_error("cyclotomic element needs a coefficient to copy the ring from");
        reduce();
    }

    /// r embedded as a constant.
    static Cyclo scalar(int d, const R& r) {
        std::vector<R> c(static_cast<std::size_t>(d - 1), pcf::zero_like(r));
        c[0] = r;
        return Cyclo(d, std::move(c));
    }

    /// zeta^j, with `like` supplying the base ring.
    static Cyclo zeta_power(int d, long j, const R& like) {
        long e = ((j % d) + d) % d;
        std::vector<R> c(static_cast<std::size_t>(d), pcf::zero_like(like));
        c[static_cast<std::size_t>(e)] = pcf::one_like(like);
        return Cyclo(d, std::move(c));
    }

    int d() const { return d_; }
    const std::vector<R>& coeffs() const { return c_; }
    bool is_zero() const {
        for (const auto& x : c_)
            if (!pcf::is_zero(x)) return false;
        return true;
    }
    /// True when the element lies in the base ring.
    bool is_scalar() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!pcf::is_zero(c_[i])) return false;
        return true;
    }

    friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.c_ == b.c_; }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        std::vector<R> c = a.c_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] + b.c_[i];
        return Cyclo(a.d_, std::move(c), reduced_tag{});
    }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
        std::vector<R> c = a.c_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] - b.c_[i];
        return Cyclo(a.d_, std::move(c), reduced_tag{});
    }
    friend Cyclo operator-(const Cyclo& a) {
        std::vector<R> c = a.c_;
        for (auto& x : c) x = -x;
        return Cyclo(a.d_, std::move(c), reduced_tag{});
    }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        if (a.d_ == 2) return Cyclo(2, std::vector<R>{a.c_[0] * b.c_[0]}, reduced_tag{});
        const R zero = pcf::zero_like(a.c_[0]);
        std::vector<R> c(2 * a.c_.size() - 1, zero);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (pcf::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Cyclo(a.d_, std::move(c));
    }

    /// The Galois conjugate zeta -> zeta^j, for j not divisible by d.
    Cyclo conjugate(long j) const {
        if (j % d_ == 0) throw invalid_argument_error("conjugation exponent divisible by d");
        const R zero = pcf::zero_like(c_[0]);
        std::vector<R> c(static_cast<std::size_t>(d_), zero);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const auto e = static_cast<std::size_t>((static_cast<long>(i) * (((j % d_) + d_) % d_)) % d_);
            c[e] = c[e] + c_[i];
        }
        return Cyclo(d_, std::move(c));
    }

    /// Product of all d - 1 conjugates; lies in the base ring.
    R norm() const {
        Cyclo n = *this;
        for (long j = 2; j < d_; ++j) n = n * conjugate(j);
        if (!n.is_scalar()) throw oracle_mismatch_error("cyclotomic norm is not a scalar");
        return n.c_[0];
    }

private:
    struct reduced_tag {};
    Cyclo(int d, std::vector<R> coeffs, reduced_tag) : d_(d), c_(std::move(coeffs)) {}

    // Folds z^d = 1, then eliminates z^(d-1) = -(1 + ... + z^(d-2)).
    void reduce() {
        const auto d = static_cast<std::size_t>(d_);
        const R zero = pcf::zero_like(c_[0]);
        std::vector<R> r(d, zero);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i % d] = r[i % d] + c_[i];
        const R top = r[d - 1];
        r.pop_back();
        if (!pcf::is_zero(top))
            for (auto& x : r) x = x - top;
        c_ = std::move(r);
    }

    int d_ = 2;
    std::vector<R> c_;
};

template <coefficient R>
struct coeff_traits<Cyclo<R>> {
    static constexpr bool is_field = false;
    static Cyclo<R> zero_like(const Cyclo<R>& x) { return Cyclo<R>::scalar(x.d(), pcf::zero_like(x.coeffs()[0])); }
    static Cyclo<R> one_like(const Cyclo<R>& x) { return Cyclo<R>::scalar(x.d(), pcf::one_like(x.coeffs()[0])); }
    static Cyclo<R> from_int(const Cyclo<R>& x, long v) {
        return Cyclo<R>::scalar(x.d(), coeff_traits<R>::from_int(x.coeffs()[0], v));
    }
    static bool is_zero(const Cyclo<R>& x) { return x.is_zero(); }

    /// a / b through b's norm: a * (conjugates of b other than b) / N(b), coefficientwise exact.
    static std::optional<Cyclo<R>> divide_exact(const Cyclo<R>& a, const Cyclo<R>& b) {
        if (b.is_zero()) return std::nullopt;
        Cyclo<R> num = a;
        for (long j = 2; j < b.d(); ++j) num = num * b.conjugate(j);
        const R n = b.norm();
        std::vector<R> c;
        for (const auto& x : num.coeffs()) {
            auto q = coeff_traits<R>::divide_exact(x, n);
            if (!q) return std::nullopt;
            c.push_back(*q);
        }
        return Cyclo<R>(b.d(), std::move(c));
    }
};

using CycInt = Cyclo<mpz_class>;
using CycPoly = Poly<CycInt>;

/// Galois conjugate of a polynomial with cyclotomic coefficients.
template <coefficient R>
Poly<Cyclo<R>> conjugate(const Poly<Cyclo<R>>& p, long j) {
    std::vector<Cyclo<R>> c;
    for (const auto& x : p.coeffs()) c.push_back(x.conjugate(j));
    return Poly<Cyclo<R>>(std::move(c));
}

/// Lifts an integer polynomial to constant-coefficient CycPoly.
inline CycPoly to_cyc(int d, const IntPoly& p) {
    std::vector<CycInt> c;
    for (const auto& v : p.coeffs()) c.push_back(CycInt::scalar(d, v));
    return CycPoly(std::move(c));
}

/// Base-ring part of a polynomial whose coefficients are all scalars.
inline IntPoly scalar_part(const CycPoly& p) {
    std::vector<mpz_class> c;
    for (const auto& x : p.coeffs()) {
        if (!x.is_scalar()) throw invalid_argument_error("polynomial has non-rational cyclotomic coefficients");
        c.push_back(x.coeffs()[0]);
    }
    return IntPoly(std::move(c));
}

inline std::string coefficient_text(const CycInt& x) {
    std::string out;
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
        const mpz_class& v = x.coeffs()[i];
        if (sgn(v) == 0) continue;
        std::string mag = mpz_class(abs(v)).get_str();
        std::string term = i == 0 ? mag : ((mag == "1" ? "" : mag + "*") + power_text("zeta", i));
        if (out.empty()) out = sgn(v) < 0 ? "-" + term : term;
        else out += (sgn(v) < 0 ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

inline bool coefficient_is_atomic(const CycInt& x) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < x.coeffs().size(); ++i)
        if (sgn(x.coeffs()[i]) != 0) ++nonzero;
    return nonzero <= 1;
}

/// {"d": d, "coeffs": [[...], ...]} ascending in c, each coefficient in the power basis of zeta.
inline json cycpoly_json(const CycPoly& p, int d) {
    json coeffs = json::array();
    for (const auto& x : p.coeffs()) {
        json v = json::array();
        for (const auto& c : x.coeffs()) v.push_back(c.get_str());
        coeffs.push_back(std::move(v));
    }
    return json{{"d", d}, {"coeffs", coeffs}};
}

inline CycPoly cycpoly_from_json(const json& j) {
    const int d = j.at("d").get<int>();
    std::vector<CycInt> c;
    for (const auto& v : j.at("coeffs")) {
        std::vector<mpz_class> x;
        for (const auto& e : v) x.push_back(parse_integer(e));
        c.emplace_back(d, std::move(x));
    }
    return CycPoly(std::move(c));
}

}  // namespace pcf
