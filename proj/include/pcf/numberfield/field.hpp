#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pcf/errors.hpp"
#include "pcf/exactpoly/format.hpp"
#include "pcf/exactpoly/integers.hpp"
#include "pcf/exactpoly/json.hpp"
#include "pcf/numberfield/irreducibility.hpp"

namespace pcf {

enum class irreducibility_status { certified, assumed_by_user };

inline const char* to_string(irreducibility_status s) {
    return s == irreducibility_status::certified ? "Certified" : "AssumedByUser";
}

struct FieldData {
    IntPoly g;
    int degree;
    mpz_class disc;
    irreducibility_status status;
    IrreducibilityCertificate certificate;
    std::vector<mpz_class> power_sums;  // s_k = sum of k-th powers of the roots, k < degree
};

class NFElem;

/**
 * K = Q[c]/(g) for a monic g. Cheap to copy; all copies share one immutable
 * context. A field whose irreducibility was not certified is tainted, and
 * every certificate computed over it says so.
 */
class NumberField {
public:
    NumberField() = default;

    /// Builds K and certifies g; throws reducible_error when g is shown reducible.
    static NumberField create(const IntPoly& g, const IrreducibilityOptions& opt = {}) {
        check_defining(g);
        IrreducibilityCertificate cert = irreducibility_certificate(g, opt);
        if (cert.verdict == irreducibility_verdict::refuted)
            throw reducible_error(to_text(g, "c") + " is reducible (" + cert.method + ")");
        const auto status = cert.verdict == irreducibility_verdict::certified ? irreducibility_status::certified
                                                                               : irreducibility_status::assumed_by_user;
        return NumberField(g, status, std::move(cert));
    }

    /// Builds K without any irreducibility check; the field is tainted.
    static NumberField assume_irreducible(const IntPoly& g) {
        check_defining(g);
        return NumberField(g, irreducibility_status::assumed_by_user, IrreducibilityCertificate{});
    }

    const IntPoly& g() const { return data().g; }
    int degree() const { return data().degree; }
    const mpz_class& disc() const { return data().disc; }
    irreducibility_status status() const { return data().status; }
    bool tainted() const { return data().status != irreducibility_status::certified; }
    const IrreducibilityCertificate& certificate() const { return data().certificate; }
    const std::vector<mpz_class>& power_sums() const { return data().power_sums; }

    bool valid() const { return static_cast<bool>(d_); }
    bool same_as(const NumberField& o) const { return d_ == o.d_ || (d_ && o.d_ && d_->g == o.d_->g); }

    NFElem zero() const;
    NFElem one() const;
    NFElem gen() const;  // c0, the class of c
    NFElem from_int(const mpz_class& v) const;
    NFElem from_rat(const mpq_class& v) const;
    NFElem from_poly(const RatPoly& p) const;
    NFElem from_poly(const IntPoly& p) const;
    /// Parses an integer, rational, or polynomial-in-c literal such as "c^2 - 1/2".
    NFElem parse(const std::string& text) const;

private:
    NumberField(const IntPoly& g, irreducibility_status status, IrreducibilityCertificate cert) {
        auto d = std::make_shared<FieldData>();
        d->g = g;
        d->degree = g.degree();
        d->disc = discriminant(g);
        d->status = status;
        d->certificate = std::move(cert);
        d->power_sums = newton_power_sums(g);
        d_ = std::move(d);
    }

    static void check_defining(const IntPoly& g) {
        if (g.degree() < 1) throw invalid_argument_error("defining polynomial must be nonconstant");
        if (!g.is_monic()) throw invalid_argument_error("defining polynomial must be monic");
    }

    static std::vector<mpz_class> newton_power_sums(const IntPoly& g) {
        const int n = g.degree();
        std::vector<mpz_class> s(static_cast<std::size_t>(n));
        s[0] = n;
        // g = x^n + e_1 x^(n-1) + ...: s_k = -(k e_k + sum_{i<k} e_i s_{k-i})
        auto e = [&](int i) -> const mpz_class& { return g[static_cast<std::size_t>(n - i)]; };
        for (int k = 1; k < n; ++k) {
            mpz_class acc = k * e(k);
            for (int i = 1; i < k; ++i) acc += e(i) * s[static_cast<std::size_t>(k - i)];
            s[static_cast<std::size_t>(k)] = -acc;
        }
        return s;
    }

    const FieldData& data() const {
        if (!d_) throw invalid_argument_error("use of an uninitialised number field");
        return *d_;
    }

    std::shared_ptr<const FieldData> d_;
};

/**
 * Element num(c0)/den with deg num < deg g, den > 0 and gcd(content(num), den) = 1.
 */
class NFElem {
public:
    NFElem() = default;

    NFElem(NumberField field, IntPoly num, mpz_class den = 1) : k_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
        if (sgn(den_) == 0) throw invalid_argument_error("zero denominator");
        if (num_.degree() >= k_.degree()) num_ = rem(num_, k_.g());
        normalize();
    }

    const NumberField& field() const { return k_; }
    const IntPoly& num() const { return num_; }
    const mpz_class& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integral_rep() const { return den_ == 1; }
    bool is_rational() const { return num_.degree() <= 0; }

    /// num/den as a rational polynomial in c.
    RatPoly as_rat_poly() const {
        std::vector<mpq_class> c;
        for (const auto& v : num_.coeffs()) {
            mpq_class q(v, den_);
            q.canonicalize();
            c.push_back(q);
        }
        return RatPoly(std::move(c));
    }

    friend bool operator==(const NFElem& a, const NFElem& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    friend NFElem operator+(const NFElem& a, const NFElem& b) {
        if (a.den_ == 1 && b.den_ == 1) return NFElem(a.k_, a.num_ + b.num_, 1, raw_tag{});
        return NFElem(a.k_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend NFElem operator-(const NFElem& a, const NFElem& b) {
        if (a.den_ == 1 && b.den_ == 1) return NFElem(a.k_, a.num_ - b.num_, 1, raw_tag{});
        return NFElem(a.k_, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend NFElem operator-(const NFElem& a) { return NFElem(a.k_, -a.num_, a.den_, raw_tag{}); }
    friend NFElem operator*(const NFElem& a, const NFElem& b) {
        const KField& k = a.k_;
        IntPoly prod = a.num_ * b.num_;
        if (prod.degree() >= k.degree()) prod = rem(prod, k.g());
        if (a.den_ == 1 && b.den_ == 1) return NFElem(k, std::move(prod), 1, raw_tag{});
        return NFElem(k, std::move(prod), a.den_ * b.den_);
    }

    NFElem inverse() const {
        if (is_zero()) throw invalid_argument_error("inverse of zero in a number field");
        if (k_.degree() == 1 || num_.degree() == 0) {
            mpq_class v(den_, num_[0]);
            v.canonicalize();
            return k_.from_rat(v);
        }
        auto [gg, s, t] = xgcd(to_rat(num_), to_rat(k_.g()));
        if (gg.degree() != 0)
            throw reducible_error("element is a zero divisor: defining polynomial is reducible");
        auto [n, d] = clear_denominators(s * mpq_class(den_));
        return NFElem(k_, std::move(n), std::move(d));
    }

private:
    using KField = NumberField;
    struct raw_tag {};
    NFElem(NumberField field, IntPoly num, mpz_class den, raw_tag)
        : k_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (sgn(den_) < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        if (den_ == 1) return;
        mpz_class c = content(num_);
        mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), den_.get_mpz_t());
        if (c != 1) {
            std::vector<mpz_class> v;
            for (const auto& x : num_.coeffs()) v.push_back(x / c);
            num_ = IntPoly(std::move(v));
            den_ /= c;
        }
    }

    NumberField k_;
    IntPoly num_;
    mpz_class den_ = 1;
};

inline NFElem NumberField::zero() const { return NFElem(*this, IntPoly()); }
inline NFElem NumberField::one() const { return from_int(1); }
inline NFElem NumberField::gen() const { return NFElem(*this, int_poly({0, 1})); }
inline NFElem NumberField::from_int(const mpz_class& v) const { return NFElem(*this, IntPoly::constant(v)); }
inline NFElem NumberField::from_rat(const mpq_class& v) const {
    return NFElem(*this, IntPoly::constant(v.get_num()), v.get_den());
}
inline NFElem NumberField::from_poly(const RatPoly& p) const {
    auto [n, d] = clear_denominators(p);
    return NFElem(*this, std::move(n), std::move(d));
}
inline NFElem NumberField::from_poly(const IntPoly& p) const { return NFElem(*this, p); }
inline NFElem NumberField::parse(const std::string& text) const { return from_poly(parse_rat_poly(text, "c")); }

template <>
struct coeff_traits<NFElem> {
    static constexpr bool is_field = true;
    static NFElem zero_like(const NFElem& x) { return x.field().zero(); }
    static NFElem one_like(const NFElem& x) { return x.field().one(); }
    static NFElem from_int(const NFElem& x, long v) { return x.field().from_int(v); }
    static bool is_zero(const NFElem& x) { return x.is_zero(); }
    static NFElem inverse(const NFElem& x) { return x.inverse(); }
    static std::optional<NFElem> divide_exact(const NFElem& a, const NFElem& b) {
        if (b.is_zero()) return std::nullopt;
        if (b == b.field().one()) return a;
        return a * b.inverse();
    }
};

using KPoly = Poly<NFElem>;

/// Lifts an integer polynomial into K[x].
inline KPoly to_k(const NumberField& k, const IntPoly& p) {
    std::vector<NFElem> c;
    for (const auto& v : p.coeffs()) c.push_back(k.from_int(v));
    return KPoly(std::move(c));
}

/// N(x) = Res(g, num) / den^deg g; N(c0) = (-1)^deg g * g(0).
inline mpq_class nf_norm(const NFElem& x) {
    if (x.is_zero()) return 0;
    const NumberField& k = x.field();
    mpz_class r = x.num().degree() == 0 ? mpz_class(power(x.num()[0], static_cast<unsigned long>(k.degree())))
                                        : resultant(k.g(), x.num());
    mpz_class dn;
    mpz_pow_ui(dn.get_mpz_t(), x.den().get_mpz_t(), static_cast<unsigned long>(k.degree()));
    mpq_class q(r, dn);
    q.canonicalize();
    return q;
}

inline mpq_class nf_trace(const NFElem& x) {
    const auto& s = x.field().power_sums();
    mpz_class acc = 0;
    for (std::size_t i = 0; i < x.num().size(); ++i) acc += x.num()[i] * s[i];
    mpq_class q(acc, x.den());
    q.canonicalize();
    return q;
}

/// |N(x)| = 1 for an element with integral representative; throws not_integral_error otherwise.
inline bool is_unit(const NFElem& x) {
    if (!x.is_integral_rep()) throw not_integral_error("element has denominator " + x.den().get_str());
    return abs(nf_norm(x)) == 1;
}

inline std::string to_text(const NFElem& x) {
    std::string s = to_text(x.num(), "c0");
    if (x.den() == 1) return s;
    return "(" + s + ")/" + x.den().get_str();
}

inline std::string coefficient_text(const NFElem& x) { return to_text(x); }
inline bool coefficient_is_atomic(const NFElem& x) { return x.num().size() <= 1 && x.den() == 1; }

inline json field_json(const NumberField& k) {
    return json{{"g", poly_json(k.g(), "c")}, {"status", to_string(k.status())}};
}

inline json coefficient_json(const NFElem& x) {
    return json{{"num", poly_json(x.num(), "c")}, {"den", x.den().get_str()}};
}

inline json element_json(const NFElem& x) { return coefficient_json(x); }

inline NumberField field_from_json(const json& j) {
    const IntPoly g = int_poly_from_json(j.at("g"));
    return NumberField::create(g);
}

inline NFElem element_from_json(const NumberField& k, const json& j) {
    return NFElem(k, int_poly_from_json(j.at("num")), parse_integer(j.at("den")));
}

}  // namespace pcf
