#pragma once

#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/numberfield/numberfield.hpp"
#include "pcf/pcforbits/pcforbits.hpp"

namespace pcf {

/**
 * Iterates f^k of f = x^d + c0 over K and the critical orbit a_i(c0), cached
 * per field. Not synchronised: use one instance per thread.
 */
class Dynamics {
public:
    Dynamics(NumberField k, long d, unsigned long budget = default_degree_budget)
        : k_(std::move(k)), d_(d), budget_(budget) {
        require_prime_degree(d);
        iterates_.push_back(KPoly::x(k_.one()));
        orbit_.push_back(k_.zero());
    }

    const NumberField& field() const { return k_; }
    long d() const { return d_; }
    unsigned long budget() const { return budget_; }

    /// d^k, or budget_exceeded_error.
    unsigned long degree_of(long k) const {
        const unsigned long deg = capped_power(static_cast<unsigned long>(d_), static_cast<unsigned long>(k), budget_);
        if (deg == 0)
            throw budget_exceeded_error("deg f^" + std::to_string(k) + " = " + std::to_string(d_) + "^" +
                                        std::to_string(k) + " exceeds the budget " + std::to_string(budget_));
        return deg;
    }

    /// f^k for k >= 0 (f^0 = x), by f^k = (f^(k-1))^d + c0.
    const KPoly& iterate(long k) {
        if (k < 0) throw invalid_argument_error("iterate index must be nonnegative");
        degree_of(k);
        const KPoly c0 = KPoly::constant(k_.gen());
        while (static_cast<long>(iterates_.size()) <= k)
            iterates_.push_back(pow(iterates_.back(), static_cast<unsigned long>(d_)) + c0);
        return iterates_[static_cast<std::size_t>(k)];
    }

    /// a_i(c0) for i >= 0.
    const NFElem& a(long i) {
        if (i < 0) throw invalid_argument_error("orbit index must be nonnegative");
        const NFElem c0 = k_.gen();
        while (static_cast<long>(orbit_.size()) <= i)
            orbit_.push_back(power(orbit_.back(), static_cast<unsigned long>(d_)) + c0);
        return orbit_[static_cast<std::size_t>(i)];
    }

    /// Cached F_(k,i), filled by f_factor.
    std::map<std::pair<long, long>, KPoly>& f_cache() { return f_cache_; }

private:
    NumberField k_;
    long d_;
    unsigned long budget_;
    std::deque<KPoly> iterates_;
    std::deque<NFElem> orbit_;
    std::map<std::pair<long, long>, KPoly> f_cache_;
};

/// f^k = x^(d^k) + middle + constant with middle = d x^d cofactor.
struct IterateForm {
    long d = 0;
    long k = 0;
    KPoly full;
    KPoly middle;
    KPoly cofactor;
    NFElem constant;
    long index = 0;  // i in a_i: least positive residue of k mod n, or gcd(k, n)
    std::optional<NFElem> unit_residual;
};

/**
 * Checks the shape of f^k for a parameter of the given exact type. Periodic(n):
 * the constant is a_i with i the least positive residue of k mod n (zero when
 * n | k). Preperiodic(m, n): u = a_k / a_gcd(k,n) must be a unit.
 */
inline IterateForm structural_form(Dynamics& dyn, const ExactType& type, long k) {
    if (k < 1) throw invalid_argument_error("structural form needs k >= 1");
    const long d = dyn.d();
    IterateForm form;
    form.d = d;
    form.k = k;
    form.full = dyn.iterate(k);
    const NumberField& K = dyn.field();
    const auto top = static_cast<long>(dyn.degree_of(k));
    if (form.full.degree() != top || !form.full.is_monic())
        throw shape_violation_error("f^" + std::to_string(k) + " is not monic of degree " + std::to_string(top));
    form.constant = form.full.coeff_or_zero(0, K.zero());

    std::vector<NFElem> mid(static_cast<std::size_t>(top), K.zero());
    std::vector<NFElem> cof;
    for (long j = 1; j < top; ++j) {
        const NFElem& c = form.full[static_cast<std::size_t>(j)];
        if (c.is_zero()) continue;
        if (j < d)
            throw shape_violation_error("f^" + std::to_string(k) + " has a monomial of degree " + std::to_string(j) +
                                        " < d");
        if (!c.is_integral_rep() || !mpz_divisible_ui_p(content(c.num()).get_mpz_t(), static_cast<unsigned long>(d)))
            throw shape_violation_error("coefficient of x^" + std::to_string(j) + " in f^" + std::to_string(k) +
                                        " is not divisible by " + std::to_string(d));
        mid[static_cast<std::size_t>(j)] = c;
    }
    form.middle = KPoly(mid);
    for (long j = d; j < top; ++j) {
        const NFElem& c = mid[static_cast<std::size_t>(j)];
        cof.push_back(c.is_zero() ? c : NFElem(K, exact_div(c.num(), IntPoly::constant(d))));
    }
    form.cofactor = cof.empty() ? KPoly() : KPoly(cof);

    if (type.periodic()) {
        const long i = k % type.n == 0 ? type.n : k % type.n;
        form.index = i;
        const NFElem expected = i == type.n ? K.zero() : dyn.a(i);
        if (!(form.constant == expected))
            throw shape_violation_error("constant of f^" + std::to_string(k) + " is " + to_text(form.constant) +
                                        ", expected " + (i == type.n ? std::string("0") : "a_" + std::to_string(i)));
    } else {
        const long i = std::gcd(k, type.n);
        form.index = i;
        const NFElem& ai = dyn.a(i);
        if (ai.is_zero()) throw shape_violation_error("a_" + std::to_string(i) + " vanishes at a preperiodic parameter");
        NFElem u = form.constant * ai.inverse();
        if (!is_unit(u))
            throw not_unit_error("a_" + std::to_string(k) + "/a_" + std::to_string(i) + " = " + to_text(u) +
                                 " is not a unit");
        form.unit_residual = u;
    }
    return form;
}

inline json iterate_form_json(const IterateForm& f) {
    json j{{"k", f.k},
           {"degree", f.full.degree()},
           {"middle_cofactor", poly_json(f.cofactor, "x")},
           {"constant", element_json(f.constant)},
           {"index", f.index}};
    if (f.unit_residual) j["unit_residual"] = element_json(*f.unit_residual);
    return j;
}

}  // namespace pcf
