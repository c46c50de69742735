#pragma once

#include <string>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/factorengine/iterate.hpp"

namespace pcf {

/// One step Delta_k = sign * d^(d^k) * Delta_(k-1)^d * (a_k - x0)^(d-1).
struct DiscStep {
    long k = 0;
    int sign = 1;                     // (-1)^(d^k (d-1)/2)
    unsigned long d_power = 0;        // exponent d^k of d
    long previous_exponent = 0;       // d
    NFElem critical;                  // a_k - x0
    long critical_exponent = 0;       // d - 1, the multiplicity of the critical point 0
    NFElem value;
    bool oracle_checked = false;
};

struct DiscTrace {
    long d = 0;
    NFElem x0;
    std::vector<DiscStep> steps;

    long k() const { return static_cast<long>(steps.size()); }
    const NFElem& value() const { return steps.back().value; }
};

inline constexpr long default_disc_oracle_k = 4;

/**
 * Discriminants of f^j - x0 for j = 1..k by the iterate recursion, with
 * Delta(f^0 - x0) = 1. Steps with j <= oracle_k are compared against the
 * resultant discriminant of the expanded polynomial; a disagreement throws
 * oracle_mismatch_error.
 */
inline DiscTrace disc_iterate(Dynamics& dyn, const NFElem& x0, long k, long oracle_k = default_disc_oracle_k) {
    if (k < 1) throw invalid_argument_error("disc_iterate needs k >= 1");
    const NumberField& K = dyn.field();
    const long d = dyn.d();
    dyn.degree_of(k);
    DiscTrace trace;
    trace.d = d;
    trace.x0 = x0;
    NFElem prev = K.one();
    for (long j = 1; j <= k; ++j) {
        DiscStep s;
        s.k = j;
        s.d_power = dyn.degree_of(j);
        // d^j (d-1)/2 is odd exactly when d = 2, j = 1, or d = 3 mod 4.
        const bool odd = d == 2 ? j == 1 : ((d - 1) / 2) % 2 == 1;
        s.sign = odd ? -1 : 1;
        s.previous_exponent = d;
        s.critical = dyn.a(j) - x0;
        s.critical_exponent = d - 1;
        mpz_class dp;
        mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), s.d_power);
        s.value = K.from_int(odd ? mpz_class(-dp) : dp) * power(prev, static_cast<unsigned long>(d)) *
                  power(s.critical, static_cast<unsigned long>(d - 1));
        if (j <= oracle_k) {
            const NFElem oracle = discriminant(dyn.iterate(j) - KPoly::constant(x0));
            if (!(oracle == s.value))
                throw oracle_mismatch_error("discriminant recursion gives " + to_text(s.value) + " for f^" +
                                            std::to_string(j) + " - (" + to_text(x0) + "), resultant gives " +
                                            to_text(oracle));
            s.oracle_checked = true;
        }
        prev = s.value;
        trace.steps.push_back(std::move(s));
    }
    return trace;
}

inline json disc_trace_json(const DiscTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back(json{{"k", s.k},
                             {"sign", s.sign},
                             {"d_power", s.d_power},
                             {"previous_exponent", s.previous_exponent},
                             {"critical", element_json(s.critical)},
                             {"critical_exponent", s.critical_exponent},
                             {"value", element_json(s.value)},
                             {"oracle_checked", s.oracle_checked}});
    return json{{"d", t.d}, {"x0", element_json(t.x0)}, {"steps", steps}, {"value", element_json(t.value())}};
}

}  // namespace pcf
