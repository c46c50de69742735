#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/factorengine/iterate.hpp"

namespace pcf {

/**
 * Ideal-power relation for a preperiodic parameter of type (m, n). For n | i
 * the empirical exponent is the least A with A v_P(a_i) = v_P(d) at every
 * prime P above d and |N(a_i)|^A = d^(deg g); it is compared with both
 * printed branch values d^(m-1) (d-1) and (d^(m-1) - 1)(d-1). For n not
 * dividing i, a_i must be a unit.
 */
struct IdealAudit {
    long d = 0, m = 0, n = 0, i = 0;
    bool multiple_of_n = false;
    mpq_class norm;
    // n | i
    std::vector<std::pair<long, long>> valuations;  // (v_P(a_i), v_P(d)) per prime above d
    std::optional<long> a_emp;
    mpz_class printed_divides;      // d^(m-1) (d-1), printed for n | m-1
    mpz_class printed_not_divides;  // (d^(m-1) - 1)(d-1), printed for n not dividing m-1
    bool condition_divides = false; // whether n | m-1 holds
    std::string match;
    // n not dividing i
    std::optional<bool> unit;
};

inline IdealAudit ideal_power_audit(Dynamics& dyn, const ExactType& type, long i, unsigned T = default_precision) {
    if (type.periodic()) throw hypothesis_unmet_error("ideal-power audit needs a preperiodic parameter");
    if (i < 1) throw invalid_argument_error("audit index must be positive");
    const NumberField& K = dyn.field();
    IdealAudit out;
    out.d = dyn.d();
    out.m = type.m;
    out.n = type.n;
    out.i = i;
    out.multiple_of_n = i % type.n == 0;
    const NFElem& ai = dyn.a(i);
    if (ai.is_zero()) throw oracle_mismatch_error("a_" + std::to_string(i) + " vanishes at a preperiodic parameter");
    out.norm = nf_norm(ai);

    mpz_class dm1;
    mpz_ui_pow_ui(dm1.get_mpz_t(), static_cast<unsigned long>(out.d), static_cast<unsigned long>(type.m - 1));
    out.printed_divides = dm1 * (out.d - 1);
    out.printed_not_divides = (dm1 - 1) * (out.d - 1);
    out.condition_divides = (type.m - 1) % type.n == 0;

    if (!out.multiple_of_n) {
        out.unit = is_unit(ai);
        out.match = "not applicable";
        return out;
    }

    std::optional<long> A;
    bool consistent = true;
    for (const auto& P : primes_above(K, static_cast<std::uint64_t>(out.d), T)) {
        const long va = valuation_exact(ai, P);
        const long vd = P.e;
        out.valuations.emplace_back(va, vd);
        if (va <= 0 || vd % va != 0 || (A && *A != vd / va)) {
            consistent = false;
            continue;
        }
        A = vd / va;
    }
    if (consistent && A) {
        mpz_class lhs, rhs;
        mpz_pow_ui(lhs.get_mpz_t(), mpz_class(abs(out.norm.get_num())).get_mpz_t(), static_cast<unsigned long>(*A));
        mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(out.d), static_cast<unsigned long>(K.degree()));
        if (out.norm.get_den() == 1 && lhs == rhs) out.a_emp = A;
    }

    if (!out.a_emp) {
        out.match = "no exponent";
    } else {
        const bool div = out.printed_divides == *out.a_emp, ndiv = out.printed_not_divides == *out.a_emp;
        if (div && ndiv) out.match = "both";
        else if (div) out.match = "n | m-1 branch";
        else if (ndiv) out.match = "n not dividing m-1 branch";
        else out.match = "neither";
    }
    return out;
}

/// True when the branch matching A_emp is the one whose printed condition holds.
inline std::optional<bool> audit_condition_agrees(const IdealAudit& a) {
    if (a.match == "n | m-1 branch") return a.condition_divides;
    if (a.match == "n not dividing m-1 branch") return !a.condition_divides;
    return std::nullopt;
}

inline json ideal_audit_json(const IdealAudit& a) {
    json j{{"d", a.d}, {"m", a.m}, {"n", a.n}, {"i", a.i}, {"norm", a.norm.get_str()}};
    if (!a.multiple_of_n) {
        j["unit"] = a.unit.value_or(false);
        return j;
    }
    json vals = json::array();
    for (const auto& [va, vd] : a.valuations) vals.push_back(json{{"v_a", va}, {"v_d", vd}});
    j["valuations"] = vals;
    j["a_emp"] = a.a_emp ? json(*a.a_emp) : json(nullptr);
    j["printed"] = json{{"n_divides_m_minus_1", a.printed_divides.get_str()},
                        {"n_not_dividing_m_minus_1", a.printed_not_divides.get_str()}};
    j["condition"] = a.condition_divides ? "n | m-1" : "n not dividing m-1";
    j["match"] = a.match;
    const auto agrees = audit_condition_agrees(a);
    j["condition_agrees"] = agrees ? json(*agrees) : json(nullptr);
    return j;
}

}  // namespace pcf
