#pragma once

#include <string>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/numberfield/field.hpp"
#include "pcf/pcforbits/orbit.hpp"

namespace pcf {

/// Orbit values a_0 = 0, a_1 = c0, ..., a_count in K.
inline std::vector<NFElem> orbit_values(const NumberField& k, long d, long count) {
    std::vector<NFElem> a{k.zero()};
    const NFElem c0 = k.gen();
    for (long i = 1; i <= count; ++i) a.push_back(power(a.back(), static_cast<unsigned long>(d)) + c0);
    return a;
}

struct ExactType {
    enum class kind { periodic, preperiodic };
    kind k = kind::periodic;
    long m = 0;  // preperiod, 0 for periodic
    long n = 1;
    std::vector<NFElem> orbit;  // a_0 .. a_(m+n)

    bool periodic() const { return k == kind::periodic; }
    std::string describe() const {
        return periodic() ? "Periodic(" + std::to_string(n) + ")"
                          : "Preperiodic(" + std::to_string(m) + ", " + std::to_string(n) + ")";
    }
};

/**
 * Finds the first repetition a_t = a_s (s < t) in the critical orbit of
 * x^d + c0 with t <= bound; s = 0 means periodic of period t.
 */
inline ExactType exact_type(const NumberField& k, long d, long bound) {
    require_prime_degree(d);
    if (bound < 1) throw invalid_argument_error("bound must be positive");
    std::vector<NFElem> a{k.zero()};
    const NFElem c0 = k.gen();
    for (long t = 1; t <= bound; ++t) {
        a.push_back(power(a.back(), static_cast<unsigned long>(d)) + c0);
        for (long s = 0; s < t; ++s) {
            if (!(a[static_cast<std::size_t>(s)] == a[static_cast<std::size_t>(t)])) continue;
            ExactType ty;
            ty.k = s == 0 ? ExactType::kind::periodic : ExactType::kind::preperiodic;
            ty.m = s;
            ty.n = t - s;
            ty.orbit = a;
            // Re-check the defining conditions on the witness values.
            if (ty.periodic()) {
                for (long i = 1; i < ty.n; ++i)
                    if (a[static_cast<std::size_t>(i)].is_zero())
                        throw oracle_mismatch_error("periodic witness has an earlier zero");
            } else {
                if (ty.m < 2) throw oracle_mismatch_error("preperiodic witness with m < 2");
                if (a[static_cast<std::size_t>(ty.m - 1 + ty.n)] == a[static_cast<std::size_t>(ty.m - 1)])
                    throw oracle_mismatch_error("preperiod is not minimal");
            }
            return ty;
        }
    }
    throw bound_exceeded_error("no repetition in the critical orbit within " + std::to_string(bound) + " steps");
}

inline json exact_type_json(const ExactType& t) {
    json orbit = json::array();
    for (const auto& x : t.orbit) orbit.push_back(element_json(x));
    json j{{"kind", t.periodic() ? "Periodic" : "Preperiodic"}};
    if (!t.periodic()) j["m"] = t.m;
    j["n"] = t.n;
    j["orbit"] = orbit;
    return j;
}

}  // namespace pcf
