#pragma once

#include <string>

#include "pcf/exactpoly/json.hpp"
#include "pcf/modarith/ffalgo.hpp"
#include "pcf/modarith/fp.hpp"
#include "pcf/modarith/fq.hpp"

namespace pcf {

using FpFactorization = Factorization<FpElem>;
using FqFactorization = Factorization<FqElem>;

/// Factorization of g over F_p into monic irreducibles with multiplicities.
inline FpFactorization fp_factor(const FpPoly& g, std::uint64_t seed = default_seed) { return factor(g, seed); }

/// Factorization of g over the extension field of its coefficients.
inline FqFactorization fq_factor(const FqPoly& g, std::uint64_t seed = default_seed) { return factor(g, seed); }

inline json coefficient_json(const FpElem& x) { return std::to_string(x.v); }

inline json coefficient_json(const FqElem& x) {
    json a = json::array();
    for (auto v : x.r) a.push_back(std::to_string(v));
    return a;
}

template <class F>
json factorization_json(const Factorization<F>& fac, const std::string& var) {
    json out = json::array();
    for (const auto& e : fac.factors) {
        json item = poly_json(e.factor, var);
        item["multiplicity"] = e.multiplicity;
        out.push_back(std::move(item));
    }
    return out;
}

}  // namespace pcf
