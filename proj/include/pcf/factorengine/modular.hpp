#pragma once

#include <cstdint>
#include <optional>

#include "pcf/modarith/factor.hpp"
#include "pcf/modarith/fq.hpp"
#include "pcf/numberfield/numberfield.hpp"

namespace pcf {

/// The ring map Z[c0] -> F_p[c]/(G) for a monic irreducible factor G of g mod p.
struct ModularImage {
    std::uint64_t p = 0;
    FpPoly residue;
    FqHandle ctx;
};

/// Uses the lowest-degree factor of g mod p (first in canonical order).
inline ModularImage modular_image(const NumberField& k, std::uint64_t p) {
    auto fac = fp_factor(to_fp(k.g(), p));
    const FpPoly& G = fac.factors.front().factor;
    return ModularImage{p, G, FqContext::create(G)};
}

/// Image of a polynomial over K, or nullopt when p divides a denominator.
inline std::optional<FqPoly> image(const ModularImage& m, const KPoly& h) {
    std::vector<FqElem> c;
    for (const auto& x : h.coeffs()) {
        if (mpz_divisible_ui_p(x.den().get_mpz_t(), m.p)) return std::nullopt;
        c.push_back(to_residue(m.ctx, x));
    }
    return FqPoly(std::move(c));
}

}  // namespace pcf
