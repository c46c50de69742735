#pragma once

#include <string>
#include <vector>

#include "pcf/factorengine/certificates.hpp"
#include "pcf/obstructions/disc.hpp"
#include "pcf/obstructions/norms.hpp"

namespace pcf {

struct ReplayReport {
    std::size_t checked = 0;
    std::size_t notes = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

namespace detail {

inline bool replay_shape(const Witness& w) {
    Dynamics dyn(w.field, w.d);
    const KPoly& f = dyn.iterate(w.k);
    const auto top = static_cast<long>(dyn.degree_of(w.k));
    if (f.degree() != top || !f.is_monic()) return false;
    for (long j = 1; j < top; ++j) {
        const NFElem& c = f[static_cast<std::size_t>(j)];
        if (c.is_zero()) continue;
        if (j < w.d || !c.is_integral_rep() ||
            !mpz_divisible_ui_p(content(c.num()).get_mpz_t(), static_cast<unsigned long>(w.d)))
            return false;
    }
    return f.coeff_or_zero(0, w.field.zero()) == w.elements.at(0);
}

inline bool replay_one(const Witness& w) {
    switch (w.kind) {
        case witness_kind::note: return true;
        case witness_kind::valuation:
            return w.prime && w.valuation && valuation_exact(w.elements.at(0), *w.prime) == *w.valuation;
        case witness_kind::unit: return is_unit(w.elements.at(0));
        case witness_kind::orbit: return Dynamics(w.field, w.d).a(w.k) == w.elements.at(0);
        case witness_kind::shape: return replay_shape(w);
        case witness_kind::eisenstein: {
            if (!w.prime) return false;
            Dynamics dyn(w.field, w.d);
            return eisenstein_certificate(dyn.iterate(w.k) - KPoly::constant(w.elements.at(0)), *w.prime).verified();
        }
        case witness_kind::unramified:
            return !mpz_divisible_ui_p(w.field.disc().get_mpz_t(), static_cast<unsigned long>(w.d));
        case witness_kind::coprime:
        case witness_kind::irreducible_mod: {
            const ModularImage img{w.modulus, w.residue, FqContext::create(w.residue)};
            const auto a = image(img, w.polys.at(0));
            if (!a || a->degree() != w.polys[0].degree()) return false;
            if (w.kind == witness_kind::irreducible_mod) return is_irreducible(*a);
            const auto b = image(img, w.polys.at(1));
            return b && gcd(*a, *b).degree() == 0;
        }
        case witness_kind::norm: return relative_norm(w.polys.at(0), w.polys.at(1)) == w.elements.at(0);
        case witness_kind::discriminant: {
            Dynamics dyn(w.field, w.d);
            return disc_iterate(dyn, w.elements.at(0), w.k).value() == w.elements.at(1);
        }
        case witness_kind::value: {
            Dynamics dyn(w.field, w.d);
            return eval(dyn.iterate(w.k), w.elements.at(0)) == w.elements.at(1);
        }
    }
    return false;
}

}  // namespace detail

/// Recomputes every typed witness of a certificate from its recorded data alone.
inline ReplayReport replay(const Certificate& cert) {
    ReplayReport r;
    for (const auto& w : cert.witnesses) {
        if (w.kind == witness_kind::note) {
            ++r.notes;
            continue;
        }
        ++r.checked;
        bool ok = false;
        try {
            ok = detail::replay_one(w);
        } catch (const std::exception& e) {
            r.failures.push_back(w.step + ": " + e.what());
            continue;
        }
        if (!ok) r.failures.push_back(w.step + ": " + w.identity);
    }
    return r;
}

}  // namespace pcf
