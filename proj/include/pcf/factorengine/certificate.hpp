#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcf/exactpoly/json.hpp"
#include "pcf/modarith/factor.hpp"
#include "pcf/numberfield/numberfield.hpp"

namespace pcf {

enum class verdict { verified, refuted, inconclusive, unsupported };

inline const char* to_string(verdict v) {
    switch (v) {
        case verdict::verified: return "Verified";
        case verdict::refuted: return "Refuted";
        case verdict::inconclusive: return "Inconclusive";
        case verdict::unsupported: return "Unsupported";
    }
    return "Unknown";
}

/**
 * One step of a witness trail. Every kind other than `note` carries enough
 * data to be recomputed by a replay checker:
 *
 *   valuation        v_P(elements[0]) == valuation
 *   unit             elements[0] is an algebraic unit
 *   orbit            a_k(c0) == elements[0] for f = x^d + c0
 *   shape            f^k = x^(d^k) + d x^d F(x) + elements[0]
 *   eisenstein       f^k - elements[0] is Eisenstein at prime
 *   unramified       d does not divide disc(g)
 *   coprime          images of polys[0], polys[1] in F_q[x] are coprime
 *   irreducible_mod  image of polys[0] in F_q[x] is irreducible of the same degree
 *   norm             Res_x(polys[0], polys[1]) == elements[0]
 *   discriminant     disc(f^k - elements[0]) == elements[1]
 *   value            f^k(elements[0]) == elements[1]
 */
enum class witness_kind {
    note, valuation, unit, orbit, shape, eisenstein, unramified, coprime, irreducible_mod, norm, discriminant, value
};

struct Witness {
    witness_kind kind = witness_kind::note;
    std::string step;
    std::string identity;
    NumberField field;
    std::optional<PrimeAboveD> prime;
    std::optional<long> valuation;
    std::vector<NFElem> elements;
    std::vector<KPoly> polys;
    long d = 0;
    long k = 0;
    // Residue field F_p[c]/(residue) for the modular kinds.
    std::uint64_t modulus = 0;
    FpPoly residue;

    static Witness note(std::string step, std::string identity) {
        Witness w;
        w.step = std::move(step);
        w.identity = std::move(identity);
        return w;
    }
};

struct Certificate {
    std::string claim;
    verdict result = verdict::inconclusive;
    std::vector<Witness> witnesses;
    std::vector<std::string> diagnostics;
    bool taint = false;

    bool verified() const { return result == verdict::verified; }
    void add(Witness w) { witnesses.push_back(std::move(w)); }
};

inline json witness_json(const Witness& w) {
    json j{{"step", w.step}};
    if (w.prime) {
        j["prime"] = prime_json(*w.prime);
    } else if (w.modulus != 0) {
        j["prime"] = json{{"p", std::to_string(w.modulus)}, {"residue", poly_json(w.residue, "c")}};
    } else {
        j["prime"] = nullptr;
    }
    if (w.valuation) j["valuation"] = *w.valuation;
    else j["valuation"] = nullptr;
    j["identity"] = w.identity;
    return j;
}

inline json certificate_json(const Certificate& c) {
    json witnesses = json::array();
    for (const auto& w : c.witnesses) witnesses.push_back(witness_json(w));
    return json{{"claim", c.claim},
                {"verdict", to_string(c.result)},
                {"witnesses", witnesses},
                {"diagnostics", c.diagnostics},
                {"taint", c.taint}};
}

}  // namespace pcf
