#pragma once

#include <set>
#include <tuple>
#include <string>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/factorengine/certificate.hpp"
#include "pcf/factorengine/iterate.hpp"
#include "pcf/factorengine/modular.hpp"
#include "pcf/pcforbits/cyclo.hpp"

namespace pcf {

/// Checks that c0 has exact period n >= 2: a_n = 0 and a_j != 0 for 0 < j < n.
inline void require_periodic(Dynamics& dyn, long n) {
    if (n < 2) throw invalid_argument_error("F factors need period n >= 2");
    for (long j = 1; j < n; ++j)
        if (dyn.a(j).is_zero())
            throw hypothesis_unmet_error("a_" + std::to_string(j) + "(c0) = 0, so c0 does not have exact period " +
                                         std::to_string(n));
    if (!dyn.a(n).is_zero())
        throw hypothesis_unmet_error("a_" + std::to_string(n) + "(c0) != 0, so c0 is not periodic of period " +
                                     std::to_string(n));
}

/**
 * F_(k,i) = (f^(k+1) - a_(i+1)) / (f^k - a_i), with a_n = 0; monic of degree
 * d^k (d - 1).
 */
inline const KPoly& f_factor(Dynamics& dyn, long n, long k, long i) {
    if (k < 0) throw invalid_argument_error("k must be nonnegative");
    if (i < 1 || i > n - 1) throw invalid_argument_error("F index i must satisfy 1 <= i <= n - 1");
    auto& cache = dyn.f_cache();
    if (auto it = cache.find({k, i}); it != cache.end()) return it->second;
    require_periodic(dyn, n);
    dyn.degree_of(k + 1);
    const KPoly num = dyn.iterate(k + 1) - KPoly::constant(dyn.a(i + 1));
    const KPoly den = dyn.iterate(k) - KPoly::constant(dyn.a(i));
    auto [q, r] = divrem(num, den);
    if (!r.is_zero())
        throw not_divisible_error("f^" + std::to_string(k) + " - a_" + std::to_string(i) + " does not divide f^" +
                                  std::to_string(k + 1) + " - a_" + std::to_string(i + 1));
    const auto deg = static_cast<long>(dyn.degree_of(k)) * (dyn.d() - 1);
    if (q.degree() != deg || !q.is_monic())
        throw oracle_mismatch_error("F_(" + std::to_string(k) + "," + std::to_string(i) + ") is not monic of degree " +
                                    std::to_string(deg));
    return cache.emplace(std::make_pair(k, i), std::move(q)).first->second;
}

/// prod over j = 1..d-1 of (f^k - zeta^j a_i), expanded over K(zeta) and pushed down to K.
inline KPoly definitional_f_factor(Dynamics& dyn, long k, long i) {
    using KCyc = Cyclo<NFElem>;
    const NumberField& K = dyn.field();
    const int d = static_cast<int>(dyn.d());
    std::vector<KCyc> fc;
    for (const auto& c : dyn.iterate(k).coeffs()) fc.push_back(KCyc::scalar(d, c));
    const Poly<KCyc> fk(std::move(fc));
    const KCyc ai = KCyc::scalar(d, dyn.a(i));
    Poly<KCyc> prod = Poly<KCyc>::constant(KCyc::scalar(d, K.one()));
    for (int j = 1; j < d; ++j) prod *= fk - Poly<KCyc>::constant(KCyc::zeta_power(d, j, K.zero()) * ai);
    std::vector<NFElem> out;
    for (const auto& c : prod.coeffs()) {
        if (!c.is_scalar()) throw oracle_mismatch_error("definitional F product has a coefficient outside K");
        out.push_back(c.coeffs()[0]);
    }
    return KPoly(std::move(out));
}

/// Throws oracle_mismatch_error unless the quotient and definitional forms of F_(k,i) agree.
inline void definitional_cross_check(Dynamics& dyn, long n, long k, long i) {
    if (!(definitional_f_factor(dyn, k, i) == f_factor(dyn, n, k, i)))
        throw oracle_mismatch_error("F_(" + std::to_string(k) + "," + std::to_string(i) +
                                    ") quotient differs from the product over zeta powers");
}

struct FactorLabel {
    bool linear = false;
    long k = 0;  // F only
    long i = 0;  // F: second index; linear: index of the root a_i

    std::string text() const {
        return linear ? "linear" : "F(" + std::to_string(k) + "," + std::to_string(i) + ")";
    }
    friend bool operator<(const FactorLabel& a, const FactorLabel& b) {
        return std::tie(a.linear, a.k, a.i) < std::tie(b.linear, b.k, b.i);
    }
    friend bool operator==(const FactorLabel& a, const FactorLabel& b) {
        return a.linear == b.linear && a.k == b.k && a.i == b.i;
    }
};

struct LabeledFactor {
    FactorLabel label;
    KPoly poly;
    long exp = 1;
};

struct FactorProduct {
    long d = 0, n = 0, k = 0;
    std::vector<LabeledFactor> factors;

    std::size_t count() const {
        std::set<FactorLabel> s;
        for (const auto& f : factors) s.insert(f.label);
        return s.size();
    }
};

/**
 * f^k = prod_(j<q) prod_(i=1..n-1) F_(k-nj-i, n-i)^(d^j)
 *       * ((x - a_(n-r)) prod_(i=1..r) F_(r-i, n-i))^(d^q),   k = nq + r.
 */
inline FactorProduct prop31_factorization(Dynamics& dyn, long n, long k) {
    if (k < 1) throw invalid_argument_error("k must be at least 1");
    require_periodic(dyn, n);
    dyn.degree_of(k);
    const long d = dyn.d();
    const long q = k / n, r = k % n;
    FactorProduct out{d, n, k, {}};
    long dj = 1;
    for (long j = 0; j < q; ++j, dj *= d)
        for (long i = 1; i <= n - 1; ++i)
            out.factors.push_back({FactorLabel{false, k - n * j - i, n - i}, f_factor(dyn, n, k - n * j - i, n - i), dj});
    const NumberField& K = dyn.field();
    out.factors.push_back({FactorLabel{true, 0, n - r}, KPoly::x(K.one()) - KPoly::constant(dyn.a(n - r)), dj});
    for (long i = 1; i <= r; ++i)
        out.factors.push_back({FactorLabel{false, r - i, n - i}, f_factor(dyn, n, r - i, n - i), dj});
    return out;
}

inline json factor_product_json(const FactorProduct& p) {
    json factors = json::array();
    for (const auto& f : p.factors)
        factors.push_back(json{{"label", f.label.text()}, {"poly", poly_json(f.poly, "x")}, {"exp", f.exp}});
    return json{{"factors", factors}, {"count", p.count()}};
}

namespace detail {

/// Small primes other than d used for modular images.
inline std::vector<std::uint64_t> auxiliary_primes(long d, std::size_t count) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 3; out.size() < count; p += 2)
        if (is_prime(p) && p != static_cast<std::uint64_t>(d)) out.push_back(p);
    return out;
}

}  // namespace detail

/**
 * Checks (a) the expanded product equals f^k, (b) distinct labeled factors are
 * pairwise coprime and (c) there are k - floor(k/n) + 1 of them. Coprimality
 * is witnessed by a ring map Z[c0] -> F_q under which both monic factors have
 * coprime images, so their resultant is nonzero; an exact gcd over K is the
 * fallback.
 */
inline Certificate verify_factorization(Dynamics& dyn, const FactorProduct& prod) {
    const NumberField& K = dyn.field();
    const long d = dyn.d(), n = prod.n, k = prod.k;
    Certificate cert;
    cert.claim = "factorization of f^" + std::to_string(k) + " over K for d=" + std::to_string(d) +
                 ", n=" + std::to_string(n) + " into " + std::to_string(k - k / n + 1) + " coprime factors";
    cert.taint = K.tainted();
    if (cert.taint) cert.diagnostics.push_back("defining polynomial irreducibility assumed by the user");

    // (a) expansion and degree count.
    KPoly expanded = KPoly::constant(K.one());
    long degree_sum = 0;
    for (const auto& f : prod.factors) {
        expanded *= pow(f.poly, static_cast<unsigned long>(f.exp));
        degree_sum += f.exp * f.poly.degree();
    }
    const auto top = static_cast<long>(dyn.degree_of(k));
    if (degree_sum != top || !(expanded == dyn.iterate(k))) {
        cert.result = verdict::refuted;
        cert.add(Witness::note("expansion", "product of labeled factors differs from f^" + std::to_string(k)));
        return cert;
    }
    cert.add(Witness::note("expansion", "product of labeled factors equals f^" + std::to_string(k) +
                                            "; sum of exp*deg = " + std::to_string(top)));

    if (d == 3)
        for (const auto& f : prod.factors)
            if (!f.label.linear && f.label.k <= 1) {
                definitional_cross_check(dyn, n, f.label.k, f.label.i);
                cert.add(Witness::note("definition", f.label.text() +
                                                         " equals the product of f^k - zeta^j a_i over j = 1..d-1"));
            }

    // (c) labels and count.
    const std::size_t expected = static_cast<std::size_t>(k - k / n + 1);
    if (prod.count() != prod.factors.size() || prod.count() != expected) {
        cert.result = verdict::refuted;
        cert.add(Witness::note("count", std::to_string(prod.count()) + " distinct labels among " +
                                            std::to_string(prod.factors.size()) + " factors, expected " +
                                            std::to_string(expected)));
        return cert;
    }
    cert.add(Witness::note("count", std::to_string(expected) + " distinct factors = k - floor(k/n) + 1"));

    // (b) pairwise coprimality.
    const std::size_t m = prod.factors.size();
    std::vector<std::vector<bool>> done(m, std::vector<bool>(m, false));
    std::size_t open = m * (m - 1) / 2;
    for (std::uint64_t p : detail::auxiliary_primes(d, 24)) {
        if (open == 0) break;
        const ModularImage img = modular_image(K, p);
        std::vector<std::optional<FqPoly>> images;
        for (const auto& f : prod.factors) images.push_back(image(img, f.poly));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                if (done[a][b] || !images[a] || !images[b]) continue;
                if (gcd(*images[a], *images[b]).degree() != 0) continue;
                done[a][b] = true;
                --open;
                Witness w;
                w.kind = witness_kind::coprime;
                w.step = "coprime " + prod.factors[a].label.text() + ", " + prod.factors[b].label.text();
                w.identity = "gcd of the images mod (" + std::to_string(p) + ", " + to_text(lift_fp(img.residue), "c") +
                             ") is 1, so the resultant is nonzero";
                w.field = K;
                w.polys = {prod.factors[a].poly, prod.factors[b].poly};
                w.modulus = p;
                w.residue = img.residue;
                cert.add(std::move(w));
            }
    }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            if (done[a][b]) continue;
            const KPoly g = gcd(prod.factors[a].poly, prod.factors[b].poly);
            const std::string names = prod.factors[a].label.text() + ", " + prod.factors[b].label.text();
            if (g.degree() != 0) {
                cert.result = verdict::refuted;
                cert.add(Witness::note("coprime " + names, "common factor " + to_text(g, "x")));
                return cert;
            }
            cert.diagnostics.push_back("coprimality of " + names + " needed an exact gcd over K");
            cert.add(Witness::note("coprime " + names, "exact gcd over K is 1"));
        }
    cert.result = verdict::verified;
    return cert;
}

}  // namespace pcf
