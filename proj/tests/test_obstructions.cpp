#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pcf/obstructions/obstructions.hpp"

using namespace pcf;

namespace {

NumberField field(std::initializer_list<long> g) { return NumberField::create(int_poly(g)); }

KPoly kpoly(const NumberField& k, std::initializer_list<long> c) { return to_k(k, int_poly(c)); }

const Witness* find_step(const Certificate& c, const std::string& step) {
    for (const auto& w : c.witnesses)
        if (w.step == step) return &w;
    return nullptr;
}

bool has_diagnostic(const Certificate& c, const std::string& needle) {
    for (const auto& d : c.diagnostics)
        if (d.find(needle) != std::string::npos) return true;
    return false;
}

NFElem random_element(const NumberField& k, std::mt19937& rng, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> coef(lo, hi);
    std::vector<mpz_class> c;
    for (long i = 0; i < k.degree(); ++i) c.push_back(coef(rng));
    return k.from_poly(IntPoly(c));
}

KPoly random_poly(const NumberField& k, std::mt19937& rng, long deg, bool monic) {
    std::vector<NFElem> c;
    for (long i = 0; i < deg; ++i) c.push_back(random_element(k, rng));
    c.push_back(monic ? k.one() : random_element(k, rng, 1, 4));
    return KPoly(std::move(c));
}

struct AcceptanceField {
    long d;
    IntPoly g;
    std::vector<long> alphas;
};

std::vector<AcceptanceField> acceptance_fields() {
    return {{2, int_poly({0, 1}), {}},
            {2, int_poly({1, 1}), {1}},
            {2, int_poly({2, 1}), {4}},
            {2, int_poly({1, 1, 2, 1}), {2}},
            {2, int_poly({2, 2, 2, 1}), {}},
            {2, int_poly({1, 0, 1}), {}},
            {3, int_poly({1, 0, 1}), {3}},
            {3, int_poly({3, 0, 3, 0, 1}), {}}};
}

}  // namespace

TEST(DiscIterate, Examples) {
    const auto K = field({1, 1});  // c0 = -1
    Dynamics dyn(K, 2);
    const DiscTrace t = disc_iterate(dyn, K.zero(), 2);
    EXPECT_EQ(t.steps[0].value, K.from_int(4));
    EXPECT_EQ(t.steps[0].sign, -1);
    EXPECT_TRUE(t.value().is_zero());  // x^4 - 2x^2 has the double root 0
    EXPECT_EQ(t.steps[1].critical_exponent, 1);

    const auto Ki = field({1, 0, 1});
    Dynamics cub(Ki, 3);
    const DiscTrace u = disc_iterate(cub, Ki.zero(), 1);
    EXPECT_EQ(u.value(), Ki.from_int(27));
    EXPECT_EQ(u.steps[0].critical_exponent, 2);
    EXPECT_EQ(u.steps[0].d_power, 3u);
    EXPECT_TRUE(u.steps[0].oracle_checked);
}

TEST(DiscIterate, CubicCriticalMultiplicity) {
    // disc(x^3 + a) = -4 p^3 - 27 q^2 with p = 0, q = a.
    for (long a : {-5, -2, -1, 1, 3, 7}) {
        const auto K = field({-a, 1});
        Dynamics dyn(K, 3);
        const DiscTrace t = disc_iterate(dyn, K.zero(), 1);
        EXPECT_EQ(t.value(), K.from_int(-27 * a * a)) << a;
        if (a != 1) EXPECT_FALSE(t.value() == K.from_int(-27 * a)) << "exponent 1 would give -27a";
    }
}

TEST(DiscIterate, MatchesResultantOnAcceptanceFields) {
    for (const auto& f : acceptance_fields()) {
        const auto K = NumberField::create(f.g);
        Dynamics dyn(K, f.d);
        std::vector<NFElem> x0s{K.zero()};
        for (long a : f.alphas) x0s.push_back(K.from_int(a));
        for (const auto& x0 : x0s) {
            const DiscTrace t = disc_iterate(dyn, x0, 4);
            for (long k = 1; k <= 4; ++k) {
                const NFElem oracle = discriminant(dyn.iterate(k) - KPoly::constant(x0));
                EXPECT_EQ(t.steps[static_cast<std::size_t>(k - 1)].value, oracle)
                    << "d=" << f.d << " g=" << to_text(f.g, "c") << " x0=" << to_text(x0) << " k=" << k;
            }
        }
    }
}

TEST(DiscIterate, JsonShape) {
    const auto K = field({1, 0, 1});
    Dynamics dyn(K, 3);
    const json j = disc_trace_json(disc_iterate(dyn, K.from_int(3), 2));
    EXPECT_EQ(j["steps"].size(), 2u);
    EXPECT_EQ(j["steps"][1]["critical_exponent"], 2);
    EXPECT_EQ(j["steps"][1]["d_power"], 9);
}

TEST(RelativeNorm, Examples) {
    const auto Q = field({0, 1});
    EXPECT_EQ(relative_norm(kpoly(Q, {-2, 0, 1}), kpoly(Q, {0, 1})), Q.from_int(-2));
    EXPECT_EQ(relative_norm(kpoly(Q, {-2, 0, 1}), kpoly(Q, {3})), Q.from_int(9));

    const auto K = NumberField::create(gleason(2, 3));
    Dynamics dyn(K, 2);
    const NFElem alpha = K.from_int(2);
    const KPoly h = dyn.iterate(1) - KPoly::constant(alpha);
    EXPECT_EQ(relative_norm(h, KPoly::constant(dyn.a(2)) - KPoly::x(K.one())), dyn.a(3) - alpha);

    // Trivial extension.
    const NFElem u = K.parse("c^2 - 3");
    const KPoly P = kpoly(K, {1, -2, 5});
    EXPECT_EQ(relative_norm(KPoly::x(K.one()) - KPoly::constant(u), P), eval(P, u));
}

TEST(RelativeNorm, PropertyEvaluationAndMultiplicativity) {
    std::mt19937 rng(20261016);
    const auto K = field({1, 0, 1});
    std::uniform_int_distribution<long> deg(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const KPoly h = random_poly(K, rng, deg(rng), true);
        const NFElem t = random_element(K, rng);
        // Nm(t - beta) = h(t).
        EXPECT_EQ(relative_norm(h, KPoly::constant(t) - KPoly::x(K.one())), eval(h, t));
        const KPoly P = random_poly(K, rng, deg(rng) - 1, false);
        const KPoly Q = random_poly(K, rng, deg(rng) - 1, false);
        EXPECT_EQ(relative_norm(h, P * Q), relative_norm(h, P) * relative_norm(h, Q));
    }
}

TEST(Nonsquare, Examples) {
    const auto Q = field({0, 1});
    const Certificate a = nonsquare_certificate(Q.from_int(-2));
    EXPECT_TRUE(a.verified());
    ASSERT_NE(find_step(a, "odd valuation"), nullptr);
    EXPECT_EQ(*find_step(a, "odd valuation")->valuation, 1);

    const Certificate b = nonsquare_certificate(Q.from_int(9));
    EXPECT_EQ(b.result, verdict::inconclusive);

    const auto K = NumberField::create(gleason(2, 3));
    Dynamics dyn(K, 2);
    const NFElem a1 = dyn.a(1), a2 = dyn.a(2);
    EXPECT_EQ(abs(nf_norm(a1)), 1);
    EXPECT_EQ(abs(nf_norm(a2)), 1);
    const Certificate c = nonsquare_certificate(K.from_int(8) * (a1 * a1 - K.from_int(2) * a2) * a2, {2});
    EXPECT_TRUE(c.verified());
    EXPECT_EQ(*find_step(c, "odd valuation")->valuation, 3);
    EXPECT_THROW(nonsquare_certificate(K.zero()), invalid_argument_error);
}

TEST(Nonsquare, SquaresAreNeverCertified) {
    std::mt19937 rng(7);
    for (const auto& g : {gleason(2, 3), int_poly({1, 0, 1}), int_poly({3, 0, 3, 0, 1})}) {
        const auto K = NumberField::create(g);
        for (int trial = 0; trial < 15; ++trial) {
            const NFElem gamma = random_element(K, rng);
            if (gamma.is_zero()) continue;
            EXPECT_FALSE(nonsquare_certificate(gamma * gamma, {2, 3}).verified()) << to_text(gamma);
        }
    }
}

TEST(Nonsquare, WitnessPrimeSeesEvenSquareValuations) {
    std::mt19937 rng(11);
    const auto K = NumberField::create(gleason(2, 3));
    const Certificate c = nonsquare_certificate(K.from_int(-2), {2});
    ASSERT_TRUE(c.verified());
    const PrimeAboveD& P = *find_step(c, "odd valuation")->prime;
    for (int trial = 0; trial < 30; ++trial) {
        const NFElem gamma = random_element(K, rng, -20, 20);
        if (gamma.is_zero()) continue;
        EXPECT_EQ(valuation_exact(gamma * gamma, P) % 2, 0);
    }
}

TEST(IdealAudit, Examples) {
    struct Row {
        long d;
        IntPoly g;
        long i;
        long a_emp;
        std::string match;
    };
    const std::vector<Row> rows{{2, int_poly({2, 1}), 1, 1, "n not dividing m-1 branch"},
                                {2, int_poly({1, 0, 1}), 2, 2, "n | m-1 branch"},
                                {3, int_poly({3, 0, 3, 0, 1}), 1, 4, "n not dividing m-1 branch"}};
    for (const auto& r : rows) {
        const auto K = NumberField::create(r.g);
        Dynamics dyn(K, r.d);
        const ExactType ty = exact_type(K, r.d, 10);
        const IdealAudit a = ideal_power_audit(dyn, ty, r.i);
        ASSERT_TRUE(a.a_emp) << to_text(r.g, "c");
        EXPECT_EQ(*a.a_emp, r.a_emp);
        EXPECT_EQ(a.match, r.match);
        EXPECT_EQ(audit_condition_agrees(a), std::optional<bool>(false));
        // |N(a_i)|^A = d^deg g.
        mpz_class lhs, rhs;
        mpz_pow_ui(lhs.get_mpz_t(), mpz_class(abs(a.norm.get_num())).get_mpz_t(), static_cast<unsigned long>(*a.a_emp));
        mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(r.d), static_cast<unsigned long>(K.degree()));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(IdealAudit, PrintedBranchValues) {
    const auto K = field({3, 0, 3, 0, 1});
    Dynamics dyn(K, 3);
    const IdealAudit a = ideal_power_audit(dyn, exact_type(K, 3, 10), 1);
    EXPECT_EQ(a.printed_divides, 6);
    EXPECT_EQ(a.printed_not_divides, 4);
    EXPECT_TRUE(a.condition_divides);
    EXPECT_EQ(ideal_audit_json(a)["a_emp"], 4);
}

TEST(IdealAudit, UnitIndicesAndGleasonUnit) {
    const auto K = field({1, 0, 1});  // c0 = i, type (2,2)
    Dynamics dyn(K, 2);
    const ExactType ty = exact_type(K, 2, 10);
    for (long i : {1, 3, 5}) {
        const IdealAudit a = ideal_power_audit(dyn, ty, i);
        EXPECT_FALSE(a.multiple_of_n);
        EXPECT_EQ(a.unit, std::optional<bool>(true)) << i;
    }
    const auto G = NumberField::create(gleason(2, 3));
    EXPECT_EQ(nf_norm(Dynamics(G, 2).a(1)), -1);
    Dynamics gd(G, 2);
    EXPECT_THROW(ideal_power_audit(gd, exact_type(G, 2, 10), 1), hypothesis_unmet_error);
}

TEST(Nonabelian, PeriodicCase1) {
    const auto K = NumberField::create(gleason(2, 3));
    Dynamics dyn(K, 2);
    const Certificate c = nonabelian_certificate(nonabelian_case::periodic_1, dyn, exact_type(K, 2, 10), K.from_int(2));
    EXPECT_TRUE(c.verified());
    EXPECT_EQ(*find_step(c, "hypothesis v_P(alpha) = 1")->valuation, 1);
    const Witness* b = find_step(c, "b not a square: odd valuation");
    ASSERT_NE(b, nullptr);
    EXPECT_EQ(*b->valuation, 1);
    EXPECT_EQ(b->elements[0], dyn.a(3) - K.from_int(2));
    EXPECT_NE(find_step(c, "b(a^2 - 4b) not a square: odd valuation"), nullptr);
    EXPECT_TRUE(has_diagnostic(c, paper_route_mismatch));
    EXPECT_TRUE(replay(c).ok());
}

TEST(Nonabelian, PeriodicCase2) {
    const auto K = NumberField::create(gleason(2, 3));
    Dynamics dyn(K, 2);
    const Certificate c = nonabelian_certificate(nonabelian_case::periodic_2, dyn, exact_type(K, 2, 10), K.zero());
    EXPECT_TRUE(c.verified());
    const Witness* w = find_step(c, "b(a^2 - 4b) not a square: odd valuation");
    ASSERT_NE(w, nullptr);
    EXPECT_EQ(*w->valuation, 3);
    const NFElem a1 = dyn.a(1), a2 = dyn.a(2);
    EXPECT_EQ(w->elements[0], K.from_int(8) * (a1 * a1 - K.from_int(2) * a2) * a2);
    EXPECT_TRUE(c.diagnostics.empty());
    EXPECT_TRUE(replay(c).ok());
}

TEST(Nonabelian, PeriodicCase3) {
    const auto K = field({1, 0, 1});
    Dynamics dyn(K, 3);
    const Certificate c = nonabelian_certificate(nonabelian_case::periodic_3, dyn, exact_type(K, 3, 10), K.from_int(3));
    EXPECT_TRUE(c.verified());
    const Witness* w = find_step(c, "ratio not a square: odd valuation");
    ASSERT_NE(w, nullptr);
    EXPECT_EQ(*w->valuation, 27);
    EXPECT_EQ(w->prime->f, 2);  // 3 is inert in Q(i)
    EXPECT_TRUE(replay(c).ok());
}

TEST(Nonabelian, DiscriminantParityRoutesReportMismatch) {
    const auto K = field({1, 0, 1});
    Dynamics dyn(K, 3);
    const Certificate c4 = nonabelian_certificate(nonabelian_case::periodic_4, dyn, exact_type(K, 3, 10), K.zero());
    EXPECT_EQ(c4.result, verdict::inconclusive);
    EXPECT_TRUE(has_diagnostic(c4, paper_route_mismatch));
    EXPECT_NE(find_step(c4, "square in L"), nullptr);
    EXPECT_TRUE(replay(c4).ok());

    const auto Q4 = field({3, 0, 3, 0, 1});
    Dynamics pre(Q4, 3);
    const Certificate c = nonabelian_certificate(nonabelian_case::preperiodic_2, pre, exact_type(Q4, 3, 10),
                                                 Q4.parse("c^2"));
    EXPECT_EQ(c.result, verdict::inconclusive);
    EXPECT_TRUE(has_diagnostic(c, paper_route_mismatch));
    const Witness* v = find_step(c, "v_P(disc(f^3 - alpha))");
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(*v->valuation % 2, 0);
    EXPECT_TRUE(replay(c).ok());
}

TEST(Nonabelian, PreperiodicCase1UnsupportedPrime) {
    const auto K = NumberField::create(misiurewicz(2, 2, 3).norm_form);
    Dynamics dyn(K, 2);
    const ExactType ty = exact_type(K, 2, 10);
    EXPECT_EQ(ty.describe(), "Preperiodic(2, 3)");
    EXPECT_THROW(nonabelian_certificate(nonabelian_case::preperiodic_1, dyn, ty, K.from_int(4)), unsupported_error);
}

TEST(Nonabelian, HypothesesCheckedFirst) {
    const auto K = NumberField::create(gleason(2, 3));
    Dynamics dyn(K, 2);
    const ExactType ty = exact_type(K, 2, 10);
    EXPECT_THROW(nonabelian_certificate(nonabelian_case::periodic_1, dyn, ty, K.from_int(4)), hypothesis_unmet_error);
    EXPECT_THROW(nonabelian_certificate(nonabelian_case::periodic_2, dyn, ty, K.from_int(2)), hypothesis_unmet_error);
    EXPECT_THROW(nonabelian_certificate(nonabelian_case::periodic_3, dyn, ty, K.from_int(2)), hypothesis_unmet_error);
    EXPECT_THROW(nonabelian_certificate(nonabelian_case::preperiodic_1, dyn, ty, K.from_int(4)), hypothesis_unmet_error);

    ExactType wrong = ty;
    wrong.n = 4;
    EXPECT_THROW(nonabelian_certificate(nonabelian_case::periodic_1, dyn, wrong, K.from_int(2)), hypothesis_unmet_error);

    const auto C1 = field({1, 1});  // period 2
    Dynamics d2(C1, 2);
    EXPECT_THROW(nonabelian_certificate(nonabelian_case::periodic_1, d2, exact_type(C1, 2, 10), C1.from_int(2)),
                 hypothesis_unmet_error);
}

TEST(Nonabelian, CaseNames) {
    for (auto c : {nonabelian_case::periodic_1, nonabelian_case::periodic_4, nonabelian_case::preperiodic_2})
        EXPECT_EQ(parse_nonabelian_case(to_string(c)), c);
    EXPECT_FALSE(parse_nonabelian_case("periodic-5"));
}

TEST(Replay, DetectsTamperedWitnesses) {
    const auto K = NumberField::create(gleason(2, 3));
    Dynamics dyn(K, 2);
    const Certificate c = nonabelian_certificate(nonabelian_case::periodic_1, dyn, exact_type(K, 2, 10), K.from_int(2));
    const ReplayReport ok = replay(c);
    EXPECT_TRUE(ok.ok());
    EXPECT_GT(ok.checked, 5u);

    for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
        const witness_kind kind = c.witnesses[i].kind;
        if (kind == witness_kind::note) continue;
        Certificate bad = c;
        Witness& w = bad.witnesses[i];
        if (kind == witness_kind::valuation) *w.valuation += 1;
        else if (kind == witness_kind::unit) w.elements[0] = K.from_int(2);
        else if (!w.elements.empty()) w.elements[0] = w.elements[0] + K.from_int(2);
        else continue;
        EXPECT_FALSE(replay(bad).ok()) << w.step;
    }
}
