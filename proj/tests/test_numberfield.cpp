#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pcf/numberfield/numberfield.hpp"

using namespace pcf;

namespace {

const IntPoly cubic = int_poly({1, 1, 2, 1});          // c^3 + 2c^2 + c + 1
const IntPoly quartic = int_poly({3, 0, 3, 0, 1});     // c^4 + 3c^2 + 3
const IntPoly gauss = int_poly({1, 0, 1});             // c^2 + 1
const IntPoly sextic = int_poly({1, 0, 1, 2, 2, 2, 1});

NFElem random_elem(const NumberField& k, std::mt19937_64& rng, long bound, bool integral = true) {
    std::uniform_int_distribution<long> coef(-bound, bound);
    std::vector<mpz_class> c(static_cast<std::size_t>(k.degree()));
    for (auto& v : c) v = coef(rng);
    mpz_class den = 1;
    if (!integral) den = std::uniform_int_distribution<long>(1, 12)(rng);
    return NFElem(k, IntPoly(std::move(c)), den);
}

mpq_class oracle_norm(const NFElem& x) {
    return oracle::determinant(oracle::multiplication_matrix(x.field().g().coeffs(), x.num().coeffs(), x.den()));
}

mpq_class oracle_trace(const NFElem& x) {
    auto m = oracle::multiplication_matrix(x.field().g().coeffs(), x.num().coeffs(), x.den());
    mpq_class t = 0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

}  // namespace

TEST(NumberFieldCreate, LinearField) {
    auto k = NumberField::create(int_poly({1, 1}));
    EXPECT_EQ(k.degree(), 1);
    EXPECT_EQ(k.status(), irreducibility_status::certified);
    EXPECT_EQ(k.gen(), k.from_int(-1));
}

TEST(NumberFieldCreate, CubicGleasonField) {
    auto k = NumberField::create(cubic);
    EXPECT_EQ(k.degree(), 3);
    EXPECT_EQ(k.status(), irreducibility_status::certified);
    EXPECT_EQ(k.certificate().method, "irreducible-mod-p");
    EXPECT_EQ(k.certificate().patterns.at(0).p, 2u);
    EXPECT_EQ(k.disc(), discriminant(cubic));
}

TEST(NumberFieldCreate, ReducibleRejected) {
    EXPECT_THROW(NumberField::create(int_poly({-1, 0, 1})), reducible_error);
    EXPECT_THROW(NumberField::create(int_poly({1, 2})), invalid_argument_error);
    auto tainted = NumberField::assume_irreducible(int_poly({-1, 0, 1}));
    EXPECT_TRUE(tainted.tainted());
}

TEST(Irreducibility, Examples) {
    auto c1 = irreducibility_certificate(cubic);
    EXPECT_EQ(c1.verdict, irreducibility_verdict::certified);
    auto c2 = irreducibility_certificate(gauss);
    EXPECT_EQ(c2.verdict, irreducibility_verdict::certified);
    EXPECT_EQ(c2.patterns.at(0).p, 3u);
    auto c3 = irreducibility_certificate(int_poly({2, 3, 1}));
    EXPECT_EQ(c3.verdict, irreducibility_verdict::refuted);
    EXPECT_EQ(c3.method, "rational-root");
    EXPECT_EQ(*c3.factor, int_poly({1, 1}));
}

TEST(Irreducibility, RepeatedFactor) {
    auto c = irreducibility_certificate(sextic * int_poly({0, 0, 0}) + int_poly({1, 2, 1}));
    EXPECT_EQ(c.verdict, irreducibility_verdict::refuted);
    EXPECT_EQ(c.method, "repeated-factor");
}

TEST(Irreducibility, ReducibleModEveryPrime) {
    // c^4 + 1 is irreducible but splits modulo every prime.
    auto c = irreducibility_certificate(int_poly({1, 0, 0, 0, 1}));
    EXPECT_EQ(c.verdict, irreducibility_verdict::certified);
    EXPECT_EQ(c.method, "factor-search-exhausted");
    // A product of two quadratics without rational roots is found by the search.
    const IntPoly prod = int_poly({1, 1, 1}) * int_poly({2, 0, 1});
    auto r = irreducibility_certificate(prod);
    EXPECT_EQ(r.verdict, irreducibility_verdict::refuted);
    ASSERT_TRUE(r.factor.has_value());
    EXPECT_TRUE(divrem(prod, *r.factor).second.is_zero());
}

TEST(Irreducibility, MisiurewiczNormForms) {
    for (const IntPoly& g : {int_poly({2, 2, 2, 1}), int_poly({1, -1, 1, 1}), sextic, quartic})
        EXPECT_EQ(irreducibility_certificate(g).verdict, irreducibility_verdict::certified) << to_text(g, "c");
}

TEST(Irreducibility, RandomProductsNeverCertified) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> coef(-6, 6);
    for (int trial = 0; trial < 30; ++trial) {
        auto monic_random = [&](int deg) {
            std::vector<mpz_class> c(static_cast<std::size_t>(deg));
            for (auto& v : c) v = coef(rng);
            c.push_back(1);
            return IntPoly(std::move(c));
        };
        IntPoly g = monic_random(1 + trial % 3) * monic_random(2 + trial % 2);
        auto cert = irreducibility_certificate(g);
        EXPECT_EQ(cert.verdict, irreducibility_verdict::refuted) << to_text(g, "c");
        if (cert.factor) {
            EXPECT_GT(cert.factor->degree(), 0);
            EXPECT_LT(cert.factor->degree(), g.degree());
        }
    }
}

TEST(NormTrace, Examples) {
    auto k3 = NumberField::create(cubic);
    EXPECT_EQ(nf_norm(k3.gen()), -1);
    EXPECT_TRUE(is_unit(k3.gen()));
    auto k4 = NumberField::create(quartic);
    EXPECT_EQ(nf_norm(k4.gen()), 3);
    EXPECT_FALSE(is_unit(k4.gen()));
    auto ki = NumberField::create(gauss);
    NFElem x = ki.gen() * ki.gen() + ki.one();
    EXPECT_TRUE(x.is_zero());
    EXPECT_EQ(nf_norm(x), 0);
    EXPECT_THROW(is_unit(ki.from_rat(mpq_class(1, 2))), not_integral_error);
}

TEST(NormTrace, AgreeWithMultiplicationMatrix) {
    std::mt19937_64 rng(43);
    for (const IntPoly& g : {cubic, quartic, gauss, sextic, int_poly({5, 1})}) {
        auto k = NumberField::create(g);
        for (int trial = 0; trial < 15; ++trial) {
            NFElem x = random_elem(k, rng, 9, trial % 3 != 0);
            EXPECT_EQ(nf_norm(x), oracle_norm(x));
            EXPECT_EQ(nf_trace(x), oracle_trace(x));
        }
    }
}

TEST(Arithmetic, FieldAxiomsAndInverse) {
    std::mt19937_64 rng(47);
    for (const IntPoly& g : {cubic, quartic, gauss}) {
        auto k = NumberField::create(g);
        for (int trial = 0; trial < 20; ++trial) {
            NFElem a = random_elem(k, rng, 7, false), b = random_elem(k, rng, 7), c = random_elem(k, rng, 7);
            EXPECT_EQ((a + b) * c, a * c + b * c);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a - a, k.zero());
            if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), k.one());
            EXPECT_EQ(nf_norm(a * b), nf_norm(a) * nf_norm(b));
        }
    }
    auto k = NumberField::create(cubic);
    EXPECT_EQ(eval(to_k(k, cubic), k.gen()), k.zero());
}

TEST(Arithmetic, ParseLiterals) {
    auto k = NumberField::create(quartic);
    EXPECT_EQ(k.parse("c^2"), k.gen() * k.gen());
    EXPECT_EQ(k.parse("3/2"), k.from_rat(mpq_class(3, 2)));
    EXPECT_EQ(k.parse("c^4"), k.parse("-3c^2 - 3"));
}

TEST(Primes, Examples) {
    auto k3 = NumberField::create(cubic);
    auto P3 = primes_above(k3, 2);
    ASSERT_EQ(P3.size(), 1u);
    EXPECT_EQ(P3[0].backend, prime_backend::unramified);
    EXPECT_EQ(P3[0].f, 3);

    auto k4 = NumberField::create(quartic);
    auto P4 = primes_above(k4, 3);
    ASSERT_EQ(P4.size(), 1u);
    EXPECT_EQ(P4[0].backend, prime_backend::eisenstein);
    EXPECT_EQ(P4[0].e, 4);

    auto k6 = NumberField::create(sextic);
    EXPECT_THROW(primes_above(k6, 2), unsupported_error);
}

TEST(Primes, ShiftedEisenstein) {
    // c^2 + 1 at 2: (c + 1)^2 + 1 = c^2 + 2c + 2.
    auto ki = NumberField::create(gauss);
    auto P = primes_above(ki, 2);
    ASSERT_EQ(P.size(), 1u);
    EXPECT_EQ(P[0].backend, prime_backend::eisenstein);
    EXPECT_EQ(P[0].shift, 1);
    EXPECT_EQ(valuation(ki.gen() - ki.one(), P[0]), Valuation::finite(1));
    EXPECT_EQ(valuation(ki.from_int(2), P[0]), Valuation::finite(2));
}

TEST(Primes, ResidueDegreesSumToFieldDegree) {
    for (const IntPoly& g : {cubic, quartic, gauss, int_poly({1, -1, 1, 1}), int_poly({2, 2, 2, 1})}) {
        auto k = NumberField::create(g);
        for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
            std::vector<PrimeAboveD> ps;
            try {
                ps = primes_above(k, p);
            } catch (const unsupported_error&) {
                continue;
            }
            int total = 0;
            for (const auto& P : ps) total += P.e * P.f;
            EXPECT_EQ(total, k.degree());
        }
    }
}

TEST(Valuation, Examples) {
    auto k3 = NumberField::create(cubic);
    auto P2 = primes_above(k3, 2)[0];
    EXPECT_EQ(valuation(k3.from_int(2), P2), Valuation::finite(1));

    auto ki = NumberField::create(gauss);
    auto P3 = primes_above(ki, 3)[0];
    EXPECT_EQ(P3.f, 2);
    EXPECT_EQ(valuation(ki.gen() - ki.from_int(3), P3), Valuation::finite(0));
    EXPECT_EQ(nf_norm(ki.gen() - ki.from_int(3)), 10);

    auto k4 = NumberField::create(quartic);
    auto P = primes_above(k4, 3)[0];
    EXPECT_EQ(valuation(k4.gen(), P), Valuation::finite(1));
    EXPECT_EQ(valuation(k4.from_int(3), P), Valuation::finite(4));
    EXPECT_EQ(valuation(k4.zero(), P), Valuation::infinite());
    EXPECT_EQ(valuation(k4.from_rat(mpq_class(1, 3)), P), Valuation::finite(-4));
}

TEST(Valuation, PrecisionLimitAndExactRecovery) {
    auto ki = NumberField::create(gauss);
    auto P5 = primes_above(ki, 5, 2);
    ASSERT_EQ(P5.size(), 2u);
    // N(c - 7) = 50, so (c - 7)^3 has valuation 6 at the prime where c = 7 mod 25, beyond T = 2.
    for (const auto& P : P5) {
        NFElem root = ki.gen() - ki.from_int(P.factor[0] == 18 ? 7 : 18);
        NFElem x = root * root * root;
        Valuation v = valuation(x, P);
        if (v.is_finite()) {
            EXPECT_EQ(v.value, 0);
        } else {
            EXPECT_EQ(v.k, Valuation::kind::at_least);
            EXPECT_THROW(v.exact(), precision_exceeded_error);
            EXPECT_EQ(valuation_exact(x, P), 6);
        }
    }
}

TEST(Valuation, MultiplicativeAndUltrametric) {
    std::mt19937_64 rng(53);
    for (const auto& [g, p] : std::vector<std::pair<IntPoly, std::uint64_t>>{
             {cubic, 2}, {quartic, 3}, {gauss, 2}, {gauss, 5}, {int_poly({2, 2, 2, 1}), 2}}) {
        auto k = NumberField::create(g);
        for (const auto& P : primes_above(k, p, 12)) {
            for (int trial = 0; trial < 20; ++trial) {
                NFElem x = random_elem(k, rng, 20, trial % 2 == 0), y = random_elem(k, rng, 20);
                if (x.is_zero() || y.is_zero()) continue;
                const long vx = valuation_exact(x, P), vy = valuation_exact(y, P);
                EXPECT_EQ(valuation_exact(x * y, P), vx + vy);
                NFElem s = x + y;
                if (s.is_zero()) continue;
                const long vs = valuation_exact(s, P);
                EXPECT_GE(vs, std::min(vx, vy));
                if (vx != vy) EXPECT_EQ(vs, std::min(vx, vy));
            }
        }
    }
}

TEST(Valuation, NormConsistency) {
    // v_p(N(x)) = sum over P above p of f_P * v_P(x)
    std::mt19937_64 rng(59);
    for (const auto& [g, p] : std::vector<std::pair<IntPoly, std::uint64_t>>{
             {cubic, 2}, {quartic, 3}, {gauss, 2}, {gauss, 5}, {int_poly({1, -1, 1, 1}), 2}}) {
        auto k = NumberField::create(g);
        auto ps = primes_above(k, p);
        for (int trial = 0; trial < 20; ++trial) {
            NFElem x = random_elem(k, rng, 30);
            if (x.is_zero()) continue;
            long total = 0;
            for (const auto& P : ps) total += P.f * valuation_exact(x, P);
            EXPECT_EQ(total, pvaluation(nf_norm(x).get_num(), static_cast<unsigned long>(p)));
        }
    }
}

TEST(Valuation, UnitsHaveValuationZero) {
    auto k = NumberField::create(cubic);
    NFElem a2 = k.gen() * k.gen() + k.gen();
    ASSERT_TRUE(is_unit(k.gen()));
    ASSERT_TRUE(is_unit(a2));
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL})
        for (const auto& P : primes_above(k, p)) {
            EXPECT_EQ(valuation(k.gen(), P), Valuation::finite(0));
            EXPECT_EQ(valuation(a2, P), Valuation::finite(0));
        }
}

TEST(Json, FieldElementPrime) {
    auto k = NumberField::create(quartic);
    EXPECT_EQ(field_json(k)["g"].dump(), R"({"var":"c","coeffs":["3","0","3","0","1"]})");
    NFElem x = k.from_poly(RatPoly({mpq_class(1, 2), mpq_class(1)}));
    json j = element_json(x);
    EXPECT_EQ(j["den"], "2");
    EXPECT_EQ(element_from_json(k, j), x);
    json pj = prime_json(primes_above(k, 3)[0]);
    EXPECT_EQ(pj["backend"], "B");
    EXPECT_EQ(pj["p"], "3");
}
