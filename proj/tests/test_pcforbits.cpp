#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pcf/numberfield/numberfield.hpp"
#include "pcf/pcforbits/pcforbits.hpp"

using namespace pcf;

namespace {

/// a_0..a_count at an integer parameter by direct iteration.
std::vector<mpz_class> integer_orbit(long d, const mpz_class& c, long count) {
    std::vector<mpz_class> a{0};
    for (long i = 1; i <= count; ++i) {
        mpz_class next;
        mpz_pow_ui(next.get_mpz_t(), a.back().get_mpz_t(), static_cast<unsigned long>(d));
        a.push_back(next + c);
    }
    return a;
}

/// Res_z(Phi_d(z), G(c, z)) at an integer c via the Sylvester determinant.
mpq_class norm_at(const CycPoly& g, int d, const mpz_class& c) {
    std::vector<mpq_class> gz(static_cast<std::size_t>(d - 1), 0);
    mpz_class cp = 1;
    for (const auto& coeff : g.coeffs()) {
        for (std::size_t j = 0; j < coeff.coeffs().size(); ++j) gz[j] += mpq_class(coeff.coeffs()[j] * cp);
        cp *= c;
    }
    while (gz.size() > 1 && gz.back() == 0) gz.pop_back();
    if (gz.size() == 1 && gz[0] == 0) return 0;
    std::vector<mpq_class> phi(static_cast<std::size_t>(d), 1);
    return oracle::sylvester_resultant(phi, gz);
}

}  // namespace

TEST(Orbit, Examples) {
    EXPECT_EQ(orbit_poly(2, 2), int_poly({0, 1, 1}));
    EXPECT_EQ(orbit_poly(2, 3), int_poly({0, 1, 1, 2, 1}));
    EXPECT_EQ(orbit_poly(3, 2), int_poly({0, 1, 0, 1}));
}

TEST(Orbit, DegreesArePowersOfD) {
    for (long d : {2L, 3L, 5L}) {
        OrbitSeq seq(d);
        long deg = 1;
        for (long i = 1; deg <= 4096; ++i, deg *= d) {
            EXPECT_EQ(seq.a(i).degree(), deg);
            EXPECT_TRUE(seq.a(i).is_monic());
        }
    }
}

TEST(Orbit, Budget) {
    EXPECT_THROW(orbit_poly(2, 14), budget_exceeded_error);
    EXPECT_NO_THROW(orbit_poly(2, 13));
    EXPECT_THROW(orbit_poly(3, 3, 8), budget_exceeded_error);
    EXPECT_THROW(orbit_poly(4, 2), invalid_argument_error);
}

TEST(Gleason, Table) {
    EXPECT_EQ(gleason(2, 1), int_poly({0, 1}));
    EXPECT_EQ(gleason(2, 2), int_poly({1, 1}));
    EXPECT_EQ(gleason(2, 3), int_poly({1, 1, 2, 1}));
    EXPECT_EQ(gleason(3, 2), int_poly({1, 0, 1}));
    EXPECT_EQ(gleason(2, 4).degree(), 6);
}

TEST(Gleason, DegreeAndIntegerPointIdentity) {
    for (long d : {2L, 3L}) {
        OrbitSeq seq(d);
        for (long n = 1; n <= (d == 2 ? 8 : 5); ++n) {
            IntPoly g = gleason(seq, n);
            EXPECT_EQ(g.degree(), gleason_degree(d, n));
            for (long cv = -4; cv <= 4; ++cv) {
                auto a = integer_orbit(d, cv, n);
                mpz_class up = 1, down = 1;
                for (long k : divisors(n)) {
                    if (mobius(n / k) == 1) up *= a[static_cast<std::size_t>(k)];
                    if (mobius(n / k) == -1) down *= a[static_cast<std::size_t>(k)];
                }
                EXPECT_EQ(eval(g, mpz_class(cv)) * down, up) << "d=" << d << " n=" << n << " c=" << cv;
            }
        }
    }
}

TEST(Cyclo, RingIdentities) {
    for (int d : {2, 3, 5, 7}) {
        const CycInt z = CycInt::zeta_power(d, 1, mpz_class(0));
        CycInt sum = CycInt::scalar(d, 0), p = CycInt::scalar(d, 1);
        for (int j = 0; j < d; ++j) {
            sum = sum + p;
            p = p * z;
        }
        EXPECT_TRUE(sum.is_zero()) << d;
        EXPECT_EQ(p, CycInt::scalar(d, 1)) << d;
        EXPECT_EQ((CycInt::scalar(d, 1) - z).norm(), d);  // Phi_d(1) = d
    }
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<long> coef(-5, 5);
    auto rnd = [&](int d) {
        std::vector<mpz_class> c(static_cast<std::size_t>(d - 1));
        for (auto& v : c) v = coef(rng);
        return CycInt(d, c);
    };
    for (int trial = 0; trial < 40; ++trial) {
        const int d = trial % 2 ? 3 : 5;
        CycInt a = rnd(d), b = rnd(d);
        EXPECT_EQ((a * b).conjugate(2), a.conjugate(2) * b.conjugate(2));
        EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
        if (!b.is_zero()) EXPECT_EQ(*coeff_traits<CycInt>::divide_exact(a * b, b), a);
    }
}

TEST(Misiurewicz, Table) {
    auto m221 = misiurewicz(2, 2, 1);
    EXPECT_EQ(m221.norm_form, int_poly({2, 1}));
    EXPECT_EQ(misiurewicz(2, 3, 1).norm_form, int_poly({2, 2, 2, 1}));
    EXPECT_EQ(misiurewicz(2, 2, 2).norm_form, int_poly({1, 0, 1}));
    auto m321 = misiurewicz(3, 2, 1);
    const CycInt zeta = CycInt::zeta_power(3, 1, mpz_class(0));
    CycPoly expect = to_cyc(3, int_poly({1, 0, 1})) - CycPoly::constant(zeta);
    EXPECT_EQ(m321.poly, expect);
    EXPECT_EQ(m321.norm_form, int_poly({3, 0, 3, 0, 1}));
    EXPECT_TRUE(detail::is_eisenstein(m321.norm_form, 3));
    EXPECT_EQ(to_text(m321.poly, "c"), "c^2 + (1 - zeta)");
}

TEST(Misiurewicz, QuadraticCaseIsRational) {
    for (long m = 2; m <= 4; ++m)
        for (long n = 1; n <= 3; ++n) {
            auto g = misiurewicz(2, m, n);
            EXPECT_EQ(scalar_part(g.poly), g.norm_form);
        }
}

TEST(Misiurewicz, NormFormMatchesResultantInZeta) {
    for (long d : {2L, 3L, 5L}) {
        for (long m = 2; m <= (d == 5 ? 2 : 3); ++m) {
            for (long n = 1; n <= (d == 2 ? 3 : 2); ++n) {
                auto g = misiurewicz(d, m, n);
                EXPECT_TRUE(g.norm_form.is_monic());
                for (long cv = -3; cv <= 3; ++cv)
                    EXPECT_EQ(mpq_class(eval(g.norm_form, mpz_class(cv))), norm_at(g.poly, static_cast<int>(d), cv))
                        << d << "," << m << "," << n << " at " << cv;
            }
        }
    }
}

TEST(ExactType, Examples) {
    auto t1 = exact_type(NumberField::create(int_poly({1, 1})), 2, 10);
    EXPECT_TRUE(t1.periodic());
    EXPECT_EQ(t1.n, 2);
    auto t2 = exact_type(NumberField::create(int_poly({2, 1})), 2, 10);
    EXPECT_FALSE(t2.periodic());
    EXPECT_EQ(t2.m, 2);
    EXPECT_EQ(t2.n, 1);
    auto t3 = exact_type(NumberField::create(int_poly({3, 0, 3, 0, 1})), 3, 10);
    EXPECT_EQ(t3.describe(), "Preperiodic(2, 1)");
    EXPECT_THROW(exact_type(NumberField::create(int_poly({1, 0, 1})), 2, 3), bound_exceeded_error);
    EXPECT_THROW(exact_type(NumberField::create(int_poly({-5, 1})), 2, 6), bound_exceeded_error);
}

TEST(ExactType, GleasonAndMisiurewiczFieldsClassify) {
    for (auto [d, n] : std::vector<std::pair<long, long>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}}) {
        auto k = NumberField::create(gleason(d, n));
        ASSERT_EQ(k.status(), irreducibility_status::certified);
        auto t = exact_type(k, d, 3 * n);
        EXPECT_TRUE(t.periodic()) << d << "," << n;
        EXPECT_EQ(t.n, n);
    }
    for (auto [d, m, n] : std::vector<std::tuple<long, long, long>>{
             {2, 2, 1}, {2, 3, 1}, {2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {3, 2, 1}, {3, 3, 1}}) {
        auto k = NumberField::create(misiurewicz(d, m, n).norm_form);
        ASSERT_EQ(k.status(), irreducibility_status::certified);
        auto t = exact_type(k, d, 3 * (m + n));
        EXPECT_FALSE(t.periodic());
        EXPECT_EQ(t.m, m) << d << "," << m << "," << n;
        EXPECT_EQ(t.n, n) << d << "," << m << "," << n;
    }
}

TEST(CycJson, RoundTrip) {
    auto g = misiurewicz(3, 2, 1).poly;
    json j = cycpoly_json(g, 3);
    EXPECT_EQ(j.dump(), R"({"d":3,"coeffs":[["1","-1"],["0","0"],["1","0"]]})");
    EXPECT_EQ(cycpoly_from_json(j), g);
}
