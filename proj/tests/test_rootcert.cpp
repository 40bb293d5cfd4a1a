#include "oracles.hpp"
#include "pisot/rootcert.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace pisot;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly::from_descending(c); }

Rational Q(long a, long b = 1) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

}  // namespace

TEST(Interval, Validation) {
    EXPECT_THROW(RationalInterval::open(2, 1).validate(), std::invalid_argument);
    EXPECT_THROW(RationalInterval::open(1, 1).validate(), std::invalid_argument);
    EXPECT_NO_THROW(RationalInterval::closed(1, 1).validate());
    EXPECT_TRUE(RationalInterval::open(1, 2).contains(Q(3, 2)));
    EXPECT_FALSE(RationalInterval::open(1, 2).contains(Q(2)));
    EXPECT_TRUE(RationalInterval::closed(1, 2).contains(Q(2)));
}

TEST(Sturm, Examples) {
    EXPECT_EQ(sturm_count(P({1, 0, -1, -1}), RationalInterval::open(1, 2)), 1);
    EXPECT_EQ(sturm_count(P({1, -1, -1}), RationalInterval::open(-1, 0)), 1);
    EXPECT_EQ(sturm_count(P({1, 0, 1}), RationalInterval::open(-10, 10)), 0);
}

TEST(Sturm, EndpointRoots) {
    // roots 1, 2, 3
    IntPoly p = P({1, -6, 11, -6});
    EXPECT_EQ(sturm_count(p, RationalInterval::open(1, 3)), 1);
    EXPECT_EQ(sturm_count(p, RationalInterval::closed(1, 3)), 3);
    EXPECT_EQ(sturm_count(p, RationalInterval{1, 3, true, false}), 2);
    EXPECT_EQ(sturm_count(p, RationalInterval{1, 3, false, true}), 2);
    EXPECT_EQ(sturm_count_above(p, 1), 2);
    EXPECT_EQ(sturm_count_above(p, 1, true), 3);
    EXPECT_EQ(real_root_count(p), 3);
}

TEST(Sturm, MatchesNumericRootsOnRandomPolynomials) {
    std::mt19937_64 rng(3);
    int tested = 0;
    while (tested < 100) {
        IntPoly p = oracle::random_poly(rng, 2 + tested % 6, 6, true);
        if (!is_squarefree(p)) continue;
        int numeric = 0;
        bool clear = true;
        for (const auto& z : oracle::dk_roots(p)) {
            if (std::fabs(z.imag()) < 1e-7L && std::fabs(z.imag()) > 1e-12L) clear = false;
            if (std::fabs(z.imag()) < 1e-12L) ++numeric;
        }
        if (!clear) continue;
        EXPECT_EQ(real_root_count(p), numeric) << p.to_string();
        ++tested;
    }
}

TEST(UnitDisk, Examples) {
    EXPECT_EQ(count_in_open_unit_disk(P({1, 0, -1, -1})), 2);
    EXPECT_EQ(count_in_open_unit_disk(P({1, -1, -1})), 1);
    EXPECT_EQ(count_in_open_unit_disk(P({1, 1, -1})), 1);
    EXPECT_THROW(count_in_open_unit_disk(P({1, 0, 1})), std::domain_error);
}

TEST(UnitDisk, DegenerateStepsAreRescued) {
    // |p(0)| = |lead| for many Pisot polynomials
    EXPECT_EQ(schur_cohn_count(P({1, -2, 0, 1, -1})), 3);
    EXPECT_EQ(schur_cohn_count(P({1, -1, -1, 0, -1, 0, 1})), 5);
    EXPECT_FALSE(schur_cohn_count(P({1, 0, 1})).has_value());
}

TEST(UnitDisk, MatchesNumericModuli) {
    std::mt19937_64 rng(13);
    int tested = 0;
    while (tested < 150) {
        IntPoly p = oracle::random_poly(rng, 1 + tested % 9, 5, false);
        if (sgn(p[0]) == 0 || !is_squarefree(p)) continue;
        auto prof = oracle::modulus_profile(p);
        if (!prof) continue;
        EXPECT_FALSE(has_root_on_unit_circle(p)) << p.to_string();
        EXPECT_EQ(count_in_open_unit_disk(p), prof->inside) << p.to_string();
        ++tested;
    }
}

TEST(UnitCircle, Examples) {
    EXPECT_FALSE(has_root_on_unit_circle(P({1, -1, -1})));
    EXPECT_FALSE(has_root_on_unit_circle(P({1, -3, 1})));
    EXPECT_TRUE(has_root_on_unit_circle(P({1, 0, 1})));
    EXPECT_TRUE(has_root_on_unit_circle(P({1, -1, 1})));
    EXPECT_TRUE(has_root_on_unit_circle(P({1, 1})));
    // Salem polynomial of Lehmer: roots on the circle
    EXPECT_TRUE(has_root_on_unit_circle(P({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1})));
    // (x^2 - 3x + 1)(x^2 + x + 1)
    EXPECT_TRUE(has_root_on_unit_circle(P({1, -3, 1}) * P({1, 1, 1})));
    EXPECT_THROW(has_root_on_unit_circle(P({1, 1, 0})), std::invalid_argument);
}

TEST(UnitCircle, CyclotomicProductsAndPerturbations) {
    std::vector<IntPoly> cyclo = {P({1, -1}), P({1, 1}), P({1, 1, 1}), P({1, 0, 1}), P({1, 1, 1, 1, 1}),
                                  P({1, -1, 1}), P({1, 1, 1, 1, 1, 1, 1}), P({1, 0, 0, 0, 1}), P({1, 0, -1, 0, 1})};
    std::mt19937_64 rng(19);
    int tested = 0;
    while (tested < 100) {
        IntPoly other = oracle::random_poly(rng, 1 + tested % 4, 4, true);
        if (sgn(other[0]) == 0) continue;
        IntPoly p = cyclo[tested % cyclo.size()] * other;
        EXPECT_TRUE(has_root_on_unit_circle(p)) << p.to_string();
        ++tested;
    }
}

TEST(CertifiedRoots, QuarticExample) {
    auto r = certified_roots(P({1, -2, 0, 1, -1}), Q(1, 100000));
    ASSERT_EQ(r.size(), 4u);
    EXPECT_TRUE(r[0].is_real);
    EXPECT_NEAR(r[0].re.get_d(), 1.86676, 1e-5);
    EXPECT_TRUE(r[3].is_real);
    EXPECT_NEAR(r[3].re.get_d(), -0.86676, 1e-5);
    EXPECT_FALSE(r[1].is_real);
    EXPECT_NEAR(std::abs(r[1].approx()), 0.78615, 1e-5);
    EXPECT_NEAR(std::abs(r[2].approx()), 0.78615, 1e-5);
    for (const auto& e : r) EXPECT_LE(e.radius, Q(1, 100000));
}

TEST(CertifiedRoots, LinearIsExact) {
    auto r = certified_roots(P({1, -2}), Q(1, 100000));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].re, 2);
    EXPECT_EQ(r[0].radius, 0);
    EXPECT_TRUE(r[0].is_real);
}

TEST(CertifiedRoots, SiegelRoot) {
    auto r = certified_roots(P({1, 0, -1, -1}), Q(1, 10000000000L));
    ASSERT_EQ(r.size(), 3u);
    EXPECT_TRUE(r[0].is_real);
    EXPECT_GE(r[0].re - r[0].radius, Q(13247179, 10000000));
    EXPECT_LE(r[0].re + r[0].radius, Q(13247180, 10000000));
}

TEST(CertifiedRoots, RejectsRepeatedRoots) {
    EXPECT_THROW(certified_roots(P({1, -2, 1}), Q(1, 1000)), std::domain_error);
}

TEST(CertifiedRoots, DisjointAndComplete) {
    std::mt19937_64 rng(29);
    int tested = 0;
    while (tested < 100) {
        IntPoly p = oracle::random_poly(rng, 1 + tested % 12, 7, tested % 3 != 0);
        if (!is_squarefree(p)) continue;
        const Rational eps = dyadic(20 + tested % 30);
        auto r = certified_roots(p, eps);
        ASSERT_EQ(static_cast<int>(r.size()), p.degree());
        int real = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            EXPECT_LE(r[i].radius, eps);
            if (r[i].is_real) {
                ++real;
                EXPECT_EQ(r[i].im, 0);
            }
            for (size_t j = i + 1; j < r.size(); ++j) {
                Rational dx = r[i].re - r[j].re, dy = r[i].im - r[j].im, s = r[i].radius + r[j].radius;
                EXPECT_GT(dx * dx + dy * dy, s * s) << p.to_string();
            }
        }
        EXPECT_EQ(real, real_root_count(p)) << p.to_string();
        // each oracle root falls in some enclosure
        for (const auto& z : oracle::dk_roots(p)) {
            long double best = 1e300L;
            for (const auto& e : r) best = std::min(best, std::abs(z - e.approx()));
            EXPECT_LT(best, 1e-6L) << p.to_string();
        }
        ++tested;
    }
}

TEST(IsPisot, Examples) {
    auto rec = is_pisot(P({1, -2, 0, 1, -1}), RationalInterval::closed(1, 3));
    ASSERT_TRUE(rec.has_value());
    EXPECT_NEAR(rec->theta.re.get_d(), 1.86676, 1e-5);
    EXPECT_LE(rec->theta.radius, Q(1, 1000000000000L));
    EXPECT_FALSE(is_pisot(P({1, -1, 1}), RationalInterval::closed(1, 3)).has_value());
    rec = is_pisot(P({1, -1, 0, -1}), RationalInterval::open(Q(1272019649, 1000000000), 2));
    ASSERT_TRUE(rec.has_value());
    EXPECT_NEAR(rec->theta.re.get_d(), 1.46557, 1e-5);
    EXPECT_EQ(rec->to_line().substr(0, 13), "3 1 -1 0 -1 |");
}

TEST(IsPisot, DegreeOneAndTwoConventions) {
    EXPECT_TRUE(is_pisot(P({1, -2}), RationalInterval::open(Q(3, 2), Q(5, 2))).has_value());
    EXPECT_FALSE(is_pisot(P({1, -1}), RationalInterval::open(0, 3)).has_value());
    EXPECT_TRUE(is_pisot(P({1, -3, 1}), RationalInterval::open(2, 3)).has_value());
    EXPECT_THROW(is_pisot(P({2, -3}), RationalInterval::open(1, 3)), std::invalid_argument);
}

TEST(IsPisot, Reducible) {
    // circle roots from the cyclotomic factor
    EXPECT_FALSE(is_pisot(P({1, -1, -1}) * P({1, 1, 1}), RationalInterval::open(1, 3)).has_value());
    // (x^2 - x - 1) x has a zero constant term
    EXPECT_FALSE(is_pisot(P({1, -1, -1, 0}), RationalInterval::open(1, 3)).has_value());
}

TEST(IsPisot, AgreesWithNumericClassification) {
    std::mt19937_64 rng(43);
    int tested = 0, accepted = 0;
    while (tested < 300) {
        IntPoly p = oracle::random_poly(rng, 2 + tested % 6, 3, true);
        if (sgn(p[0]) == 0 || !is_squarefree(p)) continue;
        auto prof = oracle::modulus_profile(p, 1e-6L);
        if (!prof) continue;
        const bool numeric = prof->outside == 1 && prof->real_outside_positive == 1;
        auto rec = is_pisot(p, RationalInterval::open(1, 100));
        EXPECT_EQ(rec.has_value(), numeric) << p.to_string();
        if (numeric) EXPECT_FALSE(oracle::small_monic_factor(p, p.degree() - 1).has_value()) << p.to_string();
        if (rec) ++accepted;
        ++tested;
    }
    EXPECT_GT(accepted, 5);
}

TEST(IsPisot, RefinementInvariance) {
    IntPoly p = P({1, -1, -1, -1});
    for (const auto& iv : {RationalInterval::open(1, 2), RationalInterval::open(Q(18, 10), Q(19, 10)),
                           RationalInterval::closed(Q(1839, 1000), Q(1840, 1000))})
        EXPECT_TRUE(is_pisot(p, iv).has_value()) << iv.to_string();
    EXPECT_FALSE(is_pisot(p, RationalInterval::open(Q(1840, 1000), 2)).has_value());
}

TEST(IsPisot, RecordLineRoundTrip) {
    auto rec = is_pisot(P({1, 0, -1, -1}), RationalInterval::open(1, 2));
    ASSERT_TRUE(rec);
    const std::string line = rec->to_line();
    EXPECT_EQ(line, "3 1 0 -1 -1 | 1.324717957245");
    EXPECT_EQ(parse_record_line(line), *rec);
    EXPECT_THROW(parse_record_line("3 1 -1 1 | 1.0"), std::invalid_argument);
    EXPECT_THROW(parse_record_line("3 1 -1 -1 -1 1 | 1.0"), std::invalid_argument);
}

TEST(IsPisot, CompareTheta) {
    auto rec = is_pisot(P({1, 0, -1, -1}), RationalInterval::open(1, 2));
    ASSERT_TRUE(rec);
    EXPECT_EQ(compare_theta(*rec, Q(13247, 10000)), 1);
    EXPECT_EQ(compare_theta(*rec, Q(13248, 10000)), -1);
}
