#include "oracles.hpp"
#include "pisot/polycore.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pisot;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly::from_descending(c); }

IntPoly power(const IntPoly& a, int k) {
    IntPoly r = IntPoly::constant(1);
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

}  // namespace

TEST(IntPolyBasics, CanonicalForm) {
    IntPoly z(std::vector<Integer>{0, 0, 0});
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.degree(), -1);
    IntPoly a(std::vector<Integer>{1, 2, 0, 0});
    EXPECT_EQ(a.degree(), 1);
    EXPECT_EQ(a.lead(), 2);
    EXPECT_TRUE((P({1, 1}) - P({1, 1})).is_zero());
}

TEST(IntPolyBasics, NegateArgument) { EXPECT_EQ(P({1, 0, -1, -1}).negate_arg(), P({-1, 0, 1, -1})); }

TEST(IntPolyBasics, ScaleHalf) { EXPECT_EQ(P({1, -1, -1}).scale_half(), P({1, -2, -4})); }

TEST(IntPolyBasics, Reciprocal) { EXPECT_EQ(P({1, -2, 0, 1, -1}).reciprocal(), P({-1, 1, 0, -2, 1})); }

TEST(IntPolyBasics, InvolutionsOnNonzeroConstantTerm) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        IntPoly a = oracle::random_poly(rng, 1 + i % 7, 5, false);
        if (sgn(a[0]) == 0) continue;
        EXPECT_EQ(a.reciprocal().reciprocal(), a);
        EXPECT_EQ(a.negate_arg().negate_arg(), a);
    }
}

TEST(IntPolyBasics, ShiftAndDerivative) {
    EXPECT_EQ(P({1, 0, 0}).shift(1), P({1, 2, 1}));
    EXPECT_EQ(P({1, 0, -1, -1}).derivative(), P({3, 0, -1}));
    EXPECT_EQ(P({1, 1}).shift_up(2), P({1, 1, 0, 0}));
}

TEST(IntPolyBasics, EvaluationHomomorphism) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 17);
    for (int i = 0; i < 200; ++i) {
        IntPoly a = oracle::random_poly(rng, i % 6, 9, false);
        IntPoly b = oracle::random_poly(rng, (i / 3) % 5, 9, false);
        Rational q(num(rng), den(rng));
        q.canonicalize();
        EXPECT_EQ((a * b).eval(q), a.eval(q) * b.eval(q));
        EXPECT_EQ((a + b).eval(q), a.eval(q) + b.eval(q));
        EXPECT_EQ(a.sign_at(q), sgn(a.eval(q)));
    }
}

TEST(IntPolyBasics, ParseAndFormat) {
    EXPECT_EQ(parse_poly("1 -2 0 1 -1"), P({1, -2, 0, 1, -1}));
    EXPECT_EQ(format_poly(P({1, -2, 0, 1, -1})), "1 -2 0 1 -1");
    EXPECT_EQ(parse_poly("1 -2 0 1 -1", 4).degree(), 4);
    EXPECT_THROW(parse_poly("1 -2 0 0 1 -1", 4), std::invalid_argument);
    EXPECT_THROW(parse_poly("1 x 2"), std::invalid_argument);
    EXPECT_THROW(parse_poly("1 2.5 2"), std::invalid_argument);
    EXPECT_THROW(parse_poly("0 1 2"), std::invalid_argument);
}

TEST(Gcd, Examples) {
    EXPECT_EQ(gcd_primitive(P({1, 0, -5, 0, 0}), P({1, 0, 0})), P({1, 0, 0}));
    EXPECT_TRUE(gcd_primitive(P({1, -1, -1}), P({1, 1, -1})).is_constant());
    IntPoly f = P({-2, 4, 6});
    EXPECT_EQ(gcd_primitive(f, f), P({1, -2, -3}));
    EXPECT_THROW(gcd_primitive(IntPoly(), IntPoly()), std::invalid_argument);
}

TEST(Gcd, DividesInputsAndContainsCommonFactor) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 120; ++i) {
        IntPoly c = oracle::random_poly(rng, 1 + i % 3, 4, false);
        IntPoly a = c * oracle::random_poly(rng, 1 + i % 4, 6, false);
        IntPoly b = c * oracle::random_poly(rng, 2 + i % 3, 6, false);
        IntPoly g = gcd_primitive(a, b);
        EXPECT_TRUE(divides_in_Q(g, a));
        EXPECT_TRUE(divides_in_Q(g, b));
        EXPECT_TRUE(divides_in_Q(c, g));
        EXPECT_GT(sgn(g.lead()), 0);
        EXPECT_EQ(g.content(), 1);
    }
}

TEST(Divisibility, Examples) {
    EXPECT_TRUE(divides_in_Q(P({1, -1}), P({1, 0, -1})));
    EXPECT_FALSE(divides_in_Q(P({1, -1, -1}), P({1, -4, 1, 6, -4})));
    EXPECT_TRUE(divides_in_Q(P({1, -1}), P({1, -2, 1})));
    EXPECT_TRUE(divides_in_Q(P({2, -1}), P({1, 0, 0, -1}) * P({2, -1})));
    EXPECT_THROW(divides_in_Q(IntPoly(), P({1})), std::invalid_argument);
}

TEST(Divisibility, QuotientsAndPseudoDivision) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        IntPoly a = oracle::random_poly(rng, 2 + i % 5, 7, false);
        IntPoly b = oracle::random_poly(rng, 1 + i % 3, 7, false);
        auto pd = pseudo_divide(a, b);
        EXPECT_EQ(pd.scale * a, pd.quotient * b + pd.remainder);
        EXPECT_LT(pd.remainder.degree(), b.degree());
        EXPECT_EQ(exact_div(a * b, b), a);
        EXPECT_TRUE(divides_in_Q(quotient_in_Q(a * b, b), a));
    }
}

TEST(Squarefree, Examples) {
    auto parts = squarefree_decomposition(P({1, -4, 1, 6, -4}));
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0], (SquarefreePart{P({1, -2, -4}), 1}));
    EXPECT_EQ(parts[1], (SquarefreePart{P({1, -1}), 2}));

    parts = squarefree_decomposition(P({1, 0, -5, 0, 0}));
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0], (SquarefreePart{P({1, 0, -5}), 1}));
    EXPECT_EQ(parts[1], (SquarefreePart{P({1, 0}), 2}));
    EXPECT_EQ(max_multiplicity(parts), 2);
    EXPECT_EQ(max_multiplicity_excluding_x(parts), 1);

    parts = squarefree_decomposition(P({1, 0, -1, -1}));
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts[0], (SquarefreePart{P({1, 0, -1, -1}), 1}));
    EXPECT_THROW(squarefree_decomposition(IntPoly()), std::invalid_argument);
}

TEST(Squarefree, ReconstructsInput) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 120; ++i) {
        IntPoly a = oracle::random_poly(rng, 1 + i % 3, 4, false);
        IntPoly b = oracle::random_poly(rng, 1 + i % 2, 4, false);
        IntPoly x = power(a, 1 + i % 3) * power(b, 1 + (i / 3) % 4) * oracle::random_poly(rng, i % 3, 5, false);
        auto parts = squarefree_decomposition(x);
        IntPoly prod = IntPoly::constant(1);
        int last = 0;
        for (const auto& sp : parts) {
            EXPECT_GT(sp.multiplicity, last);
            last = sp.multiplicity;
            EXPECT_TRUE(is_squarefree(sp.factor));
            prod = prod * power(sp.factor, sp.multiplicity);
        }
        EXPECT_EQ(prod.primitive(), x.primitive());
        for (size_t s = 0; s < parts.size(); ++s)
            for (size_t t = s + 1; t < parts.size(); ++t)
                EXPECT_TRUE(gcd_primitive(parts[s].factor, parts[t].factor).is_constant());
    }
}

TEST(Resultant, Univariate) {
    // Res(x - 1, b) = b(1)
    EXPECT_EQ(resultant(P({1, -1}), P({1, 0, -2})), -1);
    EXPECT_EQ(resultant(P({1, -1, -1}), P({1, 1, -1})), resultant(P({1, 1, -1}), P({1, -1, -1})));
    EXPECT_EQ(resultant(P({1, -1}), P({1, -1, 0})), 0);
}

TEST(RelationResultants, GoldenRatioExamples) {
    auto gh = relation_resultants(P({1, -1, -1}));
    EXPECT_EQ(gh.g, P({1, -4, 1, 6, -4}));
    EXPECT_EQ(gh.h, P({1, 0, -5, 0, 0}));
}

TEST(RelationResultants, QuarticHasFourfoldRootAtOne) {
    auto gh = relation_resultants(P({1, -2, 0, 1, -1}));
    EXPECT_TRUE(divides_in_Q(power(P({1, -1}), 4), gh.g));
    EXPECT_FALSE(divides_in_Q(power(P({1, -1}), 5), gh.g));
}

TEST(RelationResultants, AgreesWithSylvesterElimination) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        IntPoly f = oracle::random_poly(rng, 1 + i % 4, 3, i % 2 == 0);
        if (sgn(f[0]) == 0) continue;
        auto a = relation_resultants(f);
        auto b = relation_resultants_sylvester(f);
        EXPECT_EQ(a.g, b.g) << f.to_string();
        EXPECT_EQ(a.h, b.h) << f.to_string();
    }
}

TEST(RelationResultants, AgreesWithProductFormula) {
    std::mt19937_64 rng(37);
    int tested = 0;
    while (tested < 100) {
        IntPoly f = oracle::random_poly(rng, 1 + tested % 4, 3, true);
        if (sgn(f[0]) == 0 || !is_squarefree(f)) continue;
        auto gh = relation_resultants(f);
        EXPECT_EQ(gh.g, oracle::product_g(f)) << f.to_string();
        EXPECT_EQ(gh.h, oracle::product_h(f)) << f.to_string();
        ++tested;
    }
}

TEST(RelationResultants, StructuralIdentities) {
    std::mt19937_64 rng(41);
    int tested = 0;
    while (tested < 100) {
        const int d = 2 + tested % 5;
        IntPoly f = oracle::random_poly(rng, d, 4, true);
        if (sgn(f[0]) == 0 || !is_squarefree(f)) continue;
        auto gh = relation_resultants(f);
        ASSERT_EQ(gh.g.degree(), d * d);
        ASSERT_EQ(gh.h.degree(), d * d);
        // g / ((-2)^d f(x/2)) is a perfect square
        IntPoly sign = IntPoly::constant(d % 2 ? -1 : 1);
        IntPoly q = quotient_in_Q(gh.g, sign * f.scale_half());
        for (const auto& sp : squarefree_decomposition(q)) EXPECT_EQ(sp.multiplicity % 2, 0) << f.to_string();
        // x^d | h and h(-x) = (-1)^d h(x)
        EXPECT_TRUE(divides_in_Q(IntPoly::monomial(1, d), gh.h));
        EXPECT_EQ(gh.h.negate_arg(), d % 2 ? -gh.h : gh.h);
        ++tested;
    }
}

TEST(RelationResultants, RejectsZero) { EXPECT_THROW(relation_resultants(IntPoly()), std::invalid_argument); }
