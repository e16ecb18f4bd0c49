#include "loopcert/decay.hpp"
#include "loopcert/polynomial.hpp"

#include <gtest/gtest.h>

using namespace loopcert;

TEST(Polynomial, ArithmeticAndNormalization) {
    const RationalPolynomial a({2, 4});           // 2 + 4x
    const RationalPolynomial b({-1, 0, 3});       // -1 + 3x^2
    EXPECT_EQ(a.scale(), 2);
    EXPECT_EQ(a.coefficients(), (std::vector<Integer>{1, 2}));
    const auto s = a + b;
    EXPECT_EQ(s.coefficient(0), 1);
    EXPECT_EQ(s.coefficient(1), 4);
    EXPECT_EQ(s.coefficient(2), 3);
    const auto p = a * b;
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(p.coefficient(3), 12);
    EXPECT_EQ(p.evaluate(Rational(2)), a.evaluate(Rational(2)) * b.evaluate(Rational(2)));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((make_rational(1, 3) * b).coefficient(2), 1);
    EXPECT_EQ(b.derivative().coefficient(1), 6);
    EXPECT_EQ(b.to_string(), "3*x^2-1");
}

TEST(Polynomial, ParityAndSquareSubstitution) {
    const RationalPolynomial odd({0, -2, 0, 5});
    EXPECT_EQ(odd.parity(), -1);
    const auto q = odd.even_part_in_square();
    EXPECT_EQ(q.coefficient(0), -2);
    EXPECT_EQ(q.coefficient(1), 5);
    EXPECT_THROW(RationalPolynomial({1, 1}).even_part_in_square(), std::domain_error);
}

TEST(Polynomial, SturmCounts) {
    // (x - 1/3)(x - 1/2)(x - 2) = x^3 - 17/6 x^2 + 11/6 x - 1/3, times 6
    const RationalPolynomial p({-2, 11, -17, 6});
    EXPECT_EQ(sturm_count(p, 0, 1), 2);
    EXPECT_EQ(sturm_count(p, 0, 3), 3);
    EXPECT_EQ(sturm_count(p, make_rational(2, 5), 1), 1);
    EXPECT_EQ(sturm_count(p, 3, 4), 0);
    // repeated root counts once
    const RationalPolynomial sq = RationalPolynomial({-1, 2}) * RationalPolynomial({-1, 2});
    EXPECT_EQ(sturm_count(sq, 0, 1), 1);
    EXPECT_THROW(sturm_count(p, make_rational(1, 2), 1), std::domain_error);
}

TEST(Polynomial, DerivativePolynomialsLowOrder) {
    EXPECT_EQ(derivative_poly(0).poly, RationalPolynomial::constant(1));
    EXPECT_EQ(derivative_poly(1).poly, RationalPolynomial({0, -2}));
    EXPECT_EQ(derivative_poly(2).poly, RationalPolynomial({-2, 0, 0, 0, 6}));
}

TEST(Polynomial, DerivativePolynomialShape) {
    for (int n = 0; n <= 40; ++n) {
        const auto rep = derivative_poly(n);
        EXPECT_EQ(rep.poly.parity(), n % 2 ? -1 : 1) << n;
        EXPECT_LE(rep.poly.degree(), 3 * n) << n;
        // P_N(1) = (-2)^N
        Integer v = 1;
        for (int k = 0; k < n; ++k) v *= -2;
        EXPECT_EQ(rep.poly.evaluate(Rational(1)), Rational(v)) << n;
    }
}
