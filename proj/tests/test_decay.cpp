#include "loopcert/decay.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace loopcert;

namespace oracle {

// central finite difference of order N at 512 bits
Real bump_derivative_fd(int n, const Real& x, const Real& h) {
    Real s(0);
    Integer binom = 1;
    for (int k = 0; k <= n; ++k) {
        const Real term = to_real(binom) * sigma(x + (Real(n) / 2 - k) * h);
        s += (k % 2 ? Real(-term) : term);
        binom = binom * (n - k) / (k + 1);
    }
    return s / powi(h, n);
}

}  // namespace oracle

TEST(Decay, DerivativeMatchesFiniteDifferences) {
    PrecisionScope prec(512);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    const Real h = pow2(-40);
    for (int n = 0; n <= 8; ++n) {
        const auto rep = derivative_poly(n);
        for (int i = 0; i < 20; ++i) {
            const Real x(u(rng));
            const Real exact = sigma_derivative(rep, x);
            const Real fd = oracle::bump_derivative_fd(n, x, h);
            const double scale = std::max(1.0, std::abs(to_double(exact)));
            EXPECT_LT(std::abs(to_double(exact - fd)) / scale, 1e-6) << n << " " << to_double(x);
        }
    }
}

TEST(Decay, FirstDerivativeNormIsTwoOverE) {
    const auto r = l1_norm(1, 256);
    PrecisionScope prec(256);
    EXPECT_LT(to_double(abs(r.value() - 2 / exp(Real(1)))), 1e-60);
    EXPECT_LT(to_double(r.abs_error), 1e-60);
}

TEST(Decay, SigmaNormAndTransformAtZero) {
    const auto r = l1_norm(0, 128);
    PrecisionScope prec(128);
    EXPECT_NEAR(to_double(r.value()), 0.4439938161680794, 1e-15);
    const FourierEvaluator f(10, 128);
    EXPECT_LT(to_double(abs(f(Real(0)) - r.value())), 1e-25);
}

TEST(Decay, FrozenLowOrderNorms) {
    // values cross-checked against the quadrature path
    const std::vector<std::pair<int, double>> frozen{{2, 3.1937190073343981767}, {3, 35.647219909686182038}, {5, 59546.846022232043451}};
    for (const auto& [n, v] : frozen) {
        const auto r = l1_norm(n, 128);
        PrecisionScope prec(128);
        EXPECT_NEAR(to_double(r.value()) / v, 1.0, 1e-15) << n;
    }
}

TEST(Decay, TelescopingAgreesWithQuadrature) {
    for (int n : {0, 1, 2, 3, 4}) {
        const auto t = l1_norm(n, 128);
        const auto q = derivative_norm_quadrature(n, 1, 96);
        PrecisionScope prec(128);
        EXPECT_LT(to_double(abs(t.value() - q.value) / q.value), 1e-25) << n;
    }
}

TEST(Decay, NormRatioBoundedByFirstOrder) {
    PrecisionScope outer(256);
    Real first(0);
    for (int n = 1; n <= 20; ++n) {
        const auto r = l1_norm(n, 256);
        PrecisionScope prec(256);
        const Real ratio = r.value() / powi(Real(2 * n), 2 * n);
        if (n == 1) first = ratio;
        EXPECT_LE(ratio, first) << n;
    }
}

TEST(Decay, PrecisionDoublingIsStable) {
    for (int n : {0, 3, 7}) {
        const auto lo = l1_norm(n, 128);
        const auto hi = l1_norm(n, 256);
        PrecisionScope prec(256);
        EXPECT_LT(to_double(abs(lo.log_value - hi.log_value)), 1e-30) << n;
    }
}

TEST(Decay, FiniteDifferencesAtFixedPoints) {
    PrecisionScope prec(512);
    const Real h = pow2(-48);
    for (int n = 1; n <= 8; ++n) {
        const auto rep = derivative_poly(n);
        for (double x : {-0.7, -0.3, 0.1, 0.45, 0.8}) {
            const Real exact = sigma_derivative(rep, Real(x));
            const Real fd = oracle::bump_derivative_fd(n, Real(x), h);
            EXPECT_LT(to_double(abs((exact - fd) / exact)), 1e-8) << n << " " << x;
        }
    }
}

TEST(Decay, L1BoundedByL2) {
    for (int n : {0, 1, 2, 3, 4, 6, 8, 12, 16, 20}) {
        const auto l1 = derivative_norm_quadrature(n, 1, 64);
        const auto l2 = derivative_norm_quadrature(n, 2, 64);
        PrecisionScope prec(128);
        EXPECT_LE(l1.value, sqrt(Real(2)) * l2.value) << n;
    }
}

TEST(Decay, ScaledNorms) {
    const auto a = scaled_l1_norm(1, make_rational(1, 2), 128);
    PrecisionScope prec(128);
    EXPECT_LT(to_double(abs(a.value() - 2 / exp(Real(1)))), 1e-30);
    const auto b = scaled_l1_norm(3, make_rational(1, 4), 128);
    const auto direct = derivative_norm_quadrature(3, 1, 64, make_rational(1, 4));
    EXPECT_LT(to_double(abs(b.value() - direct.value) / direct.value), 1e-8);
    EXPECT_THROW(scaled_l1_norm(1, 0, 64), std::invalid_argument);
}

TEST(Decay, FourierReferenceValues) {
    PrecisionScope prec(192);
    const FourierEvaluator f(400, 192);
    const std::vector<std::pair<double, double>> ref{{50, 6.273955922e-10}, {75, -5.358353843e-12}, {100, 1.0608505e-13},
                                                     {150, 5.69061638e-16}, {200, 2.138125267e-18}, {300, 9.276823705e-22},
                                                     {400, 5.534237661e-25}};
    for (const auto& [r, v] : ref) EXPECT_NEAR(to_double(f(Real(r))) / v, 1.0, 1e-7) << r;
}

TEST(Decay, FourierEnvelopeExponent) {
    const auto fit = fourier_decay_fit(50, 400, 30, 192);
    EXPECT_GE(fit.peaks.size(), 2u);
    EXPECT_NEAR(fit.exponent_coeff, std::sqrt(2 * M_PI), 0.1 * std::sqrt(2 * M_PI));
    EXPECT_THROW(fourier_decay_fit(10, 5, 30), std::invalid_argument);
}

TEST(Decay, ParsevalFourthDerivative) {
    const auto p = parseval_check(4);
    EXPECT_LT(p.relative_difference, 1e-6);
}

TEST(Decay, MomentConversionExamples) {
    PrecisionScope prec(128);
    const auto m = moment_to_pointwise({1, 1}, Real(2));
    EXPECT_EQ(m.best_n, 3u);
    EXPECT_NEAR(to_double(m.log_bound), std::log(27.0) - 6, 1e-12);
    const auto big = moment_to_pointwise({1, 1}, Real(20));
    EXPECT_NEAR(to_double(big.log_bound / exp(Real(20))), -1 / std::exp(1.0), 0.02 / std::exp(1.0));
    Real prev(0);
    for (int k = 1; k <= 25; ++k) {
        const auto b = moment_to_pointwise({make_rational(3, 2), 2}, Real(k));
        if (k > 1) EXPECT_LE(b.log_bound, prev) << k;
        prev = b.log_bound;
    }
    for (const MomentBound& b : std::vector<MomentBound>{{1, 1}, {make_rational(1, 10), 1}, {1, 2}, {100, 3}}) {
        const auto fit = moment_exponent_fit(b);
        EXPECT_GE(fit.d, 1 / to_double(to_real(b.big_c)) - 0.01) << b.c << " " << b.big_c;
    }
    EXPECT_THROW(moment_to_pointwise({1, 1}, Real(0)), std::invalid_argument);
    EXPECT_THROW(moment_to_pointwise({0, 1}, Real(2)), std::invalid_argument);
}

TEST(Decay, MultinomialBounds) {
    EXPECT_EQ(multinomial_bound(1), 4);
    EXPECT_EQ(multinomial_bound(2), 1024);
    // brute-force sum over compositions of N into N parts matches the closed form
    for (int n = 1; n <= 6; ++n) {
        Integer brute = 0;
        std::vector<int> parts(n, 0);
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == n - 1) {
                parts[i] = left;
                Integer prod = 1;
                for (int j : parts)
                    for (int k = 0; k < 2 * j; ++k) prod *= 2 * n;
                brute += prod;
                return;
            }
            for (int j = 0; j <= left; ++j) {
                parts[i] = j;
                rec(i + 1, left - j);
            }
        };
        rec(0, n);
        EXPECT_EQ(brute, composition_power_sum(n, n)) << n;
        EXPECT_LE(composition_power_sum(n, n), multinomial_bound(n)) << n;
    }
}
