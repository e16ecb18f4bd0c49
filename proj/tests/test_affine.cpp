#include "loopcert/affine.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace loopcert;

namespace {

AffineRootSystem affine_of(char s, int n) { return AffineRootSystem(build_root_system(s, n)); }

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
    return make_rational(num(rng), den(rng));
}

CartanElement random_element(const AffineRootSystem& ar, std::mt19937_64& rng) {
    CartanElement x{ar.zero_coweight(), random_rational(rng), random_rational(rng)};
    for (auto& c : x.classical.coords) c = random_rational(rng);
    return x;
}

AffineWeight random_weight(const AffineRootSystem& ar, std::mt19937_64& rng) {
    AffineWeight w{ar.zero_weight(), random_rational(rng), random_rational(rng)};
    for (auto& c : w.classical.coords) c = random_rational(rng);
    return w;
}

}  // namespace

TEST(Affine, A1AffineSimpleRoot) {
    auto ar = affine_of('A', 1);
    EXPECT_EQ(ar.simple_root(1), (AffineRoot{{-1}, 1}));
    EXPECT_EQ(ar.simple_root(0), (AffineRoot{{1}, 0}));
}

TEST(Affine, A2AffineSimpleRoot) {
    auto ar = affine_of('A', 2);
    EXPECT_EQ(ar.simple_root(2).classical, (IVector{-1, -1}));
}

TEST(Affine, DegreePairingOfSimpleRoots) {
    for (auto [s, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'C', 2}, {'D', 4}, {'G', 2}, {'F', 4}}) {
        auto ar = affine_of(s, n);
        for (int i = 0; i <= n; ++i)
            EXPECT_EQ(ar.pairing(ar.weight(ar.simple_root(i)), ar.degree()), i == n ? 1 : 0);
    }
}

TEST(Affine, FormExamples) {
    auto ar = affine_of('A', 1);
    EXPECT_EQ(ar.form(ar.iota(), ar.iota()), 0);
    const AffineWeight a2 = ar.weight(ar.simple_root(1));
    EXPECT_EQ(ar.form(a2, a2), 2);
    EXPECT_EQ(ar.form(ar.weight(ar.simple_root(0)), a2), -2);
    EXPECT_EQ(ar.form(ar.lambda_affine(), ar.lambda_affine()), 0);
    EXPECT_EQ(ar.form(a2, ar.lambda_affine()), 1);
    EXPECT_EQ(ar.form(ar.iota(), ar.weight(ar.simple_root(0))), 0);
}

TEST(Affine, CorootExamples) {
    auto ar = affine_of('A', 1);
    const CartanElement h2 = ar.coroot(AffineRoot{{-1}, 1});
    EXPECT_EQ(h2.classical.coords, RVector{-1});
    EXPECT_EQ(h2.h_iota, 1);
    EXPECT_EQ(h2.d, 0);
    const CartanElement h1 = ar.coroot(AffineRoot{{1}, 0});
    EXPECT_EQ(h1.classical.coords, RVector{1});
    EXPECT_EQ(h1.h_iota, 0);
    EXPECT_THROW(ar.coroot(AffineRoot{{0}, 1}), std::invalid_argument);
}

TEST(Affine, G2ShortRootCoroot) {
    auto ar = affine_of('G', 2);
    const CartanElement h = ar.coroot(AffineRoot{{1, 0}, 1});
    EXPECT_EQ(h.h_iota, 3);
    EXPECT_EQ(h.classical.coords, (RVector{1, 0}));
}

TEST(Affine, PairingExamples) {
    auto ar = affine_of('A', 2);
    EXPECT_EQ(ar.pairing(ar.iota(), ar.degree()), 1);
    EXPECT_EQ(ar.pairing(ar.lambda_affine(), ar.h_iota()), 1);
    const AffineWeight rho = ar.classical_weight(ar.finite().rho());
    EXPECT_EQ(ar.pairing(rho, ar.h_iota()), 0);
    EXPECT_EQ(ar.pairing(rho, ar.degree()), 0);
    for (int i = 0; i < 2; ++i) EXPECT_EQ(ar.pairing(ar.lambda_affine(), ar.simple_coroot(i)), 0);
    EXPECT_EQ(ar.pairing(ar.lambda_affine(), ar.simple_coroot(2)), 1);
}

TEST(Affine, SimpleCorootsPairToCartanEntries) {
    auto ar = affine_of('C', 3);
    // affine Cartan matrix has 2 on the diagonal and nonpositive entries elsewhere
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            const Rational a = ar.pairing(ar.weight(ar.simple_root(j)), ar.simple_coroot(i));
            if (i == j)
                EXPECT_EQ(a, 2);
            else
                EXPECT_LE(a, 0);
        }
}

TEST(Affine, DecomposeExamples) {
    auto ar = affine_of('A', 2);
    const Decomposition top = ar.decompose(ar.simple_coroot(2));
    EXPECT_EQ(top.classical.coords, (RVector{-1, -1}));
    EXPECT_EQ(top.lambda_pairing, 1);
    EXPECT_EQ(top.d, 0);
    const Decomposition h0 = ar.decompose(ar.simple_coroot(0));
    EXPECT_EQ(h0.classical.coords, (RVector{1, 0}));
    EXPECT_EQ(h0.lambda_pairing, 0);
    const Decomposition rd = ar.decompose(Rational(5) * ar.degree());
    EXPECT_EQ(rd.classical.coords, (RVector{0, 0}));
    EXPECT_EQ(rd.lambda_pairing, 0);
    EXPECT_EQ(rd.d, 5);
}

TEST(Affine, RecompositionAndDuality) {
    std::mt19937_64 rng(7);
    for (auto [s, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 3}, {'G', 2}, {'E', 6}}) {
        auto ar = affine_of(s, n);
        for (int k = 0; k < 1000; ++k) {
            const CartanElement x = random_element(ar, rng);
            EXPECT_EQ(ar.recompose(ar.decompose(x)), x);
            const AffineWeight lam = random_weight(ar, rng);
            // componentwise pairing through the basis of (h^e)*
            Rational sum = lam.iota * ar.pairing(ar.iota(), x) + lam.lambda * ar.pairing(ar.lambda_affine(), x);
            for (int i = 0; i < n; ++i) {
                AffineWeight ai{ar.zero_weight(), 0, 0};
                ai.classical.coords[i] = 1;
                sum += lam.classical.coords[i] * ar.pairing(ai, x);
            }
            ASSERT_EQ(ar.pairing(lam, x), sum);
            // X_cl = sum_j <omega_j, X> h_j and <rho, X> = sum_j <omega_j, X>
            Rational rho_sum = 0;
            for (int j = 0; j < n; ++j) {
                const Rational wj = ar.pairing(ar.classical_weight(ar.finite().fundamental_weight(j)), x);
                ASSERT_EQ(wj, x.classical.coords[j]);
                rho_sum += wj;
            }
            ASSERT_EQ(ar.pairing(ar.classical_weight(ar.finite().rho()), x), rho_sum);
        }
    }
}

TEST(Affine, FormIsNondegenerate) {
    for (auto [s, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 3}, {'C', 2}, {'G', 2}, {'D', 5}}) {
        auto ar = affine_of(s, n);
        std::vector<AffineWeight> basis;
        for (int i = 0; i <= n; ++i) basis.push_back(ar.weight(ar.simple_root(i)));
        basis.push_back(ar.lambda_affine());
        RMatrix g(basis.size(), basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) g(i, j) = ar.form(basis[i], basis[j]);
        EXPECT_EQ(rank(g), static_cast<std::size_t>(n + 2));
    }
}

TEST(Affine, NormalizedCorootIsLinear) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (auto [s, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'G', 2}}) {
        auto ar = affine_of(s, n);
        for (int k = 0; k < 200; ++k) {
            std::vector<std::int64_t> b(n + 1), c(n + 1), bc(n + 1);
            for (int i = 0; i <= n; ++i) {
                b[i] = coef(rng);
                c[i] = coef(rng);
                bc[i] = b[i] + c[i];
            }
            ASSERT_EQ(ar.normalized_coroot(bc), ar.normalized_coroot(b) + ar.normalized_coroot(c));
        }
        // on a real root h'_a = ((a|a)/2) h_a
        for (const auto& alpha : ar.finite().positive_roots()) {
            const AffineRoot a{alpha, 2};
            const CartanElement hp = ar.normalized_coroot(ar.simple_coefficients(a));
            ASSERT_EQ(hp, (ar.finite().norm2(alpha) / 2) * ar.coroot(a));
        }
    }
}

TEST(Affine, JsonRoundTrip) {
    auto ar = affine_of('A', 2);
    const AffineWeight w{Weight{{make_rational(1, 2), -3}}, 4, make_rational(-7, 3)};
    EXPECT_EQ(affine_weight_from_json(to_json(w)), w);
    const CartanElement x{CorootVector{{2, make_rational(5, 4)}}, -1, 3};
    EXPECT_EQ(cartan_element_from_json(to_json(x)), x);
    EXPECT_TRUE(to_json(x).contains("h_iota"));
    EXPECT_TRUE(to_json(w).contains("lambda"));
}
