#include "loopcert/weyl.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace loopcert;

namespace {

AffineWeylGroup group_of(char s, int n) { return AffineWeylGroup(build_root_system(s, n)); }

AffineWeight apply_word(const AffineWeylGroup& g, const std::vector<int>& word, AffineWeight lam) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) lam = g.reflect(*it, lam);
    return lam;
}

// A weight with <lambda, h_i> > 0 for every affine simple coroot; its orbit map
// is injective on the affine Weyl group.
AffineWeight regular_weight(const AffineWeylGroup& g) {
    AffineWeight lam = g.affine().classical_weight(g.rs().rho());
    lam.lambda = 1000;
    return lam;
}

// Per-length counts by deduplicating images of a regular weight under all words,
// layer by layer. Uses only the simple reflections.
std::vector<std::size_t> word_dag_counts(const AffineWeylGroup& g, int max_len) {
    std::set<std::pair<RVector, Rational>> seen;
    auto key = [](const AffineWeight& w) { return std::make_pair(w.classical.coords, w.iota); };
    std::vector<AffineWeight> layer{regular_weight(g)};
    seen.insert(key(layer[0]));
    std::vector<std::size_t> counts{1};
    for (int n = 1; n <= max_len; ++n) {
        std::vector<AffineWeight> next;
        for (const auto& lam : layer)
            for (int i = 0; i < g.generator_count(); ++i) {
                AffineWeight img = g.reflect(i, lam);
                if (seen.insert(key(img)).second) next.push_back(std::move(img));
            }
        counts.push_back(next.size());
        layer = std::move(next);
    }
    return counts;
}

Rational small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    return make_rational(num(rng), den(rng));
}

AffineWeight random_weight(const AffineWeylGroup& g, std::mt19937_64& rng) {
    AffineWeight w{g.affine().zero_weight(), small_rational(rng), small_rational(rng)};
    for (auto& c : w.classical.coords) c = small_rational(rng);
    return w;
}

CartanElement random_element(const AffineWeylGroup& g, std::mt19937_64& rng) {
    CartanElement x{g.affine().zero_coweight(), small_rational(rng), small_rational(rng)};
    for (auto& c : x.classical.coords) c = small_rational(rng);
    return x;
}

}  // namespace

TEST(Weyl, ReflectExamples) {
    auto g = group_of('A', 1);
    const auto& ar = g.affine();
    const AffineWeight alpha = ar.weight(ar.simple_root(0));
    EXPECT_EQ(g.reflect(1, alpha), (AffineWeight{Weight{{-1}}, 2, 0}));
    EXPECT_EQ(g.reflect(0, ar.lambda_affine()), ar.lambda_affine());
    for (int i = 0; i < 2; ++i) EXPECT_EQ(g.reflect(i, ar.iota()), ar.iota());
    EXPECT_THROW(g.reflect(2, alpha), std::out_of_range);
    EXPECT_THROW(g.reflect(-1, alpha), std::out_of_range);
}

TEST(Weyl, ReflectIsInvolution) {
    std::mt19937_64 rng(3);
    auto g = group_of('B', 3);
    for (int k = 0; k < 100; ++k) {
        const AffineWeight lam = random_weight(g, rng);
        for (int i = 0; i < g.generator_count(); ++i) EXPECT_EQ(g.reflect(i, g.reflect(i, lam)), lam);
    }
}

TEST(Weyl, FromWordExamples) {
    auto g = group_of('A', 1);
    const AffineWeylElement w2 = g.from_word({1});
    EXPECT_EQ(w2.tilde.roots(0, 0), -1);
    EXPECT_EQ(w2.b, IVector{1});
    const AffineWeylElement e = g.from_word({});
    EXPECT_EQ(e, g.identity());
    const AffineWeylElement x = g.from_word({1, 0, 1, 0});
    const AffineWeylElement y = g.from_word({0, 1, 0, 1});
    EXPECT_FALSE(x == y);
    EXPECT_EQ(g.length_im(x), 4);
    EXPECT_EQ(g.length_im(y), 4);
}

TEST(Weyl, FromWordMatchesGroupProduct) {
    std::mt19937_64 rng(5);
    for (auto [s, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'C', 2}, {'G', 2}, {'B', 3}, {'D', 4}}) {
        auto g = group_of(s, n);
        std::uniform_int_distribution<int> gen(0, n), len(0, 12);
        for (int k = 0; k < 200; ++k) {
            std::vector<int> word(len(rng));
            for (auto& i : word) i = gen(rng);
            ASSERT_EQ(g.from_word(word), g.from_word_product(word));
        }
    }
}

TEST(Weyl, WeightActionMatchesReflections) {
    std::mt19937_64 rng(9);
    for (auto [s, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'C', 2}, {'G', 2}, {'F', 4}}) {
        auto g = group_of(s, n);
        std::uniform_int_distribution<int> gen(0, n), len(0, 10);
        for (int k = 0; k < 200; ++k) {
            std::vector<int> word(len(rng));
            for (auto& i : word) i = gen(rng);
            const AffineWeight lam = random_weight(g, rng);
            ASSERT_EQ(g.act(g.from_word_product(word), lam), apply_word(g, word, lam));
        }
    }
}

TEST(Weyl, ActOnCartanExamples) {
    auto g = group_of('A', 1);
    const auto& ar = g.affine();
    const AffineWeylElement w2 = g.from_word({1});
    EXPECT_EQ(g.act_on_cartan(w2, ar.h_iota()), ar.h_iota());
    const CartanElement img = g.act_on_cartan(w2, ar.degree());
    EXPECT_EQ(img, (CartanElement{CorootVector{{1}}, -1, 1}));
    // pure translation
    AffineWeylElement t = g.identity();
    t.b = {3};
    const CartanElement h{CorootVector{{make_rational(1, 2)}}, 0, 0};
    const CartanElement th = g.act_on_cartan(t, h);
    EXPECT_EQ(th.classical, h.classical);
    EXPECT_EQ(th.h_iota, g.rs().coform(h.classical, CorootVector{{3}}));
}

TEST(Weyl, LengthExamples) {
    auto g = group_of('A', 1);
    AffineWeylElement t = g.identity();
    t.b = {1};
    EXPECT_EQ(g.length_im(t), 2);
    EXPECT_EQ(g.length_im(g.identity()), 0);
    for (auto [s, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'C', 3}, {'G', 2}, {'E', 6}}) {
        auto h = group_of(s, n);
        for (int i = 0; i <= n; ++i) EXPECT_EQ(h.length_im(h.generator(i)), 1);
    }
}

TEST(Weyl, EnumerationA1Counts) {
    auto g = group_of('A', 1);
    const auto e = g.enumerate(30);
    EXPECT_EQ(e.count(0), 1u);
    for (int n = 1; n <= 30; ++n) EXPECT_EQ(e.count(n), 2u);
    EXPECT_EQ(g.enumerate(0).elements.size(), 1u);
    EXPECT_THROW(g.enumerate(-1), std::invalid_argument);
}

TEST(Weyl, EnumerationMatchesWordDag) {
    for (auto [s, n, len] : std::vector<std::tuple<char, int, int>>{{'A', 2, 6}, {'C', 2, 7}, {'G', 2, 7}, {'A', 3, 5}}) {
        auto g = group_of(s, n);
        EXPECT_EQ(g.enumerate(len).counts(), word_dag_counts(g, len)) << s << n;
    }
}

TEST(Weyl, EnumerationCapRaises) {
    auto g = group_of('A', 2);
    EXPECT_THROW(g.enumerate(10, 50), ResourceLimitError);
}

TEST(Weyl, LengthAgreement) {
    for (auto [s, n, len] :
         std::vector<std::tuple<char, int, int>>{{'A', 1, 40}, {'A', 2, 10}, {'C', 2, 9}, {'G', 2, 9}, {'B', 3, 5}}) {
        auto g = group_of(s, n);
        const auto e = g.enumerate(len);
        for (const auto& w : e.elements) {
            ASSERT_EQ(g.length_im(w), w.length);
            ASSERT_EQ(static_cast<int>(g.inverted_roots_scan(w).size()), w.length);
            ASSERT_EQ(static_cast<int>(w.word.size()), w.length);
            ASSERT_EQ(g.from_word(w.word), w);
        }
    }
}

TEST(Weyl, ReducedWordHasCorrectLength) {
    auto g = group_of('G', 2);
    for (const auto& w : g.enumerate(7).elements) {
        AffineWeylElement bare{w.tilde, w.b, {}, -1};
        const auto word = g.reduced_word(bare);
        ASSERT_EQ(static_cast<int>(word.size()), w.length);
        ASSERT_EQ(g.from_word(word), w);
    }
}

TEST(Weyl, InvertedRootExamples) {
    auto g = group_of('A', 2);
    for (int i = 0; i <= 2; ++i) {
        const auto inv = g.inverted_roots_word(g.generator(i));
        ASSERT_EQ(inv.size(), 1u);
        EXPECT_EQ(inv[0], g.affine().simple_root(i));
    }
    auto g1 = group_of('A', 1);
    const AffineWeylElement w2inv = g1.inverse(g1.generator(1));
    EXPECT_EQ(g1.inverted_roots_word(w2inv), (std::vector<AffineRoot>{{{-1}, 1}}));
    EXPECT_EQ(g1.neg_inverted(w2inv), (std::vector<AffineRoot>{{{1}, -1}}));
}

TEST(Weyl, WordAndScanInvertedRootsAgree) {
    for (auto [s, n, len] : std::vector<std::tuple<char, int, int>>{{'A', 2, 8}, {'C', 2, 8}, {'G', 2, 8}}) {
        auto g = group_of(s, n);
        for (const auto& w : g.enumerate(len).elements) {
            const auto word = g.inverted_roots_word(w);
            ASSERT_EQ(word, g.inverted_roots_scan(w));
            for (const auto& a : word) ASSERT_TRUE(g.affine().is_positive(a) && a.is_real());
        }
    }
}

TEST(Weyl, NegInvertedIsFlippedSetAndBothClosedFormsAgree) {
    for (auto [s, n, len] : std::vector<std::tuple<char, int, int>>{{'A', 2, 7}, {'G', 2, 7}}) {
        auto g = group_of(s, n);
        for (const auto& w : g.enumerate(len).elements) {
            const AffineWeylElement winv = g.inverse(w);
            std::vector<AffineRoot> flipped;
            for (const auto& a : g.inverted_roots_scan(w)) flipped.push_back(g.act(winv, a));
            std::sort(flipped.begin(), flipped.end());
            const auto neg = g.neg_inverted(w);
            ASSERT_EQ(neg, flipped);
            ASSERT_EQ(g.neg_inverted_closed_form(w, false), neg);
            ASSERT_EQ(g.neg_inverted_closed_form(w, true), neg);
        }
    }
}

TEST(Weyl, KostantExamples) {
    auto g = group_of('A', 1);
    for (const auto& k : g.kappa(g.identity())) EXPECT_EQ(k.kappa, 0);
    const AffineWeylElement w2 = g.generator(1);
    ASSERT_TRUE(g.is_kostant(w2));
    const auto k = g.kappa(w2);
    EXPECT_EQ(k[0].sigma, IVector{-1});
    EXPECT_EQ(k[0].kappa, 2);
    EXPECT_FALSE(g.is_kostant(g.generator(0)));
    EXPECT_THROW(g.kappa(g.generator(0)), std::invalid_argument);
}

TEST(Weyl, KostantOnePerLengthInA1) {
    auto g = group_of('A', 1);
    const auto e = g.enumerate(30);
    std::vector<int> per_len(31, 0);
    for (const auto& w : e.elements)
        if (g.is_kostant(w)) ++per_len[w.length];
    for (int n = 0; n <= 30; ++n) EXPECT_EQ(per_len[n], 1);
}

TEST(Weyl, KostantMinimalityAndLemma23) {
    for (auto [s, n, len] : std::vector<std::tuple<char, int, int>>{{'A', 2, 10}, {'C', 2, 10}, {'G', 2, 10}}) {
        auto g = group_of(s, n);
        const auto e = g.enumerate(len);
        // coset W w~T_b is keyed by b; shortest member found by BFS order
        std::map<IVector, std::pair<int, int>> best;  // b -> (min length, kostant count)
        for (const auto& w : e.elements) {
            auto& slot = best.try_emplace(w.b, std::make_pair(w.length, 0)).first->second;
            slot.first = std::min(slot.first, w.length);
            if (g.is_kostant(w)) {
                ++slot.second;
                for (const auto& k : g.kappa(w)) {
                    ASSERT_GE(k.kappa, 0);
                    ASSERT_LE(k.kappa, w.length + 1);
                    ASSERT_TRUE(g.rs().is_root(k.sigma));
                }
            }
        }
        for (const auto& w : e.elements)
            if (g.is_kostant(w)) ASSERT_EQ(best.at(w.b).first, w.length);
        for (const auto& [b, slot] : best)
            if (slot.first + static_cast<int>(g.rs().positive_roots().size()) <= len) ASSERT_EQ(slot.second, 1);
    }
}

TEST(Weyl, DualityAndFixedVectors) {
    std::mt19937_64 rng(13);
    for (auto [s, n, len] : std::vector<std::tuple<char, int, int>>{{'A', 2, 6}, {'C', 2, 6}, {'G', 2, 6}}) {
        auto g = group_of(s, n);
        const auto& ar = g.affine();
        const auto e = g.enumerate(len);
        for (const auto& w : e.elements) {
            const AffineWeylElement winv = g.inverse(w);
            ASSERT_EQ(g.act(w, ar.iota()), ar.iota());
            ASSERT_EQ(g.act_on_cartan(w, ar.h_iota()), ar.h_iota());
            for (int k = 0; k < 20; ++k) {
                const AffineWeight lam = random_weight(g, rng);
                const CartanElement x = random_element(g, rng);
                ASSERT_EQ(ar.pairing(lam, g.act_on_cartan(w, x)), ar.pairing(g.act(winv, lam), x));
            }
        }
    }
}

TEST(Weyl, FormIsInvariant) {
    std::mt19937_64 rng(17);
    auto g = group_of('C', 2);
    const auto& ar = g.affine();
    for (const auto& w : g.enumerate(6).elements) {
        const AffineWeight a = random_weight(g, rng), b = random_weight(g, rng);
        ASSERT_EQ(ar.form(g.act(w, a), g.act(w, b)), ar.form(a, b));
        const CartanElement x = random_element(g, rng), y = random_element(g, rng);
        ASSERT_EQ(ar.form(g.act_on_cartan(w, x), g.act_on_cartan(w, y)), ar.form(x, y));
    }
}

TEST(Weyl, CorootEquivariance) {
    for (auto [s, n, len] : std::vector<std::tuple<char, int, int>>{{'A', 2, 5}, {'G', 2, 5}}) {
        auto g = group_of(s, n);
        const auto& ar = g.affine();
        for (const auto& w : g.enumerate(len).elements)
            for (const auto& alpha : g.rs().positive_roots())
                for (int m = -len; m <= len; ++m)
                    for (const IVector& cl : {alpha, negate(alpha)}) {
                        const AffineRoot a{cl, m};
                        ASSERT_EQ(ar.coroot(g.act(w, a)), g.act_on_cartan(w, ar.coroot(a)));
                    }
    }
}

TEST(Weyl, MultiplyInverseAndAssociativity) {
    auto g = group_of('G', 2);
    const auto e = g.enumerate(4);
    for (std::size_t i = 0; i < e.elements.size(); i += 3)
        for (std::size_t j = 0; j < e.elements.size(); j += 5) {
            const auto& x = e.elements[i];
            const auto& y = e.elements[j];
            ASSERT_EQ(g.multiply(x, g.inverse(x)), g.identity());
            ASSERT_EQ(g.multiply(g.multiply(x, y), g.generator(2)), g.multiply(x, g.multiply(y, g.generator(2))));
            ASSERT_EQ(g.inverse(g.multiply(x, y)), g.multiply(g.inverse(y), g.inverse(x)));
        }
}

TEST(Weyl, JsonUsesOneBasedWords) {
    auto g = group_of('A', 1);
    const auto e = g.enumerate(2);
    const auto j = to_json(e.elements[1], e.elements[1].length);
    EXPECT_EQ(j["word"].size(), 1u);
    EXPECT_GE(j["word"][0].get<int>(), 1);
    EXPECT_TRUE(j.contains("tilde_matrix"));
}
