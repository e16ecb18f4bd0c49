#include "loopcert/convergence.hpp"
#include "loopcert/inequalities.hpp"

#include <gtest/gtest.h>

using namespace loopcert;

namespace {

CertificateParams a1_example() {
    CertificateParams p;
    p.type = RootType{'A', 1};
    p.nu0 = 5;
    p.cap_d = 6;
    p.resolve();
    return p;
}

double log_term_double(const CellBound& c) { return to_double(c.log_term); }

}  // namespace

TEST(Convergence, DualCoxeterTwoWays) {
    const std::vector<std::pair<RootType, int>> table{
        {{'A', 1}, 2}, {{'A', 2}, 3}, {{'D', 4}, 6}, {{'E', 8}, 30}, {{'B', 3}, 5}, {{'C', 3}, 4}, {{'G', 2}, 4}, {{'F', 4}, 9}, {{'E', 6}, 12}, {{'E', 7}, 18}};
    for (const auto& [t, h] : table) {
        const auto rs = build_root_system(t);
        EXPECT_EQ(dual_coxeter(*rs), h) << t.name();
        EXPECT_EQ(dual_coxeter_via_form(*rs), h) << t.name();
    }
}

TEST(Convergence, ParamsDefaultsAndValidation) {
    CertificateParams p;
    p.type = RootType{'A', 1};
    p.resolve();
    EXPECT_EQ(*p.nu0, 5);
    EXPECT_EQ(*p.cap_d, 6);
    EXPECT_EQ(p.a(), 1);
    CertificateParams bad;
    bad.type = RootType{'A', 1};
    bad.nu0 = 1;
    try {
        bad.resolve();
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("must exceed 2h∨ = 4"), std::string::npos);
    }
    CertificateParams low_d = a1_example();
    low_d.cap_d = 5;
    EXPECT_THROW(low_d.resolve(), std::invalid_argument);
    CertificateParams q;
    q.type = RootType{'A', 2};
    q.c2 = make_rational(1, 4);
    q.re_nu = -10;
    q.resolve();
    EXPECT_GT(*q.cap_d, *q.nu0 - q.re_nu);
    EXPECT_EQ(Rational(*q.cap_d * q.c2).get_den(), 1);
    EXPECT_THROW(certify(low_d, 4), std::invalid_argument);
}

TEST(Convergence, CellBoundExamples) {
    PrecisionScope prec(256);
    const auto p = a1_example();
    AffineWeylGroup g(build_root_system('A', 1));
    const auto id = cell_bound(g, g.identity(), p);
    EXPECT_EQ(id.n, 6);
    EXPECT_EQ(id.p_w, 1);
    EXPECT_NEAR(log_term_double(id), 6 * std::log(6.0) + 1, 1e-12);
    const auto w2 = cell_bound(g, g.from_word({1}), p);
    EXPECT_EQ(w2.length, 1);
    EXPECT_EQ(w2.n, 12);
    EXPECT_EQ(w2.p_w, 1);  // -(h,h)/2 + 2 with (h_alpha, h_alpha) = 2
    EXPECT_NEAR(log_term_double(w2), 12 * std::log(12.0) + 1, 1e-12);
    EXPECT_THROW(cell_bound(g, g.from_word({0}), p), std::invalid_argument);
}

TEST(Convergence, NRoundsUp) {
    PrecisionScope prec(128);
    auto p = a1_example();
    p.c2 = make_rational(1, 3);
    p.cap_d = 7;
    AffineWeylGroup g(build_root_system('A', 1));
    EXPECT_EQ(cell_bound(g, g.identity(), p).n, 3);  // ceil(7/3)
}

TEST(Convergence, LogTermDecreasesWithR) {
    PrecisionScope prec(256);
    auto p = a1_example();
    auto q = p;
    q.r = 2;
    for (auto [s, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}}) {
        p.type = q.type = RootType{s, n};
        p.nu0.reset();
        q.nu0.reset();
        p.cap_d.reset();
        q.cap_d.reset();
        p.resolve();
        q.resolve();
        AffineWeylGroup g(build_root_system(s, n));
        for (const auto& w : kostant_elements(g, g.enumerate(8))) {
            const auto lp = cell_bound(g, w, p).log_term;
            const auto lq = cell_bound(g, w, q).log_term;
            if (g.length_of(w) >= 1)
                EXPECT_LT(lq, lp);
            else
                EXPECT_EQ(lq, lp);
        }
    }
}

TEST(Convergence, SumOrderIndependence) {
    PrecisionScope prec(256);
    std::vector<Real> xs;
    for (int i = 0; i < 500; ++i) xs.push_back(Real(std::sin(i * 1.7) * 40));
    const Real f = log_sum_sorted(xs, false);
    const Real r = log_sum_sorted(xs, true);
    EXPECT_LT(to_double(abs(expm1(f - r))), 1e-12);
}

TEST(Convergence, CertifyA1Defaults) {
    CertificateParams p;
    p.type = RootType{'A', 1};
    const auto c = certify(p, 40);
    EXPECT_EQ(c.shells.size(), 41u);
    for (const auto& sh : c.shells) EXPECT_EQ(sh.count, 1u);
    const auto j = to_json(c);
    EXPECT_TRUE(j.contains("tail_fit"));
    EXPECT_TRUE(j["verdict"] == "DECAYING" || j["verdict"] == "NON-DECAYING");
    EXPECT_FALSE(c.decaying_one_step);
    const std::string csv = certificate_csv(c);
    EXPECT_EQ(csv.rfind("length,word,log_term\n", 0), 0u);
}

TEST(Convergence, ConsecutiveShellsShareTranslations) {
    AffineWeylGroup g(build_root_system('A', 1));
    const auto ks = kostant_elements(g, g.enumerate(20));
    std::map<int, IVector> by_len;
    for (const auto& w : ks) by_len[g.length_of(w)] = w.b;
    for (int k = 1; k <= 10; ++k) {
        const CorootVector x{to_rational(by_len[2 * k - 1])}, y{to_rational(by_len[2 * k])};
        EXPECT_EQ(g.rs().coform(x, x), g.rs().coform(y, y));
    }
}

TEST(Convergence, DeepLeftHalfPlaneStillConverges) {
    CertificateParams p;
    p.type = RootType{'A', 1};
    p.r = 8;
    p.re_nu = -10;
    p.c2 = make_rational(1, 2);
    p.c3 = 2;
    p.nu0 = 5;
    p.cap_d = 30;
    const auto c = certify(p, 40);
    EXPECT_TRUE(c.decaying);
    EXPECT_GE(c.stable_digits, 6);
    ASSERT_EQ(c.fit.size(), 3u);
    EXPECT_LT(c.fit[0], 0);
}

TEST(Convergence, DeterministicAcrossThreads) {
    CertificateParams p;
    p.type = RootType{'A', 2};
    p.r = 4;
    EXPECT_EQ(to_json(certify(p, 10, 1)).dump(), to_json(certify(p, 10, 4)).dump());
}

TEST(Convergence, PwBoundsAuditedLambda) {
    AuditConfig cfg{RootType{'A', 2}, 6};
    cfg.h1_samples = 30;
    cfg.siegel_samples = 20;
    cfg.seed = 4;
    const auto audit = run_theorem_audit(cfg);
    CertificateParams p;
    p.type = cfg.type;
    p.r = cfg.r;
    p.c2 = audit.c2;
    p.c3 = audit.c3;
    p.resolve();
    InequalityEngine eng(build_root_system(cfg.type));
    for (const auto& rec : audit.records) {
        const auto cb = cell_bound_exact(eng.group(), rec.w, p);
        for (const auto& [r1, l1] : rec.h1)
            for (const auto& [r3, l3] : rec.h3) ASSERT_LE(l1 + rec.h2.second + l3, cb.p_w);
    }
}

TEST(Convergence, ReportConstantsApply) {
    nlohmann::json rep = {{"constants", {{"C2", to_json(make_rational(1, 4))}, {"C3", to_json(Rational(3))}, {"ln_D", to_json(Rational(-2))}}}};
    CertificateParams p;
    apply_report_constants(p, rep);
    EXPECT_EQ(p.c2, make_rational(1, 4));
    EXPECT_EQ(p.c3, 3);
    EXPECT_LT(p.big_d, std::exp(-2.0));
    EXPECT_GT(p.big_d, std::exp(-2.0) - 1e-15);
}

TEST(Convergence, CensusExamples) {
    const auto a1 = growth_census(RootType{'A', 1}, 10);
    EXPECT_EQ(a1.all, (std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(a1.kostant, std::vector<std::size_t>(11, 1));
    const auto zero = growth_census(RootType{'A', 2}, 0);
    EXPECT_EQ(zero.all, std::vector<std::size_t>{1});
    EXPECT_EQ(zero.kostant, std::vector<std::size_t>{1});
    const auto a2 = growth_census(RootType{'A', 2}, 20);
    const double c = linear_growth_coefficient(a2.all);
    double worst = 0;
    for (std::size_t n = 1; n < a2.all.size(); ++n) {
        EXPECT_LE(a2.kostant[n], a2.all[n]);
        worst = std::max(worst, a2.all[n] / static_cast<double>(n));
    }
    EXPECT_GT(c, 0);
    EXPECT_LE(worst, 2 * c);
}
