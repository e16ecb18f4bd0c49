#pragma once

// The acceptance suite: eight criteria, each producing a PASS/FAIL line and a
// JSON detail record. Shared by the acceptance binary and `loopcert reproduce-all`.

#include "loopcert/convergence.hpp"
#include "loopcert/decay.hpp"
#include "loopcert/inequalities.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>

namespace loopcert {

struct AcceptanceOptions {
    std::string profile = "small";
    std::uint64_t seed = 0;
    int threads = 0;
    int precision_bits = 256;

    bool full() const { return profile == "full"; }
    nlohmann::json to_json() const {
        return {{"profile", profile}, {"seed", seed}, {"precision_bits", precision_bits}};
    }
};

struct CriterionResult {
    int id = 0;
    std::string name;
    double limit_seconds = 0;
    double seconds = 0;
    std::vector<std::string> failures;
    nlohmann::json detail = nlohmann::json::object();
    std::map<std::string, nlohmann::json> reports;

    bool passed() const { return failures.empty(); }
};

namespace acceptance {

struct Sweep {
    RootType type;
    int max_len;
};

inline std::vector<Sweep> length_sweeps(const AcceptanceOptions& o) {
    std::vector<Sweep> s{{{'A', 1}, 40}, {{'A', 2}, 12}, {{'C', 2}, 12}, {{'G', 2}, 12}};
    if (o.full()) {
        s = {{{'A', 1}, 60}, {{'A', 2}, 16}, {{'C', 2}, 16}, {{'G', 2}, 16}, {{'A', 3}, 8}, {{'B', 3}, 8}, {{'D', 4}, 7}, {{'E', 6}, 5}};
    }
    return s;
}

inline void expect(CriterionResult& r, bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
}

inline CriterionResult length_formula(const AcceptanceOptions& o) {
    CriterionResult r{1, "length formula = BFS depth = inversion count", 60};
    auto rows = nlohmann::json::array();
    for (const auto& s : length_sweeps(o)) {
        AffineWeylGroup g(build_root_system(s.type));
        const auto e = g.enumerate(s.max_len);
        std::vector<char> bad(e.elements.size(), 0);
        parallel_for(e.elements.size(), o.threads, [&](std::size_t i) {
            const auto& w = e.elements[i];
            bad[i] = g.length_im(w) != w.length || static_cast<int>(g.inverted_roots_scan(w).size()) != w.length;
        });
        const auto mismatches = static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
        expect(r, mismatches == 0, s.type.name() + ": " + std::to_string(mismatches) + " length mismatches");
        rows.push_back({{"type", s.type.name()}, {"max_len", s.max_len}, {"elements", e.elements.size()}, {"mismatches", mismatches}});
    }
    r.detail["sweeps"] = rows;
    return r;
}

inline CriterionResult lemma23(const AcceptanceOptions& o) {
    CriterionResult r{2, "kappa_i(w^-1) <= l(w) + 1 with the A1 tight case", 60};
    bool tight_found = false;
    for (const auto& s : length_sweeps(o)) {
        AuditConfig c{s.type, s.max_len};
        c.threads = o.threads;
        const auto rep = verify_lemma23(c);
        expect(r, rep.passed(), s.type.name() + ": lemma23 violations");
        if (s.type == RootType{'A', 1})
            for (const auto& ex : rep.body["extremal_cases"])
                if (ex["word"] == nlohmann::json::array({2}) && ex["kappa"] == 2) tight_found = true;
        r.reports["lemma23_" + s.type.name()] = rep.body;
    }
    expect(r, tight_found, "tight case (A1, w2, kappa = 2) missing from the report");
    r.detail["tight_case_present"] = tight_found;
    return r;
}

inline CriterionResult lemma351(const AcceptanceOptions& o) {
    CriterionResult r{3, "Delta_{-,w^-1} = beta + n iota with beta > 0, n < 0", 60};
    for (const auto& s : length_sweeps(o)) {
        AuditConfig c{s.type, s.max_len};
        const auto rep = verify_lemma351(c);
        expect(r, rep.passed(), s.type.name() + ": lemma351 violations");
        r.reports["lemma351_" + s.type.name()] = rep.body;
    }
    return r;
}

inline AuditConfig audit_config(const AcceptanceOptions& o, RootType t, int max_len) {
    AuditConfig c{t, max_len};
    c.seed = o.seed;
    c.threads = o.threads;
    return c;
}

inline CriterionResult theorem(const TheoremAudit& a) {
    CriterionResult r{4, "sign and growth inequalities over affine A2", 300};
    const auto rep = verify_theorem(a);
    expect(r, rep.passed(), "thm32 violations: " + std::to_string(rep.body["violations"].size()));
    expect(r, a.c1 == 1, "C1 != 1 for a simply-laced type");
    expect(r, a.config.h1_samples >= 1000 && a.config.siegel_samples >= 100, "sample counts below 10^3 / 10^2");
    r.detail = {{"C1", to_json(a.c1)}, {"C2", to_json(a.c2)}, {"C3", to_json(a.c3)}, {"kostant_count", a.records.size()},
                {"h1_checks", a.h1_checks}, {"h3_checks", a.h3_checks}};
    r.reports["thm32_" + a.config.type.name()] = rep.body;
    return r;
}

inline CriterionResult corollary(const TheoremAudit& a) {
    CriterionResult r{5, "x >= D y^(-1/(C(l+1))) over the same sweep", 300};
    const auto rep = verify_corollary(a);
    expect(r, rep.passed(), "cor34 violations: " + std::to_string(rep.body["violations"].size()));
    r.detail = rep.body["constants"];
    r.detail["pairs_checked"] = rep.body["pairs_checked"];
    r.reports["cor34_" + a.config.type.name()] = rep.body;
    return r;
}

inline CertificateParams certificate_params(RootType t, const TheoremAudit& a, const Rational& re_nu, const Rational& nu0) {
    CertificateParams p;
    p.type = t;
    p.r = 8;
    p.re_nu = re_nu;
    p.nu0 = nu0;
    p.cap_d = 2 * (nu0 - re_nu);
    p.c1 = a.c1;
    p.c2 = a.c2;
    p.c3 = a.c3;
    p.resolve();
    return p;
}

inline CriterionResult entirety(const AcceptanceOptions& o, const std::map<std::string, TheoremAudit>& audits) {
    CriterionResult r{6, "shell maxima eventually decrease, partial sums stabilize", 120};
    auto rows = nlohmann::json::array();
    auto sensitivity = nlohmann::json::array();
    for (const auto& [t, max_len] : std::vector<std::pair<RootType, int>>{{{'A', 1}, 40}, {{'A', 2}, 14}}) {
        const auto& a = audits.at(t.name());
        const std::int64_t h = dual_coxeter(*build_root_system(t));
        for (const std::int64_t re : {std::int64_t{-10}, std::int64_t{0}, 2 * h}) {
            const auto p = certificate_params(t, a, Rational(re), Rational(2 * h + 1));
            const auto c = certify(p, max_len, o.threads, o.precision_bits);
            const std::string tag = t.name() + " re_nu=" + std::to_string(re);
            expect(r, c.decaying, tag + ": shell maxima not eventually decreasing");
            expect(r, c.stable_digits >= 6, tag + ": partial sum stable to " + std::to_string(c.stable_digits) + " digits");
            rows.push_back({{"type", t.name()}, {"re_nu", re}, {"max_len", max_len}, {"verdict", c.verdict()},
                            {"stable_digits", c.stable_digits}, {"log_partial_sum", to_string(c.log_partial_sum, 17)},
                            {"decreasing_one_step", c.decaying_one_step}});
            r.reports["certify_" + t.name() + "_re" + std::to_string(re)] = to_json(c);
            for (const std::int64_t extra : {2, 4}) {
                const auto q = certificate_params(t, a, Rational(re), Rational(2 * h + extra));
                const auto cq = certify(q, max_len, o.threads, o.precision_bits);
                sensitivity.push_back({{"type", t.name()}, {"re_nu", re}, {"nu0", 2 * h + extra}, {"verdict", cq.verdict()},
                                       {"log_partial_sum", to_string(cq.log_partial_sum, 17)}});
            }
        }
    }
    r.detail["certificates"] = rows;
    r.detail["nu0_sensitivity"] = sensitivity;
    return r;
}

inline CriterionResult decay_suite(const AcceptanceOptions& o) {
    CriterionResult r{7, "bump-function decay suite", 180};
    const int bits = o.precision_bits;
    {
        const auto n1 = l1_norm(1, bits);
        PrecisionScope prec(bits);
        const double err = to_double(abs(n1.value() - 2 / exp(Real(1))));
        expect(r, err < 1e-9, "||sigma'||_1 differs from 2/e by " + std::to_string(err));
        r.detail["first_derivative_error"] = err;
    }
    {
        auto ratios = nlohmann::json::array();
        Real first(0);
        bool ok = true;
        for (int n = 1; n <= 20; ++n) {
            const auto nn = l1_norm(n, bits);
            PrecisionScope prec(bits);
            const Real log_ratio = nn.log_value - 2 * n * log(Real(2 * n));
            if (n == 1) first = log_ratio;
            ok = ok && log_ratio <= first;
            ratios.push_back({{"n", n}, {"log_ratio", to_double(log_ratio)}});
        }
        expect(r, ok, "||sigma^(N)||_1 / (2N)^(2N) exceeds its N = 1 value");
        r.detail["norm_ratios"] = ratios;
    }
    {
        const auto fit = fourier_decay_fit(50, 400, 40, bits);
        const double target = std::sqrt(2 * M_PI);
        const double rel = std::abs(fit.exponent_coeff - target) / target;
        expect(r, rel <= 0.1, "Fourier exponent " + std::to_string(fit.exponent_coeff) + " off sqrt(2 pi) by " + std::to_string(rel));
        r.detail["fourier"] = {{"exponent_coeff", fit.exponent_coeff}, {"exponent_coeff_all_points", fit.exponent_coeff_all},
                               {"free_exponent_coeff", fit.free_exponent_coeff}, {"free_power", fit.free_power},
                               {"peaks", fit.peaks.size()}, {"relative_error", rel}};
    }
    {
        const auto p = parseval_check(4);
        expect(r, p.relative_difference < 1e-6, "Parseval at N = 4 off by " + std::to_string(p.relative_difference));
        r.detail["parseval"] = {{"fourier_side", p.fourier_side}, {"derivative_side", p.derivative_side},
                                {"relative_difference", p.relative_difference}};
    }
    {
        PrecisionScope prec(bits);
        const auto b = moment_to_pointwise({1, 1}, Real(20));
        const double ratio = to_double(b.log_bound / exp(Real(20)));
        const double rel = std::abs(ratio + std::exp(-1.0)) * std::exp(1.0);
        expect(r, rel <= 0.02, "conversion asymptote off -1/e by " + std::to_string(rel));
        const auto fit = moment_exponent_fit({1, 1});
        expect(r, fit.d >= 0.99, "fitted conversion exponent " + std::to_string(fit.d) + " < 1/C - 0.01");
        r.detail["conversion"] = {{"best_n", b.best_n}, {"ratio", ratio}, {"relative_error", rel}, {"fitted_d", fit.d}};
    }
    return r;
}

inline CriterionResult structural(const AcceptanceOptions& o) {
    CriterionResult r{8, "structural cross-oracles", 120};
    const std::vector<std::pair<RootType, int>> table{{{'A', 1}, 2}, {{'A', 2}, 3}, {{'D', 4}, 6}, {{'E', 8}, 30}};
    for (const auto& [t, h] : table) {
        const auto rs = build_root_system(t);
        const auto a = dual_coxeter(*rs), b = dual_coxeter_via_form(*rs);
        expect(r, a == h && b == h, "dual Coxeter number of " + t.name());
        r.detail["dual_coxeter"][t.name()] = {a, b};
    }
    std::size_t compared = 0;
    for (const auto& s : length_sweeps(o)) {
        AffineWeylGroup g(build_root_system(s.type));
        const auto e = g.enumerate(s.max_len);
        std::vector<char> bad(e.elements.size(), 0);
        parallel_for(e.elements.size(), o.threads, [&](std::size_t i) {
            bad[i] = g.inverted_roots_word(e.elements[i]) != g.inverted_roots_scan(e.elements[i]);
        });
        compared += e.elements.size();
        expect(r, std::count(bad.begin(), bad.end(), 1) == 0, s.type.name() + ": word and scan inverted roots differ");
    }
    r.detail["inverted_root_sets_compared"] = compared;
    // <lambda, w X> = <w^-1 lambda, X> on random triples
    std::size_t pairs = 0, failures = 0;
    const std::vector<RootType> types{{'A', 2}, {'C', 2}, {'G', 2}};
    for (std::size_t k = 0; k < types.size(); ++k) {
        AffineWeylGroup g(build_root_system(types[k]));
        const auto& ar = g.affine();
        const auto e = g.enumerate(8);
        auto rng = stream_rng(o.seed, k, 8);
        auto small = [&]() { return make_rational(static_cast<long>(draw_below(rng, 19)) - 9, static_cast<long>(draw_below(rng, 5)) + 1); };
        const std::size_t n = k + 1 == types.size() ? 1000 - pairs : 1000 / types.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& w = e.elements[draw_below(rng, e.elements.size())];
            AffineWeight lam{ar.zero_weight(), small(), small()};
            for (auto& c : lam.classical.coords) c = small();
            CartanElement x{ar.zero_coweight(), small(), small()};
            for (auto& c : x.classical.coords) c = small();
            if (ar.pairing(lam, g.act_on_cartan(w, x)) != ar.pairing(g.act(g.inverse(w), lam), x)) ++failures;
            ++pairs;
        }
    }
    expect(r, failures == 0, "duality fails on " + std::to_string(failures) + " pairs");
    r.detail["duality_pairs"] = pairs;
    return r;
}

}  // namespace acceptance

/// Runs every criterion in order, printing one PASS/FAIL line per criterion.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o, std::ostream& log) {
    std::vector<CriterionResult> out;
    auto timed = [&](const std::function<CriterionResult()>& f) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = f();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.full() && r.seconds > r.limit_seconds)
            r.failures.push_back("runtime " + std::to_string(r.seconds) + " s exceeds " + std::to_string(r.limit_seconds) + " s");
        log << (r.passed() ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " (" << std::fixed
            << std::setprecision(1) << r.seconds << " s)";
        for (const auto& f : r.failures) log << "\n    " << f;
        log << std::endl;
        out.push_back(std::move(r));
    };
    timed([&] { return acceptance::length_formula(o); });
    timed([&] { return acceptance::lemma23(o); });
    timed([&] { return acceptance::lemma351(o); });
    std::map<std::string, TheoremAudit> audits;
    timed([&] {
        audits.emplace("A2", run_theorem_audit(acceptance::audit_config(o, {'A', 2}, o.full() ? 10 : 8)));
        return acceptance::theorem(audits.at("A2"));
    });
    timed([&] { return acceptance::corollary(audits.at("A2")); });
    timed([&] {
        audits.emplace("A1", run_theorem_audit(acceptance::audit_config(o, {'A', 1}, 16)));
        return acceptance::entirety(o, audits);
    });
    timed([&] { return acceptance::decay_suite(o); });
    timed([&] { return acceptance::structural(o); });
    return out;
}

inline nlohmann::json acceptance_summary(const AcceptanceOptions& o, const std::vector<CriterionResult>& results) {
    auto rows = nlohmann::json::array();
    auto failures = nlohmann::json::array();
    for (const auto& r : results) {
        rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed()}, {"failures", r.failures}, {"detail", r.detail}});
        for (const auto& f : r.failures) failures.push_back("criterion " + std::to_string(r.id) + ": " + f);
    }
    return {{"config", o.to_json()}, {"criteria", rows}, {"failures", failures}};
}

}  // namespace loopcert
