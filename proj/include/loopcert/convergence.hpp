#pragma once

// Domination certificate for the per-cell bound terms
//   ln term(w) = C1 N ln(C1 N) - N ln D + a p_w,
//   N = ceil(d C2 (l(w)+1)),  a = d + Re nu - nu0,  p_w = -r (b,b)/2 + C3 (l(w)+1),
// summed over Kostant representatives by length shell.

#include "loopcert/numeric.hpp"
#include "loopcert/parallel.hpp"
#include "loopcert/weyl.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace loopcert {

/// 1 + <rho, h_{alpha_0}>.
inline std::int64_t dual_coxeter(const FiniteRootSystem& rs) {
    Rational s = 1 + rs.pairing(rs.rho(), CorootVector{to_rational(rs.coroot(rs.highest_root()))});
    if (s.get_den() != 1) throw std::logic_error("dual Coxeter number is not integral");
    return s.get_num().get_si();
}

/// 1 + (alpha_0, rho) with (alpha_0, alpha_0) = 2.
inline std::int64_t dual_coxeter_via_form(const FiniteRootSystem& rs) {
    Rational s = 1 + rs.form(Weight{to_rational(rs.highest_root())}, rs.rho());
    if (s.get_den() != 1) throw std::logic_error("dual Coxeter number is not integral");
    return s.get_num().get_si();
}

struct CertificateParams {
    RootType type{'A', 1};
    Rational r = 1;
    Rational re_nu = 0;
    std::optional<Rational> nu0;  // default 2h + 1
    Rational c1 = 1;
    Rational c2 = 1;
    Rational c3 = 1;
    std::optional<Rational> cap_d;  // default: smallest d > nu0 - re_nu with d c2 integral
    Rational big_d = 1;

    /// Fills defaults and checks the invariants; throws std::invalid_argument.
    void resolve() {
        const auto rs = build_root_system(type);
        const std::int64_t h = dual_coxeter(*rs);
        if (!nu0) nu0 = Rational(2 * h + 1);
        if (*nu0 <= 2 * h) throw std::invalid_argument("nu0 must exceed 2h∨ = " + std::to_string(2 * h));
        if (r <= 0) throw std::invalid_argument("r must be positive");
        if (c1 <= 0 || c2 <= 0 || c3 <= 0) throw std::invalid_argument("c1, c2, c3 must be positive");
        if (big_d <= 0) throw std::invalid_argument("big-d must be positive");
        const Rational gap = *nu0 - re_nu;
        if (!cap_d) {
            // smallest k/c2 > gap with k a positive integer
            const Rational k = gap * c2;
            Integer n = k.get_num() / k.get_den();
            if (k >= 0) n += 1;
            if (n < 1) n = 1;
            cap_d = Rational(n) / c2;
        }
        if (*cap_d <= 0) throw std::invalid_argument("d must be positive");
        if (*cap_d <= gap)
            throw std::invalid_argument("d must exceed nu0 - re_nu = " + to_string(gap));
    }

    Rational a() const { return *cap_d + re_nu - *nu0; }

    nlohmann::json to_json() const {
        return {{"type", type.name()},
                {"r", loopcert::to_json(r)},
                {"re_nu", loopcert::to_json(re_nu)},
                {"nu0", nu0 ? loopcert::to_json(*nu0) : nlohmann::json(nullptr)},
                {"c1", loopcert::to_json(c1)},
                {"c2", loopcert::to_json(c2)},
                {"c3", loopcert::to_json(c3)},
                {"d", cap_d ? loopcert::to_json(*cap_d) : nlohmann::json(nullptr)},
                {"big_d", loopcert::to_json(big_d)}};
    }
};

/// Takes C2, C3 and D from a thm32/cor34 report; D is replaced by a rational
/// lower bound of exp(ln D), which only enlarges every term.
inline void apply_report_constants(CertificateParams& p, const nlohmann::json& report) {
    const auto& c = report.at("constants");
    if (c.contains("C2") && rational_from_json(c.at("C2")) > 0) p.c2 = rational_from_json(c.at("C2"));
    if (c.contains("C3") && rational_from_json(c.at("C3")) > 0) p.c3 = rational_from_json(c.at("C3"));
    if (c.contains("ln_D")) p.big_d = exp_bounds(rational_from_json(c.at("ln_D"))).lo;
}

struct CellBound {
    AffineWeylElement w;
    int length = 0;
    Rational p_w;
    Integer n;
    Real log_term;
};

/// Exact part of a cell bound: N and p_w.
inline CellBound cell_bound_exact(const AffineWeylGroup& g, const AffineWeylElement& w, const CertificateParams& p) {
    CellBound c;
    c.w = w;
    c.length = g.length_of(w);
    const CorootVector b{to_rational(w.b)};
    c.p_w = -p.r * g.rs().coform(b, b) / 2 + p.c3 * (c.length + 1);
    const Rational nq = *p.cap_d * p.c2 * (c.length + 1);
    c.n = nq.get_num() / nq.get_den();
    if (c.n * nq.get_den() != nq.get_num()) c.n += 1;
    return c;
}

inline void fill_log_term(CellBound& c, const CertificateParams& p) {
    const Real cn = to_real(p.c1 * Rational(c.n));
    const Real ln_d = log(to_real(p.big_d));
    c.log_term = cn * log(cn) - to_real(Rational(c.n)) * ln_d + to_real(p.a() * c.p_w);
}

/// Requires resolved params; log_term evaluated at the current default precision.
inline CellBound cell_bound(const AffineWeylGroup& g, const AffineWeylElement& w, const CertificateParams& p) {
    if (!g.is_kostant(w)) throw std::invalid_argument("cell_bound: element is not a Kostant representative");
    CellBound c = cell_bound_exact(g, w, p);
    fill_log_term(c, p);
    return c;
}

/// ln(sum_i exp(x_i)) with terms added in descending order (or ascending with `reverse`).
inline Real log_sum_sorted(std::vector<Real> xs, bool reverse = false) {
    if (xs.empty()) return Real(-std::numeric_limits<double>::infinity());
    std::sort(xs.begin(), xs.end(), [](const Real& a, const Real& b) { return a > b; });
    if (reverse) std::reverse(xs.begin(), xs.end());
    Real m = xs.front();
    for (const auto& x : xs) m = x > m ? x : m;
    CompensatedSum s;
    for (const auto& x : xs) s.add(exp(x - m));
    return m + log(s.value());
}

struct Shell {
    int length = 0;
    std::size_t count = 0;
    Real max_log_term;
    Real log_shell_sum;
    Real log_partial_sum;
};

struct Certificate {
    CertificateParams params;
    int max_len = 0;
    int precision_bits = 256;
    std::vector<Shell> shells;
    std::vector<CellBound> cells;
    Real log_partial_sum;
    std::vector<double> fit;  // quad, lin, const of max_log_term vs length
    std::optional<double> log_tail_estimate;
    double stable_digits = 0;
    bool decaying = false;
    bool decaying_one_step = false;

    std::string verdict() const { return decaying ? "DECAYING" : "NON-DECAYING"; }
};

/// Shell maxima satisfy max(l + step) < max(l) over the last third of the range.
/// Representatives of lengths 2k-1 and 2k share b, so step = 1 cannot hold for
/// consecutive shells; step = 2 compares shells with distinct translations.
inline bool shell_maxima_decrease(const std::vector<Shell>& shells, std::size_t step = 2) {
    if (shells.size() < 3 * step + 1) return false;
    const std::size_t last = shells.size() - 1;
    const std::size_t from = last - std::max<std::size_t>(last / 3, 2 * step);
    for (std::size_t i = from; i + step <= last; ++i)
        if (!(shells[i + step].max_log_term < shells[i].max_log_term)) return false;
    return true;
}

inline Certificate certify(CertificateParams params, int max_len, int threads = 0, int precision_bits = 256) {
    params.resolve();
    if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
    PrecisionScope prec(precision_bits);
    AffineWeylGroup g(build_root_system(params.type));
    const auto e = g.enumerate(max_len);
    Certificate cert;
    cert.params = params;
    cert.max_len = max_len;
    cert.precision_bits = precision_bits;
    std::vector<std::optional<CellBound>> slots(e.elements.size());
    parallel_for(e.elements.size(), threads, [&](std::size_t i) {
        if (g.is_kostant(e.elements[i])) slots[i] = cell_bound_exact(g, e.elements[i], params);
    });
    for (auto& s : slots)
        if (s) {
            fill_log_term(*s, params);
            cert.cells.push_back(std::move(*s));
        }
    std::vector<Real> all;
    for (int len = 0; len <= max_len; ++len) {
        Shell sh;
        sh.length = len;
        std::vector<Real> terms;
        for (const auto& c : cert.cells)
            if (c.length == len) terms.push_back(c.log_term);
        sh.count = terms.size();
        if (terms.empty()) continue;
        sh.max_log_term = *std::max_element(terms.begin(), terms.end());
        sh.log_shell_sum = log_sum_sorted(terms);
        all.insert(all.end(), terms.begin(), terms.end());
        sh.log_partial_sum = log_sum_sorted(all);
        cert.shells.push_back(std::move(sh));
    }
    cert.log_partial_sum = log_sum_sorted(all);
    if (cert.shells.size() >= 3) {
        std::vector<std::vector<Real>> design;
        std::vector<Real> y;
        for (const auto& sh : cert.shells) {
            const Real l(sh.length);
            design.push_back({l * l, l, Real(1)});
            y.push_back(sh.max_log_term);
        }
        for (const auto& c : least_squares(design, y)) cert.fit.push_back(to_double(c));
    }
    cert.decaying = shell_maxima_decrease(cert.shells, 2);
    cert.decaying_one_step = shell_maxima_decrease(cert.shells, 1);
    // tail: sum over l > max_len of A (l+1)^(rank-1) exp(fit(l)), A from the observed counts
    if (cert.fit.size() == 3 && cert.fit[0] < 0) {
        const int k = params.type.rank - 1;
        double amp = 0;
        for (const auto& sh : cert.shells)
            amp = std::max(amp, static_cast<double>(sh.count) / std::pow(sh.length + 1.0, k));
        std::vector<Real> tail;
        for (int len = max_len + 1; len <= max_len + 100000; ++len) {
            const double f = cert.fit[0] * len * len + cert.fit[1] * len + cert.fit[2];
            tail.push_back(Real(std::log(amp) + k * std::log(len + 1.0) + f));
            if (len > max_len + 10 && f < to_double(cert.log_partial_sum) - 200) break;
        }
        cert.log_tail_estimate = to_double(log_sum_sorted(tail));
    }
    // significant digits shared by the partial sums at 2/3 of the range and at the end
    const int ref = (2 * max_len) / 3;
    Real before(-std::numeric_limits<double>::infinity());
    for (const auto& sh : cert.shells)
        if (sh.length <= ref) before = sh.log_partial_sum;
    const Real rel = -expm1(before - cert.log_partial_sum);
    cert.stable_digits = rel > 0 ? std::min(100.0, -to_double(log10(rel))) : 100.0;
    return cert;
}

inline nlohmann::json to_json(const Certificate& c) {
    auto shells = nlohmann::json::array();
    for (const auto& sh : c.shells)
        shells.push_back({{"length", sh.length},
                          {"count", sh.count},
                          {"max_log_term", to_string(sh.max_log_term, 17)},
                          {"shell_sum", to_string(exp(sh.log_shell_sum), 17)},
                          {"log_shell_sum", to_string(sh.log_shell_sum, 17)},
                          {"log_partial_sum", to_string(sh.log_partial_sum, 17)}});
    nlohmann::json fit = nullptr;
    if (c.fit.size() == 3) fit = {{"quad", c.fit[0]}, {"lin", c.fit[1]}, {"const", c.fit[2]}};
    return {{"params", c.params.to_json()},
            {"a", to_json(c.params.a())},
            {"max_len", c.max_len},
            {"precision_bits", c.precision_bits},
            {"note", "terms bound the per-cell supremum over Kostant representatives; coset multiplicities are not modeled"},
            {"shells", shells},
            {"partial_sum", to_string(exp(c.log_partial_sum), 20)},
            {"log_partial_sum", to_string(c.log_partial_sum, 20)},
            {"tail_fit", fit},
            {"log_tail_estimate", c.log_tail_estimate ? nlohmann::json(*c.log_tail_estimate) : nlohmann::json(nullptr)},
            {"stable_digits", c.stable_digits},
            {"decreasing_two_step", c.decaying},
            {"decreasing_one_step", c.decaying_one_step},
            {"verdict", c.verdict()}};
}

/// length,word,log_term
inline std::string certificate_csv(const Certificate& c) {
    std::ostringstream os;
    os << "length,word,log_term\n";
    for (const auto& cell : c.cells) {
        os << cell.length << ',';
        for (std::size_t i = 0; i < cell.w.word.size(); ++i) os << (i ? " " : "") << cell.w.word[i] + 1;
        os << ',' << to_string(cell.log_term, 17) << '\n';
    }
    return os.str();
}

struct Census {
    RootType type;
    std::vector<std::size_t> all;
    std::vector<std::size_t> kostant;
};

inline Census growth_census(const RootType& t, int max_len, int threads = 0) {
    AffineWeylGroup g(build_root_system(t));
    const auto e = g.enumerate(max_len);
    Census c{t, e.counts(), std::vector<std::size_t>(max_len + 1, 0)};
    std::vector<char> flags(e.elements.size(), 0);
    parallel_for(e.elements.size(), threads, [&](std::size_t i) { flags[i] = g.is_kostant(e.elements[i]); });
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i]) ++c.kostant[g.length_of(e.elements[i])];
    return c;
}

/// Least squares slope c of counts(n) ~ c n over n >= 1.
inline double linear_growth_coefficient(const std::vector<std::size_t>& counts) {
    double num = 0, den = 0;
    for (std::size_t n = 1; n < counts.size(); ++n) {
        num += static_cast<double>(n) * counts[n];
        den += static_cast<double>(n) * n;
    }
    return den > 0 ? num / den : 0;
}

inline nlohmann::json to_json(const Census& c) {
    return {{"type", c.type.name()}, {"max_len", c.all.size() - 1}, {"all", c.all}, {"kostant", c.kostant}};
}

}  // namespace loopcert
