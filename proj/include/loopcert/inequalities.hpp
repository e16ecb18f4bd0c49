#pragma once

// Checks of the Iwasawa-component inequalities over Kostant representatives.
//
// H1 = sum c_gamma h_gamma over Delta_{-,w^{-1}} with c_gamma >= 0,
// H2 = w(rD) - rD, H3 = w H_g for a sample H_g from a Siegel set.
// All vector arithmetic is exact; ln t enters only through rational bounds.

#include "loopcert/numeric.hpp"
#include "loopcert/parallel.hpp"
#include "loopcert/weyl.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loopcert {

struct H1Sample {
    std::vector<std::pair<AffineRoot, Rational>> coeffs;  // support must lie in Delta_{-,w^{-1}}
};

/// H_g has d = 0; its h_iota coordinate is <Lambda_{l+1}, H_g>.
struct SiegelSample {
    Rational r;
    Rational t;
    CartanElement h_g;

    const Rational& lambda_pairing() const { return h_g.h_iota; }
};

struct H1Result {
    CartanElement h;
    Rational lambda;  // <Lambda_{l+1}, H1>
    Rational rho;     // <rho, H1>
    Rational mbound;  // -sum_j m_j <omega_j, H1> kappa_j
    bool omega_nonneg = true;
    bool lambda_sign = true;
    bool mbound_ok = true;
    bool growth_ok = true;

    bool ok() const { return omega_nonneg && lambda_sign && mbound_ok && growth_ok; }
};

struct H2Result {
    CartanElement h;
    std::vector<Rational> d;  // <alpha_j, w~ b>
    std::vector<Rational> q;  // <omega_j, w~ b>
    Rational lambda;
    Rational rho;
    Rational ratio;  // -<Lambda, H2> / ((l(w)+1) <rho, H2>), 0 when H2 = 0
    bool d_ok = true;
    bool q_ok = true;
    bool omega_nonneg = true;
    bool norm_identity = true;  // (w~b, w~b) = sum 2/(alpha_i,alpha_i) d_i q_i

    bool ok() const { return d_ok && q_ok && omega_nonneg && norm_identity; }
};

/// Rational data derived from (r, t): enclosure of ln t, bounds Y_k >= |<alpha_k, H_gcl>|
/// and the constant E bounding |<omega_j, H3>|.
struct SiegelBounds {
    Rational r;
    Rational t;
    RationalInterval ln_t;
    std::vector<Rational> y_bound;
    Rational e;
};

struct H3Result {
    CartanElement h;
    Rational lambda;
    Rational rho;
    Rational max_abs_omega;
    Rational c3_bound;  // |lambda_g| + ||H_gcl|| |Delta_+| / E'
    bool e_ok = true;
    bool c3_ok = true;
    bool matches_action = true;

    bool ok() const { return e_ok && c3_ok && matches_action; }
};

/// Constants of the two-sided length bound E' ||b|| - |Delta_+| <= l(w) <= E ||b|| + |Delta_+|.
struct LengthBoundConstants {
    Rational e_sq;        // E^2: max (l - P)^2 / (b,b) over l > P
    Rational e_prime_sq;  // E'^2: min (l + P)^2 / (b,b) over b != 0
    Rational e_upper;     // rational upper bound of E
    Rational e_prime_lower;
    std::size_t checked = 0;
    bool ok = true;
};

class InequalityEngine {
  public:
    explicit InequalityEngine(std::shared_ptr<const FiniteRootSystem> rs) : group_(std::move(rs)) {
        c1_ = 0;
        for (const auto& a : group_.rs().positive_roots()) c1_ = std::max(c1_, Rational(Rational(2) / group_.rs().norm2(a)));
    }

    const AffineWeylGroup& group() const { return group_; }
    const FiniteRootSystem& rs() const { return group_.rs(); }
    int rank() const { return group_.rank(); }

    /// max over roots of 2/(alpha,alpha); 1 in the simply-laced case.
    const Rational& c1() const { return c1_; }

    /// Delta_{-,w^{-1}} = {gamma < 0 : w^{-1} gamma > 0}.
    std::vector<AffineRoot> support(const AffineWeylElement& w) const { return group_.neg_inverted(group_.inverse(w)); }

    /// Every gamma has classical part in Delta_+ and n < 0; returns offending roots.
    std::vector<AffineRoot> shape_violations(const AffineWeylElement& w) const {
        std::vector<AffineRoot> bad;
        for (const auto& g : support(w))
            if (!rs().is_positive_root(g.classical) || g.n >= 0) bad.push_back(g);
        return bad;
    }

    H1Result h1_vector(const AffineWeylElement& w, const H1Sample& sample) const {
        if (!group_.is_kostant(w)) throw std::invalid_argument("h1_vector: element is not a Kostant representative");
        const auto supp = support(w);
        const auto& ar = group_.affine();
        H1Result out;
        out.h = CartanElement{ar.zero_coweight(), 0, 0};
        bool any_positive = false;
        for (const auto& [gamma, c] : sample.coeffs) {
            if (c < 0) throw std::invalid_argument("h1_vector: negative coefficient");
            if (!std::binary_search(supp.begin(), supp.end(), gamma))
                throw std::invalid_argument("h1_vector: coefficient outside Delta_{-,w^{-1}}");
            if (c > 0) any_positive = true;
            out.h = out.h + c * ar.coroot(gamma);
        }
        const int l = rank();
        const int len = group_.length_of(w);
        out.lambda = out.h.h_iota;
        out.rho = 0;
        for (int j = 0; j < l; ++j) {
            out.rho += out.h.classical.coords[j];
            if (out.h.classical.coords[j] < 0) out.omega_nonneg = false;
        }
        out.lambda_sign = any_positive ? out.lambda < 0 : out.lambda == 0;
        const auto kap = group_.kappa(w);
        out.mbound = 0;
        for (int j = 0; j < l; ++j) {
            const Rational m = Rational(2) / rs().norm2(kap[j].sigma);
            out.mbound -= m * out.h.classical.coords[j] * to_rational(kap[j].kappa);
        }
        out.mbound_ok = out.mbound <= out.lambda;
        out.growth_ok = out.lambda >= -c1_ * (len + 1) * out.rho;
        return out;
    }

    H2Result h2_vector(const AffineWeylElement& w, const Rational& r) const {
        if (!group_.is_kostant(w)) throw std::invalid_argument("h2_vector: element is not a Kostant representative");
        if (r <= 0) throw std::invalid_argument("h2_vector: r must be positive");
        const auto& ar = group_.affine();
        H2Result out;
        out.h = group_.act_on_cartan(w, r * ar.degree()) - r * ar.degree();
        const int l = rank();
        const CorootVector wb{to_rational(w.tilde.coroots * w.b)};
        for (int j = 0; j < l; ++j) {
            out.d.push_back(rs().pairing(Weight{to_rational(rs().simple_root(j))}, wb));
            out.q.push_back(rs().pairing(rs().fundamental_weight(j), wb));
            if (out.d.back() > 0) out.d_ok = false;
            if (out.q.back() > 0) out.q_ok = false;
            if (out.h.classical.coords[j] < 0) out.omega_nonneg = false;
        }
        Rational norm = 0;
        for (int j = 0; j < l; ++j) norm += Rational(2) / rs().simple_norm2(j) * out.d[j] * out.q[j];
        out.norm_identity = norm == rs().coform(wb, wb);
        out.lambda = out.h.h_iota;
        out.rho = 0;
        for (const auto& c : out.h.classical.coords) out.rho += c;
        const int len = group_.length_of(w);
        out.ratio = out.rho == 0 ? Rational(0) : -out.lambda / ((len + 1) * out.rho);
        return out;
    }

    SiegelBounds siegel_bounds(const Rational& r, const Rational& t) const {
        if (r <= 0) throw std::invalid_argument("r must be positive");
        if (t <= 0 || t >= 1) throw std::invalid_argument("t must lie in (0, 1)");
        SiegelBounds sb{r, t, ln_bounds(t), {}, 0};
        const IVector& top = rs().highest_root();
        std::int64_t height = 0;
        for (auto n : top) height += n;
        const Rational neg_ln_t = -sb.ln_t.lo;  // >= -ln t > 0
        for (int k = 0; k < rank(); ++k) {
            // n_k y_k < r - ln t - sum_{i != k} n_i y_i < r - ln t (1 + sum_{i != k} n_i)
            const Rational upper = (r + neg_ln_t * to_rational(1 + height - top[k])) / to_rational(top[k]);
            sb.y_bound.push_back(std::max(neg_ln_t, upper));
        }
        for (int j = 0; j < rank(); ++j)
            for (const auto& mu : finite_orbit(rs(), rs().fundamental_weight(j))) {
                Rational s = 0;
                for (int i = 0; i < rank(); ++i) s += abs(mu.coords[i]) * sb.y_bound[i];
                sb.e = std::max(sb.e, s);
            }
        return sb;
    }

    /// <a_i, rD + H_g> > ln t for i = 1..l+1, decided against the upper bound of ln t.
    bool siegel_valid(const SiegelSample& s, const SiegelBounds& sb) const {
        if (s.h_g.d != 0) return false;
        const auto& ar = group_.affine();
        const CartanElement x = s.r * ar.degree() + s.h_g;
        for (int i = 0; i <= rank(); ++i)
            if (ar.pairing(ar.weight(ar.simple_root(i)), x) <= sb.ln_t.hi) return false;
        return true;
    }

    /// Draws H_gcl = sum_i y_i omega_i^vee with y_i > ln t and sum n_i y_i < r - ln t,
    /// plus <Lambda, H_g> uniform in [-lambda_bound, lambda_bound].
    SiegelSample draw_siegel(const SiegelBounds& sb, const Rational& lambda_bound, std::mt19937_64& rng) const {
        const int l = rank();
        const IVector& top = rs().highest_root();
        constexpr std::uint64_t kGrid = 1000;
        const Rational lo = sb.ln_t.hi;  // y_i > ln t is guaranteed by y_i > lo
        const Rational cap = sb.r - sb.ln_t.hi;  // sum n_i y_i < cap <= r - ln t
        std::int64_t height = 0;
        for (auto n : top) height += n;
        for (int attempt = 0; attempt < 10000; ++attempt) {
            RVector y(l);
            Rational s = 0;
            for (int i = 0; i < l; ++i) {
                const Rational hi = (cap - lo * to_rational(height - top[i])) / to_rational(top[i]);
                const Rational u = make_rational(static_cast<long>(draw_below(rng, kGrid) + 1), static_cast<long>(kGrid + 1));
                y[i] = lo + (hi - lo) * u;
                s += to_rational(top[i]) * y[i];
            }
            if (s >= cap) continue;
            SiegelSample out{sb.r, sb.t, CartanElement{group_.affine().zero_coweight(), 0, 0}};
            for (int i = 0; i < l; ++i)
                out.h_g.classical.coords = add(out.h_g.classical.coords, scale(rs().fundamental_coweight(i).coords, y[i]));
            const Rational v = make_rational(static_cast<long>(draw_below(rng, 2 * kGrid + 1)), static_cast<long>(kGrid));
            out.h_g.h_iota = lambda_bound * (v - 1);
            return out;
        }
        throw std::runtime_error("could not draw a Siegel sample");
    }

    H3Result h3_vector(const AffineWeylElement& w, const SiegelSample& s, const SiegelBounds& sb,
                       const Rational& e_prime_lower) const {
        if (!group_.is_kostant(w)) throw std::invalid_argument("h3_vector: element is not a Kostant representative");
        if (!siegel_valid(s, sb)) throw std::invalid_argument("h3_vector: Siegel constraint violated");
        const CorootVector& hcl = s.h_g.classical;
        const CorootVector b{to_rational(w.b)};
        H3Result out;
        out.h.classical.coords = to_rational(w.tilde.coroots) * hcl.coords;
        out.h.h_iota = s.lambda_pairing() + rs().coform(hcl, b);
        out.h.d = 0;
        out.matches_action = out.h == group_.act_on_cartan(w, s.h_g);
        out.lambda = out.h.h_iota;
        out.rho = 0;
        out.max_abs_omega = 0;
        for (const auto& c : out.h.classical.coords) {
            out.rho += c;
            out.max_abs_omega = std::max(out.max_abs_omega, Rational(abs(c)));
        }
        out.e_ok = out.max_abs_omega <= sb.e;
        const Rational hnorm = sqrt_bounds(rs().coform(hcl, hcl)).hi;
        const auto pos = static_cast<long>(rs().positive_roots().size());
        out.c3_bound = abs(s.lambda_pairing()) + hnorm * pos / e_prime_lower;
        const int len = group_.length_of(w);
        out.c3_ok = out.lambda >= -out.c3_bound * (len + 1);
        return out;
    }

    /// E and E' over a list of elements with known lengths; the two-sided bound is
    /// then rechecked exactly on the same list.
    LengthBoundConstants length_bounds(const std::vector<AffineWeylElement>& elements) const {
        LengthBoundConstants c;
        const auto pos = static_cast<long>(rs().positive_roots().size());
        bool have_prime = false;
        for (const auto& w : elements) {
            if (is_zero(w.b)) continue;
            const CorootVector b{to_rational(w.b)};
            const Rational bb = rs().coform(b, b);
            const long len = group_.length_of(w);
            const Rational up = Rational((len + pos) * (len + pos)) / bb;
            if (!have_prime || up < c.e_prime_sq) c.e_prime_sq = up;
            have_prime = true;
            if (len > pos) c.e_sq = std::max(c.e_sq, Rational(Rational((len - pos) * (len - pos)) / bb));
        }
        if (!have_prime) c.e_prime_sq = 1;
        c.e_upper = sqrt_bounds(c.e_sq).hi;
        c.e_prime_lower = sqrt_bounds(c.e_prime_sq).lo;
        for (const auto& w : elements) {
            const CorootVector b{to_rational(w.b)};
            const Rational bb = rs().coform(b, b);
            const long len = group_.length_of(w);
            ++c.checked;
            if (Rational((len + pos) * (len + pos)) < c.e_prime_sq * bb) c.ok = false;
            if (len > pos && Rational((len - pos) * (len - pos)) > c.e_sq * bb) c.ok = false;
        }
        return c;
    }

    /// Random H1 sample: index 0 is zero, every fourth a one-hot vector, otherwise
    /// uniform coefficients in [0, 1] on a grid of 1/1000.
    H1Sample draw_h1(const AffineWeylElement& w, std::size_t index, std::mt19937_64& rng) const {
        const auto supp = support(w);
        H1Sample s;
        if (index == 0 || supp.empty()) {
            for (const auto& g : supp) s.coeffs.emplace_back(g, 0);
            return s;
        }
        if (index % 4 == 1) {
            const std::size_t k = draw_below(rng, supp.size());
            for (std::size_t i = 0; i < supp.size(); ++i) s.coeffs.emplace_back(supp[i], i == k ? 1 : 0);
            return s;
        }
        for (const auto& g : supp) s.coeffs.emplace_back(g, make_rational(static_cast<long>(draw_below(rng, 1001)), 1000L));
        return s;
    }

  private:
    AffineWeylGroup group_;
    Rational c1_;
};

inline std::vector<int> one_based(const std::vector<int>& word) {
    std::vector<int> out;
    for (int g : word) out.push_back(g + 1);
    return out;
}

inline nlohmann::json word_json(const AffineWeylElement& w) { return one_based(w.word); }

/// {lemma, type, max_len, violations, constants, extremal_cases, ...}
struct VerifyReport {
    nlohmann::json body;

    bool passed() const { return body.at("violations").empty(); }
};

struct AuditConfig {
    RootType type{'A', 2};
    int max_len = 8;
    std::size_t h1_samples = 1000;
    std::size_t siegel_samples = 100;
    std::uint64_t seed = 0;
    Rational r = 1;
    Rational t = make_rational(1, 2);
    Rational lambda_bound = 2;
    int threads = 0;
};

inline nlohmann::json audit_config_json(const AuditConfig& c) {
    return {{"type", c.type.name()},
            {"max_len", c.max_len},
            {"h1_samples", c.h1_samples},
            {"siegel_samples", c.siegel_samples},
            {"seed", c.seed},
            {"r", to_json(c.r)},
            {"t", to_json(c.t)},
            {"lambda_bound", to_json(c.lambda_bound)}};
}

inline std::vector<AffineWeylElement> kostant_elements(const AffineWeylGroup& g, const Enumeration& e) {
    std::vector<AffineWeylElement> out;
    for (const auto& w : e.elements)
        if (g.is_kostant(w)) out.push_back(w);
    return out;
}

inline nlohmann::json make_report_skeleton(const std::string& lemma, const AuditConfig& c) {
    return {{"lemma", lemma},
            {"type", c.type.name()},
            {"max_len", c.max_len},
            {"violations", nlohmann::json::array()},
            {"constants", nlohmann::json::object()},
            {"extremal_cases", nlohmann::json::array()}};
}

/// Two-sided length bound in ||b|| over every element of length <= max_len; the
/// constants are also extracted on each shorter window to expose their drift.
inline VerifyReport verify_lemma22(const AuditConfig& c) {
    InequalityEngine eng(build_root_system(c.type));
    const auto e = eng.group().enumerate(c.max_len);
    VerifyReport rep{make_report_skeleton("lemma22", c)};
    const auto k = eng.length_bounds(e.elements);
    if (!k.ok) rep.body["violations"].push_back({{"check", "length_bounds"}});
    rep.body["constants"] = {{"E", to_json(k.e_upper)},
                             {"E_prime", to_json(k.e_prime_lower)},
                             {"E_squared", to_json(k.e_sq)},
                             {"E_prime_squared", to_json(k.e_prime_sq)},
                             {"positive_roots", eng.rs().positive_roots().size()}};
    auto window = nlohmann::json::array();
    for (int L = 1; L <= c.max_len; ++L) {
        std::vector<AffineWeylElement> sub(e.elements.begin(), e.elements.begin() + e.layer_begin[L + 1]);
        const auto kl = eng.length_bounds(sub);
        window.push_back({{"max_len", L}, {"E", to_double(to_real(kl.e_upper))}, {"E_prime", to_double(to_real(kl.e_prime_lower))}});
    }
    rep.body["window"] = window;
    rep.body["checked"] = k.checked;
    return rep;
}

/// kappa_i(w^{-1}) <= l(w) + 1 over Kostant representatives; tight cases listed.
inline VerifyReport verify_lemma23(const AuditConfig& c) {
    InequalityEngine eng(build_root_system(c.type));
    const auto& g = eng.group();
    const auto ks = kostant_elements(g, g.enumerate(c.max_len));
    VerifyReport rep{make_report_skeleton("lemma23", c)};
    Rational worst = 0;
    for (const auto& w : ks) {
        const auto kap = g.kappa(w);
        for (int i = 0; i < eng.rank(); ++i) {
            const auto& k = kap[i];
            if (k.kappa < 0 || k.kappa > w.length + 1 || !eng.rs().is_root(k.sigma))
                rep.body["violations"].push_back({{"check", "kappa_bound"}, {"word", word_json(w)}, {"i", i + 1}, {"kappa", k.kappa}});
            if (k.kappa == w.length + 1)
                rep.body["extremal_cases"].push_back(
                    {{"word", word_json(w)}, {"length", w.length}, {"i", i + 1}, {"sigma", k.sigma}, {"kappa", k.kappa}});
            worst = std::max(worst, Rational(to_rational(k.kappa) / (w.length + 1)));
        }
    }
    rep.body["constants"] = {{"max_kappa_over_length_plus_one", to_json(worst)}, {"kostant_count", ks.size()}};
    return rep;
}

/// Shape of Delta_{-,w^{-1}} for every Kostant representative.
inline VerifyReport verify_lemma351(const AuditConfig& c) {
    InequalityEngine eng(build_root_system(c.type));
    const auto& g = eng.group();
    const auto ks = kostant_elements(g, g.enumerate(c.max_len));
    VerifyReport rep{make_report_skeleton("lemma351", c)};
    std::size_t roots = 0;
    std::int64_t deepest = 0;
    for (const auto& w : ks) {
        const auto supp = eng.support(w);
        roots += supp.size();
        if (static_cast<int>(supp.size()) != w.length)
            rep.body["violations"].push_back({{"check", "cardinality"}, {"word", word_json(w)}});
        for (const auto& gm : eng.shape_violations(w))
            rep.body["violations"].push_back({{"check", "shape"}, {"word", word_json(w)}, {"root", to_json(gm)}});
        for (const auto& gm : supp) deepest = std::min(deepest, gm.n);
        if (w.length == 1) {
            auto roots_json = nlohmann::json::array();
            for (const auto& gm : supp) roots_json.push_back(to_json(gm));
            rep.body["extremal_cases"].push_back({{"word", word_json(w)}, {"roots", roots_json}});
        }
    }
    rep.body["constants"] = {{"kostant_count", ks.size()}, {"roots_checked", roots}, {"min_n", deepest}};
    return rep;
}

/// Per-element data retained for the corollary check.
struct AuditRecord {
    AffineWeylElement w;
    std::vector<std::pair<Rational, Rational>> h1;  // (<rho,H1>, <Lambda,H1>)
    std::pair<Rational, Rational> h2;
    std::vector<std::pair<Rational, Rational>> h3;
    Rational c2_ratio;
    Rational c3_ratio;  // max |<Lambda,H3>| / (l+1)
    Rational c3_bound;
    Rational c1_ratio;
    nlohmann::json violations = nlohmann::json::array();
};

struct TheoremAudit {
    AuditConfig config;
    Rational c1;
    Rational c1_empirical;
    Rational c2;
    Rational c3;
    Rational c3_bound;
    Rational e;
    LengthBoundConstants length;
    std::vector<Rational> c2_by_len;  // C2 over lengths <= L
    std::vector<AuditRecord> records;
    std::size_t h1_checks = 0;
    std::size_t h3_checks = 0;
};

/// Runs the H1/H2/H3 checks for every Kostant representative of length <= max_len.
inline TheoremAudit run_theorem_audit(const AuditConfig& c) {
    InequalityEngine eng(build_root_system(c.type));
    const auto& g = eng.group();
    const auto e = g.enumerate(c.max_len);
    const auto ks = kostant_elements(g, e);
    TheoremAudit audit;
    audit.config = c;
    audit.c1 = eng.c1();
    audit.length = eng.length_bounds(e.elements);
    const SiegelBounds sb = eng.siegel_bounds(c.r, c.t);
    audit.e = sb.e;
    audit.records.resize(ks.size());
    parallel_for(ks.size(), c.threads, [&](std::size_t idx) {
        AuditRecord& rec = audit.records[idx];
        rec.w = ks[idx];
        const auto& w = rec.w;
        const int len = w.length;
        auto rng1 = stream_rng(c.seed, idx, 1);
        for (std::size_t k = 0; k < c.h1_samples; ++k) {
            const H1Result h1 = eng.h1_vector(w, eng.draw_h1(w, k, rng1));
            rec.h1.emplace_back(h1.rho, h1.lambda);
            if (h1.rho > 0) rec.c1_ratio = std::max(rec.c1_ratio, Rational(-h1.lambda / ((len + 1) * h1.rho)));
            if (!h1.ok())
                rec.violations.push_back({{"check", "H1"},
                                          {"word", word_json(w)},
                                          {"sample", k},
                                          {"omega_nonneg", h1.omega_nonneg},
                                          {"lambda_sign", h1.lambda_sign},
                                          {"mbound", h1.mbound_ok},
                                          {"growth", h1.growth_ok}});
        }
        const H2Result h2 = eng.h2_vector(w, c.r);
        rec.h2 = {h2.rho, h2.lambda};
        rec.c2_ratio = h2.ratio;
        if (!h2.ok())
            rec.violations.push_back({{"check", "H2"},
                                      {"word", word_json(w)},
                                      {"d_nonpos", h2.d_ok},
                                      {"q_nonpos", h2.q_ok},
                                      {"omega_nonneg", h2.omega_nonneg},
                                      {"norm_identity", h2.norm_identity}});
        if (eng.h2_vector(w, 2 * c.r).h != Rational(2) * h2.h)
            rec.violations.push_back({{"check", "H2_scaling"}, {"word", word_json(w)}});
        auto rng3 = stream_rng(c.seed, idx, 3);
        for (std::size_t k = 0; k < c.siegel_samples; ++k) {
            const SiegelSample s = eng.draw_siegel(sb, c.lambda_bound, rng3);
            const H3Result h3 = eng.h3_vector(w, s, sb, audit.length.e_prime_lower);
            rec.h3.emplace_back(h3.rho, h3.lambda);
            rec.c3_ratio = std::max(rec.c3_ratio, Rational(abs(h3.lambda) / (len + 1)));
            rec.c3_bound = std::max(rec.c3_bound, h3.c3_bound);
            if (!h3.ok())
                rec.violations.push_back({{"check", "H3"},
                                          {"word", word_json(w)},
                                          {"sample", k},
                                          {"omega_bound", h3.e_ok},
                                          {"lambda_bound", h3.c3_ok},
                                          {"matches_action", h3.matches_action}});
        }
    });
    audit.c2_by_len.assign(c.max_len + 1, Rational(0));
    for (const auto& rec : audit.records) {
        audit.c1_empirical = std::max(audit.c1_empirical, rec.c1_ratio);
        audit.c2 = std::max(audit.c2, rec.c2_ratio);
        audit.c3 = std::max(audit.c3, rec.c3_ratio);
        audit.c3_bound = std::max(audit.c3_bound, rec.c3_bound);
        for (int L = rec.w.length; L <= c.max_len; ++L) audit.c2_by_len[L] = std::max(audit.c2_by_len[L], rec.c2_ratio);
        audit.h1_checks += rec.h1.size();
        audit.h3_checks += rec.h3.size();
    }
    return audit;
}

inline nlohmann::json c2_window_json(const TheoremAudit& a) {
    auto arr = nlohmann::json::array();
    for (int L = 0; L <= a.config.max_len; ++L) arr.push_back({{"max_len", L}, {"C2", to_json(a.c2_by_len[L])}});
    return arr;
}

inline VerifyReport verify_theorem(const TheoremAudit& a) {
    VerifyReport rep{make_report_skeleton("thm32", a.config)};
    for (const auto& rec : a.records)
        for (const auto& v : rec.violations) rep.body["violations"].push_back(v);
    // C2 on lengths <= L must not grow by more than 5% when L grows by 2
    for (int L = 1; L + 2 <= a.config.max_len; ++L) {
        if (a.c2_by_len[L] > 0 && a.c2_by_len[L + 2] > a.c2_by_len[L] * make_rational(105, 100))
            rep.body["violations"].push_back({{"check", "C2_stability"}, {"max_len", L}});
    }
    rep.body["constants"] = {{"C1", to_json(a.c1)},
                             {"C1_empirical", to_json(a.c1_empirical)},
                             {"C2", to_json(a.c2)},
                             {"C3", to_json(a.c3)},
                             {"C3_bound", to_json(a.c3_bound)},
                             {"E", to_json(a.e)},
                             {"lemma22_E_prime", to_json(a.length.e_prime_lower)}};
    rep.body["C2_window"] = c2_window_json(a);
    rep.body["kostant_count"] = a.records.size();
    rep.body["h1_checks"] = a.h1_checks;
    rep.body["h3_checks"] = a.h3_checks;
    rep.body["config"] = audit_config_json(a.config);
    const AuditRecord* c2_arg = nullptr;
    const AuditRecord* c3_arg = nullptr;
    for (const auto& rec : a.records) {
        if (!c2_arg || rec.c2_ratio > c2_arg->c2_ratio) c2_arg = &rec;
        if (!c3_arg || rec.c3_ratio > c3_arg->c3_ratio) c3_arg = &rec;
    }
    if (c2_arg)
        rep.body["extremal_cases"].push_back(
            {{"quantity", "C2"}, {"word", word_json(c2_arg->w)}, {"length", c2_arg->w.length}, {"value", to_json(c2_arg->c2_ratio)}});
    if (c3_arg)
        rep.body["extremal_cases"].push_back(
            {{"quantity", "C3"}, {"word", word_json(c3_arg->w)}, {"length", c3_arg->w.length}, {"value", to_json(c3_arg->c3_ratio)}});
    return rep;
}

/// ln x + ln y / (C (l+1)) - ln D >= 0 with C = max(C1, C2, C3) and ln D = -l E - 1.
/// The left side is separable in (H1, H3), so its minimum over all sample pairs is
/// the sum of the per-part minima; every pair is thereby covered.
inline VerifyReport verify_corollary(const TheoremAudit& a) {
    VerifyReport rep{make_report_skeleton("cor34", a.config)};
    const Rational cc = std::max({a.c1, a.c2, a.c3});
    const int l = a.config.type.rank;
    const Rational ln_d = -l * a.e - 1;
    std::optional<Rational> worst;
    std::size_t pairs = 0;
    for (const auto& rec : a.records) {
        const Rational k = cc * (rec.w.length + 1);
        auto part_min = [&](const std::vector<std::pair<Rational, Rational>>& v) {
            Rational m = v.front().first + v.front().second / k;
            for (const auto& [rho, lam] : v) m = std::min(m, Rational(rho + lam / k));
            return m;
        };
        const Rational margin = part_min(rec.h1) + rec.h2.first + rec.h2.second / k + part_min(rec.h3) - ln_d;
        pairs += rec.h1.size() * rec.h3.size();
        if (margin < 0)
            rep.body["violations"].push_back({{"check", "corollary"}, {"word", word_json(rec.w)}, {"margin", to_json(margin)}});
        if (!worst || margin < *worst) worst = margin;
        if (rec.w.length <= 1)
            rep.body["extremal_cases"].push_back(
                {{"word", word_json(rec.w)}, {"length", rec.w.length}, {"min_margin", to_json(margin)}});
    }
    rep.body["constants"] = {{"C", to_json(cc)},
                             {"C1", to_json(a.c1)},
                             {"C2", to_json(a.c2)},
                             {"C3", to_json(a.c3)},
                             {"E", to_json(a.e)},
                             {"ln_D", to_json(ln_d)},
                             {"min_margin", worst ? to_json(*worst) : nlohmann::json(nullptr)}};
    rep.body["pairs_checked"] = pairs;
    rep.body["config"] = audit_config_json(a.config);
    return rep;
}

}  // namespace loopcert
