#pragma once

// One-variable analysis of the bump function sigma(x) = exp(-1/(1-x^2)) on (-1, 1):
// exact derivative polynomials, L1/L2 norms of derivatives, the Fourier transform
// sigma^(r) = int sigma(x) exp(-2 pi i r x) dx, and the moment-to-pointwise conversion.

#include "loopcert/numeric.hpp"
#include "loopcert/polynomial.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace loopcert {

inline Real real_pi() {
    Real x(0);
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

inline Real powi(const Real& x, long e) {
    Real y(0);
    mpfr_pow_si(y.backend().data(), x.backend().data(), e, MPFR_RNDN);
    return y;
}

inline Real pow2(long e) {
    Real x(1);
    mpfr_mul_2si(x.backend().data(), x.backend().data(), e, MPFR_RNDN);
    return x;
}

/// sigma^(N)(x) = P_N(x) (1 - x^2)^(-2N) sigma(x) on (-1, 1).
struct DerivativeRep {
    int n = 0;
    RationalPolynomial poly;
};

/// P_{N+1} = (1-x^2)^2 P_N' + (4N x (1-x^2) - 2x) P_N, P_0 = 1.
inline DerivativeRep derivative_poly(int n) {
    if (n < 0) throw std::invalid_argument("derivative order must be >= 0");
    const RationalPolynomial one_minus_x2({1, 0, -1});
    const RationalPolynomial sq = one_minus_x2 * one_minus_x2;
    const RationalPolynomial x = RationalPolynomial::monomial(1, 1);
    RationalPolynomial p = RationalPolynomial::constant(1);
    for (int k = 0; k < n; ++k) {
        const RationalPolynomial lin = Rational(4 * k) * (x * one_minus_x2) - Rational(2) * x;
        p = sq * p.derivative() + lin * p;
    }
    return {n, p};
}

inline Real sigma(const Real& x) {
    if (abs(x) >= 1) return Real(0);
    return exp(-1 / (1 - x * x));
}

inline Real sigma_derivative(const DerivativeRep& rep, const Real& x) {
    if (abs(x) >= 1) return Real(0);
    const Real s = 1 - x * x;
    return rep.poly.evaluate(x) * powi(s, -2 * rep.n) * exp(-1 / s);
}

inline double sigma_double(double x) { return std::abs(x) >= 1 ? 0.0 : std::exp(-1.0 / (1.0 - x * x)); }

/// Gauss-Legendre nodes and weights on [-1, 1] at the current precision.
struct GaussRule {
    std::vector<Real> x;
    std::vector<Real> w;
};

inline GaussRule gauss_legendre(int n) {
    GaussRule g;
    const Real pi = real_pi();
    const Real eps = pow2(-static_cast<long>(Real::default_precision() * 3.33) + 8);
    for (int i = 1; i <= n; ++i) {
        Real z = cos(pi * (i - Real(0.25)) / (n + Real(0.5)));
        Real dp;
        for (int iter = 0; iter < 200; ++iter) {
            Real p0(1), p1 = z;
            for (int k = 2; k <= n; ++k) {
                const Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            const Real dz = p1 / dp;
            z -= dz;
            if (abs(dz) < eps) break;
        }
        g.x.push_back(z);
        g.w.push_back(2 / ((1 - z * z) * dp * dp));
    }
    return g;
}

inline Real gauss_panel(const std::function<Real(const Real&)>& f, const Real& a, const Real& b, const GaussRule& g) {
    const Real half = (b - a) / 2, mid = (a + b) / 2;
    Real s(0);
    for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(mid + half * g.x[i]);
    return s * half;
}

struct QuadratureResult {
    Real value;
    Real error;  // a posteriori estimate
};

/// Adaptive bisection of [a, b] until the panel rule agrees with its two halves.
inline QuadratureResult adaptive_gauss(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                                       const GaussRule& g, const Real& tol, int depth = 40) {
    QuadratureResult out{Real(0), Real(0)};
    struct Item {
        Real a, b, whole;
        int depth;
    };
    std::vector<Item> stack{{a, b, gauss_panel(f, a, b, g), depth}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        const Real m = (it.a + it.b) / 2;
        const Real left = gauss_panel(f, it.a, m, g);
        const Real right = gauss_panel(f, m, it.b, g);
        const Real diff = abs(left + right - it.whole);
        if (diff <= tol || it.depth == 0) {
            if (diff > tol) throw std::runtime_error("quadrature stagnation");
            out.value += left + right;
            out.error += diff;
            continue;
        }
        stack.push_back({m, it.b, right, it.depth - 1});
        stack.push_back({it.a, m, left, it.depth - 1});
    }
    return out;
}

/// Abscissae in [0, 1) where sigma is below 2^-bits beyond the last point; the
/// spacing shrinks like (1-x)^2 so that each panel resolves exp(-1/(1-x^2)).
inline std::vector<Real> sigma_panels(const Real& max_width, int bits, double shrink = 0.5) {
    std::vector<Real> pts{Real(0)};
    const Real floor_value = pow2(-bits);
    Real x(0);
    while (true) {
        const Real t = 1 - x;
        Real step = shrink * t * t;
        if (step > max_width) step = max_width;
        x += step;
        if (x >= 1) break;
        pts.push_back(x);
        if (sigma(x) < floor_value) break;
    }
    return pts;
}

/// Distinct roots of P_N in (0, 1), each bracketed to width below 2^-width_bits.
inline std::vector<std::pair<Rational, Rational>> derivative_root_brackets(const DerivativeRep& rep, int width_bits) {
    std::vector<std::pair<Rational, Rational>> out;
    if (rep.n == 0) return out;
    const RationalPolynomial q = rep.poly.even_part_in_square();
    // roots of P_N in (0,1) are square roots of roots of q in (0,1)
    std::vector<std::pair<Rational, Rational>> ubr;
    std::function<void(const Rational&, const Rational&)> isolate = [&](const Rational& a, const Rational& b) {
        const int c = sturm_count(q, a, b);
        if (c == 0) return;
        if (c == 1 && sgn(q.evaluate(a)) != sgn(q.evaluate(b))) {
            ubr.emplace_back(a, b);
            return;
        }
        Rational m = (a + b) / 2;
        for (int k = 3; q.evaluate(m) == 0; ++k) m = a + (b - a) * make_rational(k - 1, 2 * k);
        isolate(a, m);
        isolate(m, b);
    };
    if (q.evaluate(Rational(0)) == 0 || q.evaluate(Rational(1)) == 0)
        throw std::domain_error("derivative polynomial vanishes at a boundary point");
    isolate(0, 1);
    for (auto [a, b] : ubr) {
        const int sa = sgn(q.evaluate(a));
        // x = sqrt(u) has dx <= du / (2 sqrt(u)); refine in u generously
        Rational target(Integer(1), Integer(1) << (width_bits + 8));
        while (b - a > target * (a > 0 ? a : target)) {
            const Rational m = (a + b) / 2;
            const int sm = sgn(q.evaluate(m));
            if (sm == 0) {
                a = b = m;
                break;
            }
            (sm == sa ? a : b) = m;
        }
        // convert the bracket to x with directed square roots
        out.emplace_back(sqrt_bounds(a, width_bits + 64).lo, sqrt_bounds(b, width_bits + 64).hi);
    }
    return out;
}

struct LogNorm {
    Real log_value;
    Real abs_error;  // bound on |ln(true) - log_value|
    Real value() const { return exp(log_value); }
};

inline Rational derivative_sup_bound(const DerivativeRep& rep) {
    // |sigma^(N)| <= S_N sup_s s^{-2N} e^{-1/s} = S_N (2N/e)^{2N} <= S_N (2N)^{2N}
    Rational b = rep.poly.abs_coefficient_sum();
    for (int i = 0; i < 2 * rep.n; ++i) b *= 2 * rep.n;
    return b;
}

namespace detail {

inline int log2_ceil(const Rational& q) {
    if (q <= 0) return 0;
    return static_cast<int>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) - static_cast<int>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) + 1;
}

// 2 int_0^1 sigma, adaptive over the sigma panels
inline QuadratureResult sigma_l1_quadrature(int bits) {
    const GaussRule g = gauss_legendre(24);
    const auto pts = sigma_panels(Real(1) / 16, bits + 16);
    QuadratureResult total{Real(0), Real(0)};
    const Real tol = pow2(-bits - 8);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto r = adaptive_gauss([](const Real& x) { return sigma(x); }, pts[i], pts[i + 1], g, tol);
        total.value += r.value;
        total.error += r.error;
    }
    const Real last = pts.back();
    total.error += sigma(last) * (1 - last);
    total.value *= 2;
    total.error *= 2;
    return total;
}

}  // namespace detail

/// ln ||sigma^(N)||_1. For N >= 1 the norm telescopes over the sign intervals of
/// P_N to sum |sigma^(N-1)(x_{k+1}) - sigma^(N-1)(x_k)|, with x_k the roots of P_N
/// bracketed by Sturm sequences; N = 0 uses adaptive Gauss quadrature.
inline LogNorm l1_norm(int n, int precision_bits = 256) {
    if (n < 0) throw std::invalid_argument("derivative order must be >= 0");
    const int bits = precision_bits;
    if (n == 0) {
        PrecisionScope prec(bits + 64);
        const auto q = detail::sigma_l1_quadrature(bits + 8);
        LogNorm out{log(q.value), q.error / (q.value - q.error)};
        if (out.abs_error > pow2(-bits / 2)) throw std::runtime_error("l1_norm: precision unreachable");
        return out;
    }
    const DerivativeRep rep = derivative_poly(n);
    const DerivativeRep prev = derivative_poly(n - 1);
    const Rational sup = derivative_sup_bound(rep);
    const int guard = detail::log2_ceil(sup) + detail::log2_ceil(prev.poly.abs_coefficient_sum()) + 64;
    const int work = bits + guard + 64;
    PrecisionScope prec(work);
    const auto brackets = derivative_root_brackets(rep, bits + detail::log2_ceil(sup) + 16);
    std::vector<Real> xs{Real(0)};
    Real err(0);
    const Real sup_r = to_real(sup);
    const Real unit = pow2(-work + 4);
    const Real deg = rep.poly.degree() + 4;
    for (const auto& [a, b] : brackets) {
        const Real lo = to_real(a), hi = to_real(b);
        xs.push_back((lo + hi) / 2);
        // |F(mid) - F(root)| <= width * sup |F'|
        err += 2 * (hi - lo) * sup_r;
    }
    // sign change at 0 for odd N is already a breakpoint; F(1) = 0
    Real total(0);
    Real prev_value = sigma_derivative(prev, xs[0]);
    const Real coeff_sum = to_real(prev.poly.abs_coefficient_sum());
    auto eval_err = [&](const Real& x) {
        const Real s = 1 - x * x;
        return 4 * deg * unit * coeff_sum * powi(s, -2 * prev.n) * exp(-1 / s);
    };
    err += eval_err(xs[0]);
    for (std::size_t k = 1; k < xs.size(); ++k) {
        const Real v = sigma_derivative(prev, xs[k]);
        total += abs(v - prev_value);
        err += 2 * eval_err(xs[k]);
        prev_value = v;
    }
    total += abs(prev_value);
    total *= 2;
    err *= 2;
    if (err >= total / 2) throw std::runtime_error("l1_norm: precision unreachable");
    LogNorm out{log(total), err / (total - err)};
    if (out.abs_error > pow2(-bits / 2)) throw std::runtime_error("l1_norm: precision unreachable");
    return out;
}

/// ||sigma^(N)||_p for p = 1 or 2 by adaptive Gauss quadrature over the sign
/// intervals of P_N and the sigma panels; independent of the telescoping path.
inline QuadratureResult derivative_norm_quadrature(int n, int p, int precision_bits = 128, const Rational& c_scale = 1) {
    if (p != 1 && p != 2) throw std::invalid_argument("p must be 1 or 2");
    if (c_scale <= 0) throw std::invalid_argument("scale must be positive");
    const DerivativeRep rep = derivative_poly(n);
    const int work = precision_bits + 64 + detail::log2_ceil(derivative_sup_bound(rep));
    PrecisionScope prec(work);
    const Real c = to_real(c_scale);
    const Real cn = powi(c, -n);
    // integrand in the scaled variable: c^{-N} sigma^(N)(x / c) on (0, c)
    auto f = [&](const Real& x) {
        const Real v = cn * sigma_derivative(rep, x / c);
        return p == 1 ? Real(abs(v)) : Real(v * v);
    };
    std::vector<Real> breaks;
    for (const auto& [a, b] : derivative_root_brackets(rep, precision_bits + 16)) breaks.push_back(c * (to_real(a) + to_real(b)) / 2);
    const auto tail_pts = sigma_panels(Real(1) / 16, precision_bits + 8 * n + 32);
    std::vector<Real> pts{Real(0)};
    for (const auto& t : tail_pts)
        if (t > 0) pts.push_back(c * t);
    for (const auto& b : breaks) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    const GaussRule g = gauss_legendre(24);
    Real rough(0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1] > pts[i]) rough += gauss_panel(f, pts[i], pts[i + 1], g);
    const Real tol = rough * pow2(-precision_bits - 16) / Real(static_cast<double>(pts.size()));
    QuadratureResult total{Real(0), Real(0)};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] <= pts[i]) continue;
        const auto r = adaptive_gauss(f, pts[i], pts[i + 1], g, tol);
        total.value += r.value;
        total.error += r.error;
    }
    // |sigma^(N)| is monotone beyond the last root: the tail is bounded by |F| there
    const Real last = pts.back();
    const DerivativeRep prev = n > 0 ? derivative_poly(n - 1) : rep;
    Real tail = n > 0 ? Real(abs(sigma_derivative(prev, last / c)) * powi(c, 1 - n)) : Real(sigma(last / c) * (c - last));
    if (p == 2) tail = tail * abs(f(last)) + pow2(-precision_bits * 2);
    total.error += tail;
    total.value *= 2;
    total.error *= 2;
    if (p == 2) {
        total.error = total.error / (2 * sqrt(total.value));
        total.value = sqrt(total.value);
    }
    return total;
}

/// ln || d^N/dx^N sigma(x / c) ||_1 = (1 - N) ln c + ln ||sigma^(N)||_1.
inline LogNorm scaled_l1_norm(int n, const Rational& c_scale, int precision_bits = 256) {
    if (c_scale <= 0) throw std::invalid_argument("scale must be positive");
    LogNorm base = l1_norm(n, precision_bits);
    PrecisionScope prec(precision_bits + 64);
    base.log_value += (1 - n) * log(to_real(c_scale));
    return base;
}

/// sigma^(r) = 2 int_0^1 sigma(x) cos(2 pi r x) dx by a fixed composite Gauss rule
/// resolving frequencies up to r_max. Construct and evaluate under one precision.
class FourierEvaluator {
  public:
    FourierEvaluator(double r_max, int precision_bits, int nodes = 20) : bits_(precision_bits) {
        const GaussRule g = gauss_legendre(nodes);
        const Real width = Real(1) / (4 * std::max(1.0, r_max));
        const auto pts = sigma_panels(width, precision_bits + 32);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const Real half = (pts[i + 1] - pts[i]) / 2, mid = (pts[i] + pts[i + 1]) / 2;
            for (std::size_t k = 0; k < g.x.size(); ++k) {
                const Real x = mid + half * g.x[k];
                x_.push_back(x);
                ws_.push_back(2 * g.w[k] * half * sigma(x));
            }
        }
        two_pi_ = 2 * real_pi();
        for (std::size_t j = 0; j < x_.size(); ++j) {
            xd_.push_back(static_cast<long double>(to_double(x_[j])));
            wsd_.push_back(static_cast<long double>(to_double(ws_[j])));
        }
        tail_ = sigma(pts.back()) * (1 - pts.back()) * 2;
    }

    Real operator()(const Real& r) const {
        Real s(0);
        const Real k = two_pi_ * r;
        for (std::size_t j = 0; j < x_.size(); ++j) s += ws_[j] * cos(k * x_[j]);
        return s;
    }

    /// Hardware long double evaluation (about 18 digits absolute).
    long double fast(long double r) const {
        const long double k = 2.0L * 3.141592653589793238462643383279502884L * r;
        long double s = 0;
        for (std::size_t j = 0; j < xd_.size(); ++j) s += wsd_[j] * std::cos(k * xd_[j]);
        return s;
    }

    std::size_t size() const { return x_.size(); }
    const Real& truncation() const { return tail_; }
    int precision_bits() const { return bits_; }

  private:
    int bits_;
    std::vector<Real> x_, ws_;
    std::vector<long double> xd_, wsd_;
    Real two_pi_;
    Real tail_;
};

struct FourierSample {
    double r;
    Real value;
    double neg_log_abs;
};

struct FourierFit {
    double exponent_coeff = 0;        // A in -ln|s(r)| ~ A sqrt(r) + (3/4) ln r + c, fitted on the envelope
    double constant = 0;
    double exponent_coeff_all = 0;    // same model over every sample
    double free_exponent_coeff = 0;   // envelope fit with the power of r left free
    double free_power = 0;
    std::vector<FourierSample> samples;
    std::vector<std::size_t> peaks;   // crests: |s(r)| above the all-points trend, locally maximal
};

/// Samples r uniformly in sqrt(r); sigma^(r) oscillates in sign, so the exponent
/// is fitted on the local maxima of |sigma^(r)| (the envelope).
inline FourierFit fourier_decay_fit(double r_min, double r_max, int samples, int precision_bits = 256) {
    if (!(r_min > 0 && r_min < r_max)) throw std::invalid_argument("require 0 < r_min < r_max");
    if (samples < 5) throw std::invalid_argument("need at least 5 samples");
    PrecisionScope prec(precision_bits);
    const FourierEvaluator f(r_max, precision_bits);
    FourierFit fit;
    const double a = std::sqrt(r_min), b = std::sqrt(r_max);
    for (int k = 0; k < samples; ++k) {
        const double s = a + (b - a) * k / (samples - 1);
        const double r = s * s;
        const Real v = f(Real(r));
        if (v == 0) throw std::runtime_error("fourier transform vanished at a sample point");
        fit.samples.push_back({r, v, -to_double(log(abs(v)))});
    }
    auto fit_lines = [&](const std::vector<std::size_t>& idx, bool free_power) {
        std::vector<std::vector<Real>> design;
        std::vector<Real> y;
        for (auto i : idx) {
            const double r = fit.samples[i].r;
            if (free_power) {
                design.push_back({Real(std::sqrt(r)), Real(std::log(r)), Real(1)});
                y.push_back(Real(fit.samples[i].neg_log_abs));
            } else {
                design.push_back({Real(std::sqrt(r)), Real(1)});
                y.push_back(Real(fit.samples[i].neg_log_abs - 0.75 * std::log(r)));
            }
        }
        return least_squares(design, y);
    };
    std::vector<std::size_t> all(fit.samples.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto c_all = fit_lines(all, false);
    fit.exponent_coeff_all = to_double(c_all[0]);
    // crests of |s(r)| are local minima of the residual against the all-points trend
    std::vector<double> res;
    for (const auto& s : fit.samples)
        res.push_back(s.neg_log_abs - 0.75 * std::log(s.r) - to_double(c_all[0]) * std::sqrt(s.r) - to_double(c_all[1]));
    for (std::size_t i = 1; i + 1 < res.size(); ++i)
        if (res[i] < 0 && res[i] < res[i - 1] && res[i] < res[i + 1]) fit.peaks.push_back(i);
    const auto& env = fit.peaks.size() >= 2 ? fit.peaks : all;
    const auto c_env = fit_lines(env, false);
    fit.exponent_coeff = to_double(c_env[0]);
    fit.constant = to_double(c_env[1]);
    if (env.size() >= 3) {
        const auto c_free = fit_lines(env, true);
        fit.free_exponent_coeff = to_double(c_free[0]);
        fit.free_power = to_double(c_free[1]);
    }
    return fit;
}

struct ParsevalCheck {
    int n = 0;
    double fourier_side;    // (2 pi)^N || r^N sigma^(r) ||_2 over R
    double derivative_side; // || sigma^(N) ||_2
    double relative_difference;
};

/// (2 pi)^N ||r^N sigma^||_2 against ||sigma^(N)||_2; the r-integral runs over
/// [0, r_max] with unit Gauss panels, the transform in long double.
inline ParsevalCheck parseval_check(int n, double r_max = 100, int precision_bits = 128) {
    ParsevalCheck out;
    out.n = n;
    {
        PrecisionScope prec(precision_bits);
        const FourierEvaluator f(r_max, precision_bits);
        const GaussRule g = gauss_legendre(20);
        std::vector<long double> gx, gw;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            gx.push_back(static_cast<long double>(to_double(g.x[i])));
            gw.push_back(static_cast<long double>(to_double(g.w[i])));
        }
        long double total = 0;
        for (int panel = 0; panel < static_cast<int>(r_max); ++panel) {
            long double s = 0;
            for (std::size_t i = 0; i < gx.size(); ++i) {
                const long double r = panel + 0.5L + 0.5L * gx[i];
                const long double v = f.fast(r);
                s += gw[i] * std::pow(r, 2 * n) * v * v;
            }
            total += 0.5L * s;
        }
        const long double two_pi = 2.0L * 3.141592653589793238462643383279502884L;
        out.fourier_side = static_cast<double>(std::pow(two_pi, n) * std::sqrt(2 * total));
    }
    out.derivative_side = to_double(derivative_norm_quadrature(n, 2, 96).value);
    out.relative_difference = std::abs(out.fourier_side - out.derivative_side) / out.derivative_side;
    return out;
}

struct MomentBound {
    Rational c;
    Rational big_c;
};

struct PointwiseBound {
    std::uint64_t best_n = 0;
    Real log_bound;
};

/// min over integer N >= 1 of c y^{-N} (C N)^{C N}, given ln y > 0. The objective
/// is convex in N, so a scan from the seed N ~ y^{1/C} / (C e) reaches the minimum.
inline PointwiseBound moment_to_pointwise(const MomentBound& m, const Real& log_y) {
    if (m.c <= 0 || m.big_c <= 0) throw std::invalid_argument("c and C must be positive");
    if (log_y <= 0) throw std::invalid_argument("y must exceed 1");
    const Real ln_c = log(to_real(m.c));
    const Real cc = to_real(m.big_c);
    auto f = [&](std::uint64_t n) {
        const Real cn = cc * Real(static_cast<double>(n));
        return ln_c - Real(static_cast<double>(n)) * log_y + cn * log(cn);
    };
    const Real seed = exp(log_y / cc) / (cc * exp(Real(1)));
    if (seed > Real(1e15)) throw std::domain_error("moment_to_pointwise: y too large for the integer scan");
    std::uint64_t n = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(to_double(floor(seed))));
    Real v = f(n);
    while (n > 1) {
        const Real w = f(n - 1);
        if (w > v) break;
        --n;
        v = w;
    }
    while (true) {
        const Real w = f(n + 1);
        if (!(w < v)) break;
        ++n;
        v = w;
    }
    return {n, v};
}

struct MomentExponentFit {
    double d = 0;           // slope of ln(ln c - ln bound) against ln y
    double intercept = 0;
    std::vector<std::pair<double, PointwiseBound>> points;  // (ln y, bound)
};

/// Fits the computed bounds to the form c exp(-K y^d) on a log-log scale over
/// ln y in [ln_y_min, ln_y_max].
inline MomentExponentFit moment_exponent_fit(const MomentBound& m, double ln_y_min = 2, double ln_y_max = 20, int samples = 19) {
    if (!(ln_y_min > 0 && ln_y_min < ln_y_max) || samples < 2) throw std::invalid_argument("invalid fit range");
    MomentExponentFit fit;
    const Real ln_c = log(to_real(m.c));
    std::vector<std::vector<Real>> design;
    std::vector<Real> y;
    for (int k = 0; k < samples; ++k) {
        const double ly = ln_y_min + (ln_y_max - ln_y_min) * k / (samples - 1);
        const auto b = moment_to_pointwise(m, Real(ly));
        fit.points.emplace_back(ly, b);
        const Real excess = ln_c - b.log_bound;
        if (excess <= 0) continue;
        design.push_back({Real(ly), Real(1)});
        y.push_back(log(excess));
    }
    if (design.size() < 2) throw std::domain_error("bounds exceed c over the whole range");
    const auto c = least_squares(design, y);
    fit.d = to_double(c[0]);
    fit.intercept = to_double(c[1]);
    return fit;
}

/// (4 N^3)^N: the multinomial expansion of (4N^2 + ... + 4N^2)^N with N terms.
inline Integer multinomial_bound(int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    Integer base = 4 * Integer(n) * n * n, out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

/// sum over compositions (j_1..j_d) of N of prod (2N)^{2 j_i} = (2N)^{2N} binom(N+d-1, d-1).
inline Integer composition_power_sum(int n, int d) {
    if (n < 0 || d < 1) throw std::invalid_argument("require n >= 0, d >= 1");
    Integer p, b, base = 2 * Integer(n);
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(2 * n));
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n + d - 1), static_cast<unsigned long>(d - 1));
    return p * b;
}

}  // namespace loopcert
