#pragma once

// Multiprecision reals and rational enclosures of transcendental values.
//
// Real is boost's dynamic-precision MPFR wrapper. Its default precision is a
// process-wide setting, so PrecisionScope must only be used from one thread at
// a time; code that runs in worker threads works on exact rationals.

#include "loopcert/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <mpfr.h>

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace loopcert {

using Real = boost::multiprecision::mpfr_float;

inline unsigned bits_to_digits10(int bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the default MPFR precision (in bits) for newly created Reals.
class PrecisionScope {
  public:
    explicit PrecisionScope(int bits) : saved_(Real::default_precision()) {
        Real::default_precision(bits_to_digits10(bits));
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

  private:
    unsigned saved_;
};

inline Real to_real(const Rational& q) {
    Real x;
    mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return x;
}

/// Exact rational value of a finite Real.
inline Rational exact_rational(const Real& x) {
    if (!mpfr_number_p(x.backend().data())) throw std::domain_error("non-finite value");
    Rational q;
    mpfr_get_q(q.get_mpq_t(), x.backend().data());
    return q;
}

inline double to_double(const Real& x) { return x.convert_to<double>(); }

inline std::string to_string(const Real& x, int digits = 20) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

/// lo <= value <= hi.
struct RationalInterval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
    Rational width() const { return hi - lo; }
};

namespace detail {

// f applied with directed rounding at the given working precision; f must be
// monotone increasing.
template <typename F>
RationalInterval monotone_enclosure(const Rational& q, int bits, F f) {
    mpfr_t x, y;
    mpfr_init2(x, bits);
    mpfr_init2(y, bits);
    RationalInterval out;
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDD);
    f(y, x, MPFR_RNDD);
    mpfr_get_q(out.lo.get_mpq_t(), y);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDU);
    f(y, x, MPFR_RNDU);
    mpfr_get_q(out.hi.get_mpq_t(), y);
    mpfr_clear(x);
    mpfr_clear(y);
    return out;
}

}  // namespace detail

/// Rational enclosure of ln(q) for q > 0 (64 guard bits beyond `bits`).
inline RationalInterval ln_bounds(const Rational& q, int bits = 64) {
    if (q <= 0) throw std::domain_error("ln of a nonpositive number");
    return detail::monotone_enclosure(q, bits + 64, [](mpfr_t y, mpfr_t x, mpfr_rnd_t r) { mpfr_log(y, x, r); });
}

inline RationalInterval sqrt_bounds(const Rational& q, int bits = 64) {
    if (q < 0) throw std::domain_error("sqrt of a negative number");
    return detail::monotone_enclosure(q, bits + 64, [](mpfr_t y, mpfr_t x, mpfr_rnd_t r) { mpfr_sqrt(y, x, r); });
}

inline RationalInterval exp_bounds(const Rational& q, int bits = 64) {
    return detail::monotone_enclosure(q, bits + 64, [](mpfr_t y, mpfr_t x, mpfr_rnd_t r) { mpfr_exp(y, x, r); });
}

/// Neumaier compensated summation.
class CompensatedSum {
  public:
    CompensatedSum() : sum_(0), comp_(0) {}

    void add(const Real& x) {
        Real t = sum_ + x;
        if (abs(sum_) >= abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    Real value() const { return sum_ + comp_; }

  private:
    Real sum_;
    Real comp_;
};

/// ln(sum_i exp(x_i)) without overflow.
inline Real log_sum_exp(const std::vector<Real>& xs) {
    if (xs.empty()) return Real(-std::numeric_limits<double>::infinity());
    Real m = xs.front();
    for (const auto& x : xs) m = x > m ? x : m;
    CompensatedSum s;
    for (const auto& x : xs) s.add(exp(x - m));
    return m + log(s.value());
}

/// Least squares fit y ~ sum_k c_k phi_k(x) by normal equations in Real.
inline std::vector<Real> least_squares(const std::vector<std::vector<Real>>& design, const std::vector<Real>& y) {
    const std::size_t m = design.empty() ? 0 : design.front().size();
    if (design.size() < m || m == 0) throw std::invalid_argument("least squares: not enough points");
    std::vector<std::vector<Real>> a(m, std::vector<Real>(m + 1, Real(0)));
    for (std::size_t row = 0; row < design.size(); ++row)
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) a[i][j] += design[row][i] * design[row][j];
            a[i][m] += design[row][i] * y[row];
        }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < m; ++r)
            if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        if (a[c][c] == 0) throw std::domain_error("least squares: singular design");
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c) continue;
            const Real f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<Real> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = a[i][m] / a[i][i];
    return out;
}

}  // namespace loopcert
