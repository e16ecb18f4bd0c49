#pragma once

// Dense univariate polynomials with big-integer coefficients and a rational
// scale factor: p(x) = scale * sum_i coeffs[i] x^i.

#include "loopcert/numeric.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace loopcert {

inline Real to_real(const Integer& z) {
    Real x(0);
    mpfr_set_z(x.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return x;
}

class RationalPolynomial {
  public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Integer> coeffs, Rational scale = 1)
        : coeffs_(std::move(coeffs)), scale_(std::move(scale)) {
        normalize();
    }

    static RationalPolynomial constant(const Integer& c) { return RationalPolynomial({c}); }
    static RationalPolynomial monomial(const Integer& c, std::size_t degree) {
        std::vector<Integer> v(degree + 1, 0);
        v[degree] = c;
        return RationalPolynomial(std::move(v));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Integer>& coefficients() const { return coeffs_; }
    const Rational& scale() const { return scale_; }

    Rational coefficient(std::size_t i) const {
        return i < coeffs_.size() ? Rational(scale_ * Rational(coeffs_[i])) : Rational(0);
    }

    RationalPolynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Integer> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
        return RationalPolynomial(std::move(d), scale_);
    }

    Rational evaluate(const Rational& x) const {
        Rational acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + Rational(coeffs_[i]);
        return acc * scale_;
    }

    Real evaluate(const Real& x) const {
        Real acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + to_real(coeffs_[i]);
        return acc * to_real(scale_);
    }

    /// sum_i |scale c_i|, a bound for |p(x)| on [-1, 1].
    Rational abs_coefficient_sum() const {
        Integer s = 0;
        for (const auto& c : coeffs_) s += abs(c);
        return Rational(s) * abs(scale_);
    }

    /// p(-x) = sign * p(x); 0 if neither even nor odd.
    int parity() const {
        bool even = true, odd = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            (i % 2 ? even : odd) = false;
        }
        if (even) return 1;
        if (odd) return -1;
        return 0;
    }

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        // common scale num/den: a = sa * A, b = sb * B
        const Rational& sa = a.scale_;
        const Rational& sb = b.scale_;
        Integer den;
        mpz_lcm(den.get_mpz_t(), sa.get_den_mpz_t(), sb.get_den_mpz_t());
        const Integer fa = sa.get_num() * (den / sa.get_den());
        const Integer fb = sb.get_num() * (den / sb.get_den());
        std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += fa * a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += fb * b.coeffs_[i];
        return RationalPolynomial(std::move(c), Rational(Integer(1), den));
    }

    friend RationalPolynomial operator-(const RationalPolynomial& a) {
        RationalPolynomial r = a;
        r.scale_ = -r.scale_;
        return r;
    }

    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) { return a + (-b); }

    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return RationalPolynomial(std::move(c), a.scale_ * b.scale_);
    }

    friend RationalPolynomial operator*(const Rational& s, const RationalPolynomial& a) {
        if (s == 0) return {};
        RationalPolynomial r = a;
        r.scale_ *= s;
        r.scale_.canonicalize();
        return r;
    }

    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
        return a.coeffs_ == b.coeffs_ && a.scale_ == b.scale_;
    }

    /// q(u) with p(x) = x^(deg mod 2) q(x^2); requires a definite parity.
    RationalPolynomial even_part_in_square() const {
        const int par = parity();
        if (par == 0) throw std::domain_error("polynomial has no definite parity");
        const std::size_t shift = par == 1 ? 0 : 1;
        std::vector<Integer> q;
        for (std::size_t i = shift; i < coeffs_.size(); i += 2) q.push_back(coeffs_[i]);
        return RationalPolynomial(std::move(q), scale_);
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const Rational c = coefficient(i);
            if (c == 0) continue;
            std::string term = (c < 0 ? "-" : (out.empty() ? "" : "+")) + Rational(abs(c)).get_str();
            if (i >= 1) term += "*" + var;
            if (i >= 2) term += "^" + std::to_string(i);
            out += term;
        }
        return out;
    }

  private:
    // strips trailing zeros and moves the integer content into the scale
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.empty()) {
            scale_ = 1;
            return;
        }
        Integer g = 0;
        for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (coeffs_.back() < 0) g = -g;
        if (g != 1) {
            for (auto& c : coeffs_) c /= g;
            scale_ *= Rational(g);
        }
        scale_.canonicalize();
    }

    std::vector<Integer> coeffs_;
    Rational scale_ = 1;
};

/// Number of distinct real roots of p in the open interval (a, b) by Sturm's
/// theorem; neither endpoint may be a root.
inline int sturm_count(const RationalPolynomial& p, const Rational& a, const Rational& b) {
    if (p.degree() <= 0) return 0;
    std::vector<RationalPolynomial> seq{p, p.derivative()};
    auto rem = [](RationalPolynomial u, const RationalPolynomial& v) {
        // exact remainder of u by v over Q
        std::vector<Rational> r;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(u.degree()); ++i) r.push_back(u.coefficient(i));
        std::vector<Rational> d;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(v.degree()); ++i) d.push_back(v.coefficient(i));
        while (r.size() >= d.size()) {
            const Rational f = r.back() / d.back();
            const std::size_t off = r.size() - d.size();
            for (std::size_t i = 0; i < d.size(); ++i) r[off + i] -= f * d[i];
            r.pop_back();
            while (!r.empty() && r.back() == 0) r.pop_back();
        }
        Integer den = 1;
        for (const auto& q : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        std::vector<Integer> c;
        for (const auto& q : r) c.push_back(Integer(q * Rational(den)));
        return RationalPolynomial(std::move(c));
    };
    while (seq.back().degree() > 0) {
        RationalPolynomial r = rem(seq[seq.size() - 2], seq.back());
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    auto variations = [&](const Rational& x) {
        int count = 0, last = 0;
        for (const auto& q : seq) {
            const Rational v = q.evaluate(x);
            const int s = sgn(v);
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };
    if (p.evaluate(a) == 0 || p.evaluate(b) == 0) throw std::domain_error("sturm_count: root at an endpoint");
    return variations(a) - variations(b);
}

}  // namespace loopcert
