#pragma once

// Untwisted affine extension of a finite root system.
//
// (h^e)* has basis {alpha_1..alpha_l, iota, Lambda_{l+1}} and h^e has basis
// {h_1..h_l, h_iota, D}; h_iota also spans the center. The pairing between the
// two is diagonal in the extra coordinates:
//   <lambda, X> = <lambda_cl, X_cl> + iota(lambda) d(X) + Lambda(lambda) h_iota(X).

#include "loopcert/cartan.hpp"

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace loopcert {

struct AffineWeight {
    Weight classical;
    Rational iota;
    Rational lambda;

    friend bool operator==(const AffineWeight&, const AffineWeight&) = default;

    static AffineWeight from_classical(Weight w) { return {std::move(w), 0, 0}; }
};

inline AffineWeight operator+(AffineWeight a, const AffineWeight& b) {
    a.classical.coords = add(std::move(a.classical.coords), b.classical.coords);
    a.iota += b.iota;
    a.lambda += b.lambda;
    return a;
}
inline AffineWeight operator-(AffineWeight a, const AffineWeight& b) {
    a.classical.coords = sub(std::move(a.classical.coords), b.classical.coords);
    a.iota -= b.iota;
    a.lambda -= b.lambda;
    return a;
}
inline AffineWeight operator*(const Rational& s, AffineWeight a) {
    a.classical.coords = scale(std::move(a.classical.coords), s);
    a.iota *= s;
    a.lambda *= s;
    return a;
}

struct CartanElement {
    CorootVector classical;
    Rational h_iota;
    Rational d;

    friend bool operator==(const CartanElement&, const CartanElement&) = default;
};

inline CartanElement operator+(CartanElement a, const CartanElement& b) {
    a.classical.coords = add(std::move(a.classical.coords), b.classical.coords);
    a.h_iota += b.h_iota;
    a.d += b.d;
    return a;
}
inline CartanElement operator-(CartanElement a, const CartanElement& b) {
    a.classical.coords = sub(std::move(a.classical.coords), b.classical.coords);
    a.h_iota -= b.h_iota;
    a.d -= b.d;
    return a;
}
inline CartanElement operator*(const Rational& s, CartanElement a) {
    a.classical.coords = scale(std::move(a.classical.coords), s);
    a.h_iota *= s;
    a.d *= s;
    return a;
}

/// alpha + n iota with alpha a root or zero.
struct AffineRoot {
    IVector classical;
    std::int64_t n = 0;

    bool is_real() const { return !is_zero(classical); }
    bool is_imaginary() const { return is_zero(classical) && n != 0; }

    friend bool operator==(const AffineRoot&, const AffineRoot&) = default;
    friend auto operator<=>(const AffineRoot&, const AffineRoot&) = default;
};

inline AffineRoot operator-(const AffineRoot& a) { return {negate(a.classical), -a.n}; }

/// X = X_cl + <Lambda_{l+1}, X> h_iota + d D.
struct Decomposition {
    CorootVector classical;
    Rational lambda_pairing;
    Rational d;
};

class AffineRootSystem {
  public:
    explicit AffineRootSystem(std::shared_ptr<const FiniteRootSystem> finite) : finite_(std::move(finite)) {
        if (!finite_) throw std::invalid_argument("null root system");
    }

    const FiniteRootSystem& finite() const { return *finite_; }
    std::shared_ptr<const FiniteRootSystem> finite_ptr() const { return finite_; }
    int rank() const { return finite_->rank(); }

    bool is_positive(const AffineRoot& a) const {
        if (a.n != 0) return a.n > 0;
        return finite_->is_positive_root(a.classical);
    }
    bool is_root(const AffineRoot& a) const {
        if (is_zero(a.classical)) return a.n != 0;
        return finite_->is_root(a.classical);
    }

    /// a_1..a_{l+1} (0-based index l is the affine node).
    AffineRoot simple_root(int i) const {
        if (i < 0 || i > rank()) throw std::out_of_range("simple root index");
        if (i < rank()) return {finite_->simple_root(i), 0};
        return {negate(finite_->highest_root()), 1};
    }
    std::vector<AffineRoot> simple_roots() const {
        std::vector<AffineRoot> out;
        for (int i = 0; i <= rank(); ++i) out.push_back(simple_root(i));
        return out;
    }

    AffineWeight weight(const AffineRoot& a) const {
        return {Weight{to_rational(a.classical)}, to_rational(a.n), 0};
    }
    AffineWeight iota() const { return {zero_weight(), 1, 0}; }
    AffineWeight lambda_affine() const { return {zero_weight(), 0, 1}; }
    AffineWeight classical_weight(const Weight& w) const { return AffineWeight::from_classical(w); }

    CartanElement h_iota() const { return {zero_coweight(), 1, 0}; }
    CartanElement degree() const { return {zero_coweight(), 0, 1}; }
    CartanElement classical_element(const CorootVector& x) const { return {x, 0, 0}; }

    /// h_a = h_alpha + (2/(alpha,alpha)) n h_iota for a real root a = alpha + n iota.
    CartanElement coroot(const AffineRoot& a) const {
        if (!a.is_real()) throw std::invalid_argument("coroot of an imaginary root");
        if (!finite_->is_root(a.classical)) throw std::invalid_argument("not an affine root");
        CartanElement x;
        x.classical = CorootVector{to_rational(finite_->coroot(a.classical))};
        x.h_iota = Rational(2) * to_rational(a.n) / finite_->norm2(a.classical);
        x.d = 0;
        return x;
    }

    /// h_1..h_{l+1}; h_{l+1} = h_{-alpha_0} + h_iota.
    CartanElement simple_coroot(int i) const { return coroot(simple_root(i)); }

    Rational pairing(const AffineWeight& lambda, const CartanElement& x) const {
        return finite_->pairing(lambda.classical, x.classical) + lambda.iota * x.d + lambda.lambda * x.h_iota;
    }

    /// Invariant form on (h^e)*: classical form on span(alpha_i), (iota|Lambda) = 1,
    /// every other pairing among {iota, Lambda} and with classical roots zero.
    Rational form(const AffineWeight& a, const AffineWeight& b) const {
        return finite_->form(a.classical, b.classical) + a.iota * b.lambda + a.lambda * b.iota;
    }

    /// Invariant form on h^e: classical form on h, (h_iota|D) = 1.
    Rational form(const CartanElement& x, const CartanElement& y) const {
        return finite_->coform(x.classical, y.classical) + x.h_iota * y.d + x.d * y.h_iota;
    }

    Decomposition decompose(const CartanElement& x) const {
        return {x.classical, pairing(lambda_affine(), x), x.d};
    }
    CartanElement recompose(const Decomposition& p) const { return {p.classical, p.lambda_pairing, p.d}; }

    /// h'_b = sum_i k_i ((a_i|a_i)/2) h_i for b = sum_i k_i a_i (coefficients over a_1..a_{l+1}).
    CartanElement normalized_coroot(const std::vector<std::int64_t>& coeffs) const {
        if (static_cast<int>(coeffs.size()) != rank() + 1) throw std::invalid_argument("need l+1 coefficients");
        CartanElement out{zero_coweight(), 0, 0};
        for (int i = 0; i <= rank(); ++i) {
            if (coeffs[i] == 0) continue;
            const AffineRoot ai = simple_root(i);
            const Rational half = form(weight(ai), weight(ai)) / 2;
            out = out + (to_rational(coeffs[i]) * half) * simple_coroot(i);
        }
        return out;
    }

    /// Expands b = sum_i k_i a_i from an affine root-lattice element alpha + n iota.
    std::vector<std::int64_t> simple_coefficients(const AffineRoot& a) const {
        // iota = a_{l+1} + alpha_0, so alpha + n iota = (alpha + n alpha_0) + n a_{l+1}
        std::vector<std::int64_t> k(rank() + 1);
        const IVector& top = finite_->highest_root();
        for (int i = 0; i < rank(); ++i) k[i] = a.classical[i] + a.n * top[i];
        k[rank()] = a.n;
        return k;
    }

    Weight zero_weight() const { return Weight{RVector(rank())}; }
    CorootVector zero_coweight() const { return CorootVector{RVector(rank())}; }

  private:
    std::shared_ptr<const FiniteRootSystem> finite_;
};

inline nlohmann::json to_json(const AffineWeight& w) {
    return {{"classical", to_json(w.classical.coords)}, {"iota", to_json(w.iota)}, {"lambda", to_json(w.lambda)}};
}

inline nlohmann::json to_json(const CartanElement& x) {
    return {{"classical", to_json(x.classical.coords)}, {"h_iota", to_json(x.h_iota)}, {"d", to_json(x.d)}};
}

inline AffineWeight affine_weight_from_json(const nlohmann::json& j) {
    return {Weight{rvector_from_json(j.at("classical"))}, rational_from_json(j.at("iota")),
            rational_from_json(j.at("lambda"))};
}

inline CartanElement cartan_element_from_json(const nlohmann::json& j) {
    return {CorootVector{rvector_from_json(j.at("classical"))}, rational_from_json(j.at("h_iota")),
            rational_from_json(j.at("d"))};
}

inline nlohmann::json to_json(const AffineRoot& a) { return {{"classical", a.classical}, {"n", a.n}}; }

}  // namespace loopcert
