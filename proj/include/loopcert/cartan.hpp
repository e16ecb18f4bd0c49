#pragma once

// Finite (classical) root systems built from their Cartan matrices.
//
// Conventions used throughout the library:
//   * weights (elements of h*) are stored in simple-root coordinates,
//   * elements of h are stored in simple-coroot coordinates,
//   * the Cartan matrix entry C(i,j) is <alpha_j, h_i>, so that the pairing
//     of a weight lambda with X is  sum_{i,j} X_i C(i,j) lambda_j,
//   * the invariant form is normalized so the highest root has (a0,a0) = 2.
// Simple roots are numbered as in Bourbaki.

#include "loopcert/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loopcert {

/// Element of h* in simple-root coordinates.
struct Weight {
    RVector coords;
    friend bool operator==(const Weight&, const Weight&) = default;
};

/// Element of h in simple-coroot coordinates.
struct CorootVector {
    RVector coords;
    friend bool operator==(const CorootVector&, const CorootVector&) = default;
};

/// Series letter plus rank, e.g. {'E', 8}.
struct RootType {
    char series = 'A';
    int rank = 1;

    std::string name() const { return std::string(1, series) + std::to_string(rank); }

    /// Parses "A2", "g2", "E8".
    static RootType parse(const std::string& text) {
        if (text.size() < 2) throw std::invalid_argument("bad root type '" + text + "'");
        RootType t;
        t.series = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
        const std::string digits = text.substr(1);
        if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw std::invalid_argument("bad root type '" + text + "'");
        t.rank = std::stoi(digits);
        return t;
    }
    friend bool operator==(const RootType&, const RootType&) = default;
};

class CartanMatrix {
  public:
    explicit CartanMatrix(IMatrix entries) : m_(std::move(entries)) { validate(); }

    int rank() const { return static_cast<int>(m_.rows()); }
    std::int64_t operator()(int i, int j) const { return m_(i, j); }
    const IMatrix& matrix() const { return m_; }

  private:
    void validate() const {
        if (m_.rows() == 0 || m_.rows() != m_.cols()) throw std::invalid_argument("Cartan matrix must be square");
        const std::size_t n = m_.rows();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j && m_(i, j) != 2) throw std::invalid_argument("Cartan matrix diagonal must be 2");
                if (i != j && m_(i, j) > 0) throw std::invalid_argument("Cartan matrix off-diagonal must be <= 0");
                if ((m_(i, j) == 0) != (m_(j, i) == 0))
                    throw std::invalid_argument("Cartan matrix zero pattern not symmetric");
            }
    }

    IMatrix m_;
};

namespace detail {

// Type described by squared lengths of simple roots and the nonzero inner
// products between them; the Cartan matrix follows as 2(a_i,a_j)/(a_i,a_i).
struct DynkinData {
    std::vector<std::int64_t> norm2;
    std::vector<std::tuple<int, int, std::int64_t>> links;  // 0-based (i, j, (a_i,a_j))
};

inline DynkinData chain(int n, std::int64_t norm) {
    DynkinData d;
    d.norm2.assign(n, norm);
    for (int i = 0; i + 1 < n; ++i) d.links.emplace_back(i, i + 1, -norm / 2);
    return d;
}

inline DynkinData dynkin_data(const RootType& t) {
    const int n = t.rank;
    auto need = [&](bool ok) {
        if (!ok) throw std::invalid_argument("rank out of range for series " + t.name());
    };
    switch (t.series) {
        case 'A':
            need(n >= 1);
            return chain(n, 2);
        case 'B': {  // alpha_n short
            need(n >= 2);
            DynkinData d = chain(n - 1, 4);
            d.norm2.push_back(2);
            d.links.emplace_back(n - 2, n - 1, -2);
            return d;
        }
        case 'C': {  // alpha_n long
            need(n >= 2);
            DynkinData d = chain(n - 1, 2);
            d.norm2.push_back(4);
            d.links.emplace_back(n - 2, n - 1, -2);
            return d;
        }
        case 'D': {
            need(n >= 4);
            DynkinData d = chain(n - 1, 2);
            d.norm2.push_back(2);
            d.links.emplace_back(n - 3, n - 1, -1);
            return d;
        }
        case 'E': {
            need(n >= 6 && n <= 8);
            DynkinData d;
            d.norm2.assign(n, 2);
            // 1-3-4-5-6-7-8 with 2 attached to 4 (1-based)
            d.links = {{0, 2, -1}, {1, 3, -1}, {2, 3, -1}};
            for (int i = 3; i + 1 < n; ++i) d.links.emplace_back(i, i + 1, -1);
            return d;
        }
        case 'F': {
            need(n == 4);
            DynkinData d;
            d.norm2 = {4, 4, 2, 2};
            d.links = {{0, 1, -2}, {1, 2, -2}, {2, 3, -1}};
            return d;
        }
        case 'G': {  // alpha_1 short, alpha_2 long
            need(n == 2);
            DynkinData d;
            d.norm2 = {2, 6};
            d.links = {{0, 1, -3}};
            return d;
        }
        default:
            throw std::invalid_argument(std::string("unknown series '") + t.series + "'");
    }
}

}  // namespace detail

inline CartanMatrix cartan_matrix(const RootType& t) {
    const auto d = detail::dynkin_data(t);
    const int n = t.rank;
    IMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 2;
    for (auto [i, j, ip] : d.links) {
        m(i, j) = 2 * ip / d.norm2[i];
        m(j, i) = 2 * ip / d.norm2[j];
    }
    return CartanMatrix(std::move(m));
}

class FiniteRootSystem {
  public:
    FiniteRootSystem(RootType type, CartanMatrix cartan) : type_(type), cartan_(std::move(cartan)) {
        if (type_.rank != cartan_.rank()) throw std::invalid_argument("rank mismatch between type and Cartan matrix");
        build_form();
        build_roots();
        normalize_form();
        build_weights();
    }

    const RootType& type() const { return type_; }
    int rank() const { return cartan_.rank(); }
    const CartanMatrix& cartan() const { return cartan_; }

    /// Positive roots ordered by height, then lexicographically.
    const std::vector<IVector>& positive_roots() const { return positive_; }
    const IVector& highest_root() const { return positive_.back(); }
    IVector simple_root(int i) const {
        IVector v(rank(), 0);
        v.at(i) = 1;
        return v;
    }

    bool is_root(const IVector& v) const { return root_index_.count(v) > 0 || root_index_.count(negate(v)) > 0; }
    bool is_positive_root(const IVector& v) const { return root_index_.count(v) > 0; }
    /// Index into positive_roots() of +-v; throws if v is not a root.
    std::size_t positive_index(const IVector& v) const {
        auto it = root_index_.find(v);
        if (it == root_index_.end()) it = root_index_.find(negate(v));
        if (it == root_index_.end()) throw std::invalid_argument("not a root");
        return it->second;
    }

    /// (alpha_i, alpha_j) on simple roots.
    const RMatrix& form_matrix() const { return form_; }
    /// (h_i, h_j) on simple coroots.
    const RMatrix& coform_matrix() const { return coform_; }
    const RMatrix& cartan_rational() const { return cartan_q_; }

    Rational form(const Weight& a, const Weight& b) const { return bilinear(form_, a.coords, b.coords); }
    Rational form(const IVector& a, const IVector& b) const {
        return bilinear(form_, to_rational(a), to_rational(b));
    }
    Rational coform(const CorootVector& x, const CorootVector& y) const {
        return bilinear(coform_, x.coords, y.coords);
    }
    Rational norm2(const IVector& root) const { return form(root, root); }
    Rational simple_norm2(int i) const { return form_(i, i); }

    /// <lambda, X> with C(i,j) = <alpha_j, h_i>.
    Rational pairing(const Weight& lambda, const CorootVector& x) const {
        check_rank(lambda.coords.size());
        check_rank(x.coords.size());
        return bilinear(cartan_q_, x.coords, lambda.coords);
    }
    std::int64_t pairing(const IVector& root, const IVector& coroot) const {
        std::int64_t s = 0;
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j) s += coroot[i] * cartan_(i, j) * root[j];
        return s;
    }

    /// Coroot h_beta in simple-coroot coordinates (integral).
    IVector coroot(const IVector& root) const {
        const Rational n2 = norm2(root);
        RVector c(rank());
        for (int i = 0; i < rank(); ++i) c[i] = to_rational(root[i]) * form_(i, i) / n2;
        return to_integer(c);
    }

    const Weight& fundamental_weight(int i) const { return weights_.at(i); }
    const CorootVector& fundamental_coweight(int j) const { return coweights_.at(j); }
    const Weight& rho() const { return rho_; }

    /// Simple-root expansion of omega_i; every coefficient is strictly positive.
    RVector weight_in_simple_roots(int i) const { return fundamental_weight(i).coords; }

    /// Fundamental-weight coordinates <lambda, h_j>.
    RVector to_fundamental_coords(const Weight& lambda) const {
        RVector out(rank());
        for (int j = 0; j < rank(); ++j) {
            CorootVector hj{RVector(rank())};
            hj.coords[j] = 1;
            out[j] = pairing(lambda, hj);
        }
        return out;
    }
    Weight from_fundamental_coords(const RVector& f) const {
        check_rank(f.size());
        Weight w{RVector(rank())};
        for (int j = 0; j < rank(); ++j)
            for (int k = 0; k < rank(); ++k) w.coords[k] += f[j] * weights_[j].coords[k];
        return w;
    }

    /// Image of X under the isomorphism h -> h* induced by the form.
    Weight to_weight(const CorootVector& x) const {
        Weight w{RVector(rank())};
        for (int j = 0; j < rank(); ++j) w.coords[j] = x.coords[j] * 2 / form_(j, j);
        return w;
    }

    /// s_i(lambda) = lambda - <lambda, h_i> alpha_i.
    Weight simple_reflection(int i, Weight lambda) const {
        check_rank(lambda.coords.size());
        Rational p = 0;
        for (int j = 0; j < rank(); ++j) p += cartan_q_(i, j) * lambda.coords[j];
        lambda.coords.at(i) -= p;
        return lambda;
    }
    IVector simple_reflection(int i, IVector root) const {
        std::int64_t p = 0;
        for (int j = 0; j < rank(); ++j) p += cartan_(i, j) * root[j];
        root.at(i) -= p;
        return root;
    }

  private:
    void check_rank(std::size_t n) const {
        if (static_cast<int>(n) != rank()) throw std::invalid_argument("rank mismatch");
    }

    // Symmetrizer from the Cartan matrix: C(i,j)(a_i,a_i) = C(j,i)(a_j,a_j).
    void build_form() {
        const int n = rank();
        cartan_q_ = to_rational(cartan_.matrix());
        RVector len(n);
        std::vector<bool> seen(n, false);
        len[0] = 1;
        seen[0] = true;
        std::vector<int> stack{0};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (j == i || cartan_(i, j) == 0) continue;
                Rational lj = len[i] * to_rational(cartan_(i, j)) / to_rational(cartan_(j, i));
                if (seen[j]) {
                    if (lj != len[j]) throw std::invalid_argument("Cartan matrix is not symmetrizable");
                    continue;
                }
                len[j] = lj;
                seen[j] = true;
                stack.push_back(j);
            }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw std::invalid_argument("Cartan matrix is not irreducible");
        form_ = RMatrix(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) form_(i, j) = to_rational(cartan_(i, j)) * len[i] / 2;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (form_(i, j) != form_(j, i)) throw std::invalid_argument("Cartan matrix is not symmetrizable");
        if (!is_positive_definite(form_)) throw std::invalid_argument("Cartan matrix is not of finite type");
    }

    // Height-layer closure: beta + alpha_i is a root iff q = p - <beta, h_i> > 0,
    // where p is the length of the alpha_i-string below beta.
    void build_roots() {
        const int n = rank();
        std::vector<IVector> layer;
        for (int i = 0; i < n; ++i) layer.push_back(simple_root(i));
        std::map<IVector, std::size_t> known;
        while (!layer.empty()) {
            std::sort(layer.begin(), layer.end());
            for (auto& r : layer) {
                known.emplace(r, positive_.size());
                positive_.push_back(r);
            }
            std::vector<IVector> next;
            for (const auto& beta : layer) {
                for (int i = 0; i < n; ++i) {
                    int p = 0;
                    IVector down = beta;
                    while (true) {
                        down[i] -= 1;
                        if (!known.count(down)) break;
                        ++p;
                    }
                    std::int64_t q = p - pairing(beta, coroot_simple(i));
                    if (q <= 0) continue;
                    IVector up = beta;
                    up[i] += 1;
                    if (std::find(next.begin(), next.end(), up) == next.end()) next.push_back(up);
                }
            }
            layer = std::move(next);
            if (positive_.size() > 100000) throw std::runtime_error("root closure did not terminate");
        }
        for (std::size_t k = 0; k < positive_.size(); ++k) root_index_.emplace(positive_[k], k);
        // highest root must dominate every root coordinatewise
        const IVector& top = positive_.back();
        for (const auto& r : positive_)
            for (int i = 0; i < n; ++i)
                if (r[i] > top[i]) throw std::logic_error("highest root is not unique");
    }

    IVector coroot_simple(int i) const {
        IVector v(rank(), 0);
        v[i] = 1;
        return v;
    }

    void normalize_form() {
        const Rational top = norm2(highest_root());
        const Rational factor = Rational(2) / top;
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j) form_(i, j) *= factor;
        coform_ = RMatrix(rank(), rank());
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j) coform_(i, j) = 4 * form_(i, j) / (form_(i, i) * form_(j, j));
    }

    void build_weights() {
        const int n = rank();
        // <omega_i, h_j> = delta_ij  =>  coordinates are rows of (C^T)^{-1}
        const RMatrix wt = inverse(cartan_q_.transpose());
        // <alpha_i, omega_j^vee> = delta_ij  =>  coordinates are rows of C^{-1}
        const RMatrix cw = inverse(cartan_q_);
        for (int i = 0; i < n; ++i) {
            weights_.push_back(Weight{wt.row(i)});
            coweights_.push_back(CorootVector{cw.row(i)});
        }
        rho_ = Weight{RVector(n)};
        for (const auto& r : positive_)
            for (int i = 0; i < n; ++i) rho_.coords[i] += to_rational(r[i]);
        for (auto& c : rho_.coords) c /= 2;
    }

    RootType type_;
    CartanMatrix cartan_;
    RMatrix cartan_q_;
    RMatrix form_;
    RMatrix coform_;
    std::vector<IVector> positive_;
    std::map<IVector, std::size_t> root_index_;
    std::vector<Weight> weights_;
    std::vector<CorootVector> coweights_;
    Weight rho_;
};

inline std::shared_ptr<const FiniteRootSystem> build_root_system(const RootType& t) {
    return std::make_shared<const FiniteRootSystem>(t, cartan_matrix(t));
}

inline std::shared_ptr<const FiniteRootSystem> build_root_system(char series, int rank) {
    return build_root_system(RootType{series, rank});
}

/// Number of positive roots of each irreducible type.
inline std::size_t classical_positive_root_count(const RootType& t) {
    const std::size_t n = static_cast<std::size_t>(t.rank);
    switch (t.series) {
        case 'A': return n * (n + 1) / 2;
        case 'B':
        case 'C': return n * n;
        case 'D': return n * (n - 1);
        case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
        case 'F': return 24;
        case 'G': return 6;
        default: throw std::invalid_argument("unknown series");
    }
}

/// {type, rank, cartan, positive_roots, highest_root, weights, coweights, rho, form}.
inline nlohmann::json to_json(const FiniteRootSystem& rs) {
    nlohmann::json j;
    j["type"] = rs.type().name();
    j["rank"] = rs.rank();
    j["cartan"] = to_json(rs.cartan().matrix());
    j["cartan_convention"] = "cartan[i][j] = <alpha_j, h_i>";
    j["positive_roots"] = rs.positive_roots();
    j["highest_root"] = rs.highest_root();
    auto weights = nlohmann::json::array();
    auto coweights = nlohmann::json::array();
    for (int i = 0; i < rs.rank(); ++i) {
        weights.push_back(to_json(rs.fundamental_weight(i).coords));
        coweights.push_back(to_json(rs.fundamental_coweight(i).coords));
    }
    j["weights"] = weights;
    j["coweights"] = coweights;
    j["rho"] = to_json(rs.rho().coords);
    j["form"] = to_json(rs.form_matrix());
    return j;
}

}  // namespace loopcert
