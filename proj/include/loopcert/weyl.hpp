#pragma once

// The affine Weyl group W ⋉ Q^vee.
//
// Every element is kept in the canonical form w = w~ T_b (w~ in the finite
// Weyl group, b in the coroot lattice), where T_b acts on classical weights by
// T_b(lambda) = lambda + <lambda, b> iota. Reduced words are cached only as a
// convenience; identity of elements is decided by (w~, b).
//
// Words are read as products from left to right: {i1, i2, ..., ik} is
// w_{i1} w_{i2} ... w_{ik}. Generator indices are 0-based and index rank()
// is the affine reflection w_{l+1}.

#include "loopcert/affine.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace loopcert {

class ResourceLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Finite Weyl group element acting on simple-root (roots) and simple-coroot
/// (coroots) coordinates; columns are images of basis vectors.
struct FiniteWeylElement {
    IMatrix roots;
    IMatrix roots_inv;
    IMatrix coroots;
    IMatrix coroots_inv;

    friend bool operator==(const FiniteWeylElement& a, const FiniteWeylElement& b) { return a.roots == b.roots; }
};

inline FiniteWeylElement operator*(const FiniteWeylElement& x, const FiniteWeylElement& y) {
    return {x.roots * y.roots, y.roots_inv * x.roots_inv, x.coroots * y.coroots, y.coroots_inv * x.coroots_inv};
}

inline FiniteWeylElement inverse(const FiniteWeylElement& x) {
    return {x.roots_inv, x.roots, x.coroots_inv, x.coroots};
}

struct AffineWeylElement {
    FiniteWeylElement tilde;
    IVector b;
    std::vector<int> word;  // reduced word when known
    int length = -1;        // cached length, -1 if not yet computed

    friend bool operator==(const AffineWeylElement& x, const AffineWeylElement& y) {
        return x.b == y.b && x.tilde == y.tilde;
    }
};

/// Canonical key (w~ root matrix followed by b) used for hashing and ordering.
inline std::vector<std::int64_t> canonical_key(const AffineWeylElement& w) {
    std::vector<std::int64_t> key = w.tilde.roots.data();
    key.insert(key.end(), w.b.begin(), w.b.end());
    return key;
}

struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto v : key) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

/// Elements with length <= max_len grouped by length (BFS order).
struct Enumeration {
    int max_len = 0;
    std::vector<AffineWeylElement> elements;
    std::vector<std::size_t> layer_begin;  // layer_begin[n] .. layer_begin[n+1]

    std::size_t count(int n) const { return layer_begin[n + 1] - layer_begin[n]; }
    std::vector<std::size_t> counts() const {
        std::vector<std::size_t> c;
        for (int n = 0; n <= max_len; ++n) c.push_back(count(n));
        return c;
    }
};

struct KappaEntry {
    IVector sigma;
    std::int64_t kappa = 0;
};

class AffineWeylGroup {
  public:
    static constexpr std::size_t kDefaultElementCap = 10'000'000;

    explicit AffineWeylGroup(std::shared_ptr<const FiniteRootSystem> finite)
        : affine_(std::move(finite)), cartan_inv_(loopcert::inverse(rs().cartan_rational())) {
        const int l = rank();
        for (int i = 0; i < l; ++i) {
            AffineWeylElement g{reflection(rs().simple_root(i)), IVector(l, 0), {i}, 1};
            generators_.push_back(std::move(g));
        }
        const IVector& top = rs().highest_root();
        generators_.push_back(AffineWeylElement{reflection(top), rs().coroot(top), {l}, 1});
    }

    const FiniteRootSystem& rs() const { return affine_.finite(); }
    const AffineRootSystem& affine() const { return affine_; }
    int rank() const { return rs().rank(); }
    int generator_count() const { return rank() + 1; }

    const AffineWeylElement& generator(int i) const { return generators_.at(i); }

    AffineWeylElement identity() const {
        const int l = rank();
        FiniteWeylElement e{IMatrix::identity(l), IMatrix::identity(l), IMatrix::identity(l), IMatrix::identity(l)};
        return {e, IVector(l, 0), {}, 0};
    }

    /// Finite reflection s_alpha for a root alpha.
    FiniteWeylElement reflection(const IVector& alpha) const {
        const int l = rank();
        const IVector h = rs().coroot(alpha);
        IMatrix r(l, l), k(l, l);
        for (int j = 0; j < l; ++j) {
            IVector aj = rs().simple_root(j);
            const std::int64_t p = rs().pairing(aj, h);  // <alpha_j, h_alpha>
            const std::int64_t q = rs().pairing(alpha, aj);  // <alpha, h_j>
            for (int i = 0; i < l; ++i) {
                r(i, j) = (i == j ? 1 : 0) - p * alpha[i];
                k(i, j) = (i == j ? 1 : 0) - q * h[i];
            }
        }
        return {r, r, k, k};
    }

    /// (w~1 T_b1)(w~2 T_b2) = w~1 w~2 T_{w~2^{-1} b1 + b2}. Words are concatenated
    /// but not assumed reduced.
    AffineWeylElement multiply(const AffineWeylElement& x, const AffineWeylElement& y) const {
        AffineWeylElement out;
        out.tilde = x.tilde * y.tilde;
        out.b = add(y.tilde.coroots_inv * x.b, y.b);
        return out;
    }

    /// (w~ T_b)^{-1} = w~^{-1} T_{-w~ b}.
    AffineWeylElement inverse(const AffineWeylElement& x) const {
        AffineWeylElement out;
        out.tilde = loopcert::inverse(x.tilde);
        out.b = negate(x.tilde.coroots * x.b);
        if (x.length >= 0) out.length = x.length;
        if (!x.word.empty() || x.length == 0) out.word.assign(x.word.rbegin(), x.word.rend());
        return out;
    }

    /// Product of generators; the word is kept but reducedness is not checked.
    AffineWeylElement from_word_product(const std::vector<int>& word) const {
        AffineWeylElement w = identity();
        for (int i : word) w = multiply(w, generator(checked(i)));
        w.word = word;
        w.length = -1;
        return w;
    }

    /// Recovers (w~, b) from the action of the word on the classical simple roots:
    /// w alpha_i = w~ alpha_i + <alpha_i, b> iota, and b = sum_i <alpha_i, b> omega_i^vee.
    AffineWeylElement from_word(const std::vector<int>& word) const {
        const int l = rank();
        IMatrix r(l, l);
        RVector pair_b(l);
        for (int i = 0; i < l; ++i) {
            AffineWeight lam = affine_.weight(affine_.simple_root(i));
            for (auto it = word.rbegin(); it != word.rend(); ++it) lam = reflect(*it, lam);
            if (lam.lambda != 0) throw std::logic_error("from_word: Lambda component appeared");
            IVector col = to_integer(lam.classical.coords);
            for (int k = 0; k < l; ++k) r(k, i) = col[k];
            pair_b[i] = lam.iota;
        }
        RVector bq(l);
        for (int i = 0; i < l; ++i)
            for (int k = 0; k < l; ++k) bq[k] += pair_b[i] * rs().fundamental_coweight(i).coords[k];
        IVector b;
        try {
            b = to_integer(bq);
        } catch (const std::domain_error&) {
            throw std::logic_error("from_word: translation part is not in the coroot lattice");
        }
        AffineWeylElement w{finite_from_roots(r), b, word, -1};
        return w;
    }

    /// Finite Weyl element from its root matrix.
    FiniteWeylElement finite_from_roots(const IMatrix& r) const {
        const int l = rank();
        IMatrix k(l, l);
        for (int j = 0; j < l; ++j) {
            IVector h = rs().coroot(r.column(j));
            for (int i = 0; i < l; ++i) k(i, j) = h[i];
        }
        // K^T C R = C  =>  R^{-1} = C^{-1} K^T C
        const RMatrix c = rs().cartan_rational();
        const RMatrix rinv_q = cartan_inv_ * to_rational(k).transpose() * c;
        IMatrix rinv(l, l);
        for (int i = 0; i < l; ++i) {
            IVector row = to_integer(rinv_q.row(i));
            for (int j = 0; j < l; ++j) rinv(i, j) = row[j];
        }
        IMatrix kinv(l, l);
        for (int j = 0; j < l; ++j) {
            IVector h = rs().coroot(rinv.column(j));
            for (int i = 0; i < l; ++i) kinv(i, j) = h[i];
        }
        return {r, rinv, k, kinv};
    }

    /// w_i(lambda) = lambda - <lambda, h_i> a_i.
    AffineWeight reflect(int i, const AffineWeight& lambda) const {
        checked(i);
        const Rational p = affine_.pairing(lambda, affine_.simple_coroot(i));
        return lambda - p * affine_.weight(affine_.simple_root(i));
    }

    AffineRoot reflect(int i, const AffineRoot& a) const {
        checked(i);
        const IVector h = i < rank() ? rs().simple_root(i) : negate(rs().coroot(rs().highest_root()));
        const std::int64_t p = rs().pairing(a.classical, h);
        const AffineRoot ai = affine_.simple_root(i);
        AffineRoot out = a;
        for (int k = 0; k < rank(); ++k) out.classical[k] -= p * ai.classical[k];
        out.n -= p * ai.n;
        return out;
    }

    /// w(alpha + n iota) = w~ alpha + (n + <alpha, b>) iota.
    AffineRoot act(const AffineWeylElement& w, const AffineRoot& a) const {
        AffineRoot out;
        out.classical = w.tilde.roots * a.classical;
        out.n = a.n + rs().pairing(a.classical, w.b);
        return out;
    }

    /// Action on (h^e)*; T_b fixes iota and sends Lambda to Lambda - nu(b) - ((b,b)/2) iota.
    AffineWeight act(const AffineWeylElement& w, const AffineWeight& lambda) const {
        const CorootVector b{to_rational(w.b)};
        AffineWeight t = lambda;
        t.iota += rs().pairing(lambda.classical, b) - lambda.lambda * rs().coform(b, b) / 2;
        t.classical.coords = sub(t.classical.coords, scale(rs().to_weight(b).coords, lambda.lambda));
        t.classical.coords = to_rational(w.tilde.roots) * t.classical.coords;
        return t;
    }

    /// w (m h_iota + h + r D) = [-r(b,b)/2 + (h,b) + m] h_iota - r w~(b) + w~(h) + r D.
    CartanElement act_on_cartan(const AffineWeylElement& w, const CartanElement& x) const {
        const CorootVector b{to_rational(w.b)};
        const RMatrix k = to_rational(w.tilde.coroots);
        CartanElement out;
        out.h_iota = -x.d * rs().coform(b, b) / 2 + rs().coform(x.classical, b) + x.h_iota;
        out.classical.coords = sub(k * x.classical.coords, scale(k * b.coords, x.d));
        out.d = x.d;
        return out;
    }

    /// Iwahori-Matsumoto: for w = T_{b'} w~ (b' = w~ b),
    /// l(w) = sum_{alpha > 0} |<alpha, b'> + chi(w~^{-1} alpha < 0)|.
    int length_im(const AffineWeylElement& w) const {
        const IVector bp = w.tilde.coroots * w.b;
        std::int64_t total = 0;
        for (const auto& alpha : rs().positive_roots()) {
            const IVector image = w.tilde.roots_inv * alpha;
            const std::int64_t chi = rs().is_positive_root(image) ? 0 : 1;
            total += std::llabs(rs().pairing(alpha, bp) + chi);
        }
        return static_cast<int>(total);
    }

    /// Breadth-first enumeration of {w : l(w) <= max_len}.
    Enumeration enumerate(int max_len, std::size_t cap = kDefaultElementCap) const {
        if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
        Enumeration e;
        e.max_len = max_len;
        std::unordered_map<std::vector<std::int64_t>, std::size_t, KeyHash> seen;
        e.elements.push_back(identity());
        seen.emplace(canonical_key(e.elements.back()), 0);
        e.layer_begin = {0, 1};
        for (int n = 1; n <= max_len; ++n) {
            const std::size_t lo = e.layer_begin[n - 1], hi = e.layer_begin[n];
            for (std::size_t idx = lo; idx < hi; ++idx) {
                for (int g = 0; g < generator_count(); ++g) {
                    AffineWeylElement next = multiply(e.elements[idx], generator(g));
                    auto key = canonical_key(next);
                    if (seen.count(key)) continue;
                    next.word = e.elements[idx].word;
                    next.word.push_back(g);
                    next.length = n;
                    seen.emplace(std::move(key), e.elements.size());
                    e.elements.push_back(std::move(next));
                    if (e.elements.size() > cap)
                        throw ResourceLimitError("enumeration exceeded element cap of " + std::to_string(cap));
                }
            }
            e.layer_begin.push_back(e.elements.size());
        }
        return e;
    }

    /// Reduced word by repeated right descents (uses the length formula).
    std::vector<int> reduced_word(AffineWeylElement w) const {
        std::vector<int> rev;
        int len = length_im(w);
        while (len > 0) {
            bool found = false;
            for (int g = 0; g < generator_count(); ++g) {
                AffineWeylElement shorter = multiply(w, generator(g));
                const int sl = length_im(shorter);
                if (sl < len) {
                    rev.push_back(g);
                    w = std::move(shorter);
                    len = sl;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("no descent found for element of positive length");
        }
        return {rev.rbegin(), rev.rend()};
    }

    /// Inverted roots {a > 0 : w^{-1} a < 0} from a reduced word
    /// w = w_{k1} ... w_{kr}: beta = w_{k1} ... w_{kp}(a_{k(p+1)}).
    std::vector<AffineRoot> inverted_roots_word(const AffineWeylElement& w) const {
        const std::vector<int> word = (w.length >= 0 && static_cast<int>(w.word.size()) == w.length)
                                          ? w.word
                                          : reduced_word(w);
        std::vector<AffineRoot> out;
        for (std::size_t p = 0; p < word.size(); ++p) {
            AffineRoot beta = affine_.simple_root(word[p]);
            for (std::size_t q = p; q-- > 0;) beta = reflect(word[q], beta);
            out.push_back(std::move(beta));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Same set by scanning candidates alpha + n iota with 0 <= n <= l(w) + 2;
    /// the count must equal l(w).
    std::vector<AffineRoot> inverted_roots_scan(const AffineWeylElement& w) const {
        const int len = length_of(w);
        const AffineWeylElement winv = inverse(w);
        std::vector<AffineRoot> out;
        for (const auto& a : candidates(len + 2, true)) {
            if (!affine_.is_positive(act(winv, a))) out.push_back(a);
        }
        std::sort(out.begin(), out.end());
        if (static_cast<int>(out.size()) != len)
            throw std::runtime_error("inverted-root scan bound exhausted: found " + std::to_string(out.size()) +
                                     " roots for length " + std::to_string(len));
        return out;
    }

    /// Delta_{-,w} = {a < 0 : w a > 0} = w^{-1} Delta_w, by scanning.
    std::vector<AffineRoot> neg_inverted(const AffineWeylElement& w) const {
        const int len = length_of(w);
        std::vector<AffineRoot> out;
        for (const auto& a : candidates(len + 2, false)) {
            if (affine_.is_positive(act(w, a))) out.push_back(a);
        }
        std::sort(out.begin(), out.end());
        if (static_cast<int>(out.size()) != len)
            throw std::runtime_error("negative inverted-root scan bound exhausted");
        return out;
    }

    /// gamma_j = w_{i1} ... w_{ij}(a_{ij}) for w = w_{ir} ... w_{i1}; with
    /// `drop_last` the alternative -w_{i1} ... w_{i(j-1)}(a_{ij}).
    std::vector<AffineRoot> neg_inverted_closed_form(const AffineWeylElement& w, bool drop_last) const {
        const std::vector<int> word = reduced_word(w);
        // i_1 is the last letter of the word
        const std::vector<int> i(word.rbegin(), word.rend());
        std::vector<AffineRoot> out;
        for (std::size_t j = 0; j < i.size(); ++j) {
            AffineRoot g = affine_.simple_root(i[j]);
            if (drop_last) {
                for (std::size_t q = j; q-- > 0;) g = reflect(i[q], g);
                g = -g;
            } else {
                for (std::size_t q = j + 1; q-- > 0;) g = reflect(i[q], g);
            }
            out.push_back(std::move(g));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// w^{-1} alpha_i > 0 for every classical simple root.
    bool is_kostant(const AffineWeylElement& w) const {
        const AffineWeylElement winv = inverse(w);
        for (int i = 0; i < rank(); ++i)
            if (!affine_.is_positive(act(winv, affine_.simple_root(i)))) return false;
        return true;
    }

    /// w^{-1} alpha_i = sigma_i + kappa_i iota for w in W^theta.
    std::vector<KappaEntry> kappa(const AffineWeylElement& w) const {
        if (!is_kostant(w)) throw std::invalid_argument("kappa: element is not a Kostant representative");
        const AffineWeylElement winv = inverse(w);
        std::vector<KappaEntry> out;
        for (int i = 0; i < rank(); ++i) {
            AffineRoot img = act(winv, affine_.simple_root(i));
            out.push_back({img.classical, img.n});
        }
        return out;
    }

    int length_of(const AffineWeylElement& w) const { return w.length >= 0 ? w.length : length_im(w); }

  private:
    int checked(int i) const {
        if (i < 0 || i > rank()) throw std::out_of_range("generator index " + std::to_string(i) + " out of range");
        return i;
    }

    // Real affine roots alpha + n iota with |n| <= bound, of the requested sign.
    std::vector<AffineRoot> candidates(int bound, bool positive) const {
        std::vector<AffineRoot> out;
        for (const auto& alpha : rs().positive_roots()) {
            for (int s : {1, -1}) {
                IVector cl = s > 0 ? alpha : negate(alpha);
                for (int n = 0; n <= bound; ++n) {
                    AffineRoot a{cl, positive ? n : -n};
                    if (affine_.is_positive(a) == positive) out.push_back(a);
                }
            }
        }
        return out;
    }

    AffineRootSystem affine_;
    RMatrix cartan_inv_;
    std::vector<AffineWeylElement> generators_;
};

/// W-orbit of a classical weight under the finite simple reflections.
inline std::vector<Weight> finite_orbit(const FiniteRootSystem& rs, const Weight& w, std::size_t cap = 1'000'000) {
    std::map<RVector, bool> seen;
    std::vector<Weight> out{w};
    seen[w.coords] = true;
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (int i = 0; i < rs.rank(); ++i) {
            Weight next = rs.simple_reflection(i, out[k]);
            if (seen.emplace(next.coords, true).second) {
                out.push_back(std::move(next));
                if (out.size() > cap) throw ResourceLimitError("orbit exceeded cap");
            }
        }
    }
    return out;
}

/// {tilde_matrix, b, length, word}; words are written 1-based (w_1 .. w_{l+1}).
inline nlohmann::json to_json(const AffineWeylElement& w, int length) {
    std::vector<int> word;
    for (int g : w.word) word.push_back(g + 1);
    return {{"tilde_matrix", to_json(w.tilde.roots)}, {"b", w.b}, {"length", length}, {"word", word}};
}

}  // namespace loopcert
