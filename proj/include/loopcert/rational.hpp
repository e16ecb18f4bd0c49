#pragma once

// Exact scalar and small dense linear algebra over GMP rationals.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace loopcert {

using Integer = mpz_class;
using Rational = mpq_class;

using RVector = std::vector<Rational>;
using IVector = std::vector<std::int64_t>;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational to_rational(std::int64_t v) {
    Rational q;
    mpz_set_si(q.get_num_mpz_t(), static_cast<long>(v));
    return q;
}

inline RVector to_rational(const IVector& v) {
    RVector out;
    out.reserve(v.size());
    for (auto x : v) out.push_back(to_rational(x));
    return out;
}

/// Exact conversion; throws if any entry is not an integer fitting in 64 bits.
inline IVector to_integer(const RVector& v) {
    IVector out;
    out.reserve(v.size());
    for (const auto& q : v) {
        if (q.get_den() != 1) throw std::domain_error("non-integral rational " + q.get_str());
        if (!q.get_num().fits_slong_p()) throw std::overflow_error("integer overflow: " + q.get_str());
        out.push_back(q.get_num().get_si());
    }
    return out;
}

/// Parses "p", "p/q" or a terminating decimal such as "-0.25".
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
        q.canonicalize();
        return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad decimal: " + text);
    Integer num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0)
        throw std::invalid_argument("bad decimal: " + text);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// JSON: rationals are {"num": n, "den": d}; entries are JSON integers when
// they fit in 64 bits and decimal strings otherwise.
namespace detail {
inline nlohmann::json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}
inline Integer integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) return Integer(j.get<std::string>());
    throw std::invalid_argument("expected integer in rational JSON");
}
}  // namespace detail

inline nlohmann::json to_json(const Rational& q) {
    return {{"num", detail::integer_json(q.get_num())}, {"den", detail::integer_json(q.get_den())}};
}

inline Rational rational_from_json(const nlohmann::json& j) {
    Rational q(detail::integer_from_json(j.at("num")), detail::integer_from_json(j.at("den")));
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in JSON rational");
    q.canonicalize();
    return q;
}

inline nlohmann::json to_json(const RVector& v) {
    auto arr = nlohmann::json::array();
    for (const auto& q : v) arr.push_back(to_json(q));
    return arr;
}

inline RVector rvector_from_json(const nlohmann::json& j) {
    RVector out;
    for (const auto& e : j) out.push_back(rational_from_json(e));
    return out;
}

/// Row-major dense matrix.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    const std::vector<T>& data() const { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RMatrix = Matrix<Rational>;
using IMatrix = Matrix<std::int64_t>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<T> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

inline RMatrix to_rational(const IMatrix& m) {
    RMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_rational(m(i, j));
    return r;
}

/// Gauss-Jordan inverse; throws on a singular matrix.
inline RMatrix inverse(const RMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
    RMatrix a = m;
    RMatrix inv = RMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) throw std::domain_error("singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        Rational p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

/// Rank by fraction-free elimination over Q.
inline std::size_t rank(RMatrix a) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
        std::size_t pivot = r;
        while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(r, j));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, col) == 0) continue;
            Rational f = a(i, col) / a(r, col);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

/// Sylvester's criterion with exact leading minors.
inline bool is_positive_definite(const RMatrix& m) {
    const std::size_t n = m.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        RMatrix a(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) a(i, j) = m(i, j);
        Rational det = 1;
        for (std::size_t col = 0; col < k; ++col) {
            std::size_t pivot = col;
            while (pivot < k && a(pivot, col) == 0) ++pivot;
            if (pivot == k) return false;
            if (pivot != col) {
                for (std::size_t j = 0; j < k; ++j) std::swap(a(pivot, j), a(col, j));
                det = -det;
            }
            det *= a(col, col);
            for (std::size_t i = col + 1; i < k; ++i) {
                if (a(i, col) == 0) continue;
                Rational f = a(i, col) / a(col, col);
                for (std::size_t j = col; j < k; ++j) a(i, j) -= f * a(col, j);
            }
        }
        if (det <= 0) return false;
    }
    return true;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    T s = T(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class T>
std::vector<T> add(std::vector<T> a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

template <class T>
std::vector<T> sub(std::vector<T> a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

template <class T, class S>
std::vector<T> scale(std::vector<T> a, const S& s) {
    for (auto& x : a) x *= s;
    return a;
}

template <class T>
std::vector<T> negate(std::vector<T> a) {
    for (auto& x : a) x = -x;
    return a;
}

template <class T>
bool is_zero(const std::vector<T>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// Bilinear form x^T M y.
inline Rational bilinear(const RMatrix& m, const RVector& x, const RVector& y) {
    Rational s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        Rational row = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * y[j];
        s += x[i] * row;
    }
    return s;
}

inline nlohmann::json to_json(const RMatrix& m) {
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) arr.push_back(to_json(m.row(i)));
    return arr;
}

inline nlohmann::json to_json(const IMatrix& m) {
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) arr.push_back(m.row(i));
    return arr;
}

}  // namespace loopcert
