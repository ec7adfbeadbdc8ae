#pragma once

// Exact rational scalars, vectors and matrices over Q.
//
// Rat wraps a GMP rational that is kept canonical at all times (lowest terms,
// positive denominator), so equality is structural.  All matrix kernels run
// fraction-free over the integers after clearing row denominators.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sphfan/error.hpp"

namespace sphfan {

class Rat {
 public:
  Rat() = default;
  Rat(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rat(const mpz_class& value) : value_(value) {}
  Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    value_.get_num() = num;
    value_.get_den() = den;
    value_.canonicalize();
  }
  explicit Rat(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  // Accepts "n", "-n", "p/q" with optional signs on either part.
  static Rat parse(std::string_view text) {
    auto is_int = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto to_mpz = [](std::string_view s) {
      if (!s.empty() && s.front() == '+') s.remove_prefix(1);
      return mpz_class(std::string(s), 10);
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      if (!is_int(text)) throw DomainError("malformed rational \"" + std::string(text) + "\"");
      return Rat(to_mpz(text));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) {
      throw DomainError("malformed rational \"" + std::string(text) + "\"");
    }
    return Rat(to_mpz(num), to_mpz(den));
  }

  // Canonical text: "p/q" in lowest terms, or just "p" when q == 1.
  std::string str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_integer() const { return value_.get_den() == 1; }
  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }

  Rat operator-() const { return Rat(mpq_class(-value_)); }
  Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
  Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
  Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    value_ /= o.value_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

using Vec = std::vector<Rat>;

inline Vec zero_vec(std::size_t n) { return Vec(n); }

inline Vec make_vec(std::initializer_list<long> values) {
  Vec v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

inline Rat dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
  mpq_class acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].raw() * b[i].raw();
  return Rat(std::move(acc));
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_zero(); });
}

inline Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vec operator-(const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

inline Vec operator*(const Rat& s, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

// Positive rescaling of v to a primitive integer vector (gcd of entries 1).
// The zero vector is returned unchanged.
inline Vec primitive(const Vec& v) {
  if (is_zero(v)) return v;
  mpz_class lcm_den = 1;
  for (const auto& x : v) lcm_den = lcm(lcm_den, x.denominator());
  std::vector<mpz_class> ints(v.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].numerator() * (lcm_den / v[i].denominator());
    g = gcd(g, ints[i]);
  }
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(mpz_class(ints[i] / g));
  return out;
}

// True iff a = t*b for some t > 0.  Zero vectors are only on the same ray as
// themselves.
inline bool same_ray(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  return primitive(a) == primitive(b);
}

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  // Builds from explicit rows; `cols` fixes the width when `rows` is empty.
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch(cols, rows[i].size());
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Mat from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    std::vector<Vec> vs;
    for (const auto& r : rows) vs.push_back(make_vec(r));
    return from_rows(vs, cols);
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  std::vector<Vec> row_list() const {
    std::vector<Vec> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec apply(const Vec& x) const {
    if (x.size() != cols_) throw DimensionMismatch(cols_, x.size());
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      mpq_class acc;
      for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j).raw() * x[j].raw();
      out[i] = Rat(std::move(acc));
    }
    return out;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch(a.cols_, b.rows_);
    Mat out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        mpq_class acc;
        for (std::size_t k = 0; k < a.cols_; ++k) acc += a(i, k).raw() * b(k, j).raw();
        out(i, j) = Rat(std::move(acc));
      }
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

namespace detail {

// Result of fraction-free Gauss-Jordan elimination on an integer matrix.
// Every pivot row carries the common value `pivot` at its pivot column and
// zeros in all other pivot columns.
struct IntegerEchelon {
  std::vector<std::vector<mpz_class>> rows;
  std::vector<std::size_t> pivot_cols;
  mpz_class pivot = 1;
  int swap_sign = 1;
};

// Scales every row by the lcm of its denominators and returns the scale
// factors, so that the integer matrix has the same row space.
inline std::vector<std::vector<mpz_class>> integer_rows(const Mat& m, mpz_class* total_scale = nullptr) {
  std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols()));
  mpz_class scale_product = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).denominator());
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[i][j] = m(i, j).numerator() * (l / m(i, j).denominator());
    scale_product *= l;
  }
  if (total_scale != nullptr) *total_scale = scale_product;
  return out;
}

// Bareiss-style fraction-free Gauss-Jordan.  Divisions by the previous pivot
// are exact because every entry is a minor of the input.
inline IntegerEchelon fraction_free_reduce(std::vector<std::vector<mpz_class>> a, std::size_t cols) {
  IntegerEchelon e;
  const std::size_t nrows = a.size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && a[p][c] == 0) ++p;
    if (p == nrows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      e.swap_sign = -e.swap_sign;
    }
    const mpz_class piv = a[r][c];
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r) continue;
      const mpz_class factor = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        mpz_class v = piv * a[i][j] - factor * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
    }
    e.pivot_cols.push_back(c);
    prev = piv;
    ++r;
  }
  e.pivot = prev;
  e.rows = std::move(a);
  return e;
}

}  // namespace detail

inline std::size_t rank(const Mat& m) {
  return detail::fraction_free_reduce(detail::integer_rows(m), m.cols()).pivot_cols.size();
}

inline std::size_t rank(const std::vector<Vec>& vectors, std::size_t ambient) {
  return rank(Mat::from_rows(vectors, ambient));
}

// Basis of {x : m x = 0}, one primitive integer vector per free column.
inline std::vector<Vec> solve_homogeneous(const Mat& m) {
  const auto e = detail::fraction_free_reduce(detail::integer_rows(m), m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x(m.cols());
    x[free] = Rat(e.pivot);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) x[e.pivot_cols[i]] = Rat(mpz_class(-e.rows[i][free]));
    basis.push_back(primitive(x));
  }
  return basis;
}

inline Rat determinant(const Mat& m) {
  if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
  mpz_class scale;
  const auto e = detail::fraction_free_reduce(detail::integer_rows(m, &scale), m.cols());
  if (e.pivot_cols.size() < m.rows()) return Rat{};
  return Rat(mpz_class(e.pivot * e.swap_sign), scale);
}

inline Mat inverse(const Mat& m) {
  if (!m.is_square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Mat a = m;
  Mat inv = Mat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw DomainError("matrix is singular");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const Rat piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const Rat f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// Integral with determinant +-1, i.e. an automorphism of the lattice Z^n.
inline bool is_integral_unimodular(const Mat& m) {
  if (!m.is_square()) throw DomainError("unimodularity test on a non-square matrix");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integer()) return false;
  const Rat d = determinant(m);
  return d == Rat(1) || d == Rat(-1);
}

}  // namespace sphfan
