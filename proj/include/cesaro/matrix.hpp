#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace cesaro {

// Dense square matrix, row-major.
template <class S>
class Matrix {
 public:
  using value_type = S;
  static constexpr ScalarMode mode = scalar_traits<S>::mode;

  Matrix() = default;
  explicit Matrix(std::size_t dim) : n_(dim), a_(dim * dim, scalar_traits<S>::from_int(0)) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = scalar_traits<S>::from_int(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw error(errc::dimension_mismatch, "matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_ints(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<S>> r;
    for (auto& row : rows) {
      r.emplace_back();
      for (auto x : row) r.back().push_back(scalar_traits<S>::from_int(x));
    }
    return from_rows(r);
  }

  std::size_t dim() const { return n_; }
  S& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<S>& data() const { return a_; }

  Matrix& operator+=(const Matrix& o) {
    check(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  // this += s * o
  Matrix& add_scaled(const S& s, const Matrix& o) {
    check(o);
    if (scalar_traits<S>::is_zero(s)) return *this;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!scalar_traits<S>::is_zero(o.a_[i])) a_[i] += s * o.a_[i];
    return *this;
  }
  Matrix& add_identity(const S& s) {
    for (std::size_t i = 0; i < n_; ++i) (*this)(i, i) += s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check(b);
    const std::size_t n = a.n_;
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const S& aik = a(i, k);
        if (scalar_traits<S>::is_zero(aik)) continue;
        const S* brow = &b.a_[k * n];
        S* crow = &c.a_[i * n];
        for (std::size_t j = 0; j < n; ++j)
          if (!scalar_traits<S>::is_zero(brow[j])) crow[j] += aik * brow[j];
      }
    return c;
  }

 private:
  void check(const Matrix& o) const {
    if (o.n_ != n_) throw error(errc::dimension_mismatch, "matrix dimensions differ");
  }
  std::size_t n_ = 0;
  std::vector<S> a_;
};

template <class T, class S>
Matrix<T> matrix_cast(const Matrix<S>& m) {
  Matrix<T> r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if constexpr (std::is_same_v<T, double> && std::is_same_v<S, Rational>)
        r(i, j) = m(i, j).template convert_to<double>();
      else
        r(i, j) = T(m(i, j));
    }
  return r;
}

template <class S>
Matrix<S> matrix_power(const Matrix<S>& t, std::size_t n) {
  Matrix<S> r = Matrix<S>::identity(t.dim());
  for (std::size_t i = 0; i < n; ++i) r = t * r;
  return r;
}

enum class NormKind { Spectral, MaxRow, MaxCol };

inline const char* norm_kind_name(NormKind k) {
  switch (k) {
    case NormKind::Spectral: return "spectral";
    case NormKind::MaxRow: return "maxrow";
    case NormKind::MaxCol: return "maxcol";
  }
  return "?";
}

inline NormKind parse_norm_kind(const std::string& s) {
  if (s == "spectral") return NormKind::Spectral;
  if (s == "maxrow" || s == "inf") return NormKind::MaxRow;
  if (s == "maxcol" || s == "one") return NormKind::MaxCol;
  throw error(errc::parse_error, "unknown norm kind '" + s + "'");
}

// Exact arithmetic cannot produce spectral norms, so exact mode defaults to
// the l-infinity induced norm.
template <class S>
constexpr NormKind default_norm_kind() {
  return is_exact_v<S> ? NormKind::MaxRow : NormKind::Spectral;
}

template <class S>
magnitude_t<S> max_row_norm(const Matrix<S>& m) {
  magnitude_t<S> best{};
  for (std::size_t i = 0; i < m.dim(); ++i) {
    magnitude_t<S> s{};
    for (std::size_t j = 0; j < m.dim(); ++j) s += scalar_traits<S>::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

template <class S>
magnitude_t<S> max_col_norm(const Matrix<S>& m) {
  magnitude_t<S> best{};
  for (std::size_t j = 0; j < m.dim(); ++j) {
    magnitude_t<S> s{};
    for (std::size_t i = 0; i < m.dim(); ++i) s += scalar_traits<S>::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

// Singular values by one-sided (Hestenes) cyclic Jacobi, descending.
inline std::vector<double> jacobi_singular_values(const Matrix<double>& a) {
  const std::size_t n = a.dim();
  // columns stored contiguously
  std::vector<double> u(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u[j * n + i] = a(i, j);
  const double eps = 1e-15;
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double* up = &u[p * n];
        double* uq = &u[q * n];
        double al = 0, be = 0, ga = 0;
        for (std::size_t i = 0; i < n; ++i) {
          al += up[i] * up[i];
          be += uq[i] * uq[i];
          ga += up[i] * uq[i];
        }
        if (ga == 0 || std::fabs(ga) <= eps * std::sqrt(al * be)) continue;
        rotated = true;
        double zeta = (be - al) / (2 * ga);
        double t = (zeta >= 0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1 + zeta * zeta));
        double c = 1 / std::sqrt(1 + t * t), s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          double x = up[i], y = uq[i];
          up[i] = c * x - s * y;
          uq[i] = s * x + c * y;
        }
      }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += u[j * n + i] * u[j * n + i];
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

namespace detail {

// Largest eigenvalue of the symmetric tridiagonal (a, b) by Sturm bisection.
inline double tridiagonal_max_eigenvalue(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t k = a.size();
  double lo = a[0], hi = a[0];
  for (std::size_t i = 0; i < k; ++i) {
    double r = (i > 0 ? std::fabs(b[i - 1]) : 0) + (i + 1 < k ? std::fabs(b[i]) : 0);
    lo = std::min(lo, a[i] - r);
    hi = std::max(hi, a[i] + r);
  }
  // number of eigenvalues < x
  auto below = [&](double x) {
    std::size_t cnt = 0;
    double d = 1;
    for (std::size_t i = 0; i < k; ++i) {
      double bb = i > 0 ? b[i - 1] * b[i - 1] : 0;
      d = a[i] - x - (i > 0 ? bb / d : 0);
      if (d == 0) d = -1e-300;
      if (d < 0) ++cnt;
    }
    return cnt;
  };
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi)); ++it) {
    double mid = 0.5 * (lo + hi);
    if (below(mid) == k) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace detail

// Lanczos on A^T A with full reorthogonalisation. Ritz values never exceed the
// true top eigenvalue, so the result is an estimate of ||A||_2 from below.
inline double lanczos_spectral_norm(const Matrix<double>& A, std::size_t max_steps = 400,
                                    double rel_tol = 1e-14) {
  const std::size_t n = A.dim();
  if (n == 0) return 0;
  std::vector<std::size_t> rowptr(n + 1, 0), col;
  std::vector<double> val;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (A(i, j) != 0) {
        col.push_back(j);
        val.push_back(A(i, j));
      }
    rowptr[i + 1] = col.size();
  }
  if (val.empty()) return 0;
  std::vector<double> tmp(n);
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t p = rowptr[i]; p < rowptr[i + 1]; ++p) s += val[p] * x[col[p]];
      tmp[i] = s;
    }
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t p = rowptr[i]; p < rowptr[i + 1]; ++p) y[col[p]] += val[p] * tmp[i];
  };
  auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
  };

  std::vector<std::vector<double>> V;
  std::vector<double> v(n), w(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (i % 2 ? -1.0 : 1.0) + 1e-3 * std::sin(double(i + 1));
  double nv = std::sqrt(dot(v, v));
  for (auto& x : v) x /= nv;
  std::vector<double> a, b;
  double theta = 0, theta_prev = -1;
  std::size_t steady = 0;
  const std::size_t steps = std::min(max_steps, n);
  for (std::size_t k = 0; k < steps; ++k) {
    V.push_back(v);
    apply(v, w);
    double ak = dot(w, v);
    a.push_back(ak);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : V) {
        double c = dot(w, q);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
      }
    double bk = std::sqrt(dot(w, w));
    theta = detail::tridiagonal_max_eigenvalue(a, b);
    if (bk <= 1e-13 * std::max(theta, 1e-300)) break;
    if (std::fabs(theta - theta_prev) <= rel_tol * theta) {
      if (++steady >= 8) break;
    } else {
      steady = 0;
    }
    theta_prev = theta;
    b.push_back(bk);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / bk;
  }
  return std::sqrt(std::max(theta, 0.0));
}

// Jacobi SVD up to dimension 64, Lanczos beyond.
inline double spectral_norm(const Matrix<double>& m) {
  if (m.dim() == 0) return 0;
  if (m.dim() <= 64) return jacobi_singular_values(m).front();
  return lanczos_spectral_norm(m);
}

// sqrt(||A||_1 ||A||_inf) >= ||A||_2
template <class S>
double spectral_norm_upper_bound(const Matrix<S>& m) {
  return std::sqrt(scalar_traits<S>::to_double(max_row_norm(m)) *
                   scalar_traits<S>::to_double(max_col_norm(m)));
}

template <class S>
magnitude_t<S> operator_norm(const Matrix<S>& m, NormKind kind) {
  switch (kind) {
    case NormKind::MaxRow: return max_row_norm(m);
    case NormKind::MaxCol: return max_col_norm(m);
    case NormKind::Spectral:
      if constexpr (std::is_same_v<S, double>) {
        return spectral_norm(m);
      } else {
        auto d = matrix_cast<double>(m);
        if (max_row_norm(m) == 0) return magnitude_t<S>(0);
        return magnitude_t<S>(spectral_norm(d));
      }
  }
  return {};
}

// Gauss-Jordan; partial pivoting in float mode, first nonzero pivot in exact mode.
template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  const std::size_t n = m.dim();
  Matrix<S> a = m, inv = Matrix<S>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    if constexpr (is_exact_v<S>) {
      for (std::size_t r = c; r < n; ++r)
        if (!scalar_traits<S>::is_zero(a(r, c))) {
          piv = r;
          break;
        }
    } else {
      double best = 0;
      for (std::size_t r = c; r < n; ++r)
        if (scalar_traits<S>::abs(a(r, c)) > best) {
          best = scalar_traits<S>::abs(a(r, c));
          piv = r;
        }
    }
    if (piv == n) throw error(errc::singular_matrix, "matrix is singular");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(c, j), a(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    S d = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= d;
      inv(c, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || scalar_traits<S>::is_zero(a(r, c))) continue;
      S f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// First line "dim=k", then k comma-separated rows. Entries are exact
// rationals or decimals.
template <class S>
Matrix<S> read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw error(errc::parse_error, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("dim=", 0) != 0) throw error(errc::parse_error, "header must be dim=k");
  long long k = 0;
  try {
    k = std::stoll(line.substr(4));
  } catch (...) {
    throw error(errc::parse_error, "bad dimension in '" + line + "'");
  }
  if (k <= 0) throw error(errc::parse_error, "dimension must be positive");
  Matrix<S> m(static_cast<std::size_t>(k));
  for (long long i = 0; i < k; ++i) {
    if (!std::getline(in, line)) throw error(errc::parse_error, "too few rows");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = 0;
    for (long long j = 0; j < k; ++j) {
      auto comma = line.find(',', start);
      if ((comma == std::string::npos) != (j == k - 1))
        throw error(errc::parse_error, "row " + std::to_string(i) + " has the wrong number of columns");
      m(i, j) = scalar_traits<S>::from_rational(parse_rational(line.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  return m;
}

template <class S>
void write_matrix_csv(std::ostream& out, const Matrix<S>& m) {
  auto old = out.precision();
  if constexpr (!is_exact_v<S>) out.precision(17);
  out << "dim=" << m.dim() << "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? "," : "") << m(i, j);
    out << "\n";
  }
  out.precision(old);
}

}  // namespace cesaro
