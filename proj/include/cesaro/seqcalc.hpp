#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "error.hpp"
#include "kernels.hpp"
#include "scalar.hpp"

namespace cesaro {

// Finitely supported sequence on N_0. Trailing zeros are trimmed, so the zero
// sequence has size() == 0 and support_end() == -1.
template <class S>
class FiniteSeq {
 public:
  using value_type = S;
  static constexpr ScalarMode mode = scalar_traits<S>::mode;

  FiniteSeq() = default;
  explicit FiniteSeq(std::vector<S> c) : c_(std::move(c)) { trim(); }
  FiniteSeq(std::initializer_list<S> c) : c_(c) { trim(); }

  static FiniteSeq unit(std::size_t n) {
    std::vector<S> c(n + 1, scalar_traits<S>::from_int(0));
    c[n] = scalar_traits<S>::from_int(1);
    return FiniteSeq(std::move(c));
  }
  static FiniteSeq from_ints(std::initializer_list<long long> v) {
    std::vector<S> c;
    for (auto x : v) c.push_back(scalar_traits<S>::from_int(x));
    return FiniteSeq(std::move(c));
  }

  S operator[](std::size_t n) const { return n < c_.size() ? c_[n] : scalar_traits<S>::from_int(0); }
  std::size_t size() const { return c_.size(); }
  long long support_end() const { return static_cast<long long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<S>& coeffs() const { return c_; }

  friend FiniteSeq operator+(const FiniteSeq& a, const FiniteSeq& b) {
    std::vector<S> c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return FiniteSeq(std::move(c));
  }
  friend FiniteSeq operator-(const FiniteSeq& a, const FiniteSeq& b) {
    std::vector<S> c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return FiniteSeq(std::move(c));
  }
  friend FiniteSeq operator*(const S& s, const FiniteSeq& a) {
    std::vector<S> c(a.c_);
    for (auto& x : c) x *= s;
    return FiniteSeq(std::move(c));
  }
  friend bool operator==(const FiniteSeq& a, const FiniteSeq& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && scalar_traits<S>::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<S> c_;
};

// Restriction of a sequence to the window [0, N]; nothing is assumed beyond N.
template <class S>
class WindowedSeq {
 public:
  WindowedSeq() = default;
  explicit WindowedSeq(std::vector<S> c) : c_(std::move(c)) {
    if (c_.empty()) throw error(errc::horizon_too_short, "empty window");
  }

  std::size_t horizon() const { return c_.size() - 1; }
  const S& operator[](std::size_t n) const { return c_[n]; }
  const S& at(std::size_t n) const {
    if (n >= c_.size())
      throw error(errc::index_out_of_range, "index beyond window [0," + std::to_string(horizon()) + "]");
    return c_[n];
  }
  const std::vector<S>& values() const { return c_; }
  FiniteSeq<S> truncation() const { return FiniteSeq<S>(c_); }

  friend bool operator==(const WindowedSeq& a, const WindowedSeq& b) { return a.c_ == b.c_; }

 private:
  std::vector<S> c_;
};

template <class S>
FiniteSeq<S> convolve(const FiniteSeq<S>& f, const FiniteSeq<S>& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<S> c(f.size() + g.size() - 1, scalar_traits<S>::from_int(0));
  for (std::size_t n = 0; n < c.size(); ++n) {
    std::size_t lo = n >= g.size() ? n - g.size() + 1 : 0;
    std::size_t hi = std::min(n, f.size() - 1);
    for (std::size_t j = lo; j <= hi; ++j) c[n] += f.coeffs()[j] * g.coeffs()[n - j];
  }
  return FiniteSeq<S>(std::move(c));
}

// Forward difference (Delta f)(n) = f(n+1) - f(n).
template <class S>
FiniteSeq<S> difference(const FiniteSeq<S>& f) {
  std::vector<S> c(f.size());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = f[n + 1] - f[n];
  return FiniteSeq<S>(std::move(c));
}

// W^{-a} f(n) = sum_{j>=n} k^a(j-n) f(j)
template <class S>
FiniteSeq<S> weyl_sum(const FiniteSeq<S>& f, const Order& alpha) {
  if (alpha.sign() < 0) throw error(errc::negative_order, "Weyl sum of order " + alpha.str());
  if (alpha.sign() == 0 || f.is_zero()) {
    detail::checked_order<S>(alpha);
    return f;
  }
  const std::size_t L = f.size();
  auto k = kernel_values<S>(alpha, L - 1);
  std::vector<S> c(L, scalar_traits<S>::from_int(0));
  for (std::size_t n = 0; n < L; ++n)
    for (std::size_t j = n; j < L; ++j) c[n] += k[j - n] * f.coeffs()[j];
  return FiniteSeq<S>(std::move(c));
}

namespace detail {

inline std::vector<long long> binomial_row(long long m) {
  std::vector<long long> b(m + 1, 1);
  for (long long j = 1; j <= m; ++j) b[j] = b[j - 1] * (m - j + 1) / j;
  return b;
}

// W^m g(n) = sum_{j=0}^m (-1)^j C(m,j) g(n+j)
template <class S>
FiniteSeq<S> integer_weyl_difference(const FiniteSeq<S>& g, long long m) {
  auto b = binomial_row(m);
  std::vector<S> c(g.size(), scalar_traits<S>::from_int(0));
  for (std::size_t n = 0; n < c.size(); ++n)
    for (long long j = 0; j <= m; ++j) {
      S t = scalar_traits<S>::from_int(b[j]) * g[n + j];
      if (j % 2) c[n] -= t; else c[n] += t;
    }
  return FiniteSeq<S>(std::move(c));
}

}  // namespace detail

// W^a f = (-1)^m Delta^m W^{-(m-a)} f with m = floor(a)+1. A negative order
// is read as the Weyl sum of order -a.
template <class S>
FiniteSeq<S> weyl_difference(const FiniteSeq<S>& f, const Order& alpha) {
  if (alpha.sign() < 0) return weyl_sum(f, -alpha);
  detail::checked_order<S>(alpha);
  if (alpha.sign() == 0) return f;
  const long long m = alpha.floor() + 1;
  return detail::integer_weyl_difference(weyl_sum(f, Order(m) - alpha), m);
}

// W^s for a signed order s.
template <class S>
FiniteSeq<S> weyl(const FiniteSeq<S>& f, const Order& s) {
  return weyl_difference(f, s);
}

// Delta^{-a} f = k^a * f on [0, N]
template <class S>
WindowedSeq<S> cesaro_sum(const FiniteSeq<S>& f, const Order& alpha, std::size_t N) {
  auto k = kernel_values<S>(alpha, N);
  std::vector<S> c(N + 1, scalar_traits<S>::from_int(0));
  for (std::size_t n = 0; n <= N; ++n)
    for (std::size_t j = 0; j < f.size() && j <= n; ++j) c[n] += k[n - j] * f.coeffs()[j];
  return WindowedSeq<S>(std::move(c));
}

// The window only needs entries <= N, so composing on the window is exact.
template <class S>
WindowedSeq<S> cesaro_sum(const WindowedSeq<S>& f, const Order& alpha) {
  const std::size_t N = f.horizon();
  auto k = kernel_values<S>(alpha, N);
  std::vector<S> c(N + 1, scalar_traits<S>::from_int(0));
  for (std::size_t n = 0; n <= N; ++n)
    for (std::size_t j = 0; j <= n; ++j) c[n] += k[n - j] * f[j];
  return WindowedSeq<S>(std::move(c));
}

template <class S>
S duality_pairing(const FiniteSeq<S>& f, const FiniteSeq<S>& g) {
  S acc = scalar_traits<S>::from_int(0);
  for (std::size_t n = 0; n < std::min(f.size(), g.size()); ++n) acc += f.coeffs()[n] * g.coeffs()[n];
  return acc;
}

template <class S>
S duality_pairing(const FiniteSeq<S>& f, const WindowedSeq<S>& g) {
  if (f.support_end() > static_cast<long long>(g.horizon()))
    throw error(errc::horizon_too_short, "window shorter than the finite support");
  S acc = scalar_traits<S>::from_int(0);
  for (std::size_t n = 0; n < f.size(); ++n) acc += f.coeffs()[n] * g[n];
  return acc;
}

template <class S>
magnitude_t<S> max_abs_diff(const FiniteSeq<S>& f, const FiniteSeq<S>& g) {
  magnitude_t<S> m{};
  for (std::size_t n = 0; n < std::max(f.size(), g.size()); ++n)
    m = std::max(m, magnitude_t<S>(scalar_traits<S>::abs(f[n] - g[n])));
  return m;
}

// Largest deviation between W^a(f*g)(n) and the kernel expansion
//   sum_{j<=n} W^a g(j) sum_{p=n-j}^{n} k^a(p-n+j) W^a f(p)
//     - sum_{j>n} W^a g(j) sum_{p>n} k^a(p-n+j) W^a f(p).
template <class S>
magnitude_t<S> weyl_product_identity_defect(const FiniteSeq<S>& f, const FiniteSeq<S>& g,
                                            const Order& alpha) {
  auto lhs = weyl_difference(convolve(f, g), alpha);
  auto wf = weyl_difference(f, alpha);
  auto wg = weyl_difference(g, alpha);
  const std::size_t top = f.size() + g.size();
  auto k = kernel_values<S>(alpha, 2 * top + 1);
  const S zero = scalar_traits<S>::from_int(0);
  magnitude_t<S> worst{};
  for (std::size_t n = 0; n <= top; ++n) {
    S rhs = zero;
    for (std::size_t j = 0; j <= n && j < wg.size(); ++j) {
      S inner = zero;
      for (std::size_t p = n - j; p <= n && p < wf.size(); ++p) inner += k[p - n + j] * wf.coeffs()[p];
      rhs += wg.coeffs()[j] * inner;
    }
    for (std::size_t j = n + 1; j < wg.size(); ++j) {
      S inner = zero;
      for (std::size_t p = n + 1; p < wf.size(); ++p) inner += k[p - n + j] * wf.coeffs()[p];
      rhs -= wg.coeffs()[j] * inner;
    }
    worst = std::max(worst, magnitude_t<S>(scalar_traits<S>::abs(lhs[n] - rhs)));
  }
  return worst;
}

}  // namespace cesaro
