#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace cesaro {

namespace detail {

template <class S>
S checked_order(const Order& alpha) {
  if (alpha.sign() < 0) throw error(errc::negative_order, "order " + alpha.str() + " < 0");
  return order_value<S>(alpha);
}

}  // namespace detail

// k^alpha(0..N) by the product recurrence k(n+1) = k(n)(n+alpha)/(n+1).
template <class S>
std::vector<S> kernel_values(const Order& alpha, std::size_t N) {
  const S a = detail::checked_order<S>(alpha);
  std::vector<S> k;
  k.reserve(N + 1);
  k.push_back(scalar_traits<S>::from_int(1));
  for (std::size_t n = 0; n < N; ++n) {
    S nn = scalar_traits<S>::from_int(static_cast<long long>(n));
    k.push_back(k.back() * (nn + a) / (nn + scalar_traits<S>::from_int(1)));
  }
  return k;
}

template <class S>
struct KernelTable {
  Order alpha;
  std::vector<S> values;

  static constexpr ScalarMode mode = scalar_traits<S>::mode;
  std::size_t horizon() const { return values.size() - 1; }
  const S& operator[](std::size_t n) const { return values[n]; }
};

template <class S>
KernelTable<S> kernel_table(const Order& alpha, std::size_t N) {
  return {alpha, kernel_values<S>(alpha, N)};
}

template <class S>
S cesaro_kernel(const Order& alpha, std::size_t n) {
  return kernel_values<S>(alpha, n).back();
}

template <class S>
struct SemigroupReport {
  magnitude_t<S> max_abs_defect{};
  std::size_t worst_n = 0;
};

// max_{n<=N} |(k^a * k^b)(n) - k^{a+b}(n)|
template <class S>
SemigroupReport<S> kernel_semigroup_check(const Order& alpha, const Order& beta, std::size_t N) {
  auto ka = kernel_values<S>(alpha, N);
  auto kb = kernel_values<S>(beta, N);
  auto kab = kernel_values<S>(alpha + beta, N);
  SemigroupReport<S> rep;
  for (std::size_t n = 0; n <= N; ++n) {
    S acc = scalar_traits<S>::from_int(0);
    for (std::size_t j = 0; j <= n; ++j) acc += ka[n - j] * kb[j];
    auto d = scalar_traits<S>::abs(acc - kab[n]);
    if (d > rep.max_abs_defect) {
      rep.max_abs_defect = d;
      rep.worst_n = n;
    }
  }
  return rep;
}

struct GautschiViolation {
  std::size_t n;
  double lower, value, upper;
};

struct GautschiReport {
  double gamma_alpha = 0;
  double min_relative_margin = std::numeric_limits<double>::infinity();
  std::vector<GautschiViolation> violations;
};

// (n+1)^{a-1}/G(a) < k^a(n) < n^{a-1}/G(a) for 1 <= n <= N, 0 < a < 1.
// A bound counts as violated only beyond a relative slack of rel_tol.
inline GautschiReport gautschi_bounds_check(const Order& alpha, std::size_t N,
                                            double rel_tol = 1e-12) {
  if (alpha.sign() <= 0 || alpha >= Order(1))
    throw error(errc::order_out_of_range, "Gautschi bounds need 0 < alpha < 1, got " + alpha.str());
  const double a = alpha.to_double();
  auto k = kernel_values<double>(alpha, N);
  GautschiReport rep;
  rep.gamma_alpha = std::tgamma(a);
  for (std::size_t n = 1; n <= N; ++n) {
    double lo = std::pow(double(n + 1), a - 1) / rep.gamma_alpha;
    double hi = std::pow(double(n), a - 1) / rep.gamma_alpha;
    double v = k[n];
    rep.min_relative_margin = std::min({rep.min_relative_margin, (v - lo) / v, (hi - v) / v});
    if (v <= lo * (1 - rel_tol) || v >= hi * (1 + rel_tol)) rep.violations.push_back({n, lo, v, hi});
  }
  return rep;
}

struct DoublingReport {
  double max_ratio = 0;
  std::size_t argmax = 0;
  double constant_bound = 1;
  bool bounded = true;
  bool sharp_checked = false;
  std::vector<std::size_t> sharp_violations;
};

// max_{1<=n<=N} k^a(2n)/k^a(n), and for 0<a<1 the sharp estimate
// k^{a+1}(2n) < ((3+a)/(1+a))^a k^{a+1}(n).
template <class S>
DoublingReport doubling_check(const Order& alpha, std::size_t N) {
  if (alpha.sign() <= 0) throw error(errc::negative_order, "doubling needs alpha > 0");
  auto k = kernel_values<S>(alpha, 2 * N);
  DoublingReport rep;
  rep.constant_bound = std::pow(2.0, std::max(alpha.to_double() - 1.0, 0.0));
  for (std::size_t n = 1; n <= N; ++n) {
    double r = scalar_traits<S>::to_double(S(k[2 * n] / k[n]));
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.argmax = n;
    }
  }
  rep.bounded = rep.max_ratio <= rep.constant_bound * (1 + 1e-12);

  if (alpha < Order(1)) {
    rep.sharp_checked = true;
    auto k1 = kernel_values<S>(alpha + Order(1), 2 * N);
    const double a = alpha.to_double();
    const Rational Bq = (Rational(3) + alpha.value()) / (Rational(1) + alpha.value());
    const double logB = a * std::log(Bq.convert_to<double>());
    for (std::size_t n = 1; n <= N; ++n) {
      S ratio = k1[2 * n] / k1[n];
      double lr = std::log(scalar_traits<S>::to_double(ratio));
      bool ok;
      if (std::fabs(lr - logB) > 1e-9 * std::fabs(logB) + 1e-300) {
        ok = lr < logB;
      } else if constexpr (is_exact_v<S>) {
        // ratio^q < B^p with alpha = p/q
        long long p = boost::multiprecision::numerator(alpha.value()).convert_to<long long>();
        long long q = boost::multiprecision::denominator(alpha.value()).convert_to<long long>();
        ok = ipow<Rational>(ratio, q) < ipow<Rational>(Bq, p);
      } else {
        ok = lr < logB * (1 + 1e-12);
      }
      if (!ok) rep.sharp_violations.push_back(n);
    }
  }
  return rep;
}

// Upper bound for sum_{n>M} k^g(n) x^n, 0 <= x < 1; +inf when the ratio
// bound does not close.
inline double kernel_series_tail(const Order& gamma, double x, std::size_t M) {
  if (gamma.sign() < 0) throw error(errc::negative_order, "tail needs gamma >= 0");
  if (gamma.sign() == 0 || x == 0.0) return 0.0;
  const double g = gamma.to_double();
  const double rho = std::max(1.0, (double(M) + 1 + g) / (double(M) + 2));
  if (x * rho >= 1) return std::numeric_limits<double>::infinity();
  double logk = 0;
  for (std::size_t n = 0; n <= M; ++n) logk += std::log((double(n) + g) / (double(n) + 1));
  return std::exp(logk + double(M + 1) * std::log(x)) / (1 - x * rho);
}

struct GeneratingFunctionReport {
  Complex partial, closed;
  double defect = 0, tail_bound = 0;
  bool ok = false;
};

// sum_{n<=N} k^a(n) z^n against (1-z)^{-a}, |z| < 1.
inline GeneratingFunctionReport generating_function_check(const Order& alpha, Complex z,
                                                         std::size_t N) {
  auto k = kernel_values<double>(alpha, N);
  GeneratingFunctionReport rep;
  Complex zn = 1.0;
  for (std::size_t n = 0; n <= N; ++n) {
    rep.partial += k[n] * zn;
    zn *= z;
  }
  rep.closed = std::pow(Complex(1.0) - z, -alpha.to_double());
  rep.defect = std::abs(rep.partial - rep.closed);
  rep.tail_bound = kernel_series_tail(alpha, std::abs(z), N);
  rep.ok = rep.defect <= rep.tail_bound + 1e-10;
  return rep;
}

}  // namespace cesaro
