#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "error.hpp"
#include "kernels.hpp"
#include "scalar.hpp"
#include "seqcalc.hpp"

namespace cesaro {

// h_n^a(j) = k^a(n-j) for j <= n
template <class S>
FiniteSeq<S> h_seq(const Order& alpha, std::size_t n) {
  auto k = kernel_values<S>(alpha, n);
  std::reverse(k.begin(), k.end());
  return FiniteSeq<S>(std::move(k));
}

// p_lambda(n) = lambda^{-(n+1)} on [0, N]
template <class S>
WindowedSeq<S> p_lambda_truncated(const S& lambda, std::size_t N) {
  if (scalar_traits<S>::is_zero(lambda)) throw error(errc::zero_lambda, "lambda = 0");
  const S inv = scalar_traits<S>::from_int(1) / lambda;
  std::vector<S> v(N + 1);
  v[0] = inv;
  for (std::size_t n = 1; n <= N; ++n) v[n] = v[n - 1] * inv;
  return WindowedSeq<S>(std::move(v));
}

// max_{n<=N} |(mu-lambda)(p_l * p_m)(n) - (p_l(n) - p_m(n))|
template <class S>
magnitude_t<S> hilbert_equation_defect(const S& lambda, const S& mu, std::size_t N) {
  if (lambda == mu) throw error(errc::equal_parameters, "lambda == mu");
  auto pl = p_lambda_truncated(lambda, N);
  auto pm = p_lambda_truncated(mu, N);
  magnitude_t<S> worst{};
  for (std::size_t n = 0; n <= N; ++n) {
    S c = scalar_traits<S>::from_int(0);
    for (std::size_t j = 0; j <= n; ++j) c += pl[n - j] * pm[j];
    S d = (mu - lambda) * c - (pl[n] - pm[n]);
    worst = std::max(worst, magnitude_t<S>(scalar_traits<S>::abs(d)));
  }
  return worst;
}

// Eigenvalue of W^a on p_lambda: (1 - 1/lambda)^a = (lambda-1)^a / lambda^a.
template <class S>
S p_lambda_weyl_eigenvalue(const S& lambda, const Order& alpha) {
  if (alpha.sign() < 0) throw error(errc::negative_order, "order " + alpha.str());
  if (!(scalar_traits<S>::abs(lambda) > 1)) throw error(errc::not_summable, "|lambda| <= 1");
  const S one = scalar_traits<S>::from_int(1);
  if constexpr (is_exact_v<S>) {
    if (!alpha.is_integer())
      throw error(errc::exact_mode_unsupported, "fractional power of a rational in exact mode");
    return ipow<S>(one - one / lambda, alpha.floor());
  } else if constexpr (std::is_same_v<S, double>) {
    return std::pow(1.0 - 1.0 / lambda, alpha.to_double());
  } else {
    return std::pow(one - one / lambda, alpha.to_double());
  }
}

struct CrosscheckReport {
  double truncated = 0, closed = 0;
  double defect = 0, tail_bound = 0;
  bool ok = false;
};

namespace detail {

// Per-index bound on |W^a(p_lambda restricted to [0,N])(n) - W^a p_lambda(n)|, n <= N.
inline std::vector<double> p_lambda_truncation_error(double abs_lambda, const Order& alpha, std::size_t N) {
  std::vector<double> bound(N + 1, 0.0);
  if (alpha.sign() == 0) return bound;
  const long long m = alpha.floor() + 1;
  auto b = binomial_row(m);
  auto e = [&](std::size_t s) {
    double ex = double(std::max(N + 1, s));
    return std::pow(abs_lambda, -ex) / (abs_lambda - 1);
  };
  for (std::size_t n = 0; n <= N; ++n)
    for (long long i = 0; i <= m; ++i) bound[n] += double(b[i]) * e(n + i);
  return bound;
}

}  // namespace detail

struct EigenCrosscheckReport {
  double max_defect = 0, max_bound = 0;
  bool ok = false;
};

// W^a applied to the truncation of p_lambda against eigenvalue * p_lambda on [0, N].
inline EigenCrosscheckReport p_lambda_eigen_crosscheck(Complex lambda, const Order& alpha, std::size_t N) {
  Complex eig = p_lambda_weyl_eigenvalue(lambda, alpha);
  auto p = p_lambda_truncated(lambda, N);
  auto w = weyl_difference(p.truncation(), alpha);
  auto bound = detail::p_lambda_truncation_error(std::abs(lambda), alpha, N);
  EigenCrosscheckReport rep;
  rep.ok = true;
  for (std::size_t n = 0; n <= N; ++n) {
    double d = std::abs(w[n] - eig * p[n]);
    rep.max_defect = std::max(rep.max_defect, d);
    rep.max_bound = std::max(rep.max_bound, bound[n]);
    if (d > bound[n] + 1e-10) rep.ok = false;
  }
  return rep;
}

// q_{k^gamma}(p_lambda) = |lambda-1|^a |lambda|^{gamma-a-1} / (|lambda|-1)^gamma
inline double p_lambda_q_norm(Complex lambda, const Order& gamma, const Order& alpha) {
  const double L = std::abs(lambda);
  if (!(L > 1)) throw error(errc::not_summable, "|lambda| <= 1");
  if (gamma < alpha + Order(1)) throw error(errc::order_out_of_range, "need gamma >= alpha + 1");
  const double a = alpha.to_double(), g = gamma.to_double();
  return std::pow(std::abs(lambda - 1.0), a) * std::pow(L, g - a - 1) / std::pow(L - 1, g);
}

inline CrosscheckReport p_lambda_q_norm_crosscheck(Complex lambda, const Order& gamma, const Order& alpha,
                                                   std::size_t N) {
  CrosscheckReport rep;
  rep.closed = p_lambda_q_norm(lambda, gamma, alpha);
  const double L = std::abs(lambda);
  auto p = p_lambda_truncated(lambda, N);
  auto w = weyl_difference(p.truncation(), alpha);
  auto k = kernel_values<double>(gamma, N);
  auto bound = detail::p_lambda_truncation_error(L, alpha, N);
  double err = 0;
  for (std::size_t n = 0; n <= N; ++n) {
    rep.truncated += k[n] * std::abs(w[n]);
    err += k[n] * bound[n];
  }
  double eig = std::abs(p_lambda_weyl_eigenvalue(lambda, alpha));
  rep.tail_bound = err + eig / L * kernel_series_tail(gamma, 1 / L, N);
  rep.defect = std::fabs(rep.truncated - rep.closed);
  rep.ok = rep.defect <= rep.tail_bound + 1e-10;
  return rep;
}

// f~(z) = sum_n f(n) z^{-n}
template <class S, class Z>
Z z_transform(const FiniteSeq<S>& f, const Z& z) {
  if (z == Z(0)) throw error(errc::zero_point, "z = 0");
  const Z w = Z(1) / z;
  Z acc(0), wn(1);
  for (std::size_t n = 0; n < f.size(); ++n) {
    acc += Z(f.coeffs()[n]) * wn;
    wn *= w;
  }
  return acc;
}

// (z/(z-1))^a, |z| > 1
inline Complex kernel_z_transform(const Order& alpha, Complex z) {
  if (z == 0.0) throw error(errc::zero_point, "z = 0");
  return std::pow(1.0 - 1.0 / z, -alpha.to_double());
}

// z/(z lambda - 1)
inline Complex p_lambda_z_transform(Complex lambda, Complex z) {
  if (z == 0.0) throw error(errc::zero_point, "z = 0");
  if (lambda == 0.0) throw error(errc::zero_lambda, "lambda = 0");
  return z / (z * lambda - 1.0);
}

struct ZCrosscheckReport {
  Complex truncated, closed;
  double defect = 0, tail_bound = 0;
  bool ok = false;
};

// sum_{n<=N} (Delta^{-a} f)(n) z^{-n} against (z/(z-1))^a f~(z), |z| > 1.
inline ZCrosscheckReport cesaro_sum_z_crosscheck(const FiniteSeq<double>& f, const Order& alpha, Complex z,
                                                 std::size_t N) {
  const double R = std::abs(z);
  if (!(R > 1)) throw error(errc::not_summable, "need |z| > 1");
  if (f.support_end() > static_cast<long long>(N)) throw error(errc::horizon_too_short, "N below support");
  auto s = cesaro_sum(f, alpha, N);
  ZCrosscheckReport rep;
  rep.truncated = z_transform(s.truncation(), z);
  rep.closed = kernel_z_transform(alpha, z) * z_transform(f, z);
  for (std::size_t j = 0; j < f.size(); ++j)
    rep.tail_bound += std::fabs(f.coeffs()[j]) * std::pow(R, -double(j)) * kernel_series_tail(alpha, 1 / R, N - j);
  rep.defect = std::abs(rep.truncated - rep.closed);
  rep.ok = rep.defect <= rep.tail_bound + 1e-10;
  return rep;
}

// sum_{n<=N} p_lambda(n) z^{-n} against z/(z lambda - 1), |z lambda| > 1.
inline ZCrosscheckReport p_lambda_z_crosscheck(Complex lambda, Complex z, std::size_t N) {
  const double q = 1 / std::abs(lambda * z);
  if (!(q < 1)) throw error(errc::not_summable, "need |z| > 1/|lambda|");
  auto p = p_lambda_truncated(lambda, N);
  ZCrosscheckReport rep;
  rep.truncated = z_transform(p.truncation(), z);
  rep.closed = p_lambda_z_transform(lambda, z);
  rep.tail_bound = std::pow(q, double(N + 1)) / (std::abs(lambda) * (1 - q));
  rep.defect = std::abs(rep.truncated - rep.closed);
  rep.ok = rep.defect <= rep.tail_bound + 1e-10;
  return rep;
}

}  // namespace cesaro
