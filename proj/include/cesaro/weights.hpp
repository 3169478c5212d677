#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "kernels.hpp"
#include "scalar.hpp"
#include "seqcalc.hpp"

namespace cesaro {

enum class WeightKind { CesaroKernel, KernelTimesFactor, Tabulated };

// Positive weight on [0, N].
template <class S>
class Weight {
 public:
  static Weight kernel(const Order& gamma, std::size_t N) {
    return Weight(WeightKind::CesaroKernel, gamma, kernel_values<S>(gamma, N));
  }

  // phi(n) = k^gamma(n) * prod_{i<n} steps[i]; defined on [0, steps.size()].
  static Weight kernel_times_factor(const Order& gamma, const std::vector<S>& steps) {
    auto v = kernel_values<S>(gamma, steps.size());
    S f = scalar_traits<S>::from_int(1);
    for (std::size_t n = 1; n < v.size(); ++n) {
      f *= steps[n - 1];
      v[n] *= f;
    }
    return Weight(WeightKind::KernelTimesFactor, gamma, std::move(v));
  }

  static Weight tabulated(std::vector<S> values) {
    return Weight(WeightKind::Tabulated, std::nullopt, std::move(values));
  }

  WeightKind kind() const { return kind_; }
  const std::optional<Order>& gamma() const { return gamma_; }
  const std::vector<S>& values() const { return v_; }
  std::size_t horizon() const { return v_.size() - 1; }
  const S& operator[](std::size_t n) const { return v_[n]; }

  const std::optional<Order>& alpha_class() const { return alpha_class_; }
  void set_alpha_class(const Order& a) { alpha_class_ = a; }

 private:
  Weight(WeightKind k, std::optional<Order> g, std::vector<S> v)
      : kind_(k), gamma_(std::move(g)), v_(std::move(v)) {
    if (v_.empty()) throw error(errc::weight_too_short, "empty weight");
    for (std::size_t n = 0; n < v_.size(); ++n)
      if (!(v_[n] > 0))
        throw error(errc::non_positive_weight, "weight value at n=" + std::to_string(n) + " is not positive");
  }

  WeightKind kind_;
  std::optional<Order> gamma_;
  std::vector<S> v_;
  std::optional<Order> alpha_class_;
};

struct HorizonMax {
  std::size_t P;
  double max_c;
};

struct CertificationReport {
  double c_phi_estimate = 0;
  std::size_t worst_j = 0, worst_p = 0;
  bool violated = false;
  std::size_t horizon = 0;
  std::vector<HorizonMax> running_max;  // dyadic horizons 16, 32, ... <= P
};

// Finite evidence for the local weight-class inequality
//   (sum_{n=0}^{j} + sum_{n=p+1}^{j+p}) k^a(n) phi(j+p-n) <= c phi(j) phi(p),  1 <= j <= p <= P.
// The running maximum of c(j,p) is tracked on dyadic horizons; growth by a
// factor >= growth_factor over three consecutive doublings marks the weight as
// divergent.
template <class S>
CertificationReport certify_omega_alpha_loc(const Weight<S>& phi, const Order& alpha, std::size_t P,
                                            double growth_factor = 1.5) {
  if (alpha.sign() <= 0) throw error(errc::order_out_of_range, "certification needs alpha > 0");
  if (phi.horizon() < 2 * P)
    throw error(errc::weight_too_short, "weight defined on [0," + std::to_string(phi.horizon()) +
                                            "], need [0," + std::to_string(2 * P) + "]");
  auto k = kernel_values<double>(alpha, 2 * P);
  std::vector<double> w(2 * P + 1);
  for (std::size_t n = 0; n <= 2 * P; ++n) w[n] = scalar_traits<S>::to_double(phi[n]);

  CertificationReport rep;
  rep.horizon = P;
  std::vector<double> best_by_p(P + 1, 0.0);
  std::vector<std::size_t> arg_j(P + 1, 0);
  std::vector<double> A(2 * P + 2);
  for (std::size_t s = 2; s <= 2 * P; ++s) {
    // A[i] = sum_{n<i} k(n) phi(s-n)
    A[0] = 0;
    for (std::size_t n = 0; n <= s; ++n) A[n + 1] = A[n] + k[n] * w[s - n];
    for (std::size_t p = (s + 1) / 2; p <= std::min(P, s - 1); ++p) {
      std::size_t j = s - p;
      double c = (A[j + 1] + (A[s + 1] - A[p + 1])) / (w[j] * w[p]);
      if (c > best_by_p[p]) {
        best_by_p[p] = c;
        arg_j[p] = j;
      }
    }
  }
  double running = 0;
  std::size_t next = 16;
  for (std::size_t p = 1; p <= P; ++p) {
    if (best_by_p[p] > running) {
      running = best_by_p[p];
      rep.worst_j = arg_j[p];
      rep.worst_p = p;
    }
    if (p == next) {
      rep.running_max.push_back({p, running});
      next *= 2;
    }
  }
  rep.c_phi_estimate = running;
  for (std::size_t i = 0; i + 3 < rep.running_max.size(); ++i)
    if (rep.running_max[i + 3].max_c >= growth_factor * rep.running_max[i].max_c) rep.violated = true;
  return rep;
}

// q_phi(f) = sum_n phi(n) |W^a f(n)|
template <class S>
S q_norm(const FiniteSeq<S>& f, const Weight<S>& phi, const Order& alpha) {
  auto w = weyl_difference(f, alpha);
  if (w.support_end() > static_cast<long long>(phi.horizon()))
    throw error(errc::weight_too_short, "weight does not cover the support");
  S acc = scalar_traits<S>::from_int(0);
  for (std::size_t n = 0; n < w.size(); ++n) acc += phi[n] * scalar_traits<S>::abs(w.coeffs()[n]);
  return acc;
}

// q_alpha uses phi = k^{a+1}.
template <class S>
S q_alpha(const FiniteSeq<S>& f, const Order& alpha) {
  std::size_t N = f.size() ? f.size() - 1 : 0;
  return q_norm(f, Weight<S>::kernel(alpha + Order(1), N), alpha);
}

// 2^{a+1} (1 + (1-a)/(2(1+a)))^a - 1
inline double sharp_algebra_constant(const Order& alpha) {
  double a = alpha.to_double();
  return std::pow(2.0, a + 1) * std::pow(1 + (1 - a) / (2 * (1 + a)), a) - 1;
}

template <class S>
struct SubmultiplicativityReport {
  S lhs{}, rhs{};
  bool ok = false;
};

template <class S>
SubmultiplicativityReport<S> submultiplicativity_check(const FiniteSeq<S>& f, const FiniteSeq<S>& g,
                                                       const Weight<S>& phi, const Order& alpha,
                                                       const S& C) {
  SubmultiplicativityReport<S> rep;
  rep.lhs = q_norm(convolve(f, g), phi, alpha);
  rep.rhs = C * q_norm(f, phi, alpha) * q_norm(g, phi, alpha);
  rep.ok = rep.lhs <= rep.rhs;
  return rep;
}

template <class S>
struct SharpConstantReport {
  S lhs{}, product{};  // q_a(f*g) and q_a(f) q_a(g)
  double ratio = 0;    // lhs / product
  double constant = 0;
  bool ok = false;
};

// q_a(f*g) <= (2 B^a - 1) q_a(f) q_a(g), B = (3+a)/(1+a), 0 < a < 1.
// In exact mode the irrational constant is never rounded: with a = p/q the
// test is ((lhs/product + 1)/2)^q <= B^p.
template <class S>
SharpConstantReport<S> sharp_constant_check(const FiniteSeq<S>& f, const FiniteSeq<S>& g,
                                            const Order& alpha) {
  if (alpha.sign() <= 0 || alpha >= Order(1))
    throw error(errc::order_out_of_range, "sharp constant needs 0 < alpha < 1");
  SharpConstantReport<S> rep;
  rep.constant = sharp_algebra_constant(alpha);
  rep.lhs = q_alpha(convolve(f, g), alpha);
  rep.product = q_alpha(f, alpha) * q_alpha(g, alpha);
  if (scalar_traits<S>::is_zero(rep.product)) {
    rep.ok = scalar_traits<S>::is_zero(rep.lhs);
    return rep;
  }
  S x = rep.lhs / rep.product;
  rep.ratio = scalar_traits<S>::to_double(x);
  if constexpr (is_exact_v<S>) {
    Rational B = (Rational(3) + alpha.value()) / (Rational(1) + alpha.value());
    long long p = boost::multiprecision::numerator(alpha.value()).convert_to<long long>();
    long long q = boost::multiprecision::denominator(alpha.value()).convert_to<long long>();
    double gap = std::log((rep.ratio + 1) / 2) - alpha.to_double() * std::log(B.convert_to<double>());
    if (std::fabs(gap) > 1e-9 || q > 4096)
      rep.ok = gap < 0;
    else
      rep.ok = ipow<Rational>((x + 1) / 2, q) <= ipow<Rational>(B, p);
  } else {
    rep.ok = rep.ratio <= rep.constant * (1 + 1e-12);
  }
  return rep;
}

struct LimitReport {
  std::vector<double> values;
  double l1 = 0;
  double final_defect = 0;
  bool asserted = false;  // smallest order <= 2^-20
  bool ok = true;
};

// q_a(f) along a descending grid of orders; the last value must be within tol
// of ||f||_1 when the grid reaches 2^-20.
inline LimitReport q_alpha_limit_check(const FiniteSeq<double>& f, const std::vector<Order>& grid,
                                       double tol = 1e-6) {
  LimitReport rep;
  for (double x : f.coeffs()) rep.l1 += std::fabs(x);
  for (const auto& a : grid) rep.values.push_back(q_alpha(f, a));
  if (!grid.empty()) {
    rep.final_defect = std::fabs(rep.values.back() - rep.l1);
    rep.asserted = grid.back().to_double() <= std::ldexp(1.0, -20);
    if (rep.asserted) rep.ok = rep.final_defect <= tol;
  }
  return rep;
}

template <class S>
struct OrderingReport {
  S q_alpha{}, q_beta{};
  bool ok = false;
};

template <class S>
OrderingReport<S> norm_ordering_check(const FiniteSeq<S>& f, const Order& alpha, const Order& beta) {
  if (alpha.sign() <= 0 || !(alpha < beta))
    throw error(errc::order_out_of_range, "need 0 < alpha < beta");
  OrderingReport<S> rep;
  rep.q_alpha = q_alpha(f, alpha);
  rep.q_beta = q_alpha(f, beta);
  rep.ok = rep.q_alpha <= rep.q_beta;
  return rep;
}

struct ClassConsequenceReport {
  bool doubling = true;     // (k^a * phi)(2n) <= c phi(n)^2
  bool kernel_below = true; // k^a(n) <= c phi(n)
  bool exponential = true;  // phi(n) <= (c phi(1))^n, n >= 1
  bool step = true;         // phi(n+1) <= c phi(1) phi(n)
  std::size_t first_failure = 0;
};

// Consequences of class membership with constant c, on the finite range the
// weight allows (doubling needs phi on [0, 2n]).
template <class S>
ClassConsequenceReport class_consequences_check(const Weight<S>& phi, const Order& alpha, double c,
                                                double rel_tol = 1e-12) {
  const std::size_t N = phi.horizon();
  auto k = kernel_values<double>(alpha, N);
  std::vector<double> w(N + 1);
  for (std::size_t n = 0; n <= N; ++n) w[n] = scalar_traits<S>::to_double(phi[n]);
  ClassConsequenceReport rep;
  auto fail = [&](bool& flag, std::size_t n) {
    if (flag) flag = false;
    if (!rep.first_failure) rep.first_failure = n;
  };
  const double slack = 1 + rel_tol;
  for (std::size_t n = 1; 2 * n <= N; ++n) {
    double conv = 0;
    for (std::size_t j = 0; j <= 2 * n; ++j) conv += k[j] * w[2 * n - j];
    if (conv > c * w[n] * w[n] * slack) fail(rep.doubling, n);
  }
  for (std::size_t n = 0; n <= N; ++n)
    if (k[n] > c * w[n] * slack) fail(rep.kernel_below, n);
  for (std::size_t n = 1; n <= N; ++n)
    if (std::log(w[n]) > double(n) * std::log(c * w[1]) + 1e-12 * double(n)) fail(rep.exponential, n);
  for (std::size_t n = 0; n < N; ++n)
    if (w[n + 1] > c * w[1] * w[n] * slack) fail(rep.step, n);
  return rep;
}

// Two columns "n,phi_n" with a header row; n must run 0, 1, 2, ...
template <class S>
Weight<S> read_weight_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw error(errc::parse_error, "missing CSV header");
  std::vector<S> values;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw error(errc::parse_error, "expected two columns: " + line);
    Rational n = parse_rational(line.substr(0, comma));
    if (n != Rational(static_cast<long long>(row)))
      throw error(errc::parse_error, "rows must be indexed 0,1,2,...; got " + line);
    values.push_back(scalar_traits<S>::from_rational(parse_rational(line.substr(comma + 1))));
    ++row;
  }
  return Weight<S>::tabulated(std::move(values));
}

}  // namespace cesaro
