#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "error.hpp"
#include "kernels.hpp"
#include "matrix.hpp"
#include "scalar.hpp"
#include "seqcalc.hpp"
#include "special.hpp"
#include "weights.hpp"

namespace cesaro {

template <class S>
using DenseOperator = Matrix<S>;

template <class S>
using MatrixSequence = std::vector<Matrix<S>>;

// T_n = sum_{j<=n} k^a(n-j) T^j one step at a time:
// T_{n+1} = T T_n + k^a(n+1) I. Nothing but the current term is stored.
template <class S>
class OrbitStream {
 public:
  OrbitStream(Matrix<S> T, const Order& alpha)
      : T_(std::move(T)),
        a_(detail::checked_order<S>(alpha)),
        k_(scalar_traits<S>::from_int(1)),
        cur_(Matrix<S>::identity(T_.dim())) {}

  std::size_t index() const { return n_; }
  const Matrix<S>& current() const { return cur_; }
  const S& kernel() const { return k_; }

  void advance() {
    S nn = scalar_traits<S>::from_int(static_cast<long long>(n_));
    k_ = k_ * (nn + a_) / (nn + scalar_traits<S>::from_int(1));
    cur_ = T_ * cur_;
    cur_.add_identity(k_);
    ++n_;
  }

 private:
  Matrix<S> T_;
  S a_;
  S k_;
  Matrix<S> cur_;
  std::size_t n_ = 0;
};

template <class S>
struct CesaroOrbit {
  Matrix<S> T;
  Order alpha;
  std::size_t N = 0;
  MatrixSequence<S> table;
  NormKind norm_kind = default_norm_kind<S>();
};

template <class S>
CesaroOrbit<S> cesaro_orbit(const Matrix<S>& T, const Order& alpha, std::size_t N,
                            NormKind kind = default_norm_kind<S>()) {
  OrbitStream<S> s(T, alpha);
  CesaroOrbit<S> o{T, alpha, N, {}, kind};
  o.table.reserve(N + 1);
  o.table.push_back(s.current());
  for (std::size_t n = 1; n <= N; ++n) {
    s.advance();
    o.table.push_back(s.current());
  }
  return o;
}

namespace detail {

template <class S>
Matrix<S> functional_equation_residual(const MatrixSequence<S>& t, const std::vector<S>& k, std::size_t n,
                                       std::size_t m) {
  Matrix<S> r = t[n] * t[m];
  for (std::size_t u = 0; u <= n + m; ++u) {
    // coefficient of T_u on the right-hand side, collected so each T_u is touched once
    S c = scalar_traits<S>::from_int(0);
    if (u >= m) c += k[n + m - u];
    if (u + 1 <= n) c -= k[n + m - u];
    if (!scalar_traits<S>::is_zero(c)) r.add_scaled(-c, t[u]);
  }
  return r;
}

}  // namespace detail

// || T_n T_m - [sum_{u=m}^{n+m} k(n+m-u) T_u - sum_{u=0}^{n-1} k(n+m-u) T_u] ||
template <class S>
magnitude_t<S> functional_equation_defect(const MatrixSequence<S>& table, const Order& alpha, std::size_t n,
                                          std::size_t m, NormKind kind = default_norm_kind<S>()) {
  if (n < 1 || n + m >= table.size())
    throw error(errc::index_out_of_range, "need 1 <= n and n+m <= N");
  auto k = kernel_values<S>(alpha, n + m);
  return operator_norm(detail::functional_equation_residual(table, k, n, m), kind);
}

template <class S>
magnitude_t<S> functional_equation_defect(const CesaroOrbit<S>& o, std::size_t n, std::size_t m) {
  return functional_equation_defect(o.table, o.alpha, n, m, o.norm_kind);
}

template <class S>
struct FunctionalSweepReport {
  magnitude_t<S> max_defect{};
  std::size_t worst_n = 0, worst_m = 0;
  std::size_t pairs = 0;
};

// all 1 <= n, n+m <= max_sum
template <class S>
FunctionalSweepReport<S> functional_equation_sweep(const MatrixSequence<S>& table, const Order& alpha,
                                                   std::size_t max_sum, NormKind kind = default_norm_kind<S>()) {
  if (max_sum >= table.size()) throw error(errc::index_out_of_range, "sweep beyond the table");
  auto k = kernel_values<S>(alpha, max_sum);
  FunctionalSweepReport<S> rep;
  for (std::size_t n = 1; n <= max_sum; ++n)
    for (std::size_t m = 0; n + m <= max_sum; ++m) {
      auto d = operator_norm(detail::functional_equation_residual(table, k, n, m), kind);
      ++rep.pairs;
      if (d > rep.max_defect) {
        rep.max_defect = d;
        rep.worst_n = n;
        rep.worst_m = m;
      }
    }
  return rep;
}

template <class S>
struct GeneratorReport {
  Matrix<S> T;
  magnitude_t<S> max_defect{};
  std::size_t worst_n = 0;
};

// T = T_1 - a I, then compare the table with the orbit of T.
template <class S>
GeneratorReport<S> reconstruct_generator(const MatrixSequence<S>& table, const Order& alpha,
                                         NormKind kind = default_norm_kind<S>()) {
  if (table.empty() || !(table[0] == Matrix<S>::identity(table[0].dim())))
    throw error(errc::not_identity_at_zero, "table[0] is not the identity");
  if (table.size() < 2) throw error(errc::horizon_too_short, "need table[1]");
  GeneratorReport<S> rep;
  rep.T = table[1];
  rep.T.add_identity(-detail::checked_order<S>(alpha));
  OrbitStream<S> s(rep.T, alpha);
  for (std::size_t n = 0; n < table.size(); ++n) {
    if (n) s.advance();
    auto d = operator_norm(Matrix<S>(table[n] - s.current()), kind);
    if (d > rep.max_defect) {
      rep.max_defect = d;
      rep.worst_n = n;
    }
  }
  return rep;
}

struct RatioReport {
  std::vector<double> norms, ratios;
  double sup = 0;
  std::size_t argsup = 0;
  double trend = 0;  // least-squares slope of log ratio against log n on [N/2, N]
};

namespace detail {

inline double loglog_slope(const std::vector<double>& y, std::size_t from, std::size_t to) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t n = std::max<std::size_t>(from, 1); n <= to && n < y.size(); ++n) {
    if (!(y[n] > 0)) continue;
    double x = std::log(double(n)), v = std::log(y[n]);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
    ++cnt;
  }
  if (cnt < 2) return 0;
  double den = cnt * sxx - sx * sx;
  return den == 0 ? 0 : (cnt * sxy - sx * sy) / den;
}

inline RatioReport ratio_report(std::vector<double> norms, const Order& alpha) {
  RatioReport rep;
  const std::size_t N = norms.size() - 1;
  auto k = kernel_values<double>(alpha + Order(1), N);
  rep.norms = std::move(norms);
  for (std::size_t n = 0; n <= N; ++n) {
    rep.ratios.push_back(rep.norms[n] / k[n]);
    if (rep.ratios.back() > rep.sup) {
      rep.sup = rep.ratios.back();
      rep.argsup = n;
    }
  }
  rep.trend = loglog_slope(rep.ratios, N / 2, N);
  return rep;
}

}  // namespace detail

// ratios[n] = ||T_n|| / k^{a+1}(n)
template <class S>
RatioReport c_alpha_ratio(const CesaroOrbit<S>& o) {
  std::vector<double> norms;
  for (const auto& t : o.table) norms.push_back(scalar_traits<S>::to_double(operator_norm(t, o.norm_kind)));
  return detail::ratio_report(std::move(norms), o.alpha);
}

// Same, without storing the table.
template <class S>
RatioReport c_alpha_ratio(const Matrix<S>& T, const Order& alpha, std::size_t N,
                          NormKind kind = default_norm_kind<S>()) {
  OrbitStream<S> s(T, alpha);
  std::vector<double> norms;
  for (std::size_t n = 0; n <= N; ++n) {
    if (n) s.advance();
    norms.push_back(scalar_traits<S>::to_double(operator_norm(s.current(), kind)));
  }
  return detail::ratio_report(std::move(norms), alpha);
}

// theta(f) = sum_n W^a f(n) T_n
template <class S>
Matrix<S> theta_apply(const FiniteSeq<S>& f, const CesaroOrbit<S>& o) {
  if (f.support_end() > static_cast<long long>(o.N))
    throw error(errc::horizon_too_short, "support of f exceeds the orbit horizon");
  auto w = weyl_difference(f, o.alpha);
  Matrix<S> r(o.T.dim());
  for (std::size_t n = 0; n < w.size(); ++n) r.add_scaled(w.coeffs()[n], o.table[n]);
  return r;
}

template <class S>
magnitude_t<S> theta_multiplicativity_defect(const FiniteSeq<S>& f, const FiniteSeq<S>& g,
                                             const CesaroOrbit<S>& o) {
  Matrix<S> d = theta_apply(convolve(f, g), o) - theta_apply(f, o) * theta_apply(g, o);
  return operator_norm(d, o.norm_kind);
}

// || T theta(Delta f) - (I - T) theta(f) + f(0) I ||
template <class S>
magnitude_t<S> theta_difference_identity_defect(const FiniteSeq<S>& f, const CesaroOrbit<S>& o) {
  const std::size_t d = o.T.dim();
  Matrix<S> lhs = o.T * theta_apply(difference(f), o);
  Matrix<S> i_minus_t = Matrix<S>::identity(d) - o.T;
  Matrix<S> r = lhs - i_minus_t * theta_apply(f, o);
  r.add_identity(f[0]);
  return operator_norm(r, o.norm_kind);
}

template <class S>
magnitude_t<S> theta_order_independence_defect(const FiniteSeq<S>& f, const Matrix<S>& T, const Order& alpha,
                                               const Order& beta, std::size_t N,
                                               NormKind kind = default_norm_kind<S>()) {
  if (alpha.sign() <= 0 || !(alpha < beta)) throw error(errc::order_out_of_range, "need 0 < alpha < beta");
  auto oa = cesaro_orbit(T, alpha, N, kind);
  auto ob = cesaro_orbit(T, beta, N, kind);
  return operator_norm(Matrix<S>(theta_apply(f, oa) - theta_apply(f, ob)), kind);
}

struct GrowthEstimate {
  double a = 1;  // max(1, max_n ||T_n||^{1/n}) with a 1.25 safety factor
  double C = 1;  // max_n ||T_n|| / a^n
};

inline GrowthEstimate growth_estimate(const std::vector<double>& norms, double safety = 1.25) {
  GrowthEstimate g;
  double a = 1;
  for (std::size_t n = 1; n < norms.size(); ++n)
    if (norms[n] > 0) a = std::max(a, std::pow(norms[n], 1.0 / double(n)));
  g.a = a * safety;
  g.C = 0;
  for (std::size_t n = 0; n < norms.size(); ++n) g.C = std::max(g.C, norms[n] / std::pow(g.a, double(n)));
  return g;
}

namespace detail {

// sum_{n>N} x^n (k^a * rho^.)(n), x rho < 1, without cancellation.
inline double convolved_geometric_tail(const Order& alpha, double x, double rho, std::size_t N) {
  const double q = x * rho;
  if (!(q < 1) || !(x < 1)) return std::numeric_limits<double>::infinity();
  double s = 0, qj = 1;
  for (std::size_t j = 0; j <= N; ++j) {
    s += qj * kernel_series_tail(alpha, x, N - j);
    qj *= q;
  }
  s += qj / (1 - q) * std::pow(1 - x, -alpha.to_double());
  return s;
}

inline double geometric_tail(double q, std::size_t N) {  // sum_{n>N} q^n
  if (!(q < 1)) return std::numeric_limits<double>::infinity();
  return std::pow(q, double(N + 1)) / (1 - q);
}

// sum_{s>M} (s+1) q^s
inline double weighted_geometric_tail(double q, std::size_t M) {
  if (!(q < 1)) return std::numeric_limits<double>::infinity();
  double m = double(M);
  return std::pow(q, m + 1) * ((m + 2) - (m + 1) * q) / ((1 - q) * (1 - q));
}

inline double resolvent_prefactor(const Order& alpha, double lambda) {
  if (alpha.is_integer()) {
    long long a = alpha.floor();
    return ipow<double>(lambda - 1, a) * ipow<double>(lambda, -(a + 1));
  }
  if (!(lambda > 1))
    throw error(errc::order_out_of_range, "fractional alpha needs a real lambda > 1 (principal powers)");
  double a = alpha.to_double();
  return std::pow(lambda - 1, a) * std::pow(lambda, -(a + 1));
}

}  // namespace detail

struct ResolventReport {
  Matrix<double> R;
  double inverse_defect = 0;      // ||R (lambda I - T) - I||
  double tail_bound = 0;          // bound on ||R(lambda) - truncated R||
  double inverse_tail_bound = 0;  // tail_bound * ||lambda I - T||
  double growth_a = 1;
  bool rigorous_tail = false;     // false when the empirical growth estimate was used
  bool ok = false;
};

// R(lambda) = (lambda-1)^a lambda^{-(a+1)} sum_{n<=N} lambda^{-n} T_n
inline ResolventReport pseudo_resolvent(const Matrix<double>& T, const Order& alpha, double lambda, std::size_t N,
                                        NormKind kind = NormKind::Spectral) {
  if (lambda == 0) throw error(errc::zero_lambda, "lambda = 0");
  const double L = std::fabs(lambda);
  const double pref = detail::resolvent_prefactor(alpha, lambda);
  OrbitStream<double> s(T, alpha);
  std::vector<double> norms;
  Matrix<double> acc(T.dim());
  double w = 1;
  for (std::size_t n = 0; n <= N; ++n) {
    if (n) s.advance();
    norms.push_back(operator_norm(s.current(), kind));
    acc.add_scaled(w, s.current());
    w /= lambda;
  }
  ResolventReport rep;
  auto g = growth_estimate(norms);
  rep.growth_a = g.a;
  const double t = operator_norm(T, kind);
  // |lambda| > max(1, ||T||) converges by ||T_n|| <= (k^a * t^.)(n); otherwise
  // fall back to the fitted growth rate
  rep.rigorous_tail = t < L && L > 1;
  if (!rep.rigorous_tail && !(L > g.a))
    throw error(errc::not_convergent, "|lambda| below the growth estimate " + std::to_string(g.a));
  rep.R = pref * acc;
  const double tail = rep.rigorous_tail ? detail::convolved_geometric_tail(alpha, 1 / L, t, N)
                                        : g.C * detail::geometric_tail(g.a / L, N);
  rep.tail_bound = std::fabs(pref) * tail;
  Matrix<double> lt = Matrix<double>::identity(T.dim());
  lt *= lambda;
  lt -= T;
  rep.inverse_tail_bound = rep.tail_bound * operator_norm(lt, kind);
  Matrix<double> d = rep.R * lt;
  d.add_identity(-1.0);
  rep.inverse_defect = operator_norm(d, kind);
  rep.ok = rep.inverse_defect <= rep.inverse_tail_bound + 1e-10;
  return rep;
}

struct HilbertReport {
  double lambda = 0, mu = 0;
  double defect = 0, tolerance = 0;
  bool ok = false;
};

// R(lambda) - R(mu) = (mu - lambda) R(lambda) R(mu), tolerance from both tails.
inline HilbertReport resolvent_hilbert_check(const Matrix<double>& T, const Order& alpha, double lambda, double mu,
                                             std::size_t N, NormKind kind = NormKind::Spectral) {
  if (lambda == mu) throw error(errc::equal_parameters, "lambda == mu");
  auto rl = pseudo_resolvent(T, alpha, lambda, N, kind);
  auto rm = pseudo_resolvent(T, alpha, mu, N, kind);
  HilbertReport rep{lambda, mu};
  Matrix<double> d = rl.R - rm.R - (mu - lambda) * (rl.R * rm.R);
  rep.defect = operator_norm(d, kind);
  const double ea = rl.tail_bound, eb = rm.tail_bound;
  const double na = operator_norm(rl.R, kind), nb = operator_norm(rm.R, kind);
  rep.tolerance = ea + eb + std::fabs(mu - lambda) * (na * eb + ea * nb + ea * eb) + 1e-10;
  rep.ok = rep.defect <= rep.tolerance;
  return rep;
}

struct CrossReport {
  double defect = 0, tail_bound = 0;
  bool ok = false;
};

// theta applied to p_lambda on [0, N] against (lambda I - T)^{-1}.
inline CrossReport theta_p_lambda_crosscheck(const CesaroOrbit<double>& o, double lambda) {
  const double L = std::fabs(lambda);
  auto p = p_lambda_truncated(lambda, o.N);
  Matrix<double> th = theta_apply(p.truncation(), o);
  Matrix<double> li = Matrix<double>::identity(o.T.dim());
  li *= lambda;
  li -= o.T;
  Matrix<double> inv = inverse(li);
  CrossReport rep;
  rep.defect = operator_norm(Matrix<double>(th - inv), o.norm_kind);
  // theta(p restricted to [0,N]) = sum_{n<=N} lambda^{-(n+1)} T^n
  const double t = operator_norm(o.T, o.norm_kind);
  if (t < L) {
    rep.tail_bound = detail::geometric_tail(t / L, o.N) / L;
  } else {
    std::vector<double> pn;
    Matrix<double> P = Matrix<double>::identity(o.T.dim());
    for (std::size_t n = 0; n <= o.N; ++n) {
      pn.push_back(operator_norm(P, o.norm_kind));
      P = o.T * P;
    }
    auto g = growth_estimate(pn);
    if (!(g.a < L)) throw error(errc::not_convergent, "|lambda| below the power growth estimate");
    rep.tail_bound = g.C * detail::geometric_tail(g.a / L, o.N) / L;
  }
  rep.ok = rep.defect <= rep.tail_bound + 1e-10;
  return rep;
}

struct DoubleZReport {
  double defect = 0, tail_bound = 0;
  bool ok = false;
};

// sum_n lambda^{-n} sum_m mu^{-m} (f * _nS)(m), where _nS(m) = S(n+m), against
// (1/(mu-lambda)) f~(mu) (mu S~(lambda) - lambda S~(mu)). The double sum keeps
// n+m <= N and each transform of S keeps indices <= N; the tail uses
// ||S(s)|| <= C a^s fitted on the table.
inline DoubleZReport double_z_identity_defect(const FiniteSeq<double>& f, const MatrixSequence<double>& S,
                                              double lambda, double mu, NormKind kind = NormKind::Spectral) {
  if (S.empty()) throw error(errc::horizon_too_short, "empty matrix sequence");
  const std::size_t N = S.size() - 1;
  const std::size_t d = S[0].dim();
  std::vector<double> norms;
  for (const auto& m : S) norms.push_back(operator_norm(m, kind));
  auto g = growth_estimate(norms);
  const double Ll = std::fabs(lambda), Lm = std::fabs(mu);
  if (!(Ll > Lm && Lm > g.a))
    throw error(errc::not_convergent, "need |lambda| > |mu| > growth estimate " + std::to_string(g.a));

  Matrix<double> lhs(d);
  double ln = 1;
  for (std::size_t n = 0; n <= N; ++n) {
    double mm = 1;
    for (std::size_t m = 0; n + m <= N; ++m) {
      Matrix<double> conv(d);
      for (std::size_t i = 0; i <= m && i < f.size(); ++i) conv.add_scaled(f.coeffs()[i], S[n + m - i]);
      lhs.add_scaled(ln * mm, conv);
      mm /= mu;
    }
    ln /= lambda;
  }
  Matrix<double> sl(d), sm(d);
  double wl = 1, wm = 1;
  for (std::size_t s = 0; s <= N; ++s) {
    sl.add_scaled(wl, S[s]);
    sm.add_scaled(wm, S[s]);
    wl /= lambda;
    wm /= mu;
  }
  const double fm = z_transform(f, mu);
  Matrix<double> rhs = (fm / (mu - lambda)) * Matrix<double>(mu * sl - lambda * sm);

  DoubleZReport rep;
  rep.defect = operator_norm(Matrix<double>(lhs - rhs), kind);
  double F = 0;
  for (std::size_t i = 0; i < f.size(); ++i) F += std::fabs(f.coeffs()[i]) * std::pow(g.a, -double(i));
  double lhs_tail = g.C * F * detail::weighted_geometric_tail(g.a / Lm, N);
  double rhs_tail = std::fabs(fm) / std::fabs(mu - lambda) * g.C *
                    (Lm * detail::geometric_tail(g.a / Ll, N) + Ll * detail::geometric_tail(g.a / Lm, N));
  rep.tail_bound = lhs_tail + rhs_tail;
  rep.ok = rep.defect <= rep.tail_bound + 1e-8;
  return rep;
}

struct PowerGrowth {
  double rho = 0;  // ||T^K||^{1/K} for the best K <= N
  double M = 1;    // ||T^n|| <= M rho^n for all n
  std::size_t K = 1;
  bool nilpotent = false;
};

// ||T^n|| <= ||T^K||^q ||T^j|| for n = qK + j gives ||T^n|| <= M rho^n.
inline PowerGrowth power_growth(const Matrix<double>& T, std::size_t Kmax, NormKind kind) {
  std::vector<double> pn;
  Matrix<double> P = Matrix<double>::identity(T.dim());
  for (std::size_t n = 0; n <= std::max<std::size_t>(Kmax, 1); ++n) {
    pn.push_back(operator_norm(P, kind));
    P = T * P;
  }
  PowerGrowth g;
  g.rho = std::numeric_limits<double>::infinity();
  for (std::size_t K = 1; K < pn.size(); ++K) {
    if (pn[K] == 0) {
      g.nilpotent = true;
      g.K = K;
      g.rho = 0;
      break;
    }
    double r = std::pow(pn[K], 1.0 / double(K));
    if (r < g.rho) {
      g.rho = r;
      g.K = K;
    }
  }
  g.M = 0;
  for (std::size_t j = 0; j < g.K; ++j) g.M = std::max(g.M, g.nilpotent ? pn[j] : pn[j] / std::pow(g.rho, double(j)));
  return g;
}

struct AbelReport {
  Matrix<double> A;
  double tail_bound = 0;
  double rho = 0;
};

// (1-r) sum_{n<=N} r^n T^n
inline AbelReport abel_mean(const Matrix<double>& T, double r, std::size_t N, NormKind kind = NormKind::Spectral) {
  if (!(r >= 0 && r < 1)) throw error(errc::order_out_of_range, "need 0 <= r < 1");
  auto g = power_growth(T, N, kind);
  if (!(r * g.rho < 1)) throw error(errc::not_convergent, "r times the growth rate is >= 1");
  AbelReport rep;
  rep.rho = g.rho;
  rep.A = Matrix<double>(T.dim());
  Matrix<double> P = Matrix<double>::identity(T.dim());
  double w = 1 - r;
  for (std::size_t n = 0; n <= N; ++n) {
    rep.A.add_scaled(w, P);
    P = T * P;
    w *= r;
  }
  if (g.nilpotent)
    rep.tail_bound = N + 1 >= g.K ? 0.0 : (1 - r) * g.M * double(g.K);
  else
    rep.tail_bound = (1 - r) * g.M * detail::geometric_tail(r * g.rho, N);
  return rep;
}

// ((1-r)/r) (1/r - T)^{-1}, and I at r = 0.
inline Matrix<double> abel_resolvent_form(const Matrix<double>& T, double r) {
  if (!(r >= 0 && r < 1)) throw error(errc::order_out_of_range, "need 0 <= r < 1");
  if (r == 0) return Matrix<double>::identity(T.dim());
  Matrix<double> m = Matrix<double>::identity(T.dim());
  m *= 1 / r;
  m -= T;
  return ((1 - r) / r) * inverse(m);
}

struct SubordinationReport {
  double defect = 0, tail_bound = 0;
  bool ok = false;
};

// || (1-r) sum r^n T^n - (1-r)^{a+1} sum r^n T_n ||, both truncated at N.
inline SubordinationReport abel_subordination_defect(const Matrix<double>& T, const Order& alpha, double r,
                                                     std::size_t N, NormKind kind = NormKind::Spectral) {
  auto am = abel_mean(T, r, N, kind);
  auto g = power_growth(T, N, kind);
  const double c = std::pow(1 - r, alpha.to_double() + 1);
  OrbitStream<double> s(T, alpha);
  Matrix<double> acc(T.dim());
  double w = 1;
  for (std::size_t n = 0; n <= N; ++n) {
    if (n) s.advance();
    acc.add_scaled(w, s.current());
    w *= r;
  }
  acc *= c;
  SubordinationReport rep;
  rep.defect = operator_norm(Matrix<double>(am.A - acc), kind);
  double orbit_tail;
  if (g.nilpotent) {
    // T^j = 0 for j >= K, so ||T_n|| <= M sum_{j<K} k(n-j)
    orbit_tail = 0;
    for (std::size_t j = 0; j < g.K && j <= N; ++j)
      orbit_tail += g.M * std::pow(r, double(j)) * kernel_series_tail(alpha, r, N - j);
  } else {
    orbit_tail = g.M * detail::convolved_geometric_tail(alpha, r, g.rho, N);
  }
  rep.tail_bound = am.tail_bound + c * orbit_tail;
  rep.ok = rep.defect <= rep.tail_bound + 1e-10;
  return rep;
}

// sup_n ||T_n|| / k^{g+1}(n), n <= N
inline double measured_orbit_constant(const Matrix<double>& T, const Order& alpha, const Order& gamma, std::size_t N,
                                      NormKind kind = NormKind::Spectral) {
  OrbitStream<double> s(T, alpha);
  auto k = kernel_values<double>(gamma + Order(1), N);
  double C = 0;
  for (std::size_t n = 0; n <= N; ++n) {
    if (n) s.advance();
    C = std::max(C, operator_norm(s.current(), kind) / k[n]);
  }
  return C;
}

struct AbelBoundRow {
  double r = 0, norm = 0, bound = 0;
  bool ok = false;
};

// ||A_r(T)|| <= C (1-r)^{-(g-a)} with A_r from the resolvent form.
inline std::vector<AbelBoundRow> abel_bound_check(const Matrix<double>& T, const Order& alpha, const Order& gamma,
                                                  double C, const std::vector<double>& r_grid,
                                                  NormKind kind = NormKind::Spectral, double margin = 1e-12) {
  if (gamma < alpha) throw error(errc::order_out_of_range, "need gamma >= alpha");
  std::vector<AbelBoundRow> rows;
  for (double r : r_grid) {
    AbelBoundRow row;
    row.r = r;
    row.norm = operator_norm(abel_resolvent_form(T, r), kind);
    row.bound = C * std::pow(1 - r, -(gamma - alpha).to_double());
    row.ok = row.norm <= row.bound * (1 + margin);
    rows.push_back(row);
  }
  return rows;
}

enum class GalleryName { Assani, ShiftBlock };

template <class S>
Matrix<S> gallery_assani() {
  return Matrix<S>::from_ints({{-1, 2}, {0, -1}});
}

// [[T, T - I], [0, T]] with T the d x d truncated backward shift
template <class S>
Matrix<S> gallery_shift_block(std::size_t d) {
  if (d < 2) throw error(errc::dimension_too_small, "ShiftBlock needs d >= 2");
  Matrix<S> m(2 * d);
  const S one = scalar_traits<S>::from_int(1);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    m(i, i + 1) = one;
    m(d + i, d + i + 1) = one;
    m(i, d + i + 1) = one;
  }
  for (std::size_t i = 0; i < d; ++i) m(i, d + i) -= one;
  return m;
}

template <class S>
Matrix<S> gallery(GalleryName name, std::size_t d = 0) {
  return name == GalleryName::Assani ? gallery_assani<S>() : gallery_shift_block<S>(d);
}

// ||theta(e_n)|| / q_a(e_n) = ||T^n|| / q_a(e_n), n <= n_max; lower bounds for
// the norm of the homomorphism on the q_a algebra.
inline std::vector<double> theta_norm_lower_bounds(const Matrix<double>& T, const Order& alpha, std::size_t n_max,
                                                   NormKind kind = NormKind::Spectral) {
  std::vector<double> out;
  Matrix<double> P = Matrix<double>::identity(T.dim());
  for (std::size_t n = 0; n <= n_max; ++n) {
    out.push_back(operator_norm(P, kind) / q_alpha(FiniteSeq<double>::unit(n), alpha));
    P = T * P;
  }
  return out;
}

struct ShiftBlockReport {
  std::size_t dim = 0;
  std::vector<double> power_norms;         // spectral ||T^n||, n = 0..n_max
  std::vector<double> cesaro_ratio_upper;  // sqrt(||S_n||_1 ||S_n||_inf) / (n+1), S_n = sum_{j<=n} T^j
  double min_margin = 0;                   // min_{1<=n<=n_max} ||T^n|| - 2n
  std::size_t argmin = 0;
  double ratio_sup = 0, ratio_trend = 0, power_trend = 0;
};

// Finite truncation of the operator-matrix example; growth statements are
// only meaningful for n well below d.
inline ShiftBlockReport shift_block_diagnostic(std::size_t d, std::size_t n_max) {
  auto T = gallery_shift_block<double>(d);
  ShiftBlockReport rep;
  rep.dim = 2 * d;
  Matrix<double> P = Matrix<double>::identity(T.dim());
  OrbitStream<double> s(T, Order(1));
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n) {
      P = T * P;
      s.advance();
    }
    rep.power_norms.push_back(spectral_norm(P));
    rep.cesaro_ratio_upper.push_back(spectral_norm_upper_bound(s.current()) / double(n + 1));
    if (n >= 1 && rep.power_norms[n] - 2.0 * n < rep.min_margin) {
      rep.min_margin = rep.power_norms[n] - 2.0 * n;
      rep.argmin = n;
    }
  }
  rep.ratio_sup = *std::max_element(rep.cesaro_ratio_upper.begin(), rep.cesaro_ratio_upper.end());
  rep.ratio_trend = detail::loglog_slope(rep.cesaro_ratio_upper, n_max / 2, n_max);
  rep.power_trend = detail::loglog_slope(rep.power_norms, n_max / 2, n_max);
  return rep;
}

}  // namespace cesaro
