#include <gtest/gtest.h>

#include <cmath>

#include "cesaro/kernels.hpp"

using namespace cesaro;

namespace {

// prod_{j=1}^{n} (a+j-1)/j
Rational gamma_product(const Rational& a, long n) {
  Rational p(1);
  for (long j = 1; j <= n; ++j) p *= (a + j - 1) / Rational(j);
  return p;
}

double gamma_ratio(double a, long n) {
  return std::exp(std::lgamma(n + a) - std::lgamma(a) - std::lgamma(n + 1.0));
}

}  // namespace

TEST(Kernel, WorkedValues) {
  EXPECT_EQ(cesaro_kernel<Rational>(Order(1), 5), Rational(1));
  EXPECT_EQ(cesaro_kernel<Rational>(Order(7, 3), 0), Rational(1));
  EXPECT_EQ(cesaro_kernel<Rational>(Order(1, 2), 2), Rational(3) / 8);
  EXPECT_EQ(cesaro_kernel<Rational>(Order(2), 3), Rational(4));
  EXPECT_DOUBLE_EQ(cesaro_kernel<double>(Order(1, 2), 2), 0.375);
}

TEST(Kernel, ZeroAndOne) {
  auto k0 = kernel_values<Rational>(Order(0), 20);
  auto k1 = kernel_values<Rational>(Order(1), 20);
  for (std::size_t n = 0; n <= 20; ++n) {
    EXPECT_EQ(k0[n], n == 0 ? Rational(1) : Rational(0));
    EXPECT_EQ(k1[n], Rational(1));
  }
}

TEST(Kernel, MatchesGammaProduct) {
  for (const char* a : {"1/4", "1/2", "1", "3/2", "2", "3"}) {
    Order al = Order::parse(a);
    auto k = kernel_values<Rational>(al, 128);
    auto kd = kernel_values<double>(al, 128);
    for (long n = 0; n <= 128; ++n) {
      ASSERT_EQ(k[n], gamma_product(al.value(), n)) << a << " n=" << n;
      EXPECT_NEAR(kd[n], gamma_ratio(al.to_double(), n), 1e-12 * gamma_ratio(al.to_double(), n));
    }
  }
}

TEST(Kernel, Errors) {
  try {
    cesaro_kernel<double>(Order(-1, 2), 3);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::negative_order);
  }
  try {
    cesaro_kernel<Rational>(Order::approx(std::sqrt(2.0)), 3);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::exact_mode_unsupported);
  }
  EXPECT_NO_THROW(cesaro_kernel<double>(Order::approx(std::sqrt(2.0)), 3));
}

TEST(Kernel, Monotonicity) {
  for (const char* a : {"1/4", "1/2", "3/4"}) {
    auto k = kernel_values<Rational>(Order::parse(a), 200);
    for (std::size_t n = 1; n < 200; ++n) EXPECT_LE(k[n + 1], k[n]);
  }
  for (const char* a : {"3/2", "2", "5/2"}) {
    auto k = kernel_values<Rational>(Order::parse(a), 200);
    for (std::size_t n = 1; n < 200; ++n) EXPECT_GE(k[n + 1], k[n]);
  }
}

TEST(Kernel, OrderingInAlpha) {
  const char* grid[] = {"1/8", "1/2", "1", "3/2", "3"};
  for (int i = 0; i + 1 < 5; ++i) {
    auto ka = kernel_values<Rational>(Order::parse(grid[i]), 100);
    auto kb = kernel_values<Rational>(Order::parse(grid[i + 1]), 100);
    for (std::size_t n = 0; n <= 100; ++n) EXPECT_LE(ka[n], kb[n]);
  }
}

TEST(Semigroup, ExactDefectZero) {
  EXPECT_EQ(kernel_semigroup_check<Rational>(Order(1), Order(1), 64).max_abs_defect, 0);
  EXPECT_EQ(kernel_semigroup_check<Rational>(Order(1, 2), Order(1, 2), 64).max_abs_defect, 0);
  EXPECT_EQ(kernel_semigroup_check<Rational>(Order(0), Order(5, 3), 64).max_abs_defect, 0);
  EXPECT_EQ(kernel_semigroup_check<Rational>(Order(1, 4), Order(3, 2), 64).max_abs_defect, 0);
}

TEST(Semigroup, CountingOracle) {
  // (k^1 * k^1)(n) = n + 1 = k^2(n)
  auto k2 = kernel_values<Rational>(Order(2), 64);
  for (long n = 0; n <= 64; ++n) EXPECT_EQ(k2[n], Rational(n + 1));
}

TEST(Semigroup, FloatDefectSmall) {
  auto r = kernel_semigroup_check<double>(Order(1, 3), Order(2, 3), 200);
  EXPECT_LT(r.max_abs_defect, 1e-12);
}

TEST(Gautschi, HalfOrderWideRange) {
  auto r = gautschi_bounds_check(Order(1, 2), 1000);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_GT(r.min_relative_margin, 0);
}

TEST(Gautschi, FirstIndexByHand) {
  const double g = std::sqrt(M_PI);
  const double lo = std::pow(2.0, -0.5) / g, hi = 1 / g;
  EXPECT_NEAR(lo, 0.3989422804, 1e-9);
  EXPECT_NEAR(hi, 0.5641895835, 1e-9);
  auto r = gautschi_bounds_check(Order(1, 2), 1);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_NEAR(r.gamma_alpha, g, 1e-14);
  EXPECT_LT(lo, 0.5);
  EXPECT_LT(0.5, hi);
}

TEST(Gautschi, NearOne) {
  EXPECT_TRUE(gautschi_bounds_check(Order(99, 100), 100).violations.empty());
}

TEST(Gautschi, RejectsOrdersOutsideUnitInterval) {
  for (Order a : {Order(0), Order(1), Order(3, 2)}) {
    try {
      gautschi_bounds_check(a, 10);
      FAIL();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::order_out_of_range);
    }
  }
}

TEST(Doubling, SecondOrderKernelByHand) {
  // k^2(2n)/k^2(n) = (2n+1)/(n+1) < 2
  auto r = doubling_check<Rational>(Order(2), 500);
  EXPECT_NEAR(r.max_ratio, 1001.0 / 501.0, 1e-15);
  EXPECT_LT(r.max_ratio, 2.0);
  EXPECT_TRUE(r.bounded);
}

TEST(Doubling, SharpBoundHalf) {
  auto r = doubling_check<Rational>(Order(1, 2), 1000);
  EXPECT_TRUE(r.sharp_checked);
  EXPECT_TRUE(r.sharp_violations.empty());
  EXPECT_LE(r.max_ratio, 1.0);
}

TEST(Doubling, ThirdOrder) {
  auto r = doubling_check<double>(Order(3), 1000);
  // k^3(n) = (n+1)(n+2)/2 so the ratio is 2(2n+1)/(n+2)
  EXPECT_NEAR(r.max_ratio, 2.0 * 2001 / 1002, 1e-12);
  EXPECT_LE(r.max_ratio, 8.0);
  EXPECT_TRUE(r.bounded);
  EXPECT_FALSE(r.sharp_checked);
}

TEST(Doubling, SharpBoundFloatGrid) {
  for (int i = 1; i <= 9; ++i) {
    auto r = doubling_check<double>(Order(i, 10), 1000);
    EXPECT_TRUE(r.sharp_violations.empty()) << i;
  }
}

TEST(GeneratingFunction, WithinRigorousTail) {
  for (Complex z : {Complex(0.5), Complex(-0.5), Complex(0, 0.3), Complex(0.2, -0.4)})
    for (const char* a : {"1/2", "3"})
      for (std::size_t N : {0, 5, 40}) {
        auto r = generating_function_check(Order::parse(a), z, N);
        EXPECT_TRUE(r.ok) << a << " z=" << z << " N=" << N << " defect " << r.defect << " tail " << r.tail_bound;
      }
}

TEST(GeneratingFunction, TailBoundDominatesBruteForce) {
  for (const char* a : {"1/3", "1", "5/2", "3"})
    for (double x : {0.1, 0.5, 0.9})
      for (std::size_t M : {0, 3, 50}) {
        auto k = kernel_values<double>(Order::parse(a), M + 4000);
        double s = 0;
        for (std::size_t n = M + 1; n <= M + 4000; ++n) s += k[n] * std::pow(x, double(n));
        EXPECT_LE(s, kernel_series_tail(Order::parse(a), x, M) * (1 + 1e-12)) << a << " " << x << " " << M;
      }
}
