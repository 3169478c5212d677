#include <gtest/gtest.h>

#include <cmath>

#include "cesaro/random.hpp"
#include "cesaro/seqcalc.hpp"

using namespace cesaro;
using Q = Rational;
using Seq = FiniteSeq<Q>;

namespace {

Q kernel_oracle(const Q& a, long n) {
  Q p(1);
  for (long j = 1; j <= n; ++j) p *= (a + j - 1) / Q(j);
  return p;
}

// direct tail sum sum_{j>=n} k^a(j-n) f(j)
Seq weyl_sum_oracle(const Seq& f, const Q& a) {
  std::vector<Q> c(f.size());
  for (std::size_t n = 0; n < f.size(); ++n)
    for (std::size_t j = n; j < f.size(); ++j) c[n] += kernel_oracle(a, long(j - n)) * f[j];
  return Seq(c);
}

Seq h_oracle(const Q& a, long n) {
  std::vector<Q> c(n + 1);
  for (long j = 0; j <= n; ++j) c[j] = kernel_oracle(a, n - j);
  return Seq(c);
}

long binom(long m, long j) {
  long r = 1;
  for (long i = 1; i <= j; ++i) r = r * (m - i + 1) / i;
  return r;
}

}  // namespace

TEST(FiniteSeq, TrimsTrailingZeros) {
  Seq f = Seq::from_ints({1, 2, 0, 0});
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(f.support_end(), 1);
  Seq z = Seq::from_ints({0, 0});
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.support_end(), -1);
  EXPECT_EQ(f[10], Q(0));
}

TEST(WindowedSeq, IndexBeyondWindow) {
  auto w = cesaro_sum(Seq::unit(0), Order(1), 4);
  EXPECT_EQ(w.horizon(), 4u);
  try {
    w.at(5);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::index_out_of_range);
  }
}

TEST(Convolve, Examples) {
  EXPECT_EQ(convolve(Seq::unit(1), Seq::unit(1)), Seq::unit(2));
  Seq f = Seq::from_ints({3, -1, 4});
  EXPECT_EQ(convolve(Seq::unit(0), f), f);
  EXPECT_EQ(convolve(Seq::from_ints({1, 1}), Seq::from_ints({1, 1})), Seq::from_ints({1, 2, 1}));
  EXPECT_TRUE(convolve(Seq(), f).is_zero());
}

TEST(Convolve, CommutativeAssociative) {
  InstanceGenerator gen(7);
  for (int t = 0; t < 30; ++t) {
    Seq f = gen.sequence(10), g = gen.sequence(10), h = gen.sequence(10);
    EXPECT_EQ(convolve(f, g), convolve(g, f));
    EXPECT_EQ(convolve(convolve(f, g), h), convolve(f, convolve(g, h)));
    EXPECT_EQ(convolve(f, g).support_end(), f.support_end() + g.support_end());
  }
}

TEST(WeylSum, Examples) {
  EXPECT_EQ(weyl_sum(Seq::unit(2), Order(1)), Seq::from_ints({1, 1, 1}));
  EXPECT_EQ(weyl_sum(Seq::unit(0), Order(1, 2)), Seq::unit(0));
  Seq f = Seq::from_ints({2, -3, 5});
  EXPECT_EQ(weyl_sum(f, Order(0)), f);
  for (long n : {0, 1, 4, 7})
    EXPECT_EQ(weyl_sum(h_oracle(Q(1) / 3, n), Order(5, 4)), h_oracle(Q(1) / 3 + Q(5) / 4, n));
}

TEST(WeylSum, MatchesTailSumOracle) {
  InstanceGenerator gen(11);
  for (const char* a : {"1/4", "1/2", "1", "7/3"})
    for (int t = 0; t < 10; ++t) {
      Seq f = gen.sequence(16);
      EXPECT_EQ(weyl_sum(f, Order::parse(a)), weyl_sum_oracle(f, parse_rational(a)));
    }
}

TEST(WeylSum, NegativeOrderRejected) {
  try {
    weyl_sum(Seq::unit(1), Order(-1));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::negative_order);
  }
}

TEST(WeylDifference, HalfOnE1) {
  // W^{-1/2} e_1 = (1/2, 1), then the first difference gives (-1/2, 1)
  Seq expected({Q(-1) / 2, Q(1)});
  EXPECT_EQ(weyl_difference(Seq::unit(1), Order(1, 2)), expected);
}

TEST(WeylDifference, OnE1IsAffineInAlpha) {
  for (const char* a : {"1/3", "1", "5/2", "3"}) {
    Q al = parse_rational(a);
    EXPECT_EQ(weyl_difference(Seq::unit(1), Order::parse(a)), Seq({Q(-al), Q(1)}));
  }
}

TEST(WeylDifference, KillsHFamily) {
  for (const char* a : {"1/2", "1", "7/4", "3"})
    for (long n : {0, 1, 3, 9}) EXPECT_EQ(weyl_difference(h_oracle(parse_rational(a), n), Order::parse(a)), Seq::unit(n));
}

TEST(WeylDifference, IntegerOrderIsBinomialDifference) {
  for (long m : {1, 2, 3})
    for (long n : {0, 1, 2, 5}) {
      std::vector<Q> c(n + 1);
      for (long j = 0; j <= m && j <= n; ++j) c[n - j] = Q((j % 2 ? -1 : 1) * binom(m, j));
      EXPECT_EQ(weyl_difference(Seq::unit(n), Order(m)), Seq(c)) << m << " " << n;
    }
}

TEST(WeylDifference, NegativeOrderRoutesToSum) {
  Seq f = Seq::from_ints({1, -2, 3});
  EXPECT_EQ(weyl_difference(f, Order(-3, 2)), weyl_sum(f, Order(3, 2)));
}

TEST(Weyl, InversionExact) {
  InstanceGenerator gen(3);
  for (const char* a : {"1/3", "1/2", "1", "7/4", "5/2", "3"})
    for (int t = 0; t < 6; ++t) {
      Seq f = gen.sequence(32);
      Order al = Order::parse(a);
      EXPECT_EQ(weyl_difference(weyl_sum(f, al), al), f) << a;
      EXPECT_EQ(weyl_sum(weyl_difference(f, al), al), f) << a;
    }
}

TEST(Weyl, IndexLawSums) {
  InstanceGenerator gen(5);
  for (int t = 0; t < 10; ++t) {
    Seq f = gen.sequence(20);
    EXPECT_EQ(weyl_sum(weyl_sum(f, Order(1, 3)), Order(3, 4)), weyl_sum(f, Order(13, 12)));
  }
}

TEST(Weyl, SignedIndexLaw) {
  InstanceGenerator gen(9);
  const char* orders[] = {"-3/2", "-1", "-1/3", "0", "1/2", "1", "5/4", "2"};
  for (const char* a : orders)
    for (const char* b : orders) {
      Order oa = Order::parse(a), ob = Order::parse(b);
      if (oa + ob < Order(-3)) continue;
      Seq f = gen.sequence(12);
      EXPECT_EQ(weyl(weyl(f, ob), oa), weyl(f, oa + ob)) << a << " " << b;
    }
}

TEST(Weyl, SmallOrderLimit) {
  // k^{-a}(j) = -a/j + O(a^2) for j >= 1, so both defects are a * max_n |sum_j f(n+j)/j| to first order
  InstanceGenerator gen(13);
  int below = 0;
  for (int t = 0; t < 8; ++t) {
    std::vector<double> c(gen.index(1, 16));
    for (auto& x : c) x = gen.uniform(-1, 1);
    FiniteSeq<double> f(c);
    double slope = 0;
    for (std::size_t n = 0; n < c.size(); ++n) {
      double s = 0;
      for (std::size_t j = 1; n + j < c.size(); ++j) s += c[n + j] / double(j);
      slope = std::max(slope, std::fabs(s));
    }
    double prev_sum = 1e9, prev_diff = 1e9;
    for (int k = 1; k <= 20; ++k) {
      Order a = Order(Rational(1) / Rational(Integer(1) << k));
      double ds = max_abs_diff(weyl_sum(f, a), f);
      double dd = max_abs_diff(weyl_difference(f, a), f);
      EXPECT_LE(ds, prev_sum * (1 + 1e-9));
      EXPECT_LE(dd, prev_diff * (1 + 1e-9));
      prev_sum = ds;
      prev_diff = dd;
    }
    const double a20 = std::ldexp(1.0, -20);
    EXPECT_NEAR(prev_sum / a20, slope, 1e-4 * (1 + slope));
    EXPECT_NEAR(prev_diff / a20, slope, 1e-4 * (1 + slope));
    // the 1e-6 threshold at 2^-20 holds exactly when the first-order slope is below ~1.05
    EXPECT_EQ(prev_sum < 1e-6, slope * a20 < 1e-6);
    below += prev_sum < 1e-6;
  }
  EXPECT_GT(below, 0);
}

TEST(CesaroSum, Examples) {
  auto w = cesaro_sum(Seq::unit(0), Order(1, 2), 30);
  for (std::size_t n = 0; n <= 30; ++n) EXPECT_EQ(w[n], kernel_oracle(Q(1) / 2, long(n)));
  EXPECT_EQ(cesaro_sum(Seq::from_ints({1, 1, 1}), Order(1), 8)[5], Q(3));
}

TEST(CesaroSum, HalfTwiceIsOne) {
  InstanceGenerator gen(17);
  for (int t = 0; t < 10; ++t) {
    Seq f = gen.sequence(12);
    auto twice = cesaro_sum(cesaro_sum(f, Order(1, 2), 40), Order(1, 2));
    EXPECT_EQ(twice, cesaro_sum(f, Order(1), 40));
  }
}

TEST(Duality, Examples) {
  EXPECT_EQ(duality_pairing(Seq::unit(3), Seq::unit(3)), Q(1));
  EXPECT_EQ(duality_pairing(Seq::unit(3), Seq::unit(2)), Q(0));
}

TEST(Duality, WeylAgainstCesaro) {
  InstanceGenerator gen(19);
  for (const char* a : {"1/2", "1", "3/2"})
    for (int t = 0; t < 10; ++t) {
      Order al = Order::parse(a);
      Seq f = gen.sequence(16), g = gen.sequence(16);
      std::size_t N = 16;
      // <W^{-a} f, g> = <f, Delta^{-a} g>
      EXPECT_EQ(duality_pairing(weyl_sum(f, al), g), duality_pairing(f, cesaro_sum(g, al, N)));
      // <f, g> = <Delta^{-a} f, W^a g>
      EXPECT_EQ(duality_pairing(f, g), duality_pairing(weyl_difference(g, al), cesaro_sum(f, al, N)));
      // <f, g> = <W^a f, Delta^{-a} g>
      EXPECT_EQ(duality_pairing(f, g), duality_pairing(weyl_difference(f, al), cesaro_sum(g, al, N)));
    }
}

TEST(Duality, WindowTooShort) {
  try {
    duality_pairing(Seq::unit(5), cesaro_sum(Seq::unit(0), Order(1), 3));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::horizon_too_short);
  }
}

TEST(ProductIdentity, Examples) {
  Seq g = Seq::from_ints({2, 0, -1, 3});
  EXPECT_EQ(weyl_product_identity_defect(Seq::unit(0), g, Order(1, 2)), Q(0));
  EXPECT_EQ(weyl_product_identity_defect(h_oracle(Q(1) / 2, 2), h_oracle(Q(1) / 2, 3), Order(1, 2)), Q(0));
}

TEST(ProductIdentity, RandomExact) {
  InstanceGenerator gen(23);
  for (const char* a : {"1/2", "1", "5/4"})
    for (int t = 0; t < 8; ++t)
      EXPECT_EQ(weyl_product_identity_defect(gen.sequence(12), gen.sequence(12), Order::parse(a)), Q(0)) << a;
}

TEST(ProductIdentity, FloatSmall) {
  FiniteSeq<double> f({0.5, -1.0, 0.25}), g({1.0, 2.0});
  EXPECT_LT(weyl_product_identity_defect(f, g, Order(3, 4)), 1e-13);
}

TEST(Difference, Forward) {
  EXPECT_EQ(difference(Seq::unit(0)), Seq::from_ints({-1}));
  EXPECT_EQ(difference(Seq::from_ints({1, 4, 9})), Seq::from_ints({3, 5, -9}));
}
