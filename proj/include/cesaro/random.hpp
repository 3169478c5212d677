#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "matrix.hpp"
#include "scalar.hpp"
#include "seqcalc.hpp"

namespace cesaro {

// Seeded generators for test instances. Entries are p/q with |p| <= num_max
// and 1 <= q <= den_max.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  Rational rational(long long num_max, long long den_max) {
    std::uniform_int_distribution<long long> p(-num_max, num_max), q(1, den_max);
    long long a = p(rng_);
    return Rational(a) / Rational(q(rng_));
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  // length in [1, max_len]; the last entry is nonzero
  template <class S = Rational>
  FiniteSeq<S> sequence(std::size_t max_len, long long num_max = 5, long long den_max = 4) {
    std::size_t len = index(1, max_len);
    std::vector<S> c(len);
    for (auto& x : c) x = scalar_traits<S>::from_rational(rational(num_max, den_max));
    while (scalar_traits<S>::is_zero(c.back())) c.back() = scalar_traits<S>::from_rational(rational(num_max, den_max));
    return FiniteSeq<S>(std::move(c));
  }

  template <class S = Rational>
  Matrix<S> matrix(std::size_t dim, long long num_max = 2, long long den_max = 4) {
    Matrix<S> m(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = scalar_traits<S>::from_rational(rational(num_max, den_max));
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace cesaro
