#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "error.hpp"

namespace cesaro {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Complex = std::complex<double>;

enum class ScalarMode { ExactRational, Float64 };

inline const char* mode_name(ScalarMode m) {
  return m == ScalarMode::ExactRational ? "exact" : "float";
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  using magnitude = Rational;
  static constexpr ScalarMode mode = ScalarMode::ExactRational;
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_int(long long v) { return Rational(v); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct scalar_traits<double> {
  using magnitude = double;
  static constexpr ScalarMode mode = ScalarMode::Float64;
  static constexpr bool exact = false;
  static double from_rational(const Rational& q) { return q.convert_to<double>(); }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::fabs(x); }
  static bool is_zero(double x) { return x == 0.0; }
};

template <>
struct scalar_traits<Complex> {
  using magnitude = double;
  static constexpr ScalarMode mode = ScalarMode::Float64;
  static constexpr bool exact = false;
  static Complex from_rational(const Rational& q) { return {q.convert_to<double>(), 0.0}; }
  static Complex from_int(long long v) { return {static_cast<double>(v), 0.0}; }
  static double to_double(const Complex& x) { return std::abs(x); }
  static double abs(const Complex& x) { return std::abs(x); }
  static bool is_zero(const Complex& x) { return x == Complex{}; }
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <class S>
using magnitude_t = typename scalar_traits<S>::magnitude;

// Exact parse of "p/q", "-3", "0.125", "1e-3" or "2.5E+2".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw error(errc::parse_error, "not a rational number: '" + std::string(text) + "'");
  };
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (s.empty()) return fail();

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) return fail();
    return num / den;
  }

  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
  std::string digits;
  long long scale = 0;
  bool seen_dot = false, any = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any = true;
      if (seen_dot) --scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any) return fail();
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') return fail();
    ++i;
    std::string ex = s.substr(i);
    if (ex.empty()) return fail();
    size_t used = 0;
    long long e = 0;
    try {
      e = std::stoll(ex, &used);
    } catch (...) {
      return fail();
    }
    if (used != ex.size() || e > 4096 || e < -4096) return fail();
    scale += e;
  }
  // a leading zero would make GMP read the digits as octal
  auto nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  Rational v{Integer(digits)};
  Rational ten(10);
  for (long long k = 0; k < scale; ++k) v *= ten;
  for (long long k = 0; k > scale; --k) v /= ten;
  return neg ? Rational(-v) : v;
}

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// A fractional order. Values parsed from text or built from integers are exact
// rationals; values built from a double are flagged inexact and are refused in
// exact mode.
class Order {
 public:
  Order() = default;
  Order(long long num, long long den = 1) : value_(Rational(num) / Rational(den)) {}
  explicit Order(const Rational& q) : value_(q) {}

  static Order approx(double x) {
    Order o{Rational(x)};
    o.exact_ = false;
    return o;
  }
  static Order parse(std::string_view text) { return Order(parse_rational(text)); }

  const Rational& value() const { return value_; }
  bool exact() const { return exact_; }
  double to_double() const { return value_.convert_to<double>(); }
  bool is_integer() const { return boost::multiprecision::denominator(value_) == 1; }
  int sign() const { return value_.sign(); }

  // floor as a machine integer; orders in this library are small
  long long floor() const {
    Integer n = boost::multiprecision::numerator(value_);
    Integer d = boost::multiprecision::denominator(value_);
    Integer q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q.convert_to<long long>();
  }

  std::string str() const {
    if (!exact_) {
      std::ostringstream os;
      os.precision(17);
      os << to_double();
      return os.str();
    }
    return to_string(value_);
  }

  Order operator-() const {
    Order o{Rational(-value_)};
    o.exact_ = exact_;
    return o;
  }
  friend Order operator+(const Order& a, const Order& b) {
    Order o{Rational(a.value_ + b.value_)};
    o.exact_ = a.exact_ && b.exact_;
    return o;
  }
  friend Order operator-(const Order& a, const Order& b) { return a + (-b); }

  friend bool operator==(const Order& a, const Order& b) { return a.value_ == b.value_; }
  friend bool operator<(const Order& a, const Order& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Order& a, const Order& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Order& a, const Order& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Order& a, const Order& b) { return a.value_ >= b.value_; }

 private:
  Rational value_{0};
  bool exact_ = true;
};

// The order as a scalar of type S. Throws in exact mode for inexact orders.
template <class S>
S order_value(const Order& a) {
  if constexpr (is_exact_v<S>) {
    if (!a.exact())
      throw error(errc::exact_mode_unsupported, "order " + a.str() + " is not an exact rational");
    return a.value();
  } else {
    return scalar_traits<S>::from_rational(a.value());
  }
}

template <class S>
S ipow(S base, long long e) {
  S result = scalar_traits<S>::from_int(1);
  if (e < 0) {
    base = scalar_traits<S>::from_int(1) / base;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

}  // namespace cesaro
