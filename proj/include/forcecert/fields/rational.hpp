#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "forcecert/errors.hpp"

namespace forcecert {

using BigInt = boost::multiprecision::cpp_int;

/// The field of rational numbers. Stateless; every instance is the same field.
struct RationalField {
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

inline std::string describe(const RationalField&) { return "Q"; }
inline std::uint64_t characteristic(const RationalField&) { return 0; }

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
 public:
  using field_type = RationalField;

  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(BigInt n) : num_(std::move(n)) {}
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw DivisionByZero();
    normalize();
  }

  static Rational zero(const RationalField& = {}) { return Rational(); }
  static Rational one(const RationalField& = {}) { return Rational(1); }
  static Rational from_int(const RationalField&, std::int64_t n) { return Rational(n); }
  static Rational from_rational(const RationalField&, const Rational& q) { return q; }

  RationalField field() const { return {}; }
  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational inverse() const {
    if (is_zero()) throw DivisionByZero();
    return Rational(den_, num_);
  }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const BigInt lhs = a.num_ * b.den_;
    const BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_{0};
  BigInt den_{1};
};

inline std::string to_string(const Rational& q) {
  if (q.is_integer()) return q.numerator().str();
  return q.numerator().str() + "/" + q.denominator().str();
}

namespace detail {

inline std::optional<BigInt> exact_isqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

inline BigInt parse_bigint(std::string_view text, std::size_t offset) {
  if (text.empty()) throw ParseError("expected an integer", offset);
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  if (i == text.size()) throw ParseError("expected digits after sign", offset + i);
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') throw ParseError("unexpected character in integer", offset + j);
  }
  BigInt v(std::string(text.substr(i)));
  return text[0] == '-' ? BigInt(-v) : v;
}

/// Parses "a" or "a/b"; `offset` is only used for error positions.
inline Rational parse_rational_at(std::string_view text, std::size_t offset) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text, offset));
  BigInt num = parse_bigint(text.substr(0, slash), offset);
  BigInt den = parse_bigint(text.substr(slash + 1), offset + slash + 1);
  if (den == 0) throw ParseError("zero denominator", offset + slash + 1);
  return Rational(std::move(num), std::move(den));
}

}  // namespace detail

inline Rational parse_scalar(const RationalField&, std::string_view text) {
  return detail::parse_rational_at(text, 0);
}

/// Square root inside Q, if the argument is a rational square.
inline std::optional<Rational> field_sqrt(const Rational& q) {
  auto n = detail::exact_isqrt(q.numerator());
  auto d = detail::exact_isqrt(q.denominator());
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

}  // namespace forcecert
