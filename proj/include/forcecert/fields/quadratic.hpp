#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "forcecert/errors.hpp"
#include "forcecert/fields/rational.hpp"

namespace forcecert {

/// Q(sqrt(d)) for a squarefree integer d > 1.
class QuadraticField {
 public:
  explicit QuadraticField(std::int64_t d) : d_(d) {
    if (d <= 1 || !squarefree(d)) {
      throw PreconditionError("Q(sqrt(d)) requires a squarefree d > 1, got " + std::to_string(d));
    }
  }

  std::int64_t radicand() const { return d_; }
  friend bool operator==(const QuadraticField&, const QuadraticField&) = default;

 private:
  static bool squarefree(std::int64_t d) {
    for (std::int64_t q = 2; q * q <= d; ++q) {
      if (d % (q * q) == 0) return false;
    }
    return true;
  }

  std::int64_t d_;
};

inline std::string describe(const QuadraticField& f) { return "Qsqrt:" + std::to_string(f.radicand()); }
inline std::uint64_t characteristic(const QuadraticField&) { return 0; }

/// a + b·sqrt(d) with rational a, b.
class QuadraticElement {
 public:
  using field_type = QuadraticField;

  QuadraticElement(const QuadraticField& f, Rational a, Rational b = Rational())
      : f_(f), a_(std::move(a)), b_(std::move(b)) {}

  static QuadraticElement zero(const QuadraticField& f) { return {f, Rational()}; }
  static QuadraticElement one(const QuadraticField& f) { return {f, Rational(1)}; }
  static QuadraticElement from_int(const QuadraticField& f, std::int64_t n) { return {f, Rational(n)}; }
  static QuadraticElement from_rational(const QuadraticField& f, const Rational& q) { return {f, q}; }
  /// The element sqrt(d) itself.
  static QuadraticElement root(const QuadraticField& f) { return {f, Rational(), Rational(1)}; }

  const QuadraticField& field() const { return f_; }
  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  /// a^2 - d b^2, nonzero for nonzero elements since d is not a square.
  Rational norm() const { return a_ * a_ - Rational(f_.radicand()) * b_ * b_; }

  QuadraticElement conjugate() const { return {f_, a_, -b_}; }

  QuadraticElement inverse() const {
    if (is_zero()) throw DivisionByZero();
    const Rational n = norm();
    return {f_, a_ / n, -b_ / n};
  }

  QuadraticElement operator-() const { return {f_, -a_, -b_}; }

  QuadraticElement& operator+=(const QuadraticElement& o) {
    check(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QuadraticElement& operator-=(const QuadraticElement& o) {
    check(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QuadraticElement& operator*=(const QuadraticElement& o) {
    check(o);
    Rational a = a_ * o.a_ + Rational(f_.radicand()) * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QuadraticElement& operator/=(const QuadraticElement& o) {
    check(o);
    return *this *= o.inverse();
  }

  friend QuadraticElement operator+(QuadraticElement x, const QuadraticElement& y) { return x += y; }
  friend QuadraticElement operator-(QuadraticElement x, const QuadraticElement& y) { return x -= y; }
  friend QuadraticElement operator*(QuadraticElement x, const QuadraticElement& y) { return x *= y; }
  friend QuadraticElement operator/(QuadraticElement x, const QuadraticElement& y) { return x /= y; }

  friend bool operator==(const QuadraticElement& x, const QuadraticElement& y) {
    x.check(y);
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  void check(const QuadraticElement& o) const {
    if (f_ != o.f_) throw FieldMismatch("mixed quadratic fields: " + describe(f_) + " vs " + describe(o.f_));
  }

  QuadraticField f_;
  Rational a_;
  Rational b_;
};

/// Emits "a+b*sqrt(d)" (or "a-|b|*sqrt(d)"); always both parts, so parsing is lossless.
inline std::string to_string(const QuadraticElement& x) {
  const Rational& b = x.radical_part();
  const std::string d = std::to_string(x.field().radicand());
  std::string out = to_string(x.rational_part());
  if (b < Rational(0)) return out + "-" + to_string(-b) + "*sqrt(" + d + ")";
  return out + "+" + to_string(b) + "*sqrt(" + d + ")";
}

/// Accepts "a", "a+b*sqrt(d)", "a-b*sqrt(d)" and "b*sqrt(d)". The radicand
/// must match `f`.
inline QuadraticElement parse_scalar(const QuadraticField& f, std::string_view text) {
  const auto root = text.find("*sqrt(");
  if (root == std::string_view::npos) return {f, detail::parse_rational_at(text, 0)};

  const auto close = text.find(')', root);
  if (close == std::string_view::npos || close + 1 != text.size()) {
    throw ParseError("expected ')' closing sqrt", close == std::string_view::npos ? text.size() : close + 1);
  }
  const std::size_t d_begin = root + 6;
  const BigInt d = detail::parse_bigint(text.substr(d_begin, close - d_begin), d_begin);
  if (d != BigInt(f.radicand())) {
    throw FieldMismatch("scalar '" + std::string(text) + "' is not in " + describe(f));
  }

  // Split the rational part from the coefficient at the last sign that is
  // not a leading sign or part of a fraction.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = root; i-- > 1;) {
    if (text[i] == '+' || text[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    return {f, Rational(), detail::parse_rational_at(text.substr(0, root), 0)};
  }
  Rational a = detail::parse_rational_at(text.substr(0, split), 0);
  std::string_view coeff = text.substr(split + 1, root - split - 1);
  Rational b = detail::parse_rational_at(coeff, split + 1);
  if (text[split] == '-') b = -b;
  return {f, std::move(a), std::move(b)};
}

/// Square root inside Q(sqrt(d)), if one exists.
inline std::optional<QuadraticElement> field_sqrt(const QuadraticElement& x) {
  const QuadraticField& f = x.field();
  const Rational d(f.radicand());
  const Rational& a = x.rational_part();
  const Rational& b = x.radical_part();
  if (b.is_zero()) {
    if (auto r = field_sqrt(a)) return QuadraticElement(f, *r);
    // a = d * v^2 gives sqrt(a) = v * sqrt(d)
    if (auto v = field_sqrt(a / d)) return QuadraticElement(f, Rational(), *v);
    return std::nullopt;
  }
  // (u + v sqrt d)^2 = a + b sqrt d  <=>  u^2 + d v^2 = a, 2uv = b.
  const auto disc = field_sqrt(a * a - d * b * b);
  if (!disc) return std::nullopt;
  for (const Rational& u2 : {(a + *disc) / Rational(2), (a - *disc) / Rational(2)}) {
    if (u2.is_zero()) continue;
    if (auto u = field_sqrt(u2)) {
      QuadraticElement cand(f, *u, b / (Rational(2) * *u));
      if (cand * cand == x) return cand;
    }
  }
  return std::nullopt;
}

}  // namespace forcecert
