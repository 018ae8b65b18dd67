#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "forcecert/errors.hpp"
#include "forcecert/fields/rational.hpp"

namespace forcecert {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// GF(p). The modulus is validated once, on construction.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= kMaxModulus || !is_prime(p)) {
      throw PreconditionError("GF(p) requires a prime modulus below 2^62, got " + std::to_string(p));
    }
  }

  std::uint64_t modulus() const { return p_; }
  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

inline std::string describe(const PrimeField& f) { return "GFp:" + std::to_string(f.modulus()); }
inline std::uint64_t characteristic(const PrimeField& f) { return f.modulus(); }

/// Element of GF(p), stored reduced in [0, p).
class ModP {
 public:
  using field_type = PrimeField;

  ModP(const PrimeField& f, std::uint64_t value) : f_(f), v_(value % f.modulus()) {}

  static ModP zero(const PrimeField& f) { return ModP(f, 0); }
  static ModP one(const PrimeField& f) { return ModP(f, 1); }
  static ModP from_int(const PrimeField& f, std::int64_t n) {
    const auto p = static_cast<std::int64_t>(f.modulus());
    std::int64_t r = n % p;
    if (r < 0) r += p;
    return ModP(f, static_cast<std::uint64_t>(r));
  }
  /// Reduces a rational mod p; throws DivisionByZero when p divides the denominator.
  static ModP from_rational(const PrimeField& f, const Rational& q) {
    const BigInt p(f.modulus());
    BigInt num = q.numerator() % p;
    if (num < 0) num += p;
    BigInt den = q.denominator() % p;
    if (den == 0) throw DivisionByZero();
    return ModP(f, num.convert_to<std::uint64_t>()) / ModP(f, den.convert_to<std::uint64_t>());
  }

  const PrimeField& field() const { return f_; }
  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return f_.modulus(); }
  bool is_zero() const { return v_ == 0; }

  ModP inverse() const {
    if (is_zero()) throw DivisionByZero();
    return ModP(f_, detail::pow_mod(v_, f_.modulus() - 2, f_.modulus()));
  }

  ModP pow(std::uint64_t e) const { return ModP(f_, detail::pow_mod(v_, e, f_.modulus())); }

  ModP operator-() const { return ModP(f_, v_ == 0 ? 0 : f_.modulus() - v_); }

  ModP& operator+=(const ModP& o) {
    check(o);
    const std::uint64_t p = f_.modulus();
    v_ = v_ >= p - o.v_ ? v_ - (p - o.v_) : v_ + o.v_;
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + (f_.modulus() - o.v_);
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    check(o);
    v_ = detail::mul_mod(v_, o.v_, f_.modulus());
    return *this;
  }
  ModP& operator/=(const ModP& o) {
    check(o);
    return *this *= o.inverse();
  }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }

  friend bool operator==(const ModP& a, const ModP& b) {
    a.check(b);
    return a.v_ == b.v_;
  }

 private:
  void check(const ModP& o) const {
    if (f_ != o.f_) {
      throw FieldMismatch("mixed prime fields: " + describe(f_) + " vs " + describe(o.f_));
    }
  }

  PrimeField f_;
  std::uint64_t v_;
};

inline std::string to_string(const ModP& x) {
  return std::to_string(x.value()) + " mod " + std::to_string(x.modulus());
}

/// Parses "k mod p" (the modulus must match `f`) or a bare rational "a/b".
inline ModP parse_scalar(const PrimeField& f, std::string_view text) {
  auto pos = text.find(" mod ");
  if (pos == std::string_view::npos) {
    return ModP::from_rational(f, detail::parse_rational_at(text, 0));
  }
  BigInt k = detail::parse_bigint(text.substr(0, pos), 0);
  BigInt p = detail::parse_bigint(text.substr(pos + 5), pos + 5);
  if (p != BigInt(f.modulus())) {
    throw FieldMismatch("scalar '" + std::string(text) + "' is not in " + describe(f));
  }
  k %= p;
  if (k < 0) k += p;
  return ModP(f, k.convert_to<std::uint64_t>());
}

/// Square root in GF(p) by Tonelli-Shanks. Returns the smaller of the two
/// roots, or nullopt for a non-residue.
inline std::optional<ModP> square_root_mod_p(const ModP& a) {
  const std::uint64_t p = a.modulus();
  const PrimeField& f = a.field();
  if (a.is_zero() || p == 2) return a;
  if (a.pow((p - 1) / 2).value() != 1) return std::nullopt;

  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  std::uint64_t z = 2;
  while (ModP(f, z).pow((p - 1) / 2).value() != p - 1) ++z;

  ModP c = ModP(f, z).pow(q);
  ModP r = a.pow((q + 1) / 2);
  ModP t = a.pow(q);
  int m = s;
  while (t.value() != 1) {
    int i = 0;
    ModP t2 = t;
    while (t2.value() != 1) {
      t2 *= t2;
      ++i;
    }
    ModP b = c;
    for (int j = 0; j < m - i - 1; ++j) b *= b;
    r *= b;
    c = b * b;
    t *= c;
    m = i;
  }
  const std::uint64_t other = p - r.value();
  return ModP(f, std::min(r.value(), other));
}

inline std::optional<ModP> field_sqrt(const ModP& a) { return square_root_mod_p(a); }

}  // namespace forcecert
