#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "forcecert/fields/number_theory.hpp"
#include "forcecert/fields/prime_field.hpp"
#include "forcecert/fields/quadratic.hpp"
#include "forcecert/fields/rational.hpp"

namespace forcecert {

/// Exact scalar type usable by the matrix and rank code. Each value carries
/// its field instance; arithmetic between different instances throws
/// FieldMismatch.
template <class T>
concept Field = requires(const T& a, const T& b, const typename T::field_type& f, std::int64_t n,
                         const Rational& q, std::string_view text) {
  { T::zero(f) } -> std::same_as<T>;
  { T::one(f) } -> std::same_as<T>;
  { T::from_int(f, n) } -> std::same_as<T>;
  { T::from_rational(f, q) } -> std::same_as<T>;
  { a.field() } -> std::convertible_to<typename T::field_type>;
  { a + b } -> std::same_as<T>;
  { a - b } -> std::same_as<T>;
  { a * b } -> std::same_as<T>;
  { a / b } -> std::same_as<T>;
  { -a } -> std::same_as<T>;
  { a.inverse() } -> std::same_as<T>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { to_string(a) } -> std::convertible_to<std::string>;
  { field_sqrt(a) } -> std::same_as<std::optional<T>>;
  { parse_scalar(f, text) } -> std::same_as<T>;
  { describe(f) } -> std::convertible_to<std::string>;
  { characteristic(f) } -> std::convertible_to<std::uint64_t>;
};

static_assert(Field<Rational>);
static_assert(Field<ModP>);
static_assert(Field<QuadraticElement>);

/// Runtime choice of field, as selected by `--field {Q|GFp:<p>|Qsqrt:<d>}`.
using FieldDescriptor = std::variant<RationalField, PrimeField, QuadraticField>;

inline std::string describe(const FieldDescriptor& f) {
  return std::visit([](const auto& g) { return describe(g); }, f);
}

inline FieldDescriptor parse_field(std::string_view text) {
  auto number_after = [&](std::size_t prefix) -> std::int64_t {
    std::string_view digits = text.substr(prefix);
    BigInt v = detail::parse_bigint(digits, prefix);
    if (v <= 0 || v > BigInt(PrimeField::kMaxModulus)) throw ParseError("field parameter out of range", prefix);
    return v.convert_to<std::int64_t>();
  };
  if (text == "Q") return RationalField{};
  if (text.starts_with("GFp:")) return PrimeField(static_cast<std::uint64_t>(number_after(4)));
  if (text.starts_with("Qsqrt:")) return QuadraticField(number_after(6));
  throw ParseError("unknown field '" + std::string(text) + "' (expected Q, GFp:<p> or Qsqrt:<d>)", 0);
}

template <Field F>
F from_rational(const typename F::field_type& f, const Rational& q) {
  return F::from_rational(f, q);
}

/// x^e for a nonnegative exponent.
template <Field F>
F power(F x, std::uint64_t e) {
  F result = F::one(x.field());
  while (e > 0) {
    if (e & 1U) result = result * x;
    x = x * x;
    e >>= 1U;
  }
  return result;
}

}  // namespace forcecert
