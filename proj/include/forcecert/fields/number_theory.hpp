#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/fields/prime_field.hpp"

namespace forcecert {

/// Distinct prime factors of n, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Smallest prime p with p ≡ 1 (mod n).
inline std::uint64_t smallest_prime_one_mod(std::uint64_t n) {
  if (n == 0) throw PreconditionError("modulus n must be positive");
  for (std::uint64_t p = n + 1;; p += n) {
    if (is_prime(p)) return p;
  }
}

/// The smallest element of multiplicative order exactly n in GF(p).
///
/// A generator of the order-n subgroup is found by raising candidates from a
/// fixed-seed sequence to (p-1)/n; the canonical (smallest) representative is
/// then picked among its powers coprime to n.
inline ModP element_of_order(std::uint64_t n, std::uint64_t p) {
  const PrimeField f(p);
  if (n == 0) throw PreconditionError("element order must be positive");
  if ((p - 1) % n != 0) {
    throw PreconditionError("GF(" + std::to_string(p) + ") has no element of order " + std::to_string(n) +
                            " (needs p = 1 mod n)");
  }
  if (n == 1) return ModP::one(f);

  const auto factors = prime_factors(n);
  auto has_exact_order = [&](const ModP& w) {
    return std::all_of(factors.begin(), factors.end(), [&](std::uint64_t q) { return w.pow(n / q).value() != 1; });
  };

  std::mt19937_64 rng(0x5eedULL);
  std::uniform_int_distribution<std::uint64_t> pick(2, p - 1);
  std::optional<ModP> generator;
  for (int attempt = 0; attempt < 4096 && !generator; ++attempt) {
    ModP w = ModP(f, pick(rng)).pow((p - 1) / n);
    if (has_exact_order(w)) generator = w;
  }
  for (std::uint64_t g = 2; !generator && g < p; ++g) {
    ModP w = ModP(f, g).pow((p - 1) / n);
    if (has_exact_order(w)) generator = w;
  }
  if (!generator) throw PreconditionError("no element of order " + std::to_string(n));

  std::uint64_t best = generator->value();
  ModP power = *generator;
  for (std::uint64_t j = 2; j < n; ++j) {
    power *= *generator;
    if (std::gcd(j, n) == 1) best = std::min(best, power.value());
  }
  return ModP(f, best);
}

}  // namespace forcecert
