#pragma once

#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <type_traits>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/fields/field.hpp"
#include "forcecert/graphs/graph_io.hpp"
#include "forcecert/matrices/constructions.hpp"

// Picks a base certificate for a family expression. Named families get their
// dedicated constructions; anything else falls back to a seeded random search
// over GF(p).

namespace forcecert {

struct NamedFamily {
  std::string name;  // K2, s14, gprime, Kmn, star, Q
  std::size_t a = 0;
  std::size_t b = 0;
};

inline std::optional<NamedFamily> named_family(const std::string& spec) {
  static const std::regex plain(R"(^(K2|s14|gprime)$)");
  static const std::regex one(R"(^(star|Q):(\d{1,6})$)");
  static const std::regex two(R"(^Kmn:(\d{1,6}),(\d{1,6})$)");
  std::smatch m;
  if (std::regex_match(spec, m, plain)) return NamedFamily{m[1], 0, 0};
  if (std::regex_match(spec, m, one)) return NamedFamily{m[1], std::stoul(m[2]), 0};
  if (std::regex_match(spec, m, two)) return NamedFamily{"Kmn", std::stoul(m[1]), std::stoul(m[2])};
  return std::nullopt;
}

inline constexpr std::uint64_t kSearchPrime = 101;

/// Q where a rational construction exists, Q(sqrt 2) for gprime, the
/// smallest p = 1 mod n for Fourier pairs on K_{m,n}, GF(101) otherwise.
inline FieldDescriptor default_field(const std::string& spec) {
  auto fam = named_family(spec);
  if (!fam) return PrimeField(kSearchPrime);
  if (fam->name == "gprime") return QuadraticField(2);
  if (fam->name == "Kmn") {
    const std::size_t m = fam->a;
    const std::size_t n = fam->b;
    if (m == 1 || (m == 2 && n == 2)) return RationalField{};
    return PrimeField(smallest_prime_one_mod(std::max<std::size_t>(m, n)));
  }
  return RationalField{};
}

template <Field F>
InvolutoryCertificate<F> convert_certificate(const InvolutoryCertificate<Rational>& cert, const typename F::field_type& f) {
  try {
    WeightedBiAdjacency<F> b(cert.b.host_ptr(), cert.b.row_order(), cert.b.col_order(), convert<F>(cert.b.matrix(), f));
    InvolutoryCertificate<F> out{std::move(b), convert<F>(cert.b_inv, f)};
    CheckResult r = verify_certificate(out);
    if (!r.ok) throw PreconditionError("certificate does not survive the move to " + describe(f) + ": " + r.what);
    return out;
  } catch (const DivisionByZero&) {
    throw PreconditionError("certificate has a denominator that vanishes in " + describe(f));
  }
}

struct BaseChoice {
  std::string source;  // construction that produced the certificate
};

namespace detail {

template <Field F>
std::optional<InvolutoryCertificate<F>> search_if_prime(const BipartiteGraph& g, const typename F::field_type& f,
                                                        std::uint64_t seed, std::size_t trials) {
  if constexpr (std::is_same_v<F, ModP>) {
    return random_certificate_search(g, f.modulus(), trials, seed);
  } else {
    (void)g;
    (void)f;
    (void)seed;
    (void)trials;
    return std::nullopt;
  }
}

}  // namespace detail

/// Involutory certificate for a balanced family over the field `f`.
template <Field F>
InvolutoryCertificate<F> involutory_for(const std::string& spec, const BipartiteGraph& g, const typename F::field_type& f,
                                        std::uint64_t seed, std::size_t trials, BaseChoice& choice) {
  if (!g.is_balanced()) throw PreconditionError("circular certificates need a balanced base graph");
  auto fam = named_family(spec);
  if (fam) {
    if (fam->name == "s14") {
      choice.source = "s14-table";
      if constexpr (std::is_same_v<F, Rational>) {
        return s14_certificate();
      } else {
        return convert_certificate<F>(s14_certificate(), f);
      }
    }
    if (fam->name == "gprime") {
      if constexpr (std::is_same_v<F, QuadraticElement>) {
        if (f.radicand() == 2) {
          choice.source = "gprime-table";
          return gprime_certificate();
        }
      }
      throw PreconditionError("the G' certificate lives over Qsqrt:2, not " + describe(f));
    }
    if (fam->name == "K2" || fam->name == "Q") {
      const std::size_t d = fam->name == "K2" ? 1 : fam->a;
      if (d == 1) {
        choice.source = "hypercube";
        return hypercube_involutory<F>(1, f);
      }
      try {
        choice.source = "hypercube-lifts(c=3/4)";
        return hypercube_by_lifts<F>(d, F::from_rational(f, Rational(3, 4)));
      } catch (const Error&) {
        choice.source = "hypercube";
        return hypercube_involutory<F>(d, f);
      }
    }
    if (fam->name == "Kmn" && fam->a == fam->b) {
      const std::size_t n = fam->a;
      if (n == 1) {
        choice.source = "star";
        return pair_to_involutory(star_pair<F>(1, f));
      }
      if (n == 2 && characteristic(f) != 2) {
        choice.source = "k22";
        return k22_certificate<F>(f);
      }
      if constexpr (std::is_same_v<F, ModP>) {
        choice.source = "fourier";
        return pair_to_involutory(fourier_pair(n, f.modulus()));
      }
    }
  }
  auto found = detail::search_if_prime<F>(g, f, seed, trials);
  if (!found) {
    throw PreconditionError("no certificate for '" + spec + "' over " + describe(f) +
                            (std::is_same_v<F, ModP> ? " after " + std::to_string(trials) + " random trials" : ""));
  }
  choice.source = "random-search(seed=" + std::to_string(seed) + ")";
  return *found;
}

/// Row-inverse pair for a (possibly unbalanced) family over `f`.
template <Field F>
RowInversePair<F> pair_for(const std::string& spec, const BipartiteGraph& g, const typename F::field_type& f,
                           std::uint64_t seed, std::size_t trials, BaseChoice& choice) {
  if (g.side_size(Side::X) > g.side_size(Side::Y)) throw PreconditionError("prism pairs need |X| <= |Y|");
  auto fam = named_family(spec);
  if (fam && (fam->name == "star" || (fam->name == "Kmn" && fam->a == 1))) {
    choice.source = "star";
    return star_pair<F>(fam->name == "star" ? fam->a : fam->b, f);
  }
  if (fam && fam->name == "Kmn" && fam->a < fam->b) {
    if constexpr (std::is_same_v<F, ModP>) {
      choice.source = "fourier+delete";
      std::vector<std::string> drop;
      for (std::size_t i = fam->a; i < fam->b; ++i) drop.push_back("x" + std::to_string(i));
      return delete_rows(fourier_pair(fam->b, f.modulus()), drop);
    } else {
      throw PreconditionError("K_{m,n} pairs with m < n use a Fourier matrix over GF(p)");
    }
  }
  return involutory_to_pair(involutory_for<F>(spec, g, f, seed, trials, choice));
}

}  // namespace forcecert
