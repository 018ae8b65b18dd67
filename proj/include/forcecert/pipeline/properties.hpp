#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "forcecert/fields/field.hpp"
#include "forcecert/forcing/forcing.hpp"
#include "forcecert/graphs/families.hpp"
#include "forcecert/graphs/operations.hpp"
#include "forcecert/matrices/matrix.hpp"
#include "forcecert/rank/rank.hpp"

// Randomized property checks, seeded and deterministic.

namespace forcecert {

struct PropertyResult {
  explicit PropertyResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
  void check(bool ok, const std::function<std::string()>& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what();
  }
};

namespace properties {

template <Field F>
PropertyResult field_axioms(const std::string& name, std::size_t cases, const std::function<F()>& sample) {
  PropertyResult res{name};
  for (std::size_t t = 0; t < cases; ++t) {
    const F a = sample();
    const F b = sample();
    const F c = sample();
    const auto& f = a.field();
    const F zero = F::zero(f);
    const F one = F::one(f);
    bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a + b == b + a && a * b == b * a &&
              a * (b + c) == a * b + a * c && a + zero == a && a * one == a && a + (-a) == zero && a - b == a + (-b);
    if (ok && !a.is_zero()) ok = a * a.inverse() == one && (b / a) * a == b;
    res.check(ok, [&] { return "a=" + to_string(a) + " b=" + to_string(b) + " c=" + to_string(c); });
  }
  return res;
}

inline Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> num(-50, 50);
  std::uniform_int_distribution<std::int64_t> den(1, 30);
  return Rational(num(rng), den(rng));
}

inline std::vector<PropertyResult> all_field_axioms(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  const PrimeField small(101);
  const PrimeField large((std::uint64_t{1} << 61) - 1);
  const QuadraticField q2(2);
  std::vector<PropertyResult> out;
  out.push_back(field_axioms<Rational>("field-axioms Q", cases, [&] { return small_rational(rng); }));
  out.push_back(field_axioms<ModP>("field-axioms GFp:101", cases, [&] { return ModP(small, rng()); }));
  out.push_back(field_axioms<ModP>("field-axioms GFp:2^61-1", cases, [&] { return ModP(large, rng()); }));
  out.push_back(field_axioms<QuadraticElement>("field-axioms Qsqrt:2", cases, [&] {
    return QuadraticElement(q2, small_rational(rng), small_rational(rng));
  }));
  return out;
}

/// Row scaling by nonzero scalars, row swaps and transposition keep the rank.
inline PropertyResult rank_invariance(std::uint64_t seed, std::size_t cases) {
  PropertyResult res{"rank-invariance"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_int_distribution<std::int64_t> entry(-2, 2);
  const RationalField q;
  for (std::size_t t = 0; t < cases; ++t) {
    const std::size_t r = dim(rng);
    const std::size_t c = dim(rng);
    Matrix<Rational> m(r, c, q);
    // Low-rank products hit rank deficiency often.
    const std::size_t inner = std::uniform_int_distribution<std::size_t>(1, std::min(r, c))(rng);
    Matrix<Rational> a(r, inner, q);
    Matrix<Rational> b(inner, c, q);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < inner; ++j) a.set(i, j, Rational(entry(rng)));
    for (std::size_t i = 0; i < inner; ++i)
      for (std::size_t j = 0; j < c; ++j) b.set(i, j, Rational(entry(rng)));
    if (t % 2 == 0) {
      m = a * b;
    } else {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, Rational(entry(rng)));
    }

    const std::size_t base = exact_rank(m).rank;
    Matrix<Rational> moved = m;
    for (std::size_t i = 0; i < r; ++i) {
      Rational s = small_rational(rng);
      if (s.is_zero()) s = Rational(1);
      for (std::size_t j = 0; j < c; ++j) moved.set(i, j, moved(i, j) * s);
    }
    const std::size_t i1 = std::uniform_int_distribution<std::size_t>(0, r - 1)(rng);
    const std::size_t i2 = std::uniform_int_distribution<std::size_t>(0, r - 1)(rng);
    for (std::size_t j = 0; j < c; ++j) {
      Rational tmp = moved(i1, j);
      moved.set(i1, j, moved(i2, j));
      moved.set(i2, j, tmp);
    }
    const std::size_t scaled = exact_rank(moved).rank;
    const std::size_t transposed = exact_rank(m.transpose()).rank;
    res.check(base == scaled && base == transposed, [&] {
      return std::to_string(r) + "x" + std::to_string(c) + " rank " + std::to_string(base) + " vs " +
             std::to_string(scaled) + " / " + std::to_string(transposed);
    });
  }
  return res;
}

/// Perfect matchings of G minus `removed`, counted over all bijections.
inline std::size_t bijection_count(const BipartiteGraph& g, const std::vector<char>& removed) {
  std::vector<Vertex> xs;
  std::vector<Vertex> ys;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (v < removed.size() && removed[v]) continue;
    (g.side(v) == Side::X ? xs : ys).push_back(v);
  }
  if (xs.size() != ys.size()) return 0;
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < xs.size() && ok; ++i) ok = g.has_edge(xs[i], ys[i]);
    count += ok ? 1 : 0;
  } while (std::next_permutation(ys.begin(), ys.end()));
  return count;
}

/// Graphs with at most 12 vertices from the families the tests use.
inline std::vector<std::pair<std::string, BipartiteGraph>> small_corpus() {
  std::vector<std::pair<std::string, BipartiteGraph>> out;
  for (std::size_t len = 4; len <= 12; len += 2) out.emplace_back("C:" + std::to_string(len), cycle(len));
  for (std::size_t n = 1; n <= 12; ++n) out.emplace_back("P:" + std::to_string(n), path(n));
  for (std::size_t d = 1; d <= 3; ++d) out.emplace_back("Q:" + std::to_string(d), hypercube(d));
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::size_t n = m; m + n <= 12; ++n)
      out.emplace_back("Kmn:" + std::to_string(m) + "," + std::to_string(n), complete_bipartite(m, n));
  for (std::size_t n = 1; n <= 6; ++n) out.emplace_back("bcp:" + std::to_string(n), bcp(n));
  out.emplace_back("blowup:2", blowup_cycle(2));
  out.emplace_back("blowup:3", blowup_cycle(3));
  out.emplace_back("FQ:3", folded_hypercube(3));
  out.emplace_back("prod(K2;C:4)", cartesian_product(k2(), cycle(4)));
  out.emplace_back("prod(K2;C:6)", cartesian_product(k2(), cycle(6)));
  out.emplace_back("prod(Kmn:2,2;K2)", cartesian_product(complete_bipartite(2, 2), k2()));
  out.emplace_back("prod(Kmn:2,3;K2)", cartesian_product(complete_bipartite(2, 3), k2()));
  out.emplace_back("prod(star:5;K2)", cartesian_product(star(5), k2()));
  out.emplace_back("prod(P:2;C:4)", cartesian_product(path(2), cycle(4)));
  out.emplace_back("prod(P:3;C:4)", cartesian_product(path(3), cycle(4)));
  out.emplace_back("prod(P:3;K2)", cartesian_product(path(3), k2()));
  return out;
}

/// Peeling agrees with counting on every corpus graph and on every G - V(e).
inline PropertyResult peeling_vs_counting() {
  PropertyResult res{"peeling-vs-counting"};
  for (const auto& [name, g] : small_corpus()) {
    auto compare = [&](const std::vector<char>& removed, const std::string& where) {
      const std::size_t count = bijection_count(g, removed);
      const PmOutcome expect = count == 0 ? PmOutcome::None : count == 1 ? PmOutcome::Unique : PmOutcome::Multiple;
      const PmOutcome got = has_unique_pm(g, removed).outcome;
      res.check(got == expect, [&] { return name + where + ": peeling " + outcome_name(got) + ", count " + std::to_string(count); });
    };
    compare({}, "");
    for (const Edge& e : g.edges()) {
      std::vector<char> removed(g.order(), 0);
      removed[e.x] = removed[e.y] = 1;
      compare(removed, " - {" + g.label(e.x) + "," + g.label(e.y) + "}");
    }
  }
  return res;
}

/// Random bipartite graph with a planted perfect matching.
inline BipartiteGraph planted_graph(std::mt19937_64& rng, std::size_t n, double density) {
  BipartiteGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("x" + std::to_string(i), Side::X);
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("y" + std::to_string(i), Side::Y);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (perm[i] == j || coin(rng)) g.add_edge(i, n + j);
  return g;
}

/// If S is forcing for M then so is every S' with S ⊆ S' ⊆ M, and both
/// answers agree with counting the perfect matchings of G - V(S).
inline PropertyResult forcing_monotonicity(std::uint64_t seed, std::size_t cases) {
  PropertyResult res{"forcing-monotonicity"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(2, 6);
  while (res.cases < cases) {
    const std::size_t n = size(rng);
    BipartiteGraph g = planted_graph(rng, n, 0.45);
    auto all = enumerate_perfect_matchings(g).matchings;
    const Matching& m = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    Matching s;
    Matching s2;
    std::bernoulli_distribution coin(0.4);
    for (const Edge& e : m) {
      const bool in_s = coin(rng);
      if (in_s) s.push_back(e);
      if (in_s || coin(rng)) s2.push_back(e);
    }
    auto counted = [&](const Matching& set) {
      std::vector<char> removed(g.order(), 0);
      for (const Edge& e : set) removed[e.x] = removed[e.y] = 1;
      return bijection_count(g, removed) == 1;
    };
    const bool f1 = is_forcing(g, m, s);
    const bool f2 = is_forcing(g, m, s2);
    res.check((!f1 || f2) && f1 == counted(s) && f2 == counted(s2), [&] {
      return "n=" + std::to_string(n) + " |S|=" + std::to_string(s.size()) + " |S'|=" + std::to_string(s2.size());
    });
  }
  return res;
}

}  // namespace properties

/// Every property suite with the standard case counts.
inline std::vector<PropertyResult> run_property_suites(std::uint64_t seed) {
  std::vector<PropertyResult> out = properties::all_field_axioms(seed, 1000);
  out.push_back(properties::rank_invariance(seed + 1, 200));
  out.push_back(properties::peeling_vs_counting());
  out.push_back(properties::forcing_monotonicity(seed + 2, 100));
  return out;
}

}  // namespace forcecert
