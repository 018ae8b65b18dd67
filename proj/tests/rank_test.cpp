#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "forcecert/matrices/block_matrix.hpp"
#include "forcecert/matrices/constructions.hpp"
#include "forcecert/rank/dependency.hpp"
#include "forcecert/rank/rank.hpp"

namespace forcecert {
namespace {

// Bareiss fraction-free elimination on integers, independent of the field
// code.
std::size_t bareiss_rank(std::vector<std::vector<BigInt>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

Matrix<Rational> from_ints(const std::vector<std::vector<BigInt>>& a) {
  Matrix<Rational> m(a.size(), a.empty() ? 0 : a[0].size(), RationalField{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m.set(i, j, Rational(a[i][j]));
  return m;
}

std::vector<std::vector<BigInt>> random_low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<std::size_t> rk(0, std::min(rows, cols));
  const std::size_t k = rk(rng);
  std::vector<std::vector<BigInt>> u(rows, std::vector<BigInt>(k)), v(k, std::vector<BigInt>(cols));
  for (auto& row : u)
    for (auto& x : row) x = small(rng);
  for (auto& row : v)
    for (auto& x : row) x = small(rng);
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t t = 0; t < k; ++t) a[i][j] += u[i][t] * v[t][j];
  return a;
}

TEST(ExactRank, Identity) {
  auto c = exact_rank(Matrix<Rational>::identity(4, RationalField{}));
  EXPECT_EQ(c.rank, 4U);
  EXPECT_EQ(c.corank, 0U);
  EXPECT_EQ(c.pivots, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(c.field, "Q");
}

TEST(ExactRank, AgreesWithBareiss) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  for (int t = 0; t < 100; ++t) {
    auto a = random_low_rank(rng, dim(rng), dim(rng));
    auto c = exact_rank(from_ints(a));
    EXPECT_EQ(c.rank, bareiss_rank(a));
    EXPECT_EQ(c.rank + c.corank, a.size());
    for (std::size_t i = 1; i < c.pivots.size(); ++i) EXPECT_LT(c.pivots[i - 1], c.pivots[i]);
  }
}

TEST(ExactRank, CaseOneGridForK22) {
  auto cert = k22_certificate<Rational>(RationalField{});
  auto inst = instantiate(circular_block_matrix(cert, 2), cert);
  auto c = exact_rank(inst.r.matrix());
  EXPECT_EQ(c.rank, 4U);
  EXPECT_EQ(c.corank, 4U);
  EXPECT_EQ(forcing_lower_bound(inst.r), 4U);
}

TEST(ExactRank, PrismGrids) {
  auto k23 = delete_rows(fourier_pair(3, 7), {"x2"});
  auto inst = instantiate(prism_block_matrix(k23), k23);
  EXPECT_EQ(exact_rank(inst.r.matrix()).rank, 3U);
  EXPECT_EQ(forcing_lower_bound(inst.r), 2U);

  auto star3 = star_pair<Rational>(3, RationalField{});
  EXPECT_EQ(forcing_lower_bound(instantiate(prism_block_matrix(star3), star3).r), 1U);
}

TEST(ForcingLowerBound, PerfectMatchingGraphAndBadSupport) {
  // 3K2: the identity is a weighted bi-adjacency matrix.
  BipartiteGraph g;
  for (int i = 0; i < 3; ++i) g.add_vertex("a" + std::to_string(i), Side::X);
  for (int i = 0; i < 3; ++i) g.add_vertex("b" + std::to_string(i), Side::Y);
  for (int i = 0; i < 3; ++i) g.add_edge(i, 3 + i);
  GraphPtr host = share(g);
  auto id = WeightedBiAdjacency<Rational>::standard(host, Matrix<Rational>::identity(3, RationalField{}));
  EXPECT_EQ(forcing_lower_bound(id), 0U);
  auto bad = WeightedBiAdjacency<Rational>::standard(host, Matrix<Rational>(3, 3, RationalField{}));
  EXPECT_THROW(forcing_lower_bound(bad), SupportError);
}

TEST(CrossField, Examples) {
  auto r = cross_field_rank_check(Matrix<Rational>::identity(3, RationalField{}), {5, 7});
  EXPECT_EQ(r.rational_rank, 3U);
  ASSERT_EQ(r.primes.size(), 2U);
  EXPECT_TRUE(r.primes[0].agrees && r.primes[1].agrees);

  Matrix<Rational> two(2, 2, RationalField{});
  two.set(0, 0, Rational(2));
  two.set(1, 1, Rational(2));
  auto d = cross_field_rank_check(two, {2, 3});
  EXPECT_EQ(d.rational_rank, 2U);
  EXPECT_EQ(d.primes[0].rank, 0U);
  EXPECT_FALSE(d.primes[0].agrees);
  EXPECT_TRUE(d.primes[1].agrees);
  EXPECT_TRUE(d.consistent());

  Matrix<Rational> half(1, 1, RationalField{});
  half.set(0, 0, Rational(1, 3));
  auto s = cross_field_rank_check(half, {3, 5});
  EXPECT_TRUE(s.primes[0].skipped);
  EXPECT_FALSE(s.primes[1].skipped);
}

TEST(CrossField, CaseTwoAcrossFields) {
  auto q = hypercube_involutory<Rational>(1, RationalField{});
  auto qi = instantiate(circular_block_matrix(q, 3), q);
  EXPECT_EQ(exact_rank(qi.r.matrix()).corank, 2U);
  auto report = cross_field_rank_check(qi.r.matrix(), {3, 5, 101});
  EXPECT_TRUE(report.consistent());

  auto g = random_certificate_search(complete_bipartite(2, 2), 101, 50, 3);
  ASSERT_TRUE(g.has_value());
  auto gi = instantiate(circular_block_matrix(*g, 3), *g);
  EXPECT_EQ(exact_rank(gi.r.matrix()).corank, 4U);
}

TEST(Dependency, IdentitiesAvoidTheOtherTarget) {
  for (std::size_t k = 2; k <= 20; ++k) {
    auto [top, bottom] = circular_dependencies(k);
    for (const auto& t : top.terms) {
      EXPECT_NE(t.row, 1U);
      EXPECT_NE(t.row, 2 * k);
      EXPECT_GE(t.row, 1U);
    }
    for (const auto& t : bottom.terms) {
      EXPECT_NE(t.row, 1U);
      EXPECT_NE(t.row, 2 * k);
      EXPECT_LE(t.row, 2 * k);
    }
  }
}

template <Field F>
void expect_dependencies_hold(const InvolutoryCertificate<F>& cert, std::size_t k) {
  auto inst = instantiate(circular_block_matrix(cert, k), cert);
  auto check = verify_case_dependency(inst, cert, k);
  EXPECT_TRUE(check.top.is_zero()) << "k=" << k << " block " << check.top.first_nonzero->block;
  EXPECT_TRUE(check.bottom.is_zero()) << "k=" << k << " block " << check.bottom.first_nonzero->block;
  EXPECT_EQ(check.top.blocks.size(), 2 * k);
  auto rank = exact_rank(inst.r.matrix());
  const std::size_t n = cert.host().order();
  EXPECT_LE(rank.rank, k * n - n);
  EXPECT_EQ(rank.corank, n) << "k=" << k;
}

TEST(Dependency, AllCasesOverSeveralCertificates) {
  auto k22 = k22_certificate<Rational>(RationalField{});
  auto s = s14_certificate();
  auto lifted = prism_lift(hypercube_involutory<Rational>(1, RationalField{}), Rational(3, 4));
  auto f7 = pair_to_involutory(fourier_pair(3, 7));
  auto g = random_certificate_search(complete_bipartite(3, 3), 101, 50, 11);
  ASSERT_TRUE(g.has_value());
  for (std::size_t k = 2; k <= 9; ++k) {
    expect_dependencies_hold(k22, k);
    expect_dependencies_hold(lifted, k);
    expect_dependencies_hold(f7, k);
    expect_dependencies_hold(*g, k);
  }
  for (std::size_t k : {2, 3, 4, 5}) expect_dependencies_hold(s, k);
}

TEST(Dependency, CorruptedGridIsCaught) {
  auto cert = k22_certificate<Rational>(RationalField{});
  BlockMatrix grid = circular_block_matrix(cert, 3);
  grid.set(1, 1, negated(grid.at(1, 1)));
  auto inst = instantiate(grid, cert);
  auto check = verify_case_dependency(inst, cert, 3);
  EXPECT_FALSE(check.passed());
  ASSERT_TRUE(check.top.first_nonzero.has_value());
  EXPECT_EQ(check.top.first_nonzero->block, 2U);
}

TEST(Dependency, CaseTagMismatchIsRejected) {
  auto cert = k22_certificate<Rational>(RationalField{});
  auto inst = instantiate(circular_block_matrix(cert, 3), cert);
  EXPECT_THROW(verify_case_dependency(inst, cert, 6), PreconditionError);
  EXPECT_THROW(verify_case_dependency(inst, cert, 4), PreconditionError);
}

}  // namespace
}  // namespace forcecert
