#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "forcecert/matrices/block_matrix.hpp"
#include "forcecert/matrices/constructions.hpp"

namespace forcecert {
namespace {

// Naive product kept separate from Matrix::operator* so the checks below do
// not rely on the code under test.
template <Field F>
std::vector<std::vector<F>> naive_product(const Matrix<F>& a, const Matrix<F>& b) {
  std::vector<std::vector<F>> out(a.rows(), std::vector<F>(b.cols(), F::zero(a.field())));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) out[i][j] = out[i][j] + a(i, k) * b(k, j);
  return out;
}

template <Field F>
bool naive_is_identity(const std::vector<std::vector<F>>& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) return false;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j ? !(m[i][j] == F::one(m[i][j].field())) : !m[i][j].is_zero()) return false;
    }
  }
  return true;
}

template <Field F>
bool squares_to_identity(const InvolutoryCertificate<F>& cert) {
  Matrix<F> a = cert.assembled();
  return naive_is_identity(naive_product(a, a));
}

template <Field F>
bool support_matches_host(const WeightedBiAdjacency<F>& w) {
  const auto& g = w.host();
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < w.row_order().size(); ++i) {
    for (std::size_t j = 0; j < w.col_order().size(); ++j) {
      if (w.matrix().is_nonzero(i, j) != g.has_edge(w.row_order()[i], w.col_order()[j])) return false;
      nonzero += w.matrix().is_nonzero(i, j) ? 1 : 0;
    }
  }
  return nonzero == g.size();
}

TEST(Matrix, ArithmeticAndInverse) {
  const RationalField q;
  auto m = Matrix<Rational>::from_rows(q, {{Rational(1), Rational(2)}, {Rational(3), Rational(4)}});
  auto inv = inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ((*inv)(0, 0), Rational(-2));
  EXPECT_EQ((*inv)(1, 0), Rational(3, 2));
  EXPECT_TRUE(naive_is_identity(naive_product(m, *inv)));
  auto singular = Matrix<Rational>::from_rows(q, {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}});
  EXPECT_FALSE(inverse(singular).has_value());
  EXPECT_EQ((m - m).is_zero(), true);
  EXPECT_EQ(m.transpose()(0, 1), Rational(3));
}

TEST(Matrix, RejectsMixedFields) {
  const PrimeField f5(5);
  const PrimeField f7(7);
  Matrix<ModP> a = Matrix<ModP>::identity(2, f5);
  Matrix<ModP> b = Matrix<ModP>::identity(2, f7);
  EXPECT_THROW(a * b, FieldMismatch);
  EXPECT_THROW(a.set(0, 0, ModP(f7, 1)), FieldMismatch);
}

TEST(WeightedBiAdjacency, AuditReportsFirstOffendingEntry) {
  GraphPtr host = share(path(4));
  const RationalField q;
  // Rows p0, p2; columns p1, p3. Edge p0-p3 does not exist.
  auto bad = Matrix<Rational>::from_rows(q, {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}});
  auto w = WeightedBiAdjacency<Rational>::standard(host, bad);
  CheckResult r = w.audit();
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.entry.has_value());
  EXPECT_EQ(*r.entry, std::make_pair(std::size_t{0}, std::size_t{1}));
  EXPECT_THROW(w.require_support(), SupportError);
}

TEST(Certificates, HypercubeOverVariousFields) {
  auto q1 = hypercube_involutory<Rational>(1, RationalField{});
  EXPECT_EQ(q1.b.matrix()(0, 0), Rational(1));
  EXPECT_TRUE(squares_to_identity(q1));

  auto q2 = hypercube_involutory<QuadraticElement>(2, QuadraticField(2));
  EXPECT_TRUE(verify_certificate(q2).ok);
  EXPECT_TRUE(squares_to_identity(q2));
  EXPECT_TRUE(support_matches_host(q2.b));

  // Brute force: the scalars s in GF(11) with 3 s^2 = 1.
  const PrimeField f11(11);
  std::vector<std::uint64_t> roots;
  for (std::uint64_t s = 0; s < 11; ++s)
    if ((3 * s * s) % 11 == 1) roots.push_back(s);
  EXPECT_EQ(roots, (std::vector<std::uint64_t>{2, 9}));
  auto q3 = hypercube_involutory<ModP>(3, f11);
  EXPECT_TRUE(squares_to_identity(q3));
  EXPECT_TRUE(support_matches_host(q3.b));
  const std::uint64_t used = q3.b.matrix()(0, 0).value();
  EXPECT_TRUE(used == 2 || used == 9);

  auto q4 = hypercube_involutory<Rational>(4, RationalField{});
  EXPECT_TRUE(squares_to_identity(q4));
  EXPECT_THROW(hypercube_involutory<Rational>(2, RationalField{}), PreconditionError);
}

TEST(Certificates, K22) {
  auto cert = k22_certificate<Rational>(RationalField{});
  EXPECT_TRUE(verify_certificate(cert).ok);
  EXPECT_EQ(cert.b_inv(1, 1), Rational(-1, 2));
  EXPECT_THROW(k22_certificate<ModP>(PrimeField(2)), PreconditionError);

  auto bad = WeightedBiAdjacency<Rational>::standard(
      share(complete_bipartite(2, 2)),
      Matrix<Rational>::from_rows(RationalField{}, {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}));
  EXPECT_THROW(certificate_from_matrix(bad), SupportError);
  InvolutoryCertificate<Rational> forged{bad, Matrix<Rational>::identity(2, RationalField{})};
  EXPECT_FALSE(verify_certificate(forged).ok);
}

TEST(Certificates, FourierPairs) {
  auto p25 = fourier_pair(2, 5);
  const PrimeField f5(5);
  EXPECT_EQ(p25.b.matrix(), Matrix<ModP>::from_rows(f5, {{ModP(f5, 1), ModP(f5, 1)}, {ModP(f5, 1), ModP(f5, 4)}}));
  EXPECT_EQ(p25.c.matrix(), Matrix<ModP>::from_rows(f5, {{ModP(f5, 3), ModP(f5, 3)}, {ModP(f5, 3), ModP(f5, 2)}}));
  EXPECT_TRUE(naive_is_identity(naive_product(p25.b.matrix(), p25.c.matrix().transpose())));

  auto p13 = fourier_pair(1, 3);
  EXPECT_EQ(p13.b.matrix()(0, 0).value(), 1U);
  EXPECT_EQ(p13.c.matrix()(0, 0).value(), 1U);

  for (auto [n, p] : std::vector<std::pair<std::size_t, std::uint64_t>>{{3, 7}, {4, 13}, {4, 5}, {3, 13}}) {
    auto pair = fourier_pair(n, p);
    EXPECT_TRUE(verify_certificate(pair).ok) << n << " " << p;
    EXPECT_TRUE(naive_is_identity(naive_product(pair.b.matrix(), pair.c.matrix().transpose())));
    EXPECT_TRUE(support_matches_host(pair.b));
  }
  EXPECT_THROW(fourier_pair(3, 5), PreconditionError);
}

TEST(Certificates, S14Literal) {
  auto cert = s14_certificate();
  const auto& b = cert.b.matrix();
  const std::vector<Rational> first{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(-1, 2), Rational(0),
                                    Rational(0), Rational(0)};
  for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(b(0, j), first[j]);
  EXPECT_TRUE(naive_is_identity(naive_product(b, b.transpose())));
  EXPECT_TRUE(support_matches_host(cert.b));
  // The table's signs agree with the edge signs of the graph.
  const auto& g = cert.host();
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      if (b.is_nonzero(i, j)) {
        const int sign = g.sign(cert.b.row_order()[i], cert.b.col_order()[j]);
        EXPECT_EQ(b(i, j), Rational(sign, 2));
      }
    }
  }
  EXPECT_TRUE(verify_certificate(cert).ok);
}

TEST(Certificates, GPrimeLiteral) {
  const QuadraticField f(2);
  auto table = gprime_table();
  EXPECT_EQ(table(0, 0), QuadraticElement(f, Rational(-9)));
  EXPECT_EQ(table(0, 4), QuadraticElement(f, Rational(0), Rational(3)));
  for (std::size_t i = 0; i < 7; ++i) {
    QuadraticElement norm(f, Rational(0));
    for (std::size_t j = 0; j < 7; ++j) norm = norm + table(i, j) * table(i, j);
    EXPECT_EQ(norm, QuadraticElement(f, Rational(324))) << "row " << i;
  }
  auto cert = gprime_certificate();
  const auto& b = cert.b.matrix();
  EXPECT_TRUE(naive_is_identity(naive_product(b, b.transpose())));
  EXPECT_TRUE(support_matches_host(cert.b));
  EXPECT_TRUE(verify_certificate(cert).ok);
}

TEST(Certificates, PrismLift) {
  auto q1 = hypercube_involutory<Rational>(1, RationalField{});
  auto q2 = prism_lift(q1, Rational(3, 4));
  EXPECT_TRUE(squares_to_identity(q2));
  EXPECT_TRUE(support_matches_host(q2.b));
  EXPECT_EQ(q2.host().order(), 4U);
  auto q3 = prism_lift(q2, Rational(3, 4));
  EXPECT_TRUE(squares_to_identity(q3));
  EXPECT_EQ(q3.host().size(), 12U);
  EXPECT_THROW(prism_lift(q1, Rational(0)), PreconditionError);
  // 1 + 1 = 2 is not a rational square.
  EXPECT_THROW(prism_lift(q1, Rational(1)), PreconditionError);

  auto lifted = hypercube_by_lifts<Rational>(4, Rational(3, 4));
  EXPECT_EQ(lifted.host().label(5), "0101");
  EXPECT_TRUE(verify_certificate(lifted).ok);

  auto k22 = k22_certificate<Rational>(RationalField{});
  auto k22_prism = prism_lift(k22, Rational(3, 4));
  EXPECT_TRUE(squares_to_identity(k22_prism));
  EXPECT_TRUE(support_matches_host(k22_prism.b));
}

TEST(Certificates, UnionPair) {
  const QuadraticField f(2);
  auto rename_leaves = [](const std::string& prefix) {
    return [prefix](const std::string& l) { return l[0] == 'y' ? prefix + l : l; };
  };
  auto make_star = [&](std::size_t n, const std::string& prefix) {
    auto p = star_pair<QuadraticElement>(n, f);
    GraphPtr host = share(relabeled(p.host(), rename_leaves(prefix)));
    return RowInversePair<QuadraticElement>{
        WeightedBiAdjacency<QuadraticElement>(host, p.b.row_order(), p.b.col_order(), p.b.matrix()),
        WeightedBiAdjacency<QuadraticElement>(host, p.c.row_order(), p.c.col_order(), p.c.matrix())};
  };
  std::vector<RowInversePair<QuadraticElement>> stars{make_star(2, "a"), make_star(3, "b")};
  auto u = union_pair<QuadraticElement>(stars);
  EXPECT_EQ(u.rows(), 1U);
  EXPECT_EQ(u.cols(), 5U);
  EXPECT_TRUE(naive_is_identity(naive_product(u.b.matrix(), u.c.matrix().transpose())));
  EXPECT_TRUE(support_matches_host(u.b));

  // Disjoint K11 pairs: block diagonal, no scaling needed, so Q works.
  auto k11 = [&](const std::string& prefix) {
    auto p = star_pair<Rational>(1, RationalField{});
    GraphPtr host = share(relabeled(p.host(), [&](const std::string& l) { return prefix + l; }));
    return RowInversePair<Rational>{
        WeightedBiAdjacency<Rational>(host, p.b.row_order(), p.b.col_order(), p.b.matrix()),
        WeightedBiAdjacency<Rational>(host, p.c.row_order(), p.c.col_order(), p.c.matrix())};
  };
  std::vector<RowInversePair<Rational>> disjoint{k11("a"), k11("b")};
  auto d = union_pair<Rational>(disjoint);
  EXPECT_TRUE(d.b.matrix().is_identity());

  // Shared X over Q has no s with 2 s^2 = 1.
  std::vector<RowInversePair<Rational>> shared{star_pair<Rational>(1, RationalField{}),
                                               RowInversePair<Rational>{k11("b")}};
  auto shared_center = [&](const std::string& prefix) {
    auto p = star_pair<Rational>(2, RationalField{});
    GraphPtr host = share(relabeled(p.host(), rename_leaves(prefix)));
    return RowInversePair<Rational>{
        WeightedBiAdjacency<Rational>(host, p.b.row_order(), p.b.col_order(), p.b.matrix()),
        WeightedBiAdjacency<Rational>(host, p.c.row_order(), p.c.col_order(), p.c.matrix())};
  };
  std::vector<RowInversePair<Rational>> over_q{shared_center("a"), shared_center("b")};
  EXPECT_THROW(union_pair<Rational>(over_q), PreconditionError);

  // Pairs over different prime fields cannot be glued.
  auto k22 = fourier_pair(2, 5);
  auto k23 = delete_rows(fourier_pair(3, 7), {"x2"});
  auto rename_all = [](const RowInversePair<ModP>& p, const std::string& prefix) {
    GraphPtr host = share(relabeled(p.host(), [&](const std::string& l) { return prefix + l; }));
    return RowInversePair<ModP>{WeightedBiAdjacency<ModP>(host, p.b.row_order(), p.b.col_order(), p.b.matrix()),
                                WeightedBiAdjacency<ModP>(host, p.c.row_order(), p.c.col_order(), p.c.matrix())};
  };
  std::vector<RowInversePair<ModP>> mixed{rename_all(k22, "a"), rename_all(k23, "b")};
  EXPECT_THROW(union_pair<ModP>(mixed), FieldMismatch);
}

TEST(Certificates, DeleteRows) {
  auto pair = fourier_pair(3, 7);
  auto reduced = delete_rows(pair, {"x1"});
  EXPECT_EQ(reduced.rows(), 2U);
  EXPECT_EQ(reduced.cols(), 3U);
  EXPECT_TRUE(naive_is_identity(naive_product(reduced.b.matrix(), reduced.c.matrix().transpose())));
  EXPECT_TRUE(verify_certificate(reduced).ok);
  EXPECT_THROW(delete_rows(pair, {"x0", "x1", "x2"}), PreconditionError);
  auto same = delete_rows(pair, {});
  EXPECT_EQ(same.b.matrix(), pair.b.matrix());
}

TEST(Certificates, PairConversions) {
  auto pair = fourier_pair(3, 7);
  auto cert = pair_to_involutory(pair);
  EXPECT_TRUE(squares_to_identity(cert));
  auto back = involutory_to_pair(cert);
  EXPECT_EQ(back.c.matrix(), pair.c.matrix());
}

TEST(Certificates, RandomSearch) {
  auto found = random_certificate_search(complete_bipartite(2, 2), 101, 20, 1);
  ASSERT_TRUE(found.has_value());
  EXPECT_TRUE(squares_to_identity(*found));
  EXPECT_FALSE(random_certificate_search(path(4), 101, 50, 1).has_value());
  EXPECT_FALSE(random_certificate_search(complete_bipartite(2, 2), 101, 0, 1).has_value());
  auto again = random_certificate_search(complete_bipartite(2, 2), 101, 20, 1);
  EXPECT_EQ(again->b.matrix(), found->b.matrix());
}

std::size_t nonzero_in_row(const BlockMatrix& r, std::size_t i) {
  std::size_t c = 0;
  for (std::size_t j = 0; j < r.block_cols(); ++j) c += r.at(i, j) == BlockTag::O ? 0 : 1;
  return c;
}

std::size_t nonzero_in_col(const BlockMatrix& r, std::size_t j) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < r.block_rows(); ++i) c += r.at(i, j) == BlockTag::O ? 0 : 1;
  return c;
}

TEST(BlockMatrix, CaseOneIsLiteral) {
  BlockMatrix r = circular_grid(2);
  EXPECT_EQ(r.to_string(), "B I O 2I\nI -Binv 2I O\nO I -B I\nI O I Binv\n");
}

TEST(BlockMatrix, ThreeNonzeroBlocksPerLine) {
  for (std::size_t k = 2; k <= 13; ++k) {
    BlockMatrix r = circular_grid(k);
    for (std::size_t i = 0; i < 2 * k; ++i) {
      EXPECT_EQ(nonzero_in_row(r, i), 3U) << "k=" << k << " row " << i + 1;
      EXPECT_EQ(nonzero_in_col(r, i), 3U) << "k=" << k << " col " << i + 1;
    }
  }
}

TEST(BlockMatrix, ExceptionalBlockCounts) {
  BlockMatrix r4 = circular_grid(4);
  EXPECT_EQ(r4.kind, GridCase::Case3);
  EXPECT_EQ(r4.count(BlockTag::TwoI), 4U);
  EXPECT_EQ(r4.count(BlockTag::NegI), 2U);
  BlockMatrix r5 = circular_grid(5);
  EXPECT_EQ(r5.kind, GridCase::Case4);
  EXPECT_EQ(r5.at(2, 2), BlockTag::TwoB);
  EXPECT_EQ(r5.at(7, 7), BlockTag::TwoBinv);
  EXPECT_EQ(r5.at(0, 9), BlockTag::NegI);
  EXPECT_EQ(circular_grid(6).kind, GridCase::Case2);
  EXPECT_EQ(circular_grid(6).count(BlockTag::TwoI), 0U);
  EXPECT_THROW(circular_grid(1), PreconditionError);
}

TEST(BlockMatrix, CharacteristicTwoIsRejectedByBlock) {
  auto cert = hypercube_involutory<ModP>(1, PrimeField(2));
  try {
    circular_block_matrix(cert, 2);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("R(1,4) = 2I"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(circular_block_matrix(cert, 3));
  EXPECT_THROW(circular_block_matrix(cert, 5), PreconditionError);
}

TEST(BlockMatrix, InstantiateCaseOne) {
  auto cert = k22_certificate<Rational>(RationalField{});
  auto inst = instantiate(circular_block_matrix(cert, 2), cert);
  EXPECT_EQ(inst.r.matrix().rows(), 8U);
  EXPECT_TRUE(inst.r.audit().ok);
  EXPECT_TRUE(support_matches_host(inst.r));
  EXPECT_EQ(inst.r.host().order(), 16U);
  // Block (1,4) = 2I at rows 0..1, cols 6..7.
  EXPECT_EQ(inst.r.matrix()(0, 6), Rational(2));
  EXPECT_EQ(inst.r.matrix()(3, 3), Rational(1, 2));  // -Binv(1,1) = -(-1/2)

  BlockMatrix zero = circular_grid(2);
  for (auto& row : zero.grid)
    for (auto& t : row) t = BlockTag::O;
  EXPECT_THROW(instantiate(zero, cert), SupportError);
}

TEST(BlockMatrix, InstantiateAllCasesAndBases) {
  auto k22 = k22_certificate<Rational>(RationalField{});
  auto s = s14_certificate();
  for (std::size_t k = 2; k <= 7; ++k) {
    EXPECT_TRUE(instantiate(circular_block_matrix(k22, k), k22).r.audit().ok) << k;
    EXPECT_TRUE(instantiate(circular_block_matrix(s, k), s).r.audit().ok) << k;
  }
}

TEST(BlockMatrix, PrismInstances) {
  auto star2 = star_pair<Rational>(2, RationalField{});
  auto inst = instantiate(prism_block_matrix(star2), star2);
  EXPECT_EQ(inst.r.matrix().rows(), 3U);
  EXPECT_EQ(inst.r.matrix().cols(), 3U);
  EXPECT_TRUE(support_matches_host(inst.r));

  auto k23 = delete_rows(fourier_pair(3, 7), {"x2"});
  auto inst23 = instantiate(prism_block_matrix(k23), k23);
  EXPECT_EQ(inst23.r.matrix().rows(), 5U);

  auto k11 = star_pair<Rational>(1, RationalField{});
  auto m = instantiate(prism_block_matrix(k11), k11).r.matrix();
  EXPECT_EQ(m, Matrix<Rational>::from_rows(RationalField{}, {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}));
}

}  // namespace
}  // namespace forcecert
