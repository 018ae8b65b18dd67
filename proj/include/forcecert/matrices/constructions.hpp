#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "forcecert/data/weight_tables.hpp"
#include "forcecert/errors.hpp"
#include "forcecert/fields/field.hpp"
#include "forcecert/graphs/families.hpp"
#include "forcecert/graphs/operations.hpp"
#include "forcecert/matrices/weighted.hpp"

namespace forcecert {

namespace detail {

template <Field F>
F int_in(const typename F::field_type& f, std::int64_t v) {
  return F::from_int(f, v);
}

template <Field F>
void require_odd_characteristic(const typename F::field_type& f, const std::string& what) {
  if (characteristic(f) == 2) throw PreconditionError(what + " is not available in characteristic 2");
}

/// The same vertex list, as ids of another graph with the same labels.
inline std::vector<Vertex> relocate(const BipartiteGraph& from, const BipartiteGraph& to, const std::vector<Vertex>& vs) {
  std::vector<Vertex> out;
  out.reserve(vs.size());
  for (Vertex v : vs) out.push_back(to.at(from.label(v)));
  return out;
}

/// Integer recursion A_1 = [[0,1],[1,0]], A_d = [[A, I], [I, -A]], indexed by
/// hypercube vertex id (the top bit picks the block).
template <Field F>
Matrix<F> signed_hypercube(std::size_t d, const typename F::field_type& f) {
  Matrix<F> a(2, 2, f);
  a.set(0, 1, F::one(f));
  a.set(1, 0, F::one(f));
  for (std::size_t k = 2; k <= d; ++k) {
    const std::size_t h = a.rows();
    Matrix<F> next(2 * h, 2 * h, f);
    next.set_block(0, 0, a);
    next.set_block(h, h, a.scaled(-F::one(f)));
    next.set_block(0, h, Matrix<F>::identity(h, f));
    next.set_block(h, 0, Matrix<F>::identity(h, f));
    a = std::move(next);
  }
  return a;
}

}  // namespace detail

/// Scaled signed hypercube s*A_d with s^2 d = 1.
template <Field F>
InvolutoryCertificate<F> hypercube_involutory(std::size_t d, const typename F::field_type& f) {
  if (d == 0) throw PreconditionError("hypercube dimension must be positive");
  const F target = F::from_int(f, static_cast<std::int64_t>(d));
  if (target.is_zero()) throw PreconditionError("d = 0 in " + describe(f));
  auto s = field_sqrt(target.inverse());
  if (!s) {
    throw PreconditionError("no s with s^2*" + std::to_string(d) + " = 1 in " + describe(f) + "; use Qsqrt:" +
                            std::to_string(d) + " or GFp:<p> with " + std::to_string(d) +
                            " a square mod p (for d=2, p = 1 or 7 mod 8)");
  }
  Matrix<F> a = detail::signed_hypercube<F>(d, f).scaled(*s);
  return certificate_from_adjacency(share(hypercube(d)), a);
}

/// K_{2,2} with B = [[1,1],[1,-1]] and Binv = B/2.
template <Field F>
InvolutoryCertificate<F> k22_certificate(const typename F::field_type& f) {
  detail::require_odd_characteristic<F>(f, "the K22 certificate");
  Matrix<F> b(2, 2, f);
  b.set(0, 0, F::one(f));
  b.set(0, 1, F::one(f));
  b.set(1, 0, F::one(f));
  b.set(1, 1, -F::one(f));
  return certificate_from_matrix(WeightedBiAdjacency<F>::standard(share(complete_bipartite(2, 2)), std::move(b)));
}

/// Fourier pair on K_{n,n} over GF(p): B = (w^{ij}), C = n^{-1} (w^{-ij})
/// with w of order n.
inline RowInversePair<ModP> fourier_pair(std::size_t n, std::uint64_t p) {
  if (n == 0) throw PreconditionError("fourier_pair needs n >= 1");
  const PrimeField f(p);
  if ((p - 1) % n != 0) throw PreconditionError("fourier_pair needs p = 1 mod n, got n=" + std::to_string(n) + ", p=" + std::to_string(p));
  const ModP w = element_of_order(n, p);
  const ModP w_inv = w.inverse();
  const ModP n_inv = ModP::from_int(f, static_cast<std::int64_t>(n)).inverse();
  Matrix<ModP> b(n, n, f);
  Matrix<ModP> c(n, n, f);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      b.set(i, j, w.pow(i * j));
      c.set(i, j, n_inv * w_inv.pow(i * j));
    }
  }
  GraphPtr host = share(complete_bipartite(n, n));
  return {WeightedBiAdjacency<ModP>::standard(host, std::move(b)), WeightedBiAdjacency<ModP>::standard(host, std::move(c))};
}

/// K_{1,n}: B is the all-ones row and C = B/n.
template <Field F>
RowInversePair<F> star_pair(std::size_t n, const typename F::field_type& f) {
  const F nn = F::from_int(f, static_cast<std::int64_t>(n));
  if (n == 0 || nn.is_zero()) throw PreconditionError("star_pair needs n invertible in " + describe(f));
  Matrix<F> b(1, n, f);
  for (std::size_t j = 0; j < n; ++j) b.set(0, j, F::one(f));
  GraphPtr host = share(star(n));
  Matrix<F> c = b.scaled(nn.inverse());
  return {WeightedBiAdjacency<F>::standard(host, std::move(b)), WeightedBiAdjacency<F>::standard(host, std::move(c))};
}

/// The literal signed S14 table, halved. Orthogonal, so Binv = B^T.
inline InvolutoryCertificate<Rational> s14_certificate() {
  GraphPtr host = share(s14());
  std::vector<Vertex> rows;
  std::vector<Vertex> cols;
  for (int r : data::kS14Rows) rows.push_back(host->at("x" + std::to_string(r)));
  for (int c : data::kS14Cols) cols.push_back(host->at("y" + std::to_string(c)));
  Matrix<Rational> b(7, 7, RationalField{});
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) b.set(i, j, Rational(data::kS14Halves[i][j], 2));
  return orthogonal_to_involutory(WeightedBiAdjacency<Rational>(host, std::move(rows), std::move(cols), std::move(b)));
}

/// The literal G' table over Q(sqrt 2).
inline Matrix<QuadraticElement> gprime_table() {
  const QuadraticField f(2);
  Matrix<QuadraticElement> b(7, 7, f);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      const auto& e = data::kGPrime[i][j];
      b.set(i, j, QuadraticElement(f, Rational(e.rational), Rational(e.surd)));
    }
  }
  return b;
}

/// G' table divided by 18: orthogonal over Q(sqrt 2).
inline InvolutoryCertificate<QuadraticElement> gprime_certificate() {
  const QuadraticField f(2);
  Matrix<QuadraticElement> b = gprime_table().scaled(QuadraticElement(f, Rational(1, data::kGPrimeScale)));
  return orthogonal_to_involutory(WeightedBiAdjacency<QuadraticElement>::standard(share(g_prime()), std::move(b)));
}

/// Certificate for G □ K2 from one for G: A' = s [[A, cI], [cI, -A]] with
/// s^2 (1 + c^2) = 1, laid out in product id order 2g + h.
template <Field F>
InvolutoryCertificate<F> prism_lift(const InvolutoryCertificate<F>& cert, const F& c) {
  const auto& f = cert.field();
  if (c.is_zero()) throw PreconditionError("prism_lift needs c != 0");
  const F norm = F::one(f) + c * c;
  if (norm.is_zero()) throw PreconditionError("1 + c^2 = 0 for c = " + to_string(c));
  auto s = field_sqrt(norm.inverse());
  if (!s) throw PreconditionError("no s with s^2(1 + c^2) = 1 in " + describe(f) + " for c = " + to_string(c));
  const Matrix<F> a = cert.adjacency_by_id();
  const std::size_t n = a.rows();
  Matrix<F> lifted(2 * n, 2 * n, f);
  const F sc = *s * c;
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t g2 = 0; g2 < n; ++g2) {
      if (a.is_nonzero(g, g2)) {
        lifted.set(2 * g, 2 * g2, *s * a(g, g2));
        lifted.set(2 * g + 1, 2 * g2 + 1, -(*s * a(g, g2)));
      }
    }
    lifted.set(2 * g, 2 * g + 1, sc);
    lifted.set(2 * g + 1, 2 * g, sc);
  }
  return certificate_from_adjacency(share(cartesian_product(cert.host(), k2())), lifted);
}

/// Moves a certificate onto a structurally identical host (same ids).
template <Field F>
InvolutoryCertificate<F> rehost(const InvolutoryCertificate<F>& cert, GraphPtr host) {
  if (!cert.host().same_structure(*host)) throw PreconditionError("rehost target has a different structure");
  return {WeightedBiAdjacency<F>(std::move(host), cert.b.row_order(), cert.b.col_order(), cert.b.matrix()), cert.b_inv};
}

/// Q_d certificate by lifting Q_1 d-1 times with weight c, on hypercube labels.
template <Field F>
InvolutoryCertificate<F> hypercube_by_lifts(std::size_t d, const F& c) {
  if (d == 0) throw PreconditionError("hypercube dimension must be positive");
  InvolutoryCertificate<F> cert = hypercube_involutory<F>(1, c.field());
  for (std::size_t k = 2; k <= d; ++k) cert = rehost(prism_lift(cert, c), share(hypercube(k)));
  return cert;
}

/// Union of pairs with disjoint Y sides, folded left to right. Rows shared
/// by both sides of a step are scaled by s (2 s^2 = 1) in both halves; when
/// `s` is absent it is taken from field_sqrt(1/2).
template <Field F>
RowInversePair<F> union_pair(std::span<const RowInversePair<F>> pairs, std::optional<F> s = std::nullopt) {
  if (pairs.empty()) throw PreconditionError("union_pair needs at least one pair");
  RowInversePair<F> acc = pairs.front();
  const auto& f = acc.field();
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    const RowInversePair<F>& next = pairs[k];
    if (!(next.field() == f)) throw FieldMismatch("union_pair over " + describe(f) + " and " + describe(next.field()));
    std::vector<BipartiteGraph> parts{acc.host(), next.host()};
    GraphPtr host = share(union_graph(parts));

    std::map<std::string, std::size_t> left_row;
    std::map<std::string, std::size_t> right_row;
    for (std::size_t i = 0; i < acc.rows(); ++i) left_row[acc.host().label(acc.b.row_order()[i])] = i;
    for (std::size_t i = 0; i < next.rows(); ++i) right_row[next.host().label(next.b.row_order()[i])] = i;

    std::vector<Vertex> rows = detail::relocate(acc.host(), *host, acc.b.row_order());
    for (Vertex v : next.b.row_order()) {
      if (!left_row.contains(next.host().label(v))) rows.push_back(host->at(next.host().label(v)));
    }
    std::vector<Vertex> cols = detail::relocate(acc.host(), *host, acc.b.col_order());
    for (Vertex v : detail::relocate(next.host(), *host, next.b.col_order())) cols.push_back(v);

    bool overlap = false;
    for (const auto& [label, i] : right_row) overlap = overlap || left_row.contains(label);
    F scale = F::one(f);
    if (overlap) {
      if (!s) s = field_sqrt((F::one(f) + F::one(f)).inverse());
      if (!s || !(*s * *s * F::from_int(f, 2) == F::one(f))) {
        throw PreconditionError("overlapping X sides need s with 2s^2 = 1 in " + describe(f));
      }
      scale = *s;
    }

    const std::size_t left_cols = acc.cols();
    auto glue = [&](const Matrix<F>& left, const Matrix<F>& right) {
      Matrix<F> out(rows.size(), cols.size(), f);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string& label = host->label(rows[i]);
        auto l = left_row.find(label);
        auto r = right_row.find(label);
        const bool both = l != left_row.end() && r != right_row.end();
        const F w = both ? scale : F::one(f);
        if (l != left_row.end())
          for (std::size_t j = 0; j < left.cols(); ++j) out.set(i, j, w * left(l->second, j));
        if (r != right_row.end())
          for (std::size_t j = 0; j < right.cols(); ++j) out.set(i, left_cols + j, w * right(r->second, j));
      }
      return out;
    };
    acc = RowInversePair<F>{WeightedBiAdjacency<F>(host, rows, cols, glue(acc.b.matrix(), next.b.matrix())),
                            WeightedBiAdjacency<F>(host, rows, cols, glue(acc.c.matrix(), next.c.matrix()))};
  }
  CheckResult r = verify_certificate(acc);
  if (!r.ok) throw SupportError("union_pair produced an invalid pair: " + r.what);
  return acc;
}

/// Drops the X vertices `removed` from the host and the matching rows of B
/// and C.
template <Field F>
RowInversePair<F> delete_rows(const RowInversePair<F>& pair, const std::vector<std::string>& removed) {
  GraphPtr host = share(delete_x_vertices(pair.host(), removed));
  std::vector<std::size_t> keep;
  std::vector<Vertex> rows;
  for (std::size_t i = 0; i < pair.rows(); ++i) {
    const std::string& label = pair.host().label(pair.b.row_order()[i]);
    if (auto v = host->find(label)) {
      keep.push_back(i);
      rows.push_back(*v);
    }
  }
  if (keep.empty()) throw PreconditionError("delete_rows would remove every row");
  std::vector<Vertex> cols = detail::relocate(pair.host(), *host, pair.b.col_order());
  return {WeightedBiAdjacency<F>(host, rows, cols, pair.b.matrix().select_rows(keep)),
          WeightedBiAdjacency<F>(host, rows, cols, pair.c.matrix().select_rows(keep))};
}

/// Random nonzero GF(p) weights on the edges of a balanced graph, kept when
/// B is invertible and B^{-1} has the support of B^T. Deterministic in
/// `seed`.
inline std::optional<InvolutoryCertificate<ModP>> random_certificate_search(const BipartiteGraph& g, std::uint64_t p,
                                                                            std::size_t trials, std::uint64_t seed) {
  if (!g.is_balanced()) throw PreconditionError("random_certificate_search needs a balanced graph");
  const PrimeField f(p);
  if (p < 3) throw PreconditionError("random_certificate_search needs p >= 3");
  GraphPtr host = share(g);
  const auto xs = g.side_vertices(Side::X);
  const auto ys = g.side_vertices(Side::Y);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, p - 1);
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix<ModP> b(xs.size(), ys.size(), f);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < ys.size(); ++j)
        if (g.has_edge(xs[i], ys[j])) b.set(i, j, ModP(f, pick(rng)));
    auto inv = inverse(b);
    if (!inv || !inv->same_support(b.transpose())) continue;
    InvolutoryCertificate<ModP> cert{WeightedBiAdjacency<ModP>(host, xs, ys, std::move(b)), std::move(*inv)};
    if (verify_certificate(cert).ok) return cert;
  }
  return std::nullopt;
}

}  // namespace forcecert
