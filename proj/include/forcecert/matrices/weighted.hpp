#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/graphs/bipartite_graph.hpp"
#include "forcecert/matrices/matrix.hpp"

namespace forcecert {

using GraphPtr = std::shared_ptr<const BipartiteGraph>;

inline GraphPtr share(BipartiteGraph g) { return std::make_shared<const BipartiteGraph>(std::move(g)); }

/// Outcome of a support or identity check. `entry` is the first offending
/// (row, col) in row-major order, when the failure is entry-shaped.
struct CheckResult {
  bool ok = true;
  std::string what;
  std::optional<std::pair<std::size_t, std::size_t>> entry;

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string what, std::optional<std::pair<std::size_t, std::size_t>> entry = std::nullopt) {
    return {false, std::move(what), entry};
  }
};

/// Weighted bi-adjacency matrix of a host graph. Rows are the vertices of one
/// side in `row_order`, columns the vertices of the other side in
/// `col_order`. Rows are usually X, but block constructions may index rows by
/// the Y side.
template <Field F>
class WeightedBiAdjacency {
 public:
  WeightedBiAdjacency(GraphPtr host, std::vector<Vertex> rows, std::vector<Vertex> cols, Matrix<F> entries)
      : host_(std::move(host)), rows_(std::move(rows)), cols_(std::move(cols)), entries_(std::move(entries)) {
    if (!host_) throw PreconditionError("weighted bi-adjacency needs a host graph");
    if (entries_.rows() != rows_.size() || entries_.cols() != cols_.size()) {
      throw PreconditionError("matrix is " + std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()) +
                              " but the vertex orders are " + std::to_string(rows_.size()) + "x" +
                              std::to_string(cols_.size()));
    }
  }

  /// Rows X and columns Y in vertex-id order.
  static WeightedBiAdjacency standard(GraphPtr host, Matrix<F> entries) {
    auto rows = host->side_vertices(Side::X);
    auto cols = host->side_vertices(Side::Y);
    return WeightedBiAdjacency(std::move(host), std::move(rows), std::move(cols), std::move(entries));
  }

  const BipartiteGraph& host() const { return *host_; }
  const GraphPtr& host_ptr() const { return host_; }
  const std::vector<Vertex>& row_order() const { return rows_; }
  const std::vector<Vertex>& col_order() const { return cols_; }
  const Matrix<F>& matrix() const { return entries_; }

  /// Entry (x, y) nonzero iff xy is an edge, and the orders cover both sides
  /// exactly once.
  CheckResult audit() const {
    const BipartiteGraph& g = *host_;
    if (!rows_.empty() && !cols_.empty()) {
      const Side rs = g.side(rows_.front());
      const Side cs = opposite(rs);
      std::vector<int> seen(g.order(), 0);
      for (Vertex v : rows_) {
        if (v >= g.order() || g.side(v) != rs || seen[v]++) return CheckResult::fail("row order is not one side of the host");
      }
      for (Vertex v : cols_) {
        if (v >= g.order() || g.side(v) != cs || seen[v]++) return CheckResult::fail("column order is not the other side of the host");
      }
      if (rows_.size() != g.side_size(rs) || cols_.size() != g.side_size(cs)) {
        return CheckResult::fail("vertex orders do not cover the host");
      }
    } else if (g.size() != 0 || rows_.size() + cols_.size() != g.order()) {
      return CheckResult::fail("empty vertex order for a nonempty host");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        const bool edge = g.has_edge(rows_[i], cols_[j]);
        const bool nonzero = entries_.is_nonzero(i, j);
        if (edge != nonzero) {
          return CheckResult::fail(std::string(edge ? "zero entry on edge " : "nonzero entry off the edge set at ") +
                                       g.label(rows_[i]) + "-" + g.label(cols_[j]),
                                   std::make_pair(i, j));
        }
      }
    }
    return CheckResult::pass();
  }

  void require_support() const {
    CheckResult r = audit();
    if (!r.ok) throw SupportError("support audit failed: " + r.what);
  }

 private:
  GraphPtr host_;
  std::vector<Vertex> rows_;
  std::vector<Vertex> cols_;
  Matrix<F> entries_;
};

/// B with an inverse whose support is that of B^T. The full weighted
/// adjacency A = [[O, B], [Binv, O]] (rows of B first) is involutory.
template <Field F>
struct InvolutoryCertificate {
  WeightedBiAdjacency<F> b;
  Matrix<F> b_inv;

  const BipartiteGraph& host() const { return b.host(); }
  std::size_t order() const { return b.matrix().rows(); }
  const typename F::field_type& field() const { return b.matrix().field(); }

  /// A in the vertex order (rows of B, then columns of B).
  Matrix<F> assembled() const {
    const std::size_t n = b.matrix().rows();
    const std::size_t m = b.matrix().cols();
    Matrix<F> a(n + m, n + m, field());
    a.set_block(0, n, b.matrix());
    a.set_block(n, 0, b_inv);
    return a;
  }

  /// A indexed by host vertex id.
  Matrix<F> adjacency_by_id() const {
    const auto& rows = b.row_order();
    const auto& cols = b.col_order();
    Matrix<F> a(host().order(), host().order(), field());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        a.set(rows[i], cols[j], b.matrix()(i, j));
        a.set(cols[j], rows[i], b_inv(j, i));
      }
    }
    return a;
  }
};

/// (B, C) with B C^T = I_m for a host with |X| = m <= |Y| = n.
template <Field F>
struct RowInversePair {
  WeightedBiAdjacency<F> b;
  WeightedBiAdjacency<F> c;

  const BipartiteGraph& host() const { return b.host(); }
  std::size_t rows() const { return b.matrix().rows(); }
  std::size_t cols() const { return b.matrix().cols(); }
  const typename F::field_type& field() const { return b.matrix().field(); }
};

template <Field F>
CheckResult verify_certificate(const InvolutoryCertificate<F>& cert) {
  if (CheckResult r = cert.b.audit(); !r.ok) return CheckResult::fail("B support: " + r.what, r.entry);
  const Matrix<F>& b = cert.b.matrix();
  if (b.rows() != b.cols()) return CheckResult::fail("host is not balanced");
  if (cert.b_inv.rows() != b.cols() || cert.b_inv.cols() != b.rows()) return CheckResult::fail("Binv has the wrong shape");
  const Matrix<F> bt = b.transpose();
  for (std::size_t i = 0; i < bt.rows(); ++i) {
    for (std::size_t j = 0; j < bt.cols(); ++j) {
      if (bt.is_nonzero(i, j) != cert.b_inv.is_nonzero(i, j)) {
        return CheckResult::fail("support(Binv) differs from support(B^T)", std::make_pair(i, j));
      }
    }
  }
  const Matrix<F> prod = b * cert.b_inv;
  if (auto d = prod.first_difference(Matrix<F>::identity(b.rows(), b.field()))) {
    return CheckResult::fail("B*Binv is not the identity", d);
  }
  return CheckResult::pass();
}

template <Field F>
CheckResult verify_certificate(const RowInversePair<F>& pair) {
  if (CheckResult r = pair.b.audit(); !r.ok) return CheckResult::fail("B support: " + r.what, r.entry);
  if (CheckResult r = pair.c.audit(); !r.ok) return CheckResult::fail("C support: " + r.what, r.entry);
  if (pair.b.host_ptr() != pair.c.host_ptr() && !pair.b.host().same_structure(pair.c.host())) {
    return CheckResult::fail("B and C have different hosts");
  }
  if (pair.b.row_order() != pair.c.row_order() || pair.b.col_order() != pair.c.col_order()) {
    return CheckResult::fail("B and C use different vertex orders");
  }
  if (pair.rows() > pair.cols()) return CheckResult::fail("row side is larger than the column side");
  const Matrix<F> prod = pair.b.matrix() * pair.c.matrix().transpose();
  if (auto d = prod.first_difference(Matrix<F>::identity(pair.rows(), pair.field()))) {
    return CheckResult::fail("B*C^T is not the identity", d);
  }
  return CheckResult::pass();
}

/// Certificate from a weighted bi-adjacency B; Binv is computed. Throws
/// SupportError when B is singular or the inverse has the wrong support.
template <Field F>
InvolutoryCertificate<F> certificate_from_matrix(const WeightedBiAdjacency<F>& b) {
  b.require_support();
  if (b.matrix().rows() != b.matrix().cols()) throw PreconditionError("involutory certificates need a balanced host");
  auto inv = inverse(b.matrix());
  if (!inv) throw SupportError("B is singular");
  InvolutoryCertificate<F> cert{b, std::move(*inv)};
  CheckResult r = verify_certificate(cert);
  if (!r.ok) throw SupportError(r.what);
  return cert;
}

/// Involutory weighted adjacency A indexed by host vertex id, split into B
/// (X rows, Y columns in id order) and Binv.
template <Field F>
InvolutoryCertificate<F> certificate_from_adjacency(GraphPtr host, const Matrix<F>& a) {
  if (a.rows() != host->order() || a.cols() != host->order()) throw PreconditionError("adjacency has the wrong order");
  auto xs = host->side_vertices(Side::X);
  auto ys = host->side_vertices(Side::Y);
  Matrix<F> b = a.select_rows(xs).select_cols(ys);
  Matrix<F> b_inv = a.select_rows(ys).select_cols(xs);
  for (Vertex u : xs)
    for (Vertex v : xs)
      if (a.is_nonzero(u, v)) throw SupportError("adjacency has a nonzero X-X entry");
  for (Vertex u : ys)
    for (Vertex v : ys)
      if (a.is_nonzero(u, v)) throw SupportError("adjacency has a nonzero Y-Y entry");
  InvolutoryCertificate<F> cert{WeightedBiAdjacency<F>(std::move(host), std::move(xs), std::move(ys), std::move(b)),
                                std::move(b_inv)};
  CheckResult r = verify_certificate(cert);
  if (!r.ok) throw SupportError(r.what);
  return cert;
}

/// Square pair to certificate: Binv = C^T. Also covers orthogonal B (C = B).
template <Field F>
InvolutoryCertificate<F> pair_to_involutory(const RowInversePair<F>& pair) {
  if (pair.rows() != pair.cols()) throw PreconditionError("pair is not square");
  InvolutoryCertificate<F> cert{pair.b, pair.c.matrix().transpose()};
  CheckResult r = verify_certificate(cert);
  if (!r.ok) throw SupportError(r.what);
  return cert;
}

/// Orthogonal weighted bi-adjacency (B B^T = I) to certificate.
template <Field F>
InvolutoryCertificate<F> orthogonal_to_involutory(const WeightedBiAdjacency<F>& b) {
  return pair_to_involutory(RowInversePair<F>{b, b});
}

/// A certificate is a square pair with C = Binv^T.
template <Field F>
RowInversePair<F> involutory_to_pair(const InvolutoryCertificate<F>& cert) {
  WeightedBiAdjacency<F> c(cert.b.host_ptr(), cert.b.row_order(), cert.b.col_order(), cert.b_inv.transpose());
  return RowInversePair<F>{cert.b, std::move(c)};
}

}  // namespace forcecert
