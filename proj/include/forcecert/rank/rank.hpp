#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/fields/field.hpp"
#include "forcecert/matrices/matrix.hpp"
#include "forcecert/matrices/weighted.hpp"

namespace forcecert {

struct RankCertificate {
  std::string field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  std::size_t corank = 0;  // rows - rank
  std::vector<std::size_t> pivots;
};

/// Gaussian elimination with the first nonzero entry of each column as pivot
/// and row swaps only.
template <Field F>
RankCertificate exact_rank(const Matrix<F>& m) {
  RankCertificate cert{describe(m.field()), m.rows(), m.cols(), 0, 0, {}};
  std::vector<std::vector<F>> a(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    a[i].reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) a[i].push_back(m(i, j));
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t pivot = r;
    while (pivot < m.rows() && a[pivot][col].is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    std::swap(a[r], a[pivot]);
    const F inv = a[r][col].inverse();
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (a[i][col].is_zero()) continue;
      const F factor = a[i][col] * inv;
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!a[r][j].is_zero()) a[i][j] = a[i][j] - factor * a[r][j];
      }
    }
    cert.pivots.push_back(col);
    ++r;
  }
  cert.rank = r;
  cert.corank = m.rows() - r;
  return cert;
}

/// corank(B) of an audited square weighted bi-adjacency matrix: a lower bound
/// on the minimum forcing number of the host. Refuses unaudited input.
template <Field F>
std::size_t forcing_lower_bound(const WeightedBiAdjacency<F>& b) {
  CheckResult audit = b.audit();
  if (!audit.ok) throw SupportError("no lower bound from a matrix that fails its support audit: " + audit.what);
  if (b.matrix().rows() != b.matrix().cols()) throw PreconditionError("lower bound needs a square bi-adjacency matrix");
  return exact_rank(b.matrix()).corank;
}

struct PrimeRank {
  std::uint64_t prime = 0;
  bool skipped = false;  // some denominator vanishes mod p
  std::size_t rank = 0;
  bool agrees = false;
};

struct CrossFieldReport {
  std::size_t rational_rank = 0;
  std::vector<PrimeRank> primes;
  /// Reduction mod p can only lose rank.
  bool consistent() const {
    for (const auto& p : primes)
      if (!p.skipped && p.rank > rational_rank) return false;
    return true;
  }
};

/// Rank over Q against the rank of the reduction mod each prime.
inline CrossFieldReport cross_field_rank_check(const Matrix<Rational>& m, const std::vector<std::uint64_t>& primes) {
  CrossFieldReport report;
  report.rational_rank = exact_rank(m).rank;
  for (std::uint64_t p : primes) {
    PrimeRank entry{p, false, 0, false};
    const PrimeField f(p);
    try {
      entry.rank = exact_rank(convert<ModP>(m, f)).rank;
      entry.agrees = entry.rank == report.rational_rank;
    } catch (const DivisionByZero&) {
      entry.skipped = true;
    }
    report.primes.push_back(entry);
  }
  return report;
}

}  // namespace forcecert
