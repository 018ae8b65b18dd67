#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/matrices/block_matrix.hpp"
#include "forcecert/rank/rank.hpp"

namespace forcecert {

/// Left factor applied to a block row in a dependency identity.
enum class Coef { One, NegOne, Two, B, NegB, Binv, NegBinv };

struct DependencyTerm {
  Coef coef;
  std::size_t row;  // 1-based block row
};

/// R^(target) = sum of terms, as a list.
struct DependencyIdentity {
  std::size_t target = 0;
  std::vector<DependencyTerm> terms;
};

/// The two identities of a circular grid: the top one expresses block row 1,
/// the bottom one block row 2k, each through rows other than 1 and 2k.
inline std::pair<DependencyIdentity, DependencyIdentity> circular_dependencies(std::size_t k) {
  const GridCase kind = circular_case(k);
  const std::size_t n = 2 * k;
  DependencyIdentity top{1, {}};
  DependencyIdentity bottom{n, {}};
  auto t = [&](Coef c, std::size_t row) { top.terms.push_back({c, row}); };
  auto b = [&](Coef c, std::size_t row) { bottom.terms.push_back({c, row}); };
  switch (kind) {
    case GridCase::Case1:
      t(Coef::B, 2);
      t(Coef::Two, 3);
      b(Coef::Binv, 3);
      b(Coef::One, 2);
      break;
    case GridCase::Case2:
      for (std::size_t i = 0; i < k / 3; ++i) {
        if (i > 0) t(Coef::NegOne, 6 * i + 1);
        t(Coef::B, 6 * i + 2);
        t(Coef::NegB, 6 * i + 4);
        t(Coef::One, 6 * i + 5);
        if (i > 0) b(Coef::NegOne, n - 6 * i);
        b(Coef::Binv, n - 6 * i - 1);
        b(Coef::NegBinv, n - 6 * i - 3);
        b(Coef::One, n - 6 * i - 4);
      }
      break;
    case GridCase::Case3:
      t(Coef::B, 2);
      t(Coef::One, 3);
      t(Coef::NegB, 4);
      b(Coef::Binv, n - 1);
      b(Coef::One, n - 2);
      b(Coef::NegBinv, n - 3);
      for (std::size_t i = 1; i <= (k - 4) / 3; ++i) {
        t(Coef::B, 6 * i);
        t(Coef::NegOne, 6 * i + 1);
        t(Coef::One, 6 * i + 3);
        t(Coef::NegB, 6 * i + 4);
        b(Coef::Binv, n - 6 * i + 1);
        b(Coef::NegOne, n - 6 * i);
        b(Coef::One, n - 6 * i - 2);
        b(Coef::NegBinv, n - 6 * i - 3);
      }
      t(Coef::B, n - 2);
      t(Coef::NegOne, n - 1);
      b(Coef::Binv, 3);
      b(Coef::NegOne, 2);
      break;
    case GridCase::Case4:
      for (std::size_t i = 0; i <= (k - 5) / 3; ++i) {
        t(Coef::B, 6 * i + 2);
        t(Coef::NegB, 6 * i + 4);
        t(Coef::One, 6 * i + 5);
        t(Coef::NegOne, 6 * i + 7);
        b(Coef::Binv, n - 6 * i - 1);
        b(Coef::NegBinv, n - 6 * i - 3);
        b(Coef::One, n - 6 * i - 4);
        b(Coef::NegOne, n - 6 * i - 6);
      }
      t(Coef::B, n - 2);
      t(Coef::NegOne, n - 1);
      b(Coef::Binv, 3);
      b(Coef::NegOne, 2);
      break;
    case GridCase::Prism:
      break;
  }
  return {top, bottom};
}

struct ResidualEntry {
  std::size_t block = 0;  // 1-based block column
  std::size_t row = 0;    // within the block
  std::size_t col = 0;
  std::string value;
};

/// Z = -R^(target) + sum of terms, split into its 2k column blocks.
template <Field F>
struct DependencyResidual {
  GridCase tag = GridCase::Case2;
  std::string side;  // "top" or "bottom"
  std::vector<Matrix<F>> blocks;
  std::optional<ResidualEntry> first_nonzero;

  bool is_zero() const { return !first_nonzero.has_value(); }
};

template <Field F>
struct DependencyCheck {
  DependencyResidual<F> top;
  DependencyResidual<F> bottom;
  bool passed() const { return top.is_zero() && bottom.is_zero(); }
};

namespace detail {

template <Field F>
DependencyResidual<F> residual(const GridInstance<F>& inst, const InvolutoryCertificate<F>& cert,
                               const DependencyIdentity& id, const std::string& side) {
  const Matrix<F>& r = inst.r.matrix();
  const auto& f = r.field();
  auto block_row = [&](std::size_t i) {
    if (i == 0 || i >= inst.row_offsets.size()) throw PreconditionError("identity refers to a missing block row");
    return r.block(inst.row_offsets[i - 1], 0, inst.row_offsets[i] - inst.row_offsets[i - 1], r.cols());
  };
  const Matrix<F>& b = cert.b.matrix();
  const Matrix<F>& b_inv = cert.b_inv;
  const F one = F::one(f);
  Matrix<F> z = block_row(id.target).scaled(-one);
  for (const DependencyTerm& term : id.terms) {
    Matrix<F> row = block_row(term.row);
    switch (term.coef) {
      case Coef::One: z = z + row; break;
      case Coef::NegOne: z = z - row; break;
      case Coef::Two: z = z + row.scaled(one + one); break;
      case Coef::B: z = z + b * row; break;
      case Coef::NegB: z = z - b * row; break;
      case Coef::Binv: z = z + b_inv * row; break;
      case Coef::NegBinv: z = z - b_inv * row; break;
    }
  }
  DependencyResidual<F> out{inst.grid.kind, side, {}, std::nullopt};
  for (std::size_t j = 0; j + 1 < inst.col_offsets.size(); ++j) {
    Matrix<F> blk = z.block(0, inst.col_offsets[j], z.rows(), inst.col_offsets[j + 1] - inst.col_offsets[j]);
    for (std::size_t a = 0; a < blk.rows() && !out.first_nonzero; ++a)
      for (std::size_t c = 0; c < blk.cols() && !out.first_nonzero; ++c)
        if (blk.is_nonzero(a, c)) out.first_nonzero = ResidualEntry{j + 1, a, c, to_string(blk(a, c))};
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

}  // namespace detail

/// Evaluates both identities of the grid's case on the concrete matrix.
template <Field F>
DependencyCheck<F> verify_case_dependency(const GridInstance<F>& inst, const InvolutoryCertificate<F>& cert, std::size_t k) {
  if (inst.grid.kind == GridCase::Prism || inst.grid.k != k || circular_case(k) != inst.grid.kind) {
    throw PreconditionError("grid is tagged " + case_name(inst.grid.kind) + " but k = " + std::to_string(k) + " needs " +
                            case_name(circular_case(k)));
  }
  auto [top, bottom] = circular_dependencies(k);
  return {detail::residual(inst, cert, top, "top"), detail::residual(inst, cert, bottom, "bottom")};
}

}  // namespace forcecert
