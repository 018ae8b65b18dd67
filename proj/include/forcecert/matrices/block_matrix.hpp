#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/graphs/families.hpp"
#include "forcecert/graphs/operations.hpp"
#include "forcecert/matrices/weighted.hpp"

namespace forcecert {

enum class BlockTag { O, I, NegI, TwoI, B, NegB, TwoB, Binv, NegBinv, TwoBinv, Ct };

inline std::string tag_name(BlockTag t) {
  switch (t) {
    case BlockTag::O: return "O";
    case BlockTag::I: return "I";
    case BlockTag::NegI: return "-I";
    case BlockTag::TwoI: return "2I";
    case BlockTag::B: return "B";
    case BlockTag::NegB: return "-B";
    case BlockTag::TwoB: return "2B";
    case BlockTag::Binv: return "Binv";
    case BlockTag::NegBinv: return "-Binv";
    case BlockTag::TwoBinv: return "2Binv";
    case BlockTag::Ct: return "C^T";
  }
  return "?";
}

inline bool has_weight_two(BlockTag t) { return t == BlockTag::TwoI || t == BlockTag::TwoB || t == BlockTag::TwoBinv; }

/// Sign flip of a tag, used to corrupt grids on purpose.
inline BlockTag negated(BlockTag t) {
  switch (t) {
    case BlockTag::O: return BlockTag::O;
    case BlockTag::I: return BlockTag::NegI;
    case BlockTag::NegI: return BlockTag::I;
    case BlockTag::B: return BlockTag::NegB;
    case BlockTag::NegB: return BlockTag::B;
    case BlockTag::Binv: return BlockTag::NegBinv;
    case BlockTag::NegBinv: return BlockTag::Binv;
    default: throw PreconditionError("no negated tag for " + tag_name(t));
  }
}

enum class GridCase { Case1, Case2, Case3, Case4, Prism };

inline std::string case_name(GridCase c) {
  switch (c) {
    case GridCase::Case1: return "case1";
    case GridCase::Case2: return "case2";
    case GridCase::Case3: return "case3";
    case GridCase::Case4: return "case4";
    case GridCase::Prism: return "prism";
  }
  return "?";
}

/// Which circular grid a given k uses.
inline GridCase circular_case(std::size_t k) {
  if (k < 2) throw PreconditionError("circular grids need k >= 2");
  if (k == 2) return GridCase::Case1;
  if (k % 3 == 0) return GridCase::Case2;
  if (k % 3 == 1) return GridCase::Case3;
  return GridCase::Case4;
}

/// Symbolic partitioned matrix. Indices are 0-based here; block (i, j) is
/// R_{i+1, j+1} in the usual 1-based naming.
struct BlockMatrix {
  GridCase kind = GridCase::Case2;
  std::size_t k = 0;  // half the cycle length; 0 for the prism grid
  std::vector<std::vector<BlockTag>> grid;

  std::size_t block_rows() const { return grid.size(); }
  std::size_t block_cols() const { return grid.empty() ? 0 : grid.front().size(); }
  BlockTag at(std::size_t i, std::size_t j) const { return grid.at(i).at(j); }
  void set(std::size_t i, std::size_t j, BlockTag t) { grid.at(i).at(j) = t; }

  std::size_t count(BlockTag t) const {
    std::size_t c = 0;
    for (const auto& row : grid)
      for (BlockTag x : row) c += x == t ? 1 : 0;
    return c;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& row : grid) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out += ' ';
        out += tag_name(row[j]);
      }
      out += '\n';
    }
    return out;
  }
};

/// The 2k x 2k grid for G □ C_{2k}, without any field check.
inline BlockMatrix circular_grid(std::size_t k) {
  BlockMatrix r;
  r.kind = circular_case(k);
  r.k = k;
  const std::size_t n = 2 * k;
  r.grid.assign(n, std::vector<BlockTag>(n, BlockTag::O));
  // 1-based setter with indices taken mod 2k.
  auto put = [&](std::size_t i, std::size_t j, BlockTag t) { r.grid[(i + n - 1) % n][(j + n - 1) % n] = t; };

  if (r.kind == GridCase::Case1) {
    r.grid = {{BlockTag::B, BlockTag::I, BlockTag::O, BlockTag::TwoI},
              {BlockTag::I, BlockTag::NegBinv, BlockTag::TwoI, BlockTag::O},
              {BlockTag::O, BlockTag::I, BlockTag::NegB, BlockTag::I},
              {BlockTag::I, BlockTag::O, BlockTag::I, BlockTag::Binv}};
    return r;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    put(i, i, i % 2 == 1 ? BlockTag::B : BlockTag::Binv);
    put(i - 1 + n, i, BlockTag::I);
    put(i + 1, i, BlockTag::I);
  }
  if (r.kind == GridCase::Case3) {
    put(1, n, BlockTag::NegI);
    put(n, 1, BlockTag::NegI);
    put(1, 2, BlockTag::TwoI);
    put(4, 3, BlockTag::TwoI);
    put(n, n - 1, BlockTag::TwoI);
    put(n - 3, n - 2, BlockTag::TwoI);
  } else if (r.kind == GridCase::Case4) {
    put(3, 3, BlockTag::TwoB);
    put(n - 2, n - 2, BlockTag::TwoBinv);
    put(1, n, BlockTag::NegI);
    put(n, 1, BlockTag::NegI);
  }
  return r;
}

/// Circular grid checked against the certificate's field: blocks of weight 2
/// vanish in characteristic 2.
template <Field F>
BlockMatrix circular_block_matrix(const InvolutoryCertificate<F>& cert, std::size_t k) {
  BlockMatrix r = circular_grid(k);
  if (characteristic(cert.field()) == 2) {
    for (std::size_t i = 0; i < r.block_rows(); ++i) {
      for (std::size_t j = 0; j < r.block_cols(); ++j) {
        if (has_weight_two(r.at(i, j))) {
          throw PreconditionError("block R(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " +
                                  tag_name(r.at(i, j)) + " vanishes in characteristic 2 (" + describe(cert.field()) + ")");
        }
      }
    }
  }
  return r;
}

/// [[I_n, C^T], [B, I_m]] with rows (Y_1, X_2) and columns (Y_2, X_1).
inline BlockMatrix prism_block_matrix() {
  BlockMatrix r;
  r.kind = GridCase::Prism;
  r.k = 0;
  r.grid = {{BlockTag::I, BlockTag::Ct}, {BlockTag::B, BlockTag::I}};
  return r;
}

template <Field F>
BlockMatrix prism_block_matrix(const RowInversePair<F>& pair) {
  CheckResult r = verify_certificate(pair);
  if (!r.ok) throw PreconditionError("invalid row-inverse pair: " + r.what);
  return prism_block_matrix();
}

/// A concrete instance of a grid: the matrix of the product graph plus the
/// offsets of every block row and block column.
template <Field F>
struct GridInstance {
  BlockMatrix grid;
  WeightedBiAdjacency<F> r;
  std::vector<std::size_t> row_offsets;  // size block_rows + 1
  std::vector<std::size_t> col_offsets;
};

namespace detail {

template <Field F>
Matrix<F> block_value(BlockTag t, const Matrix<F>& b, const Matrix<F>* b_inv, const Matrix<F>* c, std::size_t h,
                      std::size_t w) {
  const auto& f = b.field();
  const F one = F::one(f);
  const F two = one + one;
  auto square = [&](std::size_t n) {
    if (h != n || w != n) throw PreconditionError("identity block on a non-square slot");
    return Matrix<F>::identity(n, f);
  };
  auto need = [&](const Matrix<F>* m, const char* what) -> const Matrix<F>& {
    if (!m) throw PreconditionError(std::string("grid uses ") + what + " but none was supplied");
    return *m;
  };
  switch (t) {
    case BlockTag::O: return Matrix<F>(h, w, f);
    case BlockTag::I: return square(h);
    case BlockTag::NegI: return square(h).scaled(-one);
    case BlockTag::TwoI: return square(h).scaled(two);
    case BlockTag::B: return b;
    case BlockTag::NegB: return b.scaled(-one);
    case BlockTag::TwoB: return b.scaled(two);
    case BlockTag::Binv: return need(b_inv, "Binv");
    case BlockTag::NegBinv: return need(b_inv, "Binv").scaled(-one);
    case BlockTag::TwoBinv: return need(b_inv, "Binv").scaled(two);
    case BlockTag::Ct: return need(c, "C").transpose();
  }
  throw PreconditionError("unknown block tag");
}

template <Field F>
GridInstance<F> assemble(const BlockMatrix& grid, GraphPtr product, std::vector<std::vector<Vertex>> row_blocks,
                         std::vector<std::vector<Vertex>> col_blocks, const Matrix<F>& b, const Matrix<F>* b_inv,
                         const Matrix<F>* c) {
  GridInstance<F> out{grid, WeightedBiAdjacency<F>(product, {}, {}, Matrix<F>(0, 0, b.field())), {0}, {0}};
  std::vector<Vertex> rows;
  std::vector<Vertex> cols;
  for (const auto& blk : row_blocks) {
    rows.insert(rows.end(), blk.begin(), blk.end());
    out.row_offsets.push_back(rows.size());
  }
  for (const auto& blk : col_blocks) {
    cols.insert(cols.end(), blk.begin(), blk.end());
    out.col_offsets.push_back(cols.size());
  }
  Matrix<F> m(rows.size(), cols.size(), b.field());
  for (std::size_t i = 0; i < grid.block_rows(); ++i) {
    for (std::size_t j = 0; j < grid.block_cols(); ++j) {
      const std::size_t h = row_blocks[i].size();
      const std::size_t w = col_blocks[j].size();
      Matrix<F> v = block_value(grid.at(i, j), b, b_inv, c, h, w);
      if (v.rows() != h || v.cols() != w) {
        throw PreconditionError("block R(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " +
                                tag_name(grid.at(i, j)) + " does not fit a " + std::to_string(h) + "x" +
                                std::to_string(w) + " slot");
      }
      m.set_block(out.row_offsets[i], out.col_offsets[j], v);
    }
  }
  out.r = WeightedBiAdjacency<F>(std::move(product), std::move(rows), std::move(cols), std::move(m));
  CheckResult audit = out.r.audit();
  if (!audit.ok) throw SupportError("instantiated grid fails the support audit: " + audit.what);
  return out;
}

}  // namespace detail

/// Substitutes the certificate into a circular grid and audits the result
/// against G □ C_{2k}. Block row i is copy i of the row side of B (i odd) or
/// of the column side (i even); block columns the other way round. Copy i is
/// cycle vertex c_{i-1}.
template <Field F>
GridInstance<F> instantiate(const BlockMatrix& grid, const InvolutoryCertificate<F>& cert) {
  if (grid.kind == GridCase::Prism) throw PreconditionError("prism grids are instantiated from a row-inverse pair");
  const std::size_t len = 2 * grid.k;
  if (grid.block_rows() != len || grid.block_cols() != len) throw PreconditionError("grid shape does not match k");
  GraphPtr product = share(cartesian_product(cert.host(), cycle(len)));
  auto copy_of = [&](const std::vector<Vertex>& side, std::size_t i) {
    std::vector<Vertex> out;
    for (Vertex g : side) out.push_back(g * len + i);
    return out;
  };
  std::vector<std::vector<Vertex>> row_blocks;
  std::vector<std::vector<Vertex>> col_blocks;
  for (std::size_t i = 0; i < len; ++i) {
    const bool odd = i % 2 == 0;  // 1-based index i + 1 is odd
    row_blocks.push_back(copy_of(odd ? cert.b.row_order() : cert.b.col_order(), i));
    col_blocks.push_back(copy_of(odd ? cert.b.col_order() : cert.b.row_order(), i));
  }
  return detail::assemble<F>(grid, std::move(product), std::move(row_blocks), std::move(col_blocks), cert.b.matrix(),
                             &cert.b_inv, nullptr);
}

/// Prism grid for G □ K2: rows (Y_1, X_2), columns (Y_2, X_1), where copy 1
/// is K2 vertex "0".
template <Field F>
GridInstance<F> instantiate(const BlockMatrix& grid, const RowInversePair<F>& pair) {
  if (grid.kind != GridCase::Prism) throw PreconditionError("circular grids are instantiated from a certificate");
  GraphPtr product = share(cartesian_product(pair.host(), k2()));
  auto copy_of = [](const std::vector<Vertex>& side, std::size_t h) {
    std::vector<Vertex> out;
    for (Vertex g : side) out.push_back(g * 2 + h);
    return out;
  };
  const auto& xs = pair.b.row_order();
  const auto& ys = pair.b.col_order();
  return detail::assemble<F>(grid, std::move(product), {copy_of(ys, 0), copy_of(xs, 1)}, {copy_of(ys, 1), copy_of(xs, 0)},
                             pair.b.matrix(), nullptr, &pair.c.matrix());
}

}  // namespace forcecert
