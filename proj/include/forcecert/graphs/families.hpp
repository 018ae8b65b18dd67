#pragma once

#include <cstddef>
#include <string>

#include "forcecert/data/weight_tables.hpp"
#include "forcecert/errors.hpp"
#include "forcecert/graphs/bipartite_graph.hpp"

// Named graph families. Every constructor emits vertices in a fixed,
// documented order so that matrices built on top of them are reproducible.

namespace forcecert {

/// K_{m,n}: x0..x{m-1} on X, then y0..y{n-1} on Y.
inline BipartiteGraph complete_bipartite(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw PreconditionError("complete_bipartite needs positive side sizes");
  BipartiteGraph g;
  for (std::size_t i = 0; i < m; ++i) g.add_vertex("x" + std::to_string(i), Side::X);
  for (std::size_t j = 0; j < n; ++j) g.add_vertex("y" + std::to_string(j), Side::Y);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) g.add_edge(i, m + j);
  return g;
}

/// K_{1,n}: center x0, leaves y0..y{n-1}.
inline BipartiteGraph star(std::size_t n) { return complete_bipartite(1, n); }

/// C_len on c0..c{len-1}; c_i is on X iff i is even. Odd lengths are rejected.
inline BipartiteGraph cycle(std::size_t len) {
  if (len < 4) throw PreconditionError("cycle length must be at least 4");
  if (len % 2 != 0) throw NotBipartite("odd cycle C" + std::to_string(len) + " is not bipartite");
  BipartiteGraph g;
  for (std::size_t i = 0; i < len; ++i) g.add_vertex("c" + std::to_string(i), i % 2 == 0 ? Side::X : Side::Y);
  for (std::size_t i = 0; i < len; ++i) g.add_edge(i, (i + 1) % len);
  return g;
}

/// Path on p0..p{n-1}; p_i is on X iff i is even.
inline BipartiteGraph path(std::size_t n) {
  if (n == 0) throw PreconditionError("path needs at least one vertex");
  BipartiteGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("p" + std::to_string(i), i % 2 == 0 ? Side::X : Side::Y);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

/// Q_d. Vertex id v is labelled by its d-bit binary string (most significant
/// bit first), so ids run in binary counting order. Even weight is on X.
inline BipartiteGraph hypercube(std::size_t d) {
  if (d == 0 || d > 20) throw PreconditionError("hypercube dimension must be in [1, 20]");
  BipartiteGraph g;
  const std::size_t n = std::size_t{1} << d;
  for (std::size_t v = 0; v < n; ++v) {
    std::string label(d, '0');
    for (std::size_t b = 0; b < d; ++b) {
      if ((v >> b) & 1U) label[d - 1 - b] = '1';
    }
    g.add_vertex(std::move(label), __builtin_popcountll(v) % 2 == 0 ? Side::X : Side::Y);
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t w = v ^ (std::size_t{1} << b);
      if (v < w) g.add_edge(v, w);
    }
  }
  return g;
}

/// K_2 is Q_1, labelled "0" (X) and "1" (Y).
inline BipartiteGraph k2() { return hypercube(1); }

/// Folded hypercube FQ_d: Q_d plus an edge between every pair of antipodal
/// vertices. Bipartite only for odd d.
inline BipartiteGraph folded_hypercube(std::size_t d) {
  if (d % 2 == 0) throw NotBipartite("folded hypercube FQ_" + std::to_string(d) + " is not bipartite for even d");
  BipartiteGraph g = hypercube(d);
  const std::size_t n = std::size_t{1} << d;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t w = v ^ (n - 1);
    if (v < w && !g.has_edge(v, w)) g.add_edge(v, w);
  }
  return g;
}

/// C_{2n}[2]: each vertex c_i of C_{2n} is replaced by two copies "c{i}.0",
/// "c{i}.1"; copies of adjacent cycle vertices are all joined.
inline BipartiteGraph blowup_cycle(std::size_t n) {
  if (n < 2) throw PreconditionError("blowup_cycle needs n >= 2 (cycle C_{2n} with 2n >= 4)");
  const std::size_t len = 2 * n;
  BipartiteGraph g;
  for (std::size_t i = 0; i < len; ++i) {
    for (int a = 0; a < 2; ++a) {
      g.add_vertex("c" + std::to_string(i) + "." + std::to_string(a), i % 2 == 0 ? Side::X : Side::Y);
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t j = (i + 1) % len;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) g.add_edge(2 * i + a, 2 * j + b);
  }
  return g;
}

/// BCP(n): K_{n,n} with the matching {x_i y_i} removed. Labels as in
/// complete_bipartite.
inline BipartiteGraph bcp(std::size_t n) {
  if (n == 0) throw PreconditionError("bcp needs n >= 1");
  BipartiteGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("x" + std::to_string(i), Side::X);
  for (std::size_t j = 0; j < n; ++j) g.add_vertex("y" + std::to_string(j), Side::Y);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) g.add_edge(i, n + j);
  return g;
}

/// Signed graph S14 on x0..x6, y0..y6 (indices mod 7): x_i is joined to
/// y_i, y_{i+1}, y_{i+3} by positive edges and to y_{i-1} by a negative edge.
inline BipartiteGraph s14() {
  BipartiteGraph g;
  for (int i = 0; i < 7; ++i) g.add_vertex("x" + std::to_string(i), Side::X);
  for (int i = 0; i < 7; ++i) g.add_vertex("y" + std::to_string(i), Side::Y);
  for (int i = 0; i < 7; ++i) {
    for (int step : {0, 1, 3}) g.add_edge(i, 7 + (i + step) % 7, +1);
    g.add_edge(i, 7 + (i + 6) % 7, -1);
  }
  g.set_signed(true);
  return g;
}

/// G': K_{7,7} on x0..x6, y0..y6 minus the 8 pairs where the literal G'
/// weight table is zero.
inline BipartiteGraph g_prime() {
  BipartiteGraph g;
  for (int i = 0; i < 7; ++i) g.add_vertex("x" + std::to_string(i), Side::X);
  for (int i = 0; i < 7; ++i) g.add_vertex("y" + std::to_string(i), Side::Y);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      const auto& e = data::kGPrime[i][j];
      if (e.rational != 0 || e.surd != 0) g.add_edge(i, 7 + j);
    }
  }
  return g;
}

/// Complete graph K_n on v0..v{n-1} (not bipartite for n >= 3).
inline SimpleGraph complete_graph(std::size_t n) {
  SimpleGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

/// Cycle C_n on v0..v{n-1}, any n >= 3.
inline SimpleGraph simple_cycle(std::size_t n) {
  if (n < 3) throw PreconditionError("cycle length must be at least 3");
  SimpleGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

}  // namespace forcecert
