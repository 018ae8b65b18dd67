#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/graphs/bipartite_graph.hpp"

namespace forcecert {

/// 2-colors a simple graph. Within each component the smallest vertex id is
/// put on X. Throws NotBipartite on an odd cycle.
inline BipartiteGraph two_color(const SimpleGraph& h) {
  std::vector<std::optional<Side>> side(h.order());
  for (Vertex s = 0; s < h.order(); ++s) {
    if (side[s]) continue;
    side[s] = Side::X;
    std::deque<Vertex> queue{s};
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : h.neighbors(v)) {
        if (!side[w]) {
          side[w] = opposite(*side[v]);
          queue.push_back(w);
        } else if (*side[w] == *side[v]) {
          throw NotBipartite("graph has an odd cycle through '" + h.label(v) + "'");
        }
      }
    }
  }
  BipartiteGraph g;
  for (Vertex v = 0; v < h.order(); ++v) g.add_vertex(h.label(v), *side[v]);
  for (Vertex v = 0; v < h.order(); ++v) {
    for (Vertex w : h.neighbors(v)) {
      if (v < w) g.add_edge(v, w);
    }
  }
  return g;
}

/// G □ H. Vertex (g, h) gets id g * |V(H)| + h (row-major), label "(lg,lh)"
/// and side side_G(g) XOR side_H(h).
inline BipartiteGraph cartesian_product(const BipartiteGraph& g, const BipartiteGraph& h) {
  BipartiteGraph out;
  ProductInfo info{g.order(), h.order(), {}};
  info.components.reserve(g.order() * h.order());
  for (Vertex a = 0; a < g.order(); ++a) {
    for (Vertex b = 0; b < h.order(); ++b) {
      const Side s = g.side(a) == h.side(b) ? Side::X : Side::Y;
      out.add_vertex("(" + g.label(a) + "," + h.label(b) + ")", s);
      info.components.push_back({a, b});
    }
  }
  const std::size_t n = h.order();
  for (Vertex a = 0; a < g.order(); ++a) {
    for (Vertex b = 0; b < n; ++b) {
      const Vertex v = a * n + b;
      for (Vertex a2 : g.neighbors(a)) {
        if (a < a2) out.add_edge(v, a2 * n + b);
      }
      for (Vertex b2 : h.neighbors(b)) {
        if (b < b2) out.add_edge(v, a * n + b2);
      }
    }
  }
  out.set_product_info(std::move(info));
  return out;
}

/// G □ H for a factor given without a bipartition; H is 2-colored first.
inline BipartiteGraph cartesian_product(const BipartiteGraph& g, const SimpleGraph& h) {
  return cartesian_product(g, two_color(h));
}

/// bd(G) = G × K2: vertices (v,0) on X and (v,1) on Y, labelled "(v,0)" and
/// "(v,1)"; (u,0) ~ (v,1) iff u ~ v. Ids: all (v,0) first, then all (v,1).
inline BipartiteGraph bipartite_double(const SimpleGraph& g) {
  BipartiteGraph out;
  const std::size_t n = g.order();
  for (Vertex v = 0; v < n; ++v) out.add_vertex("(" + g.label(v) + ",0)", Side::X);
  for (Vertex v = 0; v < n; ++v) out.add_vertex("(" + g.label(v) + ",1)", Side::Y);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) out.add_edge(u, n + v);
  }
  return out;
}

/// Induced subgraph on V(G) \ D, keeping the relative vertex order. Every
/// vertex of D must lie on the X side.
inline BipartiteGraph delete_x_vertices(const BipartiteGraph& g, std::span<const Vertex> removed) {
  std::vector<bool> drop(g.order(), false);
  for (Vertex v : removed) {
    if (v >= g.order()) throw PreconditionError("vertex id out of range");
    if (g.side(v) != Side::X) throw PreconditionError("cannot delete Y-vertex '" + g.label(v) + "': only X-vertices");
    drop[v] = true;
  }
  BipartiteGraph out;
  std::vector<Vertex> remap(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!drop[v]) remap[v] = out.add_vertex(g.label(v), g.side(v));
  }
  for (const Edge& e : g.edges()) {
    if (!drop[e.x] && !drop[e.y]) out.add_edge(remap[e.x], remap[e.y], g.sign(e.x, e.y));
  }
  out.set_signed(g.is_signed());
  return out;
}

inline BipartiteGraph delete_x_vertices(const BipartiteGraph& g, const std::vector<std::string>& labels) {
  std::vector<Vertex> ids;
  for (const auto& l : labels) ids.push_back(g.at(l));
  return delete_x_vertices(g, std::span<const Vertex>(ids));
}

/// Union of graphs whose Y-sides are pairwise disjoint. X-vertices with equal
/// labels are identified. Vertex order: first appearance across the parts.
inline BipartiteGraph union_graph(std::span<const BipartiteGraph> parts) {
  BipartiteGraph out;
  std::set<std::string> seen_y;
  for (const BipartiteGraph& part : parts) {
    for (Vertex v = 0; v < part.order(); ++v) {
      const std::string& l = part.label(v);
      if (part.side(v) == Side::Y) {
        if (!seen_y.insert(l).second || out.find(l)) {
          throw PreconditionError("Y-vertex '" + l + "' appears in more than one part");
        }
        out.add_vertex(l, Side::Y);
      } else if (auto existing = out.find(l)) {
        if (out.side(*existing) != Side::X) throw PreconditionError("label '" + l + "' used on both sides");
      } else {
        out.add_vertex(l, Side::X);
      }
    }
    for (const Edge& e : part.edges()) out.add_edge(part.label(e.x), part.label(e.y), part.sign(e.x, e.y));
  }
  return out;
}

/// Copy of G with every label passed through `rename`.
inline BipartiteGraph relabeled(const BipartiteGraph& g, const std::function<std::string(const std::string&)>& rename) {
  BipartiteGraph out;
  for (Vertex v = 0; v < g.order(); ++v) out.add_vertex(rename(g.label(v)), g.side(v));
  for (const Edge& e : g.edges()) out.add_edge(e.x, e.y, g.sign(e.x, e.y));
  out.set_signed(g.is_signed());
  return out;
}

}  // namespace forcecert
