#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forcecert/errors.hpp"

namespace forcecert {

enum class Side : std::uint8_t { X, Y };

inline Side opposite(Side s) { return s == Side::X ? Side::Y : Side::X; }
inline char side_char(Side s) { return s == Side::X ? 'X' : 'Y'; }

using Vertex = std::size_t;

/// An edge with its X-side endpoint first.
struct Edge {
  Vertex x;
  Vertex y;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Components (g, h) of a vertex of a Cartesian product G □ H.
struct ProductLabel {
  Vertex first;
  Vertex second;
  friend bool operator==(const ProductLabel&, const ProductLabel&) = default;
};

/// Provenance of a graph built by cartesian_product. Vertex (g, h) has id
/// g * right_order + h.
struct ProductInfo {
  std::size_t left_order = 0;
  std::size_t right_order = 0;
  std::vector<ProductLabel> components;
};

/// Simple bipartite graph with an explicit side for every vertex. Vertex ids
/// are dense and assigned in insertion order; labels are unique. Edges may
/// carry a sign (+1 / -1) for signed graphs; the sign never affects matching
/// computations.
class BipartiteGraph {
 public:
  Vertex add_vertex(std::string label, Side side) {
    if (label.empty() || label.find_first_of(" \t\r\n") != std::string::npos) {
      throw PreconditionError("vertex labels must be nonempty and free of whitespace: '" + label + "'");
    }
    auto [it, inserted] = index_.emplace(label, labels_.size());
    if (!inserted) throw PreconditionError("duplicate vertex label '" + label + "'");
    labels_.push_back(std::move(label));
    sides_.push_back(side);
    adjacency_.emplace_back();
    return labels_.size() - 1;
  }

  void add_edge(Vertex u, Vertex v, int sign = 1) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw PreconditionError("loop at '" + labels_[u] + "'");
    if (sides_[u] == sides_[v]) {
      throw NotBipartite("edge " + labels_[u] + "-" + labels_[v] + " joins two " + side_char(sides_[u]) +
                         "-vertices");
    }
    if (has_edge(u, v)) throw PreconditionError("duplicate edge " + labels_[u] + "-" + labels_[v]);
    if (sign != 1 && sign != -1) throw PreconditionError("edge sign must be +1 or -1");
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
    Edge e = sides_[u] == Side::X ? Edge{u, v} : Edge{v, u};
    edges_.push_back(e);
    if (sign < 0) {
      negative_.emplace(std::make_pair(e.x, e.y), true);
      is_signed_ = true;
    }
  }

  void add_edge(std::string_view u, std::string_view v, int sign = 1) { add_edge(at(u), at(v), sign); }

  /// Marks the graph as signed even if every stored sign is positive.
  void set_signed(bool s) { is_signed_ = s || !negative_.empty(); }

  std::size_t order() const { return labels_.size(); }
  std::size_t size() const { return edges_.size(); }

  const std::string& label(Vertex v) const { return labels_.at(v); }
  Side side(Vertex v) const { return sides_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }

  std::optional<Vertex> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Vertex at(std::string_view label) const {
    auto v = find(label);
    if (!v) throw PreconditionError("unknown vertex '" + std::string(label) + "'");
    return *v;
  }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& a = adjacency_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  int sign(Vertex u, Vertex v) const {
    if (!has_edge(u, v)) throw PreconditionError("no edge " + labels_[u] + "-" + labels_[v]);
    Edge e = sides_[u] == Side::X ? Edge{u, v} : Edge{v, u};
    return negative_.contains({e.x, e.y}) ? -1 : 1;
  }

  bool is_signed() const { return is_signed_; }

  /// Edges sorted by (x, y).
  std::vector<Edge> edges() const {
    std::vector<Edge> out = edges_;
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Vertices of one side in id order.
  std::vector<Vertex> side_vertices(Side s) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < order(); ++v) {
      if (sides_[v] == s) out.push_back(v);
    }
    return out;
  }

  std::size_t side_size(Side s) const {
    return static_cast<std::size_t>(std::count(sides_.begin(), sides_.end(), s));
  }

  bool is_balanced() const { return side_size(Side::X) == side_size(Side::Y); }

  const std::optional<ProductInfo>& product_info() const { return product_; }
  void set_product_info(ProductInfo info) { product_ = std::move(info); }

  /// Checks that the stored sides form a proper 2-coloring.
  bool audit_bipartition() const {
    for (const Edge& e : edges_) {
      if (sides_[e.x] != Side::X || sides_[e.y] != Side::Y) return false;
    }
    for (Vertex v = 0; v < order(); ++v) {
      for (Vertex w : adjacency_[v]) {
        if (sides_[v] == sides_[w]) return false;
      }
    }
    return true;
  }

  /// Same vertex ids, sides and edge set (labels and signs ignored).
  bool same_structure(const BipartiteGraph& o) const {
    return sides_ == o.sides_ && adjacency_ == o.adjacency_;
  }

 private:
  void check_vertex(Vertex v) const {
    if (v >= order()) throw PreconditionError("vertex id out of range");
  }

  static void insert_sorted(std::vector<Vertex>& a, Vertex v) { a.insert(std::lower_bound(a.begin(), a.end(), v), v); }

  std::vector<std::string> labels_;
  std::vector<Side> sides_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
  std::map<std::pair<Vertex, Vertex>, bool> negative_;
  std::unordered_map<std::string, Vertex> index_;
  std::optional<ProductInfo> product_;
  bool is_signed_ = false;
};

/// Undirected simple graph without a bipartition, used as input to
/// bipartite_double and as a product factor that still has to be 2-colored.
class SimpleGraph {
 public:
  Vertex add_vertex(std::string label) {
    auto [it, inserted] = index_.emplace(label, labels_.size());
    if (!inserted) throw PreconditionError("duplicate vertex label '" + label + "'");
    labels_.push_back(std::move(label));
    adjacency_.emplace_back();
    return labels_.size() - 1;
  }

  void add_edge(Vertex u, Vertex v) {
    if (u == v) throw PreconditionError("loop at '" + labels_.at(u) + "'");
    auto& a = adjacency_.at(u);
    if (std::binary_search(a.begin(), a.end(), v)) return;
    a.insert(std::lower_bound(a.begin(), a.end(), v), v);
    auto& b = adjacency_.at(v);
    b.insert(std::lower_bound(b.begin(), b.end(), u), u);
    ++size_;
  }

  std::size_t order() const { return labels_.size(); }
  std::size_t size() const { return size_; }
  const std::string& label(Vertex v) const { return labels_.at(v); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
  bool has_edge(Vertex u, Vertex v) const {
    const auto& a = adjacency_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  static SimpleGraph from(const BipartiteGraph& g) {
    SimpleGraph s;
    for (Vertex v = 0; v < g.order(); ++v) s.add_vertex(g.label(v));
    for (const Edge& e : g.edges()) s.add_edge(e.x, e.y);
    return s;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::unordered_map<std::string, Vertex> index_;
  std::size_t size_ = 0;
};

}  // namespace forcecert
