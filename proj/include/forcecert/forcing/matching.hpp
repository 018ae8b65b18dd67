#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/graphs/bipartite_graph.hpp"

namespace forcecert {

/// Edge list sorted by (x, y), x on the X side.
using Matching = std::vector<Edge>;

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

struct MatchingList {
  std::vector<Matching> matchings;
  bool truncated = false;
};

/// Checks that M is a set of vertex-disjoint host edges covering every vertex.
inline bool is_perfect_matching(const BipartiteGraph& g, const Matching& m) {
  std::vector<int> covered(g.order(), 0);
  for (const Edge& e : m) {
    if (e.x >= g.order() || e.y >= g.order() || !g.has_edge(e.x, e.y)) return false;
    if (covered[e.x]++ || covered[e.y]++) return false;
  }
  return std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; });
}

inline Matching normalized(const BipartiteGraph& g, Matching m) {
  for (Edge& e : m) {
    if (g.side(e.x) != Side::X) std::swap(e.x, e.y);
  }
  std::sort(m.begin(), m.end());
  return m;
}

/// All perfect matchings in lexicographic order of their sorted edge lists,
/// stopping after `cap`. Unbalanced or odd graphs give an empty list.
inline MatchingList enumerate_perfect_matchings(const BipartiteGraph& g, std::size_t cap = kUnlimited) {
  MatchingList out;
  if (g.order() % 2 != 0 || !g.is_balanced()) return out;
  const auto xs = g.side_vertices(Side::X);
  std::vector<char> used(g.order(), 0);
  Matching current;
  current.reserve(xs.size());

  // A free Y vertex with no free X neighbor cannot be covered any more.
  auto dead_end = [&](std::size_t next) {
    std::vector<char> free_x(g.order(), 0);
    for (std::size_t i = next; i < xs.size(); ++i) free_x[xs[i]] = 1;
    for (Vertex y = 0; y < g.order(); ++y) {
      if (g.side(y) != Side::Y || used[y]) continue;
      bool reachable = false;
      for (Vertex x : g.neighbors(y)) reachable = reachable || free_x[x];
      if (!reachable) return true;
    }
    return false;
  };

  auto recurse = [&](auto&& self, std::size_t i) -> bool {
    if (i == xs.size()) {
      if (out.matchings.size() >= cap) {
        out.truncated = true;
        return false;
      }
      out.matchings.push_back(current);
      return true;
    }
    if (dead_end(i)) return true;
    const Vertex x = xs[i];
    for (Vertex y : g.neighbors(x)) {
      if (used[y]) continue;
      used[y] = 1;
      current.push_back({x, y});
      const bool go_on = self(self, i + 1);
      current.pop_back();
      used[y] = 0;
      if (!go_on) return false;
    }
    return true;
  };
  recurse(recurse, 0);
  return out;
}

enum class PmOutcome { Unique, Multiple, None };

inline std::string outcome_name(PmOutcome o) {
  switch (o) {
    case PmOutcome::Unique: return "unique";
    case PmOutcome::Multiple: return "multiple";
    case PmOutcome::None: return "none";
  }
  return "?";
}

struct UniquenessResult {
  PmOutcome outcome = PmOutcome::None;
  Matching forced;  // edges committed by peeling; the matching when unique
};

namespace detail {

/// Maximum matching size on the live vertices (augmenting paths from X).
inline std::size_t live_matching_size(const BipartiteGraph& g, const std::vector<char>& live) {
  std::vector<std::optional<Vertex>> mate(g.order());
  std::size_t size = 0;
  for (Vertex x = 0; x < g.order(); ++x) {
    if (!live[x] || g.side(x) != Side::X) continue;
    std::vector<char> seen(g.order(), 0);
    auto augment = [&](auto&& self, Vertex u) -> bool {
      for (Vertex y : g.neighbors(u)) {
        if (!live[y] || seen[y]) continue;
        seen[y] = 1;
        if (!mate[y] || self(self, *mate[y])) {
          mate[y] = u;
          return true;
        }
      }
      return false;
    };
    if (augment(augment, x)) ++size;
  }
  return size;
}

}  // namespace detail

/// Degree-one peeling on G minus the vertices with removed[v] set. Unique
/// when peeling empties the graph. If it stalls with every live degree at
/// least 2, a bipartite graph cannot have a unique perfect matching, so a
/// matching check separates Multiple from None.
inline UniquenessResult has_unique_pm(const BipartiteGraph& g, const std::vector<char>& removed) {
  UniquenessResult res;
  std::vector<char> live(g.order(), 1);
  std::vector<std::size_t> degree(g.order(), 0);
  std::size_t remaining = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (v < removed.size() && removed[v]) live[v] = 0;
  }
  std::size_t live_x = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!live[v]) continue;
    ++remaining;
    live_x += g.side(v) == Side::X ? 1 : 0;
    for (Vertex w : g.neighbors(v)) degree[v] += live[w] ? 1 : 0;
  }
  if (2 * live_x != remaining) return res;

  std::deque<Vertex> queue;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!live[v]) continue;
    if (degree[v] == 0) return res;
    if (degree[v] == 1) queue.push_back(v);
  }
  auto kill = [&](Vertex v) {
    live[v] = 0;
    --remaining;
    for (Vertex w : g.neighbors(v)) {
      if (!live[w]) continue;
      if (--degree[w] == 1) queue.push_back(w);
    }
  };
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (!live[v]) continue;
    if (degree[v] == 0) return res;
    Vertex u = v;
    for (Vertex w : g.neighbors(v)) {
      if (live[w]) {
        u = w;
        break;
      }
    }
    res.forced.push_back(g.side(v) == Side::X ? Edge{v, u} : Edge{u, v});
    kill(v);
    kill(u);
    for (Vertex w : g.neighbors(u)) {
      if (live[w] && degree[w] == 0) return res;
    }
  }
  std::sort(res.forced.begin(), res.forced.end());
  if (remaining == 0) {
    res.outcome = PmOutcome::Unique;
    return res;
  }
  res.outcome = 2 * detail::live_matching_size(g, live) == remaining ? PmOutcome::Multiple : PmOutcome::None;
  return res;
}

inline UniquenessResult has_unique_pm(const BipartiteGraph& g) { return has_unique_pm(g, {}); }

/// S is forcing for M iff G - V(S) has a unique perfect matching.
inline bool is_forcing(const BipartiteGraph& g, const Matching& m, const Matching& s) {
  const Matching mm = normalized(g, m);
  if (!is_perfect_matching(g, mm)) throw PreconditionError("M is not a perfect matching of the graph");
  std::vector<char> removed(g.order(), 0);
  for (const Edge& e : normalized(g, s)) {
    if (!std::binary_search(mm.begin(), mm.end(), e)) throw PreconditionError("S is not a subset of M");
    removed[e.x] = removed[e.y] = 1;
  }
  return has_unique_pm(g, removed).outcome == PmOutcome::Unique;
}

/// Greedy packing of vertex-disjoint M-alternating 4- and 6-cycles, scanning
/// M-edge index tuples in lexicographic order. A forcing set meets every
/// M-alternating cycle, so the count is a lower bound on f(G, M).
inline std::size_t alternating_cycle_packing(const BipartiteGraph& g, const Matching& m) {
  const std::size_t n = m.size();
  std::vector<char> taken(n, 0);
  std::size_t count = 0;
  auto adj = [&](std::size_t a, std::size_t b) { return g.has_edge(m[a].x, m[b].y); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && !taken[i]; ++j) {
      if (!taken[j] && adj(i, j) && adj(j, i)) {
        taken[i] = taken[j] = 1;
        ++count;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n && !taken[i]; ++j) {
      if (j == i || taken[j]) continue;
      for (std::size_t k = 0; k < n && !taken[i]; ++k) {
        if (k == i || k == j || taken[k]) continue;
        if (adj(i, j) && adj(j, k) && adj(k, i)) {
          taken[i] = taken[j] = taken[k] = 1;
          ++count;
        }
      }
    }
  }
  return count;
}

struct MatchingForcing {
  std::size_t value = 0;     // f(G, M), or `limit` when cut off
  bool exact = true;         // false when the search stopped at `limit`
  Matching witness;          // a minimum forcing set when exact
  std::size_t cycle_bound = 0;
};

/// f(G, M): smallest |S| with S forcing, sizes in increasing order and
/// subsets of each size in lexicographic order of M's edge indices. Sizes at
/// or above `limit` are not searched.
inline MatchingForcing forcing_number_of_matching(const BipartiteGraph& g, const Matching& m, bool prune = true,
                                                  std::size_t limit = kUnlimited) {
  const Matching mm = normalized(g, m);
  if (!is_perfect_matching(g, mm)) throw PreconditionError("M is not a perfect matching of the graph");
  MatchingForcing res;
  res.cycle_bound = prune ? alternating_cycle_packing(g, mm) : 0;
  const std::size_t n = mm.size();
  const std::size_t top = std::min(n, limit == kUnlimited ? n : limit - 1);
  if (limit != kUnlimited && res.cycle_bound >= limit) {
    res.value = limit;
    res.exact = false;
    return res;
  }
  std::vector<char> removed(g.order(), 0);
  std::vector<std::size_t> pick;
  for (std::size_t size = res.cycle_bound; size <= top; ++size) {
    pick.resize(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::fill(removed.begin(), removed.end(), 0);
      for (std::size_t i : pick) removed[mm[i].x] = removed[mm[i].y] = 1;
      if (has_unique_pm(g, removed).outcome == PmOutcome::Unique) {
        res.value = size;
        for (std::size_t i : pick) res.witness.push_back(mm[i]);
        return res;
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  // Only reachable when cut off: M itself is always forcing.
  res.value = limit;
  res.exact = false;
  return res;
}

}  // namespace forcecert
