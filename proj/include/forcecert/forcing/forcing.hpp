#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "forcecert/errors.hpp"
#include "forcecert/forcing/matching.hpp"
#include "forcecert/graphs/bipartite_graph.hpp"

namespace forcecert {

enum class ForcingOutcome {
  Exhaustive,         // every perfect matching examined
  BoundMet,           // stopped early because the minimum met `known_lower`
  Truncated,          // enumeration hit the cap
  NoPerfectMatching,
};

inline std::string outcome_name(ForcingOutcome o) {
  switch (o) {
    case ForcingOutcome::Exhaustive: return "exhaustive";
    case ForcingOutcome::BoundMet: return "bound-met";
    case ForcingOutcome::Truncated: return "truncated";
    case ForcingOutcome::NoPerfectMatching: return "no-perfect-matching";
  }
  return "?";
}

struct ForcingTableRow {
  Matching matching;
  std::size_t value = 0;
};

struct ForcingReport {
  ForcingOutcome outcome = ForcingOutcome::NoPerfectMatching;
  std::size_t lower = 0;
  std::string lower_kind = "trivial";  // "trivial", "rank" or "exhaustive"
  std::optional<std::size_t> upper;
  Matching upper_matching;  // perfect matching attaining `upper`
  Matching upper_forcing;   // forcing set of that size
  std::optional<std::size_t> exact;
  std::size_t matchings_examined = 0;
  std::vector<ForcingTableRow> table;  // filled when requested
};

struct OracleOptions {
  std::optional<std::size_t> known_lower;
  std::size_t cap = kUnlimited;  // perfect matchings to enumerate
  bool full_table = false;       // exact f(G, M) for every M
  bool prune = true;
};

/// f(G) as the minimum of f(G, M) over enumerated perfect matchings. Without
/// a full table, each M is only searched below the running minimum.
inline ForcingReport minimum_forcing_number(const BipartiteGraph& g, const OracleOptions& opt = {}) {
  ForcingReport report;
  if (opt.known_lower) {
    report.lower = *opt.known_lower;
    report.lower_kind = "rank";
  }
  const MatchingList all = enumerate_perfect_matchings(g, opt.cap);
  if (all.matchings.empty()) {
    report.outcome = all.truncated ? ForcingOutcome::Truncated : ForcingOutcome::NoPerfectMatching;
    return report;
  }
  for (const Matching& m : all.matchings) {
    ++report.matchings_examined;
    const std::size_t limit = opt.full_table || !report.upper ? kUnlimited : *report.upper;
    MatchingForcing f = forcing_number_of_matching(g, m, opt.prune, limit);
    if (opt.full_table) report.table.push_back({m, f.value});
    if (f.exact && (!report.upper || f.value < *report.upper)) {
      report.upper = f.value;
      report.upper_matching = m;
      report.upper_forcing = f.witness;
    }
    if (opt.known_lower && report.upper && *report.upper == *opt.known_lower) {
      report.outcome = ForcingOutcome::BoundMet;
      report.exact = report.upper;
      return report;
    }
  }
  if (all.truncated) {
    report.outcome = ForcingOutcome::Truncated;
    return report;
  }
  report.outcome = ForcingOutcome::Exhaustive;
  report.exact = report.upper;
  report.lower = *report.upper;
  report.lower_kind = "exhaustive";
  return report;
}

/// The matching used as an upper-bound certificate on a product, plus its
/// verified unique extension.
struct UpperCertificate {
  Matching matching;
  PmOutcome extension_outcome = PmOutcome::None;
  Matching extension;  // the full perfect matching when unique
  bool verified() const { return extension_outcome == PmOutcome::Unique; }
};

namespace detail {

inline UpperCertificate verify_upper(const BipartiteGraph& product, Matching m) {
  UpperCertificate out;
  out.matching = normalized(product, std::move(m));
  std::vector<char> removed(product.order(), 0);
  for (const Edge& e : out.matching) {
    if (!product.has_edge(e.x, e.y) || removed[e.x] || removed[e.y]) {
      throw PreconditionError("upper matching is not a matching of the product");
    }
    removed[e.x] = removed[e.y] = 1;
  }
  UniquenessResult u = has_unique_pm(product, removed);
  out.extension_outcome = u.outcome;
  if (u.outcome == PmOutcome::Unique) {
    out.extension = out.matching;
    out.extension.insert(out.extension.end(), u.forced.begin(), u.forced.end());
    std::sort(out.extension.begin(), out.extension.end());
  }
  return out;
}

inline const ProductInfo& product_of(const BipartiteGraph& base, const BipartiteGraph& product) {
  const auto& info = product.product_info();
  if (!info || info->left_order != base.order()) throw PreconditionError("graph is not a product over this base graph");
  return *info;
}

}  // namespace detail

/// G □ C_{2k}: X_1 matched to X_2 and Y_1 to Y_{2k}, copy i being cycle
/// vertex c_{i-1}. Size |V(G)|.
inline UpperCertificate circular_upper_matching(const BipartiteGraph& base, const BipartiteGraph& product) {
  const ProductInfo& info = detail::product_of(base, product);
  const std::size_t len = info.right_order;
  if (len < 4 || len % 2 != 0) throw PreconditionError("right factor is not an even cycle");
  Matching m;
  for (Vertex g = 0; g < base.order(); ++g) {
    const Vertex first = g * len;
    const Vertex other = base.side(g) == Side::X ? g * len + 1 : g * len + len - 1;
    m.push_back({first, other});
  }
  return detail::verify_upper(product, std::move(m));
}

/// G □ K2: X_1 matched to X_2. Size |X|.
inline UpperCertificate prism_upper_matching(const BipartiteGraph& base, const BipartiteGraph& product) {
  const ProductInfo& info = detail::product_of(base, product);
  if (info.right_order != 2) throw PreconditionError("right factor is not K2");
  Matching m;
  for (Vertex g : base.side_vertices(Side::X)) m.push_back({g * 2, g * 2 + 1});
  return detail::verify_upper(product, std::move(m));
}

}  // namespace forcecert
