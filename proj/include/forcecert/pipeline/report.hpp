#pragma once

#include <string>
#include <vector>

#include "forcecert/forcing/forcing.hpp"
#include "forcecert/graphs/bipartite_graph.hpp"
#include "forcecert/matrices/block_matrix.hpp"
#include "forcecert/matrices/certificate_io.hpp"
#include "forcecert/rank/dependency.hpp"
#include "forcecert/rank/rank.hpp"

namespace forcecert {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "forcecert-report/1";

/// Exit-code contract shared by the CLI and the suite.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitPrecondition = 3,
  kExitVerification = 4,
  kExitTruncated = 5,
  kExitInconclusive = 6,
};

inline OrderedJson matching_json(const BipartiteGraph& g, const Matching& m) {
  OrderedJson out = OrderedJson::array();
  for (const Edge& e : m) out.push_back(OrderedJson::array({g.label(e.x), g.label(e.y)}));
  return out;
}

inline OrderedJson graph_summary(const BipartiteGraph& g) {
  OrderedJson out;
  out["order"] = g.order();
  out["edges"] = g.size();
  out["x"] = g.side_size(Side::X);
  out["y"] = g.side_size(Side::Y);
  return out;
}

inline OrderedJson rank_json(const RankCertificate& r) {
  OrderedJson out;
  out["field"] = r.field;
  out["rows"] = r.rows;
  out["cols"] = r.cols;
  out["rank"] = r.rank;
  out["corank"] = r.corank;
  out["pivots"] = r.pivots;
  return out;
}

inline OrderedJson grid_json(const BlockMatrix& r) {
  OrderedJson out;
  out["case"] = case_name(r.kind);
  out["k"] = r.k;
  OrderedJson rows = OrderedJson::array();
  for (const auto& row : r.grid) {
    OrderedJson line = OrderedJson::array();
    for (BlockTag t : row) line.push_back(tag_name(t));
    rows.push_back(std::move(line));
  }
  out["blocks"] = std::move(rows);
  return out;
}

template <Field F>
OrderedJson residual_json(const DependencyResidual<F>& r) {
  OrderedJson out;
  out["zero"] = r.is_zero();
  if (r.first_nonzero) {
    out["first_nonzero"] = {{"block", r.first_nonzero->block},
                            {"row", r.first_nonzero->row},
                            {"col", r.first_nonzero->col},
                            {"value", r.first_nonzero->value}};
  } else {
    out["first_nonzero"] = nullptr;
  }
  return out;
}

inline OrderedJson upper_json(const BipartiteGraph& product, const UpperCertificate& u) {
  OrderedJson out;
  out["size"] = u.matching.size();
  out["extension"] = outcome_name(u.extension_outcome);
  out["matching"] = matching_json(product, u.matching);
  return out;
}

inline OrderedJson forcing_json(const BipartiteGraph& g, const ForcingReport& r) {
  OrderedJson out;
  out["outcome"] = outcome_name(r.outcome);
  out["lower"] = r.lower;
  out["lower_kind"] = r.lower_kind;
  out["upper"] = r.upper ? OrderedJson(*r.upper) : OrderedJson(nullptr);
  out["exact"] = r.exact ? OrderedJson(*r.exact) : OrderedJson(nullptr);
  out["matchings_examined"] = r.matchings_examined;
  out["witness_matching"] = matching_json(g, r.upper_matching);
  out["witness_forcing_set"] = matching_json(g, r.upper_forcing);
  if (!r.table.empty()) {
    OrderedJson table = OrderedJson::array();
    for (const auto& row : r.table) table.push_back({{"matching", matching_json(g, row.matching)}, {"f", row.value}});
    out["table"] = std::move(table);
  }
  return out;
}

}  // namespace forcecert
