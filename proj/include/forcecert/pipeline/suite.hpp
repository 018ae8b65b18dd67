#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "forcecert/pipeline/certify.hpp"
#include "forcecert/pipeline/properties.hpp"

namespace forcecert {

struct CellResult {
  bool passed = false;
  std::string stage;  // where a failing cell stopped
  std::string detail;

  static CellResult pass(std::string detail) { return {true, "", std::move(detail)}; }
  static CellResult fail(std::string stage, std::string detail) { return {false, std::move(stage), std::move(detail)}; }
};

struct SuiteCell {
  std::string id;
  int criterion = 0;  // 0 for fixtures outside the acceptance grid
  std::vector<std::string> tags;
  bool in_default = true;
  std::string repro;
  std::function<CellResult()> run;
};

struct SuiteOptions {
  std::vector<std::string> filter;  // ids, id prefixes or tags; empty or "default" for the acceptance grid
  std::size_t jobs = 1;
  std::uint64_t seed = 1;
};

struct CellRecord {
  std::string id;
  int criterion = 0;
  std::vector<std::string> tags;
  std::string repro;
  CellResult result;
  double millis = 0;
};

struct SuiteOutcome {
  int exit_code = kExitOk;
  std::vector<CellRecord> cells;
  std::size_t passed = 0;
  std::size_t failed = 0;
  OrderedJson document;
  OrderedJson timings_ms = OrderedJson::object();
};

namespace suite {

inline std::string suite_command(const std::string& filter, std::uint64_t seed) {
  return "forcecert verify-suite --grid '" + filter + "' --seed " + std::to_string(seed);
}

inline CellResult expect_oracle(const std::string& graph, std::size_t value) {
  OracleRequest req;
  req.graph = graph;
  OracleOutcome out = oracle(req);
  if (out.exit_code != kExitOk) return CellResult::fail("oracle", out.message);
  if (out.report.outcome != ForcingOutcome::Exhaustive || !out.report.exact) {
    return CellResult::fail("oracle", "not closed by exhaustion");
  }
  if (*out.report.exact != value) {
    return CellResult::fail("oracle", "f = " + std::to_string(*out.report.exact) + ", expected " + std::to_string(value));
  }
  return CellResult::pass("oracle f = " + std::to_string(value) + " over " + std::to_string(out.report.matchings_examined) +
                          " perfect matchings");
}

/// EXACT verdict at `value`, with corank equal to the predicted value and,
/// for circular grids, zero dependency residuals.
inline CellResult expect_exact(const CertifyRequest& req, std::size_t value) {
  CertifyOutcome out = certify(req);
  if (out.exit_code != kExitOk) return CellResult::fail(out.halted_at.empty() ? "verdict" : out.halted_at, out.message);
  if (!out.exact() || *out.lower != value) {
    return CellResult::fail("verdict", out.verdict + " with lower " + std::to_string(*out.lower) + ", upper " +
                                           std::to_string(*out.upper) + ", expected " + std::to_string(value));
  }
  const OrderedJson& rank = out.document["rank"];
  if (rank["expected_corank"] != value) return CellResult::fail("rank", "predicted corank differs from " + std::to_string(value));
  if (req.k) {
    const OrderedJson& dep = out.document["dependency"];
    if (!dep["top"]["zero"].get<bool>() || !dep["bottom"]["zero"].get<bool>() || !dep["rank_within_bound"].get<bool>()) {
      return CellResult::fail("dependency", "identities not verified");
    }
  }
  return CellResult::pass("EXACT f = " + std::to_string(value) + " (" + rank["field"].get<std::string>() + ", corank " +
                          std::to_string(rank["corank"].get<std::size_t>()) + ")");
}

inline CellResult both(const std::function<CellResult()>& a, const std::function<CellResult()>& b) {
  CellResult first = a();
  if (!first.passed) return first;
  CellResult second = b();
  if (!second.passed) return second;
  return CellResult::pass(first.detail + "; " + second.detail);
}

inline CertifyRequest circular_request(const std::string& graph, std::size_t k, std::optional<FieldDescriptor> field = {}) {
  CertifyRequest req;
  req.graph = graph;
  req.k = k;
  req.field = std::move(field);
  return req;
}

inline CertifyRequest prism_request(const std::string& graph, std::optional<FieldDescriptor> field = {}) {
  CertifyRequest req;
  req.graph = graph;
  req.prism = true;
  req.field = std::move(field);
  return req;
}

/// K_{1,n} over Q(sqrt 2) with leaves renamed `prefix`0, `prefix`1, ...
inline RowInversePair<QuadraticElement> prefixed_star(std::size_t n, const std::string& prefix) {
  auto p = star_pair<QuadraticElement>(n, QuadraticField(2));
  GraphPtr host = share(relabeled(p.host(), [&](const std::string& l) { return l.front() == 'y' ? prefix + l.substr(1) : l; }));
  return {WeightedBiAdjacency<QuadraticElement>(host, p.b.row_order(), p.b.col_order(), p.b.matrix()),
          WeightedBiAdjacency<QuadraticElement>(host, p.c.row_order(), p.c.col_order(), p.c.matrix())};
}

inline CellResult union_of_stars() {
  std::vector<RowInversePair<QuadraticElement>> stars{prefixed_star(2, "a"), prefixed_star(3, "b")};
  RowInversePair<QuadraticElement> u = union_pair<QuadraticElement>(stars);
  CheckResult check = verify_certificate(u);
  if (!check.ok) return CellResult::fail("verify-certificate", check.what);
  const std::size_t x = u.host().side_size(Side::X);
  CertifyRequest req;
  req.prism = true;
  req.certificate = write_certificate(u);
  CellResult pipeline = expect_exact(req, x);
  if (!pipeline.passed) return pipeline;
  BipartiteGraph product = cartesian_product(u.host(), k2());
  if (product.order() > 12) return CellResult::fail("oracle", "instance has more than 12 vertices");
  ForcingReport r = minimum_forcing_number(product);
  if (!r.exact || *r.exact != x) return CellResult::fail("oracle", "oracle disagrees with |X| = " + std::to_string(x));
  return CellResult::pass(pipeline.detail + "; oracle f = " + std::to_string(x) + " on " + std::to_string(product.order()) +
                          " vertices");
}

inline CellResult fourier_prism(std::size_t m, std::size_t n) {
  const std::uint64_t p = smallest_prime_one_mod(n);
  std::vector<std::string> drop;
  for (std::size_t i = m; i < n; ++i) drop.push_back("x" + std::to_string(i));
  CertifyRequest req;
  req.graph = "Kmn:" + std::to_string(m) + "," + std::to_string(n);
  req.prism = true;
  req.certificate = write_certificate(delete_rows(fourier_pair(n, p), drop));
  return both([&] { return expect_exact(req, m); }, [&] { return expect_oracle("prod(" + req.graph + ";K2)", m); });
}

template <Field F>
bool times_transpose_is_identity(const Matrix<F>& b) {
  return (b * b.transpose()).is_identity();
}

inline CellResult property_cell(const std::function<std::vector<PropertyResult>()>& run) {
  std::ostringstream detail;
  for (const PropertyResult& r : run()) {
    if (!r.passed()) {
      return CellResult::fail(r.name, std::to_string(r.failures) + " of " + std::to_string(r.cases) + " failed, first: " +
                                          r.first_failure);
    }
    detail << r.name << " " << r.cases << "/" << r.cases << "; ";
  }
  std::string text = detail.str();
  if (text.size() >= 2) text.resize(text.size() - 2);
  return CellResult::pass(text);
}

inline bool selected(const SuiteCell& cell, const std::vector<std::string>& filter) {
  if (filter.empty()) return cell.in_default;
  for (const std::string& token : filter) {
    if (token == "all") return true;
    if (token == "default" && cell.in_default) return true;
    if (cell.id == token || cell.id.starts_with(token + "/")) return true;
    if (std::find(cell.tags.begin(), cell.tags.end(), token) != cell.tags.end()) return true;
  }
  return false;
}

}  // namespace suite

/// Every acceptance cell in a fixed order, followed by the fault fixtures
/// (which are expected to fail and are off by default).
inline std::vector<SuiteCell> suite_cells(std::uint64_t seed) {
  using namespace suite;
  std::vector<SuiteCell> cells;
  auto add = [&](std::string id, int criterion, std::vector<std::string> tags, std::function<CellResult()> run,
                 std::string repro = {}) {
    SuiteCell c{std::move(id), criterion, std::move(tags), true, std::move(repro), std::move(run)};
    if (c.repro.empty()) c.repro = suite_command(c.id, seed);
    cells.push_back(std::move(c));
  };

  add("hypercube/Q2", 1, {"hypercube", "oracle"}, [] { return expect_oracle("Q:2", 1); });
  add("hypercube/Q3", 1, {"hypercube", "oracle"}, [] { return expect_oracle("Q:3", 2); });

  for (std::size_t n : {2, 3}) {
    const std::string g = "Kmn:" + std::to_string(n) + "," + std::to_string(n);
    add("square-prism/" + g, 2, {"square-prism"},
        [g, n] { return both([&] { return expect_oracle("prod(" + g + ";K2)", n); }, [&] { return expect_exact(prism_request(g), n); }); },
        certify_command(prism_request(g)));
  }

  struct Base {
    std::string graph;
    FieldDescriptor field;
  };
  const std::vector<Base> bases{{"Kmn:2,2", RationalField{}}, {"Q:2", RationalField{}}, {"Kmn:3,3", PrimeField(7)},
                                {"s14", RationalField{}}};
  for (const Base& base : bases) {
    const std::size_t n = parse_family(base.graph).order();
    for (std::size_t k = 2; k <= 7; ++k) {
      CertifyRequest req = circular_request(base.graph, k, base.field);
      add("grid/" + base.graph + "/k=" + std::to_string(k), 3, {"grid", case_name(circular_case(k)), "circular"},
          [req, n] { return expect_exact(req, n); }, certify_command(req));
    }
  }

  add("closure/prod(Kmn:2,2;C:4)", 4, {"closure", "oracle"}, [] { return expect_oracle("prod(Kmn:2,2;C:4)", 4); },
      "forcecert oracle --graph 'prod(Kmn:2,2;C:4)'");

  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = 1; m <= n; ++m)
      add("kmn-prism/Kmn:" + std::to_string(m) + "," + std::to_string(n), 5, {"kmn-prism", "prism"},
          [m, n] { return fourier_prism(m, n); });

  for (std::size_t n = 1; n <= 5; ++n) {
    const std::string g = "star:" + std::to_string(n);
    CertifyRequest req = prism_request(g, PrimeField(7));
    add("star-prism/" + g, 6, {"star-prism", "prism"},
        [req, g] { return both([&] { return expect_exact(req, 1); }, [&] { return expect_oracle("prod(" + g + ";K2)", 1); }); },
        certify_command(req));
  }

  add("star-union", 7, {"star-union", "prism"}, [] { return union_of_stars(); });

  add("s14/prism", 8, {"s14", "prism"},
      [] {
        if (!times_transpose_is_identity(s14_certificate().b.matrix())) return CellResult::fail("certificate", "B B^T != I");
        return expect_exact(prism_request("s14"), 7);
      },
      certify_command(prism_request("s14")));

  add("gprime/k=2", 9, {"gprime", "circular", "case1"},
      [] {
        Matrix<QuadraticElement> b = gprime_table();
        b = b.scaled(QuadraticElement(b.field(), Rational(1, 18)));
        if (!times_transpose_is_identity(b)) return CellResult::fail("certificate", "(B/18)(B/18)^T != I");
        return expect_exact(circular_request("gprime", 2), 14);
      },
      certify_command(circular_request("gprime", 2)));

  add("properties/fields", 10, {"properties"}, [seed] { return property_cell([seed] { return properties::all_field_axioms(seed, 1000); }); });
  add("properties/rank", 10, {"properties"},
      [seed] { return property_cell([seed] { return std::vector<PropertyResult>{properties::rank_invariance(seed + 1, 200)}; }); });
  add("properties/peeling", 10, {"properties"},
      [] { return property_cell([] { return std::vector<PropertyResult>{properties::peeling_vs_counting()}; }); });
  add("properties/monotonicity", 10, {"properties"}, [seed] {
    return property_cell([seed] { return std::vector<PropertyResult>{properties::forcing_monotonicity(seed + 2, 100)}; });
  });

  for (Fault fault : {Fault::CorruptCertificate, Fault::NegateBlock}) {
    CertifyRequest req = circular_request("Kmn:2,2", 3);
    req.fault = fault;
    add("fault/" + fault_name(fault), 0, {"fault"}, [req] { return expect_exact(req, 4); }, certify_command(req));
    cells.back().in_default = false;
  }
  return cells;
}

/// Runs the selected cells on up to `jobs` threads. Results keep the cell
/// order whatever the completion order.
inline SuiteOutcome run_suite(const SuiteOptions& opt) {
  SuiteOutcome out;
  std::vector<SuiteCell> chosen;
  for (SuiteCell& c : suite_cells(opt.seed)) {
    if (suite::selected(c, opt.filter)) chosen.push_back(std::move(c));
  }
  std::string filter_text;
  for (const std::string& t : opt.filter) filter_text += (filter_text.empty() ? "" : ",") + t;
  if (filter_text.empty()) filter_text = "default";

  out.cells.resize(chosen.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < chosen.size(); i = next++) {
      const SuiteCell& cell = chosen[i];
      CellRecord& rec = out.cells[i];
      rec.id = cell.id;
      rec.criterion = cell.criterion;
      rec.tags = cell.tags;
      rec.repro = cell.repro;
      const auto start = std::chrono::steady_clock::now();
      try {
        rec.result = cell.run();
      } catch (const std::exception& e) {
        rec.result = CellResult::fail("exception", e.what());
      }
      rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(opt.jobs, 1, std::max<std::size_t>(1, chosen.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  OrderedJson& doc = out.document;
  doc["schema"] = "forcecert-suite/1";
  doc["tool"] = {{"name", "forcecert"}, {"version", kToolVersion}};
  doc["command"] = suite::suite_command(filter_text, opt.seed);
  doc["filter"] = filter_text;
  OrderedJson list = OrderedJson::array();
  for (const CellRecord& rec : out.cells) {
    (rec.result.passed ? out.passed : out.failed) += 1;
    OrderedJson item;
    item["id"] = rec.id;
    item["criterion"] = rec.criterion;
    item["tags"] = rec.tags;
    item["status"] = rec.result.passed ? "pass" : "fail";
    item["detail"] = rec.result.detail;
    if (!rec.result.passed) {
      item["stage"] = rec.result.stage;
      item["repro"] = rec.repro;
    }
    list.push_back(std::move(item));
    out.timings_ms[rec.id] = rec.millis;
  }
  doc["cells"] = std::move(list);
  doc["summary"] = {{"total", out.cells.size()}, {"passed", out.passed}, {"failed", out.failed}};
  if (out.cells.empty()) {
    out.exit_code = kExitPrecondition;
  } else if (out.failed > 0) {
    out.exit_code = kExitVerification;
  }
  return out;
}

inline std::string report_text(const SuiteOutcome& out) {
  OrderedJson doc = out.document;
  doc["timings_ms"] = out.timings_ms;
  return doc.dump(2) + "\n";
}

}  // namespace forcecert
