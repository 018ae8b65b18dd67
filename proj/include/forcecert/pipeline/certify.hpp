#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "forcecert/errors.hpp"
#include "forcecert/forcing/forcing.hpp"
#include "forcecert/graphs/graph_io.hpp"
#include "forcecert/matrices/block_matrix.hpp"
#include "forcecert/matrices/certificate_io.hpp"
#include "forcecert/pipeline/cert_factory.hpp"
#include "forcecert/pipeline/report.hpp"
#include "forcecert/rank/dependency.hpp"
#include "forcecert/rank/rank.hpp"

namespace forcecert {

enum class Fault { None, CorruptCertificate, NegateBlock };

inline std::string fault_name(Fault f) {
  switch (f) {
    case Fault::None: return "none";
    case Fault::CorruptCertificate: return "corrupt-certificate";
    case Fault::NegateBlock: return "negate-block";
  }
  return "?";
}

inline Fault parse_fault(const std::string& text) {
  for (Fault f : {Fault::None, Fault::CorruptCertificate, Fault::NegateBlock}) {
    if (fault_name(f) == text) return f;
  }
  throw ParseError("unknown fault '" + text + "'", 0);
}

struct CertifyRequest {
  std::string graph;                       // family expression, optional with a certificate
  std::optional<std::size_t> k;            // circular G □ C_{2k}
  bool prism = false;                      // G □ K2
  std::optional<FieldDescriptor> field;    // default_field(graph) when unset
  std::optional<std::string> certificate;  // certificate document text
  std::string certificate_path;            // only echoed into the command line
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  Fault fault = Fault::None;
};

struct CertifyOutcome {
  int exit_code = kExitOk;
  std::string verdict;       // EXACT, GAP or FAILED
  std::string halted_at;     // failing stage, empty when every stage ran
  std::string message;
  std::optional<std::size_t> lower;
  std::optional<std::size_t> upper;
  OrderedJson document;      // deterministic part of the report
  OrderedJson timings_ms = OrderedJson::object();

  bool exact() const { return verdict == "EXACT"; }
};

/// Command line that reproduces a request.
inline std::string certify_command(const CertifyRequest& req) {
  std::string cmd = "forcecert certify";
  if (!req.graph.empty()) cmd += " --graph '" + req.graph + "'";
  if (req.certificate) cmd += " --cert '" + (req.certificate_path.empty() ? "-" : req.certificate_path) + "'";
  if (req.k) cmd += " --k " + std::to_string(*req.k);
  if (req.prism) cmd += " --prism";
  if (req.field) cmd += " --field " + describe(*req.field);
  cmd += " --seed " + std::to_string(req.seed);
  if (req.fault != Fault::None) cmd += " --fault " + fault_name(req.fault);
  return cmd;
}

/// Report text: the document followed by its timings.
inline std::string report_text(const CertifyOutcome& out) {
  OrderedJson doc = out.document;
  doc["timings_ms"] = out.timings_ms;
  return doc.dump(2) + "\n";
}

namespace detail {

template <class FieldT>
struct element_for;
template <>
struct element_for<RationalField> {
  using type = Rational;
};
template <>
struct element_for<PrimeField> {
  using type = ModP;
};
template <>
struct element_for<QuadraticField> {
  using type = QuadraticElement;
};

/// Raised by a stage that ran but did not verify.
class StageFailure : public Error {
 public:
  using Error::Error;
};

class Pipeline {
 public:
  explicit Pipeline(CertifyOutcome& out) : out_(out) {}

  /// Appends the stage log to the document.
  void close() { out_.document["stages"] = stages_; }

  /// Runs one stage; false once the pipeline has halted.
  bool stage(const std::string& name, const std::function<std::string()>& body) {
    if (!out_.halted_at.empty()) return false;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    int code = kExitOk;
    try {
      detail = body();
    } catch (const StageFailure& e) {
      code = kExitVerification;
      detail = e.what();
    } catch (const ParseError& e) {
      code = kExitParse;
      detail = e.what();
    } catch (const SupportError& e) {
      code = kExitVerification;
      detail = e.what();
    } catch (const Error& e) {
      code = kExitPrecondition;
      detail = e.what();
    }
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    out_.timings_ms[name] = elapsed.count();
    stages_.push_back({{"name", name}, {"status", code == kExitOk ? "ok" : "failed"}, {"detail", detail}});
    if (code != kExitOk) {
      out_.exit_code = code;
      out_.halted_at = name;
      out_.message = name + ": " + detail;
      out_.verdict = "FAILED";
      return false;
    }
    return true;
  }

 private:
  CertifyOutcome& out_;
  OrderedJson stages_ = OrderedJson::array();
};

template <Field F>
void corrupt(Matrix<F>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.is_nonzero(i, j)) {
        m.set(i, j, m(i, j) + F::one(m.field()));
        return;
      }
    }
  }
}

inline void require_host(const std::optional<BipartiteGraph>& base, const BipartiteGraph& host) {
  if (base && !base->same_structure(host)) {
    throw PreconditionError("certificate host graph differs from the requested base graph");
  }
}

template <Field F>
void run_circular(const CertifyRequest& req, const std::optional<BipartiteGraph>& base, const typename F::field_type& f,
                  Pipeline& pipe, CertifyOutcome& out) {
  const std::size_t k = *req.k;
  OrderedJson& doc = out.document;
  std::optional<InvolutoryCertificate<F>> cert;
  if (!pipe.stage("certificate", [&] {
        BaseChoice choice;
        if (req.certificate) {
          choice.source = "file";
          if (certificate_kind(*req.certificate) == "pair") {
            cert = pair_to_involutory(read_pair<F>(*req.certificate, f));
          } else {
            cert = read_involutory<F>(*req.certificate, f);
          }
        } else {
          cert = involutory_for<F>(req.graph, *base, f, req.seed, req.trials, choice);
        }
        require_host(base, cert->host());
        if (req.fault == Fault::CorruptCertificate) corrupt(cert->b_inv);
        doc["certificate"] = {{"source", choice.source},
                              {"order", cert->order()},
                              {"document", OrderedJson::parse(write_certificate(*cert))}};
        return choice.source;
      }))
    return;
  if (!pipe.stage("verify-certificate", [&] {
        CheckResult r = verify_certificate(*cert);
        if (!r.ok) throw StageFailure(r.what);
        return std::string("B Binv = I, support of Binv equals support of B^T");
      }))
    return;
  BlockMatrix grid;
  if (!pipe.stage("block-matrix", [&] {
        grid = circular_block_matrix(*cert, k);
        if (req.fault == Fault::NegateBlock) grid.grid[1][1] = negated(grid.grid[1][1]);
        doc["grid"] = grid_json(grid);
        return case_name(grid.kind);
      }))
    return;
  std::optional<GridInstance<F>> inst;
  if (!pipe.stage("instantiate", [&] {
        inst = instantiate(grid, *cert);
        doc["product"] = {{"spec", req.graph.empty() ? std::string() : "prod(" + req.graph + ";C:" + std::to_string(2 * k) + ")"},
                          {"summary", graph_summary(inst->r.host())}};
        return std::string("support audit passed");
      }))
    return;
  const std::size_t n = cert->host().order();
  RankCertificate rank;
  if (!pipe.stage("rank", [&] {
        rank = exact_rank(inst->r.matrix());
        out.lower = rank.corank;
        doc["rank"] = rank_json(rank);
        doc["rank"]["expected_corank"] = n;
        doc["rank"]["corank_equals_n"] = rank.corank == n;
        return "corank " + std::to_string(rank.corank);
      }))
    return;
  if (!pipe.stage("dependency", [&] {
        DependencyCheck<F> check = verify_case_dependency(*inst, *cert, k);
        const std::size_t bound = k * n - n;
        doc["dependency"] = {{"case", case_name(check.top.tag)},
                             {"top", residual_json(check.top)},
                             {"bottom", residual_json(check.bottom)},
                             {"rank_bound", bound},
                             {"rank_within_bound", rank.rank <= bound}};
        if (!check.passed()) {
          const auto& bad = check.top.is_zero() ? check.bottom : check.top;
          throw StageFailure(bad.side + " identity has a nonzero residual at block " + std::to_string(bad.first_nonzero->block) +
                             ", entry (" + std::to_string(bad.first_nonzero->row) + ", " +
                             std::to_string(bad.first_nonzero->col) + ") = " + bad.first_nonzero->value);
        }
        if (rank.rank > bound) throw StageFailure("rank exceeds the bound implied by the identities");
        return std::string("both residuals are zero");
      }))
    return;
  std::optional<UpperCertificate> up;
  if (!pipe.stage("upper-matching", [&] {
        up = circular_upper_matching(cert->host(), inst->r.host());
        doc["upper"] = upper_json(inst->r.host(), *up);
        if (!up->verified()) throw StageFailure("canonical matching has " + outcome_name(up->extension_outcome) + " extension");
        out.upper = up->matching.size();
        return "uniquely extendable, size " + std::to_string(*out.upper);
      }))
    return;
}

template <Field F>
void run_prism(const CertifyRequest& req, const std::optional<BipartiteGraph>& base, const typename F::field_type& f,
               Pipeline& pipe, CertifyOutcome& out) {
  OrderedJson& doc = out.document;
  std::optional<RowInversePair<F>> pair;
  if (!pipe.stage("certificate", [&] {
        BaseChoice choice;
        if (req.certificate) {
          choice.source = "file";
          if (certificate_kind(*req.certificate) == "involutory") {
            pair = involutory_to_pair(read_involutory<F>(*req.certificate, f));
          } else {
            pair = read_pair<F>(*req.certificate, f);
          }
        } else {
          pair = pair_for<F>(req.graph, *base, f, req.seed, req.trials, choice);
        }
        require_host(base, pair->host());
        if (req.fault == Fault::CorruptCertificate) {
          Matrix<F> c = pair->c.matrix();
          corrupt(c);
          pair->c = WeightedBiAdjacency<F>(pair->c.host_ptr(), pair->c.row_order(), pair->c.col_order(), std::move(c));
        }
        if (req.fault == Fault::NegateBlock) throw PreconditionError("negate-block applies to circular grids only");
        doc["certificate"] = {{"source", choice.source},
                              {"rows", pair->rows()},
                              {"cols", pair->cols()},
                              {"document", OrderedJson::parse(write_certificate(*pair))}};
        return choice.source;
      }))
    return;
  if (!pipe.stage("verify-certificate", [&] {
        CheckResult r = verify_certificate(*pair);
        if (!r.ok) throw StageFailure(r.what);
        return std::string("B C^T = I, C has the support of B");
      }))
    return;
  BlockMatrix grid;
  if (!pipe.stage("block-matrix", [&] {
        grid = prism_block_matrix(*pair);
        doc["grid"] = grid_json(grid);
        return case_name(grid.kind);
      }))
    return;
  std::optional<GridInstance<F>> inst;
  if (!pipe.stage("instantiate", [&] {
        inst = instantiate(grid, *pair);
        doc["product"] = {{"spec", req.graph.empty() ? std::string() : "prod(" + req.graph + ";K2)"},
                          {"summary", graph_summary(inst->r.host())}};
        return std::string("support audit passed");
      }))
    return;
  const std::size_t m = pair->rows();
  if (!pipe.stage("rank", [&] {
        RankCertificate rank = exact_rank(inst->r.matrix());
        out.lower = rank.corank;
        doc["rank"] = rank_json(rank);
        doc["rank"]["expected_corank"] = m;
        doc["rank"]["corank_equals_m"] = rank.corank == m;
        return "corank " + std::to_string(rank.corank);
      }))
    return;
  if (!pipe.stage("upper-matching", [&] {
        UpperCertificate up = prism_upper_matching(pair->host(), inst->r.host());
        doc["upper"] = upper_json(inst->r.host(), up);
        if (!up.verified()) throw StageFailure("canonical matching has " + outcome_name(up.extension_outcome) + " extension");
        out.upper = up.matching.size();
        return "uniquely extendable, size " + std::to_string(*out.upper);
      }))
    return;
}

}  // namespace detail

/// Certificate, grid, support audit, exact rank, dependency identities
/// (circular only), canonical upper matching, then the verdict. The first
/// failing stage halts the run and sets the exit code.
inline CertifyOutcome certify(const CertifyRequest& req) {
  CertifyOutcome out;
  OrderedJson& doc = out.document;
  doc["schema"] = kReportSchema;
  doc["tool"] = {{"name", "forcecert"}, {"version", kToolVersion}};
  doc["command"] = certify_command(req);
  doc["fault"] = fault_name(req.fault);
  detail::Pipeline pipe(out);

  std::optional<BipartiteGraph> base;
  FieldDescriptor field = RationalField{};
  if (!pipe.stage("graph", [&] {
        if (req.k.has_value() == req.prism) throw PreconditionError("exactly one of --k and --prism is required");
        if (req.k && *req.k < 2) throw PreconditionError("--k must be at least 2");
        if (req.graph.empty() && !req.certificate) throw PreconditionError("a graph expression or a certificate is required");
        if (!req.graph.empty()) base = parse_family(req.graph);
        if (req.field) {
          field = *req.field;
        } else if (req.certificate) {
          field = certificate_field(*req.certificate);
        } else {
          field = default_field(req.graph);
        }
        doc["graph"] = {{"spec", req.graph}, {"summary", base ? graph_summary(*base) : OrderedJson(nullptr)}};
        doc["field"] = describe(field);
        return req.graph.empty() ? std::string("from certificate") : req.graph;
      })) {
    doc["verdict"] = {{"status", "FAILED"}, {"halted_at", out.halted_at}};
    pipe.close();
    return out;
  }

  std::visit(
      [&](const auto& f) {
        using F = typename detail::element_for<std::decay_t<decltype(f)>>::type;
        if (req.prism) {
          detail::run_prism<F>(req, base, f, pipe, out);
        } else {
          detail::run_circular<F>(req, base, f, pipe, out);
        }
      },
      field);

  pipe.stage("verdict", [&] {
    const std::size_t lo = *out.lower;
    const std::size_t hi = *out.upper;
    OrderedJson v = {{"lower", lo}, {"upper", hi}};
    if (lo > hi) {
      doc["verdict"] = v;
      throw detail::StageFailure("rank lower bound " + std::to_string(lo) + " exceeds verified upper bound " + std::to_string(hi));
    }
    out.verdict = lo == hi ? "EXACT" : "GAP";
    v["status"] = out.verdict;
    v["forcing_number"] = lo == hi ? OrderedJson(lo) : OrderedJson(nullptr);
    doc["verdict"] = v;
    if (lo < hi) out.exit_code = kExitInconclusive;
    return out.verdict;
  });
  if (!out.halted_at.empty() && !doc.contains("verdict")) {
    doc["verdict"] = {{"status", "FAILED"}, {"halted_at", out.halted_at}};
  }
  pipe.close();
  return out;
}

struct OracleRequest {
  std::string graph;                      // family expression
  std::optional<std::string> graph_text;  // graph file contents, instead of `graph`
  std::string graph_path;                 // only echoed into the command line
  std::size_t cap = kUnlimited;
  std::optional<std::size_t> known_lower;
  bool full_table = false;
};

struct OracleOutcome {
  int exit_code = kExitOk;
  std::string message;
  ForcingReport report;
  OrderedJson document;
  OrderedJson timings_ms = OrderedJson::object();
};

inline std::string oracle_command(const OracleRequest& req) {
  std::string cmd = "forcecert oracle";
  cmd += req.graph_text ? " --graph-file '" + req.graph_path + "'" : " --graph '" + req.graph + "'";
  if (req.cap != kUnlimited) cmd += " --cap " + std::to_string(req.cap);
  if (req.known_lower) cmd += " --lower " + std::to_string(*req.known_lower);
  if (req.full_table) cmd += " --table";
  return cmd;
}

/// Exhaustive minimum forcing number, capped at `cap` perfect matchings.
inline OracleOutcome oracle(const OracleRequest& req) {
  OracleOutcome out;
  OrderedJson& doc = out.document;
  doc["schema"] = kReportSchema;
  doc["tool"] = {{"name", "forcecert"}, {"version", kToolVersion}};
  doc["command"] = oracle_command(req);
  const auto start = std::chrono::steady_clock::now();
  try {
    BipartiteGraph g = req.graph_text ? read_graph(*req.graph_text) : parse_family(req.graph);
    doc["graph"] = {{"spec", req.graph}, {"summary", graph_summary(g)}};
    OracleOptions opt;
    opt.cap = req.cap;
    opt.known_lower = req.known_lower;
    opt.full_table = req.full_table;
    out.report = minimum_forcing_number(g, opt);
    doc["forcing"] = forcing_json(g, out.report);
    if (out.report.outcome == ForcingOutcome::Truncated) {
      out.exit_code = kExitTruncated;
      out.message = "enumeration stopped at the cap of " + std::to_string(req.cap) + " perfect matchings";
    } else if (out.report.outcome == ForcingOutcome::NoPerfectMatching) {
      out.exit_code = kExitPrecondition;
      out.message = "graph has no perfect matching";
    }
  } catch (const ParseError& e) {
    out.exit_code = kExitParse;
    out.message = e.what();
  } catch (const Error& e) {
    out.exit_code = kExitPrecondition;
    out.message = e.what();
  }
  if (!out.message.empty()) doc["error"] = out.message;
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  out.timings_ms["oracle"] = elapsed.count();
  return out;
}

inline std::string report_text(const OracleOutcome& out) {
  OrderedJson doc = out.document;
  doc["timings_ms"] = out.timings_ms;
  return doc.dump(2) + "\n";
}

}  // namespace forcecert
