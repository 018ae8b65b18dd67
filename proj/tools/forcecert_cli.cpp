#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "forcecert/graphs/graph_io.hpp"
#include "forcecert/pipeline/certify.hpp"
#include "forcecert/pipeline/suite.hpp"

namespace {

using namespace forcecert;

constexpr const char* kFieldHelp =
    "Default fields: Q for s14, K2, Q:d (hypercube lifts), Kmn:2,2 and stars; "
    "Qsqrt:2 for gprime; GFp:<p> with the smallest p = 1 mod n for Fourier pairs on Kmn:m,n; "
    "GFp:101 with a seeded random search for every other family.";

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw PreconditionError("cannot write '" + out + "'");
  file << text;
}

int exit_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) != nullptr) return kExitParse;
  if (dynamic_cast<const SupportError*>(&e) != nullptr) return kExitVerification;
  return kExitPrecondition;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact forcing-number certificates for Cartesian products of bipartite graphs"};
  app.footer(std::string("Exit codes: 0 ok/EXACT, 2 parse error, 3 precondition failure, 4 verification failure, "
                         "5 truncated by --cap, 6 inconclusive (lower < upper).\n") +
             kFieldHelp);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("forcecert ") + kToolVersion);

  std::string graph;
  std::string out;

  auto* build = app.add_subcommand("build", "Write the graph file for a family expression");
  build->add_option("graph,--graph", graph, "Family expression, e.g. prod(Kmn:2,2;C:6)")->required();
  build->add_option("--out", out, "Output path (default stdout)");

  CertifyRequest creq;
  std::string field_text;
  std::string cert_path;
  std::string fault_text = "none";
  std::size_t k = 0;
  auto* cert = app.add_subcommand("certify", "Certify f(G □ C_2k) or f(G □ K2) from a rank lower bound and a verified upper matching");
  cert->add_option("graph,--graph", creq.graph, "Base graph family expression");
  cert->add_option("--k", k, "Circular product G □ C_2k")->check(CLI::Range(2, 1000000));
  cert->add_flag("--prism", creq.prism, "Prism G □ K2");
  cert->add_option("--field", field_text, "Q, GFp:<p> or Qsqrt:<d>");
  cert->add_option("--cert", cert_path, "Certificate file (involutory or pair) instead of a construction");
  cert->add_option("--seed", creq.seed, "Seed for the random certificate search");
  cert->add_option("--trials", creq.trials, "Random search trials");
  cert->add_option("--fault", fault_text, "Fault injection: none, corrupt-certificate, negate-block");
  cert->add_option("--out", out, "Report path (default stdout)");
  cert->footer(kFieldHelp);

  OracleRequest oreq;
  std::string graph_file;
  std::size_t cap = 0;
  std::size_t lower = 0;
  auto* orc = app.add_subcommand("oracle", "Minimum forcing number by exhaustion over perfect matchings");
  orc->add_option("graph,--graph", oreq.graph, "Family expression");
  orc->add_option("--graph-file", graph_file, "Graph file instead of an expression");
  orc->add_option("--cap", cap, "Stop after this many perfect matchings (exit 5)");
  orc->add_option("--lower", lower, "Known lower bound; stop once a matching attains it");
  orc->add_flag("--table", oreq.full_table, "Record f(G, M) for every perfect matching");
  orc->add_option("--out", out, "Report path (default stdout)");

  SuiteOptions sopt;
  std::string grid = "default";
  bool list = false;
  auto* suite = app.add_subcommand("verify-suite", "Run the acceptance grid");
  suite->add_option("--grid", grid, "Comma-separated cell ids, id prefixes or tags (default, all, grid, case4, fault, ...)");
  suite->add_option("--jobs", sopt.jobs, "Worker threads")->check(CLI::Range(1, 256));
  suite->add_option("--seed", sopt.seed, "Seed for the property suites");
  suite->add_flag("--list", list, "List the selected cells without running them");
  suite->add_option("--out", out, "Summary path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (build->parsed()) {
      BipartiteGraph g = parse_family(graph);
      emit(write_graph(g), out);
      std::cerr << "|V|=" << g.order() << " |E|=" << g.size() << " |X|=" << g.side_size(Side::X)
                << " |Y|=" << g.side_size(Side::Y) << "\n";
      return kExitOk;
    }

    if (cert->parsed()) {
      if (cert->count("--k") > 0) creq.k = k;
      if (!field_text.empty()) creq.field = parse_field(field_text);
      if (!cert_path.empty()) {
        creq.certificate = read_file(cert_path);
        creq.certificate_path = cert_path;
      }
      creq.fault = parse_fault(fault_text);
      CertifyOutcome result = certify(creq);
      emit(report_text(result), out);
      if (result.halted_at.empty()) {
        std::cerr << result.verdict << " lower=" << *result.lower << " upper=" << *result.upper << "\n";
      } else {
        std::cerr << "FAILED at " << result.message << "\n";
      }
      return result.exit_code;
    }

    if (orc->parsed()) {
      if (!graph_file.empty()) {
        oreq.graph_text = read_file(graph_file);
        oreq.graph_path = graph_file;
      } else if (oreq.graph.empty()) {
        throw PreconditionError("a graph expression or --graph-file is required");
      }
      if (orc->count("--cap") > 0) oreq.cap = cap;
      if (orc->count("--lower") > 0) oreq.known_lower = lower;
      OracleOutcome result = oracle(oreq);
      emit(report_text(result), out);
      if (result.report.exact) {
        std::cerr << "f=" << *result.report.exact << " (" << outcome_name(result.report.outcome) << ")\n";
      } else {
        std::cerr << result.message << "\n";
      }
      return result.exit_code;
    }

    if (suite->parsed()) {
      std::stringstream tokens(grid);
      for (std::string t; std::getline(tokens, t, ',');) {
        if (!t.empty()) sopt.filter.push_back(t);
      }
      if (list) {
        for (const SuiteCell& c : suite_cells(sopt.seed)) {
          if (suite::selected(c, sopt.filter)) std::cout << c.id << "\n";
        }
        return kExitOk;
      }
      SuiteOutcome result = run_suite(sopt);
      emit(report_text(result), out);
      for (const CellRecord& rec : result.cells) {
        if (!rec.result.passed) {
          std::cerr << "FAIL " << rec.id << " [" << rec.result.stage << "] " << rec.result.detail << "\n  repro: " << rec.repro
                    << "\n";
        }
      }
      std::cerr << result.passed << "/" << result.cells.size() << " cells passed\n";
      return result.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  }
  return kExitOk;
}
