#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Invocation {
  int code = -1;
  std::string out;  // stdout followed by stderr
};

Invocation run(const std::string& args) {
  const std::string cmd = std::string(FORCECERT_CLI) + " " + args + " 2>&1";
  Invocation r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "forcecert_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

nlohmann::ordered_json load(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::ordered_json::parse(in);
}

TEST(Cli, BuildWritesGraphFile) {
  const auto path = scratch("k22c6.txt");
  Invocation r = run("build 'prod(Kmn:2,2;C:6)' --out " + path.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("|V|=24 |E|=48 |X|=12 |Y|=12"), std::string::npos) << r.out;
  EXPECT_TRUE(std::filesystem::exists(path));

  Invocation s14 = run("build s14");
  EXPECT_EQ(s14.code, 0);
  EXPECT_NE(s14.out.find("|V|=14"), std::string::npos);

  Invocation q3 = run("build 'prod(Q:2;K2)'");
  EXPECT_NE(q3.out.find("|V|=8 |E|=12"), std::string::npos);
}

TEST(Cli, BuildErrors) {
  Invocation bad = run("build 'prod(Kmn:2,2;C:'");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("position"), std::string::npos);
  EXPECT_EQ(run("build 'prod(K2;Cn:5)'").code, 3);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, CertifyReportIsReproducible) {
  const auto first = scratch("gprime.json");
  Invocation r = run("certify gprime --k 2 --out " + first.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("EXACT lower=14 upper=14"), std::string::npos);

  auto doc = load(first);
  EXPECT_EQ(doc["verdict"]["forcing_number"], 14);
  ASSERT_TRUE(doc.contains("timings_ms"));
  const std::string command = doc["command"].get<std::string>();
  const std::string prefix = "forcecert ";
  ASSERT_EQ(command.rfind(prefix, 0), 0U);

  const auto second = scratch("gprime-again.json");
  ASSERT_EQ(run(command.substr(prefix.size()) + " --out " + second.string()).code, 0);
  auto again = load(second);
  doc.erase("timings_ms");
  again.erase("timings_ms");
  EXPECT_EQ(doc.dump(), again.dump());
}

TEST(Cli, CertifyWithCertificateFile) {
  const auto report = scratch("s14.json");
  ASSERT_EQ(run("certify s14 --prism --out " + report.string()).code, 0);
  const auto cert = scratch("s14-cert.json");
  {
    std::ofstream out(cert);
    out << load(report)["certificate"]["document"].dump(2);
  }
  Invocation r = run("certify --prism --cert " + cert.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"source\": \"file\""), std::string::npos);
  EXPECT_NE(r.out.find("EXACT lower=7 upper=7"), std::string::npos);
}

TEST(Cli, CertifyExitCodes) {
  EXPECT_EQ(run("certify Kmn:2,2 --k 2").code, 0);
  EXPECT_EQ(run("certify 'Kmn:2,' --k 2").code, 2);
  EXPECT_EQ(run("certify Kmn:2,2 --k 2 --field GFq:5").code, 2);
  EXPECT_EQ(run("certify Kmn:2,2").code, 3);
  EXPECT_EQ(run("certify gprime --k 2 --field Q").code, 3);
  Invocation fault = run("certify Kmn:2,2 --k 4 --fault corrupt-certificate");
  EXPECT_EQ(fault.code, 4);
  EXPECT_NE(fault.out.find("FAILED at verify-certificate"), std::string::npos);
  Invocation negate = run("certify Kmn:2,2 --k 4 --fault negate-block");
  EXPECT_EQ(negate.code, 4);
  EXPECT_NE(negate.out.find("residual at block 2"), std::string::npos);
}

TEST(Cli, Oracle) {
  Invocation q3 = run("oracle Q:3");
  EXPECT_EQ(q3.code, 0);
  EXPECT_NE(q3.out.find("f=2 (exhaustive)"), std::string::npos);
  EXPECT_NE(run("oracle 'prod(star:3;K2)'").out.find("f=1"), std::string::npos);
  EXPECT_NE(run("oracle C:6").out.find("f=1"), std::string::npos);
  Invocation capped = run("oracle Q:3 --cap 2");
  EXPECT_EQ(capped.code, 5);
  EXPECT_NE(capped.out.find("\"outcome\": \"truncated\""), std::string::npos);
  EXPECT_EQ(run("oracle Kmn:2,3").code, 3);

  const auto graph = scratch("q2.txt");
  ASSERT_EQ(run("build Q:2 --out " + graph.string()).code, 0);
  EXPECT_NE(run("oracle --graph-file " + graph.string()).out.find("f=1"), std::string::npos);
}

TEST(Cli, VerifySuite) {
  Invocation listed = run("verify-suite --grid case4 --list");
  EXPECT_EQ(listed.code, 0);
  std::istringstream lines(listed.out);
  int count = 0;
  for (std::string line; std::getline(lines, line);) {
    ++count;
    EXPECT_NE(line.find("/k=5"), std::string::npos) << line;
  }
  EXPECT_EQ(count, 4);

  Invocation fixture = run("verify-suite --grid fault/corrupt-certificate");
  EXPECT_EQ(fixture.code, 4);
  EXPECT_NE(fixture.out.find("[verify-certificate]"), std::string::npos);
  EXPECT_NE(fixture.out.find("repro: forcecert certify"), std::string::npos);

  const auto summary = scratch("suite.json");
  Invocation all = run("verify-suite --jobs 2 --out " + summary.string());
  EXPECT_EQ(all.code, 0) << all.out;
  auto doc = load(summary);
  EXPECT_EQ(doc["summary"]["failed"], 0);
  EXPECT_EQ(doc["summary"]["passed"], doc["summary"]["total"]);
}

TEST(Cli, HelpDocumentsDefaultFields) {
  Invocation help = run("certify --help");
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("Qsqrt:2 for gprime"), std::string::npos);
  EXPECT_NE(help.out.find("--field"), std::string::npos);
  EXPECT_NE(run("--help").out.find("Exit codes"), std::string::npos);
  EXPECT_NE(run("--version").out.find("0.1.0"), std::string::npos);
}

}  // namespace
