// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Drives the installed command-line binary through a shell and checks
// output text and the exit-code contract.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    ADD_FAILURE() << "popen failed for: " << command;
    return result;
  }
  char buffer[4096];
  while (fgets(buffer, sizeof buffer, pipe) != nullptr) result.out += buffer;
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string cli() { return std::string(BALANSOL_CLI_PATH); }

std::string data(const std::string& name) {
  return std::string(BALANSOL_DATA_DIR) + "/" + name;
}

std::string temp_path(const std::string& name) {
  return testing::TempDir() + "balansol_cli_" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

TEST(CliOptstar, PrintsExactValueAndBreakpointCount) {
  const CommandResult r =
      run_command(cli() + " optstar " + data("three_parallel.gb"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "2/1\nbreakpoints 3\n");
  EXPECT_EQ(run_command(cli() + " optstar " + data("single_edge.gb")).out,
            "1/1\nbreakpoints 2\n");
  const CommandResult tri =
      run_command(cli() + " optstar " + data("triangle.gb"));
  EXPECT_EQ(tri.out.substr(0, 4), "1/1\n");
}

TEST(CliOptstar, MissingFileExitsTwo) {
  const CommandResult r = run_command(
      cli() + " optstar " + temp_path("no_such_file.gb") + " 2>/dev/null");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(CliSolve, DoneReportsMakespanInOriginalUnits) {
  const CommandResult r = run_command(
      cli() + " solve " + data("single_edge.gb") + " --tau opt --mode general");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\"outcome\": \"done\""), std::string::npos);
  EXPECT_NE(r.out.find("\"makespan\": \"1/1\""), std::string::npos);
  EXPECT_NE(r.out.find("\"opt_star\": \"1/1\""), std::string::npos);
}

TEST(CliSolve, SimpleModeAtTheOptimumNormalizesToHalves) {
  const CommandResult r = run_command(cli() + " solve " +
                                      data("three_parallel.gb") +
                                      " --tau opt --mode simple");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\"outcome\": \"done\""), std::string::npos);
  EXPECT_NE(r.out.find("\"makespan\": \"2/1\""), std::string::npos);
}

TEST(CliSolve, StuckWritesACertificateAndExitsTen) {
  const std::string cert = temp_path("stuck_cert.json");
  std::remove(cert.c_str());
  const CommandResult r =
      run_command(cli() + " solve " + data("three_parallel.gb") +
                  " --tau 1 --mode general --cert-out " + cert);
  EXPECT_EQ(r.exit_code, 10);
  EXPECT_NE(r.out.find("\"outcome\": \"stuck\""), std::string::npos);
  EXPECT_NE(r.out.find("\"certificate_path\""), std::string::npos);
  const std::string body = read_file(cert);
  EXPECT_NE(body.find("\"dual_objective\": \"-1/100\""), std::string::npos);
  EXPECT_NE(body.find("\"186/125\""), std::string::npos);
}

TEST(CliSolve, RestrictedModeViolationExitsFour) {
  const CommandResult r =
      run_command(cli() + " solve " + data("mixed_weight.gb") +
                  " --tau 1 --mode simple 2>/dev/null");
  EXPECT_EQ(r.exit_code, 4);
}

TEST(CliSolve, IterationCapExitsThree) {
  const CommandResult r =
      run_command(cli() + " solve " + data("three_parallel.gb") +
                  " --tau 1 --cap 0 2>/dev/null >/dev/null");
  EXPECT_EQ(r.exit_code, 3);
}

TEST(CliSolve, EnvironmentCapOverridesColumnEnumeration) {
  const CommandResult r =
      run_command("BALANSOL_CAP=2 " + cli() + " solve " +
                  data("three_parallel.gb") + " --tau 2 2>/dev/null");
  EXPECT_EQ(r.exit_code, 3);
}

TEST(CliSolve, TraceStreamsEventsAndReplays) {
  const std::string trace = temp_path("trace.jsonl");
  const std::string cert = temp_path("trace_cert.json");
  const CommandResult r = run_command(
      cli() + " solve " + data("three_parallel.gb") +
      " --tau 1 --trace " + trace + " --check-replay --cert-out " + cert +
      " 2>&1");
  EXPECT_EQ(r.exit_code, 10);
  EXPECT_NE(r.out.find("replay check: ok"), std::string::npos);
  const std::string body = read_file(trace);
  EXPECT_NE(body.find("\"kind\":\"flip-appended\""), std::string::npos);
  EXPECT_NE(body.find("\"flip_kind\":\"raw\""), std::string::npos);
  EXPECT_NE(body.find("\"kind\":\"stuck\""), std::string::npos);
  EXPECT_NE(body.find("\"potential\":[1,1,3]"), std::string::npos);
}

TEST(CliCertify, CertifiedBelowTheOptimum) {
  const std::string cert = temp_path("certify_out.json");
  const CommandResult r =
      run_command(cli() + " certify " + data("three_parallel.gb") +
                  " --tau 1 --out " + cert);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("CERTIFIED tau < OPT*"), std::string::npos);
  const std::string body = read_file(cert);
  EXPECT_NE(body.find("\"749/1000\""), std::string::npos);
}

TEST(CliCertify, FeasibleThresholdsReportNoCertificate) {
  EXPECT_NE(run_command(cli() + " certify " + data("single_edge.gb") +
                        " --tau 1")
                .out.find("no certificate (feasible)"),
            std::string::npos);
  EXPECT_NE(run_command(cli() + " certify " + data("three_parallel.gb") +
                        " --tau 2")
                .out.find("no certificate (feasible)"),
            std::string::npos);
}

TEST(CliCertify, DoneBelowTheOptimumIsReportedHonestly) {
  const CommandResult r = run_command(cli() + " certify " +
                                      data("three_parallel.gb") + " --tau 3/2");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("relaxation infeasible at tau"), std::string::npos);
}

TEST(CliSweep, EnumerationCoversTheParallelFamilyRow) {
  const std::string csv = temp_path("sweep.csv");
  const CommandResult r = run_command(
      cli() + " sweep --enumerate --max-vertices 2 --max-edges 3 --weights 1"
              " --out " + csv);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "max ratio 1/1 over 12 instances\n");
  const std::string body = read_file(csv);
  EXPECT_EQ(body.substr(0, body.find('\n')),
            "fingerprint,opt_star,integral_opt,ratio,general_outcome");
  EXPECT_NE(body.find(",2/1,2/1,1/1,done"), std::string::npos);

  const std::string fam_csv = temp_path("family.csv");
  const CommandResult fam = run_command(
      cli() + " sweep --family 'parallel(3,1)' --out " + fam_csv);
  EXPECT_EQ(fam.exit_code, 0);
  const std::string fam_body = read_file(fam_csv);
  const std::string fam_row =
      fam_body.substr(fam_body.find('\n') + 1);
  EXPECT_NE(fam_row.find(",2/1,2/1,1/1,done"), std::string::npos);
  // The enumeration saw the same canonical instance.
  EXPECT_NE(body.find(fam_row), std::string::npos);
}

TEST(CliSweep, NoInstancesYieldsHeaderOnly) {
  const std::string csv = temp_path("empty.csv");
  const CommandResult r = run_command(cli() + " sweep --out " + csv);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_file(csv),
            "fingerprint,opt_star,integral_opt,ratio,general_outcome\n");
}

TEST(CliGen, WritesAParseableInstance) {
  const std::string out = temp_path("gen.gb");
  const CommandResult gen =
      run_command(cli() + " gen --family 'parallel(3,1)' --out " + out);
  EXPECT_EQ(gen.exit_code, 0);
  const CommandResult opt = run_command(cli() + " optstar " + out);
  EXPECT_EQ(opt.out.substr(0, 4), "2/1\n");
  // Fingerprints agree between generation and re-parsing.
  EXPECT_EQ(run_command(cli() + " gen --family 'gap(3,5,7)' --out " + out)
                .exit_code,
            0);
  EXPECT_EQ(run_command(cli() + " optstar " + out).exit_code, 0);
}

TEST(CliGen, UnknownFamilyExitsTwo) {
  const CommandResult r = run_command(
      cli() + " gen --family 'mystery(1)' --out " + temp_path("x.gb") +
      " 2>/dev/null");
  EXPECT_EQ(r.exit_code, 2);
}

}  // namespace
