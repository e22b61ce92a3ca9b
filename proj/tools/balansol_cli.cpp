// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Command-line front end: exact threshold computation, local-search
// solving with optional JSON-lines traces, infeasibility certificates,
// instance generation, and CSV sweeps over instance families.
//
// Exit codes: 0 success, 2 parse error, 3 cap exceeded, 4 mode
// violation, 5 soundness alarm, 10 solve ended stuck, 1 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "balansol/certificate.hpp"
#include "balansol/config_lp.hpp"
#include "balansol/errors.hpp"
#include "balansol/graph.hpp"
#include "balansol/oracle.hpp"
#include "balansol/rational.hpp"
#include "balansol/search_general.hpp"
#include "balansol/search_params.hpp"
#include "balansol/search_simple.hpp"
#include "balansol/trace.hpp"

namespace {

using nlohmann::json;
using namespace balansol;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitMode = 4;
constexpr int kExitSoundness = 5;
constexpr int kExitStuck = 10;

long parse_positive_long(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size() || v <= 0) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(what + " must be a positive integer, got '" + text + "'");
  }
}

// BALANSOL_CAP, when set, replaces the built-in default for both the
// iteration cap and the column-enumeration cap; explicit flags win.
long env_cap_or(long fallback) {
  const char* s = std::getenv("BALANSOL_CAP");
  if (s == nullptr || *s == '\0') return fallback;
  return parse_positive_long(s, "BALANSOL_CAP");
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !parts.empty()) parts.push_back(cur);
  return parts;
}

std::vector<Rat> parse_weight_list(const std::string& text) {
  std::vector<Rat> weights;
  for (const std::string& part : split_list(text, ','))
    weights.push_back(Rat::parse(part));
  return weights;
}

// Instance families, written name(arg,...):
//   parallel(k,w)            k parallel edges of weight w
//   path_big(stubs,w1,w2,..) heavy path with `stubs` unit edges per end
//   random(n,m,seed)         uniform endpoints, desk-scale weight pool
//   gap(n,m,seed)            biased toward parallel edges near the
//                            big/small boundary
Graph make_family(const std::string& family_text) {
  const auto open = family_text.find('(');
  if (open == std::string::npos || family_text.empty() || family_text.back() != ')')
    throw ParseError("family must look like name(arg,...), got '" + family_text +
                     "'");
  const std::string name = family_text.substr(0, open);
  const std::string body = family_text.substr(open + 1, family_text.size() - open - 2);
  std::vector<std::string> args;
  if (!body.empty()) args = split_list(body, ',');
  auto want = [&](size_t lo, size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw ParseError("family '" + name + "' got " +
                       std::to_string(args.size()) + " arguments");
  };
  if (name == "parallel") {
    want(2, 2);
    return make_parallel(
        static_cast<int>(parse_positive_long(args[0], "edge count")),
        Rat::parse(args[1]));
  }
  if (name == "path_big") {
    want(2, 32);
    const int stubs =
        static_cast<int>(parse_positive_long(args[0], "stub count"));
    std::vector<Rat> path;
    for (size_t i = 1; i < args.size(); ++i) path.push_back(Rat::parse(args[i]));
    return make_path_big(path, stubs);
  }
  if (name == "random" || name == "gap") {
    want(3, 3);
    const int n = static_cast<int>(parse_positive_long(args[0], "vertices"));
    const int m = static_cast<int>(parse_positive_long(args[1], "edges"));
    std::uint64_t seed = 0;
    try {
      size_t used = 0;
      seed = std::stoull(args[2], &used);
      if (used != args[2].size()) throw std::invalid_argument(args[2]);
    } catch (const std::exception&) {
      throw ParseError("seed must be a nonnegative integer, got '" + args[2] +
                       "'");
    }
    if (name == "gap") return make_gap_probe(n, m, seed);
    static const std::vector<Rat> pool = {Rat(1, 4), Rat(1, 3), Rat(1, 2),
                                          Rat(2, 3), Rat(1)};
    return make_random(n, m, pool, seed);
  }
  throw ParseError("unknown family '" + name + "'");
}

// Records every event for the replay check and, when a path is given,
// streams them out as one JSON object per line.
class TraceRecorder : public TraceSink {
 public:
  void open(const std::string& path) {
    out_.emplace(path);
    if (!*out_) throw Error("cannot open trace file '" + path + "'");
  }
  void on_event(const TraceEvent& ev) override {
    events.push_back(ev);
    if (!out_) return;
    json j;
    j["step"] = ev.step;
    j["kind"] = trace_kind_name(ev.kind);
    j["edge"] = ev.edge;
    j["prefix_len"] = ev.prefix_length;
    j["potential"] = ev.potential;
    if (!ev.flip_kind.empty()) j["flip_kind"] = ev.flip_kind;
    *out_ << j.dump() << "\n";
  }
  std::vector<TraceEvent> events;

 private:
  std::optional<std::ofstream> out_;
};

json certificate_json(const DualCertificate& cert, const Rat& tau) {
  json j;
  j["tau"] = tau.to_string();
  json z = json::array();
  for (const Rat& v : cert.z) z.push_back(v.to_string());
  json y = json::array();
  for (const Rat& v : cert.y) y.push_back(v.to_string());
  j["z"] = std::move(z);
  j["y"] = std::move(y);
  j["dual_objective"] = dual_objective(cert.y, cert.z).to_string();
  return j;
}

void write_certificate_file(const std::string& path,
                            const DualCertificate& cert, const Rat& tau) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open certificate output '" + path + "'");
  out << certificate_json(cert, tau).dump(2) << "\n";
}

struct SolveOptions {
  std::string file;
  std::string tau_text;
  std::string mode = "general";
  long iteration_cap = 0;
  long config_cap = 0;
  std::string trace_path;
  bool check_replay = false;
  std::string cert_out;
};

int cmd_optstar(const std::string& file, long config_cap) {
  const Graph g = parse_instance_file(file);
  const OptStarResult r = opt_star(g, config_cap);
  std::cout << r.value.to_string() << "\n";
  std::cout << "breakpoints " << r.breakpoints.size() << "\n";
  return kExitOk;
}

int cmd_solve(const SolveOptions& opt) {
  const Graph g = parse_instance_file(opt.file);
  std::optional<Rat> opt_value;
  Rat tau;
  if (opt.tau_text == "opt") {
    opt_value = opt_star(g, opt.config_cap).value;
    tau = *opt_value;
  } else {
    tau = Rat::parse(opt.tau_text);
  }

  const bool simple = opt.mode == "simple";
  TraceRecorder recorder;
  TraceSink* sink = nullptr;
  if (!opt.trace_path.empty()) {
    recorder.open(opt.trace_path);
    sink = &recorder;
  } else if (opt.check_replay) {
    sink = &recorder;
  }

  const Orientation init =
      g.edge_count() == 0 ? Orientation{}
      : simple            ? simple_initial_orientation(g)
                          : general_initial_orientation(g, tau, opt.config_cap);
  const SearchOutcome out =
      simple ? run_simple_with_init(g, tau, init, opt.iteration_cap, {}, sink)
             : run_general_with_init(g, tau, init, opt.iteration_cap, {}, sink);

  if (opt.check_replay && sink != nullptr) {
    Orientation replay = init;
    for (const TraceEvent& ev : recorder.events) {
      if (ev.kind != TraceKind::FlipExecuted) continue;
      const Edge& e = g.edge(ev.edge);
      replay[ev.edge] = replay[ev.edge] == e.u ? e.v : e.u;
    }
    if (replay != out.orientation)
      throw InvariantError("trace replay does not reproduce the final "
                           "orientation");
    std::cerr << "replay check: ok\n";
  }

  json report;
  report["fingerprint"] = fingerprint(g);
  report["tau"] = tau.to_string();
  report["mode"] = opt.mode;
  report["iterations"] = out.iterations;
  if (opt_value) report["opt_star"] = opt_value->to_string();

  int exit_code = kExitOk;
  switch (out.status) {
    case RunStatus::Done: {
      const Rat budget = simple ? SimpleParams{}.budget() : GeneralParams{}.budget();
      if (out.makespan_normalized > budget)
        throw InvariantError("finished above the in-degree budget");
      report["outcome"] = "done";
      report["makespan"] = (out.makespan_normalized * tau).to_string();
      break;
    }
    case RunStatus::Stuck: {
      report["outcome"] = "stuck";
      DualCertificate cert = simple ? build_simple_certificate(*out.stuck)
                                    : build_general_certificate(*out.stuck);
      cert = rescale_certificate(cert, tau);
      const VerifyResult vr = verify_certificate(g, tau, cert);
      if (!vr.accepted)
        throw SoundnessError("certificate from the stalled state failed "
                             "verification: " + vr.reason);
      const std::string path =
          opt.cert_out.empty() ? opt.file + ".cert.json" : opt.cert_out;
      write_certificate_file(path, cert, tau);
      report["certificate_path"] = path;
      exit_code = kExitStuck;
      break;
    }
    case RunStatus::CapExceeded:
      report["outcome"] = "cap-exceeded";
      exit_code = kExitCap;
      break;
  }
  std::cout << report.dump(2) << "\n";
  return exit_code;
}

int cmd_certify(const std::string& file, const std::string& tau_text,
                const std::string& out_path, long iteration_cap,
                long config_cap) {
  const Graph g = parse_instance_file(file);
  const Rat tau = tau_text == "opt" ? opt_star(g, config_cap).value
                                    : Rat::parse(tau_text);
  const CertifyResult res =
      certify_infeasibility(g, tau, iteration_cap, config_cap);
  switch (res.status) {
    case CertifyStatus::Certified: {
      const std::string path =
          out_path.empty() ? file + ".cert.json" : out_path;
      write_certificate_file(path, *res.certificate, tau);
      std::cout << "CERTIFIED tau < OPT*\n";
      std::cout << "certificate written to " << path << "\n";
      return kExitOk;
    }
    case CertifyStatus::NoCertificateDone:
      if (res.lp_feasible_at_tau) {
        std::cout << "no certificate (feasible)\n";
      } else {
        std::cout << "no certificate (search finished within budget; "
                     "relaxation infeasible at tau)\n";
      }
      return kExitOk;
    case CertifyStatus::CapExceeded:
      std::cerr << "error: cap exceeded before a verdict\n";
      return kExitCap;
  }
  return kExitInternal;
}

struct SweepOptions {
  std::vector<std::string> families;
  bool enumerate = false;
  int max_vertices = 2;
  int max_edges = 3;
  std::string weights = "1";
  bool loops = true;
  std::string out;
  long iteration_cap = 0;
  long config_cap = 0;
};

int cmd_sweep(const SweepOptions& opt) {
  std::ofstream csv(opt.out);
  if (!csv) throw Error("cannot open sweep output '" + opt.out + "'");
  csv << "fingerprint,opt_star,integral_opt,ratio,general_outcome\n";
  csv.flush();
  long count = 0;
  std::optional<Rat> max_ratio;
  auto handle = [&](const Graph& g) {
    const OptStarResult r = opt_star(g, opt.config_cap);
    const Rat integral = brute_force_opt(g).optimum;
    const Rat ratio = integral / r.value;
    const SearchOutcome run =
        run_general(g, r.value, opt.iteration_cap, {}, nullptr, opt.config_cap);
    const char* outcome = run.status == RunStatus::Done    ? "done"
                          : run.status == RunStatus::Stuck ? "stuck"
                                                           : "cap-exceeded";
    csv << fingerprint(g) << ',' << r.value.to_string() << ','
        << integral.to_string() << ',' << ratio.to_string() << ',' << outcome
        << "\n";
    csv.flush();  // keep partial results on disk if a later instance trips a cap
    ++count;
    if (!max_ratio || *max_ratio < ratio) max_ratio = ratio;
  };
  if (opt.enumerate) {
    enumerate_instances(opt.max_vertices, opt.max_edges,
                        parse_weight_list(opt.weights), opt.loops, handle);
  }
  for (const std::string& family : opt.families) handle(make_family(family));
  if (count > 0) {
    std::cout << "max ratio " << max_ratio->to_string() << " over " << count
              << " instances\n";
  }
  return kExitOk;
}

int cmd_gen(const std::string& family, const std::string& out_path) {
  const Graph g = make_family(family);
  std::ofstream out(out_path);
  if (!out) throw Error("cannot open instance output '" + out_path + "'");
  out << format_instance(g);
  std::cout << fingerprint(g) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for balanced edge orientation: relaxation "
               "thresholds, local search, infeasibility certificates"};
  app.require_subcommand(1);

  long default_iter_cap = 0;
  long default_config_cap = 0;
  try {
    default_iter_cap = env_cap_or(kDefaultIterationCap);
    default_config_cap = env_cap_or(kDefaultConfigCap);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }

  std::string optstar_file;
  long optstar_config_cap = default_config_cap;
  auto* optstar_cmd = app.add_subcommand(
      "optstar", "print the least feasible threshold and breakpoint count");
  optstar_cmd->add_option("file", optstar_file, "instance file")->required();
  optstar_cmd->add_option("--config-cap", optstar_config_cap,
                          "max enumerated configurations per vertex");

  SolveOptions solve;
  solve.iteration_cap = default_iter_cap;
  solve.config_cap = default_config_cap;
  auto* solve_cmd = app.add_subcommand(
      "solve", "run the local search, reporting JSON to standard output");
  solve_cmd->add_option("file", solve.file, "instance file")->required();
  solve_cmd->add_option("--tau", solve.tau_text,
                        "threshold as p/q, or 'opt' for the least feasible one")
      ->required();
  solve_cmd->add_option("--mode", solve.mode, "simple or general")
      ->check(CLI::IsMember({"simple", "general"}));
  solve_cmd->add_option("--cap", solve.iteration_cap, "iteration cap");
  solve_cmd->add_option("--config-cap", solve.config_cap,
                        "max enumerated configurations per vertex");
  solve_cmd->add_option("--trace", solve.trace_path,
                        "write JSON-lines trace events to this file");
  solve_cmd->add_flag("--check-replay", solve.check_replay,
                      "re-apply the traced flips and compare final states");
  solve_cmd->add_option("--cert-out", solve.cert_out,
                        "certificate path used when the search stalls");

  std::string certify_file, certify_tau, certify_out;
  long certify_iter_cap = default_iter_cap;
  long certify_config_cap = default_config_cap;
  auto* certify_cmd = app.add_subcommand(
      "certify", "try to prove the threshold infeasible for the relaxation");
  certify_cmd->add_option("file", certify_file, "instance file")->required();
  certify_cmd->add_option("--tau", certify_tau, "threshold as p/q, or 'opt'")
      ->required();
  certify_cmd->add_option("--out", certify_out, "certificate output path");
  certify_cmd->add_option("--cap", certify_iter_cap, "iteration cap");
  certify_cmd->add_option("--config-cap", certify_config_cap,
                          "max enumerated configurations per vertex");

  SweepOptions sweep;
  sweep.iteration_cap = default_iter_cap;
  sweep.config_cap = default_config_cap;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "tabulate exact optima and integrality ratios as CSV");
  sweep_cmd->add_option("--family", sweep.families,
                        "instance family name(arg,...); repeatable");
  sweep_cmd->add_flag("--enumerate", sweep.enumerate,
                      "sweep every canonical instance within the bounds");
  sweep_cmd->add_option("--max-vertices", sweep.max_vertices,
                        "enumeration bound on vertices");
  sweep_cmd->add_option("--max-edges", sweep.max_edges,
                        "enumeration bound on edges");
  sweep_cmd->add_option("--weights", sweep.weights,
                        "comma-separated enumeration weight pool");
  sweep_cmd->add_flag("--loops,!--no-loops", sweep.loops,
                      "include loops in the enumeration");
  sweep_cmd->add_option("--out", sweep.out, "CSV output path")->required();
  sweep_cmd->add_option("--cap", sweep.iteration_cap, "iteration cap");
  sweep_cmd->add_option("--config-cap", sweep.config_cap,
                        "max enumerated configurations per vertex");

  std::string gen_family, gen_out;
  auto* gen_cmd =
      app.add_subcommand("gen", "write a family instance to a file");
  gen_cmd->add_option("--family", gen_family, "instance family name(arg,...)")
      ->required();
  gen_cmd->add_option("--out", gen_out, "instance output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*optstar_cmd) return cmd_optstar(optstar_file, optstar_config_cap);
    if (*solve_cmd) return cmd_solve(solve);
    if (*certify_cmd)
      return cmd_certify(certify_file, certify_tau, certify_out,
                         certify_iter_cap, certify_config_cap);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*gen_cmd) return cmd_gen(gen_family, gen_out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ModeViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMode;
  } catch (const SoundnessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSoundness;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
