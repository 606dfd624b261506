// lcis: command-line front end for the solvers, the online simulator, the
// OGP tooling and the experiment harness.
//
// Exit codes: 0 success, 1 a checked criterion failed, 2 usage or input error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcis/errors.hpp"
#include "lcis/graph.hpp"
#include "lcis/greedy.hpp"
#include "lcis/harness.hpp"
#include "lcis/iso.hpp"
#include "lcis/ogp.hpp"
#include "lcis/online.hpp"
#include "lcis/transcript.hpp"

namespace {

using nlohmann::ordered_json;
using namespace lcis;

constexpr int kExitOk = 0;
constexpr int kExitCriterion = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  unsigned jobs = 1;
  std::string config;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print(const ordered_json& json) { std::cout << json.dump(2) << '\n'; }

ordered_json solution_json(const Solution& s) {
  ordered_json j;
  j["size"] = s.size();
  j["s1"] = s.s1;
  j["s2"] = s.s2;
  return j;
}

// Either --n (sampled with --seed) or --graph1/--graph2.
struct InputSpec {
  std::optional<int> n;
  std::string graph1;
  std::string graph2;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "Order of the sampled G(n,1/2) pair")->check(CLI::PositiveNumber);
    auto* g1 = cmd->add_option("--graph1", graph1, "Edge-list file for G1")->check(CLI::ExistingFile);
    auto* g2 = cmd->add_option("--graph2", graph2, "Edge-list file for G2")->check(CLI::ExistingFile);
    g1->needs(g2);
    g2->needs(g1);
  }

  GraphPair load(const Globals& globals) const {
    if (!graph1.empty()) {
      if (n) {
        throw UsageError("--n cannot be combined with --graph1/--graph2");
      }
      return GraphPair(read_graph_file(graph1), read_graph_file(graph2));
    }
    if (!n) {
      throw UsageError("either --n or --graph1/--graph2 is required");
    }
    return sample_pair(*n, Seed{globals.seed});
  }
};

void write_transcript_file(const std::string& path, const Transcript& transcript) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  write_transcript(out, transcript);
}

int run_greedy(const Globals& globals, const InputSpec& input, const std::string& transcript_path) {
  const auto pair = input.load(globals);
  const auto start = std::chrono::steady_clock::now();
  const auto result =
      greedy_lcis(pair, transcript_path.empty() ? TranscriptMode::kSkip : TranscriptMode::kRecord);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!transcript_path.empty()) {
    write_transcript_file(transcript_path, result.transcript);
  }
  auto json = solution_json(result.solution);
  json["runtime_ms"] = ms;
  print(json);
  return kExitOk;
}

int run_exact(const Globals& globals, const InputSpec& input, std::optional<std::uint64_t> budget) {
  const auto pair = input.load(globals);
  const auto result = exact_lcis(pair, budget);
  ordered_json json;
  json["size"] = result.solution.size();
  json["vertices"] = {{"g1", result.solution.s1}, {"g2", result.solution.s2}};
  ordered_json mapping = ordered_json::object();
  for (std::size_t p = 0; p < result.solution.size(); ++p) {
    mapping[std::to_string(result.solution.s1[p])] = result.solution.s2[p];
  }
  json["mapping"] = mapping;
  json["optimal"] = result.optimal;
  json["flag"] = result.optimal ? "optimal" : "lower-bound";
  json["nodes"] = result.nodes;
  print(json);
  return kExitOk;
}

std::unique_ptr<OnlineStrategy> make_strategy(const std::string& name) {
  if (name == "greedy") {
    return greedy_as_online();
  }
  throw UsageError("unknown strategy '" + name + "'");
}

int run_online_sim(const Globals& globals, const InputSpec& input, const std::string& strategy_name,
                   bool validate, const std::string& transcript_path) {
  const auto pair = input.load(globals);
  auto strategy = make_strategy(strategy_name);
  const auto result = run_online(*strategy, pair, Seed{globals.seed});
  ordered_json json;
  json["strategy"] = strategy_name;
  json["n"] = pair.order();
  json["solution"] = solution_json(result.solution);
  json["rounds"] = result.transcript.order();
  std::string path = transcript_path;
  if (path.empty() && !globals.out.empty()) {
    path = globals.out;
  }
  if (!path.empty()) {
    write_transcript_file(path, result.transcript);
    json["transcript"] = path;
  }
  int code = kExitOk;
  if (validate) {
    const auto check = validate_transcript(result.transcript, pair);
    json["valid"] = check.ok();
    if (!check.ok()) {
      json["violation"] = {{"round", check.violation->round},
                           {"clause", clause_name(check.violation->clause)},
                           {"message", check.violation->message}};
      code = kExitCriterion;
    }
  }
  print(json);
  return code;
}

int run_ogp_scan(const Globals& globals, double eps, std::optional<int> n, int seeds) {
  const auto check = psi_min_check(eps);
  ordered_json json;
  json["eps"] = eps;
  json["m"] = check.m;
  json["gamma"] = check.gamma;
  json["alpha_min"] = check.minimizer;
  json["f_min"] = check.f_min;
  json["psi_at_min"] = check.psi_at_min;
  json["pass"] = check.pass;
  // Exponents for the symmetric tuple alpha_i = alpha, at L = log2 n.
  const double log2n = std::log2(static_cast<double>(n.value_or(1 << 20)));
  json["log2n"] = log2n;
  ordered_json grid = ordered_json::array();
  const double lo = 2.0 + eps;
  const double hi = std::max(lo, 6.0);
  for (int i = 0; i <= 16; ++i) {
    const double alpha = lo + (hi - lo) * i / 16.0;
    const std::vector<double> alphas(static_cast<std::size_t>(check.m), alpha);
    grid.push_back({{"alpha", alpha},
                    {"psi", psi(alphas, check.gamma)},
                    {"counting", counting_exponent(alphas, check.gamma, log2n)},
                    {"probability", probability_exponent(alphas, check.gamma, log2n)},
                    {"first_moment", first_moment_exponent(alphas, check.gamma, log2n)}});
  }
  json["grid"] = grid;
  if (n) {
    const auto estimate = estimate_events(greedy_as_online, *n, eps, seeds, Seed{globals.seed});
    json["events"] = {{"n", estimate.order},
                      {"seeds", estimate.seeds},
                      {"m", estimate.m},
                      {"large_threshold", estimate.large_threshold},
                      {"tau_threshold", estimate.tau_threshold},
                      {"pr_single", estimate.pr_single},
                      {"pr_all", estimate.pr_all}};
  }
  print(json);
  return check.pass ? kExitOk : kExitCriterion;
}

struct CensusArgs {
  int n = 8;
  int m = 1;
  int t = 1;
  int k_sol = 1;
  int k_ov = 1;
  double w_threshold = 0.0;
  bool paper_params = false;
  double eps = 1.0;
};

int run_ogp_census(const Globals& globals, const CensusArgs& args) {
  const Seed seed{globals.seed};
  if (args.t < 1 || args.t > args.n) {
    throw UsageError("--t must lie in [1, n]");
  }
  const auto pair = sample_pair(args.n, seed);
  auto strategy = greedy_as_online();
  const auto run = run_online(*strategy, pair, seed);
  const auto family = build_family(pair, run.transcript, args.t, args.m, seed);
  ForbiddenStructureQuery query;
  if (args.paper_params) {
    query = asymptotic_query(args.n, args.eps, args.m, args.t);
  } else {
    query = {args.m, args.k_sol, args.k_ov, args.t, args.w_threshold};
  }
  const auto count = count_forbidden(family, query);
  ordered_json json;
  json["n"] = args.n;
  json["m"] = query.m;
  json["t"] = query.t;
  json["k_sol"] = query.k_sol;
  json["k_ov"] = query.k_ov;
  json["w_threshold"] = query.w_threshold;
  json["z_count"] = count.z_count;
  json["w_count"] = count.w_count;
  print(json);
  return kExitOk;
}

int run_ogp_family(const Globals& globals, int n, int t, int m, const std::string& strategy_name,
                   std::optional<std::size_t> threshold, double eps) {
  const Seed seed{globals.seed};
  if (t < 1 || t > n) {
    throw UsageError("--t must lie in [1, n]");
  }
  make_strategy(strategy_name);
  const auto pair = sample_pair(n, seed);
  auto strategy = make_strategy(strategy_name);
  const auto run = run_online(*strategy, pair, seed);
  const auto family = build_family(pair, run.transcript, t, m, seed);
  const std::size_t large = threshold.value_or(OgpParams::make(eps, n).large_threshold());
  const auto members = run_family([&] { return make_strategy(strategy_name); }, family, large, seed);
  ordered_json json;
  json["n"] = n;
  json["t"] = t;
  json["m"] = m;
  json["large_threshold"] = large;
  json["sizes"] = members.sizes;
  json["all_large"] = members.all_reached;
  print(json);
  return kExitOk;
}

struct ExperimentArgs {
  std::string kind;
  std::vector<int> n;
  int trials = 1;
  double eps = 1.0;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> threshold;
  std::optional<int> m;
};

int run_experiment_cmd(const Globals& globals, const ExperimentArgs& args, const CLI::App& cmd,
                       const CLI::App& app) {
  ExperimentConfig config;
  if (!globals.config.empty()) {
    std::ifstream in(globals.config);
    if (!in) {
      throw UsageError("cannot read config " + globals.config);
    }
    config = config_from_json(nlohmann::json::parse(in));
  } else if (args.kind.empty()) {
    throw UsageError("experiment needs --kind or --config");
  }
  // Explicit flags override the file.
  if (!args.kind.empty()) config.kind = parse_experiment_kind(args.kind);
  if (cmd.count("--n")) config.orders = args.n;
  if (cmd.count("--trials")) config.trials = args.trials;
  if (cmd.count("--eps")) config.eps = args.eps;
  if (args.budget) config.budget = args.budget;
  if (args.threshold) config.threshold = args.threshold;
  if (args.m) config.family_size = args.m;
  if (app.count("--seed")) config.master_seed = Seed{globals.seed};
  if (app.count("--out")) config.out = globals.out;
  if (app.count("--jobs")) config.jobs = globals.jobs;
  config.validate();

  const auto output = run_experiment(config);
  std::cout << output.summary.dump(2) << '\n';
  return output.passed ? kExitOk : kExitCriterion;
}

int run_verify(const Globals& globals, const InputSpec& input, const std::string& solution_path,
               const std::string& transcript_path) {
  const auto pair = input.load(globals);
  ordered_json json;
  bool ok = true;
  if (!solution_path.empty()) {
    std::ifstream in(solution_path);
    if (!in) {
      throw UsageError("cannot read " + solution_path);
    }
    const auto parsed = nlohmann::json::parse(in);
    Solution solution{parsed.at("s1").get<std::vector<Vertex>>(), parsed.at("s2").get<std::vector<Vertex>>()};
    const auto verdict = verify_solution(pair, solution);
    json["solution"] = {{"size", solution.size()}, {"isomorphic", verdict.isomorphic}};
    if (verdict.violation) {
      json["solution"]["violation"] = {verdict.violation->first, verdict.violation->second};
    }
    ok = ok && verdict.isomorphic;
  }
  if (!transcript_path.empty()) {
    std::ifstream in(transcript_path);
    if (!in) {
      throw UsageError("cannot read " + transcript_path);
    }
    const auto transcript = read_transcript(in);
    const auto check = validate_transcript(transcript, pair);
    json["transcript"] = {{"rounds", transcript.order()}, {"valid", check.ok()}};
    if (!check.ok()) {
      json["transcript"]["violation"] = {{"round", check.violation->round},
                                         {"clause", clause_name(check.violation->clause)},
                                         {"message", check.violation->message}};
    }
    ok = ok && check.ok();
  }
  if (solution_path.empty() && transcript_path.empty()) {
    throw UsageError("verify needs --solution and/or --transcript");
  }
  json["ok"] = ok;
  print(json);
  return ok ? kExitOk : kExitCriterion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Largest common induced subgraph toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--seed", globals.seed, "Seed (master seed for experiments)");
  app.add_option("--out", globals.out, "Output path (directory for experiments, file for transcripts)");
  app.add_option("--jobs", globals.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  app.add_option("--config", globals.config, "JSON experiment config")->check(CLI::ExistingFile);

  std::function<int()> action;

  InputSpec greedy_input;
  std::string greedy_transcript;
  auto* greedy = app.add_subcommand("greedy", "Run the greedy algorithm");
  greedy_input.attach(greedy);
  greedy->add_option("--emit-transcript", greedy_transcript, "Write the round transcript (JSON lines)");
  greedy->callback([&] { action = [&] { return run_greedy(globals, greedy_input, greedy_transcript); }; });

  InputSpec exact_input;
  std::optional<std::uint64_t> exact_budget;
  auto* exact = app.add_subcommand("exact", "Run the branch-and-bound solver");
  exact_input.attach(exact);
  exact->add_option("--budget", exact_budget, "Node budget");
  exact->callback([&] { action = [&] { return run_exact(globals, exact_input, exact_budget); }; });

  InputSpec online_input;
  std::string online_strategy = "greedy";
  std::string online_transcript;
  bool online_validate = false;
  auto* online = app.add_subcommand("online-sim", "Simulate an online strategy");
  online_input.attach(online);
  online->add_option("--strategy", online_strategy, "Strategy name")->check(CLI::IsMember({"greedy"}));
  online->add_option("--transcript", online_transcript, "Transcript output file (default: --out)");
  online->add_flag("--validate", online_validate, "Re-check the transcript against the input");
  online->callback([&] {
    action = [&] {
      return run_online_sim(globals, online_input, online_strategy, online_validate, online_transcript);
    };
  });

  double scan_eps = 1.0;
  std::optional<int> scan_n;
  int scan_seeds = 100;
  auto* scan = app.add_subcommand("ogp-scan", "Exponent calculus and event frequencies");
  scan->add_option("--eps", scan_eps, "epsilon")->required()->check(CLI::PositiveNumber);
  scan->add_option("--n", scan_n, "Also estimate Pr(E), Pr(S) at this n")->check(CLI::PositiveNumber);
  scan->add_option("--seeds", scan_seeds, "Monte Carlo seeds")->check(CLI::PositiveNumber);
  scan->callback([&] { action = [&] { return run_ogp_scan(globals, scan_eps, scan_n, scan_seeds); }; });

  CensusArgs census_args;
  auto* census = app.add_subcommand("ogp-census", "Count forbidden structures in a small family");
  census->add_option("--n", census_args.n, "Order")->required();
  census->add_option("--m", census_args.m, "Family size")->required();
  census->add_option("--t", census_args.t, "Cut round")->required();
  census->add_option("--k-sol", census_args.k_sol, "Minimum solution size");
  census->add_option("--k-ov", census_args.k_ov, "Core size");
  census->add_option("--w-threshold", census_args.w_threshold, "Split between Z and W counts");
  census->add_flag("--paper-params", census_args.paper_params, "Derive thresholds from n and --eps");
  census->add_option("--eps", census_args.eps, "epsilon for --paper-params");
  census->callback([&] { action = [&] { return run_ogp_census(globals, census_args); }; });

  int family_n = 32;
  int family_t = 1;
  int family_m = 4;
  std::string family_strategy = "greedy";
  std::optional<std::size_t> family_threshold;
  double family_eps = 1.0;
  auto* family = app.add_subcommand("ogp-family", "Run a strategy on every member of an interpolation family");
  family->add_option("--n", family_n, "Order")->required()->check(CLI::PositiveNumber);
  family->add_option("--t", family_t, "Cut round")->required();
  family->add_option("--m", family_m, "Family size")->required()->check(CLI::PositiveNumber);
  family->add_option("--strategy", family_strategy, "Strategy name")->check(CLI::IsMember({"greedy"}));
  family->add_option("--threshold", family_threshold, "Large-solution threshold (default ceil((2+eps) log2 n))");
  family->add_option("--eps", family_eps, "epsilon for the default threshold");
  family->callback([&] {
    action = [&] {
      return run_ogp_family(globals, family_n, family_t, family_m, family_strategy, family_threshold, family_eps);
    };
  });

  ExperimentArgs experiment_args;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment and write records.csv/summary.json");
  experiment->add_option("--kind", experiment_args.kind, "greedy-scaling|exact-vs-greedy|ogp-family|iso-prob");
  experiment->add_option("--n", experiment_args.n, "Orders (k for iso-prob)");
  experiment->add_option("--trials", experiment_args.trials, "Trials per n");
  experiment->add_option("--eps", experiment_args.eps, "epsilon (ogp-family)");
  experiment->add_option("--budget", experiment_args.budget, "Node budget (exact-vs-greedy)");
  experiment->add_option("--threshold", experiment_args.threshold, "Large threshold (ogp-family)");
  experiment->add_option("--m", experiment_args.m, "Family size (ogp-family)");
  experiment->callback([&] {
    action = [&] { return run_experiment_cmd(globals, experiment_args, *experiment, app); };
  });

  InputSpec verify_input;
  std::string verify_solution_path;
  std::string verify_transcript_path;
  auto* verify = app.add_subcommand("verify", "Check a solution or transcript against an input");
  verify_input.attach(verify);
  verify->add_option("--solution", verify_solution_path, "JSON file with s1 and s2");
  verify->add_option("--transcript", verify_transcript_path, "JSON-lines transcript");
  verify->callback([&] {
    action = [&] { return run_verify(globals, verify_input, verify_solution_path, verify_transcript_path); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    // Bad flags, unreadable or malformed inputs, capacity refusals.
    std::cerr << "lcis: " << e.what() << '\n';
    return kExitUsage;
  }
}
