#ifndef LCIS_HARNESS_HPP
#define LCIS_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lcis/random.hpp"

namespace lcis {

enum class ExperimentKind { kGreedyScaling, kExactVsGreedy, kOgpFamily, kIsoProb };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kGreedyScaling;
  /// Graph orders (for iso-prob: subgraph sizes k).
  std::vector<int> orders;
  int trials = 1;
  Seed master_seed{0};
  /// Directory receiving records.csv and summary.json. Empty: no files.
  std::filesystem::path out;
  unsigned jobs = 1;
  // Kind-specific.
  double eps = 1.0;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> threshold;
  std::optional<int> family_size;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Reads the JSON form:
///   {"kind": "greedy-scaling", "n": [1024], "trials": 200, "seed": 1,
///    "out": "runs/x", "jobs": 1, "eps": 1.0, "budget": 1000000,
///    "threshold": 9, "m": 4}
ExperimentConfig config_from_json(const nlohmann::json& json);

struct TrialRecord {
  ExperimentKind kind = ExperimentKind::kGreedyScaling;
  int n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string algo;
  std::size_t size = 0;
  std::string flag;
  double runtime_ms = 0.0;

  /// Equality ignoring runtime_ms.
  bool same_outcome(const TrialRecord& other) const;
};

/// derive_seed(master, {kTrialTag, n, trial}).
Seed trial_seed(Seed master, int n, int trial);

inline constexpr std::string_view kCsvHeader = "kind,n,trial,seed,algo,size,flag,runtime_ms";

std::string records_to_csv(std::span<const TrialRecord> records);
std::vector<TrialRecord> parse_records_csv(std::string_view text);

/// Per (n, algo) aggregates: count, mean, population std, min, max, runtime
/// mean/median; greedy-scaling rows add ratio = mean / (2 log2 n). Throws
/// std::invalid_argument if the records mix experiment kinds.
nlohmann::json summarize(std::span<const TrialRecord> records);

struct ExperimentOutput {
  std::vector<TrialRecord> records;
  nlohmann::json summary;
  /// Every criterion in summary["criteria"] passed.
  bool passed = true;
};

/// Runs every trial (fanned out over config.jobs workers), orders records by
/// (n, trial, algo), evaluates the kind's criteria and, if config.out is
/// set, writes records.csv and summary.json there. Files are written to
/// temporaries and renamed, so an aborted run leaves nothing behind.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Band [lo, hi] for mean greedy size / (2 log2 n), frozen from a pilot run.
std::optional<std::pair<double, double>> greedy_ratio_band(int order);

}  // namespace lcis

#endif  // LCIS_HARNESS_HPP
