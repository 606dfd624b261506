#ifndef LCIS_GREEDY_HPP
#define LCIS_GREEDY_HPP

#include <span>
#include <vector>

#include "lcis/graph.hpp"
#include "lcis/iso.hpp"
#include "lcis/transcript.hpp"

namespace lcis {

/// True iff for every position i, edge(g1, u, s1[i]) == edge(g2, v, s2[i]),
/// i.e. extending the positional isomorphism by u -> v keeps it an
/// isomorphism. Requires u not in s1, v not in s2 and |s1| == |s2|; throws
/// ContractError otherwise.
bool identical_connections(const GraphPair& input, std::span<const Vertex> s1,
                           std::span<const Vertex> s2, Vertex u, Vertex v);

enum class TranscriptMode { kRecord, kSkip };

struct GreedyResult {
  Solution solution;
  /// Empty when run with TranscriptMode::kSkip.
  Transcript transcript;
};

/// The greedy online algorithm. Both graphs are processed in natural vertex
/// order. At step i the scan j = 0..i first tries (u_i, v_j) when v_j is
/// unmatched, then (u_j, v_i) when u_j is unmatched; the first pair with
/// identical connections to the current solution is added and the step ends.
GreedyResult greedy_lcis(const GraphPair& input, TranscriptMode mode = TranscriptMode::kRecord);

struct GreedyStats {
  int order = 0;
  std::vector<std::size_t> sizes;
  std::vector<double> runtime_ms;
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  /// Population standard deviation.
  double stddev = 0.0;
  double median_runtime_ms = 0.0;
  /// 2 log2 n - 9 ln ln n.
  double threshold_natural = 0.0;
  /// 2 log2 n - 9 log2 log2 n.
  double threshold_binary = 0.0;
};

/// Runs greedy on sample_pair(n, derive_seed(master, {kTrialTag, n, trial}))
/// for each trial. Runtime covers greedy only, not sampling.
GreedyStats greedy_size_stats(int order, int trials, Seed master_seed, unsigned jobs = 1);

double greedy_threshold_natural(int order);
double greedy_threshold_binary(int order);

}  // namespace lcis

#endif  // LCIS_GREEDY_HPP
