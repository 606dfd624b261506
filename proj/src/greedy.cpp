#include "lcis/greedy.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <string>

#include "lcis/parallel.hpp"

namespace lcis {

bool identical_connections(const GraphPair& input, std::span<const Vertex> s1,
                           std::span<const Vertex> s2, Vertex u, Vertex v) {
  const int n = input.order();
  if (s1.size() != s2.size()) {
    throw ContractError("identical_connections: |s1| != |s2|");
  }
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw ContractError("identical_connections: vertex out of range");
  }
  if (std::find(s1.begin(), s1.end(), u) != s1.end()) {
    throw ContractError("identical_connections: u already matched");
  }
  if (std::find(s2.begin(), s2.end(), v) != s2.end()) {
    throw ContractError("identical_connections: v already matched");
  }
  Bitset mask1(s1.size());
  Bitset mask2(s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    mask1.assign(i, input.g1.has_edge(u, s1[i]));
    mask2.assign(i, input.g2.has_edge(v, s2[i]));
  }
  return mask1 == mask2;
}

namespace {

// For every vertex, its edge pattern to the matched vertices of one graph:
// bit p of row x is edge(x, s[p]). Rows are stored contiguously and widened
// (doubling) as the solution grows, so the common case of a solution below
// 64 pairs compares one word per candidate.
class SignatureTable {
 public:
  explicit SignatureTable(int order) : order_(static_cast<std::size_t>(order)), data_(order_, 0) {}

  const std::uint64_t* row(Vertex x) const { return data_.data() + static_cast<std::size_t>(x) * stride_; }

  // Records the matched vertex at position `pos`.
  void append(const Graph& g, Vertex matched, std::size_t pos) {
    if (pos / Bitset::kWordBits >= stride_) {
      widen();
    }
    const std::size_t word = pos / Bitset::kWordBits;
    const std::uint64_t bit = std::uint64_t{1} << (pos % Bitset::kWordBits);
    const auto neighbours = g.neighbours(matched).words();
    for (std::size_t w = 0; w < neighbours.size(); ++w) {
      for (std::uint64_t bits = neighbours[w]; bits != 0; bits &= bits - 1) {
        const std::size_t x = w * Bitset::kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        data_[x * stride_ + word] |= bit;
      }
    }
  }

  std::size_t stride() const { return stride_; }

 private:
  void widen() {
    const std::size_t wider = stride_ * 2;
    std::vector<std::uint64_t> next(order_ * wider, 0);
    for (std::size_t x = 0; x < order_; ++x) {
      std::memcpy(next.data() + x * wider, data_.data() + x * stride_, stride_ * sizeof(std::uint64_t));
    }
    data_ = std::move(next);
    stride_ = wider;
  }

  std::size_t order_;
  std::size_t stride_ = 1;
  std::vector<std::uint64_t> data_;
};

}  // namespace

GreedyResult greedy_lcis(const GraphPair& input, TranscriptMode mode) {
  const int n = input.order();
  const bool record = mode == TranscriptMode::kRecord;
  SignatureTable sig1(n);
  SignatureTable sig2(n);
  std::vector<bool> matched1(static_cast<std::size_t>(n), false);
  std::vector<bool> matched2(static_cast<std::size_t>(n), false);
  GreedyResult result;
  auto& solution = result.solution;

  // Positions at and beyond |S| are zero in every row, so comparing whole
  // words covers exactly the matched positions.
  const auto same_connections = [&](Vertex u, Vertex v) {
    const std::size_t words = solution.size() / Bitset::kWordBits + 1;
    return std::equal(sig1.row(u), sig1.row(u) + words, sig2.row(v));
  };

  for (Vertex i = 0; i < n; ++i) {
    if (matched1[i] || matched2[i]) {
      throw ContractError("greedy: vertex matched before it was processed");
    }
    std::optional<Addition> added;
    for (Vertex j = 0; j <= i && !added; ++j) {
      if (!matched2[j] && same_connections(i, j)) {
        added = Addition{i, j};
      } else if (!matched1[j] && same_connections(j, i)) {
        added = Addition{j, i};
      }
    }
    if (added) {
      const std::size_t pos = solution.size();
      solution.s1.push_back(added->v1);
      solution.s2.push_back(added->v2);
      matched1[added->v1] = true;
      matched2[added->v2] = true;
      sig1.append(input.g1, added->v1, pos);
      sig2.append(input.g2, added->v2, pos);
    }
    if (record) {
      Round round;
      round.v1 = i;
      round.v2 = i;
      round.revealed1 = Bitset(static_cast<std::size_t>(i));
      round.revealed2 = Bitset(static_cast<std::size_t>(i));
      for (Vertex p = 0; p < i; ++p) {
        round.revealed1.assign(static_cast<std::size_t>(p), input.g1.has_edge(i, p));
        round.revealed2.assign(static_cast<std::size_t>(p), input.g2.has_edge(i, p));
      }
      round.added = added;
      result.transcript.rounds.push_back(std::move(round));
    }
  }
  return result;
}

double greedy_threshold_natural(int order) {
  if (order < 3) {
    return 0.0;
  }
  const double n = order;
  return 2.0 * std::log2(n) - 9.0 * std::log(std::log(n));
}

double greedy_threshold_binary(int order) {
  if (order < 2) {
    return 0.0;
  }
  const double n = order;
  return 2.0 * std::log2(n) - 9.0 * std::log2(std::log2(n));
}

GreedyStats greedy_size_stats(int order, int trials, Seed master_seed, unsigned jobs) {
  if (trials < 1) {
    throw ContractError("greedy_size_stats requires trials >= 1");
  }
  GreedyStats stats;
  stats.order = order;
  stats.sizes.assign(static_cast<std::size_t>(trials), 0);
  stats.runtime_ms.assign(static_cast<std::size_t>(trials), 0.0);
  parallel_for(static_cast<std::size_t>(trials), jobs, [&](std::size_t trial) {
    const Seed seed = derive_seed(master_seed, {kTrialTag, static_cast<std::uint64_t>(order), trial});
    const GraphPair input = sample_pair(order, seed);
    const auto start = std::chrono::steady_clock::now();
    const auto result = greedy_lcis(input, TranscriptMode::kSkip);
    const auto stop = std::chrono::steady_clock::now();
    stats.sizes[trial] = result.solution.size();
    stats.runtime_ms[trial] = std::chrono::duration<double, std::milli>(stop - start).count();
  });

  stats.min = *std::min_element(stats.sizes.begin(), stats.sizes.end());
  stats.max = *std::max_element(stats.sizes.begin(), stats.sizes.end());
  std::size_t sum = 0;
  std::size_t sum_squares = 0;
  for (const auto s : stats.sizes) {
    sum += s;
    sum_squares += s * s;
  }
  const double count = trials;
  stats.mean = static_cast<double>(sum) / count;
  stats.stddev = std::sqrt(std::max(0.0, static_cast<double>(sum_squares) / count - stats.mean * stats.mean));
  auto runtimes = stats.runtime_ms;
  std::sort(runtimes.begin(), runtimes.end());
  const std::size_t mid = runtimes.size() / 2;
  stats.median_runtime_ms =
      runtimes.size() % 2 == 1 ? runtimes[mid] : 0.5 * (runtimes[mid - 1] + runtimes[mid]);
  stats.threshold_natural = greedy_threshold_natural(order);
  stats.threshold_binary = greedy_threshold_binary(order);
  return stats;
}

}  // namespace lcis
