#include "lcis/online.hpp"

#include <algorithm>

namespace lcis {

const char* clause_name(Clause clause) {
  switch (clause) {
    case Clause::kFreshness:
      return "freshness";
    case Clause::kMembership:
      return "membership";
    case Clause::kAnchor:
      return "anchor-vertex";
    case Clause::kIsomorphism:
      return "isomorphism-maintenance";
    case Clause::kRevealExactness:
      return "reveal-exactness";
    case Clause::kRoundCount:
      return "round-count";
  }
  return "unknown";
}

namespace {

std::string describe(const Violation& v) {
  return std::string(clause_name(v.clause)) + " violated at round " + std::to_string(v.round) +
         (v.message.empty() ? "" : ": " + v.message);
}

}  // namespace

OnlineViolation::OnlineViolation(Violation violation)
    : std::runtime_error(describe(violation)), violation_(std::move(violation)) {}

VisibleState::VisibleState(int order, Seed seed)
    : order_(order),
      seed_(seed),
      processed1_(static_cast<std::size_t>(order), false),
      processed2_(static_cast<std::size_t>(order), false),
      chosen1_(static_cast<std::size_t>(order), false),
      chosen2_(static_cast<std::size_t>(order), false),
      revealed1_(order),
      revealed2_(order) {}

bool VisibleState::is_processed(int side, Vertex v) const {
  if (v < 0 || v >= order_) {
    return false;
  }
  return side == 1 ? processed1_[v] : processed2_[v];
}

bool VisibleState::in_solution(int side, Vertex v) const {
  if (v < 0 || v >= order_) {
    return false;
  }
  return side == 1 ? chosen1_[v] : chosen2_[v];
}

bool VisibleState::edge(int side, Vertex u, Vertex v) const {
  if (u == v || !is_processed(side, u) || !is_processed(side, v)) {
    throw std::out_of_range("edge {" + std::to_string(u) + "," + std::to_string(v) +
                            "} has not been revealed on side " + std::to_string(side));
  }
  return (side == 1 ? revealed1_ : revealed2_).has_edge(u, v);
}

std::pair<Vertex, Vertex> VisibleState::current() const {
  if (order1_.empty()) {
    throw std::logic_error("no round has been processed yet");
  }
  return {order1_.back(), order2_.back()};
}

// Owns the VisibleState and applies moves to it. Shared by run_online and
// validate_transcript so both enforce the same rules.
class OnlineDriver {
 public:
  OnlineDriver(const GraphPair& input, Seed seed) : input_(input), state_(input.order(), seed) {}

  const VisibleState& state() const { return state_; }
  int round() const { return state_.processed_count(); }

  // Step 1: process a fresh pair and reveal its edges to earlier vertices.
  Round process(Vertex v1, Vertex v2) {
    const int t = round() + 1;
    const int n = state_.order_;
    if (v1 < 0 || v1 >= n || v2 < 0 || v2 >= n) {
      throw OnlineViolation({t, Clause::kFreshness, "selected vertex out of range"});
    }
    if (state_.processed1_[v1]) {
      throw OnlineViolation({t, Clause::kFreshness, "vertex " + std::to_string(v1) + " of G1 already processed"});
    }
    if (state_.processed2_[v2]) {
      throw OnlineViolation({t, Clause::kFreshness, "vertex " + std::to_string(v2) + " of G2 already processed"});
    }
    Round record;
    record.v1 = v1;
    record.v2 = v2;
    record.revealed1 = reveal(input_.g1, state_.revealed1_, state_.order1_, v1);
    record.revealed2 = reveal(input_.g2, state_.revealed2_, state_.order2_, v2);
    state_.order1_.push_back(v1);
    state_.order2_.push_back(v2);
    state_.processed1_[v1] = true;
    state_.processed2_[v2] = true;
    return record;
  }

  // Step 2: optionally extend the solution, anchored at this round's pair.
  void apply(const std::optional<Addition>& added) {
    if (!added) {
      return;
    }
    const int t = round();
    const auto [a, b] = *added;
    if (!state_.is_processed(1, a) || !state_.is_processed(2, b)) {
      throw OnlineViolation({t, Clause::kMembership, "added vertex has not been processed"});
    }
    if (state_.chosen1_[a] || state_.chosen2_[b]) {
      throw OnlineViolation({t, Clause::kMembership, "added vertex is already in the solution"});
    }
    const auto [current1, current2] = state_.current();
    if (a != current1 && b != current2) {
      throw OnlineViolation({t, Clause::kAnchor,
                             "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                 ") contains neither vertex processed this round"});
    }
    const auto& solution = state_.solution_;
    for (std::size_t p = 0; p < solution.size(); ++p) {
      if (state_.revealed1_.has_edge(a, solution.s1[p]) != state_.revealed2_.has_edge(b, solution.s2[p])) {
        throw OnlineViolation({t, Clause::kIsomorphism,
                               "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                   ") disagrees with solution position " + std::to_string(p)});
      }
    }
    state_.solution_.s1.push_back(a);
    state_.solution_.s2.push_back(b);
    state_.chosen1_[a] = true;
    state_.chosen2_[b] = true;
  }

 private:
  static Bitset reveal(const Graph& truth, Graph& revealed, std::span<const Vertex> earlier, Vertex v) {
    Bitset bits(earlier.size());
    for (std::size_t p = 0; p < earlier.size(); ++p) {
      if (truth.has_edge(v, earlier[p])) {
        bits.set(p);
        revealed.add_edge(v, earlier[p]);
      }
    }
    return bits;
  }

  const GraphPair& input_;
  VisibleState state_;
};

OnlineResult run_online(OnlineStrategy& strategy, const GraphPair& input, Seed seed) {
  OnlineDriver driver(input, seed);
  OnlineResult result;
  for (int t = 1; t <= input.order(); ++t) {
    const auto [v1, v2] = strategy.select_next(driver.state());
    Round record = driver.process(v1, v2);
    record.added = strategy.update(driver.state());
    driver.apply(record.added);
    result.transcript.rounds.push_back(std::move(record));
  }
  result.solution = driver.state().solution();
  return result;
}

namespace {

class GreedyOnline final : public OnlineStrategy {
 public:
  std::pair<Vertex, Vertex> select_next(const VisibleState& state) override {
    const Vertex next = state.processed_count();
    return {next, next};
  }

  std::optional<Addition> update(const VisibleState& state) override {
    const auto [ui, vi] = state.current();
    // Processed vertices in order u_0..u_i and v_0..v_i.
    const auto order1 = state.processed(1);
    const auto order2 = state.processed(2);
    for (std::size_t j = 0; j < order1.size(); ++j) {
      const Vertex uj = order1[j];
      const Vertex vj = order2[j];
      if (!state.in_solution(2, vj) && identical(state, ui, vj)) {
        return Addition{ui, vj};
      }
      if (!state.in_solution(1, uj) && identical(state, uj, vi)) {
        return Addition{uj, vi};
      }
    }
    return std::nullopt;
  }

 private:
  static bool identical(const VisibleState& state, Vertex u, Vertex v) {
    const auto& solution = state.solution();
    for (std::size_t p = 0; p < solution.size(); ++p) {
      if (state.edge(1, u, solution.s1[p]) != state.edge(2, v, solution.s2[p])) {
        return false;
      }
    }
    return true;
  }
};

}  // namespace

std::unique_ptr<OnlineStrategy> greedy_as_online() { return std::make_unique<GreedyOnline>(); }

TranscriptCheck validate_transcript(const Transcript& transcript, const GraphPair& input) {
  if (transcript.order() != input.order()) {
    return {Violation{0, Clause::kRoundCount,
                      "expected " + std::to_string(input.order()) + " rounds, found " +
                          std::to_string(transcript.order())}};
  }
  OnlineDriver driver(input, Seed{});
  try {
    for (const auto& round : transcript.rounds) {
      const Round replayed = driver.process(round.v1, round.v2);
      if (replayed.revealed1 != round.revealed1 || replayed.revealed2 != round.revealed2) {
        const bool first = replayed.revealed1 != round.revealed1;
        return {Violation{driver.round(), Clause::kRevealExactness,
                          std::string("recorded bits for G") + (first ? "1" : "2") +
                              " differ from the input"}};
      }
      driver.apply(round.added);
    }
  } catch (const OnlineViolation& e) {
    return {e.violation()};
  }
  return {};
}

}  // namespace lcis
