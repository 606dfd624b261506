#ifndef LCIS_ONLINE_HPP
#define LCIS_ONLINE_HPP

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcis/graph.hpp"
#include "lcis/iso.hpp"
#include "lcis/transcript.hpp"

namespace lcis {

/// The rule an online move (or a recorded round) broke.
enum class Clause {
  kFreshness,       // selected vertex was already processed (or out of range)
  kMembership,      // added vertex not processed, or already in the solution
  kAnchor,          // added pair contains neither vertex selected this round
  kIsomorphism,     // added pair breaks the induced-subgraph isomorphism
  kRevealExactness, // recorded bits differ from the input or have the wrong length
  kRoundCount,      // transcript does not have exactly n rounds
};

const char* clause_name(Clause clause);

struct Violation {
  int round = 0;  // 1-based
  Clause clause = Clause::kFreshness;
  std::string message;
};

class OnlineViolation : public std::runtime_error {
 public:
  explicit OnlineViolation(Violation violation);
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

/// What an online algorithm may look at: the processed vertices, the edges
/// among them, the current solution and its seed. Asking for any other edge
/// throws std::out_of_range, so a strategy cannot observe unrevealed input.
class VisibleState {
 public:
  VisibleState(int order, Seed seed);

  int order() const { return order_; }
  Seed seed() const { return seed_; }
  /// Rounds whose selection has been made (and whose edges are revealed).
  int processed_count() const { return static_cast<int>(order1_.size()); }

  std::span<const Vertex> processed(int side) const { return side == 1 ? order1_ : order2_; }
  bool is_processed(int side, Vertex v) const;
  bool in_solution(int side, Vertex v) const;
  /// Edge status of a revealed pair on side 1 or 2.
  bool edge(int side, Vertex u, Vertex v) const;
  const Solution& solution() const { return solution_; }

  /// Round just processed: the pair selected in the current round.
  std::pair<Vertex, Vertex> current() const;

 private:
  friend class OnlineDriver;

  int order_;
  Seed seed_;
  std::vector<Vertex> order1_;
  std::vector<Vertex> order2_;
  std::vector<bool> processed1_;
  std::vector<bool> processed2_;
  std::vector<bool> chosen1_;
  std::vector<bool> chosen2_;
  Graph revealed1_;
  Graph revealed2_;
  Solution solution_;
};

/// An online algorithm: one fresh vertex per graph each round, then either
/// no change or one pair added to the solution. Every move is checked by the
/// driver.
class OnlineStrategy {
 public:
  virtual ~OnlineStrategy() = default;
  virtual std::pair<Vertex, Vertex> select_next(const VisibleState& state) = 0;
  virtual std::optional<Addition> update(const VisibleState& state) = 0;
};

struct OnlineResult {
  Solution solution;
  Transcript transcript;
};

/// Runs `strategy` for n rounds on `input`, revealing exactly the new edges
/// each round. Throws OnlineViolation naming the violated clause.
OnlineResult run_online(OnlineStrategy& strategy, const GraphPair& input, Seed seed = {});

/// The greedy algorithm expressed as an online strategy: selects (t, t) in
/// round t and replays the greedy step-t scan on the visible state.
std::unique_ptr<OnlineStrategy> greedy_as_online();

struct TranscriptCheck {
  std::optional<Violation> violation;

  bool ok() const { return !violation.has_value(); }
  explicit operator bool() const { return ok(); }
};

/// Replays a transcript against `input` and reports the first violation.
TranscriptCheck validate_transcript(const Transcript& transcript, const GraphPair& input);

}  // namespace lcis

#endif  // LCIS_ONLINE_HPP
