#include "doctest.h"

#include <functional>
#include <set>
#include <sstream>

#include "lcis/graph.hpp"
#include "lcis/greedy.hpp"
#include "lcis/iso.hpp"
#include "lcis/online.hpp"
#include "lcis/transcript.hpp"

using namespace lcis;

namespace {

// Processes vertices in natural order and defers the update decision.
class Scripted final : public OnlineStrategy {
 public:
  using Rule = std::function<std::optional<Addition>(const VisibleState&)>;
  explicit Scripted(Rule rule) : rule_(std::move(rule)) {}

  std::pair<Vertex, Vertex> select_next(const VisibleState& s) override {
    return {s.processed_count(), s.processed_count()};
  }
  std::optional<Addition> update(const VisibleState& s) override { return rule_(s); }

 private:
  Rule rule_;
};

class Repeater final : public OnlineStrategy {
 public:
  std::pair<Vertex, Vertex> select_next(const VisibleState&) override { return {0, 0}; }
  std::optional<Addition> update(const VisibleState&) override { return std::nullopt; }
};

// Tries to read every pair on both sides and records what was readable.
class Probe final : public OnlineStrategy {
 public:
  explicit Probe(const GraphPair& truth) : truth_(truth) {}

  std::pair<Vertex, Vertex> select_next(const VisibleState& s) override {
    sweep(s);
    const int n = s.order();
    const int t = s.processed_count();
    return {(t * 5) % n, (t * 3 + 1) % n};  // both strides are units mod n = 16
  }
  std::optional<Addition> update(const VisibleState& s) override {
    sweep(s);
    return std::nullopt;
  }

  int leaks = 0;
  int wrong = 0;
  int readable = 0;

 private:
  void sweep(const VisibleState& s) {
    for (int side = 1; side <= 2; ++side) {
      const Graph& g = side == 1 ? truth_.g1 : truth_.g2;
      for (Vertex u = 0; u < s.order(); ++u) {
        for (Vertex v = 0; v < s.order(); ++v) {
          if (u == v) continue;
          const bool allowed = s.is_processed(side, u) && s.is_processed(side, v);
          try {
            const bool e = s.edge(side, u, v);
            ++readable;
            leaks += allowed ? 0 : 1;
            wrong += e == g.has_edge(u, v) ? 0 : 1;
          } catch (const std::out_of_range&) {
            leaks += allowed ? 1 : 0;  // a revealed pair must be readable
          }
        }
      }
    }
  }
  const GraphPair& truth_;
};

Clause clause_of(OnlineStrategy& strategy, const GraphPair& y) {
  try {
    run_online(strategy, y);
  } catch (const OnlineViolation& e) {
    return e.violation().clause;
  }
  FAIL("expected a violation");
  return Clause::kRoundCount;
}

}  // namespace

TEST_CASE("trivial strategies") {
  const auto y = sample_pair(12, Seed{4});
  Scripted never([](const VisibleState&) { return std::nullopt; });
  const auto none = run_online(never, y);
  CHECK(none.solution.size() == 0);
  CHECK(none.transcript.order() == 12);
  for (const auto& r : none.transcript.rounds) {
    CHECK_FALSE(r.added.has_value());
  }

  Scripted first([](const VisibleState& s) -> std::optional<Addition> {
    if (s.processed_count() == 1) return Addition{0, 0};
    return std::nullopt;
  });
  CHECK(run_online(first, y).solution.size() == 1);
}

TEST_CASE("driver rejects each invalid move") {
  const GraphPair y(Graph::complete(6), Graph(6));
  Repeater repeater;
  CHECK(clause_of(repeater, y) == Clause::kFreshness);

  Scripted anchor([](const VisibleState& s) -> std::optional<Addition> {
    if (s.processed_count() == 3) return Addition{0, 1};
    return std::nullopt;
  });
  CHECK(clause_of(anchor, y) == Clause::kAnchor);

  Scripted future([](const VisibleState& s) -> std::optional<Addition> {
    if (s.processed_count() == 2) return Addition{1, 4};
    return std::nullopt;
  });
  CHECK(clause_of(future, y) == Clause::kMembership);

  Scripted twice([](const VisibleState& s) -> std::optional<Addition> {
    const auto [a, b] = s.current();
    if (a == 0) return Addition{0, 0};
    if (a == 1) return Addition{0, b};
    return std::nullopt;
  });
  CHECK(clause_of(twice, y) == Clause::kMembership);

  Scripted greedy_add([](const VisibleState& s) -> std::optional<Addition> {
    const auto [a, b] = s.current();
    return Addition{a, b};
  });
  CHECK(clause_of(greedy_add, y) == Clause::kIsomorphism);
}

TEST_CASE("violation message names the clause and round") {
  const GraphPair y(Graph(4), Graph(4));
  Scripted anchor([](const VisibleState& s) -> std::optional<Addition> {
    if (s.processed_count() == 3) return Addition{0, 1};
    return std::nullopt;
  });
  try {
    run_online(anchor, y);
    FAIL("expected a violation");
  } catch (const OnlineViolation& e) {
    CHECK(e.violation().round == 3);
    CHECK(std::string(e.what()).find("anchor-vertex violated at round 3") == 0);
  }
}

TEST_CASE("visible state exposes exactly the revealed pairs") {
  const auto y = sample_pair(16, Seed{21});
  Probe probe(y);
  const auto result = run_online(probe, y);
  CHECK(result.transcript.order() == 16);
  CHECK(probe.leaks == 0);
  CHECK(probe.wrong == 0);
  CHECK(probe.readable > 0);
}

TEST_CASE("greedy_as_online reproduces greedy_lcis") {
  for (int n : {0, 1, 9, 64}) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      if (n != 64 && s >= 5) break;
      const auto y = sample_pair(n, Seed{s + 1000});
      auto strategy = greedy_as_online();
      const auto online = run_online(*strategy, y, Seed{s});
      const auto offline = greedy_lcis(y);
      REQUIRE(online.solution == offline.solution);
      CHECK(online.transcript == offline.transcript);
    }
  }
  const auto g = sample_er(40, Seed{5});
  auto strategy = greedy_as_online();
  CHECK(run_online(*strategy, {g, g}).solution.size() == 40);
  CHECK(run_online(*greedy_as_online(), {Graph(30), Graph(30)}).solution.size() == 30);
}

TEST_CASE("solution size grows by at most one per round") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto y = sample_pair(50, Seed{s});
    const auto sizes = run_online(*greedy_as_online(), y).transcript.solution_sizes();
    REQUIRE(sizes.size() == 51);
    CHECK(sizes.front() == 0);
    for (std::size_t t = 1; t < sizes.size(); ++t) {
      CHECK(sizes[t] - sizes[t - 1] <= 1);
    }
  }
}

TEST_CASE("validate_transcript catches injected faults") {
  const auto y = sample_pair(24, Seed{99});
  const auto clean = run_online(*greedy_as_online(), y).transcript;
  CHECK(validate_transcript(clean, y).ok());

  SUBCASE("flipped reveal bit") {
    auto bad = clean;
    auto& bits = bad.rounds[6].revealed2;
    bits.assign(2, !bits.test(2));
    const auto check = validate_transcript(bad, y);
    REQUIRE_FALSE(check.ok());
    CHECK(check.violation->clause == Clause::kRevealExactness);
    CHECK(check.violation->round == 7);
  }
  SUBCASE("extra reveal bit") {
    auto bad = clean;
    Bitset longer(bad.rounds[3].revealed1.size() + 1);
    bad.rounds[3].revealed1 = longer;
    const auto check = validate_transcript(bad, y);
    REQUIRE_FALSE(check.ok());
    CHECK(check.violation->clause == Clause::kRevealExactness);
    CHECK(check.violation->round == 4);
  }
  SUBCASE("missing round") {
    auto bad = clean;
    bad.rounds.pop_back();
    const auto check = validate_transcript(bad, y);
    REQUIRE_FALSE(check.ok());
    CHECK(check.violation->clause == Clause::kRoundCount);
  }
  SUBCASE("repeated vertex") {
    auto bad = clean;
    bad.rounds[2].v1 = bad.rounds[1].v1;
    const auto check = validate_transcript(bad, y);
    REQUIRE_FALSE(check.ok());
    CHECK(check.violation->clause == Clause::kFreshness);
    CHECK(check.violation->round == 3);
  }
}

TEST_CASE("validate_transcript: round-5 addition of two old vertices") {
  const GraphPair y(Graph(8), Graph(8));
  Scripted never([](const VisibleState&) { return std::nullopt; });
  auto transcript = run_online(never, y).transcript;
  transcript.rounds[4].added = Addition{1, 2};
  const auto check = validate_transcript(transcript, y);
  REQUIRE_FALSE(check.ok());
  CHECK(check.violation->clause == Clause::kAnchor);
  CHECK(check.violation->round == 5);
}

TEST_CASE("transcript JSON lines round trip") {
  const auto y = sample_pair(20, Seed{3});
  const auto transcript = run_online(*greedy_as_online(), y).transcript;
  std::stringstream buffer;
  write_transcript(buffer, transcript);
  std::string first;
  std::getline(std::stringstream(buffer.str()), first);
  CHECK(first == R"({"t":1,"v1":0,"v2":0,"reveal1":"","reveal2":"","add":[0,0]})");
  const auto back = read_transcript(buffer);
  CHECK(back == transcript);
  CHECK(validate_transcript(back, y).ok());

  std::stringstream junk("{\"t\":1}\n");
  CHECK_THROWS(read_transcript(junk));
}
