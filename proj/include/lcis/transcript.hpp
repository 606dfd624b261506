#ifndef LCIS_TRANSCRIPT_HPP
#define LCIS_TRANSCRIPT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lcis/graph.hpp"
#include "lcis/iso.hpp"

namespace lcis {

/// The pair appended to the solution during a round.
struct Addition {
  Vertex v1 = 0;
  Vertex v2 = 0;

  friend bool operator==(const Addition&, const Addition&) = default;
};

/// One round of an online run.
///
/// revealed1 has one bit per vertex processed in G1 before this round, in
/// processing order: bit p is the edge status between `v1` and the p-th
/// processed vertex. revealed2 is the same for G2. Together they are exactly
/// the bits that become visible in this round.
struct Round {
  Vertex v1 = 0;
  Vertex v2 = 0;
  Bitset revealed1;
  Bitset revealed2;
  std::optional<Addition> added;

  friend bool operator==(const Round&, const Round&) = default;
};

struct Transcript {
  std::vector<Round> rounds;

  int order() const { return static_cast<int>(rounds.size()); }

  /// |S^(t)| for t = 0..n.
  std::vector<std::size_t> solution_sizes() const;
  /// Processing order of side j (1 or 2) restricted to the first t rounds.
  std::vector<Vertex> processed(int side, int t) const;
  /// Solution after round t, pairs in the order they were added.
  Solution solution_after(int t) const;
  Solution final_solution() const { return solution_after(order()); }

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// JSON lines, one object per round:
//   {"t":1,"v1":0,"v2":0,"reveal1":"","reveal2":"","add":[0,0]}
// `reveal*` are '0'/'1' strings in processing order; `add` is null for a
// round that leaves the solution unchanged.
void write_transcript(std::ostream& out, const Transcript& transcript);
Transcript read_transcript(std::istream& in);

}  // namespace lcis

#endif  // LCIS_TRANSCRIPT_HPP
