#ifndef LCIS_ISO_HPP
#define LCIS_ISO_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcis/errors.hpp"
#include "lcis/graph.hpp"

namespace lcis {

/// A common induced subgraph together with its isomorphism: s1[i] in G1 is
/// mapped to s2[i] in G2.
struct Solution {
  std::vector<Vertex> s1;
  std::vector<Vertex> s2;

  std::size_t size() const { return s1.size(); }
  bool empty() const { return s1.empty(); }

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Raised when a Solution is structurally malformed (length mismatch, vertex
/// out of range, repeated vertex) as opposed to merely not an isomorphism.
class InvalidSolution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Verification {
  bool isomorphic = true;
  /// First position pair (i, j), i < j, whose edge status differs.
  std::optional<std::pair<std::size_t, std::size_t>> violation;

  explicit operator bool() const { return isomorphic; }
};

Verification verify_solution(const GraphPair& input, const Solution& solution);

/// Exhaustive search: sizes k = n, n-1, ... and, for each, every pair of
/// k-subsets and every bijection between them. Refuses n > 7.
Solution naive_lcis(const GraphPair& input);

inline constexpr int kNaiveMaxOrder = 7;

struct ExactResult {
  Solution solution;
  /// True iff the search space was exhausted within the node budget.
  bool optimal = false;
  std::uint64_t nodes = 0;
};

/// Branch and bound over label classes (McSplit). Vertices still available
/// for matching are grouped by their adjacency pattern to the pairs matched
/// so far; a class can contribute at most min(|left|, |right|) more pairs.
/// Without a budget the search always runs to completion.
ExactResult exact_lcis(const GraphPair& input,
                       std::optional<std::uint64_t> node_budget = std::nullopt);

/// If G1[a] and G2[b] are isomorphic, returns an ordering of b such that
/// a[i] -> result[i] is an isomorphism.
std::optional<std::vector<Vertex>> induced_isomorphism(const Graph& g1, std::span<const Vertex> a,
                                                       const Graph& g2, std::span<const Vertex> b);

/// Non-negative exact fraction num/den in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const auto lhs = static_cast<unsigned __int128>(a.num) * b.den;
    const auto rhs = static_cast<unsigned __int128>(b.num) * a.den;
    return lhs <=> rhs;
  }
};

Rational make_rational(std::uint64_t num, std::uint64_t den);

inline constexpr int kIsoProbMaxOrder = 6;

/// Probability that two independent G(k, 1/2) samples are isomorphic,
/// computed by enumerating all labeled graphs on k vertices and grouping them
/// into isomorphism classes. Refuses k > 6.
Rational iso_prob_exact(int k);

/// k! * 2^-C(k,2), clamped at 1.
double iso_prob_bound(int k);
/// Same bound as an exact fraction; refuses k > 11 where 2^C(k,2) overflows.
Rational iso_prob_bound_exact(int k);

/// Number of isomorphism classes of graphs on k vertices (k <= 6).
std::size_t iso_class_count(int k);

}  // namespace lcis

#endif  // LCIS_ISO_HPP
