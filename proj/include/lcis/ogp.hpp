#ifndef LCIS_OGP_HPP
#define LCIS_OGP_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lcis/graph.hpp"
#include "lcis/online.hpp"
#include "lcis/transcript.hpp"

namespace lcis {

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// ceil(40 / (3 eps^2)): the number of correlated inputs needed for the
/// first-moment bound to go through.
int m_of_eps(double eps);
/// 2 - eps/2.
double gamma_of_eps(double eps);

struct OgpParams {
  double eps = 1.0;
  double gamma = 1.5;
  /// log2 n.
  double log2n = 0.0;
  int m = 14;

  static OgpParams make(double eps, int order);

  /// gamma and m agree with eps.
  bool consistent() const;
  /// ceil(gamma L): the partial-solution size that stops the clock.
  std::size_t tau_threshold() const;
  /// ceil((2 + eps) L): the size a "large" solution must reach.
  std::size_t large_threshold() const;
  /// ceil((2 - eps/2) L): the overlap size of a forbidden structure.
  std::size_t overlap_size() const { return tau_threshold(); }
};

/// First round t (1-based) with |S^(t)| == threshold; n if never reached.
int stopping_time_tau(const Transcript& transcript, std::size_t threshold);

// ---------------------------------------------------------------------------
// Interpolation families
// ---------------------------------------------------------------------------

/// m inputs that agree with the base input Y on every pair inside the
/// vertices processed by the first t rounds (per graph) and are independent
/// fair coins everywhere else. members[0] is Y itself.
struct InterpolationFamily {
  int cut = 0;
  std::vector<GraphPair> members;
  std::vector<Vertex> processed1;
  std::vector<Vertex> processed2;

  const GraphPair& base() const { return members.front(); }
  int order() const { return base().order(); }
  /// Whether pair {u, v} of side j lies in the shared (fixed) region.
  bool fixed(int side, Vertex u, Vertex v) const;
};

/// Members i >= 2 draw side j's free pairs, in lexicographic order, from
/// splitmix64 seeded with derive_seed(seed, {kFamilyTag, i, j}).
InterpolationFamily build_family(const GraphPair& base, const Transcript& transcript, int cut,
                                 int m, Seed seed);

using StrategyFactory = std::function<std::unique_ptr<OnlineStrategy>()>;

struct FamilyRun {
  std::vector<std::size_t> sizes;
  /// Every member reached the threshold.
  bool all_reached = false;
};

FamilyRun run_family(const StrategyFactory& strategy, const InterpolationFamily& family,
                     std::size_t threshold, Seed seed = {});

/// Monte Carlo frequencies of "the run on Y is large" and "the runs on every
/// member of the tau-cut family are large". Reported, never asserted.
struct EventEstimate {
  int order = 0;
  int seeds = 0;
  int m = 0;
  std::size_t large_threshold = 0;
  std::size_t tau_threshold = 0;
  double pr_single = 0.0;
  double pr_all = 0.0;
};

EventEstimate estimate_events(const StrategyFactory& strategy, int order, double eps, int seeds,
                              Seed master_seed, std::optional<std::size_t> large_threshold = std::nullopt,
                              std::optional<int> m = std::nullopt);

// ---------------------------------------------------------------------------
// Forbidden-structure census
// ---------------------------------------------------------------------------

struct ForbiddenStructureQuery {
  int m = 1;
  /// Each solution has at least this many vertices.
  int k_sol = 1;
  /// Exact size of the shared core inside the processed region.
  int k_ov = 1;
  /// Cut time; must match the family.
  int t = 1;
  /// Tuples whose largest solution exceeds this go to w_count.
  double w_threshold = 0.0;
};

struct ForbiddenCount {
  std::uint64_t z_count = 0;
  std::uint64_t w_count = 0;

  std::uint64_t total() const { return z_count + w_count; }
  friend bool operator==(const ForbiddenCount&, const ForbiddenCount&) = default;
};

inline constexpr int kCensusMaxOrder = 10;
inline constexpr int kCensusMaxTuple = 2;
inline constexpr int kCensusMaxSolution = 5;

/// Counts multisets {sigma_1, ..., sigma_m} where sigma_i (a pair of vertex
/// sets) is a common induced subgraph of member i with at least k_sol
/// vertices, and all sigma_i meet the processed region in the same core of
/// exactly k_ov vertices per side. Refuses n > 10, m > 2 or k_sol > 5.
ForbiddenCount count_forbidden(const InterpolationFamily& family, const ForbiddenStructureQuery& query);

/// Query with the asymptotic thresholds: k_sol = ceil((2+eps)L),
/// k_ov = ceil((2-eps/2)L), split at 6L.
ForbiddenStructureQuery asymptotic_query(int order, double eps, int m, int t);

// ---------------------------------------------------------------------------
// First-moment exponent calculus
// ---------------------------------------------------------------------------

/// (alpha^2/2 - 2 alpha) - (gamma^2/2 - 2 gamma).
double f_term(double alpha, double gamma);
/// -2 gamma + sum_i f(alpha_i, gamma).
double psi(std::span<const double> alphas, double gamma);
/// sum_i (alpha_i^2 - gamma^2) / 2.
double phi(std::span<const double> alphas, double gamma);
/// 2 L [gamma + sum_i (alpha_i - gamma)]: base-n exponent of the number of
/// tuples with solution sizes alpha_i L.
double counting_exponent(std::span<const double> alphas, double gamma, double log2n);
/// -Phi L + C m ln L: base-n exponent of the probability that one such tuple
/// is a forbidden structure. `slack` is the unspecified absolute constant C.
double probability_exponent(std::span<const double> alphas, double gamma, double log2n,
                            double slack = 0.0);
/// counting + probability = -L Psi + C m ln L.
double first_moment_exponent(std::span<const double> alphas, double gamma, double log2n,
                             double slack = 0.0);

struct PsiMinCheck {
  int m = 0;
  double gamma = 0.0;
  double minimizer = 0.0;
  /// min over alpha in [2+eps, 6] of f(alpha, gamma).
  double f_min = 0.0;
  double psi_at_min = 0.0;
  bool pass = false;
};

/// Minimises Psi over [2+eps, 6]^m. Psi is separable, so each coordinate is
/// minimised on its own by a grid plus the endpoints and the stationary
/// point alpha = 2; pass iff the minimum is at least 1.
PsiMinCheck psi_min_check(double eps);

}  // namespace lcis

#endif  // LCIS_OGP_HPP
