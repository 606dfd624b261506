#include "lcis/ogp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <unordered_set>

#include "lcis/errors.hpp"
#include "lcis/iso.hpp"

namespace lcis {

int m_of_eps(double eps) {
  if (!(eps > 0.0)) {
    throw ContractError("eps must be positive");
  }
  // Shave a relative ulp-scale amount so exact integers are not bumped up by
  // rounding in the division.
  const double raw = 40.0 / (3.0 * eps * eps);
  return static_cast<int>(std::ceil(raw * (1.0 - 1e-12)));
}

double gamma_of_eps(double eps) { return 2.0 - eps / 2.0; }

OgpParams OgpParams::make(double eps, int order) {
  OgpParams p;
  p.eps = eps;
  p.gamma = gamma_of_eps(eps);
  p.log2n = order > 0 ? std::log2(static_cast<double>(order)) : 0.0;
  p.m = m_of_eps(eps);
  return p;
}

bool OgpParams::consistent() const {
  return eps > 0.0 && gamma == gamma_of_eps(eps) && m >= 1 && m == m_of_eps(eps);
}

namespace {

std::size_t ceil_size(double x) {
  // Values like 1.5 * 6 must land on 9, not 10.
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) {
    return static_cast<std::size_t>(std::max(0.0, nearest));
  }
  return static_cast<std::size_t>(std::max(0.0, std::ceil(x)));
}

}  // namespace

std::size_t OgpParams::tau_threshold() const { return ceil_size(gamma * log2n); }

std::size_t OgpParams::large_threshold() const { return ceil_size((2.0 + eps) * log2n); }

int stopping_time_tau(const Transcript& transcript, std::size_t threshold) {
  if (threshold < 1) {
    throw ContractError("stopping_time_tau requires threshold >= 1");
  }
  const auto sizes = transcript.solution_sizes();
  for (int t = 1; t <= transcript.order(); ++t) {
    if (sizes[static_cast<std::size_t>(t)] == threshold) {
      return t;
    }
  }
  return transcript.order();
}

// ---------------------------------------------------------------------------

bool InterpolationFamily::fixed(int side, Vertex u, Vertex v) const {
  const auto& processed = side == 1 ? processed1 : processed2;
  const auto contains = [&](Vertex x) { return std::find(processed.begin(), processed.end(), x) != processed.end(); };
  return u != v && contains(u) && contains(v);
}

namespace {

Graph resample_free_region(const Graph& base, const std::vector<bool>& in_region, Seed seed) {
  const int n = base.order();
  Graph g(n);
  SplitMix64 rng(seed);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const bool present = in_region[u] && in_region[v] ? base.has_edge(u, v) : rng.next_bit();
      if (present) {
        g.add_edge(u, v);
      }
    }
  }
  return g;
}

}  // namespace

InterpolationFamily build_family(const GraphPair& base, const Transcript& transcript, int cut,
                                 int m, Seed seed) {
  const int n = base.order();
  if (transcript.order() != n) {
    throw ContractError("transcript does not belong to an input of this order");
  }
  if (cut < 1 || cut > n) {
    throw ContractError("cut time must lie in [1, n]");
  }
  if (m < 1) {
    throw ContractError("family size must be at least 1");
  }
  InterpolationFamily family;
  family.cut = cut;
  family.processed1 = transcript.processed(1, cut);
  family.processed2 = transcript.processed(2, cut);
  std::vector<bool> region1(static_cast<std::size_t>(n), false);
  std::vector<bool> region2(static_cast<std::size_t>(n), false);
  for (const Vertex v : family.processed1) {
    region1[v] = true;
  }
  for (const Vertex v : family.processed2) {
    region2[v] = true;
  }
  family.members.reserve(static_cast<std::size_t>(m));
  family.members.push_back(base);
  for (int i = 2; i <= m; ++i) {
    const auto member_seed = [&](std::uint64_t side) {
      return derive_seed(seed, {kFamilyTag, static_cast<std::uint64_t>(i), side});
    };
    family.members.emplace_back(resample_free_region(base.g1, region1, member_seed(1)),
                                resample_free_region(base.g2, region2, member_seed(2)));
  }
  return family;
}

FamilyRun run_family(const StrategyFactory& strategy, const InterpolationFamily& family,
                     std::size_t threshold, Seed seed) {
  FamilyRun run;
  run.all_reached = true;
  for (const auto& member : family.members) {
    auto instance = strategy();
    const auto result = run_online(*instance, member, seed);
    run.sizes.push_back(result.solution.size());
    run.all_reached = run.all_reached && result.solution.size() >= threshold;
  }
  return run;
}

EventEstimate estimate_events(const StrategyFactory& strategy, int order, double eps, int seeds,
                              Seed master_seed, std::optional<std::size_t> large_threshold,
                              std::optional<int> m) {
  if (seeds < 1) {
    throw ContractError("estimate_events requires at least one seed");
  }
  const auto params = OgpParams::make(eps, order);
  EventEstimate estimate;
  estimate.order = order;
  estimate.seeds = seeds;
  estimate.m = m.value_or(params.m);
  estimate.large_threshold = large_threshold.value_or(params.large_threshold());
  estimate.tau_threshold = std::max<std::size_t>(1, params.tau_threshold());
  int single = 0;
  int all = 0;
  for (int s = 0; s < seeds; ++s) {
    const Seed seed = derive_seed(master_seed, {kTrialTag, static_cast<std::uint64_t>(order),
                                                static_cast<std::uint64_t>(s)});
    const GraphPair input = sample_pair(order, seed);
    auto instance = strategy();
    const auto base_run = run_online(*instance, input, seed);
    if (base_run.solution.size() >= estimate.large_threshold) {
      ++single;
    }
    const int tau = stopping_time_tau(base_run.transcript, estimate.tau_threshold);
    const auto family = build_family(input, base_run.transcript, tau, estimate.m, seed);
    if (run_family(strategy, family, estimate.large_threshold, seed).all_reached) {
      ++all;
    }
  }
  estimate.pr_single = static_cast<double>(single) / seeds;
  estimate.pr_all = static_cast<double>(all) / seeds;
  return estimate;
}

// ---------------------------------------------------------------------------

namespace {

using Mask = std::uint32_t;

// A candidate solution identified by its two vertex sets.
struct SetPair {
  Mask a = 0;
  Mask b = 0;
  int size = 0;

  std::uint64_t key() const { return (static_cast<std::uint64_t>(a) << 32) | b; }
};

std::vector<Vertex> members_of(Mask mask) {
  std::vector<Vertex> out;
  for (Vertex v = 0; mask != 0; ++v, mask >>= 1) {
    if ((mask & 1U) != 0) {
      out.push_back(v);
    }
  }
  return out;
}

// Solutions of one member grouped by their core (A & P1, B & P2).
std::map<std::uint64_t, std::vector<SetPair>> solutions_by_core(const GraphPair& member, Mask region1,
                                                                Mask region2, int k_sol, int k_ov) {
  const int n = member.order();
  const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<std::vector<Mask>> by_size(static_cast<std::size_t>(n) + 1);
  for (Mask mask = 0; mask <= full; ++mask) {
    by_size[std::popcount(mask)].push_back(mask);
    if (mask == full) {
      break;
    }
  }
  std::map<std::uint64_t, std::vector<SetPair>> out;
  for (int k = std::max(k_sol, 0); k <= n; ++k) {
    for (const Mask a : by_size[k]) {
      if (std::popcount(a & region1) != k_ov) {
        continue;
      }
      const auto va = members_of(a);
      for (const Mask b : by_size[k]) {
        if (std::popcount(b & region2) != k_ov) {
          continue;
        }
        if (!induced_isomorphism(member.g1, va, member.g2, members_of(b))) {
          continue;
        }
        const std::uint64_t core = (static_cast<std::uint64_t>(a & region1) << 32) | (b & region2);
        out[core].push_back({a, b, k});
      }
    }
  }
  return out;
}

}  // namespace

ForbiddenCount count_forbidden(const InterpolationFamily& family, const ForbiddenStructureQuery& query) {
  const int n = family.order();
  if (n > kCensusMaxOrder || query.m > kCensusMaxTuple || query.k_sol > kCensusMaxSolution) {
    throw CapacityError("census accepts n <= 10, m <= 2, k_sol <= 5");
  }
  if (query.m < 1 || query.k_sol < 1 || query.k_ov < 0 || query.k_ov > query.k_sol) {
    throw ContractError("census query needs m >= 1, k_sol >= 1, 0 <= k_ov <= k_sol");
  }
  if (query.t != family.cut) {
    throw ContractError("census query cut time differs from the family's");
  }
  if (static_cast<std::size_t>(query.m) > family.members.size()) {
    throw ContractError("census query asks for more members than the family has");
  }
  ForbiddenCount count;
  // The core cannot outgrow the processed region, and each solution can add
  // at most n - t vertices beyond its core.
  if (query.k_sol > n || query.k_ov > query.t || query.k_sol - query.k_ov > n - query.t) {
    return count;
  }

  Mask region1 = 0;
  Mask region2 = 0;
  for (const Vertex v : family.processed1) {
    region1 |= Mask{1} << v;
  }
  for (const Vertex v : family.processed2) {
    region2 |= Mask{1} << v;
  }
  const auto tally = [&](int largest) {
    if (largest > query.w_threshold) {
      ++count.w_count;
    } else {
      ++count.z_count;
    }
  };

  const auto first = solutions_by_core(family.members[0], region1, region2, query.k_sol, query.k_ov);
  if (query.m == 1) {
    for (const auto& [core, sols] : first) {
      for (const auto& s : sols) {
        tally(s.size);
      }
    }
    return count;
  }

  const auto second = solutions_by_core(family.members[1], region1, region2, query.k_sol, query.k_ov);
  for (const auto& [core, sols1] : first) {
    const auto it = second.find(core);
    if (it == second.end()) {
      continue;
    }
    const auto& sols2 = it->second;
    std::unordered_set<std::uint64_t> keys1;
    std::unordered_set<std::uint64_t> keys2;
    for (const auto& s : sols1) {
      keys1.insert(s.key());
    }
    for (const auto& s : sols2) {
      keys2.insert(s.key());
    }
    // The multiset {x, y} is reachable as (x, y) and, when x also solves
    // member 2 and y member 1, as (y, x). Count it once, from the ordering
    // whose first key is smaller.
    for (const auto& x : sols1) {
      for (const auto& y : sols2) {
        const bool swapped_also_valid = keys2.contains(x.key()) && keys1.contains(y.key());
        if (swapped_also_valid && x.key() > y.key()) {
          continue;
        }
        tally(std::max(x.size, y.size));
      }
    }
  }
  return count;
}

ForbiddenStructureQuery asymptotic_query(int order, double eps, int m, int t) {
  const auto params = OgpParams::make(eps, order);
  ForbiddenStructureQuery q;
  q.m = m;
  q.k_sol = static_cast<int>(params.large_threshold());
  q.k_ov = static_cast<int>(params.overlap_size());
  q.t = t;
  q.w_threshold = 6.0 * params.log2n;
  return q;
}

// ---------------------------------------------------------------------------

double f_term(double alpha, double gamma) {
  return (alpha * alpha / 2.0 - 2.0 * alpha) - (gamma * gamma / 2.0 - 2.0 * gamma);
}

double psi(std::span<const double> alphas, double gamma) {
  double total = -2.0 * gamma;
  for (const double a : alphas) {
    total += f_term(a, gamma);
  }
  return total;
}

double phi(std::span<const double> alphas, double gamma) {
  double total = 0.0;
  for (const double a : alphas) {
    total += (a * a - gamma * gamma) / 2.0;
  }
  return total;
}

double counting_exponent(std::span<const double> alphas, double gamma, double log2n) {
  double inner = gamma;
  for (const double a : alphas) {
    inner += a - gamma;
  }
  return 2.0 * log2n * inner;
}

double probability_exponent(std::span<const double> alphas, double gamma, double log2n, double slack) {
  const double m = static_cast<double>(alphas.size());
  const double log_term = log2n > 0.0 ? slack * m * std::log(log2n) : 0.0;
  return -phi(alphas, gamma) * log2n + log_term;
}

double first_moment_exponent(std::span<const double> alphas, double gamma, double log2n, double slack) {
  return counting_exponent(alphas, gamma, log2n) + probability_exponent(alphas, gamma, log2n, slack);
}

PsiMinCheck psi_min_check(double eps) {
  PsiMinCheck check;
  check.m = m_of_eps(eps);
  check.gamma = gamma_of_eps(eps);
  const double lo = 2.0 + eps;
  // For eps > 4 the interval [2+eps, 6] is empty; it degenerates to {2+eps}.
  const double hi = std::max(6.0, lo);
  const auto g = [](double a) { return a * a / 2.0 - 2.0 * a; };

  std::vector<double> candidates{lo, hi};
  if (lo <= 2.0 && 2.0 <= hi) {
    candidates.push_back(2.0);
  }
  constexpr int kGrid = 4096;
  for (int k = 1; k < kGrid; ++k) {
    candidates.push_back(lo + (hi - lo) * k / kGrid);
  }
  check.minimizer = lo;
  for (const double a : candidates) {
    if (g(a) < g(check.minimizer)) {
      check.minimizer = a;
    }
  }
  check.f_min = f_term(check.minimizer, check.gamma);
  const std::vector<double> alphas(static_cast<std::size_t>(check.m), check.minimizer);
  check.psi_at_min = psi(alphas, check.gamma);
  check.pass = check.psi_at_min >= 1.0;
  return check;
}

}  // namespace lcis
