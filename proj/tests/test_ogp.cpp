#include "doctest.h"

#include <cmath>
#include <vector>

#include "lcis/errors.hpp"
#include "lcis/graph.hpp"
#include "lcis/greedy.hpp"
#include "lcis/ogp.hpp"
#include "lcis/online.hpp"
#include "naive_census.hpp"

using namespace lcis;
using doctest::Approx;

namespace {

// Every round adds (v1, v2) when `adds` is true.
Transcript ladder(int n, bool adds) {
  Transcript t;
  for (int r = 0; r < n; ++r) {
    Round round;
    round.v1 = r;
    round.v2 = r;
    round.revealed1 = Bitset(static_cast<std::size_t>(r));
    round.revealed2 = Bitset(static_cast<std::size_t>(r));
    if (adds) round.added = Addition{r, r};
    t.rounds.push_back(round);
  }
  return t;
}

InterpolationFamily greedy_family(int n, int t, int m, Seed seed) {
  const auto y = sample_pair(n, seed);
  const auto transcript = greedy_lcis(y).transcript;
  return build_family(y, transcript, t, m, seed);
}

}  // namespace

TEST_CASE("parameters") {
  CHECK(m_of_eps(1.0) == 14);
  CHECK(m_of_eps(0.5) == 54);
  CHECK(m_of_eps(2.0) == 4);
  CHECK(m_of_eps(0.25) == 214);
  // 40 / (3 eps^2) is an integer here; rounding must not push it up.
  CHECK(m_of_eps(std::sqrt(40.0 / 30.0)) == 10);
  CHECK(gamma_of_eps(1.0) == 1.5);
  const auto p = OgpParams::make(1.0, 64);
  CHECK(p.consistent());
  CHECK(p.tau_threshold() == 9);
  CHECK(p.large_threshold() == 18);
  CHECK(p.overlap_size() == 9);
  auto broken = p;
  broken.m = 13;
  CHECK_FALSE(broken.consistent());
  CHECK_THROWS_AS(m_of_eps(0.0), ContractError);
}

TEST_CASE("stopping_time_tau") {
  CHECK(stopping_time_tau(ladder(10, true), 3) == 3);
  CHECK(stopping_time_tau(ladder(10, false), 3) == 10);
  CHECK(stopping_time_tau(ladder(10, true), 11) == 10);
  CHECK_THROWS_AS(stopping_time_tau(ladder(4, true), 0), ContractError);

  // Golden: greedy on sample_pair(64, seed 1), threshold ceil(1.5 * 6) = 9.
  // Reproduced by an independent Python re-implementation.
  const auto y = sample_pair(64, Seed{1});
  const auto transcript = greedy_lcis(y).transcript;
  CHECK(stopping_time_tau(transcript, OgpParams::make(1.0, 64).tau_threshold()) == 21);
}

TEST_CASE("build_family structure") {
  const auto y = sample_pair(32, Seed{5});
  const auto transcript = greedy_lcis(y).transcript;

  const auto full = build_family(y, transcript, 32, 4, Seed{5});
  REQUIRE(full.members.size() == 4);
  for (const auto& member : full.members) {
    CHECK(member == y);
  }

  const auto one = build_family(y, transcript, 1, 3, Seed{5});
  CHECK(one.base() == y);
  CHECK(one.processed1 == std::vector<Vertex>{0});
  CHECK_FALSE(one.fixed(1, 0, 1));
  CHECK_FALSE(one.members[1] == y);
  CHECK_FALSE(one.members[1] == one.members[2]);

  const auto mid = build_family(y, transcript, 16, 4, Seed{5});
  CHECK(mid.processed1.size() == 16);
  for (std::size_t i = 1; i < mid.members.size(); ++i) {
    for (int side = 1; side <= 2; ++side) {
      const Graph& base = side == 1 ? y.g1 : y.g2;
      const Graph& member = mid.members[i].side(side);
      for (Vertex u = 0; u < 32; ++u) {
        for (Vertex v = u + 1; v < 32; ++v) {
          if (mid.fixed(side, u, v)) {
            REQUIRE(member.has_edge(u, v) == base.has_edge(u, v));
          }
        }
      }
    }
  }
  CHECK(build_family(y, transcript, 16, 4, Seed{5}).members == mid.members);
  CHECK_THROWS_AS(build_family(y, transcript, 0, 2, Seed{5}), ContractError);
  CHECK_THROWS_AS(build_family(y, transcript, 33, 2, Seed{5}), ContractError);
}

TEST_CASE("free-region bits are fair coins at n=32, t=16") {
  // 10^4 families, one resampled member each; per-bit frequencies.
  const int n = 32;
  const int families = 10000;
  std::vector<int> ones(2 * n * n, 0);
  std::vector<int> seen(2 * n * n, 0);
  for (int s = 0; s < families; ++s) {
    const auto family = greedy_family(n, 16, 2, Seed{static_cast<std::uint64_t>(s) + 1});
    const auto& member = family.members[1];
    for (int side = 1; side <= 2; ++side) {
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          if (family.fixed(side, u, v)) continue;
          const int slot = (side - 1) * n * n + u * n + v;
          ++seen[slot];
          ones[slot] += member.side(side).has_edge(u, v) ? 1 : 0;
        }
      }
    }
  }
  int checked = 0;
  for (std::size_t slot = 0; slot < ones.size(); ++slot) {
    // Greedy processes 0..15 first, so every free pair is free in every family.
    if (seen[slot] == 0) continue;
    REQUIRE(seen[slot] == families);
    const double freq = static_cast<double>(ones[slot]) / families;
    CHECK(freq >= 0.48);
    CHECK(freq <= 0.52);
    ++checked;
  }
  CHECK(checked == 2 * (n * (n - 1) / 2 - 16 * 15 / 2));
}

TEST_CASE("run_family") {
  const auto family = greedy_family(40, 10, 1, Seed{4});
  const auto single = run_family(greedy_as_online, family, 8);
  REQUIRE(single.sizes.size() == 1);
  CHECK(single.sizes[0] == greedy_lcis(family.base()).solution.size());
  CHECK(single.all_reached == (single.sizes[0] >= 8));

  const auto wide = greedy_family(40, 10, 5, Seed{4});
  CHECK(run_family(greedy_as_online, wide, 0).all_reached);
  const auto sized = run_family(greedy_as_online, wide, 9);
  CHECK(sized.sizes.size() == 5);
}

TEST_CASE("event estimate: all-large is rarer than single-large") {
  const auto estimate = estimate_events(greedy_as_online, 64, 1.0, 500, Seed{17}, std::size_t{12});
  CHECK(estimate.m == 14);
  CHECK(estimate.pr_all <= estimate.pr_single);
  CHECK(estimate.pr_single > 0.0);
  MESSAGE("n=64 eps=1 threshold=12: Pr(E)=" << estimate.pr_single << " Pr(S)=" << estimate.pr_all);
}

TEST_CASE("census hand example") {
  InterpolationFamily family;
  family.cut = 1;
  family.members.emplace_back(Graph(2), Graph(2));
  family.processed1 = {0};
  family.processed2 = {0};
  const ForbiddenStructureQuery q{1, 2, 1, 1, 10.0};
  CHECK(count_forbidden(family, q) == ForbiddenCount{1, 0});
  CHECK(count_forbidden(family, {1, 2, 1, 1, 1.5}) == ForbiddenCount{0, 1});
}

TEST_CASE("census edge cases are zero") {
  const auto early = greedy_family(8, 3, 2, Seed{2});
  CHECK(count_forbidden(early, {2, 5, 4, 3, 99}).total() == 0);  // k_ov > t
  const auto late = greedy_family(8, 4, 2, Seed{2});
  CHECK(count_forbidden(late, {2, 5, 0, 4, 99}).total() == 0);   // k_sol - k_ov > n - t
  InterpolationFamily tiny;
  tiny.cut = 2;
  tiny.members.emplace_back(Graph(3), Graph(3));
  tiny.processed1 = {0, 1};
  tiny.processed2 = {0, 1};
  CHECK(count_forbidden(tiny, {1, 4, 1, 2, 99}).total() == 0);   // k_sol > n
}

TEST_CASE("census capacity and contract") {
  const auto big = greedy_family(11, 3, 1, Seed{1});
  CHECK_THROWS_AS(count_forbidden(big, {1, 2, 1, 3, 9}), CapacityError);
  const auto small = greedy_family(8, 3, 3, Seed{1});
  CHECK_THROWS_AS(count_forbidden(small, {3, 2, 1, 3, 9}), CapacityError);
  CHECK_THROWS_AS(count_forbidden(small, {1, 6, 1, 3, 9}), CapacityError);
  CHECK_THROWS_AS(count_forbidden(small, {1, 2, 1, 4, 9}), ContractError);
  CHECK_THROWS_AS(count_forbidden(small, {1, 2, 3, 3, 9}), ContractError);
}

TEST_CASE("census matches the naive enumerator") {
  SplitMix64 rng(2718);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 4 + static_cast<int>(rng.next() % 4);   // 4..7
    const int m = 1 + static_cast<int>(rng.next() % 2);
    const int t = 1 + static_cast<int>(rng.next() % n);
    const int k_sol = 1 + static_cast<int>(rng.next() % 4);
    const int k_ov = static_cast<int>(rng.next() % (std::min(k_sol, t) + 1));
    const double w = k_sol + static_cast<double>(rng.next() % 3);
    const auto family = greedy_family(n, t, m, Seed{rng.next()});
    const ForbiddenStructureQuery q{m, k_sol, k_ov, t, w};
    CAPTURE(n);
    CAPTURE(m);
    CAPTURE(t);
    CAPTURE(k_sol);
    CAPTURE(k_ov);
    CHECK(count_forbidden(family, q) == naive::count(family, q));
  }
}

TEST_CASE("census multiset convention on identical members") {
  // t = n makes both members equal Y, so every solution solves both and the
  // swapped ordering of each tuple is also valid.
  const auto family = greedy_family(5, 5, 2, Seed{6});
  REQUIRE(family.members[0] == family.members[1]);
  const auto singles = count_forbidden(family, {1, 3, 3, 5, 99}).total();
  const auto pairs = count_forbidden(family, {2, 3, 3, 5, 99});
  CHECK(pairs == naive::count(family, {2, 3, 3, 5, 99}));
  // All size-3 solutions have the full set as core, so cores are distinct
  // and only {x, x} multisets survive.
  CHECK(pairs.total() == singles);
}

TEST_CASE("asymptotic_query") {
  const auto q = asymptotic_query(64, 1.0, 2, 5);
  CHECK(q.k_sol == 18);
  CHECK(q.k_ov == 9);
  CHECK(q.w_threshold == Approx(36.0));
  CHECK(q.m == 2);
  CHECK(q.t == 5);
}

TEST_CASE("exponent examples") {
  CHECK(f_term(1.5, 1.5) == 0.0);
  CHECK(f_term(3.0, 1.5) == Approx(0.375));
  CHECK(f_term(6.0, 1.5) == Approx(7.875));

  CHECK(psi(std::vector<double>{}, 1.5) == -3.0);
  CHECK(psi(std::vector<double>(14, 3.0), 1.5) == Approx(2.25));
  CHECK(psi(std::vector<double>(54, 2.5), 1.75) == Approx(1.5625));

  CHECK(phi(std::vector<double>{1.5}, 1.5) == 0.0);
  CHECK(phi(std::vector<double>{3.0, 3.0}, 1.5) == Approx(6.75));
  CHECK(phi(std::vector<double>{6.0}, 1.75) == Approx(16.46875));

  CHECK(counting_exponent(std::vector<double>{1.5}, 1.5, 7.0) == Approx(21.0));
  CHECK(counting_exponent(std::vector<double>{3.0, 3.0}, 1.5, 10.0) == Approx(90.0));
  CHECK(counting_exponent(std::vector<double>{3.0, 3.0}, 1.5, 0.0) == 0.0);
}

TEST_CASE("exponent identities") {
  SplitMix64 rng(31);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * (rng.next() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 200; ++trial) {
    const double gamma = uniform(1.0, 2.0);
    const double log2n = uniform(1.0, 40.0);
    std::vector<double> alphas(1 + rng.next() % 20);
    for (auto& a : alphas) a = uniform(2.0, 6.0);
    double separable = -2.0 * gamma;
    for (double a : alphas) separable += f_term(a, gamma);
    CHECK(psi(alphas, gamma) == Approx(separable).epsilon(1e-12));
    // counting - Phi L == -L Psi, so the first moment exponent is -L Psi.
    CHECK(first_moment_exponent(alphas, gamma, log2n) == Approx(-log2n * psi(alphas, gamma)).epsilon(1e-9));
    CHECK(probability_exponent(alphas, gamma, log2n) == Approx(-phi(alphas, gamma) * log2n).epsilon(1e-12));
    const double slack = uniform(0.0, 3.0);
    CHECK(probability_exponent(alphas, gamma, log2n, slack) ==
          Approx(-phi(alphas, gamma) * log2n + slack * alphas.size() * std::log(log2n)).epsilon(1e-12));
  }
}

TEST_CASE("psi_min_check") {
  const auto one = psi_min_check(1.0);
  CHECK(one.m == 14);
  CHECK(one.psi_at_min == Approx(2.25).epsilon(1e-12));
  CHECK(one.minimizer == 3.0);
  CHECK(one.pass);
  const auto half = psi_min_check(0.5);
  CHECK(half.m == 54);
  CHECK(half.psi_at_min == Approx(1.5625).epsilon(1e-12));
  CHECK(half.pass);
  const auto two = psi_min_check(2.0);
  CHECK(two.m == 4);
  CHECK(two.psi_at_min == Approx(4.0).epsilon(1e-12));
  CHECK(two.pass);
  CHECK(psi_min_check(0.25).pass);
  for (int i = 1; i <= 50; ++i) {
    const double eps = 0.04 * i;
    const auto c = psi_min_check(eps);
    CHECK(c.minimizer == Approx(2.0 + eps).epsilon(1e-12));
    CHECK(c.f_min == Approx(3.0 * eps * eps / 8.0).epsilon(1e-12));
  }
}
