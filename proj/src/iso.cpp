#include "lcis/iso.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace lcis {

namespace {

void check_side(const Graph& g, std::span<const Vertex> vertices, const char* side) {
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  for (const Vertex v : vertices) {
    if (v < 0 || v >= g.order()) {
      throw InvalidSolution(std::string("vertex ") + std::to_string(v) + " out of range in " + side);
    }
    if (seen[v]) {
      throw InvalidSolution(std::string("vertex ") + std::to_string(v) + " repeated in " + side);
    }
    seen[v] = true;
  }
}

}  // namespace

Verification verify_solution(const GraphPair& input, const Solution& solution) {
  if (solution.s1.size() != solution.s2.size()) {
    throw InvalidSolution("solution sides have different lengths");
  }
  check_side(input.g1, solution.s1, "s1");
  check_side(input.g2, solution.s2, "s2");
  const std::size_t k = solution.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (input.g1.has_edge(solution.s1[i], solution.s1[j]) !=
          input.g2.has_edge(solution.s2[i], solution.s2[j])) {
        return {false, std::pair{i, j}};
      }
    }
  }
  return {};
}

Solution naive_lcis(const GraphPair& input) {
  const int n = input.order();
  if (n > kNaiveMaxOrder) {
    throw CapacityError("naive_lcis accepts at most " + std::to_string(kNaiveMaxOrder) +
                        " vertices, got " + std::to_string(n));
  }
  const auto members = [](unsigned mask) {
    std::vector<Vertex> out;
    for (Vertex v = 0; mask != 0; ++v, mask >>= 1) {
      if ((mask & 1U) != 0) {
        out.push_back(v);
      }
    }
    return out;
  };
  const unsigned full = 1U << n;
  for (int k = n; k > 0; --k) {
    for (unsigned mask1 = 0; mask1 < full; ++mask1) {
      if (std::popcount(mask1) != k) {
        continue;
      }
      const auto a = members(mask1);
      for (unsigned mask2 = 0; mask2 < full; ++mask2) {
        if (std::popcount(mask2) != k) {
          continue;
        }
        auto b = members(mask2);
        do {
          Solution candidate{a, b};
          if (verify_solution(input, candidate)) {
            return candidate;
          }
        } while (std::next_permutation(b.begin(), b.end()));
      }
    }
  }
  return {};
}

std::optional<std::vector<Vertex>> induced_isomorphism(const Graph& g1, std::span<const Vertex> a,
                                                       const Graph& g2, std::span<const Vertex> b) {
  const std::size_t k = a.size();
  if (b.size() != k) {
    return std::nullopt;
  }
  const auto degrees = [](const Graph& g, std::span<const Vertex> set) {
    std::vector<int> deg(set.size(), 0);
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t j = i + 1; j < set.size(); ++j) {
        if (g.has_edge(set[i], set[j])) {
          ++deg[i];
          ++deg[j];
        }
      }
    }
    return deg;
  };
  const auto deg_a = degrees(g1, a);
  const auto deg_b = degrees(g2, b);
  {
    auto sa = deg_a;
    auto sb = deg_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
      return std::nullopt;
    }
  }

  std::vector<std::size_t> image(k);
  std::vector<bool> used(k, false);
  const auto extend = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == k) {
      return true;
    }
    for (std::size_t p = 0; p < k; ++p) {
      if (used[p] || deg_b[p] != deg_a[pos]) {
        continue;
      }
      bool consistent = true;
      for (std::size_t q = 0; q < pos && consistent; ++q) {
        consistent = g1.has_edge(a[pos], a[q]) == g2.has_edge(b[p], b[image[q]]);
      }
      if (!consistent) {
        continue;
      }
      used[p] = true;
      image[pos] = p;
      if (self(self, pos + 1)) {
        return true;
      }
      used[p] = false;
    }
    return false;
  };
  if (!extend(extend, 0)) {
    return std::nullopt;
  }
  std::vector<Vertex> mapped(k);
  for (std::size_t i = 0; i < k; ++i) {
    mapped[i] = b[image[i]];
  }
  return mapped;
}

Rational make_rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) {
    throw std::domain_error("zero denominator");
  }
  const auto g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

namespace {

// Sizes of the isomorphism classes of labeled graphs on k vertices, found by
// sweeping each orbit of the symmetric group acting on edge masks.
std::vector<std::uint64_t> labeled_class_sizes(int k) {
  if (k < 0 || k > kIsoProbMaxOrder) {
    throw CapacityError("isomorphism-class enumeration accepts 0 <= k <= " +
                        std::to_string(kIsoProbMaxOrder));
  }
  const int pairs = k * (k - 1) / 2;
  std::vector<std::vector<int>> pair_index(static_cast<std::size_t>(k), std::vector<int>(k, -1));
  int next = 0;
  for (int u = 0; u < k; ++u) {
    for (int v = u + 1; v < k; ++v) {
      pair_index[u][v] = pair_index[v][u] = next++;
    }
  }

  // For every permutation, where each pair bit moves to.
  std::vector<std::vector<int>> relabel;
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> moved(static_cast<std::size_t>(pairs));
    for (int u = 0; u < k; ++u) {
      for (int v = u + 1; v < k; ++v) {
        moved[pair_index[u][v]] = pair_index[perm[u]][perm[v]];
      }
    }
    relabel.push_back(std::move(moved));
  } while (std::next_permutation(perm.begin(), perm.end()));

  const std::uint32_t total = 1U << pairs;
  std::vector<bool> visited(total, false);
  std::vector<std::uint64_t> sizes;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (visited[mask]) {
      continue;
    }
    std::uint64_t orbit = 0;
    for (const auto& moved : relabel) {
      std::uint32_t image = 0;
      for (int bit = 0; bit < pairs; ++bit) {
        if (((mask >> bit) & 1U) != 0) {
          image |= 1U << moved[bit];
        }
      }
      if (!visited[image]) {
        visited[image] = true;
        ++orbit;
      }
    }
    sizes.push_back(orbit);
  }
  return sizes;
}

}  // namespace

Rational iso_prob_exact(int k) {
  const auto sizes = labeled_class_sizes(k);
  std::uint64_t sum_squares = 0;
  for (const auto c : sizes) {
    sum_squares += c * c;
  }
  const int pairs = k * (k - 1) / 2;
  return make_rational(sum_squares, std::uint64_t{1} << (2 * pairs));
}

std::size_t iso_class_count(int k) { return labeled_class_sizes(k).size(); }

double iso_prob_bound(int k) {
  if (k < 1) {
    throw ContractError("iso_prob_bound requires k >= 1");
  }
  const double pairs = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
  if (k <= 18) {
    // k! is exact in a double up to 18!, and scaling by a power of two is exact.
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) {
      factorial *= static_cast<double>(i);
    }
    return std::min(1.0, std::ldexp(factorial, -static_cast<int>(pairs)));
  }
  double log2_bound = -pairs;
  for (int i = 2; i <= k; ++i) {
    log2_bound += std::log2(static_cast<double>(i));
  }
  return log2_bound >= 0.0 ? 1.0 : std::exp2(log2_bound);
}

Rational iso_prob_bound_exact(int k) {
  if (k < 1) {
    throw ContractError("iso_prob_bound requires k >= 1");
  }
  if (k > 11) {
    throw CapacityError("exact bound accepts k <= 11");
  }
  std::uint64_t factorial = 1;
  for (int i = 2; i <= k; ++i) {
    factorial *= static_cast<std::uint64_t>(i);
  }
  const std::uint64_t den = std::uint64_t{1} << (k * (k - 1) / 2);
  return factorial >= den ? Rational{1, 1} : make_rational(factorial, den);
}

}  // namespace lcis
