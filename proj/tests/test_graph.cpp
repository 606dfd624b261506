#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "lcis/graph.hpp"
#include "lcis/random.hpp"

using namespace lcis;

namespace {

const std::filesystem::path kData = LCIS_TEST_DATA_DIR;

// Reference sampler: one has_edge decision per pair, no word tricks.
Graph naive_er(int n, Seed seed) {
  Graph g(n);
  SplitMix64 rng(seed);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.next_bit()) {
        g.add_edge(u, v);
      }
    }
  }
  return g;
}

}  // namespace

TEST_CASE("splitmix64 reference outputs") {
  // Published test vector for seed 1234567.
  SplitMix64 rng(1234567ULL);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
}

TEST_CASE("derive_seed is the first output of the xored stream") {
  const Seed s{99};
  CHECK(derive_seed(s, 7).value == SplitMix64(99ULL ^ 7ULL).next());
  CHECK(derive_seed(s, {7, 8}).value == derive_seed(derive_seed(s, 7), 8).value);
}

TEST_CASE("sample_er trivial orders") {
  CHECK(sample_er(0, Seed{5}).order() == 0);
  const auto one = sample_er(1, Seed{5});
  CHECK(one.order() == 1);
  CHECK(one.edge_count() == 0);
  CHECK(sample_pair(0, Seed{3}).order() == 0);
}

TEST_CASE("sample_er matches the per-pair reference sampler") {
  for (int n : {2, 3, 63, 64, 65, 127, 128, 130, 200}) {
    for (std::uint64_t s = 0; s < 4; ++s) {
      const auto fast = sample_er(n, Seed{s * 977 + 1});
      CHECK(fast == naive_er(n, Seed{s * 977 + 1}));
      CHECK(fast.well_formed());
    }
  }
}

TEST_CASE("golden edge count n=64 seed=12345") {
  // Cross-checked against an independent Python splitmix64 implementation.
  CHECK(sample_er(64, Seed{12345}).edge_count() == 1043);
}

TEST_CASE("golden graph files") {
  CHECK(sample_er(5, Seed{42}) == read_graph_file(kData / "er_n5_seed42.txt"));
  const auto pair = sample_pair(8, Seed{1});
  CHECK(pair.g1 == read_graph_file(kData / "pair_n8_seed1_g1.txt"));
  CHECK(pair.g2 == read_graph_file(kData / "pair_n8_seed1_g2.txt"));
}

TEST_CASE("sampling is pure") {
  const auto first = sample_pair(97, Seed{2024});
  for (int i = 0; i < 100; ++i) {
    REQUIRE(sample_pair(97, Seed{2024}) == first);
  }
  CHECK_FALSE(sample_pair(97, Seed{2025}) == first);
  CHECK_FALSE(first.g1 == first.g2);
}

TEST_CASE("edge density concentrates at n=256") {
  const int n = 256;
  const double pairs = n * (n - 1) / 2.0;
  const int seeds = 1000;
  double total1 = 0;
  double total2 = 0;
  for (int s = 0; s < seeds; ++s) {
    const auto pair = sample_pair(n, Seed{static_cast<std::uint64_t>(s)});
    total1 += pair.g1.edge_count() / pairs;
    total2 += pair.g2.edge_count() / pairs;
  }
  // Mean density over all seeds: sd = 0.5 / sqrt(pairs * seeds).
  const double sigma = 0.5 / std::sqrt(pairs * seeds);
  CHECK(std::abs(total1 / seeds - 0.5) <= 3 * sigma);
  CHECK(std::abs(total2 / seeds - 0.5) <= 3 * sigma);
}

TEST_CASE("per-pair edge frequency at n=32 over 10000 pairs") {
  const int n = 32;
  std::vector<int> hits(n * n, 0);
  const int samples = 10000;
  for (int s = 0; s < samples; ++s) {
    const auto g = sample_er(n, Seed{static_cast<std::uint64_t>(s) * 0x9E37ULL + 11});
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        hits[u * n + v] += g.has_edge(u, v) ? 1 : 0;
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double freq = static_cast<double>(hits[u * n + v]) / samples;
      CHECK(freq >= 0.48);
      CHECK(freq <= 0.52);
    }
  }
}

TEST_CASE("graph invariants and mutation guards") {
  Graph g(4);
  g.add_edge(2, 0);
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(2, 0));
  CHECK(g.edge_count() == 1);
  CHECK_THROWS(g.add_edge(1, 1));
  CHECK_THROWS(g.add_edge(0, 4));
  CHECK_THROWS(g.add_edge(-1, 2));
  g.remove_edge(0, 2);
  CHECK(g.edge_count() == 0);
  CHECK(Graph::complete(5).edge_count() == 10);
  CHECK(Graph::path(5).edge_count() == 4);
  CHECK(Graph::cycle(5).edge_count() == 5);
  CHECK(Graph::cycle(5).well_formed());
  CHECK_THROWS(GraphPair(Graph(3), Graph(4)));
}

TEST_CASE("read_graph basic and round trip") {
  const auto g = read_graph("3\n0 1\n");
  CHECK(g.order() == 3);
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(1, 2));

  const auto messy = read_graph("4\n2 3\n\n0 1\n1 3\n");
  CHECK(write_graph(messy) == "4\n0 1\n1 3\n2 3\n");
  CHECK(read_graph(write_graph(messy)) == messy);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto r = sample_er(33, Seed{s});
    CHECK(read_graph(write_graph(r)) == r);
  }
}

TEST_CASE("read_graph errors name the line") {
  auto message = [](std::string_view text) -> std::string {
    try {
      read_graph(text);
    } catch (const GraphParseError& e) {
      return e.what();
    }
    return "no error";
  };
  CHECK(message("2\n1 0\n") == "u >= v at line 2");
  CHECK(message("3\n0 1\n0 1\n") == "duplicate edge at line 3");
  CHECK(message("3\n0 3\n") == "vertex out of range at line 2");
  CHECK(message("3\n0 x\n") == "malformed line at line 2");
  CHECK(message("3\n0 1 2\n") == "malformed line at line 2");
  CHECK(message("-1\n") != "no error");
  CHECK(message("") != "no error");
}
