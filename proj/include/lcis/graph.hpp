#ifndef LCIS_GRAPH_HPP
#define LCIS_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcis/random.hpp"

namespace lcis {

/// Vertices are 0-indexed: a graph of order n has vertex set {0, ..., n-1}.
using Vertex = int;

/// Fixed-length bitset packed into 64-bit words. Bits past size() are always
/// zero, so word-wise comparison is exact.
class Bitset {
 public:
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t bits) : size_(bits), words_(word_count(bits), 0) {}

  static constexpr std::size_t word_count(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return ((words_[i / kWordBits] >> (i % kWordBits)) & 1U) != 0; }
  void set(std::size_t i) { words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits)); }
  void assign(std::size_t i, bool value) { value ? set(i) : reset(i); }

  std::size_t count() const;
  bool none() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Undirected simple graph with one bitset row per vertex.
///
/// Invariants: adjacency is symmetric, there are no self-loops and no bit at
/// or beyond order() is ever set. Mutators reject anything that would break
/// them.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int order);

  int order() const { return order_; }
  bool has_edge(Vertex u, Vertex v) const { return rows_[u].test(static_cast<std::size_t>(v)); }
  const Bitset& neighbours(Vertex u) const { return rows_[u]; }

  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);
  void set_edge(Vertex u, Vertex v, bool present) { present ? add_edge(u, v) : remove_edge(u, v); }

  std::size_t edge_count() const;
  /// All edges as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Checks the representation invariants; returns false on any violation.
  bool well_formed() const;

  friend bool operator==(const Graph&, const Graph&) = default;

  static Graph complete(int order);
  static Graph path(int order);
  static Graph cycle(int order);

 private:
  friend Graph sample_er(int order, Seed seed);
  void check_pair(Vertex u, Vertex v) const;

  int order_ = 0;
  std::vector<Bitset> rows_;
};

/// The input of one LCIS instance.
struct GraphPair {
  Graph g1;
  Graph g2;

  GraphPair() = default;
  GraphPair(Graph first, Graph second);

  int order() const { return g1.order(); }
  const Graph& side(int j) const { return j == 1 ? g1 : g2; }

  friend bool operator==(const GraphPair&, const GraphPair&) = default;
};

/// G(n, 1/2). Pairs (0,1), (0,2), ..., (0,n-1), (1,2), ... are visited in
/// lexicographic order and each consumes one splitmix64 output; the lowest
/// bit decides whether the edge is present.
Graph sample_er(int order, Seed seed);

/// Two independent G(n, 1/2) samples on the streams derived from
/// (seed, kFirstGraphTag) and (seed, kSecondGraphTag).
GraphPair sample_pair(int order, Seed seed);

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(std::size_t line, const std::string& what)
      : std::runtime_error(what + " at line " + std::to_string(line)), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text format: the first line holds n, then one "u v" line per edge with
// 0 <= u < v < n. Blank lines are ignored; duplicates are rejected.
Graph read_graph(std::string_view text);
std::string write_graph(const Graph& graph);

Graph read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const Graph& graph);

}  // namespace lcis

#endif  // LCIS_GRAPH_HPP
