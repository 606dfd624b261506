#include "lcis/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace lcis {

std::size_t Bitset::count() const {
  std::size_t total = 0;
  for (const auto word : words_) {
    total += static_cast<std::size_t>(std::popcount(word));
  }
  return total;
}

bool Bitset::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

Graph::Graph(int order) : order_(order) {
  if (order < 0) {
    throw std::invalid_argument("graph order must be non-negative");
  }
  rows_.assign(static_cast<std::size_t>(order), Bitset(static_cast<std::size_t>(order)));
}

void Graph::check_pair(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= order_ || v >= order_) {
    throw std::out_of_range("vertex out of range");
  }
  if (u == v) {
    throw std::invalid_argument("self-loops are not allowed");
  }
}

void Graph::add_edge(Vertex u, Vertex v) {
  check_pair(u, v);
  rows_[u].set(static_cast<std::size_t>(v));
  rows_[v].set(static_cast<std::size_t>(u));
}

void Graph::remove_edge(Vertex u, Vertex v) {
  check_pair(u, v);
  rows_[u].reset(static_cast<std::size_t>(v));
  rows_[v].reset(static_cast<std::size_t>(u));
}

std::size_t Graph::edge_count() const {
  std::size_t degree_sum = 0;
  for (const auto& row : rows_) {
    degree_sum += row.count();
  }
  return degree_sum / 2;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < order_; ++u) {
    for (Vertex v = u + 1; v < order_; ++v) {
      if (has_edge(u, v)) {
        out.emplace_back(u, v);
      }
    }
  }
  return out;
}

bool Graph::well_formed() const {
  if (rows_.size() != static_cast<std::size_t>(order_)) {
    return false;
  }
  for (Vertex u = 0; u < order_; ++u) {
    const auto& row = rows_[u];
    if (row.size() != static_cast<std::size_t>(order_) || row.test(static_cast<std::size_t>(u))) {
      return false;
    }
    const auto words = row.words();
    if (!words.empty() && order_ % Bitset::kWordBits != 0) {
      const std::uint64_t tail = ~std::uint64_t{0} << (order_ % Bitset::kWordBits);
      if ((words.back() & tail) != 0) {
        return false;
      }
    }
    for (Vertex v = u + 1; v < order_; ++v) {
      if (row.test(static_cast<std::size_t>(v)) != rows_[v].test(static_cast<std::size_t>(u))) {
        return false;
      }
    }
  }
  return true;
}

Graph Graph::complete(int order) {
  Graph g(order);
  for (Vertex u = 0; u < order; ++u) {
    for (Vertex v = u + 1; v < order; ++v) {
      g.add_edge(u, v);
    }
  }
  return g;
}

Graph Graph::path(int order) {
  Graph g(order);
  for (Vertex u = 0; u + 1 < order; ++u) {
    g.add_edge(u, u + 1);
  }
  return g;
}

Graph Graph::cycle(int order) {
  Graph g = path(order);
  if (order >= 3) {
    g.add_edge(order - 1, 0);
  }
  return g;
}

GraphPair::GraphPair(Graph first, Graph second) : g1(std::move(first)), g2(std::move(second)) {
  if (g1.order() != g2.order()) {
    throw std::invalid_argument("graph pair must have equal orders");
  }
}

namespace {

// In-place transpose of a 64x64 bit matrix; bit j of rows[i] is entry (i, j).
void transpose64(std::array<std::uint64_t, 64>& rows) {
  std::uint64_t mask = 0x00000000FFFFFFFFULL;
  for (std::size_t width = 32; width != 0; width >>= 1, mask ^= mask << width) {
    for (std::size_t k = 0; k < 64; k = ((k | width) + 1) & ~width) {
      const std::uint64_t t = ((rows[k] >> width) ^ rows[k | width]) & mask;
      rows[k] ^= t << width;
      rows[k | width] ^= t;
    }
  }
}

}  // namespace

Graph sample_er(int order, Seed seed) {
  Graph g(order);
  SplitMix64 rng(seed);
  const auto n = static_cast<std::size_t>(order);

  // Upper triangle, row by row in the documented pair order.
  for (std::size_t u = 0; u < n; ++u) {
    auto words = g.rows_[u].words();
    // Branch-free: the coin is unpredictable by design.
    for (std::size_t v = u + 1; v < n; ++v) {
      words[v / Bitset::kWordBits] |= (rng.next() & 1U) << (v % Bitset::kWordBits);
    }
  }

  // Mirror into the lower triangle one 64x64 block at a time.
  const std::size_t blocks = Bitset::word_count(n);
  std::array<std::uint64_t, 64> block{};
  for (std::size_t bu = 0; bu < blocks; ++bu) {
    for (std::size_t bv = bu; bv < blocks; ++bv) {
      for (std::size_t r = 0; r < 64; ++r) {
        const std::size_t row = bu * 64 + r;
        block[r] = row < n ? g.rows_[row].words()[bv] : 0;
      }
      transpose64(block);
      for (std::size_t r = 0; r < 64; ++r) {
        const std::size_t row = bv * 64 + r;
        if (row < n) {
          g.rows_[row].words()[bu] |= block[r];
        }
      }
    }
  }
  return g;
}

GraphPair sample_pair(int order, Seed seed) {
  return GraphPair(sample_er(order, derive_seed(seed, kFirstGraphTag)),
                   sample_er(order, derive_seed(seed, kSecondGraphTag)));
}

namespace {

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

// False on anything other than a whitespace-separated list of integers.
bool parse_ints(std::string_view line, std::vector<long long>& out) {
  out.clear();
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
      ++pos;
    }
    if (pos == line.size()) {
      break;
    }
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
    if (ec != std::errc{}) {
      return false;
    }
    pos = static_cast<std::size_t>(ptr - line.data());
    if (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') {
      return false;
    }
    out.push_back(value);
  }
  return true;
}

}  // namespace

Graph read_graph(std::string_view text) {
  std::vector<long long> fields;
  std::optional<Graph> graph;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (blank(line)) {
      continue;
    }
    if (!parse_ints(line, fields)) {
      throw GraphParseError(line_no, "malformed line");
    }
    if (!graph) {
      if (fields.size() != 1 || fields[0] < 0 || fields[0] > (1LL << 30)) {
        throw GraphParseError(line_no, "expected vertex count");
      }
      graph.emplace(static_cast<int>(fields[0]));
      continue;
    }
    if (fields.size() != 2) {
      throw GraphParseError(line_no, "malformed line");
    }
    const long long u = fields[0];
    const long long v = fields[1];
    if (u < 0 || v < 0 || u >= graph->order() || v >= graph->order()) {
      throw GraphParseError(line_no, "vertex out of range");
    }
    if (u >= v) {
      throw GraphParseError(line_no, "u >= v");
    }
    if (graph->has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
      throw GraphParseError(line_no, "duplicate edge");
    }
    graph->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (!graph) {
    throw GraphParseError(line_no, "missing vertex count");
  }
  return std::move(*graph);
}

std::string write_graph(const Graph& graph) {
  std::ostringstream out;
  out << graph.order() << '\n';
  for (const auto& [u, v] : graph.edges()) {
    out << u << ' ' << v << '\n';
  }
  return out.str();
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_graph(buffer.str());
}

void write_graph_file(const std::filesystem::path& path, const Graph& graph) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << write_graph(graph);
}

}  // namespace lcis
