#include <algorithm>
#include <limits>

#include "lcis/iso.hpp"

namespace lcis {

namespace {

// Unmatched vertices that share one adjacency pattern to the matched pairs.
struct LabelClass {
  std::vector<Vertex> left;
  std::vector<Vertex> right;
};

class McSplit {
 public:
  McSplit(const GraphPair& input, std::optional<std::uint64_t> budget)
      : g1_(input.g1), g2_(input.g2), budget_(budget) {}

  ExactResult run() {
    const int n = g1_.order();
    if (n > 0) {
      // Any single pair is a common induced subgraph.
      best_ = {{0}, {0}};
    }
    std::vector<LabelClass> classes;
    if (n > 0) {
      LabelClass all;
      for (Vertex v = 0; v < n; ++v) {
        all.left.push_back(v);
        all.right.push_back(v);
      }
      classes.push_back(std::move(all));
    }
    search(classes);
    return {best_, !aborted_, nodes_};
  }

 private:
  static std::size_t bound(const std::vector<LabelClass>& classes) {
    std::size_t total = 0;
    for (const auto& c : classes) {
      total += std::min(c.left.size(), c.right.size());
    }
    return total;
  }

  // Smallest max(|left|, |right|); ties go to the class whose smallest left
  // vertex has the lowest index.
  static std::size_t pick_class(const std::vector<LabelClass>& classes) {
    std::size_t chosen = 0;
    for (std::size_t i = 1; i < classes.size(); ++i) {
      const auto width = std::max(classes[i].left.size(), classes[i].right.size());
      const auto best = std::max(classes[chosen].left.size(), classes[chosen].right.size());
      if (width < best || (width == best && classes[i].left.front() < classes[chosen].left.front())) {
        chosen = i;
      }
    }
    return chosen;
  }

  std::vector<LabelClass> refine(const std::vector<LabelClass>& classes, Vertex v, Vertex w) const {
    std::vector<LabelClass> out;
    out.reserve(classes.size() * 2);
    for (const auto& c : classes) {
      LabelClass adjacent;
      LabelClass apart;
      for (const Vertex x : c.left) {
        if (x != v) {
          (g1_.has_edge(v, x) ? adjacent : apart).left.push_back(x);
        }
      }
      for (const Vertex y : c.right) {
        if (y != w) {
          (g2_.has_edge(w, y) ? adjacent : apart).right.push_back(y);
        }
      }
      if (!adjacent.left.empty() && !adjacent.right.empty()) {
        out.push_back(std::move(adjacent));
      }
      if (!apart.left.empty() && !apart.right.empty()) {
        out.push_back(std::move(apart));
      }
    }
    return out;
  }

  void search(std::vector<LabelClass>& classes) {
    if (aborted_) {
      return;
    }
    if (budget_ && nodes_ >= *budget_) {
      aborted_ = true;
      return;
    }
    ++nodes_;
    if (current_.size() > best_.size()) {
      best_ = current_;
    }
    if (classes.empty() || current_.size() + bound(classes) <= best_.size()) {
      return;
    }

    const std::size_t index = pick_class(classes);
    const auto left = classes[index].left;
    const Vertex v = *std::min_element(left.begin(), left.end());
    auto right = classes[index].right;
    std::sort(right.begin(), right.end());

    for (const Vertex w : right) {
      auto next = refine(classes, v, w);
      current_.s1.push_back(v);
      current_.s2.push_back(w);
      search(next);
      current_.s1.pop_back();
      current_.s2.pop_back();
      if (aborted_) {
        return;
      }
    }

    // Leave v unmatched.
    auto& target = classes[index].left;
    target.erase(std::find(target.begin(), target.end(), v));
    if (target.empty()) {
      classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(index));
    }
    search(classes);
  }

  const Graph& g1_;
  const Graph& g2_;
  std::optional<std::uint64_t> budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  Solution current_;
  Solution best_;
};

}  // namespace

ExactResult exact_lcis(const GraphPair& input, std::optional<std::uint64_t> node_budget) {
  return McSplit(input, node_budget).run();
}

}  // namespace lcis
