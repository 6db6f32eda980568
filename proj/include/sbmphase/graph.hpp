#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sbmphase {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Immutable undirected simple graph in compressed sparse row form.
// Neighbor lists are sorted and free of self-loops and duplicates;
// adjacency is symmetric by construction.
class Graph {
 public:
  Graph() = default;

  std::uint32_t n() const noexcept { return n_; }
  // 1ᵀA1: the sum of all degrees, i.e. twice the edge count.
  std::uint64_t m2() const noexcept { return adj_.size(); }
  std::uint64_t edge_count() const noexcept { return adj_.size() / 2; }

  std::uint32_t degree(std::uint32_t v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  bool operator==(const Graph&) const = default;

  friend Graph build_graph(std::uint32_t n, std::span<const Edge> edges);

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> offsets_;  // size n_ + 1
  std::vector<std::uint32_t> adj_;
};

// Normalizes arbitrary pair input: both orientations and duplicates collapse
// to one undirected edge, self-loops are dropped. Endpoints must lie in
// [0, n) and n must be at least 1.
Graph build_graph(std::uint32_t n, std::span<const Edge> edges);

// All undirected edges as {min, max} pairs in lexicographic order.
std::vector<Edge> edge_set(const Graph& g);

struct DegreeData {
  std::vector<std::uint32_t> d;
  double b = 0.0;  // 1/m2, the reciprocal of 1ᵀA1
};

// Requires m2 > 0; on an edgeless graph b is undefined and this throws.
DegreeData degree_data(const Graph& g);

struct CutCounts {
  std::uint64_t within1 = 0;
  std::uint64_t within2 = 0;
  std::uint64_t cross = 0;
};

// Labels may take at most two distinct values; entries equal to the smaller
// value form block 1. Each undirected edge is counted exactly once, so
// within1 + within2 + cross equals the edge count.
CutCounts cut_counts(const Graph& g, std::span<const std::uint8_t> labels);

}  // namespace sbmphase
