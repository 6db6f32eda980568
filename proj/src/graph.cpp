#include "sbmphase/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sbmphase {

Graph build_graph(std::uint32_t n, std::span<const Edge> edges) {
  if (n == 0) throw std::invalid_argument("build_graph: node count must be >= 1");

  std::vector<Edge> norm;
  norm.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n)
      throw std::invalid_argument("build_graph: endpoint " + std::to_string(std::max(a, b)) +
                                  " out of range for n=" + std::to_string(n));
    if (a == b) continue;
    norm.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(norm.begin(), norm.end());
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [a, b] : norm) {
    ++g.offsets_[a + 1];
    ++g.offsets_[b + 1];
  }
  for (std::uint32_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.adj_.resize(norm.size() * 2);
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Inserting in lexicographic edge order leaves every neighbor list sorted:
  // entries below v arrive while scanning pairs (a, v), entries above v while
  // scanning pairs (v, b), and both phases run in ascending order.
  for (const auto& [a, b] : norm) {
    g.adj_[cursor[a]++] = b;
    g.adj_[cursor[b]++] = a;
  }
  return g;
}

std::vector<Edge> edge_set(const Graph& g) {
  std::vector<Edge> out;
  out.reserve(g.edge_count());
  for (std::uint32_t v = 0; v < g.n(); ++v)
    for (std::uint32_t w : g.neighbors(v))
      if (v < w) out.emplace_back(v, w);
  return out;
}

DegreeData degree_data(const Graph& g) {
  if (g.m2() == 0) throw std::invalid_argument("degree_data: graph has no edges, b undefined");
  DegreeData dd;
  dd.d.resize(g.n());
  for (std::uint32_t v = 0; v < g.n(); ++v) dd.d[v] = g.degree(v);
  dd.b = 1.0 / static_cast<double>(g.m2());
  return dd;
}

CutCounts cut_counts(const Graph& g, std::span<const std::uint8_t> labels) {
  if (labels.size() != g.n()) throw std::invalid_argument("cut_counts: labels length mismatch");
  std::uint8_t lo = labels.empty() ? 0 : labels[0];
  std::uint8_t hi = lo;
  for (std::uint8_t l : labels) {
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  for (std::uint8_t l : labels)
    if (l != lo && l != hi)
      throw std::invalid_argument("cut_counts: labels must take at most two distinct values");

  CutCounts c;
  for (std::uint32_t v = 0; v < g.n(); ++v)
    for (std::uint32_t w : g.neighbors(v)) {
      if (w <= v) continue;
      if (labels[v] != labels[w])
        ++c.cross;
      else if (labels[v] == lo)
        ++c.within1;
      else
        ++c.within2;
    }
  return c;
}

}  // namespace sbmphase
