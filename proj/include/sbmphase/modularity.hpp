#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sbmphase/dense.hpp"
#include "sbmphase/graph.hpp"

namespace sbmphase {

// B = A - b*d*dᵀ as an implicit operator: apply(x) = Ax - b(dᵀx)d in
// O(m2 + n) without materializing B. B annihilates the ones vector.
// Accumulation order is fixed (ascending nodes, sorted neighbors), so
// results are bitwise reproducible.
class ModularityOperator {
 public:
  // Rejects edgeless graphs (b undefined). The graph must outlive the
  // operator; binding a temporary is a compile error.
  explicit ModularityOperator(const Graph& g) : g_(&g), deg_(degree_data(g)) {}
  explicit ModularityOperator(Graph&&) = delete;

  std::uint32_t n() const noexcept { return g_->n(); }
  const Graph& graph() const noexcept { return *g_; }
  const DegreeData& deg() const noexcept { return deg_; }

  void apply(std::span<const double> x, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> x) const;

 private:
  const Graph* g_;
  DegreeData deg_;
};

// Entrywise A - b*d*dᵀ. Test oracle only; refuses n above the cap.
DenseMatrix dense_modularity(const Graph& g, std::uint32_t cap = 512);

// Restriction of the modularity construction to a node subset S: the induced
// subgraph's own adjacency and degrees define B_i = A_i - b_i * d̃ d̃ᵀ with
// b_i the reciprocal of the induced degree total.
struct CommunityView {
  std::vector<std::uint32_t> nodes;          // sorted, unique
  std::vector<std::uint32_t> within_degree;  // induced-subgraph degrees, aligned with nodes
  double b_i = 0.0;
};

// Throws when the subset is empty, unsorted, duplicated, or out of range,
// or when the induced subgraph has no edges (b_i undefined).
CommunityView make_community_view(const Graph& g, std::vector<std::uint32_t> nodes);

// Subset of all nodes carrying the given label value.
CommunityView community_view_of_label(const Graph& g, std::span<const std::uint8_t> labels,
                                      std::uint8_t value);

// xᵀ B_i x for a vector indexed like view.nodes.
double restricted_quadform(const Graph& g, const CommunityView& view,
                           std::span<const double> x);

}  // namespace sbmphase
