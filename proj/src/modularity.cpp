#include "sbmphase/modularity.hpp"

#include <cstdint>
#include <stdexcept>

namespace sbmphase {

void ModularityOperator::apply(std::span<const double> x, std::span<double> out) const {
  const std::uint32_t n = g_->n();
  if (x.size() != n || out.size() != n)
    throw std::invalid_argument("modularity apply: vector length mismatch");
  double dot = 0.0;
  for (std::uint32_t v = 0; v < n; ++v) dot += double(deg_.d[v]) * x[v];
  const double scale = deg_.b * dot;
  for (std::uint32_t v = 0; v < n; ++v) {
    double acc = 0.0;
    for (std::uint32_t w : g_->neighbors(v)) acc += x[w];
    out[v] = acc - scale * double(deg_.d[v]);
  }
}

std::vector<double> ModularityOperator::apply(std::span<const double> x) const {
  std::vector<double> out(g_->n());
  apply(x, out);
  return out;
}

DenseMatrix dense_modularity(const Graph& g, std::uint32_t cap) {
  if (g.n() > cap) throw std::invalid_argument("dense_modularity: n exceeds the oracle cap");
  const DegreeData dd = degree_data(g);
  const std::uint32_t n = g.n();
  DenseMatrix B(n, n);
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t w : g.neighbors(v)) B(v, w) = 1.0;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) B(i, j) -= dd.b * double(dd.d[i]) * double(dd.d[j]);
  return B;
}

CommunityView make_community_view(const Graph& g, std::vector<std::uint32_t> nodes) {
  if (nodes.empty()) throw std::invalid_argument("community view: empty node subset");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] >= g.n())
      throw std::invalid_argument("community view: node index out of range");
    if (k > 0 && nodes[k] <= nodes[k - 1])
      throw std::invalid_argument("community view: nodes must be sorted and unique");
  }

  std::vector<std::uint8_t> member(g.n(), 0);
  for (std::uint32_t v : nodes) member[v] = 1;

  CommunityView view;
  view.nodes = std::move(nodes);
  view.within_degree.resize(view.nodes.size());
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < view.nodes.size(); ++k) {
    std::uint32_t count = 0;
    for (std::uint32_t w : g.neighbors(view.nodes[k])) count += member[w];
    view.within_degree[k] = count;
    total += count;
  }
  if (total == 0)
    throw std::invalid_argument("community view: induced subgraph has no edges, b_i undefined");
  view.b_i = 1.0 / double(total);
  return view;
}

CommunityView community_view_of_label(const Graph& g, std::span<const std::uint8_t> labels,
                                      std::uint8_t value) {
  if (labels.size() != g.n())
    throw std::invalid_argument("community view: labels length mismatch");
  std::vector<std::uint32_t> nodes;
  for (std::uint32_t v = 0; v < g.n(); ++v)
    if (labels[v] == value) nodes.push_back(v);
  return make_community_view(g, std::move(nodes));
}

double restricted_quadform(const Graph& g, const CommunityView& view,
                           std::span<const double> x) {
  if (x.size() != view.nodes.size())
    throw std::invalid_argument("restricted_quadform: vector length mismatch");
  std::vector<std::int64_t> pos(g.n(), -1);
  for (std::size_t k = 0; k < view.nodes.size(); ++k)
    pos[view.nodes[k]] = std::int64_t(k);

  double adj = 0.0, dot = 0.0;
  for (std::size_t k = 0; k < view.nodes.size(); ++k) {
    for (std::uint32_t w : g.neighbors(view.nodes[k]))
      if (pos[w] >= 0) adj += x[k] * x[std::size_t(pos[w])];
    dot += double(view.within_degree[k]) * x[k];
  }
  // adj already holds xᵀA_i x: the CSR scan visits each induced edge twice.
  return adj - view.b_i * dot * dot;
}

}  // namespace sbmphase
