#pragma once

#include <cstdint>

#include "sbmphase/detect.hpp"
#include "sbmphase/graph.hpp"

namespace sbmphase {

// A-posteriori estimates from an identified partition. The within-community
// densities deliberately use the n̂² denominator (not the simple-graph
// n̂(n̂-1)/2 density); the discrepancy is O(1/n̂). Edge counts count each
// undirected edge once.
struct EmpiricalEstimates {
  std::uint32_t n1_hat = 0, n2_hat = 0;
  std::uint64_t m1_hat = 0, m2_hat = 0;  // within-community edge counts
  std::uint64_t x_hat = 0;               // cross-community edge count
  double p_hat = 0.0;       // x̂ / (n̂1 * n̂2)
  double p1_hat = 0.0;      // m̂1 / n̂1²
  double p2_hat = 0.0;      // m̂2 / n̂2²
  double p_star_hat = 0.0;  // sqrt(p̂1 * p̂2)
  bool reliable = false;    // p̂ < p̂*, strict: the tie counts as unreliable
};

// Both communities must be nonempty; partition labels must be 1 or 2.
EmpiricalEstimates estimate(const Graph& g, const Partition& pred);

}  // namespace sbmphase
