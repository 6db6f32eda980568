#pragma once

#include <cstdint>
#include <vector>

#include "sbmphase/graph.hpp"

namespace sbmphase {

struct SbmParams {
  std::uint32_t n1 = 0, n2 = 0;  // community sizes
  double p1 = 0.0, p2 = 0.0;     // within-community edge probabilities
  double p = 0.0;                // inter-community edge probability
};

// Throws unless sizes are >= 1, n1+n2 fits the node index type, and all
// probabilities lie in [0, 1].
void validate(const SbmParams& params);

// 64-bit fingerprint of the parameter set, used to key RNG streams.
std::uint64_t params_key(const SbmParams& params);

struct SbmSample {
  Graph graph;
  std::vector<std::uint8_t> truth;  // nodes [0, n1) -> 1, [n1, n) -> 2
  std::uint64_t seed = 0;
};

// Two-community block model: each unordered within-block pair is an
// independent Bernoulli(p1) or Bernoulli(p2) draw, each cross pair
// Bernoulli(p). Blocks are hollow (no self-pairs). Draws come from streams
// keyed by (params, seed, block, row), so the sample depends only on
// (params, seed), never on generation order or thread count.
SbmSample generate(const SbmParams& params, std::uint64_t seed);

// Rectangular 0/1 matrix in row-compressed form.
struct CrossBlockMatrix {
  std::uint32_t rows = 0, cols = 0;
  std::vector<std::uint64_t> row_offsets;  // size rows + 1
  std::vector<std::uint32_t> col_index;    // sorted within each row
  std::uint64_t nnz() const noexcept { return col_index.size(); }
};

// Standalone independent-Bernoulli(p) matrix, deterministic per
// (n1, n2, p, seed).
CrossBlockMatrix generate_cross_block(std::uint32_t n1, std::uint32_t n2, double p,
                                      std::uint64_t seed);

}  // namespace sbmphase
