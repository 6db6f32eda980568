#include "sbmphase/sbm.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "sbmphase/rng.hpp"

namespace sbmphase {

void validate(const SbmParams& params) {
  if (params.n1 < 1 || params.n2 < 1)
    throw std::invalid_argument("sbm: community sizes must be >= 1");
  const std::uint64_t n = std::uint64_t{params.n1} + params.n2;
  if (n > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("sbm: n1+n2 overflows the node index type");
  for (double q : {params.p1, params.p2, params.p})
    if (!(q >= 0.0 && q <= 1.0))
      throw std::invalid_argument("sbm: probabilities must lie in [0,1]");
}

std::uint64_t params_key(const SbmParams& params) {
  return hash_mix({params.n1, params.n2, std::bit_cast<std::uint64_t>(params.p1),
                   std::bit_cast<std::uint64_t>(params.p2),
                   std::bit_cast<std::uint64_t>(params.p)});
}

namespace {
// Stream tags keeping the three pair families on disjoint streams.
constexpr std::uint64_t kBlock1 = 1, kBlock2 = 2, kCross = 3;
}  // namespace

SbmSample generate(const SbmParams& params, std::uint64_t seed) {
  validate(params);
  const std::uint32_t n1 = params.n1, n2 = params.n2;
  const std::uint32_t n = n1 + n2;
  const std::uint64_t key = params_key(params);

  std::vector<Edge> edges;
  const double expected = 0.5 * params.p1 * double(n1) * n1 + 0.5 * params.p2 * double(n2) * n2 +
                          params.p * double(n1) * n2;
  edges.reserve(static_cast<std::size_t>(expected * 1.05) + 64);

  for (std::uint32_t i = 0; i < n1; ++i) {
    SplitMix64 rng(hash_mix({key, seed, kBlock1, i}));
    for (std::uint32_t j = i + 1; j < n1; ++j)
      if (rng.next_unit() < params.p1) edges.emplace_back(i, j);
  }
  for (std::uint32_t i = 0; i < n2; ++i) {
    SplitMix64 rng(hash_mix({key, seed, kBlock2, i}));
    for (std::uint32_t j = i + 1; j < n2; ++j)
      if (rng.next_unit() < params.p2) edges.emplace_back(n1 + i, n1 + j);
  }
  for (std::uint32_t i = 0; i < n1; ++i) {
    SplitMix64 rng(hash_mix({key, seed, kCross, i}));
    for (std::uint32_t j = 0; j < n2; ++j)
      if (rng.next_unit() < params.p) edges.emplace_back(i, n1 + j);
  }

  SbmSample s;
  s.graph = build_graph(n, edges);
  s.truth.assign(n, 1);
  std::fill(s.truth.begin() + n1, s.truth.end(), 2);
  s.seed = seed;
  return s;
}

CrossBlockMatrix generate_cross_block(std::uint32_t n1, std::uint32_t n2, double p,
                                      std::uint64_t seed) {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("generate_cross_block: sizes must be >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("generate_cross_block: p must lie in [0,1]");

  const std::uint64_t key = hash_mix({n1, n2, std::bit_cast<std::uint64_t>(p)});
  CrossBlockMatrix C;
  C.rows = n1;
  C.cols = n2;
  C.row_offsets.assign(static_cast<std::size_t>(n1) + 1, 0);
  C.col_index.reserve(static_cast<std::size_t>(p * double(n1) * n2 * 1.05) + 16);
  for (std::uint32_t i = 0; i < n1; ++i) {
    SplitMix64 rng(hash_mix({key, seed, i}));
    for (std::uint32_t j = 0; j < n2; ++j)
      if (rng.next_unit() < p) C.col_index.push_back(j);
    C.row_offsets[i + 1] = C.col_index.size();
  }
  return C;
}

}  // namespace sbmphase
