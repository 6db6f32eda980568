#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sbmphase/graph.hpp>
#include <sbmphase/sbm.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace sbmphase;

namespace {

// Edges with both endpoints below n1, both at or above n1, and one of each.
struct BlockTally {
  std::uint64_t within1 = 0, within2 = 0, cross = 0;
};

BlockTally tally(const Graph& g, std::uint32_t n1) {
  BlockTally t;
  for (Edge e : edge_set(g)) {
    bool a = e.first < n1, b = e.second < n1;
    if (a && b)
      ++t.within1;
    else if (!a && !b)
      ++t.within2;
    else
      ++t.cross;
  }
  return t;
}

}  // namespace

// =============================================================================
// generate: deterministic probability endpoints
// =============================================================================

TEST_CASE("p1=p2=1, p=0 gives two disjoint complete blocks") {
  SbmSample s = generate({2, 2, 1.0, 1.0, 0.0}, 99);
  std::vector<Edge> expect{{0, 1}, {2, 3}};
  CHECK(edge_set(s.graph) == expect);
  std::vector<std::uint8_t> truth{1, 1, 2, 2};
  CHECK(s.truth == truth);
  CHECK(s.seed == 99);
}

TEST_CASE("all probabilities one gives the complete graph") {
  SbmSample s = generate({3, 3, 1.0, 1.0, 1.0}, 5);
  CHECK(s.graph.n() == 6);
  CHECK(s.graph.edge_count() == 15);  // C(6,2)
  for (std::uint32_t v = 0; v < 6; ++v) CHECK(s.graph.degree(v) == 5);
}

TEST_CASE("all probabilities zero gives the edgeless graph") {
  SbmSample s = generate({4, 3, 0.0, 0.0, 0.0}, 1);
  CHECK(s.graph.n() == 7);
  CHECK(s.graph.m2() == 0);
}

TEST_CASE("p=0 structurally forbids cross edges and p2=0 empties block 2") {
  SbmSample s = generate({30, 40, 0.8, 0.0, 0.0}, 123);
  BlockTally t = tally(s.graph, 30);
  CHECK(t.cross == 0);
  CHECK(t.within2 == 0);
  CHECK(t.within1 > 0);
}

// =============================================================================
// generate: determinism
// =============================================================================

TEST_CASE("identical parameters and seed reproduce the identical sample") {
  SbmParams params{50, 70, 0.3, 0.4, 0.15};
  SbmSample a = generate(params, 2024);
  SbmSample b = generate(params, 2024);
  CHECK(a.graph == b.graph);
  CHECK(a.truth == b.truth);
}

TEST_CASE("different seeds give different samples at moderate density") {
  SbmParams params{50, 50, 0.3, 0.3, 0.3};
  CHECK(generate(params, 1).graph != generate(params, 2).graph);
}

TEST_CASE("different parameter sets with the same seed decorrelate") {
  SbmSample a = generate({40, 40, 0.5, 0.5, 0.5}, 7);
  SbmSample b = generate({40, 40, 0.5, 0.5, 0.25}, 7);
  CHECK(a.graph != b.graph);
}

// =============================================================================
// generate: edge-count concentration
// =============================================================================

TEST_CASE("within-block-1 edge count concentrates around its binomial mean") {
  // mean 0.25 * C(500,2) = 31187.5, sigma = sqrt(mean * 0.75) ~ 153
  SbmSample s = generate({500, 500, 0.25, 0.25, 0.1}, 77);
  BlockTally t = tally(s.graph, 500);
  double mean = 0.25 * (500.0 * 499.0 / 2.0);
  double sigma = std::sqrt(mean * 0.75);
  CHECK(std::abs(static_cast<double>(t.within1) - mean) <= 4.0 * sigma);
}

TEST_CASE("cross edge count concentrates around its binomial mean") {
  // mean 0.1 * 500 * 500 = 25000, sigma = sqrt(25000 * 0.9) ~ 150
  SbmSample s = generate({500, 500, 0.25, 0.25, 0.1}, 78);
  BlockTally t = tally(s.graph, 500);
  double mean = 0.1 * 500.0 * 500.0;
  double sigma = std::sqrt(mean * 0.9);
  CHECK(std::abs(static_cast<double>(t.cross) - mean) <= 4.0 * sigma);
}

TEST_CASE("row degree averages track n*p at the half-density point") {
  SbmParams params{200, 200, 0.5, 0.5, 0.5};
  SbmSample s = generate(params, 31);
  double total = 0.0;
  for (std::uint32_t v = 0; v < s.graph.n(); ++v) total += s.graph.degree(v);
  double mean_degree = total / s.graph.n();
  // expectation ~ 0.5 * 399
  CHECK(std::abs(mean_degree - 0.5 * 399.0) / 399.0 <= 0.08);
}

// =============================================================================
// parameter validation
// =============================================================================

TEST_CASE("validate rejects degenerate sizes and out-of-range probabilities") {
  CHECK_THROWS_AS(validate({0, 5, 0.5, 0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(validate({5, 0, 0.5, 0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(validate({5, 5, -0.1, 0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(validate({5, 5, 0.5, 1.1, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(validate({5, 5, 0.5, 0.5, 2.0}), std::invalid_argument);
  CHECK_NOTHROW(validate({1, 1, 0.0, 1.0, 0.5}));
}

TEST_CASE("params_key distinguishes nearby parameter sets") {
  CHECK(params_key({5, 5, 0.5, 0.5, 0.5}) != params_key({5, 5, 0.5, 0.5, 0.25}));
  CHECK(params_key({5, 6, 0.5, 0.5, 0.5}) != params_key({6, 5, 0.5, 0.5, 0.5}));
  CHECK(params_key({5, 5, 0.5, 0.5, 0.5}) == params_key({5, 5, 0.5, 0.5, 0.5}));
}

// =============================================================================
// generate_cross_block
// =============================================================================

TEST_CASE("cross block at p=0 is empty and at p=1 is full") {
  CrossBlockMatrix zero = generate_cross_block(7, 9, 0.0, 4);
  CHECK(zero.rows == 7);
  CHECK(zero.cols == 9);
  CHECK(zero.nnz() == 0);

  CrossBlockMatrix full = generate_cross_block(7, 9, 1.0, 4);
  CHECK(full.nnz() == 63);
  for (std::uint32_t i = 0; i < 7; ++i)
    CHECK(full.row_offsets[i + 1] - full.row_offsets[i] == 9);
}

TEST_CASE("cross block entry count concentrates at p=0.3") {
  CrossBlockMatrix c = generate_cross_block(1000, 1000, 0.3, 20);
  double mean = 3.0e5;
  double sigma = std::sqrt(mean * 0.7);  // ~458
  CHECK(std::abs(static_cast<double>(c.nnz()) - mean) <= 4.0 * sigma);
}

TEST_CASE("cross block rows are sorted and deterministic per seed") {
  CrossBlockMatrix a = generate_cross_block(20, 30, 0.4, 9);
  CrossBlockMatrix b = generate_cross_block(20, 30, 0.4, 9);
  CHECK(a.col_index == b.col_index);
  CHECK(a.row_offsets == b.row_offsets);
  for (std::uint32_t i = 0; i < a.rows; ++i)
    for (std::uint64_t k = a.row_offsets[i] + 1; k < a.row_offsets[i + 1]; ++k)
      CHECK(a.col_index[k - 1] < a.col_index[k]);
  CHECK(generate_cross_block(20, 30, 0.4, 10).col_index != a.col_index);
}
