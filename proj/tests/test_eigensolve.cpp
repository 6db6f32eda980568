#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sbmphase/eigensolve.hpp>
#include <sbmphase/graph.hpp>
#include <sbmphase/modularity.hpp>
#include <sbmphase/sbm.hpp>

#include "test_support.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace sbmphase;

namespace {

Graph triangle() {
  std::vector<Edge> e{{0, 1}, {0, 2}, {1, 2}};
  return build_graph(3, e);
}

Graph two_disjoint_edges() {
  std::vector<Edge> e{{0, 1}, {2, 3}};
  return build_graph(4, e);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

// =============================================================================
// Leading eigenpair: closed-form cases
// =============================================================================

TEST_CASE("triangle: top eigenvalue off the ones direction is -1") {
  Graph g = triangle();
  ModularityOperator op(g);
  EigenResult r = leading_eigenpair(op);
  CHECK(r.converged);
  CHECK(r.lambda_max == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("two disjoint edges: eigenvalue 1 with the split eigenvector") {
  Graph g = two_disjoint_edges();
  ModularityOperator op(g);
  EigenResult r = leading_eigenpair(op);
  CHECK(r.converged);
  CHECK(r.lambda_max == doctest::Approx(1.0).epsilon(1e-8));
  REQUIRE(r.y.size() == 4);
  // unique up to sign; the convention makes the first entry positive
  CHECK(r.y[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.y[1] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.y[2] == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(r.y[3] == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("path: degenerate zero eigenvalue off the ones direction") {
  std::vector<Edge> e{{0, 1}, {1, 2}};
  Graph g = build_graph(3, e);
  ModularityOperator op(g);
  EigenResult r = leading_eigenpair(op);
  CHECK(r.converged);
  CHECK(r.lambda_max == doctest::Approx(0.0).epsilon(1e-8));
}

// =============================================================================
// Leading eigenpair: result invariants
// =============================================================================

TEST_CASE("returned vector is unit length and orthogonal to ones") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SbmSample s = testsup::random_small_sample(seed, 50);
    ModularityOperator op(s.graph);
    EigenResult r = leading_eigenpair(op);
    REQUIRE(r.converged);
    double norm = std::sqrt(dot(r.y, r.y));
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
    double ones_overlap = 0.0;
    for (double v : r.y) ones_overlap += v;
    CHECK(std::abs(ones_overlap) <= 1e-8 * std::sqrt(double(r.y.size())));
  }
}

TEST_CASE("reported residual matches a recomputed true residual") {
  SbmSample s = generate({40, 40, 0.5, 0.5, 0.1}, 4);
  ModularityOperator op(s.graph);
  EigenResult r = leading_eigenpair(op);
  REQUIRE(r.converged);
  std::vector<double> by = op.apply(r.y);
  double resid = 0.0;
  for (std::size_t i = 0; i < by.size(); ++i) {
    double d = by[i] - r.lambda_max * r.y[i];
    resid += d * d;
  }
  resid = std::sqrt(resid);
  CHECK(std::abs(resid - r.residual) <= 1e-10);
  CHECK(resid <= 1e-8 * std::max(1.0, std::abs(r.lambda_max)) * 1.0001);
}

TEST_CASE("identical config reproduces a bitwise identical result") {
  SbmSample s = generate({30, 30, 0.4, 0.4, 0.2}, 9);
  ModularityOperator op(s.graph);
  EigenResult a = leading_eigenpair(op);
  EigenResult b = leading_eigenpair(op);
  CHECK(a.lambda_max == b.lambda_max);
  CHECK(a.y == b.y);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("different start seeds converge to the same eigenvalue") {
  SbmSample s = generate({25, 35, 0.5, 0.4, 0.15}, 21);
  ModularityOperator op(s.graph);
  SolverConfig cfg;
  cfg.seed = 1;
  EigenResult a = leading_eigenpair(op, cfg);
  cfg.seed = 777;
  EigenResult b = leading_eigenpair(op, cfg);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(a.lambda_max == doctest::Approx(b.lambda_max).epsilon(1e-7));
}

TEST_CASE("the internal shift setting does not change the answer") {
  SbmSample s = generate({30, 30, 0.5, 0.5, 0.45}, 14);
  ModularityOperator op(s.graph);
  SolverConfig cfg;
  cfg.shift = 0.0;
  EigenResult none = leading_eigenpair(op, cfg);
  cfg.shift = -1.0;  // auto
  EigenResult autos = leading_eigenpair(op, cfg);
  cfg.shift = 123.0;
  EigenResult odd = leading_eigenpair(op, cfg);
  REQUIRE(none.converged);
  REQUIRE(autos.converged);
  REQUIRE(odd.converged);
  CHECK(none.lambda_max == doctest::Approx(autos.lambda_max).epsilon(1e-8));
  CHECK(odd.lambda_max == doctest::Approx(autos.lambda_max).epsilon(1e-8));
}

TEST_CASE("exhausted budget reports non-convergence instead of throwing") {
  SbmSample s = generate({50, 50, 0.3, 0.3, 0.25}, 2);
  ModularityOperator op(s.graph);
  SolverConfig cfg;
  cfg.max_iter = 1;
  EigenResult r = leading_eigenpair(op, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations >= 1);
  CHECK(r.y.size() == s.graph.n());
}

TEST_CASE("solver config is validated") {
  Graph g = triangle();
  ModularityOperator op(g);
  SolverConfig bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(leading_eigenpair(op, bad), std::invalid_argument);
  bad = {};
  bad.max_iter = 0;
  CHECK_THROWS_AS(leading_eigenpair(op, bad), std::invalid_argument);
}

// =============================================================================
// Dense oracle
// =============================================================================

TEST_CASE("oracle spectra of the closed-form graphs") {
  DenseSpectrum tri = dense_eigen_oracle(dense_modularity(triangle()));
  REQUIRE(tri.values.size() == 3);
  CHECK(tri.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(tri.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(tri.values[2]) <= 1e-12);

  DenseSpectrum pair = dense_eigen_oracle(dense_modularity(two_disjoint_edges()));
  REQUIRE(pair.values.size() == 4);
  CHECK(pair.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(pair.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(pair.values[2]) <= 1e-12);
  CHECK(pair.values[3] == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<Edge> e{{0, 1}, {1, 2}};
  DenseSpectrum path = dense_eigen_oracle(dense_modularity(build_graph(3, e)));
  REQUIRE(path.values.size() == 3);
  CHECK(path.values[0] == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(std::abs(path.values[1]) <= 1e-12);
  CHECK(std::abs(path.values[2]) <= 1e-12);
}

TEST_CASE("oracle rejects asymmetric and oversized input") {
  DenseMatrix m;
  m.rows = m.cols = 2;
  m.data = {0.0, 1.0, 0.5, 0.0};
  CHECK_THROWS_AS(dense_eigen_oracle(m), std::invalid_argument);
  DenseMatrix big;
  big.rows = big.cols = 600;
  big.data.assign(600 * 600, 0.0);
  CHECK_THROWS_AS(dense_eigen_oracle(big), std::invalid_argument);
}

TEST_CASE("matrix-free eigenpair matches the dense oracle on many graphs") {
  int compared_vectors = 0;
  for (std::uint64_t seed = 0; seed < 110; ++seed) {
    SbmSample s = testsup::random_small_sample(seed, 64);
    ModularityOperator op(s.graph);
    EigenResult r = leading_eigenpair(op);
    REQUIRE(r.converged);

    DenseSpectrum spectrum = dense_eigen_oracle(dense_modularity(s.graph));
    testsup::TopOnComplement top =
        testsup::top_on_ones_complement_full(spectrum.values);
    CHECK(std::abs(r.lambda_max - top.value) <= 1e-8);

    if (top.gap > 1e-6) {
      std::vector<double> oracle_vec(s.graph.n());
      for (std::uint32_t i = 0; i < s.graph.n(); ++i)
        oracle_vec[i] = spectrum.vectors(i, top.index);
      CHECK(std::abs(dot(r.y, oracle_vec)) >= 1.0 - 1e-6);
      ++compared_vectors;
    }
  }
  CHECK(compared_vectors >= 50);
}

// =============================================================================
// Leading singular value
// =============================================================================

TEST_CASE("all-ones rectangular matrix has singular value sqrt(rows*cols)") {
  CrossBlockMatrix c = generate_cross_block(10, 20, 1.0, 1);
  SingularResult r = leading_singular_value(c);
  CHECK(r.converged);
  CHECK(r.sigma == doctest::Approx(std::sqrt(200.0)).epsilon(1e-8));
}

TEST_CASE("zero matrix has singular value exactly zero") {
  CrossBlockMatrix c = generate_cross_block(10, 20, 0.0, 1);
  SingularResult r = leading_singular_value(c);
  CHECK(r.converged);
  CHECK(r.sigma == 0.0);
}

TEST_CASE("scaled singular value of a large Bernoulli block sits near p") {
  CrossBlockMatrix c = generate_cross_block(1000, 1000, 0.3, 5);
  SingularResult r = leading_singular_value(c);
  REQUIRE(r.converged);
  double scaled = r.sigma / 1000.0;
  CHECK(scaled >= 0.28);
  CHECK(scaled <= 0.32);
}

TEST_CASE("singular value computation is deterministic") {
  CrossBlockMatrix c = generate_cross_block(50, 80, 0.4, 12);
  SingularResult a = leading_singular_value(c);
  SingularResult b = leading_singular_value(c);
  CHECK(a.sigma == b.sigma);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("singular solver validates its config") {
  CrossBlockMatrix c = generate_cross_block(4, 4, 0.5, 3);
  SolverConfig bad;
  bad.tol = -1.0;
  CHECK_THROWS_AS(leading_singular_value(c, bad), std::invalid_argument);
}
