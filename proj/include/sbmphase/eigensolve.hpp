#pragma once

#include <cstdint>
#include <vector>

#include "sbmphase/dense.hpp"
#include "sbmphase/modularity.hpp"
#include "sbmphase/sbm.hpp"

namespace sbmphase {

struct SolverConfig {
  double tol = 1e-8;       // residual tolerance, relative to max(1, |lambda|)
  int max_iter = 20000;    // budget in operator applications
  double shift = -1.0;     // internal spectral shift; negative means auto (2n)
  std::uint64_t seed = 1;  // start-vector seed
};

struct EigenResult {
  double lambda_max = 0.0;
  std::vector<double> y;     // unit vector, orthogonal to ones
  int iterations = 0;        // operator applications spent
  double residual = 0.0;     // ||By - lambda*y||_2 at the returned iterate
  bool converged = false;
};

// Largest eigenpair of B restricted to the complement of the ones vector.
// Lanczos with full reorthogonalization; the ones direction is deflated at
// every step, and the run restarts from the best Ritz vector until converged
// or out of budget. The internal shift only translates the tridiagonal
// matrix, so the reported eigenvalue is the eigenvalue of B itself whatever
// the shift setting. Non-convergence is reported in the result (best iterate
// and its residual), not thrown; callers decide.
// Sign convention: the first coordinate with |y[i]| > 1e-12 is made positive.
EigenResult leading_eigenpair(const ModularityOperator& op, const SolverConfig& cfg = {});

struct SingularResult {
  double sigma = 0.0;
  int iterations = 0;
  double residual = 0.0;  // ||CᵀCv - sigma^2 v||_2 at the returned iterate
  bool converged = false;
};

// Leading singular value of C by power iteration on x -> Cᵀ(Cx).
// An all-zero matrix returns 0 exactly.
SingularResult leading_singular_value(const CrossBlockMatrix& C, const SolverConfig& cfg = {});

struct DenseSpectrum {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column k pairs with values[k]
};

// Full dense symmetric eigendecomposition. Oracle for tests; n <= 512 and
// the input must be symmetric.
DenseSpectrum dense_eigen_oracle(const DenseMatrix& M);

}  // namespace sbmphase
