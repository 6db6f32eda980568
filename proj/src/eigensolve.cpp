#include "sbmphase/eigensolve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbmphase/rng.hpp"

namespace sbmphase {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scal(double a, std::span<double> x) {
  for (double& v : x) v *= a;
}

// Removing the mean is exactly the projection off the ones direction.
void project_off_ones(std::span<double> v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= double(v.size());
  for (double& x : v) x -= mean;
}

void check_config(const SolverConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("solver: tol must be > 0");
  if (cfg.max_iter < 1) throw std::invalid_argument("solver: max_iter must be >= 1");
}

// Largest eigenvalue of the symmetric tridiagonal (diag a, offdiag b) by
// Sturm-count bisection.
double tridiag_top_eigenvalue(const std::vector<double>& a, const std::vector<double>& b) {
  const int m = int(a.size());
  if (m == 1) return a[0];
  double lo = a[0], hi = a[0];
  double bmax = 0.0;
  for (int i = 0; i < m; ++i) {
    const double r = (i > 0 ? std::abs(b[i - 1]) : 0.0) + (i + 1 < m ? std::abs(b[i]) : 0.0);
    lo = std::min(lo, a[i] - r);
    hi = std::max(hi, a[i] + r);
    if (i + 1 < m) bmax = std::max(bmax, std::abs(b[i]));
  }
  const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
  const double pivmin = std::max(1e-300, 1e-30 * bmax * bmax);
  // count of eigenvalues < x via the LDLᵀ Sturm recurrence
  const auto count_below = [&](double x) {
    int cnt = 0;
    double d = a[0] - x;
    if (d < 0) ++cnt;
    for (int i = 1; i < m; ++i) {
      if (std::abs(d) < pivmin) d = (d < 0 ? -pivmin : pivmin);
      d = (a[i] - x) - b[i - 1] * b[i - 1] / d;
      if (d < 0) ++cnt;
    }
    return cnt;
  };
  for (int it = 0; it < 120 && hi - lo > 1e-15 * scale; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= m)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Solve (T - theta*I) z = r with partial pivoting (the dgttrf/dgtts2 scheme,
// fused into one pass over a working copy).
std::vector<double> solve_shifted_tridiag(const std::vector<double>& a,
                                          const std::vector<double>& b, double theta,
                                          std::vector<double> r) {
  const int m = int(a.size());
  std::vector<double> dl(m > 1 ? b : std::vector<double>{});
  std::vector<double> d(m), du(m > 1 ? b : std::vector<double>{});
  std::vector<double> du2(m > 2 ? m - 2 : 0, 0.0);
  std::vector<char> swapped(m > 1 ? m - 1 : 0, 0);
  for (int i = 0; i < m; ++i) d[i] = a[i] - theta;

  const double tiny = 1e-300;
  for (int i = 0; i + 1 < m; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < m) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[m - 1] == 0.0) d[m - 1] = tiny;

  for (int i = 0; i + 1 < m; ++i) {
    if (!swapped[i]) {
      r[i + 1] -= dl[i] * r[i];
    } else {
      const double temp = r[i];
      r[i] = r[i + 1];
      r[i + 1] = temp - dl[i] * r[i + 1];
    }
  }
  r[m - 1] /= d[m - 1];
  if (m > 1) r[m - 2] = (r[m - 2] - du[m - 2] * r[m - 1]) / d[m - 2];
  for (int i = m - 3; i >= 0; --i)
    r[i] = (r[i] - du[i] * r[i + 1] - du2[i] * r[i + 2]) / d[i];
  return r;
}

// Eigenvector of the tridiagonal for eigenvalue theta, by inverse iteration.
std::vector<double> tridiag_eigenvector(const std::vector<double>& a,
                                        const std::vector<double>& b, double theta) {
  const int m = int(a.size());
  if (m == 1) return {1.0};
  std::vector<double> u(m);
  SplitMix64 rng(0x1bd11bdaa9fc1a22ULL);
  for (double& x : u) x = rng.next_unit() - 0.5;
  double nrm = norm2(u);
  scal(1.0 / nrm, u);
  for (int pass = 0; pass < 3; ++pass) {
    u = solve_shifted_tridiag(a, b, theta, std::move(u));
    nrm = norm2(u);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
      // singular to working precision: the previous iterate was already an
      // eigenvector direction; re-seed and continue
      for (double& x : u) x = rng.next_unit() - 0.5;
      nrm = norm2(u);
    }
    scal(1.0 / nrm, u);
  }
  return u;
}

void fix_sign(std::span<double> y) {
  for (double v : y) {
    if (std::abs(v) > 1e-12) {
      if (v < 0)
        for (double& x : y) x = -x;
      return;
    }
  }
}

}  // namespace

EigenResult leading_eigenpair(const ModularityOperator& op, const SolverConfig& cfg) {
  check_config(cfg);
  const std::uint32_t n = op.n();
  // ModularityOperator construction requires m2 > 0, so n >= 2 here.
  const double s = cfg.shift < 0.0 ? 2.0 * double(n) : cfg.shift;

  std::vector<double> v(n);
  for (std::uint64_t attempt = 0;; ++attempt) {
    SplitMix64 rng(hash_mix({cfg.seed, attempt}));
    for (double& x : v) x = 2.0 * rng.next_unit() - 1.0;
    project_off_ones(v);
    const double nrm = norm2(v);
    if (nrm > 1e-12) {
      scal(1.0 / nrm, v);
      break;
    }
  }

  const int cycle_cap = int(std::min<std::uint32_t>(250, n - 1));
  std::vector<double> Q(std::size_t(cycle_cap + 1) * n);
  const auto q = [&](int k) { return std::span<double>(Q.data() + std::size_t(k) * n, n); };

  std::vector<double> alpha, beta, w(n), y(n), by(n);
  alpha.reserve(cycle_cap);
  beta.reserve(cycle_cap);

  EigenResult out;
  int iters = 0;
  double prev_lambda = std::numeric_limits<double>::quiet_NaN();
  double theta = 0.0;
  std::vector<double> ritz;

  const auto assemble = [&](std::span<double> dst) {
    // dst = Q * ritz over the first ritz.size() basis vectors
    std::fill(dst.begin(), dst.end(), 0.0);
    for (std::size_t k = 0; k < ritz.size(); ++k) axpy(ritz[k], q(int(k)), dst);
    project_off_ones(dst);
    const double nrm = norm2(dst);
    if (nrm > 0.0) scal(1.0 / nrm, dst);
  };

  const auto finish = [&](bool converged) {
    out.lambda_max = theta - s;
    out.y.assign(y.begin(), y.end());
    fix_sign(out.y);
    out.iterations = iters;
    out.converged = converged;
    return out;
  };

  // Residual bound below which a full-vector verification is worth its apply.
  double verify_gate = std::numeric_limits<double>::infinity();

  while (iters < cfg.max_iter) {
    std::copy(v.begin(), v.end(), q(0).begin());
    alpha.clear();
    beta.clear();
    bool restarted = false;

    for (int j = 0; j < cycle_cap && iters < cfg.max_iter; ++j) {
      op.apply(q(j), w);
      ++iters;
      if (s != 0.0) axpy(s, q(j), w);
      if (j > 0) axpy(-beta[j - 1], q(j - 1), w);
      const double a_j = dot(q(j), w);
      axpy(-a_j, q(j), w);
      // Two passes of reorthogonalization against the ones direction and the
      // whole basis keep the deflation airtight.
      for (int pass = 0; pass < 2; ++pass) {
        project_off_ones(w);
        for (int k = 0; k <= j; ++k) axpy(-dot(q(k), w), q(k), w);
      }
      alpha.push_back(a_j);
      const double b_j = norm2(w);

      theta = tridiag_top_eigenvalue(alpha, beta);
      ritz = tridiag_eigenvector(alpha, beta, theta);
      const double lambda = theta - s;
      const double gate = cfg.tol * std::max(1.0, std::abs(lambda));
      const double resid_bound = b_j * std::abs(ritz.back());
      const bool settled = !std::isnan(prev_lambda) && std::abs(lambda - prev_lambda) <= gate;
      prev_lambda = lambda;

      double tscale = std::abs(a_j);
      for (double x : alpha) tscale = std::max(tscale, std::abs(x));
      const bool breakdown = b_j <= 1e-14 * std::max(1.0, tscale);

      if (breakdown || (settled && resid_bound <= gate && resid_bound <= verify_gate)) {
        assemble(y);
        op.apply(y, by);
        ++iters;
        const double lam = theta - s;
        axpy(-lam, y, by);
        const double resid = norm2(by);
        out.residual = resid;
        if (resid <= cfg.tol * std::max(1.0, std::abs(lam))) return finish(true);
        // Verification failed: demand a clearly better bound before retrying.
        verify_gate = 0.25 * resid_bound;
      }
      if (breakdown) {
        // Exhausted an invariant subspace that still fails verification
        // (pathological); restart from a perturbed vector.
        SplitMix64 rng(hash_mix({cfg.seed, std::uint64_t(iters)}));
        for (std::size_t i = 0; i < n; ++i) y[i] += 1e-8 * (rng.next_unit() - 0.5);
        project_off_ones(y);
        const double nrm = norm2(y);
        if (nrm > 0.0) scal(1.0 / nrm, y);
        std::copy(y.begin(), y.end(), v.begin());
        restarted = true;
        break;
      }

      if (j + 1 < cycle_cap) {
        std::copy(w.begin(), w.end(), q(j + 1).begin());
        scal(1.0 / b_j, q(j + 1));
        beta.push_back(b_j);
      }
    }

    if (!restarted) {
      // Cycle budget spent: restart from the current best Ritz vector.
      assemble(y);
      std::copy(y.begin(), y.end(), v.begin());
    }
  }

  assemble(y);
  op.apply(y, by);
  const double lam = theta - s;
  axpy(-lam, y, by);
  out.residual = norm2(by);
  return finish(false);
}

SingularResult leading_singular_value(const CrossBlockMatrix& C, const SolverConfig& cfg) {
  check_config(cfg);
  if (C.rows < 1 || C.cols < 1)
    throw std::invalid_argument("leading_singular_value: empty matrix shape");

  SingularResult out;
  if (C.nnz() == 0) {
    out.converged = true;
    return out;
  }

  std::vector<double> v(C.cols), u(C.rows), w(C.cols);
  SplitMix64 rng(hash_mix({cfg.seed, C.nnz()}));
  for (double& x : v) x = rng.next_unit() + 0.5;  // positive start biases onto the Perron direction
  scal(1.0 / norm2(v), v);

  double sigma_prev = std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < cfg.max_iter; ++it) {
    std::fill(u.begin(), u.end(), 0.0);
    for (std::uint32_t i = 0; i < C.rows; ++i) {
      double acc = 0.0;
      for (std::uint64_t k = C.row_offsets[i]; k < C.row_offsets[i + 1]; ++k)
        acc += v[C.col_index[k]];
      u[i] = acc;
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (std::uint32_t i = 0; i < C.rows; ++i)
      for (std::uint64_t k = C.row_offsets[i]; k < C.row_offsets[i + 1]; ++k)
        w[C.col_index[k]] += u[i];

    const double thetav = dot(v, w);  // = ||Cv||^2 >= 0
    const double sigma = std::sqrt(std::max(0.0, thetav));
    double resid = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double r = w[i] - thetav * v[i];
      resid += r * r;
    }
    resid = std::sqrt(resid);
    out.sigma = sigma;
    out.residual = resid;
    out.iterations = it + 1;

    const bool settled = !std::isnan(sigma_prev) &&
                         std::abs(sigma - sigma_prev) <= cfg.tol * std::max(1.0, sigma);
    if (settled && resid <= cfg.tol * std::max(1.0, thetav)) {
      out.converged = true;
      return out;
    }
    sigma_prev = sigma;

    const double wn = norm2(w);
    if (wn == 0.0) {
      // landed in the null space; restart
      for (double& x : v) x = rng.next_unit() + 0.5;
      scal(1.0 / norm2(v), v);
      sigma_prev = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i] / wn;
  }
  return out;
}

DenseSpectrum dense_eigen_oracle(const DenseMatrix& M) {
  if (M.rows != M.cols || M.rows == 0)
    throw std::invalid_argument("dense_eigen_oracle: matrix must be square and nonempty");
  if (M.rows > 512) throw std::invalid_argument("dense_eigen_oracle: size exceeds the oracle cap");
  double scale = 0.0;
  for (double v : M.data) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = i + 1; j < M.cols; ++j)
      if (std::abs(M(i, j) - M(j, i)) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("dense_eigen_oracle: matrix is not symmetric");

  Eigen::MatrixXd A(M.rows, M.cols);
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = 0; j < M.cols; ++j) A(long(i), long(j)) = M(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense_eigen_oracle: eigendecomposition failed");

  DenseSpectrum out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + M.rows);
  out.vectors = DenseMatrix(M.rows, M.rows);
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = 0; j < M.rows; ++j) out.vectors(i, j) = es.eigenvectors()(long(i), long(j));
  return out;
}

}  // namespace sbmphase
