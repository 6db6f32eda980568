#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sbmphase/detect.hpp"
#include "sbmphase/eigensolve.hpp"
#include "sbmphase/sbm.hpp"

namespace sbmphase {

// Critical inter-community probability sqrt(p1*p2).
double theoretical_threshold(double p1, double p2);

// Limit of lambda_max(B)/n below the threshold:
// (p1*p2 - p^2) / (c*p1 + 2p + p2/c) with c = n1/n2. The raw value is
// returned (negative above the threshold); prediction curves clamp at 0.
double subcritical_lambda_over_n(double p1, double p2, double p, double c);

// Asymptotic eigenvector entry magnitudes for the two blocks:
// (sqrt(n2/(n*n1)), sqrt(n1/(n*n2))) with n = n1+n2. Satisfies
// n1*a^2 + n2*b^2 = 1.
std::pair<double, double> eigvec_entry_limits(std::uint32_t n1, std::uint32_t n2);

struct TheoryPoint {
  double p_star = 0.0;
  double lambda_over_n_subcritical = 0.0;
  double y1_entry_limit = 0.0;
  double y2_entry_limit = 0.0;
};

TheoryPoint make_theory_point(const SbmParams& params);

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (N-1); 0 when N = 1
};

struct SweepRecord {
  double p = 0.0;
  int trials = 0;    // requested
  int trials_ok = 0; // converged and aggregated
  int excluded = 0;  // failed or non-converged, left out of the aggregates
  bool valid = false;  // false when every trial failed; stats are NaN then
  Stat lambda_over_n;
  Stat detect;
  Stat y1_sum;           // block-1 eigenvector sum after sign alignment
  Stat y2_sum;
  Stat y1_entry_scaled;  // sqrt(n*n1/n2) * mean block-1 entry
  Stat y2_entry_scaled;  // sqrt(n*n2/n1) * mean block-2 entry
  double pred_lambda_over_n = 0.0;  // theory value clamped at 0 above the threshold
};

struct SweepOptions {
  Partition::Method method = Partition::Method::sign;
  int threads = 0;  // <= 0: hardware concurrency
};

// Seed for one Monte-Carlo cell, recomputable in isolation.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t p_index, int trial);

// For each p and trial: generate a sample with trial_seed(master_seed,
// p_index, trial), solve the leading eigenpair, flip the eigenvector so the
// block-1 sum is nonnegative, partition, score against the ground truth,
// and aggregate mean/std per grid point. Output is identical for identical
// inputs regardless of the worker count. base.p is ignored; the grid
// supplies p.
std::vector<SweepRecord> run_sweep(const SbmParams& base, std::span<const double> p_grid,
                                   int trials, std::uint64_t master_seed,
                                   const SolverConfig& cfg, const SweepOptions& opts = {});

// Fixed CSV schema, '.' decimal, 10 significant digits, '\n' endings.
void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records);

}  // namespace sbmphase
