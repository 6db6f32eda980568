#include "sbmphase/transition.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "sbmphase/rng.hpp"

namespace sbmphase {

double theoretical_threshold(double p1, double p2) {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0))
    throw std::invalid_argument("theoretical_threshold: probabilities must lie in [0,1]");
  return std::sqrt(p1 * p2);
}

double subcritical_lambda_over_n(double p1, double p2, double p, double c) {
  if (!(c > 0.0))
    throw std::invalid_argument("subcritical_lambda_over_n: size ratio must be > 0");
  const double denom = c * p1 + 2.0 * p + p2 / c;
  if (!(denom > 0.0))
    throw std::invalid_argument("subcritical_lambda_over_n: degenerate parameters, denominator <= 0");
  return (p1 * p2 - p * p) / denom;
}

std::pair<double, double> eigvec_entry_limits(std::uint32_t n1, std::uint32_t n2) {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("eigvec_entry_limits: sizes must be >= 1");
  const double n = double(n1) + double(n2);
  return {std::sqrt(double(n2) / (n * double(n1))), std::sqrt(double(n1) / (n * double(n2)))};
}

TheoryPoint make_theory_point(const SbmParams& params) {
  validate(params);
  TheoryPoint t;
  t.p_star = theoretical_threshold(params.p1, params.p2);
  t.lambda_over_n_subcritical =
      subcritical_lambda_over_n(params.p1, params.p2, params.p, double(params.n1) / params.n2);
  const auto [l1, l2] = eigvec_entry_limits(params.n1, params.n2);
  t.y1_entry_limit = l1;
  t.y2_entry_limit = l2;
  return t;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t p_index, int trial) {
  return hash_mix({master_seed, std::uint64_t(p_index), std::uint64_t(trial)});
}

namespace {

struct TrialOutcome {
  bool ok = false;
  double lambda_over_n = 0.0, detect = 0.0;
  double y1_sum = 0.0, y2_sum = 0.0, y1_scaled = 0.0, y2_scaled = 0.0;
};

TrialOutcome run_trial(const SbmParams& params, std::uint64_t seed, const SolverConfig& cfg,
                       Partition::Method method) {
  TrialOutcome out;
  try {
    const SbmSample sample = generate(params, seed);
    const ModularityOperator op(sample.graph);
    EigenResult res = leading_eigenpair(op, cfg);
    if (!res.converged) return out;

    const std::uint32_t n1 = params.n1, n2 = params.n2;
    const double n = double(n1) + double(n2);
    double s1 = 0.0;
    for (std::uint32_t i = 0; i < n1; ++i) s1 += res.y[i];
    if (s1 < 0.0) {
      for (double& v : res.y) v = -v;
      s1 = -s1;
    }
    double s2 = 0.0;
    for (std::size_t i = n1; i < res.y.size(); ++i) s2 += res.y[i];

    const Partition part = method == Partition::Method::sign
                               ? partition_by_sign(res.y)
                               : partition_by_kmeans2(res.y, 1);
    out.detect = detectability(part, sample.truth);
    out.lambda_over_n = res.lambda_max / n;
    out.y1_sum = s1;
    out.y2_sum = s2;
    out.y1_scaled = std::sqrt(n * double(n1) / double(n2)) * (s1 / double(n1));
    out.y2_scaled = std::sqrt(n * double(n2) / double(n1)) * (s2 / double(n2));
    out.ok = true;
  } catch (const std::exception&) {
    out.ok = false;
  }
  return out;
}

Stat aggregate(std::span<const double> xs) {
  Stat st;
  const std::size_t n = xs.size();
  if (n == 0) {
    st.mean = st.stddev = std::numeric_limits<double>::quiet_NaN();
    return st;
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  st.mean = sum / double(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - st.mean) * (x - st.mean);
    st.stddev = std::sqrt(ss / double(n - 1));
  }
  return st;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SbmParams& base, std::span<const double> p_grid,
                                   int trials, std::uint64_t master_seed,
                                   const SolverConfig& cfg, const SweepOptions& opts) {
  if (p_grid.empty()) throw std::invalid_argument("run_sweep: empty p grid");
  if (trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
  for (double p : p_grid) {
    SbmParams params = base;
    params.p = p;
    validate(params);
  }

  const std::size_t total = p_grid.size() * std::size_t(trials);
  int threads = opts.threads > 0 ? opts.threads : int(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = int(std::min<std::size_t>(std::size_t(threads), total));

  std::vector<TrialOutcome> cells(total);
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= total) return;
      const std::size_t pi = t / std::size_t(trials);
      const int tr = int(t % std::size_t(trials));
      SbmParams params = base;
      params.p = p_grid[pi];
      cells[t] = run_trial(params, trial_seed(master_seed, pi, tr), cfg, opts.method);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(threads) - 1);
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }

  // Aggregation runs sequentially in trial order, independent of which
  // worker produced each cell.
  std::vector<SweepRecord> records;
  records.reserve(p_grid.size());
  std::vector<double> lam, det, y1s, y2s, y1e, y2e;
  for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
    lam.clear(); det.clear(); y1s.clear(); y2s.clear(); y1e.clear(); y2e.clear();
    SweepRecord rec;
    rec.p = p_grid[pi];
    rec.trials = trials;
    for (int tr = 0; tr < trials; ++tr) {
      const TrialOutcome& c = cells[pi * std::size_t(trials) + std::size_t(tr)];
      if (!c.ok) continue;
      lam.push_back(c.lambda_over_n);
      det.push_back(c.detect);
      y1s.push_back(c.y1_sum);
      y2s.push_back(c.y2_sum);
      y1e.push_back(c.y1_scaled);
      y2e.push_back(c.y2_scaled);
    }
    rec.trials_ok = int(lam.size());
    rec.excluded = trials - rec.trials_ok;
    rec.valid = rec.trials_ok > 0;
    rec.lambda_over_n = aggregate(lam);
    rec.detect = aggregate(det);
    rec.y1_sum = aggregate(y1s);
    rec.y2_sum = aggregate(y2s);
    rec.y1_entry_scaled = aggregate(y1e);
    rec.y2_entry_scaled = aggregate(y2e);
    try {
      rec.pred_lambda_over_n = std::max(
          0.0, subcritical_lambda_over_n(base.p1, base.p2, rec.p, double(base.n1) / base.n2));
    } catch (const std::invalid_argument&) {
      rec.pred_lambda_over_n = std::numeric_limits<double>::quiet_NaN();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records) {
  os << "p,trials_ok,mean_lambda_over_n,std_lambda_over_n,pred_lambda_over_n,"
        "mean_detectability,std_detectability,mean_y1_sum,mean_y2_sum,"
        "mean_y1_entry_scaled,mean_y2_entry_scaled\n";
  char buf[64];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    os << buf;
  };
  for (const SweepRecord& r : records) {
    num(r.p);
    os << ',' << r.trials_ok << ',';
    num(r.lambda_over_n.mean);
    os << ',';
    num(r.lambda_over_n.stddev);
    os << ',';
    num(r.pred_lambda_over_n);
    os << ',';
    num(r.detect.mean);
    os << ',';
    num(r.detect.stddev);
    os << ',';
    num(r.y1_sum.mean);
    os << ',';
    num(r.y2_sum.mean);
    os << ',';
    num(r.y1_entry_scaled.mean);
    os << ',';
    num(r.y2_entry_scaled.mean);
    os << '\n';
  }
}

}  // namespace sbmphase
