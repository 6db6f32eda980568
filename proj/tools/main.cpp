// Command-line front end: parameter sweeps, single-shot detection on real
// edge lists, partition-based estimation, and singular-value concentration
// checks. Outputs are CSV/JSON; plotting belongs to external tools.
//
// Exit codes: 0 success, 1 usage, 2 data/parse, 3 numerical non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sbmphase/detect.hpp"
#include "sbmphase/eigensolve.hpp"
#include "sbmphase/estimator.hpp"
#include "sbmphase/ingest.hpp"
#include "sbmphase/modularity.hpp"
#include "sbmphase/rng.hpp"
#include "sbmphase/sbm.hpp"
#include "sbmphase/transition.hpp"

namespace {

using nlohmann::json;
using namespace sbmphase;

constexpr char kVersion[] = "1.0.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --threads beats SBM_PHASE_THREADS beats hardware concurrency.
int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SBM_PHASE_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v < 1) throw std::invalid_argument("nonpositive");
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("SBM_PHASE_THREADS is not a positive integer: '") + env + "'");
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ParseError(out_path + ": cannot open for writing");
  f << content;
}

Partition::Method parse_method(const std::string& name) {
  if (name == "sign") return Partition::Method::sign;
  if (name == "kmeans") return Partition::Method::kmeans2;
  throw UsageError("unknown --method '" + name + "' (expected sign or kmeans)");
}

json stat_json(const Stat& s) { return json{{"mean", s.mean}, {"std", s.stddev}}; }

json record_json(const SweepRecord& r) {
  return json{{"p", r.p},
              {"trials", r.trials},
              {"trials_ok", r.trials_ok},
              {"excluded", r.excluded},
              {"valid", r.valid},
              {"lambda_over_n", stat_json(r.lambda_over_n)},
              {"detectability", stat_json(r.detect)},
              {"y1_sum", stat_json(r.y1_sum)},
              {"y2_sum", stat_json(r.y2_sum)},
              {"y1_entry_scaled", stat_json(r.y1_entry_scaled)},
              {"y2_entry_scaled", stat_json(r.y2_entry_scaled)},
              {"pred_lambda_over_n", r.pred_lambda_over_n}};
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepArgs {
  std::uint32_t n1 = 500, n2 = 500;
  double p1 = 0.25, p2 = 0.25;
  double p_min = 0.05, p_max = 0.45, p_step = 0.05;
  int trials = 20;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int max_iter = 20000;
  std::string method = "sign";
  int threads = 0;
  std::string out, manifest, preset;
};

struct SweepPreset {
  std::uint32_t n1, n2;
  double p1, p2;
  int trials;
};

// Figure parameter sets at publication scale and at desk scale.
const std::map<std::string, SweepPreset> kPresets = {
    {"fig1-desk", {500, 500, 0.25, 0.25, 20}},
    {"fig2-desk", {500, 1000, 0.5, 0.25, 20}},
    {"fig1-paper", {2000, 2000, 0.25, 0.25, 100}},
    {"fig2-paper", {1000, 2000, 0.5, 0.25, 100}},
};

int cmd_sweep(const SweepArgs& args, const CLI::App& cmd) {
  SweepArgs a = args;
  if (!a.preset.empty()) {
    const auto it = kPresets.find(a.preset);
    if (it == kPresets.end()) throw UsageError("unknown --preset '" + a.preset + "'");
    const SweepPreset& pre = it->second;
    // Presets supply defaults; explicit flags win.
    if (cmd.count("--n1") == 0) a.n1 = pre.n1;
    if (cmd.count("--n2") == 0) a.n2 = pre.n2;
    if (cmd.count("--p1") == 0) a.p1 = pre.p1;
    if (cmd.count("--p2") == 0) a.p2 = pre.p2;
    if (cmd.count("--trials") == 0) a.trials = pre.trials;
  }
  if (!(a.p_step > 0.0)) throw UsageError("--p-step must be > 0");
  if (a.p_min > a.p_max) throw UsageError("--p-min must not exceed --p-max");
  if (a.trials < 1) throw UsageError("--trials must be >= 1");

  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double p = a.p_min + double(k) * a.p_step;
    if (p > a.p_max + 1e-9 * a.p_step) break;
    grid.push_back(p);
  }

  const SbmParams base{a.n1, a.n2, a.p1, a.p2, 0.0};
  SolverConfig cfg;
  cfg.tol = a.tol;
  cfg.max_iter = a.max_iter;
  SweepOptions opts;
  opts.method = parse_method(a.method);
  opts.threads = resolve_threads(a.threads);

  const auto records = run_sweep(base, grid, a.trials, a.seed, cfg, opts);

  std::ostringstream csv;
  write_sweep_csv(csv, records);
  write_output(a.out, csv.str());

  if (!a.manifest.empty()) {
    json m;
    m["command"] = "sweep";
    m["tool_version"] = kVersion;
    // Thread count is deliberately absent: results do not depend on it.
    m["params"] = json{{"n1", a.n1},        {"n2", a.n2},
                       {"p1", a.p1},        {"p2", a.p2},
                       {"p_min", a.p_min},  {"p_max", a.p_max},
                       {"p_step", a.p_step},{"trials", a.trials},
                       {"master_seed", a.seed}, {"tol", a.tol},
                       {"max_iter", a.max_iter}, {"method", a.method},
                       {"preset", a.preset}};
    m["p_star"] = theoretical_threshold(a.p1, a.p2);
    json recs = json::array();
    for (const auto& r : records) recs.push_back(record_json(r));
    m["records"] = recs;
    write_output(a.manifest, m.dump(2) + "\n");
  }

  bool any_ok = false;
  for (const auto& r : records) any_ok |= r.valid;
  if (!any_ok) throw NotConverged("sweep: every trial failed to converge");
  return 0;
}

// ---------------------------------------------------------------------------
// detect / estimate helpers
// ---------------------------------------------------------------------------

struct DetectionOutcome {
  LabeledGraph lg;
  EigenResult eig;
  Partition part;
};

DetectionOutcome detect_on_file(const std::string& edges_path, const std::string& labels_path,
                                bool keep_isolated, const std::string& method, double tol,
                                int max_iter, std::uint64_t seed) {
  LabeledGraph lg = read_edge_list(edges_path);
  if (!labels_path.empty()) {
    lg.labels = read_labels(labels_path, lg.id_map);
    lg.has_labels = true;
  }
  lg = preprocess(lg, !keep_isolated);

  const ModularityOperator op(lg.graph);
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  cfg.seed = seed;
  EigenResult eig = leading_eigenpair(op, cfg);
  if (!eig.converged)
    throw NotConverged("eigensolver did not converge within " + std::to_string(max_iter) +
                       " iterations (residual " + std::to_string(eig.residual) + ")");
  Partition part = parse_method(method) == Partition::Method::sign
                       ? partition_by_sign(eig.y)
                       : partition_by_kmeans2(eig.y, 1);
  return {std::move(lg), std::move(eig), std::move(part)};
}

int cmd_detect(const std::string& edges_path, const std::string& labels_path, bool keep_isolated,
               const std::string& method, double tol, int max_iter, std::uint64_t seed,
               const std::string& out) {
  DetectionOutcome d =
      detect_on_file(edges_path, labels_path, keep_isolated, method, tol, max_iter, seed);

  std::uint64_t size1 = 0;
  for (std::uint8_t l : d.part.labels) size1 += (l == 1);
  json rep;
  rep["tool_version"] = kVersion;
  rep["n"] = d.lg.graph.n();
  rep["edges"] = d.lg.graph.edge_count();
  rep["lambda_max"] = d.eig.lambda_max;
  rep["iterations"] = d.eig.iterations;
  rep["residual"] = d.eig.residual;
  rep["method"] = method;
  rep["community_sizes"] = json::array({size1, d.part.labels.size() - size1});
  if (d.lg.has_labels) rep["detectability"] = detectability(d.part, d.lg.labels);
  write_output(out, rep.dump(2) + "\n");
  return 0;
}

int cmd_estimate(const std::string& edges_path, const std::string& labels_path,
                 bool from_detection, bool keep_isolated, const std::string& method, double tol,
                 int max_iter, std::uint64_t seed, const std::string& out) {
  if (labels_path.empty() == !from_detection)
    throw UsageError("estimate needs exactly one partition source: --labels or --from-detection");

  LabeledGraph lg;
  Partition part;
  std::string source;
  if (from_detection) {
    DetectionOutcome d = detect_on_file(edges_path, "", keep_isolated, method, tol, max_iter, seed);
    lg = std::move(d.lg);
    part = std::move(d.part);
    source = "detection";
  } else {
    lg = read_edge_list(edges_path);
    lg.labels = read_labels(labels_path, lg.id_map);
    lg.has_labels = true;
    lg = preprocess(lg, !keep_isolated);
    part.labels = lg.labels;
    part.method = Partition::Method::sign;
    source = "labels";
  }

  const EmpiricalEstimates e = estimate(lg.graph, part);
  json rep;
  rep["tool_version"] = kVersion;
  rep["partition_source"] = source;
  rep["n1_hat"] = e.n1_hat;
  rep["n2_hat"] = e.n2_hat;
  rep["m1_hat"] = e.m1_hat;
  rep["m2_hat"] = e.m2_hat;
  rep["x_hat"] = e.x_hat;
  rep["p_hat"] = e.p_hat;
  rep["p1_hat"] = e.p1_hat;
  rep["p2_hat"] = e.p2_hat;
  rep["p_star_hat"] = e.p_star_hat;
  rep["reliable"] = e.reliable;
  write_output(out, rep.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// validate-concentration
// ---------------------------------------------------------------------------

int cmd_validate_concentration(std::uint32_t n1, std::uint32_t n2, double p, int trials,
                               std::uint64_t seed, double tol, int max_iter,
                               const std::string& out) {
  if (trials < 1) throw UsageError("--trials must be >= 1");
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;

  const double scale = std::sqrt(double(n1) * double(n2));
  std::vector<double> per_trial;
  double sum = 0.0, max_dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CrossBlockMatrix C = generate_cross_block(n1, n2, p, hash_mix({seed, std::uint64_t(t)}));
    const SingularResult r = leading_singular_value(C, cfg);
    if (!r.converged)
      throw NotConverged("singular-value iteration did not converge at trial " + std::to_string(t));
    const double scaled = r.sigma / scale;
    per_trial.push_back(scaled);
    sum += scaled;
    max_dev = std::max(max_dev, std::abs(scaled - p));
  }

  json rep;
  rep["tool_version"] = kVersion;
  rep["n1"] = n1;
  rep["n2"] = n2;
  rep["p"] = p;
  rep["trials"] = trials;
  rep["master_seed"] = seed;
  rep["sigma_scaled"] = per_trial;
  rep["mean"] = sum / double(trials);
  rep["max_abs_deviation"] = max_dev;
  write_output(out, rep.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral modularity community detection on two-community block models"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // sweep
  SweepArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over the cross probability p");
  sweep->add_option("--n1", sa.n1, "community 1 size")->check(CLI::PositiveNumber);
  sweep->add_option("--n2", sa.n2, "community 2 size")->check(CLI::PositiveNumber);
  sweep->add_option("--p1", sa.p1, "within-community-1 probability")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--p2", sa.p2, "within-community-2 probability")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--p-min", sa.p_min, "grid start")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--p-max", sa.p_max, "grid end (inclusive)")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--p-step", sa.p_step, "grid step");
  sweep->add_option("--trials", sa.trials, "Monte-Carlo trials per grid point");
  sweep->add_option("--seed", sa.seed, "master seed");
  sweep->add_option("--tol", sa.tol, "solver residual tolerance");
  sweep->add_option("--max-iter", sa.max_iter, "solver iteration budget");
  sweep->add_option("--method", sa.method, "partition method: sign or kmeans");
  sweep->add_option("--threads", sa.threads, "worker count (0: auto)");
  sweep->add_option("--preset", sa.preset,
                    "parameter preset: fig1-desk, fig2-desk, fig1-paper, fig2-paper");
  sweep->add_option("--out", sa.out, "CSV output path (stdout if absent)");
  sweep->add_option("--manifest", sa.manifest, "JSON manifest output path");

  // detect
  std::string d_edges, d_labels, d_method = "sign", d_out;
  bool d_keep_isolated = false;
  double d_tol = 1e-8;
  int d_max_iter = 20000;
  std::uint64_t d_seed = 1;
  CLI::App* detect = app.add_subcommand("detect", "Detect two communities in an edge-list file");
  detect->add_option("--edges", d_edges, "edge-list file")->required();
  detect->add_option("--labels", d_labels, "ground-truth label file (enables detectability)");
  detect->add_option("--method", d_method, "partition method: sign or kmeans");
  detect->add_flag("--keep-isolated", d_keep_isolated, "keep degree-0 nodes");
  detect->add_option("--tol", d_tol, "solver residual tolerance");
  detect->add_option("--max-iter", d_max_iter, "solver iteration budget");
  detect->add_option("--seed", d_seed, "solver start-vector seed");
  detect->add_option("--out", d_out, "JSON output path (stdout if absent)");

  // estimate
  std::string e_edges, e_labels, e_method = "sign", e_out;
  bool e_from_detection = false, e_keep_isolated = false;
  double e_tol = 1e-8;
  int e_max_iter = 20000;
  std::uint64_t e_seed = 1;
  CLI::App* est = app.add_subcommand("estimate", "Empirical probability and threshold estimates");
  est->add_option("--edges", e_edges, "edge-list file")->required();
  est->add_option("--labels", e_labels, "partition label file");
  est->add_flag("--from-detection", e_from_detection, "partition by detection instead of labels");
  est->add_option("--method", e_method, "partition method for --from-detection");
  est->add_flag("--keep-isolated", e_keep_isolated, "keep degree-0 nodes");
  est->add_option("--tol", e_tol, "solver residual tolerance");
  est->add_option("--max-iter", e_max_iter, "solver iteration budget");
  est->add_option("--seed", e_seed, "solver start-vector seed");
  est->add_option("--out", e_out, "JSON output path (stdout if absent)");

  // validate-concentration
  std::uint32_t v_n1 = 1000, v_n2 = 1000;
  double v_p = 0.3, v_tol = 1e-8;
  int v_trials = 10, v_max_iter = 20000;
  std::uint64_t v_seed = 1;
  std::string v_out;
  CLI::App* vc = app.add_subcommand("validate-concentration",
                                    "Scaled leading singular value of random 0/1 matrices vs p");
  vc->add_option("--n1", v_n1, "row count")->check(CLI::PositiveNumber);
  vc->add_option("--n2", v_n2, "column count")->check(CLI::PositiveNumber);
  vc->add_option("--p", v_p, "Bernoulli probability")->check(CLI::Range(0.0, 1.0));
  vc->add_option("--trials", v_trials, "trial count");
  vc->add_option("--seed", v_seed, "master seed");
  vc->add_option("--tol", v_tol, "solver residual tolerance");
  vc->add_option("--max-iter", v_max_iter, "solver iteration budget");
  vc->add_option("--out", v_out, "JSON output path (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(sa, *sweep);
    if (detect->parsed())
      return cmd_detect(d_edges, d_labels, d_keep_isolated, d_method, d_tol, d_max_iter, d_seed,
                        d_out);
    if (est->parsed())
      return cmd_estimate(e_edges, e_labels, e_from_detection, e_keep_isolated, e_method, e_tol,
                          e_max_iter, e_seed, e_out);
    if (vc->parsed())
      return cmd_validate_concentration(v_n1, v_n2, v_p, v_trials, v_seed, v_tol, v_max_iter,
                                        v_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
