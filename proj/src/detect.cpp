#include "sbmphase/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sbmphase {

Partition partition_by_sign(std::span<const double> y) {
  bool any_nonzero = false;
  for (double v : y)
    if (std::abs(v) > 1e-12) {
      any_nonzero = true;
      break;
    }
  if (!any_nonzero) throw std::invalid_argument("partition_by_sign: all-zero vector");

  Partition part;
  part.method = Partition::Method::sign;
  part.labels.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) part.labels[i] = (y[i] < -1e-12) ? 2 : 1;
  return part;
}

Partition partition_by_kmeans2(std::span<const double> y, int restarts) {
  if (restarts < 1) throw std::invalid_argument("partition_by_kmeans2: restarts must be >= 1");
  const std::size_t n = y.size();
  if (n < 2) throw std::invalid_argument("partition_by_kmeans2: need at least 2 entries");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  if (y[order.front()] == y[order.back()])
    throw std::invalid_argument("partition_by_kmeans2: all entries identical");

  std::vector<double> sum(n + 1, 0.0), sq(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[i + 1] = sum[i] + y[order[i]];
    sq[i + 1] = sq[i] + y[order[i]] * y[order[i]];
  }
  std::size_t best_k = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < n; ++k) {
    const double left = sq[k] - sum[k] * sum[k] / double(k);
    const double rs = sum[n] - sum[k];
    const double right = (sq[n] - sq[k]) - rs * rs / double(n - k);
    const double wcss = left + right;
    if (wcss < best) {
      best = wcss;
      best_k = k;
    }
  }

  Partition part;
  part.method = Partition::Method::kmeans2;
  part.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) part.labels[order[i]] = (i < best_k) ? 2 : 1;
  return part;
}

double detectability(const Partition& pred, std::span<const std::uint8_t> truth) {
  const std::size_t n = truth.size();
  if (pred.labels.size() != n) throw std::invalid_argument("detectability: length mismatch");
  if (n == 0) throw std::invalid_argument("detectability: empty labels");
  for (std::uint8_t l : pred.labels)
    if (l != 1 && l != 2) throw std::invalid_argument("detectability: labels must be 1 or 2");
  for (std::uint8_t l : truth)
    if (l != 1 && l != 2) throw std::invalid_argument("detectability: truth must be 1 or 2");

  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (pred.labels[i] == truth[i]) ++agree;
  // The swapped identification matches exactly the remaining nodes.
  return double(std::max(agree, n - agree)) / double(n);
}

}  // namespace sbmphase
