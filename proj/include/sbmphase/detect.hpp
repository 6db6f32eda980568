#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sbmphase {

struct Partition {
  enum class Method : std::uint8_t { sign, kmeans2 };
  std::vector<std::uint8_t> labels;  // values in {1, 2}
  Method method = Method::sign;
};

// label 1 where y[i] > 0, label 2 where y[i] < 0; entries with
// |y[i]| <= 1e-12 count as zero and take label 1 (fixed tie-break).
// An all-zero vector is rejected.
Partition partition_by_sign(std::span<const double> y);

// Exact 1-D two-means via the sorted-split scan: every split of the sorted
// entries is scored by within-cluster sum of squares and the leftmost
// minimum wins (fixed tie-break). The cluster holding the larger values
// takes label 1. The restarts argument is accepted for interface
// compatibility; the scan is exact, so one pass already yields the optimum.
Partition partition_by_kmeans2(std::span<const double> y, int restarts = 1);

// Fraction of nodes assigned to the correct community, maximized over the
// two label identifications; always in [0.5, 1]. Both label vectors must
// take values in {1, 2}.
double detectability(const Partition& pred, std::span<const std::uint8_t> truth);

}  // namespace sbmphase
