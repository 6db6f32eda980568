#include "sbmphase/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace sbmphase {

EmpiricalEstimates estimate(const Graph& g, const Partition& pred) {
  if (pred.labels.size() != g.n())
    throw std::invalid_argument("estimate: partition length mismatch");
  std::uint32_t n1 = 0;
  for (std::uint8_t l : pred.labels) {
    if (l != 1 && l != 2) throw std::invalid_argument("estimate: labels must be 1 or 2");
    if (l == 1) ++n1;
  }
  const std::uint32_t n2 = g.n() - n1;
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("estimate: a community is empty");

  const CutCounts c = cut_counts(g, pred.labels);  // label 1 is the smaller value -> block 1
  EmpiricalEstimates e;
  e.n1_hat = n1;
  e.n2_hat = n2;
  e.m1_hat = c.within1;
  e.m2_hat = c.within2;
  e.x_hat = c.cross;
  e.p_hat = double(e.x_hat) / (double(n1) * double(n2));
  e.p1_hat = double(e.m1_hat) / (double(n1) * double(n1));
  e.p2_hat = double(e.m2_hat) / (double(n2) * double(n2));
  e.p_star_hat = std::sqrt(e.p1_hat * e.p2_hat);
  e.reliable = e.p_hat < e.p_star_hat;
  return e;
}

}  // namespace sbmphase
