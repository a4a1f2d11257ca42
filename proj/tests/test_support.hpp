#pragma once

#include <cmath>
#include <vector>

#include "mcct/constructions.hpp"
#include "mcct/mgf_bounds.hpp"

namespace mcct::testing {

inline ChainModel make_chain(std::vector<std::vector<double>> rows) {
  Matrix m(rows.size(), rows.front().size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return ChainModel::create(std::move(m));
}

inline Matrix make_matrix(std::vector<std::vector<double>> rows) {
  Matrix m(rows.size(), rows.front().size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline ChainModel deterministic_cycle3() {
  return make_chain({{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}});
}

// Smallest t with (1/2) |1 - 2p|^t <= eps; the eigenvalue closed form for the
// two-state flip chain.
inline long two_state_mixing_time(double p, double eps) {
  const double q = std::abs(1.0 - 2.0 * p);
  if (q == 0.0) return 1;
  return static_cast<long>(std::ceil(std::log(1.0 / (2.0 * eps)) / std::log(1.0 / q)));
}

// Brute-force tail probability Pr[X >= threshold] (upper) or <= (lower) by
// enumerating every walk; the independent oracle for the bound checks.
inline double brute_force_tail(const ChainModel& chain, const ProbabilityVector& phi,
                               const WeightSchedule& schedule, double threshold,
                               Tail tail) {
  const std::size_t n = chain.n();
  const std::size_t t = schedule.t();
  double total = 0.0;
  auto recurse = [&](auto&& self, std::size_t depth, std::size_t prev, double prob,
                     double weight) -> void {
    if (depth == t) {
      const bool hit = tail == Tail::upper ? weight >= threshold : weight <= threshold;
      if (hit) total += prob;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      const double p = depth == 0 ? phi[v] : prob * chain(prev, v);
      if (p == 0.0) continue;
      self(self, depth + 1, v, p, weight + schedule.f(depth)[v]);
    }
  };
  recurse(recurse, 0, 0, 1.0, 0.0);
  return total;
}

// Sub-walk MGFs E[e^{r X^{(i)}}] for the T interleaved sub-walks, by full
// enumeration.
inline std::vector<double> brute_force_group_mgfs(const ChainModel& chain,
                                                  const ProbabilityVector& phi,
                                                  const WeightSchedule& schedule,
                                                  double r, std::size_t groups) {
  const std::size_t n = chain.n();
  const std::size_t t = schedule.t();
  std::vector<double> mgfs(groups, 0.0);
  std::vector<double> group_weight(groups, 0.0);
  auto recurse = [&](auto&& self, std::size_t depth, std::size_t prev,
                     double prob) -> void {
    if (depth == t) {
      for (std::size_t g = 0; g < groups; ++g)
        mgfs[g] += prob * std::exp(r * group_weight[g]);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      const double p = depth == 0 ? phi[v] : prob * chain(prev, v);
      if (p == 0.0) continue;
      group_weight[depth % groups] += schedule.f(depth)[v];
      self(self, depth + 1, v, p);
      group_weight[depth % groups] -= schedule.f(depth)[v];
    }
  };
  recurse(recurse, 0, 0, 1.0);
  return mgfs;
}

}  // namespace mcct::testing
