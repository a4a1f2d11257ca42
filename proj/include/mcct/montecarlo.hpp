#pragma once

#include <cstdint>

#include "mcct/mgf_bounds.hpp"

namespace mcct {

struct WalkSample {
  std::vector<std::size_t> states;
  Vec holding_times;  // continuous walks only; aligned with states
  double total_weight = 0.0;
  std::uint64_t seed = 0;
};

// t-step walk: V_1 from phi, then rows of M; total weight sum_i f_i(V_i).
// Identical (inputs, seed) give identical samples.
WalkSample sample_walk_discrete(const ChainModel& chain, const ProbabilityVector& phi,
                                const WeightSchedule& schedule, std::uint64_t seed);

// Jump-chain simulation up to the horizon: exponential holding with rate
// |Lambda_ii|, next state proportional to the off-diagonal row; total weight
// integrates f over the visited states.
WalkSample sample_walk_continuous(const Generator& gen, const ProbabilityVector& phi,
                                  const Vec& f, double horizon, std::uint64_t seed);

struct TailEstimate {
  double threshold = 0.0;
  long hits = 0;
  long samples = 0;
  double p_hat = 0.0;
  double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / samples)
  double ci_low = 0.0;     // 95% interval; Clopper-Pearson in the deep tail
  double ci_high = 1.0;
};

// Estimates Pr[X >= (1+delta) mu t] (upper) or Pr[X <= (1-delta) mu t]
// (lower) from `samples` independent walks with per-sample streams derived
// from (seed, sample index). Sampling may run on several threads; the result
// is independent of the chunking.
TailEstimate empirical_tail(const ChainModel& chain, const ProbabilityVector& phi,
                            const WeightSchedule& schedule, double delta, long samples,
                            std::uint64_t seed, Tail tail);

// Continuous-time analog with a time-homogeneous weight function; mu is
// computed from pi and f, and the threshold is (1 +- delta) mu horizon.
TailEstimate empirical_tail_continuous(const Generator& gen, const ProbabilityVector& pi,
                                       const ProbabilityVector& phi, const Vec& f,
                                       double horizon, double delta, long samples,
                                       std::uint64_t seed, Tail tail);

}  // namespace mcct
