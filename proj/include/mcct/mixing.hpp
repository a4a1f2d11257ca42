#pragma once

#include "mcct/spectral.hpp"

namespace mcct {

// Total variation distance, half the L1 distance.
double tv_distance(const ProbabilityVector& u, const ProbabilityVector& w);

struct MixingReport {
  double epsilon = 0.0;
  // Smallest time with worst-case TV at most epsilon. Integer-valued for the
  // discrete chain; a bracketed real for the continuous chain.
  double time = 0.0;
  double worst_tv_at_time = 0.0;
  std::size_t worst_start = 0;
  // TV just below the mixing time: at time-1 for the discrete chain, at the
  // certified lower bracket for the continuous chain.
  double worst_tv_before = 1.0;
  double lower_bracket = 0.0;
};

// Exact epsilon-mixing time, by repeated squaring to bracket and bisection on
// exact integer powers inside the bracket. Worst case over point-mass starts
// equals the worst case over all starts by convexity of TV in the start.
MixingReport mixing_time_discrete(const ChainModel& chain, const ProbabilityVector& pi,
                                  double epsilon);

// Continuous-time mixing time by doubling plus bisection on t; valid because
// worst-case TV is non-increasing in t. The answer is accurate to relative
// tol; report.time is the certified upper end of the bracket.
MixingReport mixing_time_continuous(const Generator& gen, const ProbabilityVector& pi,
                                    double epsilon, double tol = 1e-9);

struct MarginReport {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = false;
  double epsilon = 0.0;
  double T = 0.0;
  double lambda = 0.0;
};

// lambda(M^{T(eps)}) <= sqrt(2 eps), for any ergodic chain.
MarginReport verify_claim_mix_to_spectral(const ChainModel& chain,
                                          const ProbabilityVector& pi, double epsilon);

// lambda(M) <= (2 eps)^{1/T(eps)}, for reversible chains.
MarginReport verify_lemma_reversible(const ChainModel& chain, const ProbabilityVector& pi,
                                     double epsilon);

// ||x M^{T(eps)} - pi||_TV <= 2 eps ||x - pi||_TV over random starts x.
MarginReport verify_claim_contraction(const ChainModel& chain, const ProbabilityVector& pi,
                                      double epsilon, int trials, std::uint64_t seed);

// (1/2) (lambda / (1 - lambda)) log(1/(2 eps)) <= T(eps), for reversible chains.
MarginReport verify_sinclair_lower(const ChainModel& chain, const ProbabilityVector& pi,
                                   double epsilon);

// Worst-case TV from point-mass starts at M^t given the dense power.
double worst_case_tv(const Matrix& power, const ProbabilityVector& pi,
                     std::size_t* argmax = nullptr);

}  // namespace mcct
