#pragma once

#include <cstdint>

#include "mcct/mgf_bounds.hpp"
#include "mcct/rng.hpp"

namespace mcct {

// Two-state chain that flips with probability p; the tight instance for the
// mixing-time bound. Stationary distribution is exactly uniform.
struct TwoStateChain {
  ChainModel chain;
  double p;

  ProbabilityVector stationary() const;
  // f(s1) = 1, f(s2) = 0 at every step; mean 1/2.
  WeightSchedule indicator_schedule(std::size_t t) const;
};

TwoStateChain build_two_state(double p);

// Splits every state v into (v,in) -> (v,mid) -> (v,out) so that (v,out) has
// the unique predecessor (v,mid) reached with probability 1. The result keeps
// the mixing time within a constant factor but has spectral expansion 1.
// State indexing: (v,in) = 3v, (v,mid) = 3v+1, (v,out) = 3v+2.
ChainModel build_split_chain(const ChainModel& chain);

enum class RandomChainKind { general, reversible, lazy };

// general: strictly positive rows (hence ergodic) with Dirichlet(1,..,1)
// profile; reversible: row-normalized symmetric positive weights; lazy:
// (I + general) / 2.
ChainModel build_random_chain(std::size_t n, std::uint64_t seed, RandomChainKind kind);

// Test-instance helpers sharing the same deterministic streams.
ProbabilityVector random_distribution(std::size_t n, RandomStream& rng);
// Entries in [0, 1], shifted and scaled so the pi-mean matches mu exactly.
Vec random_weight_function_with_mean(const ProbabilityVector& pi, double mu,
                                     RandomStream& rng);
// t weight functions sharing a common random pi-mean.
WeightSchedule random_schedule(std::size_t t, const ProbabilityVector& pi,
                               RandomStream& rng);

}  // namespace mcct
