#pragma once

#include <cstdint>

#include "mcct/chain_core.hpp"

namespace mcct {

struct SpectralReport {
  double lambda = 0.0;    // spectral expansion lambda(M)
  double gap = 1.0;       // 1 - lambda
  double lambda_R = 0.0;  // second-largest eigenvalue of R(M) = M * M~
  long iterations = 0;
  // Maximizing direction y (orthogonal to pi in the pi-kernel); its stretch
  // ||yM||_pi / ||y||_pi attains lambda up to solver tolerance.
  Vec eigenvector;
};

// M~(x, y) = pi(y) M(y, x) / pi(x).
ChainModel time_reversal(const ChainModel& chain, const ProbabilityVector& pi);

// R(M) = M * M~; reversible with respect to pi.
ChainModel reversiblization(const ChainModel& chain, const ProbabilityVector& pi);

// max_{x,y} |pi(x) M(x,y) - pi(y) M(y,x)|.
double detailed_balance_residual(const ChainModel& chain, const ProbabilityVector& pi);
bool is_reversible(const ChainModel& chain, const ProbabilityVector& pi, double tol = 1e-10);

inline constexpr std::uint64_t kSpectralDefaultSeed = 0x5ca1ab1eULL;

// lambda(M) = sqrt(lambda_2(R(M))), computed on the symmetrized matrix
// D^{1/2} R D^{-1/2} by power iteration with the sqrt(pi) direction deflated.
SpectralReport spectral_expansion(const ChainModel& chain, const ProbabilityVector& pi,
                                  double tol = 1e-12,
                                  std::uint64_t seed = kSpectralDefaultSeed);

struct MOperatorReport {
  double lambda = 0.0;
  double max_ratio = 0.0;          // max ||yM||_pi / ||y||_pi over trial y perp pi
  double max_parallel_leak = 0.0;  // max |<yM, pi>_pi|
  int trials = 0;
};

// Randomized check that the chain contracts the orthogonal complement of pi
// by at most lambda and maps it into itself. Throws CheckFailedError with the
// violating vector on failure.
MOperatorReport m_operator_check(const ChainModel& chain, const ProbabilityVector& pi,
                                 int trials, std::uint64_t seed);

}  // namespace mcct
