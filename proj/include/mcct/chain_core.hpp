#pragma once

#include <string>

#include "mcct/errors.hpp"
#include "mcct/linalg.hpp"

namespace mcct {

// Row/probability sums off by at most this much are silently renormalized;
// larger deviations are rejected as bad data.
inline constexpr double kSumNormalizeTol = 1e-9;

// Distribution over the state space: nonnegative entries summing to one.
class ProbabilityVector {
 public:
  static ProbabilityVector create(Vec entries);

  const Vec& entries() const { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }
  bool strictly_positive() const;

 private:
  explicit ProbabilityVector(Vec entries) : entries_(std::move(entries)) {}
  Vec entries_;
};

// General real vectors measured in the pi-kernel geometry keep the plain Vec
// representation; the defining distribution pi travels alongside them.
using PiVector = Vec;

struct ErgodicityReport {
  bool ergodic = false;
  std::string diagnostic;  // names the failing property when not ergodic
};

// Row-stochastic transition matrix over n >= 2 states. Ergodicity of the
// support graph is checked once at construction and cached.
class ChainModel {
 public:
  static ChainModel create(Matrix rows);

  std::size_t n() const { return rows_.rows(); }
  const Matrix& rows() const { return rows_; }
  double operator()(std::size_t i, std::size_t j) const { return rows_(i, j); }
  const ErgodicityReport& ergodicity() const { return ergodicity_; }
  bool is_ergodic() const { return ergodicity_.ergodic; }

 private:
  ChainModel(Matrix rows, ErgodicityReport report)
      : rows_(std::move(rows)), ergodicity_(std::move(report)) {}
  Matrix rows_;
  ErgodicityReport ergodicity_;
};

// Irreducibility plus aperiodicity of the support graph.
ErgodicityReport check_ergodic(const ChainModel& chain);

// Unique fixed point pi with ||pi M - pi||_1 <= tol. Power iteration on the
// transpose action with a direct linear solve as fallback when it stalls.
ProbabilityVector stationary_distribution(const ChainModel& chain, double tol = 1e-12);

// <u, v>_pi = sum_i u_i v_i / pi(i).
double pi_inner_product(const PiVector& u, const PiVector& v, const ProbabilityVector& pi);
double pi_norm(const PiVector& u, const ProbabilityVector& pi);

struct PiDecomposition {
  PiVector parallel;  // <x, pi>_pi * pi
  PiVector perp;      // x - parallel
};
PiDecomposition decompose(const PiVector& x, const ProbabilityVector& pi);

// Continuous-time rate matrix: nonnegative off-diagonal entries, nonpositive
// diagonal, zero row sums.
class Generator {
 public:
  static Generator create(Matrix rates);

  std::size_t n() const { return rates_.rows(); }
  const Matrix& rates() const { return rates_; }
  double operator()(std::size_t i, std::size_t j) const { return rates_(i, j); }
  double max_exit_rate() const { return max_exit_rate_; }

 private:
  Generator(Matrix rates, double q) : rates_(std::move(rates)), max_exit_rate_(q) {}
  Matrix rates_;
  double max_exit_rate_ = 0.0;
};

// M(t) = exp(t * Lambda) by uniformization: Poisson-weighted powers of
// P = I + Lambda/q, truncated once the remaining tail mass drops below tol
// and renormalized, so the result is stochastic by construction.
ChainModel matrix_exponential(const Generator& gen, double t, double tol = 1e-12);

// One step of the chain acting on a distribution.
ProbabilityVector propagate(const ProbabilityVector& u, const ChainModel& chain);

// M^t as a chain (t >= 1).
ChainModel chain_power(const ChainModel& chain, std::uint64_t t);

}  // namespace mcct
