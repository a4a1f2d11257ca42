#include "mcct/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcct/rng.hpp"

namespace mcct {
namespace {

void require_stationary(const ChainModel& chain, const ProbabilityVector& pi,
                        const char* where) {
  if (pi.size() != chain.n()) throw LengthMismatchError("pi does not match the chain size");
  const double residual =
      l1_distance(row_times_matrix(pi.entries(), chain.rows()), pi.entries());
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << where << ": ||pi M - pi||_1 = " << residual << " exceeds 1e-8";
    throw NonStationaryError(msg.str());
  }
}

void require_positive(const ProbabilityVector& pi) {
  if (!pi.strictly_positive())
    throw ZeroStationaryMassError("pi has a zero entry; time reversal is undefined");
}

}  // namespace

ChainModel time_reversal(const ChainModel& chain, const ProbabilityVector& pi) {
  require_positive(pi);
  require_stationary(chain, pi, "time_reversal");
  const std::size_t n = chain.n();
  Matrix rev(n, n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) rev(x, y) = pi[y] * chain(y, x) / pi[x];
  return ChainModel::create(std::move(rev));
}

ChainModel reversiblization(const ChainModel& chain, const ProbabilityVector& pi) {
  const ChainModel reversed = time_reversal(chain, pi);
  return ChainModel::create(matmul(chain.rows(), reversed.rows()));
}

double detailed_balance_residual(const ChainModel& chain, const ProbabilityVector& pi) {
  double worst = 0.0;
  for (std::size_t x = 0; x < chain.n(); ++x)
    for (std::size_t y = x + 1; y < chain.n(); ++y)
      worst = std::max(worst, std::abs(pi[x] * chain(x, y) - pi[y] * chain(y, x)));
  return worst;
}

bool is_reversible(const ChainModel& chain, const ProbabilityVector& pi, double tol) {
  return detailed_balance_residual(chain, pi) <= tol;
}

SpectralReport spectral_expansion(const ChainModel& chain, const ProbabilityVector& pi,
                                  double tol, std::uint64_t seed) {
  if (tol <= 0.0) throw ValidationError("spectral_expansion: tol must be positive");
  require_stationary(chain, pi, "spectral_expansion");
  const ChainModel r = reversiblization(chain, pi);
  const std::size_t n = chain.n();

  // S = D^{1/2} R D^{-1/2} with D = diag(pi) is symmetric PSD with top
  // eigenvector sqrt(pi); symmetrize explicitly to wash out rounding.
  Vec sqrt_pi(n);
  for (std::size_t i = 0; i < n; ++i) sqrt_pi[i] = std::sqrt(pi[i]);
  Matrix s(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = sqrt_pi[i] * r(i, j) / sqrt_pi[j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (s(i, j) + s(j, i));
      s(i, j) = avg;
      s(j, i) = avg;
    }

  auto deflate = [&](Vec& v) {
    const double c = dot(v, sqrt_pi);
    for (std::size_t i = 0; i < n; ++i) v[i] -= c * sqrt_pi[i];
  };
  auto l2 = [](const Vec& v) { return std::sqrt(std::max(dot(v, v), 0.0)); };

  RandomStream rng(seed);
  Vec v(n);
  double norm = 0.0;
  do {
    for (double& x : v) x = rng.next_symmetric();
    deflate(v);
    norm = l2(v);
  } while (norm < 1e-12);
  for (double& x : v) x /= norm;

  constexpr long kCap = 1'000'000;
  double rayleigh = 0.0;
  long iterations = 0;
  int settled = 0;
  for (; iterations < kCap; ++iterations) {
    Vec w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = v[i];
      if (vi == 0.0) continue;
      const auto srow = s.row(i);
      for (std::size_t j = 0; j < n; ++j) w[j] += vi * srow[j];
    }
    deflate(w);
    const double next = dot(v, w);
    const double wn = l2(w);
    if (wn < 1e-200) {
      // Deflated space is annihilated (rank-one chains): second eigenvalue 0.
      rayleigh = 0.0;
      ++iterations;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
    const bool stable = std::abs(next - rayleigh) <= tol * std::max(1.0, std::abs(next));
    rayleigh = next;
    settled = stable ? settled + 1 : 0;
    if (settled >= 3 && iterations >= 10) {
      ++iterations;
      break;
    }
  }
  if (iterations >= kCap)
    throw NoConvergenceError("spectral_expansion: power iteration did not settle", kCap);

  double lambda_r = rayleigh;
  if (lambda_r < -1e-8 || lambda_r > 1.0 + 1e-8)
    throw NoConvergenceError("spectral_expansion: eigenvalue escaped [0, 1]", iterations);
  lambda_r = std::clamp(lambda_r, 0.0, 1.0);

  SpectralReport report;
  report.lambda_R = lambda_r;
  report.lambda = std::sqrt(lambda_r);
  report.gap = 1.0 - report.lambda;
  report.iterations = iterations;
  // Map the S-eigenvector u back to pi-geometry: y_i = u_i * sqrt(pi_i).
  report.eigenvector.resize(n);
  for (std::size_t i = 0; i < n; ++i) report.eigenvector[i] = v[i] * sqrt_pi[i];
  return report;
}

MOperatorReport m_operator_check(const ChainModel& chain, const ProbabilityVector& pi,
                                 int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("m_operator_check: trials must be positive");
  const SpectralReport spectral = spectral_expansion(chain, pi);
  const std::size_t n = chain.n();

  MOperatorReport report;
  report.lambda = spectral.lambda;
  report.trials = trials;

  RandomStream rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    Vec raw(n);
    for (double& x : raw) x = rng.next_symmetric();
    Vec y = decompose(raw, pi).perp;
    const double norm = pi_norm(y, pi);
    if (norm < 1e-14) continue;  // ratio for y = 0 is defined as 0
    for (double& x : y) x /= norm;

    const Vec image = row_times_matrix(y, chain.rows());
    const double ratio = pi_norm(image, pi);
    const double leak = std::abs(pi_inner_product(image, pi.entries(), pi));
    report.max_ratio = std::max(report.max_ratio, ratio);
    report.max_parallel_leak = std::max(report.max_parallel_leak, leak);

    if (ratio > spectral.lambda + 1e-8 || leak > 1e-10) {
      std::ostringstream msg;
      msg << "m_operator_check: trial " << trial << " violates the contraction: ratio "
          << ratio << " vs lambda " << spectral.lambda << ", parallel leak " << leak
          << "; witness y = [";
      for (std::size_t i = 0; i < n; ++i) msg << (i ? ", " : "") << y[i];
      msg << "]";
      throw CheckFailedError(msg.str());
    }
  }
  return report;
}

}  // namespace mcct
