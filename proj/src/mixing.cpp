#include "mcct/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "mcct/rng.hpp"

namespace mcct {
namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw ValidationError("epsilon must lie in (0, 1/2)");
}

double tv_between(std::span<const double> row, const Vec& pi) {
  double sum = 0.0;
  for (std::size_t j = 0; j < pi.size(); ++j) sum += std::abs(row[j] - pi[j]);
  return 0.5 * sum;
}

}  // namespace

double tv_distance(const ProbabilityVector& u, const ProbabilityVector& w) {
  if (u.size() != w.size()) throw LengthMismatchError("tv_distance: size mismatch");
  return 0.5 * l1_distance(u.entries(), w.entries());
}

double worst_case_tv(const Matrix& power, const ProbabilityVector& pi,
                     std::size_t* argmax) {
  double worst = 0.0;
  std::size_t worst_i = 0;
  for (std::size_t i = 0; i < power.rows(); ++i) {
    const double tv = tv_between(power.row(i), pi.entries());
    if (tv > worst) {
      worst = tv;
      worst_i = i;
    }
  }
  if (argmax) *argmax = worst_i;
  return worst;
}

MixingReport mixing_time_discrete(const ChainModel& chain, const ProbabilityVector& pi,
                                  double epsilon) {
  require_epsilon(epsilon);
  if (!chain.is_ergodic())
    throw NonErgodicError("mixing_time_discrete: " + chain.ergodicity().diagnostic);
  if (pi.size() != chain.n()) throw LengthMismatchError("pi does not match the chain");

  constexpr long kApplicationCap = 10'000'000;
  long applications = 0;
  auto count = [&](long k) {
    applications += k;
    if (applications > kApplicationCap)
      throw IterationCapError("mixing_time_discrete: matrix application cap exceeded");
  };

  // Cache M^(2^k) until the worst-case TV drops below epsilon.
  std::vector<Matrix> squares{chain.rows()};
  std::vector<double> tv_at_power{worst_case_tv(squares[0], pi)};
  while (tv_at_power.back() > epsilon) {
    count(1);
    squares.push_back(matmul(squares.back(), squares.back()));
    tv_at_power.push_back(worst_case_tv(squares.back(), pi));
    if (squares.size() > 62)
      throw IterationCapError("mixing_time_discrete: mixing time exceeds 2^62");
  }

  auto power_of = [&](std::uint64_t t) {
    Matrix acc;
    bool have = false;
    for (std::size_t bit = 0; bit < squares.size(); ++bit) {
      if ((t >> bit) & 1ULL) {
        count(1);
        acc = have ? matmul(acc, squares[bit]) : squares[bit];
        have = true;
      }
    }
    return acc;
  };

  std::uint64_t t_mixed;
  if (squares.size() == 1) {
    t_mixed = 1;
  } else {
    // Bisect for the smallest mixed t; worst-case TV is non-increasing in t.
    std::uint64_t lo = 1ULL << (squares.size() - 2);  // TV > epsilon here
    std::uint64_t hi = 1ULL << (squares.size() - 1);  // TV <= epsilon here
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (worst_case_tv(power_of(mid), pi) <= epsilon)
        hi = mid;
      else
        lo = mid;
    }
    t_mixed = hi;
  }

  MixingReport report;
  report.epsilon = epsilon;
  report.time = static_cast<double>(t_mixed);
  report.worst_tv_at_time = worst_case_tv(power_of(t_mixed), pi, &report.worst_start);
  report.lower_bracket = static_cast<double>(t_mixed - 1);
  report.worst_tv_before =
      t_mixed == 1 ? worst_case_tv(Matrix::identity(chain.n()), pi)
                   : worst_case_tv(power_of(t_mixed - 1), pi);
  return report;
}

MixingReport mixing_time_continuous(const Generator& gen, const ProbabilityVector& pi,
                                    double epsilon, double tol) {
  require_epsilon(epsilon);
  if (!(tol > 0.0 && tol < 1.0))
    throw ValidationError("mixing_time_continuous: tol must lie in (0, 1)");
  if (pi.size() != gen.n()) throw LengthMismatchError("pi does not match the generator");
  // Ergodicity in continuous time is strong connectivity of the jump graph.
  {
    Matrix support(gen.n(), gen.n(), 0.0);
    for (std::size_t i = 0; i < gen.n(); ++i) {
      support(i, i) = 1.0;
      for (std::size_t j = 0; j < gen.n(); ++j)
        if (i != j && gen(i, j) > 0.0) support(i, j) = 1.0;
    }
    for (std::size_t i = 0; i < gen.n(); ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < gen.n(); ++j) sum += support(i, j);
      for (std::size_t j = 0; j < gen.n(); ++j) support(i, j) /= sum;
    }
    const auto report = ChainModel::create(std::move(support)).ergodicity();
    if (!report.ergodic)
      throw NonErgodicError("mixing_time_continuous: " + report.diagnostic);
  }

  constexpr double kExpTol = 1e-13;
  auto tv_at = [&](double t) {
    return worst_case_tv(matrix_exponential(gen, t, kExpTol).rows(), pi);
  };

  double hi = 1.0 / gen.max_exit_rate();
  int guard = 0;
  while (tv_at(hi) > epsilon) {
    hi *= 2.0;
    if (++guard > 200)
      throw IterationCapError("mixing_time_continuous: no mixing within 2^200 timescales");
  }
  double lo = 0.5 * hi;
  guard = 0;
  while (tv_at(lo) <= epsilon) {
    lo *= 0.5;
    hi = 2.0 * lo;
    if (++guard > 200) break;  // TV at 0+ is at least 1/2, so this terminates
  }

  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (tv_at(mid) <= epsilon)
      hi = mid;
    else
      lo = mid;
  }

  MixingReport report;
  report.epsilon = epsilon;
  report.time = hi;
  report.worst_tv_at_time =
      worst_case_tv(matrix_exponential(gen, hi, kExpTol).rows(), pi, &report.worst_start);
  report.lower_bracket = lo;
  report.worst_tv_before =
      worst_case_tv(matrix_exponential(gen, lo, kExpTol).rows(), pi);
  return report;
}

MarginReport verify_claim_mix_to_spectral(const ChainModel& chain,
                                          const ProbabilityVector& pi, double epsilon) {
  const MixingReport mixing = mixing_time_discrete(chain, pi, epsilon);
  const auto t = static_cast<std::uint64_t>(mixing.time);
  const SpectralReport spectral = spectral_expansion(chain_power(chain, t), pi);

  MarginReport report;
  report.check = "lambda(M^T) <= sqrt(2 eps)";
  report.lhs = spectral.lambda;
  report.rhs = std::sqrt(2.0 * epsilon);
  report.margin = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + 1e-8;
  report.epsilon = epsilon;
  report.T = mixing.time;
  report.lambda = spectral.lambda;
  return report;
}

MarginReport verify_lemma_reversible(const ChainModel& chain, const ProbabilityVector& pi,
                                     double epsilon) {
  if (!is_reversible(chain, pi))
    throw NotReversibleError("verify_lemma_reversible: detailed balance fails");
  const MixingReport mixing = mixing_time_discrete(chain, pi, epsilon);
  const SpectralReport spectral = spectral_expansion(chain, pi);

  MarginReport report;
  report.check = "lambda(M) <= (2 eps)^(1/T)";
  report.lhs = spectral.lambda;
  report.rhs = std::pow(2.0 * epsilon, 1.0 / mixing.time);
  report.margin = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + 1e-8;
  report.epsilon = epsilon;
  report.T = mixing.time;
  report.lambda = spectral.lambda;
  return report;
}

MarginReport verify_claim_contraction(const ChainModel& chain, const ProbabilityVector& pi,
                                      double epsilon, int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("verify_claim_contraction: trials must be positive");
  const MixingReport mixing = mixing_time_discrete(chain, pi, epsilon);
  const Matrix power = matrix_power(chain.rows(), static_cast<std::uint64_t>(mixing.time));

  double max_ratio = 0.0;
  RandomStream rng(seed);
  const std::size_t n = chain.n();
  for (int trial = 0; trial < trials; ++trial) {
    Vec x(n);
    double sum = 0.0;
    for (double& v : x) {
      v = rng.next_exponential();
      sum += v;
    }
    for (double& v : x) v /= sum;
    const double before = 0.5 * l1_distance(x, pi.entries());
    if (before < 1e-12) continue;  // x == pi gives a degenerate ratio
    const double after = 0.5 * l1_distance(row_times_matrix(x, power), pi.entries());
    max_ratio = std::max(max_ratio, after / before);
  }

  MarginReport report;
  report.check = "||x M^T - pi||_TV <= 2 eps ||x - pi||_TV";
  report.lhs = max_ratio;
  report.rhs = 2.0 * epsilon;
  report.margin = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + 1e-8;
  report.epsilon = epsilon;
  report.T = mixing.time;
  return report;
}

MarginReport verify_sinclair_lower(const ChainModel& chain, const ProbabilityVector& pi,
                                   double epsilon) {
  if (!is_reversible(chain, pi))
    throw NotReversibleError("verify_sinclair_lower: detailed balance fails");
  const SpectralReport spectral = spectral_expansion(chain, pi);
  if (spectral.lambda >= 1.0 - 1e-12)
    throw DegenerateGapError("verify_sinclair_lower: lambda = 1");
  const MixingReport mixing = mixing_time_discrete(chain, pi, epsilon);

  MarginReport report;
  report.check = "(1/2) lambda/(1-lambda) log(1/(2 eps)) <= T";
  report.lhs = 0.5 * (spectral.lambda / (1.0 - spectral.lambda)) *
               std::log(1.0 / (2.0 * epsilon));
  report.rhs = mixing.time;
  report.margin = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + 1e-8;
  report.epsilon = epsilon;
  report.T = mixing.time;
  report.lambda = spectral.lambda;
  return report;
}

}  // namespace mcct
