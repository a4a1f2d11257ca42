#include "mcct/chain_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace mcct {
namespace {

void normalize_probability_row(std::span<double> row, const std::string& label) {
  double sum = 0.0;
  for (double& x : row) {
    if (x < 0.0) {
      if (x < -1e-12)
        throw ValidationError(label + " has negative entry " + std::to_string(x));
      x = 0.0;
    }
    if (x > 1.0) {
      if (x > 1.0 + 1e-12)
        throw ValidationError(label + " has entry " + std::to_string(x) + " above 1");
      x = 1.0;
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumNormalizeTol)
    throw ValidationError(label + " sums to " + std::to_string(sum));
  if (sum != 1.0)
    for (double& x : row) x /= sum;
}

ErgodicityReport check_support_graph(const Matrix& rows) {
  const std::size_t n = rows.rows();
  auto has_edge = [&](std::size_t u, std::size_t v) { return rows(u, v) > 0.0; };

  // Strong connectivity: every state reachable from state 0 and vice versa.
  auto reach = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        const bool edge = forward ? has_edge(u, v) : has_edge(v, u);
        if (edge && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return seen;
  };
  const auto fwd = reach(true);
  const auto bwd = reach(false);
  for (std::size_t v = 0; v < n; ++v)
    if (!fwd[v] || !bwd[v]) return {false, "not irreducible"};

  // Period: gcd of (level(u) + 1 - level(v)) over support edges, with BFS
  // levels from state 0. Valid because the graph is strongly connected.
  std::vector<long> level(n, -1);
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (std::size_t v = 0; v < n; ++v) {
      if (has_edge(u, v) && level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  long g = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (has_edge(u, v)) g = std::gcd(g, level[u] + 1 - level[v]);
  g = std::abs(g);
  if (g != 1) return {false, "periodic, period " + std::to_string(g)};
  return {true, "ergodic"};
}

void check_pi_positive(const ProbabilityVector& pi) {
  if (!pi.strictly_positive())
    throw ZeroStationaryMassError("pi has a zero entry; the pi-kernel is undefined");
}

}  // namespace

ProbabilityVector ProbabilityVector::create(Vec entries) {
  if (entries.empty()) throw ValidationError("distribution must be nonempty");
  normalize_probability_row(std::span<double>(entries), "distribution");
  return ProbabilityVector(std::move(entries));
}

bool ProbabilityVector::strictly_positive() const {
  return std::all_of(entries_.begin(), entries_.end(), [](double x) { return x > 0.0; });
}

ChainModel ChainModel::create(Matrix rows) {
  if (rows.rows() != rows.cols()) throw ValidationError("transition matrix must be square");
  if (rows.rows() < 2) throw ValidationError("chain needs at least 2 states");
  for (std::size_t i = 0; i < rows.rows(); ++i)
    normalize_probability_row(rows.row(i), "row " + std::to_string(i + 1));
  ErgodicityReport report = check_support_graph(rows);
  return ChainModel(std::move(rows), std::move(report));
}

ErgodicityReport check_ergodic(const ChainModel& chain) { return chain.ergodicity(); }

ProbabilityVector stationary_distribution(const ChainModel& chain, double tol) {
  if (tol <= 0.0) throw ValidationError("tol must be positive");
  if (!chain.is_ergodic())
    throw NonErgodicError("stationary_distribution: " + chain.ergodicity().diagnostic);

  const std::size_t n = chain.n();
  Vec x(n, 1.0 / static_cast<double>(n));

  // Power iteration; bail out to the linear solve when the residual stalls.
  constexpr long kCap = 1'000'000;
  constexpr long kStallWindow = 200;
  double window_best = std::numeric_limits<double>::infinity();
  for (long iter = 0; iter < kCap; ++iter) {
    Vec next = row_times_matrix(x, chain.rows());
    const double residual = l1_distance(next, x);
    x = std::move(next);
    if (residual <= 0.5 * tol) {
      Vec pi = row_times_matrix(x, chain.rows());
      const double check = l1_distance(row_times_matrix(pi, chain.rows()), pi);
      if (check <= tol) return ProbabilityVector::create(std::move(pi));
      break;
    }
    if (iter % kStallWindow == kStallWindow - 1) {
      if (residual > 0.9 * window_best) break;  // stalled
      window_best = residual;
    }
  }

  // Fallback: solve pi (M^T - I) = 0 with the normalization sum(pi) = 1
  // substituted for the last equation.
  Matrix a(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = chain(j, i) - (i == j ? 1.0 : 0.0);
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
  Vec b(n, 0.0);
  b[n - 1] = 1.0;
  Vec pi = solve_dense(std::move(a), std::move(b));
  for (double& p : pi) p = std::max(p, 0.0);
  const double sum = std::accumulate(pi.begin(), pi.end(), 0.0);
  if (sum <= 0.0) throw NoConvergenceError("stationary solve produced a zero vector", kCap);
  for (double& p : pi) p /= sum;
  if (l1_distance(row_times_matrix(pi, chain.rows()), pi) > tol)
    throw NoConvergenceError("stationary distribution did not reach tolerance", kCap);
  return ProbabilityVector::create(std::move(pi));
}

double pi_inner_product(const PiVector& u, const PiVector& v, const ProbabilityVector& pi) {
  if (u.size() != v.size() || u.size() != pi.size())
    throw LengthMismatchError("pi_inner_product: size mismatch");
  check_pi_positive(pi);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * v[i] / pi[i];
  return sum;
}

double pi_norm(const PiVector& u, const ProbabilityVector& pi) {
  const double sq = pi_inner_product(u, u, pi);
  return std::sqrt(std::max(sq, 0.0));
}

PiDecomposition decompose(const PiVector& x, const ProbabilityVector& pi) {
  if (x.size() != pi.size()) throw LengthMismatchError("decompose: size mismatch");
  check_pi_positive(pi);
  // <x, pi>_pi telescopes to the plain entry sum.
  const double coeff = std::accumulate(x.begin(), x.end(), 0.0);
  PiDecomposition out;
  out.parallel.resize(x.size());
  out.perp.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.parallel[i] = coeff * pi[i];
    out.perp[i] = x[i] - out.parallel[i];
  }
  return out;
}

Generator Generator::create(Matrix rates) {
  if (rates.rows() != rates.cols()) throw InvalidGeneratorError("generator must be square");
  if (rates.rows() < 2) throw InvalidGeneratorError("generator needs at least 2 states");
  double q = 0.0;
  for (std::size_t i = 0; i < rates.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < rates.cols(); ++j) {
      const double x = rates(i, j);
      if (i == j) {
        if (x > 0.0)
          throw InvalidGeneratorError("row " + std::to_string(i + 1) +
                                      " has positive diagonal entry");
      } else if (x < 0.0) {
        throw InvalidGeneratorError("row " + std::to_string(i + 1) +
                                    " has negative off-diagonal entry");
      }
      sum += x;
    }
    if (std::abs(sum) > 1e-12)
      throw InvalidGeneratorError("row " + std::to_string(i + 1) + " sums to " +
                                  std::to_string(sum));
    q = std::max(q, -rates(i, i));
  }
  return Generator(std::move(rates), q);
}

namespace {

Matrix uniformized_kernel(const Generator& gen, double q) {
  const std::size_t n = gen.n();
  Matrix p(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      p(i, j) = (i == j ? 1.0 : 0.0) + gen(i, j) / q;
  return p;
}

// Poisson-weighted sum of kernel powers; assumes q*t small enough that the
// leading Poisson weight does not underflow.
Matrix uniformization_sum(const Matrix& p, double qt, double tail_tol) {
  const std::size_t n = p.rows();
  double weight = std::exp(-qt);
  double covered = weight;
  Matrix term = Matrix::identity(n);
  Matrix acc = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) acc(i, j) *= weight;

  const long k_cap = static_cast<long>(qt + 12.0 * std::sqrt(qt + 1.0) + 80.0);
  for (long k = 1; 1.0 - covered > tail_tol && k <= k_cap; ++k) {
    term = matmul(term, p);
    weight *= qt / static_cast<double>(k);
    covered += weight;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) acc(i, j) += weight * term(i, j);
  }
  // Renormalizing by the covered Poisson mass keeps every row stochastic.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) acc(i, j) /= covered;
  return acc;
}

}  // namespace

ChainModel matrix_exponential(const Generator& gen, double t, double tol) {
  if (t < 0.0) throw ValidationError("matrix_exponential: t must be nonnegative");
  if (tol <= 0.0) throw ValidationError("matrix_exponential: tol must be positive");
  const std::size_t n = gen.n();
  const double q = gen.max_exit_rate();
  if (t == 0.0 || q == 0.0) return ChainModel::create(Matrix::identity(n));

  // Split the interval until q*t is small enough for the Poisson weights to
  // stay in range, then square back up.
  int splits = 0;
  double qt = q * t;
  while (qt > 500.0 && splits < 40) {
    qt *= 0.5;
    ++splits;
  }
  const double leaf_tol =
      std::min(tol, 1e-12) / std::pow(2.0, static_cast<double>(splits) + 2.0);

  const Matrix p = uniformized_kernel(gen, q);
  Matrix result = uniformization_sum(p, qt, leaf_tol);
  for (int s = 0; s < splits; ++s) {
    result = matmul(result, result);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += result(i, j);
      for (std::size_t j = 0; j < n; ++j) result(i, j) /= sum;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      result(i, j) = std::clamp(result(i, j), 0.0, 1.0);
  return ChainModel::create(std::move(result));
}

ProbabilityVector propagate(const ProbabilityVector& u, const ChainModel& chain) {
  return ProbabilityVector::create(row_times_matrix(u.entries(), chain.rows()));
}

ChainModel chain_power(const ChainModel& chain, std::uint64_t t) {
  if (t == 0) throw ValidationError("chain_power: t must be at least 1");
  return ChainModel::create(matrix_power(chain.rows(), t));
}

}  // namespace mcct
