#include "mcct/constructions.hpp"

#include <algorithm>
#include <cmath>

namespace mcct {

ProbabilityVector TwoStateChain::stationary() const {
  return ProbabilityVector::create({0.5, 0.5});
}

WeightSchedule TwoStateChain::indicator_schedule(std::size_t t) const {
  return WeightSchedule::homogeneous({1.0, 0.0}, t, stationary());
}

TwoStateChain build_two_state(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("build_two_state: p must lie in (0, 1]");
  Matrix rows(2, 2, 0.0);
  rows(0, 0) = 1.0 - p;
  rows(0, 1) = p;
  rows(1, 0) = p;
  rows(1, 1) = 1.0 - p;
  return TwoStateChain{ChainModel::create(std::move(rows)), p};
}

ChainModel build_split_chain(const ChainModel& chain) {
  if (!chain.is_ergodic())
    throw NonErgodicError("build_split_chain: " + chain.ergodicity().diagnostic);
  const std::size_t n = chain.n();
  Matrix rows(3 * n, 3 * n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    rows(3 * v, 3 * v) = 0.5;          // (v,in) stays
    rows(3 * v, 3 * v + 1) = 0.5;      // (v,in) -> (v,mid)
    rows(3 * v + 1, 3 * v + 2) = 1.0;  // (v,mid) -> (v,out)
    for (std::size_t u = 0; u < n; ++u) rows(3 * v + 2, 3 * u) = chain(v, u);
  }
  return ChainModel::create(std::move(rows));
}

ChainModel build_random_chain(std::size_t n, std::uint64_t seed, RandomChainKind kind) {
  if (n < 2) throw ValidationError("build_random_chain: n must be at least 2");
  RandomStream rng(seed);
  Matrix rows(n, n, 0.0);
  switch (kind) {
    case RandomChainKind::general:
    case RandomChainKind::lazy: {
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          rows(i, j) = rng.next_exponential();
          sum += rows(i, j);
        }
        for (std::size_t j = 0; j < n; ++j) rows(i, j) /= sum;
      }
      if (kind == RandomChainKind::lazy) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) rows(i, j) *= 0.5;
          rows(i, i) += 0.5;
        }
      }
      break;
    }
    case RandomChainKind::reversible: {
      // Row-normalizing a symmetric positive weight matrix gives detailed
      // balance with respect to the row-sum distribution.
      Matrix weights(n, n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          const double w = rng.next_exponential();
          weights(i, j) = w;
          weights(j, i) = w;
        }
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += weights(i, j);
        for (std::size_t j = 0; j < n; ++j) rows(i, j) = weights(i, j) / sum;
      }
      break;
    }
  }
  return ChainModel::create(std::move(rows));
}

ProbabilityVector random_distribution(std::size_t n, RandomStream& rng) {
  Vec x(n);
  double sum = 0.0;
  for (double& v : x) {
    v = rng.next_exponential();
    sum += v;
  }
  for (double& v : x) v /= sum;
  return ProbabilityVector::create(std::move(x));
}

Vec random_weight_function_with_mean(const ProbabilityVector& pi, double mu,
                                     RandomStream& rng) {
  if (!(mu > 0.0 && mu < 1.0))
    throw ValidationError("random weight mean must lie in (0, 1)");
  const std::size_t n = pi.size();
  Vec g(n);
  for (double& v : g) v = rng.next_unit();
  const double mean = dot(g, pi.entries());
  // f = mu + s (g - mean) has pi-mean exactly mu; shrink s to stay in [0,1].
  double s = 1.0;
  for (double v : g) {
    const double dev = v - mean;
    if (dev > 0.0) s = std::min(s, (1.0 - mu) / dev);
    if (dev < 0.0) s = std::min(s, mu / (-dev));
  }
  s *= 0.95;
  Vec f(n);
  for (std::size_t i = 0; i < n; ++i)
    f[i] = std::clamp(mu + s * (g[i] - mean), 0.0, 1.0);
  return f;
}

WeightSchedule random_schedule(std::size_t t, const ProbabilityVector& pi,
                               RandomStream& rng) {
  const double mu = 0.1 + 0.8 * rng.next_unit();
  std::vector<Vec> functions;
  functions.reserve(t);
  for (std::size_t i = 0; i < t; ++i)
    functions.push_back(random_weight_function_with_mean(pi, mu, rng));
  return WeightSchedule::create(std::move(functions), pi);
}

}  // namespace mcct
