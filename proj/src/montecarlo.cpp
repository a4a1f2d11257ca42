#include "mcct/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "mcct/rng.hpp"

namespace mcct {
namespace {

void require_no_absorbing(const Generator& gen) {
  for (std::size_t i = 0; i < gen.n(); ++i)
    if (gen(i, i) == 0.0)
      throw AbsorbingStateError("row " + std::to_string(i + 1) +
                                " of the generator is all zeros");
}

double walk_weight_discrete(const ChainModel& chain, const ProbabilityVector& phi,
                            const WeightSchedule& schedule, RandomStream& rng,
                            std::vector<std::size_t>* states) {
  std::size_t state = sample_categorical(phi.entries(), rng.next_unit());
  double weight = schedule.f(0)[state];
  if (states) states->push_back(state);
  for (std::size_t step = 1; step < schedule.t(); ++step) {
    state = sample_categorical(chain.rows().row(state), rng.next_unit());
    weight += schedule.f(step)[state];
    if (states) states->push_back(state);
  }
  return weight;
}

double walk_weight_continuous(const Generator& gen, const ProbabilityVector& phi,
                              const Vec& f, double horizon, RandomStream& rng,
                              WalkSample* record) {
  const std::size_t n = gen.n();
  std::size_t state = sample_categorical(phi.entries(), rng.next_unit());
  double remaining = horizon;
  double weight = 0.0;
  Vec jump_row(n, 0.0);
  while (remaining > 0.0) {
    const double rate = -gen(state, state);
    const double hold = rng.next_exponential() / rate;
    const double taken = std::min(hold, remaining);
    weight += f[state] * taken;
    if (record) {
      record->states.push_back(state);
      record->holding_times.push_back(taken);
    }
    remaining -= taken;
    if (remaining <= 0.0) break;
    for (std::size_t j = 0; j < n; ++j)
      jump_row[j] = j == state ? 0.0 : gen(state, j) / rate;
    state = sample_categorical(jump_row, rng.next_unit());
  }
  return weight;
}

// Exact Clopper-Pearson binomial interval, only evaluated when the hit count
// is small; the binomial CDF is a short sum then.
double binom_cdf(long n, long k, double p) {
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return k >= n ? 1.0 : 0.0;
  double sum = 0.0;
  for (long i = 0; i <= k; ++i) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                            std::lgamma(n - i + 1.0) + i * std::log(p) +
                            (n - i) * std::log1p(-p);
    sum += std::exp(log_term);
  }
  return std::min(sum, 1.0);
}

double bisect_probability(const std::function<double(double)>& g) {
  // g is monotone with a sign change on [0, 1].
  double lo = 0.0, hi = 1.0;
  const bool increasing = g(1.0) > g(0.0);
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) < 0.0) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

void clopper_pearson(long hits, long samples, double* low, double* high) {
  constexpr double kAlphaHalf = 0.025;
  if (hits == 0) {
    *low = 0.0;
  } else {
    // Largest p with Pr[Bin(n, p) >= hits] <= alpha/2.
    *low = bisect_probability(
        [&](double p) { return (1.0 - binom_cdf(samples, hits - 1, p)) - kAlphaHalf; });
  }
  if (hits == samples) {
    *high = 1.0;
  } else {
    // Smallest p with Pr[Bin(n, p) <= hits] <= alpha/2.
    *high = bisect_probability(
        [&](double p) { return kAlphaHalf - binom_cdf(samples, hits, p); });
  }
}

TailEstimate finish_estimate(double threshold, long hits, long samples) {
  TailEstimate est;
  est.threshold = threshold;
  est.hits = hits;
  est.samples = samples;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
  if (hits < 10 || samples - hits < 10) {
    clopper_pearson(hits, samples, &est.ci_low, &est.ci_high);
  } else {
    const double half_width = 1.959963984540054 * est.std_error;
    est.ci_low = std::max(0.0, est.p_hat - half_width);
    est.ci_high = std::min(1.0, est.p_hat + half_width);
  }
  est.ci_low = std::min(est.ci_low, est.p_hat);
  est.ci_high = std::max(est.ci_high, est.p_hat);
  return est;
}

// Runs `samples` per-index walks and counts threshold crossings. The chunking
// over threads never changes the result because each sample owns a stream
// keyed by its index and hit counts are summed exactly.
long count_hits(long samples, const std::function<double(RandomStream&)>& weight_of,
                std::uint64_t seed, double threshold, Tail tail) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const long min_chunk = 4096;
  const long chunks = std::max<long>(1, std::min<long>(hw, samples / min_chunk));
  std::vector<long> partial(chunks, 0);
  auto work = [&](long chunk) {
    const long begin = samples * chunk / chunks;
    const long end = samples * (chunk + 1) / chunks;
    long local = 0;
    for (long i = begin; i < end; ++i) {
      RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(i));
      const double weight = weight_of(rng);
      const bool hit = tail == Tail::upper ? weight >= threshold : weight <= threshold;
      if (hit) ++local;
    }
    partial[chunk] = local;
  };
  if (chunks == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(chunks);
    for (long c = 0; c < chunks; ++c) threads.emplace_back(work, c);
    for (auto& th : threads) th.join();
  }
  long total = 0;
  for (long c : partial) total += c;
  return total;
}

}  // namespace

WalkSample sample_walk_discrete(const ChainModel& chain, const ProbabilityVector& phi,
                                const WeightSchedule& schedule, std::uint64_t seed) {
  if (phi.size() != chain.n() || schedule.n() != chain.n())
    throw LengthMismatchError("sample_walk_discrete: size mismatch");
  WalkSample sample;
  sample.seed = seed;
  sample.states.reserve(schedule.t());
  RandomStream rng(seed);
  sample.total_weight = walk_weight_discrete(chain, phi, schedule, rng, &sample.states);
  return sample;
}

WalkSample sample_walk_continuous(const Generator& gen, const ProbabilityVector& phi,
                                  const Vec& f, double horizon, std::uint64_t seed) {
  if (phi.size() != gen.n() || f.size() != gen.n())
    throw LengthMismatchError("sample_walk_continuous: size mismatch");
  if (!(horizon > 0.0)) throw ValidationError("sample_walk_continuous: horizon must be positive");
  for (double x : f)
    if (!(x >= 0.0 && x <= 1.0))
      throw ValidationError("sample_walk_continuous: weights must lie in [0, 1]");
  require_no_absorbing(gen);
  WalkSample sample;
  sample.seed = seed;
  RandomStream rng(seed);
  sample.total_weight = walk_weight_continuous(gen, phi, f, horizon, rng, &sample);
  return sample;
}

TailEstimate empirical_tail(const ChainModel& chain, const ProbabilityVector& phi,
                            const WeightSchedule& schedule, double delta, long samples,
                            std::uint64_t seed, Tail tail) {
  if (samples < 1) throw ValidationError("empirical_tail: samples must be at least 1");
  if (delta < 0.0) throw ValidationError("empirical_tail: delta must be nonnegative");
  if (phi.size() != chain.n() || schedule.n() != chain.n())
    throw LengthMismatchError("empirical_tail: size mismatch");
  const double mu_t = schedule.mu() * static_cast<double>(schedule.t());
  const double threshold = (tail == Tail::upper ? 1.0 + delta : 1.0 - delta) * mu_t;
  const long hits = count_hits(
      samples,
      [&](RandomStream& rng) {
        return walk_weight_discrete(chain, phi, schedule, rng, nullptr);
      },
      seed, threshold, tail);
  return finish_estimate(threshold, hits, samples);
}

TailEstimate empirical_tail_continuous(const Generator& gen, const ProbabilityVector& pi,
                                       const ProbabilityVector& phi, const Vec& f,
                                       double horizon, double delta, long samples,
                                       std::uint64_t seed, Tail tail) {
  if (samples < 1) throw ValidationError("empirical_tail: samples must be at least 1");
  if (delta < 0.0) throw ValidationError("empirical_tail: delta must be nonnegative");
  if (phi.size() != gen.n() || f.size() != gen.n() || pi.size() != gen.n())
    throw LengthMismatchError("empirical_tail: size mismatch");
  require_no_absorbing(gen);
  const double mu = dot(f, pi.entries());
  const double threshold = (tail == Tail::upper ? 1.0 + delta : 1.0 - delta) * mu * horizon;
  const long hits = count_hits(
      samples,
      [&](RandomStream& rng) {
        return walk_weight_continuous(gen, phi, f, horizon, rng, nullptr);
      },
      seed, threshold, tail);
  return finish_estimate(threshold, hits, samples);
}

}  // namespace mcct
