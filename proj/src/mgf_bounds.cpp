#include "mcct/mgf_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mcct/rng.hpp"

namespace mcct {
namespace {

constexpr double kMeanTol = 1e-9;

double sign_of(Tail tail) { return tail == Tail::upper ? 1.0 : -1.0; }

void require_weight_entries(const Vec& f) {
  for (double x : f)
    if (!(x >= 0.0 && x <= 1.0))
      throw ValidationError("weight entries must lie in [0, 1]");
}

}  // namespace

const char* tail_name(Tail tail) { return tail == Tail::upper ? "upper" : "lower"; }

WeightSchedule WeightSchedule::create(std::vector<Vec> functions,
                                      const ProbabilityVector& pi) {
  if (functions.empty()) throw ValidationError("weight schedule needs at least one step");
  const std::size_t n = pi.size();
  double mu = 0.0;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    const Vec& f = functions[i];
    if (f.size() != n) throw LengthMismatchError("weight function size mismatch");
    require_weight_entries(f);
    const double mean = dot(f, pi.entries());
    if (i == 0) {
      mu = mean;
    } else if (std::abs(mean - mu) > kMeanTol) {
      std::ostringstream msg;
      msg << "weight step " << i + 1 << " has mean " << mean
          << " but the schedule mean is " << mu;
      throw ValidationError(msg.str());
    }
  }
  return WeightSchedule(std::move(functions), mu);
}

WeightSchedule WeightSchedule::homogeneous(Vec f, std::size_t t,
                                           const ProbabilityVector& pi) {
  if (t == 0) throw ValidationError("weight schedule needs at least one step");
  std::vector<Vec> functions(t, f);
  return create(std::move(functions), pi);
}

double phi_pi_norm(const ProbabilityVector& phi, const ProbabilityVector& pi) {
  return pi_norm(phi.entries(), pi);
}

double exact_mgf(const ChainModel& chain, const ProbabilityVector& phi,
                 const WeightSchedule& schedule, double r, Tail tail) {
  if (r < 0.0) throw ValidationError("exact_mgf: r must be nonnegative");
  if (schedule.n() != chain.n() || phi.size() != chain.n())
    throw LengthMismatchError("exact_mgf: size mismatch");
  const double s = sign_of(tail) * r;
  Vec v = phi.entries();
  for (std::size_t step = 0; step < schedule.t(); ++step) {
    if (step > 0) v = row_times_matrix(v, chain.rows());
    const Vec& f = schedule.f(step);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= std::exp(s * f[j]);
  }
  // All factors are nonnegative, so the L1 norm is a plain sum.
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum;
}

double brute_force_mgf(const ChainModel& chain, const ProbabilityVector& phi,
                       const WeightSchedule& schedule, double r, Tail tail) {
  if (r < 0.0) throw ValidationError("brute_force_mgf: r must be nonnegative");
  if (schedule.n() != chain.n() || phi.size() != chain.n())
    throw LengthMismatchError("brute_force_mgf: size mismatch");
  const std::size_t n = chain.n();
  const std::size_t t = schedule.t();
  double paths = 1.0;
  for (std::size_t i = 0; i < t; ++i) {
    paths *= static_cast<double>(n);
    if (paths > 1e7) throw TooLargeError("brute_force_mgf: n^t exceeds 1e7");
  }

  const double s = sign_of(tail) * r;
  double total = 0.0;
  // Enumerate every state sequence, carrying path probability and weight.
  auto recurse = [&](auto&& self, std::size_t depth, std::size_t prev, double prob,
                     double weight) -> void {
    if (depth == t) {
      total += prob * std::exp(s * weight);
      return;
    }
    const Vec& f = schedule.f(depth);
    for (std::size_t v = 0; v < n; ++v) {
      const double p = depth == 0 ? phi[v] : prob * chain(prev, v);
      if (p == 0.0) continue;
      self(self, depth + 1, v, p, weight + f[v]);
    }
  };
  recurse(recurse, 0, 0, 1.0, 0.0);
  return total;
}

double choose_r(double lambda, double delta, Tail tail) {
  if (!(lambda >= 0.0)) throw ValidationError("choose_r: lambda must be nonnegative");
  if (lambda >= 1.0)
    throw DegenerateGapError("choose_r: lambda >= 1 admits no positive r");
  if (delta < 0.0) throw ValidationError("choose_r: delta must be nonnegative");
  if (tail == Tail::lower && delta > 1.0)
    throw ValidationError("choose_r: lower tail requires delta <= 1");
  double r = 0.5;
  if (lambda > 0.0) r = std::min(r, 0.5 * std::log(1.0 / lambda));
  r = std::min(r, 1.0 - std::sqrt(lambda));
  const double denom = tail == Tail::upper ? 18.0 : 8.0;
  r = std::min(r, (1.0 - lambda) * delta / denom);
  return r;
}

POperatorReport p_operator_check(const ProbabilityVector& pi, const Vec& f, double r,
                                 Tail tail, int trials, std::uint64_t seed) {
  if (!(r >= 0.0 && r <= 0.5)) throw ValidationError("p_operator_check: r must be in [0, 1/2]");
  if (trials < 1) throw ValidationError("p_operator_check: trials must be positive");
  if (f.size() != pi.size()) throw LengthMismatchError("p_operator_check: size mismatch");
  require_weight_entries(f);
  if (!pi.strictly_positive())
    throw ZeroStationaryMassError("p_operator_check: pi has a zero entry");

  const std::size_t n = pi.size();
  const double s = sign_of(tail) * r;
  const double mu = dot(f, pi.entries());
  Vec diag(n);
  for (std::size_t j = 0; j < n; ++j) diag[j] = std::exp(s * f[j]);

  POperatorReport report;
  report.trials = trials;

  Vec pi_p(n);
  for (std::size_t j = 0; j < n; ++j) pi_p[j] = pi[j] * diag[j];
  const PiDecomposition pd = decompose(pi_p, pi);

  const bool upper = tail == Tail::upper;
  report.items.push_back({"parallel stretch of pi P",
                          pi_norm(pd.parallel, pi),
                          upper ? 1.0 + std::expm1(r) * mu
                                : 1.0 - r * mu + 0.5 * r * r * mu,
                          0.0});
  report.items.push_back({"perpendicular leak of pi P",
                          pi_norm(pd.perp, pi),
                          upper ? 2.0 * r * std::sqrt(mu)
                                : std::sqrt(2.0) * r * std::sqrt(mu),
                          0.0});

  double max_parallel = 0.0;
  double max_perp = 0.0;
  RandomStream rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    Vec raw(n);
    for (double& x : raw) x = rng.next_symmetric();
    Vec y = decompose(raw, pi).perp;
    const double norm = pi_norm(y, pi);
    if (norm < 1e-14) continue;
    for (double& x : y) x /= norm;
    Vec y_p(n);
    for (std::size_t j = 0; j < n; ++j) y_p[j] = y[j] * diag[j];
    const PiDecomposition yd = decompose(y_p, pi);
    max_parallel = std::max(max_parallel, pi_norm(yd.parallel, pi));
    max_perp = std::max(max_perp, pi_norm(yd.perp, pi));
  }
  report.items.push_back({"parallel leak of y P over y perp pi", max_parallel,
                          upper ? 2.0 * r * std::sqrt(mu) : r * std::sqrt(mu), 0.0});
  report.items.push_back({"perpendicular stretch of y P over y perp pi", max_perp,
                          upper ? std::exp(r) : 1.0, 0.0});

  report.min_margin = std::numeric_limits<double>::infinity();
  for (auto& item : report.items) {
    item.margin = item.rhs - item.lhs;
    report.min_margin = std::min(report.min_margin, item.margin);
    if (item.margin < -1e-10) {
      std::ostringstream msg;
      msg << "p_operator_check: item '" << item.name << "' fails: lhs " << item.lhs
          << " > rhs " << item.rhs << " (r = " << r << ", mu = " << mu
          << ", tail = " << tail_name(tail) << ")";
      throw CheckFailedError(msg.str());
    }
  }
  return report;
}

MgfTrace mgf_recurrence(double lambda, double mu, std::size_t t, double r, double beta0,
                        Tail tail) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw DegenerateGapError("mgf_recurrence: lambda must lie in [0, 1)");
  if (!(mu >= 0.0 && mu <= 1.0)) throw ValidationError("mgf_recurrence: mu must be in [0, 1]");
  if (t == 0) throw ValidationError("mgf_recurrence: t must be at least 1");
  if (beta0 < 0.0) throw ValidationError("mgf_recurrence: beta0 must be nonnegative");
  if (r < 0.0 || r > 0.5 + 1e-15)
    throw InvalidRError("mgf_recurrence: r must lie in [0, 1/2]");
  const double sqrt_lambda = std::sqrt(lambda);
  if (tail == Tail::upper) {
    // Needs e^r * lambda <= sqrt(lambda), so the perpendicular component
    // shrinks every step.
    if (lambda > 0.0 && r > 0.5 * std::log(1.0 / lambda) + 1e-12)
      throw InvalidRError("mgf_recurrence: upper tail needs r <= log(1/lambda)/2");
  } else {
    if (r > 1.0 - sqrt_lambda + 1e-12)
      throw InvalidRError("mgf_recurrence: lower tail needs r <= 1 - sqrt(lambda)");
  }

  MgfTrace trace;
  trace.tail = tail;
  trace.r = r;
  trace.lambda = lambda;
  trace.mu = mu;
  trace.beta0 = beta0;
  trace.alpha.assign(t + 1, 0.0);
  trace.beta.assign(t + 1, 0.0);
  trace.step_factors.assign(t, 0.0);
  trace.alpha[0] = 1.0;
  trace.beta[0] = beta0;

  const double sqrt_mu = std::sqrt(mu);
  const bool upper = tail == Tail::upper;
  const double a_par = upper ? 1.0 + std::expm1(r) * mu : 1.0 - r * mu + 0.5 * r * r * mu;
  const double a_from_perp = upper ? 2.0 * r * sqrt_mu : r * sqrt_mu;
  const double b_from_par =
      upper ? 2.0 * r * lambda * sqrt_mu : std::sqrt(2.0) * r * lambda * sqrt_mu;
  const double b_perp = upper ? sqrt_lambda : lambda;

  for (std::size_t i = 1; i <= t; ++i) {
    trace.alpha[i] = a_par * trace.alpha[i - 1] + a_from_perp * trace.beta[i - 1];
    trace.beta[i] = b_from_par * trace.alpha[i - 1] + b_perp * trace.beta[i - 1];
  }

  // Per-step factors A_i. Upper tail: A_1 = 1 + (e^r - 1) mu and
  // A_i = 1 + (e^r - 1) mu + 4 r^2 sqrt(mu) sum_{j=0}^{i-2} sqrt(lambda^{j+2} mu).
  // Lower tail: A_i = 1 - (r - r^2/2) mu + sqrt(2) r^2 mu sum_{k=1}^{i} lambda^{k/2}.
  trace.step_factor_product = 1.0;
  double geom_sum = 0.0;  // running sum of lambda^{j/2}
  for (std::size_t i = 1; i <= t; ++i) {
    double a_i;
    if (upper) {
      if (i == 1) {
        a_i = 1.0 + std::expm1(r) * mu;
      } else {
        geom_sum += std::pow(sqrt_lambda, static_cast<double>(i - 2));
        a_i = 1.0 + std::expm1(r) * mu + 4.0 * r * r * sqrt_mu * lambda * sqrt_mu * geom_sum;
      }
    } else {
      geom_sum += std::pow(sqrt_lambda, static_cast<double>(i));
      a_i = 1.0 - (r - 0.5 * r * r) * mu + std::sqrt(2.0) * r * r * mu * geom_sum;
    }
    trace.step_factors[i - 1] = a_i;
    trace.step_factor_product *= a_i;
  }

  const double td = static_cast<double>(t);
  const double inv_gap = 1.0 / (1.0 - lambda);
  if (upper) {
    trace.product_bound = std::exp((std::expm1(r) + 8.0 * r * r * inv_gap) * mu * td);
    trace.coefficient = 2.0 * std::max(1.0, 8.0 * r * sqrt_mu * inv_gap) *
                        std::sqrt(1.0 + beta0 * beta0);
  } else {
    trace.product_bound = std::exp((-r + 4.0 * r * r * inv_gap) * mu * td);
    // The closing geometric sum obeys sum_i lambda^{i-1} / prod_{j<=i} A_j
    // <= 4 / (1 - lambda), since every A_j >= max(1 - r, sqrt(lambda)).
    trace.coefficient =
        2.0 * std::max(1.0, 4.0 * r * sqrt_mu * inv_gap) * std::sqrt(1.0 + beta0 * beta0);
  }
  trace.bound = trace.coefficient * trace.product_bound;
  return trace;
}

namespace {

// Shared assembly: exponent and the proof-exact leading coefficient
// c = 2 max{1, 8 r sqrt(mu) / (1-lambda)} (upper) evaluated at r = choose_r.
BoundReport assemble_bound(std::string family, double lambda_for_r, double exponent,
                           double delta, double mu, double phi_norm, Tail tail) {
  BoundReport report;
  report.family = std::move(family);
  report.tail = tail;
  report.delta = delta;
  report.mu = mu;
  report.phi_norm = phi_norm;
  report.lambda = lambda_for_r;
  report.r = choose_r(lambda_for_r, delta, tail);
  const double inv_gap = 1.0 / (1.0 - lambda_for_r);
  const double scale = tail == Tail::upper ? 8.0 : 4.0;
  const double c = 2.0 * std::max(1.0, scale * report.r * std::sqrt(mu) * inv_gap);
  report.coefficient = c * phi_norm;
  report.exponent = exponent;
  report.value = report.coefficient * std::exp(exponent);
  report.vacuous = report.value >= 1.0;
  return report;
}

void validate_bound_inputs(double mu, double t, double delta, double phi_norm,
                           Tail tail) {
  if (!(mu > 0.0 && mu <= 1.0)) throw ValidationError("bound: mu must lie in (0, 1]");
  if (!(t >= 1.0)) throw ValidationError("bound: t must be at least 1");
  if (delta < 0.0) throw ValidationError("bound: delta must be nonnegative");
  if (tail == Tail::lower && delta > 1.0)
    throw ValidationError("bound: lower tail requires delta <= 1");
  if (phi_norm < 1.0 - 1e-12)
    throw ValidationError("bound: ||phi||_pi is at least 1 for any distribution");
}

double delta_power(double delta, Tail tail) {
  return (tail == Tail::upper && delta > 1.0) ? delta : delta * delta;
}

}  // namespace

BoundReport bound_spectral(double lambda, double mu, double t, double delta,
                           double phi_norm, Tail tail) {
  validate_bound_inputs(mu, t, delta, phi_norm, tail);
  if (!(lambda >= 0.0)) throw ValidationError("bound_spectral: lambda must be nonnegative");
  if (lambda >= 1.0) {
    // No spectral gap: the bound carries no information.
    BoundReport report;
    report.family = "spectral";
    report.tail = tail;
    report.delta = delta;
    report.lambda = lambda;
    report.mu = mu;
    report.t = t;
    report.phi_norm = phi_norm;
    report.coefficient = 1.0;
    report.exponent = 0.0;
    report.value = 1.0;
    report.vacuous = true;
    report.degenerate = true;
    return report;
  }
  const double exponent = -delta_power(delta, tail) * (1.0 - lambda) * mu * t / 36.0;
  BoundReport report = assemble_bound("spectral", lambda, exponent, delta, mu, phi_norm, tail);
  report.t = t;
  return report;
}

BoundReport bound_mixing(double T, double epsilon, double mu, double t, double delta,
                         double phi_norm, Tail tail, MixingBoundMode mode) {
  validate_bound_inputs(mu, t, delta, phi_norm, tail);
  if (!(T >= 1.0)) throw ValidationError("bound_mixing: T must be at least 1");
  double factor;
  if (mode == MixingBoundMode::standard) {
    if (epsilon > 0.125 + 1e-15)
      throw EpsilonTooLargeError("bound_mixing: standard mode requires epsilon <= 1/8");
    if (!(epsilon > 0.0)) throw ValidationError("bound_mixing: epsilon must be positive");
    factor = 1.0 / 72.0;
  } else {
    if (!(epsilon > 0.0 && epsilon < 0.5))
      throw ValidationError("bound_mixing: generalized mode requires epsilon in (0, 1/2)");
    factor = (1.0 - std::sqrt(2.0 * epsilon)) / 36.0;
  }
  const double exponent = -delta_power(delta, tail) * factor * mu * t / T;
  // The sub-walk chain M^T has spectral expansion at most sqrt(2 eps).
  const double lambda_bar = std::sqrt(2.0 * epsilon);
  BoundReport report =
      assemble_bound("mixing", lambda_bar, exponent, delta, mu, phi_norm, tail);
  report.T = T;
  report.epsilon = epsilon;
  report.t = t;
  return report;
}

BoundReport bound_union_variant(double T, double epsilon, double mu, double t,
                                double delta, double phi_norm, Tail tail,
                                MixingBoundMode mode) {
  BoundReport report = bound_mixing(T, epsilon, mu, t, delta, phi_norm, tail, mode);
  report.family = "union";
  report.coefficient *= T;
  report.value = T * report.value;
  report.vacuous = report.value >= 1.0;
  return report;
}

BoundReport bound_continuous(double T, double mu, double t, double delta,
                             double phi_norm, Tail tail) {
  validate_bound_inputs(mu, t, delta, phi_norm, tail);
  if (!(T > 0.0)) throw ValidationError("bound_continuous: T must be positive");
  const double exponent = -delta_power(delta, tail) * mu * t / (72.0 * T);
  // Coefficient at the epsilon = 1/8 operating point, lambda_bar = 1/2.
  BoundReport report = assemble_bound("continuous", 0.5, exponent, delta, mu, phi_norm, tail);
  report.T = T;
  report.epsilon = 0.125;
  report.t = t;
  return report;
}

BoundReport bound_raw_grid(const ChainModel& chain, const ProbabilityVector& phi,
                           const WeightSchedule& schedule, double delta,
                           const Vec& r_grid, Tail tail) {
  if (r_grid.empty()) throw ValidationError("bound_raw_grid: r grid must be nonempty");
  if (tail == Tail::lower && delta > 1.0)
    throw ValidationError("bound_raw_grid: lower tail requires delta <= 1");
  const double mu = schedule.mu();
  const double t = static_cast<double>(schedule.t());
  const double threshold =
      (tail == Tail::upper ? 1.0 + delta : 1.0 - delta) * mu * t;

  double best = std::numeric_limits<double>::infinity();
  double best_r = 0.0;
  for (double r : r_grid) {
    if (r < 0.0) throw ValidationError("bound_raw_grid: r values must be nonnegative");
    const double mgf = exact_mgf(chain, phi, schedule, r, tail);
    const double ratio = mgf / std::exp(sign_of(tail) * r * threshold);
    if (ratio < best) {
      best = ratio;
      best_r = r;
    }
  }

  BoundReport report;
  report.family = "raw";
  report.tail = tail;
  report.delta = delta;
  report.r = best_r;
  report.mu = mu;
  report.t = t;
  report.coefficient = best;
  report.exponent = 0.0;
  report.value = best;
  report.vacuous = best >= 1.0;
  return report;
}

}  // namespace mcct
