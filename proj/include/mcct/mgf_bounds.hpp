#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcct/mixing.hpp"

namespace mcct {

enum class Tail { upper, lower };  // X >= (1+d) mu t  /  X <= (1-d) mu t

const char* tail_name(Tail tail);

// Per-step weight functions f_i : [n] -> [0, 1] sharing the pi-mean mu.
// The paper's theorems need mu > 0; all-zero schedules (mu = 0) are accepted
// so the degenerate MGF identities stay expressible.
class WeightSchedule {
 public:
  static WeightSchedule create(std::vector<Vec> functions, const ProbabilityVector& pi);
  // The same f at every step, tiled t times.
  static WeightSchedule homogeneous(Vec f, std::size_t t, const ProbabilityVector& pi);

  std::size_t t() const { return functions_.size(); }
  std::size_t n() const { return functions_.front().size(); }
  double mu() const { return mu_; }
  const Vec& f(std::size_t step) const { return functions_[step]; }  // 0-based

 private:
  WeightSchedule(std::vector<Vec> functions, double mu)
      : functions_(std::move(functions)), mu_(mu) {}
  std::vector<Vec> functions_;
  double mu_;
};

// ||phi||_pi for a distribution phi.
double phi_pi_norm(const ProbabilityVector& phi, const ProbabilityVector& pi);

// E[e^{+-rX}] = || phi P_1 M P_2 ... M P_t ||_1 with P_i = diag(e^{+-r f_i}).
double exact_mgf(const ChainModel& chain, const ProbabilityVector& phi,
                 const WeightSchedule& schedule, double r, Tail tail);

// Independent oracle: explicit enumeration of all n^t walks. Throws
// TooLargeError when n^t exceeds 1e7.
double brute_force_mgf(const ChainModel& chain, const ProbabilityVector& phi,
                       const WeightSchedule& schedule, double r, Tail tail);

// r = min{1/2, log(1/lambda)/2, 1 - sqrt(lambda), (1-lambda) delta / 18}
// for the upper tail; the last term has denominator 8 for the lower tail.
// The log term is dropped when lambda = 0.
double choose_r(double lambda, double delta, Tail tail);

struct POperatorItem {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

struct POperatorReport {
  std::vector<POperatorItem> items;
  double min_margin = 0.0;
  int trials = 0;
};

// Checks the four stretch/leak inequalities of the diagonal weight operator
// P = diag(e^{+-rf}): items 1-2 exactly on pi, items 3-4 maximized over
// random y perp pi. Throws CheckFailedError naming the violated item.
POperatorReport p_operator_check(const ProbabilityVector& pi, const Vec& f, double r,
                                 Tail tail, int trials, std::uint64_t seed);

struct MgfTrace {
  Tail tail = Tail::upper;
  double r = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double beta0 = 0.0;
  Vec alpha;         // alpha[0..t], parallel-component envelope
  Vec beta;          // beta[0..t], perpendicular-component envelope
  Vec step_factors;  // A_i for i = 1..t, stored at index i-1
  double step_factor_product = 1.0;  // prod_i A_i evaluated exactly
  double product_bound = 1.0;        // closed-form bound on prod_i A_i
  double coefficient = 1.0;          // leading factor of the closed-form bound
  double bound = 1.0;                // coefficient * product_bound >= E[e^{+-rX}]
  std::optional<double> exact;       // filled by callers for comparison
};

// Two-variable envelope recurrence for the MGF of the accumulated weight,
// with the per-step factors A_i and the closed-form bound they roll up to.
// beta0 is ||phi_perp||_pi of the start distribution.
MgfTrace mgf_recurrence(double lambda, double mu, std::size_t t, double r, double beta0,
                        Tail tail);

struct BoundReport {
  std::string family;  // "spectral" | "mixing" | "union" | "continuous" | "raw"
  Tail tail = Tail::upper;
  double delta = 0.0;
  double coefficient = 1.0;  // leading constant, phi-norm included
  double exponent = 0.0;     // <= 0; the bound value is coefficient * e^exponent
  double value = 1.0;
  bool vacuous = false;    // value >= 1 carries no information
  bool degenerate = false; // lambda >= 1 fallback, value pinned to 1
  // Parameters the bound was evaluated with (NaN when not applicable).
  double lambda = 0.0;
  double T = 0.0;
  double epsilon = 0.0;
  double r = 0.0;
  double mu = 0.0;
  double t = 0.0;
  double phi_norm = 1.0;
};

// Tail bound parameterized by the spectral expansion:
// exponent -delta^2 (1-lambda) mu t / 36 for delta <= 1, -delta (...) for
// delta > 1 (upper tail). lambda >= 1 yields the vacuous value-1 report.
BoundReport bound_spectral(double lambda, double mu, double t, double delta,
                           double phi_norm, Tail tail);

enum class MixingBoundMode {
  standard,     // exponent factor 1/72, requires epsilon <= 1/8
  generalized,  // exponent factor (1 - sqrt(2 eps)) / 36, any epsilon < 1/2
};

// Tail bound parameterized by the mixing time T = T(eps).
BoundReport bound_mixing(double T, double epsilon, double mu, double t, double delta,
                         double phi_norm, Tail tail,
                         MixingBoundMode mode = MixingBoundMode::standard);

// Union-bound variant: identical exponent, coefficient multiplied by T.
BoundReport bound_union_variant(double T, double epsilon, double mu, double t,
                                double delta, double phi_norm, Tail tail,
                                MixingBoundMode mode = MixingBoundMode::standard);

// Continuous-time bound: the discrete standard form with real-valued T and t.
BoundReport bound_continuous(double T, double mu, double t, double delta,
                             double phi_norm, Tail tail);

// "Raw" mode: best Chernoff ratio exact_mgf(r) / e^{r (1 +- delta) mu t}
// over a user-supplied grid of r values.
BoundReport bound_raw_grid(const ChainModel& chain, const ProbabilityVector& phi,
                           const WeightSchedule& schedule, double delta,
                           const Vec& r_grid, Tail tail);

}  // namespace mcct
