#include "mcct/cli_app.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcct/chain_format.hpp"
#include "mcct/constructions.hpp"
#include "mcct/montecarlo.hpp"
#include "mcct/rng.hpp"

namespace mcct {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit_flat(const ordered_json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      emit_flat(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    const bool object_rows =
        !j.empty() && std::all_of(j.begin(), j.end(),
                                  [](const ordered_json& el) { return el.is_object(); });
    if (object_rows) {
      for (std::size_t i = 0; i < j.size(); ++i) {
        out << prefix << "[" << i << "]";
        for (const auto& [key, value] : j[i].items()) out << " " << key << "=" << value.dump();
        out << "\n";
      }
    } else {
      out << prefix << " = " << j.dump() << "\n";
    }
  } else {
    out << prefix << " = " << j.dump() << "\n";
  }
}

void emit_report(const ordered_json& report, bool as_json, std::ostream& out) {
  if (as_json)
    out << report.dump(2) << "\n";
  else
    emit_flat(report, "", out);
}

ordered_json bound_to_json(const BoundReport& b) {
  ordered_json j;
  j["family"] = b.family;
  j["tail"] = tail_name(b.tail);
  j["delta"] = b.delta;
  j["coefficient"] = b.coefficient;
  j["exponent"] = b.exponent;
  j["value"] = b.value;
  j["vacuous"] = b.vacuous;
  ordered_json params;
  params["lambda"] = b.lambda;
  params["T"] = b.T;
  params["epsilon"] = b.epsilon;
  params["r"] = b.r;
  params["mu"] = b.mu;
  params["t"] = b.t;
  params["phi_norm"] = b.phi_norm;
  j["params"] = params;
  return j;
}

struct LoadedChain {
  ChainDocument doc;
  std::optional<ChainModel> chain;    // discrete mode
  std::optional<Generator> gen;       // continuous mode
  ProbabilityVector pi;
  ProbabilityVector phi;
  double phi_norm = 1.0;

  LoadedChain(ChainDocument d, ProbabilityVector stationary, ProbabilityVector start)
      : doc(std::move(d)), pi(std::move(stationary)), phi(std::move(start)) {}
};

LoadedChain load_chain(const std::string& path) {
  ChainDocument doc = parse_chain_document(read_file(path));
  if (doc.mode == ChainMode::discrete) {
    ChainModel chain = doc.chain();
    if (!chain.is_ergodic())
      throw NonErgodicError("chain in '" + path + "': " + chain.ergodicity().diagnostic);
    ProbabilityVector pi = stationary_distribution(chain);
    ProbabilityVector phi = doc.start ? doc.start_distribution() : pi;
    LoadedChain loaded(std::move(doc), pi, phi);
    loaded.chain = std::move(chain);
    loaded.phi_norm = phi_pi_norm(loaded.phi, loaded.pi);
    return loaded;
  }
  Generator gen = doc.generator();
  // The uniformized kernel shares the stationary distribution of the flow.
  const double q = gen.max_exit_rate();
  if (q == 0.0) throw NonErgodicError("generator is identically zero");
  Matrix kernel(gen.n(), gen.n(), 0.0);
  for (std::size_t i = 0; i < gen.n(); ++i)
    for (std::size_t j = 0; j < gen.n(); ++j)
      kernel(i, j) = (i == j ? 1.0 : 0.0) + gen(i, j) / q;
  ChainModel uniformized = ChainModel::create(std::move(kernel));
  if (!uniformized.is_ergodic())
    throw NonErgodicError("generator in '" + path +
                          "': " + uniformized.ergodicity().diagnostic);
  ProbabilityVector pi = stationary_distribution(uniformized);
  ProbabilityVector phi = doc.start ? doc.start_distribution() : pi;
  LoadedChain loaded(std::move(doc), pi, phi);
  loaded.gen = std::move(gen);
  loaded.phi_norm = phi_pi_norm(loaded.phi, loaded.pi);
  return loaded;
}

WeightSchedule doc_schedule(const LoadedChain& loaded, std::optional<double> t_flag) {
  if (!loaded.doc.weights)
    throw ValidationError("document has no weights block; this command needs one");
  const auto& rows = *loaded.doc.weights;
  if (t_flag) {
    const double t = *t_flag;
    if (t < 1.0 || t != std::floor(t))
      throw ValidationError("--t must be a positive integer for schedules");
    if (rows.size() == 1)
      return WeightSchedule::homogeneous(rows.front(), static_cast<std::size_t>(t),
                                         loaded.pi);
    if (static_cast<double>(rows.size()) != t)
      throw ValidationError("--t disagrees with the document's weights block");
  }
  return WeightSchedule::create(rows, loaded.pi);
}

Vec homogeneous_weight(const LoadedChain& loaded) {
  if (!loaded.doc.weights)
    throw ValidationError("document has no weights block; this command needs one");
  if (loaded.doc.weights->size() != 1)
    throw ValidationError("continuous-time commands need a single-row weights block");
  return loaded.doc.weights->front();
}

int finish_strict(bool strict, bool vacuous) { return (strict && vacuous) ? 2 : 0; }

// ---- subcommand payloads ----------------------------------------------

struct AnalyzeArgs {
  std::string chain_path;
  std::vector<double> epsilons{0.125};
  bool json = false;
};

int run_analyze(const AnalyzeArgs& args, std::ostream& out) {
  const LoadedChain loaded = load_chain(args.chain_path);
  ordered_json report;
  report["command"] = "analyze";
  report["mode"] = loaded.doc.mode == ChainMode::discrete ? "discrete" : "continuous";
  report["n"] = loaded.doc.n;
  report["pi"] = loaded.pi.entries();
  if (loaded.chain) {
    const SpectralReport spectral = spectral_expansion(*loaded.chain, loaded.pi);
    report["reversible"] = is_reversible(*loaded.chain, loaded.pi);
    report["lambda"] = spectral.lambda;
    report["gap"] = spectral.gap;
    report["lambda_R"] = spectral.lambda_R;
  }
  ordered_json mixing = ordered_json::array();
  for (double eps : args.epsilons) {
    const MixingReport m = loaded.chain
                               ? mixing_time_discrete(*loaded.chain, loaded.pi, eps)
                               : mixing_time_continuous(*loaded.gen, loaded.pi, eps);
    ordered_json row;
    row["epsilon"] = eps;
    row["T"] = m.time;
    row["worst_tv"] = m.worst_tv_at_time;
    row["worst_start"] = m.worst_start;
    mixing.push_back(row);
  }
  report["mixing"] = mixing;
  emit_report(report, args.json, out);
  return 0;
}

struct BoundArgs {
  std::string chain_path;
  std::string family = "mixing";
  double delta = 0.0;
  double t = 0.0;
  std::string tail = "upper";
  double epsilon = 0.125;
  bool json = false;
  bool strict = false;
};

int run_bound(const BoundArgs& args, std::ostream& out) {
  const LoadedChain loaded = load_chain(args.chain_path);
  const Tail tail = args.tail == "lower" ? Tail::lower : Tail::upper;

  double mu;
  if (loaded.doc.mode == ChainMode::discrete) {
    if (!loaded.doc.weights)
      throw ValidationError("document has no weights block; bounds need mu");
    // Only the mean enters the bound formulas.
    mu = WeightSchedule::create(*loaded.doc.weights, loaded.pi).mu();
  } else {
    mu = dot(homogeneous_weight(loaded), loaded.pi.entries());
  }

  BoundReport bound;
  if (args.family == "spectral") {
    if (!loaded.chain) throw ValidationError("family spectral needs a discrete document");
    const SpectralReport s = spectral_expansion(*loaded.chain, loaded.pi);
    bound = bound_spectral(s.lambda, mu, args.t, args.delta, loaded.phi_norm, tail);
  } else if (args.family == "mixing" || args.family == "union") {
    if (!loaded.chain)
      throw ValidationError("family " + args.family + " needs a discrete document");
    const MixingReport m = mixing_time_discrete(*loaded.chain, loaded.pi, args.epsilon);
    const MixingBoundMode mode = args.epsilon == 0.125 ? MixingBoundMode::standard
                                                       : MixingBoundMode::generalized;
    bound = args.family == "mixing"
                ? bound_mixing(m.time, args.epsilon, mu, args.t, args.delta,
                               loaded.phi_norm, tail, mode)
                : bound_union_variant(m.time, args.epsilon, mu, args.t, args.delta,
                                      loaded.phi_norm, tail, mode);
  } else if (args.family == "continuous") {
    if (!loaded.gen) throw ValidationError("family continuous needs a continuous document");
    const MixingReport m = mixing_time_continuous(*loaded.gen, loaded.pi, args.epsilon);
    bound = bound_continuous(m.time, mu, args.t, args.delta, loaded.phi_norm, tail);
  } else {
    throw ValidationError("unknown family '" + args.family + "'");
  }

  ordered_json report;
  report["command"] = "bound";
  report["bound"] = bound_to_json(bound);
  emit_report(report, args.json, out);
  return finish_strict(args.strict, bound.vacuous);
}

struct MgfArgs {
  std::string chain_path;
  double delta = 0.0;
  std::string tail = "upper";
  std::optional<double> t;
  bool json = false;
};

int run_mgf(const MgfArgs& args, std::ostream& out) {
  const LoadedChain loaded = load_chain(args.chain_path);
  if (!loaded.chain) throw ValidationError("mgf needs a discrete document");
  const Tail tail = args.tail == "lower" ? Tail::lower : Tail::upper;
  const WeightSchedule schedule = doc_schedule(loaded, args.t);

  const SpectralReport spectral = spectral_expansion(*loaded.chain, loaded.pi);
  const double r = choose_r(spectral.lambda, args.delta, tail);
  const double exact = exact_mgf(*loaded.chain, loaded.phi, schedule, r, tail);
  const double beta0 = pi_norm(decompose(loaded.phi.entries(), loaded.pi).perp, loaded.pi);
  MgfTrace trace =
      mgf_recurrence(spectral.lambda, schedule.mu(), schedule.t(), r, beta0, tail);
  trace.exact = exact;

  ordered_json report;
  report["command"] = "mgf";
  report["tail"] = tail_name(tail);
  report["delta"] = args.delta;
  report["lambda"] = spectral.lambda;
  report["mu"] = schedule.mu();
  report["t"] = schedule.t();
  report["r"] = r;
  report["beta0"] = beta0;
  report["exact"] = exact;
  report["recurrence_alpha_t"] = trace.alpha.back();
  report["recurrence_bound"] = trace.bound;
  report["recurrence_dominates"] = exact <= trace.bound * (1.0 + 1e-10);
  try {
    const double brute = brute_force_mgf(*loaded.chain, loaded.phi, schedule, r, tail);
    report["brute_force"] = brute;
    report["oracle_rel_error"] = std::abs(exact - brute) / std::max(1e-300, brute);
  } catch (const TooLargeError&) {
    report["brute_force"] = nullptr;
  }
  emit_report(report, args.json, out);
  return report["recurrence_dominates"].get<bool>() ? 0 : 1;
}

struct SimulateArgs {
  std::string chain_path;
  std::string family = "mixing";
  double delta = 0.0;
  std::string tail = "upper";
  long samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> t;
  double epsilon = 0.125;
  bool json = false;
  bool strict = false;
};

int run_simulate(const SimulateArgs& args, std::ostream& out) {
  const LoadedChain loaded = load_chain(args.chain_path);
  const Tail tail = args.tail == "lower" ? Tail::lower : Tail::upper;

  BoundReport bound;
  TailEstimate estimate;
  if (loaded.doc.mode == ChainMode::discrete) {
    const WeightSchedule schedule = doc_schedule(loaded, args.t);
    const double t = static_cast<double>(schedule.t());
    if (args.family == "spectral") {
      const SpectralReport s = spectral_expansion(*loaded.chain, loaded.pi);
      bound = bound_spectral(s.lambda, schedule.mu(), t, args.delta, loaded.phi_norm, tail);
    } else if (args.family == "mixing" || args.family == "union") {
      const MixingReport m = mixing_time_discrete(*loaded.chain, loaded.pi, args.epsilon);
      const MixingBoundMode mode = args.epsilon == 0.125 ? MixingBoundMode::standard
                                                         : MixingBoundMode::generalized;
      bound = args.family == "mixing"
                  ? bound_mixing(m.time, args.epsilon, schedule.mu(), t, args.delta,
                                 loaded.phi_norm, tail, mode)
                  : bound_union_variant(m.time, args.epsilon, schedule.mu(), t, args.delta,
                                        loaded.phi_norm, tail, mode);
    } else {
      throw ValidationError("family '" + args.family + "' does not apply to discrete documents");
    }
    estimate = empirical_tail(*loaded.chain, loaded.phi, schedule, args.delta,
                              args.samples, args.seed, tail);
  } else {
    if (args.family != "continuous")
      throw ValidationError("continuous documents support only --family continuous");
    if (!args.t) throw ValidationError("continuous simulate needs --t as the horizon");
    const Vec f = homogeneous_weight(loaded);
    const double mu = dot(f, loaded.pi.entries());
    const MixingReport m = mixing_time_continuous(*loaded.gen, loaded.pi, args.epsilon);
    bound = bound_continuous(m.time, mu, *args.t, args.delta, loaded.phi_norm, tail);
    estimate = empirical_tail_continuous(*loaded.gen, loaded.pi, loaded.phi, f, *args.t,
                                         args.delta, args.samples, args.seed, tail);
  }

  const bool dominated = estimate.p_hat - 3.0 * estimate.std_error <= bound.value;
  ordered_json report;
  report["command"] = "simulate";
  report["tail"] = tail_name(tail);
  report["delta"] = args.delta;
  report["samples"] = estimate.samples;
  report["seed"] = args.seed;
  report["threshold"] = estimate.threshold;
  report["hits"] = estimate.hits;
  report["p_hat"] = estimate.p_hat;
  report["std_error"] = estimate.std_error;
  report["ci_low"] = estimate.ci_low;
  report["ci_high"] = estimate.ci_high;
  report["bound"] = bound_to_json(bound);
  report["dominated"] = dominated;
  emit_report(report, args.json, out);
  if (!dominated) return 1;
  return finish_strict(args.strict, bound.vacuous);
}

struct VerifyArgs {
  std::string suite;
  std::string chain_path;
  int instances = 20;
  std::uint64_t seed = 0;
  double epsilon = 0.125;
  bool json = false;
};

int run_verify(const VerifyArgs& args, std::ostream& out) {
  ordered_json rows = ordered_json::array();
  bool all_pass = true;

  auto margin_row = [](int index, const MarginReport& m) {
    ordered_json row;
    row["instance"] = index;
    row["pass"] = m.pass;
    row["lhs"] = m.lhs;
    row["rhs"] = m.rhs;
    row["margin"] = m.margin;
    row["T"] = m.T;
    row["lambda"] = m.lambda;
    return row;
  };

  const bool chain_suite = args.suite == "claim1" || args.suite == "lemma3" ||
                           args.suite == "claim4" || args.suite == "sinclair" ||
                           args.suite == "m_operator";
  if (chain_suite) {
    const bool reversible_needed = args.suite == "lemma3" || args.suite == "sinclair";
    for (int i = 0; i < args.instances; ++i) {
      ChainModel chain = [&]() {
        if (!args.chain_path.empty()) {
          const LoadedChain loaded = load_chain(args.chain_path);
          if (!loaded.chain) throw ValidationError("verify needs a discrete document");
          return *loaded.chain;
        }
        const std::size_t n = 3 + static_cast<std::size_t>(i % 6);
        return build_random_chain(n, RandomStream::substream(args.seed, i).next_u64(),
                                  reversible_needed ? RandomChainKind::reversible
                                                    : RandomChainKind::general);
      }();
      const ProbabilityVector pi = stationary_distribution(chain);
      if (args.suite == "m_operator") {
        const MOperatorReport rep =
            m_operator_check(chain, pi, 100, RandomStream::substream(args.seed, 1000 + i).next_u64());
        ordered_json row;
        row["instance"] = i;
        row["pass"] = true;  // m_operator_check throws on violation
        row["lambda"] = rep.lambda;
        row["max_ratio"] = rep.max_ratio;
        row["max_parallel_leak"] = rep.max_parallel_leak;
        rows.push_back(row);
        continue;
      }
      MarginReport m;
      if (args.suite == "claim1")
        m = verify_claim_mix_to_spectral(chain, pi, args.epsilon);
      else if (args.suite == "lemma3")
        m = verify_lemma_reversible(chain, pi, args.epsilon);
      else if (args.suite == "sinclair")
        m = verify_sinclair_lower(chain, pi, args.epsilon);
      else
        m = verify_claim_contraction(chain, pi, args.epsilon, 1000,
                                     RandomStream::substream(args.seed, 1000 + i).next_u64());
      all_pass = all_pass && m.pass;
      rows.push_back(margin_row(i, m));
    }
  } else if (args.suite == "p_operator") {
    for (int i = 0; i < args.instances; ++i) {
      RandomStream rng = RandomStream::substream(args.seed, i);
      const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 7);
      const ProbabilityVector pi = random_distribution(n, rng);
      Vec f(n);
      for (double& x : f) x = rng.next_unit();
      const double r = 0.5 * rng.next_unit();
      for (Tail tail : {Tail::upper, Tail::lower}) {
        const POperatorReport rep = p_operator_check(pi, f, r, tail, 100, rng.next_u64());
        ordered_json row;
        row["instance"] = i;
        row["tail"] = tail_name(tail);
        row["pass"] = true;  // p_operator_check throws on violation
        row["r"] = r;
        row["min_margin"] = rep.min_margin;
        rows.push_back(row);
      }
    }
  } else {
    throw ValidationError("unknown suite '" + args.suite + "'");
  }

  ordered_json report;
  report["command"] = "verify";
  report["suite"] = args.suite;
  report["epsilon"] = args.epsilon;
  report["seed"] = args.seed;
  report["instances"] = rows;
  report["all_pass"] = all_pass;
  emit_report(report, args.json, out);
  return all_pass ? 0 : 1;
}

struct ConstructArgs {
  std::string kind;
  double p = 0.0;
  std::optional<double> t;
  std::optional<int> start;
  std::string chain_path;
};

int run_construct(const ConstructArgs& args, std::ostream& out) {
  ChainDocument doc;
  doc.mode = ChainMode::discrete;
  if (args.kind == "two-state") {
    if (!(args.p > 0.0)) throw ValidationError("construct two-state needs --p in (0, 1]");
    const TwoStateChain two = build_two_state(args.p);
    doc.n = 2;
    doc.matrix = two.chain.rows();
    if (args.t) {
      if (*args.t < 1.0 || *args.t != std::floor(*args.t))
        throw ValidationError("--t must be a positive integer");
      const auto t = static_cast<std::size_t>(*args.t);
      std::vector<Vec> weights(t, Vec{1.0, 0.0});
      doc.weights = std::move(weights);
    }
  } else if (args.kind == "split") {
    if (args.chain_path.empty()) throw ValidationError("construct split needs --chain");
    const LoadedChain loaded = load_chain(args.chain_path);
    if (!loaded.chain) throw ValidationError("construct split needs a discrete document");
    const ChainModel split = build_split_chain(*loaded.chain);
    doc.n = split.n();
    doc.matrix = split.rows();
  } else {
    throw ValidationError("unknown construct kind '" + args.kind + "'");
  }
  if (args.start) {
    if (*args.start < 0 || static_cast<std::size_t>(*args.start) >= doc.n)
      throw ValidationError("--start state out of range");
    Vec start(doc.n, 0.0);
    start[static_cast<std::size_t>(*args.start)] = 1.0;
    doc.start = std::move(start);
  }
  out << emit_chain_document(doc);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov chain concentration toolkit"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "stationary distribution, spectral expansion, mixing times");
  analyze_cmd->add_option("--chain", analyze.chain_path)->required();
  analyze_cmd->add_option("--epsilon", analyze.epsilons, "mixing thresholds");
  analyze_cmd->add_flag("--json", analyze.json);

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "evaluate a tail bound family");
  bound_cmd->add_option("--chain", bound.chain_path)->required();
  bound_cmd->add_option("--family", bound.family)
      ->check(CLI::IsMember({"mixing", "spectral", "union", "continuous"}));
  bound_cmd->add_option("--delta", bound.delta)->required();
  bound_cmd->add_option("--t", bound.t)->required();
  bound_cmd->add_option("--tail", bound.tail)->check(CLI::IsMember({"upper", "lower"}));
  bound_cmd->add_option("--epsilon", bound.epsilon);
  bound_cmd->add_flag("--json", bound.json);
  bound_cmd->add_flag("--strict", bound.strict);

  MgfArgs mgf;
  auto* mgf_cmd = app.add_subcommand("mgf", "exact vs recurrence vs brute-force MGF");
  mgf_cmd->add_option("--chain", mgf.chain_path)->required();
  mgf_cmd->add_option("--delta", mgf.delta)->required();
  mgf_cmd->add_option("--tail", mgf.tail)->check(CLI::IsMember({"upper", "lower"}));
  double mgf_t = 0.0;
  auto* mgf_t_opt = mgf_cmd->add_option("--t", mgf_t);
  mgf_cmd->add_flag("--json", mgf.json);

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "empirical tail vs bound");
  simulate_cmd->add_option("--chain", simulate.chain_path)->required();
  simulate_cmd->add_option("--family", simulate.family)
      ->check(CLI::IsMember({"mixing", "spectral", "union", "continuous"}));
  simulate_cmd->add_option("--delta", simulate.delta)->required();
  simulate_cmd->add_option("--tail", simulate.tail)->check(CLI::IsMember({"upper", "lower"}));
  simulate_cmd->add_option("--samples", simulate.samples)->required();
  simulate_cmd->add_option("--seed", simulate.seed)->required();
  double simulate_t = 0.0;
  auto* simulate_t_opt = simulate_cmd->add_option("--t", simulate_t);
  simulate_cmd->add_option("--epsilon", simulate.epsilon);
  simulate_cmd->add_flag("--json", simulate.json);
  simulate_cmd->add_flag("--strict", simulate.strict);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "run an inequality suite");
  verify_cmd->add_option("--suite", verify.suite)
      ->required()
      ->check(CLI::IsMember(
          {"claim1", "lemma3", "claim4", "sinclair", "p_operator", "m_operator"}));
  verify_cmd->add_option("--chain", verify.chain_path);
  verify_cmd->add_option("--instances", verify.instances);
  verify_cmd->add_option("--seed", verify.seed)->required();
  verify_cmd->add_option("--epsilon", verify.epsilon);
  verify_cmd->add_flag("--json", verify.json);

  ConstructArgs construct;
  auto* construct_cmd = app.add_subcommand("construct", "emit a canonical chain document");
  construct_cmd->add_option("--kind", construct.kind)
      ->required()
      ->check(CLI::IsMember({"two-state", "split"}));
  construct_cmd->add_option("--p", construct.p);
  double construct_t = 0.0;
  auto* construct_t_opt = construct_cmd->add_option("--t", construct_t);
  int construct_start = 0;
  auto* construct_start_opt = construct_cmd->add_option("--start", construct_start);
  construct_cmd->add_option("--chain", construct.chain_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze, out);
    if (*bound_cmd) return run_bound(bound, out);
    if (*mgf_cmd) {
      if (*mgf_t_opt) mgf.t = mgf_t;
      return run_mgf(mgf, out);
    }
    if (*simulate_cmd) {
      if (*simulate_t_opt) simulate.t = simulate_t;
      return run_simulate(simulate, out);
    }
    if (*verify_cmd) return run_verify(verify, out);
    if (*construct_cmd) {
      if (*construct_t_opt) construct.t = construct_t;
      if (*construct_start_opt) construct.start = construct_start;
      return run_construct(construct, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace mcct
