#include "sqpc/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace sqpc {

std::pair<double, double> wilson95(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 97.5th percentile of the standard normal
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// The two closed-form attacks leave the in-flight system in a classical
// mixture of computational basis states; detection probabilities follow from
// enumerating that mixture against the check predicates.
struct BasisMix {
  // (first bit, second bit, probability): travel/partner on a first-phase
  // leg, Alice's/Bob's particle on the pair leg.
  std::vector<std::array<std::int64_t, 2>> states;
  std::vector<Rational> probs;

  void add(int a, int b, Rational p) {
    states.push_back({a, b});
    probs.push_back(p);
  }
};

std::optional<BasisMix> mixture_after_attack(const AttackStrategy& attack) {
  const Rational half(1, 2);
  BasisMix mix;
  switch (attack.kind) {
    case AttackKind::InterceptResend:
      if (attack.scope == AttackScope::T5T6Leg) {
        mix.add(attack.fake_bits.at(0), attack.fake_bits.at(1), Rational(1));
      } else {
        // Fake travels on; TP's retained partner is maximally mixed.
        mix.add(attack.fake_bits.at(0), 0, half);
        mix.add(attack.fake_bits.at(0), 1, half);
      }
      return mix;
    case AttackKind::MeasureResend:
      // Z-measuring either (or both) halves of |psi+> collapses to one of the
      // anti-correlated basis pairs.
      mix.add(0, 1, half);
      mix.add(1, 0, half);
      return mix;
    default:
      return std::nullopt;
  }
}

// P(Bell outcome != psi+) for the basis pair |x y>.
Rational bell_error(std::int64_t x, std::int64_t y) {
  return x == y ? Rational(1) : Rational(1, 2);
}

std::optional<Rational> try_analytic(const AttackStrategy& attack) {
  const auto mix = mixture_after_attack(attack);
  if (!mix) return std::nullopt;
  const Rational quarter(1, 4), half(1, 2);
  Rational total(0);
  for (std::size_t i = 0; i < mix->states.size(); ++i) {
    const auto [x, y] = mix->states[i];
    Rational err(0);
    if (attack.scope == AttackScope::T5T6Leg) {
      // The four (Alice, Bob) cases are equally likely. In cases 2-4 every
      // party measurement reads the basis value directly, so each check
      // predicate reduces to x == y.
      err = quarter * bell_error(x, y);
      if (x == y) err = err + quarter + quarter + quarter;
    } else {
      // Measure: the party reads and resends x, so the returned bit always
      // matches; the error fires when the partner bit y equals it.
      // Reflect: Bell measurement of |x y>.
      const Rational measure_err = x == y ? Rational(1) : Rational(0);
      err = half * measure_err + half * bell_error(x, y);
    }
    total = total + mix->probs[i] * err;
  }
  return total;
}

}  // namespace

Rational analytic_detection(const AttackStrategy& attack) {
  attack.validate();
  const auto r = try_analytic(attack);
  if (!r)
    throw std::invalid_argument("analytic_detection: no closed form for attack '" + attack.id() +
                                "'");
  return *r;
}

std::uint64_t exposures_per_run(const AttackStrategy& attack, std::size_t n) {
  switch (attack.kind) {
    case AttackKind::InterceptResend:
    case AttackKind::MeasureResend:
    case AttackKind::EntangleMeasure:
      return attack.scope == AttackScope::T5T6Leg ? 8 * n : 4 * n;
    default:
      return 0;
  }
}

ProtocolConfig trial_config(const ProtocolConfig& config, std::uint64_t trial) {
  ProtocolConfig out = config;
  out.seed = RandomStream(config.seed).derive(trial).derive(1).seed();
  return out;
}

PrivateInputs trial_inputs(const ProtocolConfig& config, const InputsSpec& spec,
                           std::uint64_t trial) {
  if (spec.mode == InputsSpec::Mode::Explicit) {
    if (!spec.fixed)
      throw std::invalid_argument("trial_inputs: explicit inputs mode without inputs");
    return *spec.fixed;
  }
  RandomStream rng = RandomStream(config.seed).derive(trial);
  PrivateInputs in = PrivateInputs::random_inputs(config.n, rng, config.tp2_enabled);
  if (spec.mode == InputsSpec::Mode::RandomEqual) {
    in.m_b = in.m_a;
  } else if (spec.mode == InputsSpec::Mode::RandomUnequal && in.m_a == in.m_b) {
    const std::size_t flip = static_cast<std::size_t>(rng.integer(config.n));
    in.m_b.set(flip, 1 - in.m_b.at(flip));
  }
  return in;
}

namespace {

struct TrialOutcome {
  VerdictKind kind = VerdictKind::Aborted;
  bool correct = false;
  bool tp2_consistent = false;
  bool security_abort = false;
  std::map<CheckCategory, CheckStat> checks;
  DetectionCounters detection;
};

TrialOutcome run_trial(const ProtocolConfig& config, std::uint64_t trial,
                       const InputsSpec& spec) {
  const PrivateInputs inputs = trial_inputs(config, spec, trial);
  SessionResult r = run_session(trial_config(config, trial), inputs);

  TrialOutcome out;
  out.kind = r.verdict.kind;
  out.checks = std::move(r.checks);
  out.detection = r.detection;
  if (r.verdict.kind == VerdictKind::Aborted) {
    out.security_abort = r.verdict.abort && r.verdict.abort->kind == AbortReason::Kind::Security;
  } else {
    std::optional<std::size_t> diff;
    for (std::size_t j = 0; j < inputs.m_a.size(); ++j) {
      if (inputs.m_a.at(j) != inputs.m_b.at(j)) {
        diff = j;
        break;
      }
    }
    out.correct = diff ? (r.verdict.kind == VerdictKind::NotEqual &&
                          r.verdict.first_difference == diff)
                       : r.verdict.kind == VerdictKind::Equal;
  }
  out.tp2_consistent = r.tp2 && r.tp2->consistent_with_announcement;
  return out;
}

}  // namespace

MonteCarloSummary monte_carlo(const ProtocolConfig& config, std::uint64_t trials,
                              unsigned parallelism, const InputsSpec& inputs) {
  if (trials == 0) throw std::invalid_argument("monte_carlo: trials must be at least 1");
  config.validate();
  if (inputs.mode == InputsSpec::Mode::Explicit) {
    if (!inputs.fixed)
      throw std::invalid_argument("monte_carlo: explicit inputs mode without inputs");
    inputs.fixed->validate(config);
  }

  std::vector<TrialOutcome> outcomes(trials);
  const unsigned workers =
      std::max<unsigned>(1, std::min<std::uint64_t>(parallelism, trials));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < trials; ++i) outcomes[i] = run_trial(config, i, inputs);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t i = w; i < trials; i += workers)
          outcomes[i] = run_trial(config, i, inputs);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Fixed-order reduction over integer counters: parallelism-invariant.
  MonteCarloSummary s;
  s.config = config;
  s.trials = trials;
  for (const auto& o : outcomes) {
    switch (o.kind) {
      case VerdictKind::Equal: ++s.equal; break;
      case VerdictKind::NotEqual: ++s.not_equal; break;
      case VerdictKind::Aborted: ++s.aborted; break;
    }
    if (o.correct) ++s.correct_verdicts;
    if (o.tp2_consistent) ++s.tp2_consistent;
    for (const auto& [cat, stat] : o.checks) s.checks[cat].merge(stat);
    s.detection.runs += 1;
    if (o.security_abort) ++s.detection.aborted_runs;
    s.detection.trials += o.detection.exposures;
    s.detection.detected += o.detection.detected;
  }

  s.detection.attack_id = config.attack.id();
  s.detection.rate = s.detection.trials == 0
                         ? 0.0
                         : static_cast<double>(s.detection.detected) / s.detection.trials;
  s.detection.wilson_interval_95 = wilson95(s.detection.detected, s.detection.trials);
  s.detection.abort_rate =
      s.detection.runs == 0 ? 0.0
                            : static_cast<double>(s.detection.aborted_runs) / s.detection.runs;
  if (auto analytic = try_analytic(config.attack)) {
    s.detection.analytic = *analytic;
    const double p = analytic->value();
    const auto k = static_cast<double>(exposures_per_run(config.attack, config.n));
    s.detection.abort_estimate = 1.0 - std::pow(1.0 - p, k);
  }
  return s;
}

// --- entangle-measure leakage ------------------------------------------------

LeakageRow leakage_report(const EntangleMeasureEvaluation& evaluation, std::string regime,
                          std::string context) {
  LeakageRow row;
  row.regime = std::move(regime);
  row.context = std::move(context);
  row.max_induced_error = evaluation.max_induced_error;
  row.max_probe_distance = evaluation.max_probe_distance;
  row.pass = !(evaluation.max_induced_error < kZeroErrorEps &&
               evaluation.max_probe_distance > kLeakageEps);
  return row;
}

void LeakageAggregate::add(const LeakageRow& row, const EntangleMeasureEvaluation& evaluation) {
  ++samples;
  if (!row.pass) ++violations;
  if (evaluation.max_induced_error < kZeroErrorEps) {
    ++zero_error_samples;
    max_distance_zero_error = std::max(max_distance_zero_error, evaluation.max_probe_distance);
  }
  if (evaluation.max_probe_distance > kLeakageEps) {
    min_induced_error_leaky = min_induced_error_leaky
                                  ? std::min(*min_induced_error_leaky,
                                             evaluation.max_induced_error)
                                  : evaluation.max_induced_error;
  }
}

std::vector<LeakageAggregate> leakage_sweep(std::size_t samples_per_cell, std::size_t probe_dim,
                                            std::uint64_t seed) {
  if (samples_per_cell == 0)
    throw std::invalid_argument("leakage_sweep: need at least one sample per cell");
  const std::array<const char*, 3> regimes = {"e-and-f", "e-only", "f-only"};
  const std::array<std::pair<EmContext, const char*>, 2> contexts = {
      {{EmContext::T1, "t1"}, {EmContext::T5T6, "t5t6"}}};

  RandomStream root(seed);
  std::vector<LeakageAggregate> out;
  std::uint64_t cell = 0;
  for (const char* regime : regimes) {
    for (const auto& [context, context_name] : contexts) {
      RandomStream rng = root.derive(cell++);
      LeakageAggregate agg;
      agg.regime = regime;
      agg.context = context_name;
      for (std::size_t i = 0; i < samples_per_cell; ++i) {
        AttackStrategy attack;
        attack.kind = AttackKind::EntangleMeasure;
        attack.scope =
            context == EmContext::T1 ? AttackScope::T1Leg : AttackScope::T5T6Leg;
        attack.probe_dim = probe_dim;
        const bool with_e = regime != std::string("f-only");
        const bool with_f = regime != std::string("e-only");
        if (with_e) attack.e_matrix = random_unitary(2 * probe_dim, rng);
        if (with_f) attack.f_matrix = random_unitary(2 * probe_dim, rng);
        const auto evaluation = evaluate_entangle_measure(attack, context);
        agg.add(leakage_report(evaluation, regime, context_name), evaluation);
      }
      out.push_back(std::move(agg));
    }
  }
  return out;
}

}  // namespace sqpc
