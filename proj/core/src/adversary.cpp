#include "sqpc/adversary.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sqpc/rng.hpp"

namespace sqpc {

namespace {

constexpr double kBranchEps = 1e-12;

// Probability of `outcome` for a Z measurement of `qubit`; collapses the
// state only when that probability is non-negligible.
double z_branch(StateVector& st, std::size_t qubit, int outcome) {
  const double p1 = prob_one(st, qubit);
  const double p = outcome == 1 ? p1 : 1.0 - p1;
  if (p >= kBranchEps) collapse_z(st, qubit, outcome);
  return p;
}

std::size_t probe_qubit_count(std::size_t probe_dim) {
  if (probe_dim == 2) return 1;
  if (probe_dim == 4) return 2;
  throw std::invalid_argument("probe_dim must be 2 or 4");
}

void check_matrix_size(const std::vector<Complex>& m, std::size_t probe_dim, const char* name) {
  if (m.empty()) return;  // identity
  const std::size_t d = 2 * probe_dim;
  if (m.size() != d * d)
    throw std::invalid_argument(std::string(name) + " must be (2*probe_dim)^2 entries");
}

std::string fake_label(const std::vector<int>& bits) {
  std::string s = "|";
  for (int b : bits) s += (b ? '1' : '0');
  return s + ">";
}

}  // namespace

const char* to_string(AttackKind k) {
  switch (k) {
    case AttackKind::None: return "none";
    case AttackKind::InterceptResend: return "intercept-resend";
    case AttackKind::MeasureResend: return "measure-resend";
    case AttackKind::EntangleMeasure: return "entangle-measure";
    case AttackKind::DishonestTPSource: return "dishonest-tp-source";
  }
  throw std::logic_error("unknown AttackKind");
}

const char* to_string(AttackScope s) {
  switch (s) {
    case AttackScope::T1Leg: return "t1";
    case AttackScope::T3Leg: return "t3";
    case AttackScope::T5T6Leg: return "t5t6";
  }
  throw std::logic_error("unknown AttackScope");
}

std::string AttackStrategy::id() const {
  std::string base;
  switch (kind) {
    case AttackKind::None: return "none";
    case AttackKind::InterceptResend:
      base = std::string("intercept-resend(") + to_string(scope) + ", fake=" + fake_label(fake_bits) + ")";
      break;
    case AttackKind::MeasureResend:
      base = std::string("measure-resend(") + to_string(scope) + ")";
      break;
    case AttackKind::EntangleMeasure:
      base = std::string("entangle-measure(") + to_string(scope) +
             ", probe_dim=" + std::to_string(probe_dim) + ")";
      break;
    case AttackKind::DishonestTPSource:
      base = "dishonest-tp-source";
      break;
  }
  if (attacker == Attacker::DishonestBob) return "dishonest-bob:" + base;
  return base;
}

void AttackStrategy::validate() const {
  switch (kind) {
    case AttackKind::None:
      break;
    case AttackKind::InterceptResend: {
      const std::size_t want = scope == AttackScope::T5T6Leg ? 2 : 1;
      if (fake_bits.size() != want)
        throw std::invalid_argument("intercept-resend: need " + std::to_string(want) +
                                    " fake bit(s) for this scope");
      for (int b : fake_bits)
        if (b != 0 && b != 1) throw std::invalid_argument("intercept-resend: fake bits must be 0/1");
      break;
    }
    case AttackKind::MeasureResend:
      break;
    case AttackKind::EntangleMeasure:
      probe_qubit_count(probe_dim);
      check_matrix_size(e_matrix, probe_dim, "e_matrix");
      check_matrix_size(f_matrix, probe_dim, "f_matrix");
      break;
    case AttackKind::DishonestTPSource: {
      if (source_state.size() != 4)
        throw std::invalid_argument("dishonest-tp-source: source_state must have 4 amplitudes");
      double n2 = 0.0;
      for (const auto& a : source_state) n2 += std::norm(a);
      if (std::abs(n2 - 1.0) > 1e-12)
        throw std::invalid_argument("dishonest-tp-source: source_state is not normalized");
      break;
    }
  }
  if (attacker == Attacker::DishonestBob) {
    if (kind == AttackKind::DishonestTPSource)
      throw std::invalid_argument("a dishonest party cannot forge the source");
    if (scope != AttackScope::T1Leg)
      throw std::invalid_argument("a dishonest Bob attacks the other party's leg (t1)");
  }
}

std::size_t intercept_with_fake(StateVector& reg, int fake_bit) {
  const std::size_t idx = reg.num_qubits();
  reg = reg.tensor(fresh_qubit(fake_bit));
  return idx;
}

ZOutcome transit_measure(StateVector& reg, std::size_t travel, RandomStream& rng) {
  return measure_z(reg, travel, rng);
}

std::vector<std::size_t> append_probe(StateVector& reg, std::size_t probe_dim) {
  const std::size_t pq = probe_qubit_count(probe_dim);
  const std::size_t first = reg.num_qubits();
  reg = reg.tensor(StateVector(pq));
  std::vector<std::size_t> idx(pq);
  std::iota(idx.begin(), idx.end(), first);
  return idx;
}

void apply_leg_unitary(StateVector& reg, const std::vector<Complex>& matrix, std::size_t travel,
                       const std::vector<std::size_t>& probe) {
  if (matrix.empty()) return;  // identity
  std::vector<std::size_t> targets;
  targets.reserve(1 + probe.size());
  targets.push_back(travel);
  targets.insert(targets.end(), probe.begin(), probe.end());
  apply_unitary(reg, matrix, targets);
}

std::vector<Complex> em_identity(std::size_t probe_dim) {
  const std::size_t d = 2 * probe_dim;
  std::vector<Complex> m(d * d, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < d; ++i) m[i * d + i] = Complex(1.0, 0.0);
  return m;
}

std::vector<Complex> em_cnot_data_to_probe(std::size_t probe_dim) {
  const std::size_t d = 2 * probe_dim;
  std::vector<Complex> m(d * d, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t j = i;
    // data bit set -> flip the probe's most significant qubit
    if (i & probe_dim) j = i ^ (probe_dim >> 1);
    m[j * d + i] = Complex(1.0, 0.0);
  }
  return m;
}

std::vector<Complex> random_unitary(std::size_t dim, RandomStream& rng) {
  std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
  for (std::size_t c = 0; c < dim; ++c) {
    while (true) {
      for (std::size_t r = 0; r < dim; ++r) cols[c][r] = Complex(rng.gaussian(), rng.gaussian());
      // Gram-Schmidt against the finished columns.
      for (std::size_t p = 0; p < c; ++p) {
        Complex dot(0.0, 0.0);
        for (std::size_t r = 0; r < dim; ++r) dot += std::conj(cols[p][r]) * cols[c][r];
        for (std::size_t r = 0; r < dim; ++r) cols[c][r] -= dot * cols[p][r];
      }
      double n2 = 0.0;
      for (std::size_t r = 0; r < dim; ++r) n2 += std::norm(cols[c][r]);
      if (n2 > 1e-12) {  // redraw on a (measure-zero) degenerate draw
        const double inv = 1.0 / std::sqrt(n2);
        for (std::size_t r = 0; r < dim; ++r) cols[c][r] *= inv;
        break;
      }
    }
  }
  std::vector<Complex> m(dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m[r * dim + c] = cols[c][r];
  return m;
}

namespace {

void finalize_evaluation(EntangleMeasureEvaluation& ev,
                         std::vector<std::pair<std::string, DensityLikeProbe>> probes) {
  ev.probe_states = std::move(probes);
  for (const auto& [cat, err] : ev.induced_error)
    ev.max_induced_error = std::max(ev.max_induced_error, err);
  for (std::size_t i = 0; i < ev.probe_states.size(); ++i)
    for (std::size_t j = i + 1; j < ev.probe_states.size(); ++j)
      ev.max_probe_distance = std::max(
          ev.max_probe_distance,
          trace_distance(ev.probe_states[i].second, ev.probe_states[j].second));
}

EntangleMeasureEvaluation evaluate_t1(const AttackStrategy& atk) {
  const std::size_t pq = probe_qubit_count(atk.probe_dim);
  StateVector base = prepare_bell(BellKind::PsiPlus).tensor(StateVector(pq));
  const std::size_t t1 = 0, t2 = 1;
  std::vector<std::size_t> probe(pq);
  std::iota(probe.begin(), probe.end(), std::size_t{2});
  apply_leg_unitary(base, atk.e_matrix, t1, probe);

  EntangleMeasureEvaluation ev;
  std::vector<std::pair<std::string, DensityLikeProbe>> probes;

  // Party measures: she records a, resends |a> (the collapsed qubit), TP
  // Z-measures the returned qubit (t) and the retained partner (p); the
  // honest correlation is t == a, p == 1 - a.
  double err_m = 0.0;
  for (int a = 0; a < 2; ++a) {
    StateVector sa = base;
    const double pa = z_branch(sa, t1, a);
    if (pa < kBranchEps) continue;
    apply_leg_unitary(sa, atk.f_matrix, t1, probe);
    for (int t = 0; t < 2; ++t) {
      StateVector st = sa;
      const double pt = z_branch(st, t1, t);
      if (pt < kBranchEps) continue;
      for (int p = 0; p < 2; ++p) {
        StateVector sp = st;
        const double pp = z_branch(sp, t2, p);
        if (pp < kBranchEps) continue;
        if (t != a || p == a) err_m += pa * pt * pp;
        probes.emplace_back("M:a=" + std::to_string(a) + ",t=" + std::to_string(t) +
                                ",p=" + std::to_string(p),
                            partial_trace(sp, probe));
      }
    }
  }
  ev.induced_error[CheckCategory::T1Measure] = err_m;

  // Party reflects: TP Bell-measures (returned, partner); anything but the
  // prepared Bell state is an error.
  StateVector sr = base;
  apply_leg_unitary(sr, atk.f_matrix, t1, probe);
  const auto bp = bell_probabilities(sr, t1, t2);
  double err_r = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (bp[k] < kBranchEps) continue;
    if (kAllBellKinds[k] != BellKind::PsiPlus) err_r += bp[k];
    StateVector sk = sr;
    collapse_bell(sk, t1, t2, kAllBellKinds[k]);
    probes.emplace_back(std::string("R:bell=") + to_string(kAllBellKinds[k]),
                        partial_trace(sk, probe));
  }
  ev.induced_error[CheckCategory::T1Reflect] = err_r;

  finalize_evaluation(ev, std::move(probes));
  return ev;
}

EntangleMeasureEvaluation evaluate_t56(const AttackStrategy& atk) {
  const std::size_t pq = probe_qubit_count(atk.probe_dim);
  StateVector base = prepare_bell(BellKind::PsiPlus).tensor(StateVector(pq)).tensor(StateVector(pq));
  const std::size_t t5 = 0, t6 = 1;
  std::vector<std::size_t> probe_a(pq), probe_b(pq);
  std::iota(probe_a.begin(), probe_a.end(), std::size_t{2});
  std::iota(probe_b.begin(), probe_b.end(), std::size_t{2} + pq);
  std::vector<std::size_t> keep = probe_a;
  keep.insert(keep.end(), probe_b.begin(), probe_b.end());

  // Each travelling particle is attacked with its own probe register.
  apply_leg_unitary(base, atk.e_matrix, t5, probe_a);
  apply_leg_unitary(base, atk.e_matrix, t6, probe_b);

  auto apply_f = [&](StateVector& st) {
    apply_leg_unitary(st, atk.f_matrix, t5, probe_a);
    apply_leg_unitary(st, atk.f_matrix, t6, probe_b);
  };

  EntangleMeasureEvaluation ev;
  std::vector<std::pair<std::string, DensityLikeProbe>> probes;

  // (reflect, reflect): Bell check on the returned pair.
  {
    StateVector s = base;
    apply_f(s);
    const auto bp = bell_probabilities(s, t5, t6);
    double err = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      if (bp[k] < kBranchEps) continue;
      if (kAllBellKinds[k] != BellKind::PsiPlus) err += bp[k];
      StateVector sk = s;
      collapse_bell(sk, t5, t6, kAllBellKinds[k]);
      probes.emplace_back(std::string("RR:bell=") + to_string(kAllBellKinds[k]),
                          partial_trace(sk, keep));
    }
    ev.induced_error[CheckCategory::Case1] = err;
  }

  // (measure, reflect): TP Z-measures the particle Bob reflected; it must be
  // opposite to Alice's recorded bit.
  {
    double err = 0.0;
    for (int a5 = 0; a5 < 2; ++a5) {
      StateVector sa = base;
      const double pa = z_branch(sa, t5, a5);
      if (pa < kBranchEps) continue;
      apply_f(sa);
      for (int b6 = 0; b6 < 2; ++b6) {
        StateVector sb = sa;
        const double pb = z_branch(sb, t6, b6);
        if (pb < kBranchEps) continue;
        if (b6 == a5) err += pa * pb;
        probes.emplace_back("MR:a5=" + std::to_string(a5) + ",b6=" + std::to_string(b6),
                            partial_trace(sb, keep));
      }
    }
    ev.induced_error[CheckCategory::Case2] = err;
  }

  // (reflect, measure): symmetric.
  {
    double err = 0.0;
    for (int a6 = 0; a6 < 2; ++a6) {
      StateVector sa = base;
      const double pa = z_branch(sa, t6, a6);
      if (pa < kBranchEps) continue;
      apply_f(sa);
      for (int b5 = 0; b5 < 2; ++b5) {
        StateVector sb = sa;
        const double pb = z_branch(sb, t5, b5);
        if (pb < kBranchEps) continue;
        if (b5 == a6) err += pa * pb;
        probes.emplace_back("RM:a6=" + std::to_string(a6) + ",b5=" + std::to_string(b5),
                            partial_trace(sb, keep));
      }
    }
    ev.induced_error[CheckCategory::Case3] = err;
  }

  // (measure, measure): TP re-measures both returned qubits; they must match
  // the recorded bits and the pair must be complementary.
  {
    double err = 0.0;
    for (int a5 = 0; a5 < 2; ++a5) {
      StateVector s5 = base;
      const double p5 = z_branch(s5, t5, a5);
      if (p5 < kBranchEps) continue;
      for (int a6 = 0; a6 < 2; ++a6) {
        StateVector s6 = s5;
        const double p6 = z_branch(s6, t6, a6);
        if (p6 < kBranchEps) continue;
        apply_f(s6);
        for (int b5 = 0; b5 < 2; ++b5) {
          StateVector r5 = s6;
          const double q5 = z_branch(r5, t5, b5);
          if (q5 < kBranchEps) continue;
          for (int b6 = 0; b6 < 2; ++b6) {
            StateVector r6 = r5;
            const double q6 = z_branch(r6, t6, b6);
            if (q6 < kBranchEps) continue;
            if (b5 != a5 || b6 != a6 || a5 == a6) err += p5 * p6 * q5 * q6;
            probes.emplace_back("MM:a5=" + std::to_string(a5) + ",a6=" + std::to_string(a6) +
                                    ",b5=" + std::to_string(b5) + ",b6=" + std::to_string(b6),
                                partial_trace(r6, keep));
          }
        }
      }
    }
    ev.induced_error[CheckCategory::Case4] = err;
  }

  finalize_evaluation(ev, std::move(probes));
  return ev;
}

}  // namespace

EntangleMeasureEvaluation evaluate_entangle_measure(const AttackStrategy& attack,
                                                    EmContext context) {
  if (attack.kind != AttackKind::EntangleMeasure)
    throw std::invalid_argument("evaluate_entangle_measure: attack kind must be entangle-measure");
  attack.validate();
  return context == EmContext::T1 ? evaluate_t1(attack) : evaluate_t56(attack);
}

}  // namespace sqpc
