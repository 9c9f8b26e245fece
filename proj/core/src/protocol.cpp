#include "sqpc/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqpc {

const char* to_string(Action a) { return a == Action::Measure ? "measure" : "reflect"; }

const char* to_string(ChoiceMode m) { return m == ChoiceMode::Balanced ? "balanced" : "iid"; }

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Equal: return "equal";
    case VerdictKind::NotEqual: return "not-equal";
    case VerdictKind::Aborted: return "aborted";
  }
  throw std::logic_error("unknown VerdictKind");
}

CheckCategory check_category_from_string(const std::string& name) {
  for (CheckCategory c : kAllCheckCategories)
    if (name == to_string(c)) return c;
  throw std::invalid_argument("unknown check category '" + name + "'");
}

std::string AbortReason::to_string() const {
  switch (kind) {
    case Kind::Security: {
      std::string s = "security";
      if (category) s += std::string(": ") + sqpc::to_string(*category);
      return s;
    }
    case Kind::InsufficientPositions:
      return detail.empty() ? "insufficient-positions" : "insufficient-positions: " + detail;
    case Kind::InsufficientComparisonPositions:
      return "insufficient-comparison-positions";
  }
  throw std::logic_error("unknown AbortReason");
}

double ProtocolConfig::threshold(CheckCategory c) const {
  const auto it = thresholds.find(c);
  return it == thresholds.end() ? default_threshold : it->second;
}

void ProtocolConfig::validate() const {
  if (n == 0) throw std::invalid_argument("config: n must be at least 1");
  auto check01 = [](double v, const char* what) {
    if (v < 0.0 || v > 1.0)
      throw std::invalid_argument(std::string("config: ") + what + " must lie in [0, 1]");
  };
  check01(default_threshold, "error threshold");
  for (const auto& [cat, v] : thresholds) check01(v, "error threshold");
  check01(channel_flip_probability, "channel flip probability");
  attack.validate();
}

void PrivateInputs::validate(const ProtocolConfig& config) const {
  if (m_a.size() != config.n || m_b.size() != config.n)
    throw std::invalid_argument("inputs: m_a and m_b must have length n");
  if (k_ab.size() != config.n) throw std::invalid_argument("inputs: k_ab must have length n");
  if (config.tp2_enabled && (!k_t || k_t->size() != config.n))
    throw std::invalid_argument("inputs: the second verifier needs k_t of length n");
}

PrivateInputs PrivateInputs::random_inputs(std::size_t n, RandomStream& rng, bool with_k_t) {
  PrivateInputs in;
  in.m_a = BitString::random(n, rng);
  in.m_b = BitString::random(n, rng);
  in.k_ab = key_oracle(n, rng);
  if (with_k_t) in.k_t = key_oracle(n, rng);
  return in;
}

BitString key_oracle(std::size_t n, RandomStream& rng) { return BitString::random(n, rng); }

std::vector<Action> choose_actions(std::size_t count, ChoiceMode mode, RandomStream& rng) {
  std::vector<Action> v(count, Action::Reflect);
  if (mode == ChoiceMode::Balanced) {
    if (count % 2 != 0)
      throw std::invalid_argument("choose_actions: balanced mode needs an even count");
    for (std::size_t i = 0; i < count / 2; ++i) v[i] = Action::Measure;
    rng.shuffle(v);
  } else {
    for (auto& a : v) a = rng.bit() ? Action::Measure : Action::Reflect;
  }
  return v;
}

std::optional<int> classical_party_step(StateVector& reg, std::size_t travel, Action choice,
                                        RandomStream& rng) {
  if (choice == Action::Reflect) return std::nullopt;
  // The collapsed qubit is exactly the fresh |bit> the party sends back, so
  // the same register index keeps travelling.
  return measure_z(reg, travel, rng);
}

BitString response_bits(const BitString& m, const BitString& k_ab, const BitString& s_first,
                        const BitString& s_second) {
  return m ^ k_ab ^ s_first ^ s_second;
}

std::pair<Verdict, BitString> tp_verdict(const BitString& r_a, const BitString& r_b,
                                         const BitString& s2, const BitString& s4) {
  const BitString r_t = r_a ^ r_b ^ s2 ^ s4;
  Verdict v;
  v.kind = VerdictKind::Equal;
  for (std::size_t j = 0; j < r_t.size(); ++j) {
    if (r_t.at(j) == 0) {
      v.kind = VerdictKind::NotEqual;
      v.first_difference = j;
      break;
    }
  }
  return {v, r_t};
}

BitString tp2_masked_key(const BitString& k_t, const BitString& s2, const BitString& s4) {
  return k_t ^ s2 ^ s4;
}

std::pair<Verdict, BitString> tp2_verdict(const BitString& r_a, const BitString& r_b,
                                          const BitString& r_tp, const BitString& k_t) {
  // r_a ^ r_b ^ r_tp ^ k_t reproduces r_t without the verifier seeing the
  // sift strings.
  return tp_verdict(r_a, r_b, r_tp, k_t);
}

namespace {

// One of the first 8n pairs: the first qubit travels to a party, the second
// stays with TP.
struct FirstPhasePosition {
  StateVector reg;
  std::size_t travel = 0;
  std::size_t partner = 1;
  std::vector<std::size_t> probe;
  std::optional<std::size_t> held;  // original particle kept by the adversary
  Action action = Action::Reflect;
  std::optional<int> party_bit;
  std::optional<int> transit_bit;  // adversary's measure-resend record
  std::optional<int> tp_travel_bit, tp_partner_bit;

  explicit FirstPhasePosition(StateVector state) : reg(std::move(state)) {}
};

// One of the last 8n pairs: both qubits travel, the first to Alice, the
// second to Bob.
struct SecondPhasePosition {
  StateVector reg;
  std::size_t travel_a = 0, travel_b = 1;
  std::vector<std::size_t> probe_a, probe_b;
  std::optional<std::size_t> held_a, held_b;
  Action alice = Action::Reflect, bob = Action::Reflect;
  std::optional<int> alice_bit, bob_bit;
  std::optional<int> tp_a_bit, tp_b_bit;

  explicit SecondPhasePosition(StateVector state) : reg(std::move(state)) {}
};

class SessionDriver {
 public:
  SessionDriver(const ProtocolConfig& config, const PrivateInputs& inputs)
      : config_(config), inputs_(inputs), rng_(config.seed) {
    config_.validate();
    inputs_.validate(config_);
  }

  SessionResult run() {
    prepare();
    if (first_phase() && second_phase()) finish();
    result_.config = config_;
    result_.checks = checks_;
    result_.ground_truth_equal = inputs_.m_a == inputs_.m_b;
    result_.t1_count = t1_.size();
    result_.t3_count = t3_.size();
    result_.t56_count = t56_.size();
    result_.transcript = std::move(transcript_);
    return std::move(result_);
  }

 private:
  StateVector source_state() const {
    if (config_.attack.kind == AttackKind::DishonestTPSource)
      return StateVector(2, config_.attack.source_state);
    return prepare_bell(BellKind::PsiPlus);
  }

  bool abort_suppressed() const {
    // The party running the checks is the one cheating; she will not flag
    // herself. Rates are still recorded faithfully.
    return config_.attack.kind == AttackKind::DishonestTPSource;
  }

  bool scope_active(AttackScope scope) const {
    const AttackKind k = config_.attack.kind;
    return (k == AttackKind::InterceptResend || k == AttackKind::MeasureResend ||
            k == AttackKind::EntangleMeasure) &&
           config_.attack.scope == scope;
  }

  void event(TranscriptEvent e) { transcript_.push_back(std::move(e)); }

  void maybe_flip(StateVector& reg, std::size_t qubit) {
    if (config_.channel_flip_probability <= 0.0) return;
    if (rng_.uniform() < config_.channel_flip_probability) apply_x(reg, qubit);
  }

  void prepare() {
    const std::size_t n = config_.n;
    t1_.reserve(4 * n);
    t3_.reserve(4 * n);
    t56_.reserve(8 * n);
    for (std::size_t i = 0; i < 4 * n; ++i) t1_.emplace_back(source_state());
    for (std::size_t i = 0; i < 4 * n; ++i) t3_.emplace_back(source_state());
    for (std::size_t i = 0; i < 8 * n; ++i) t56_.emplace_back(source_state());
    event({.type = "prepare", .seq = "t1", .party = "tp",
           .detail = std::to_string(4 * n) + " pairs"});
    event({.type = "prepare", .seq = "t3", .party = "tp",
           .detail = std::to_string(4 * n) + " pairs"});
    event({.type = "prepare", .seq = "t5t6", .party = "tp",
           .detail = std::to_string(8 * n) + " pairs"});
  }

  void abort_session(AbortReason reason) {
    result_.verdict.kind = VerdictKind::Aborted;
    result_.verdict.abort = reason;
    result_.announced = result_.verdict;
    event({.type = "abort", .party = "tp", .detail = reason.to_string()});
  }

  // Evaluates thresholds for `cats` in order; true means the session goes on.
  bool pass_thresholds(std::initializer_list<CheckCategory> cats) {
    if (abort_suppressed()) return true;
    for (CheckCategory c : cats) {
      if (checks_[c].rate() > config_.threshold(c)) {
        abort_session({.kind = AbortReason::Kind::Security, .category = c});
        return false;
      }
    }
    return true;
  }

  // --- first phase: round trips and checks on T1/T2 (Alice) and T3/T4 (Bob) --

  void first_leg_roundtrips(std::vector<FirstPhasePosition>& pos, const char* seq,
                            const char* party, AttackScope scope,
                            const std::vector<Action>& actions) {
    const bool attacked = scope_active(scope);
    for (std::size_t j = 0; j < pos.size(); ++j) {
      auto& p = pos[j];
      p.action = actions[j];
      event({.type = "send", .seq = seq, .party = party, .positions = {j}});
      if (attacked) {
        switch (config_.attack.kind) {
          case AttackKind::InterceptResend:
            p.held = p.travel;
            p.travel = intercept_with_fake(p.reg, config_.attack.fake_bits[0]);
            break;
          case AttackKind::MeasureResend:
            p.transit_bit = transit_measure(p.reg, p.travel, rng_);
            break;
          case AttackKind::EntangleMeasure:
            p.probe = append_probe(p.reg, config_.attack.probe_dim);
            apply_leg_unitary(p.reg, config_.attack.e_matrix, p.travel, p.probe);
            break;
          default:
            break;
        }
      }
      maybe_flip(p.reg, p.travel);
      p.party_bit = classical_party_step(p.reg, p.travel, p.action, rng_);
      if (attacked && config_.attack.kind == AttackKind::EntangleMeasure)
        apply_leg_unitary(p.reg, config_.attack.f_matrix, p.travel, p.probe);
      maybe_flip(p.reg, p.travel);
      event({.type = "return", .seq = seq, .party = party, .positions = {j}});
    }
    std::vector<int> ops;
    ops.reserve(pos.size());
    for (const auto& p : pos) ops.push_back(p.action == Action::Measure ? 1 : 0);
    event({.type = "announce-choices", .seq = seq, .party = party, .bits = ops,
           .detail = "1=measure"});
  }

  // Returns false on an insufficient-positions abort. Fills `kept` with the
  // sift positions (exactly n of the measured ones).
  bool first_leg_checks(std::vector<FirstPhasePosition>& pos, const char* seq, const char* party,
                        AttackScope scope, CheckCategory cat_reflect, CheckCategory cat_measure,
                        std::vector<std::size_t>& kept) {
    const bool attacked = scope_active(scope);

    for (std::size_t j = 0; j < pos.size(); ++j) {
      auto& p = pos[j];
      if (p.action != Action::Reflect) continue;
      const BellKind kind = measure_bell(p.reg, p.travel, p.partner, rng_);
      const bool err = kind != BellKind::PsiPlus;
      checks_[cat_reflect].add(err);
      if (attacked) result_.detection.add(err);
    }
    event({.type = "check", .seq = seq, .party = "tp", .basis = "bell",
           .detail = std::string(to_string(cat_reflect)) + ": " +
                     std::to_string(checks_[cat_reflect].errors) + "/" +
                     std::to_string(checks_[cat_reflect].samples)});

    // TP Z-measures every measured position's returned qubit and partner.
    std::vector<std::size_t> measured;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      auto& p = pos[j];
      if (p.action != Action::Measure) continue;
      p.tp_travel_bit = measure_z(p.reg, p.travel, rng_);
      p.tp_partner_bit = measure_z(p.reg, p.partner, rng_);
      measured.push_back(j);
    }

    auto violates = [](const FirstPhasePosition& p) {
      // honest correlation: party bit == returned bit, partner opposite
      return *p.tp_travel_bit != *p.party_bit || *p.tp_partner_bit == *p.party_bit;
    };
    if (attacked)
      for (std::size_t j : measured) result_.detection.add(violates(pos[j]));

    if (measured.size() < config_.n) {
      abort_session({.kind = AbortReason::Kind::InsufficientPositions, .detail = seq});
      return false;
    }
    // Keep exactly n measured positions for the sift; check all the others.
    std::vector<std::size_t> order = measured;
    rng_.shuffle(order);
    kept.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(config_.n));
    std::sort(kept.begin(), kept.end());

    std::vector<std::size_t> checked;
    for (std::size_t j : order)
      if (!std::binary_search(kept.begin(), kept.end(), j)) checked.push_back(j);
    std::sort(checked.begin(), checked.end());

    std::vector<int> announced;
    announced.reserve(checked.size());
    for (std::size_t j : checked) announced.push_back(*pos[j].party_bit);
    event({.type = "request-bits", .seq = seq, .party = party, .positions = checked});
    event({.type = "announce-bits", .seq = seq, .party = party, .positions = checked,
           .bits = announced});

    for (std::size_t j : checked) checks_[cat_measure].add(violates(pos[j]));
    event({.type = "check", .seq = seq, .party = "tp", .basis = "z",
           .detail = std::string(to_string(cat_measure)) + ": " +
                     std::to_string(checks_[cat_measure].errors) + "/" +
                     std::to_string(checks_[cat_measure].samples)});
    return true;
  }

  bool first_phase() {
    const std::size_t count = 4 * config_.n;
    const auto alice_actions = choose_actions(count, config_.choice_mode, rng_);
    const auto bob_actions = choose_actions(count, config_.choice_mode, rng_);

    first_leg_roundtrips(t1_, "t1", "alice", AttackScope::T1Leg, alice_actions);
    if (!first_leg_checks(t1_, "t1", "alice", AttackScope::T1Leg, CheckCategory::T1Reflect,
                          CheckCategory::T1Measure, kept_t1_))
      return false;

    first_leg_roundtrips(t3_, "t3", "bob", AttackScope::T3Leg, bob_actions);
    if (!first_leg_checks(t3_, "t3", "bob", AttackScope::T3Leg, CheckCategory::T3Reflect,
                          CheckCategory::T3Measure, kept_t3_))
      return false;

    if (!pass_thresholds({CheckCategory::T1Reflect, CheckCategory::T1Measure,
                          CheckCategory::T3Reflect, CheckCategory::T3Measure}))
      return false;

    // Sift: party bits at the kept positions and TP's partner measurements.
    for (std::size_t j : kept_t1_) {
      result_.s1.push_back(*t1_[j].party_bit);
      result_.s2.push_back(*t1_[j].tp_partner_bit);
    }
    for (std::size_t j : kept_t3_) {
      result_.s3.push_back(*t3_[j].party_bit);
      result_.s4.push_back(*t3_[j].tp_partner_bit);
    }
    event({.type = "sift", .seq = "t1", .party = "tp", .positions = kept_t1_});
    event({.type = "sift", .seq = "t3", .party = "tp", .positions = kept_t3_});
    return true;
  }

  // --- second phase: the fully transmitted pairs -----------------------------

  bool second_phase() {
    const std::size_t count = 8 * config_.n;
    const auto alice_actions = choose_actions(count, config_.choice_mode, rng_);
    const auto bob_actions = choose_actions(count, config_.choice_mode, rng_);
    const bool attacked = scope_active(AttackScope::T5T6Leg);

    for (std::size_t j = 0; j < count; ++j) {
      auto& p = t56_[j];
      p.alice = alice_actions[j];
      p.bob = bob_actions[j];
      event({.type = "send", .seq = "t5t6", .party = "alice", .positions = {j}});
      event({.type = "send", .seq = "t5t6", .party = "bob", .positions = {j}});
      if (attacked) {
        switch (config_.attack.kind) {
          case AttackKind::InterceptResend:
            p.held_a = p.travel_a;
            p.travel_a = intercept_with_fake(p.reg, config_.attack.fake_bits[0]);
            p.held_b = p.travel_b;
            p.travel_b = intercept_with_fake(p.reg, config_.attack.fake_bits[1]);
            break;
          case AttackKind::MeasureResend:
            transit_measure(p.reg, p.travel_a, rng_);
            transit_measure(p.reg, p.travel_b, rng_);
            break;
          case AttackKind::EntangleMeasure:
            p.probe_a = append_probe(p.reg, config_.attack.probe_dim);
            apply_leg_unitary(p.reg, config_.attack.e_matrix, p.travel_a, p.probe_a);
            p.probe_b = append_probe(p.reg, config_.attack.probe_dim);
            apply_leg_unitary(p.reg, config_.attack.e_matrix, p.travel_b, p.probe_b);
            break;
          default:
            break;
        }
      }
      maybe_flip(p.reg, p.travel_a);
      maybe_flip(p.reg, p.travel_b);
      p.alice_bit = classical_party_step(p.reg, p.travel_a, p.alice, rng_);
      p.bob_bit = classical_party_step(p.reg, p.travel_b, p.bob, rng_);
      if (attacked && config_.attack.kind == AttackKind::EntangleMeasure) {
        apply_leg_unitary(p.reg, config_.attack.f_matrix, p.travel_a, p.probe_a);
        apply_leg_unitary(p.reg, config_.attack.f_matrix, p.travel_b, p.probe_b);
      }
      maybe_flip(p.reg, p.travel_a);
      maybe_flip(p.reg, p.travel_b);
      event({.type = "return", .seq = "t5t6", .party = "alice", .positions = {j}});
      event({.type = "return", .seq = "t5t6", .party = "bob", .positions = {j}});
    }

    auto ops_of = [](const std::vector<Action>& v) {
      std::vector<int> ops;
      ops.reserve(v.size());
      for (Action a : v) ops.push_back(a == Action::Measure ? 1 : 0);
      return ops;
    };
    event({.type = "announce-choices", .seq = "t5t6", .party = "alice",
           .bits = ops_of(alice_actions), .detail = "1=measure"});
    event({.type = "announce-choices", .seq = "t5t6", .party = "bob",
           .bits = ops_of(bob_actions), .detail = "1=measure"});

    std::vector<std::size_t> case2, case3, case4;
    for (std::size_t j = 0; j < count; ++j) {
      auto& p = t56_[j];
      if (p.alice == Action::Reflect && p.bob == Action::Reflect) {
        const BellKind kind = measure_bell(p.reg, p.travel_a, p.travel_b, rng_);
        const bool err = kind != BellKind::PsiPlus;
        checks_[CheckCategory::Case1].add(err);
        if (attacked) result_.detection.add(err);
      } else if (p.alice == Action::Measure && p.bob == Action::Reflect) {
        case2.push_back(j);
      } else if (p.alice == Action::Reflect && p.bob == Action::Measure) {
        case3.push_back(j);
      } else {
        case4.push_back(j);
      }
    }
    event({.type = "check", .seq = "t5t6", .party = "tp", .basis = "bell",
           .detail = std::string(to_string(CheckCategory::Case1)) + ": " +
                     std::to_string(checks_[CheckCategory::Case1].errors) + "/" +
                     std::to_string(checks_[CheckCategory::Case1].samples)});

    // (measure, reflect): TP measures the reflected qubit; it must be opposite
    // to the announced bit.
    {
      std::vector<int> announced;
      for (std::size_t j : case2) announced.push_back(*t56_[j].alice_bit);
      event({.type = "request-bits", .seq = "t5t6", .party = "alice", .positions = case2});
      event({.type = "announce-bits", .seq = "t5t6", .party = "alice", .positions = case2,
             .bits = announced});
      for (std::size_t j : case2) {
        auto& p = t56_[j];
        const int b6 = measure_z(p.reg, p.travel_b, rng_);
        const bool err = b6 == *p.alice_bit;
        checks_[CheckCategory::Case2].add(err);
        if (attacked) result_.detection.add(err);
      }
      event({.type = "check", .seq = "t5t6", .party = "tp", .basis = "z",
             .detail = std::string(to_string(CheckCategory::Case2)) + ": " +
                       std::to_string(checks_[CheckCategory::Case2].errors) + "/" +
                       std::to_string(checks_[CheckCategory::Case2].samples)});
    }
    {
      std::vector<int> announced;
      for (std::size_t j : case3) announced.push_back(*t56_[j].bob_bit);
      event({.type = "request-bits", .seq = "t5t6", .party = "bob", .positions = case3});
      event({.type = "announce-bits", .seq = "t5t6", .party = "bob", .positions = case3,
             .bits = announced});
      for (std::size_t j : case3) {
        auto& p = t56_[j];
        const int b5 = measure_z(p.reg, p.travel_a, rng_);
        const bool err = b5 == *p.bob_bit;
        checks_[CheckCategory::Case3].add(err);
        if (attacked) result_.detection.add(err);
      }
      event({.type = "check", .seq = "t5t6", .party = "tp", .basis = "z",
             .detail = std::string(to_string(CheckCategory::Case3)) + ": " +
                       std::to_string(checks_[CheckCategory::Case3].errors) + "/" +
                       std::to_string(checks_[CheckCategory::Case3].samples)});
    }

    // (measure, measure): TP re-measures every returned pair; announced bits
    // must match and be complementary.
    for (std::size_t j : case4) {
      auto& p = t56_[j];
      p.tp_a_bit = measure_z(p.reg, p.travel_a, rng_);
      p.tp_b_bit = measure_z(p.reg, p.travel_b, rng_);
    }
    auto case4_violates = [](const SecondPhasePosition& p) {
      return *p.tp_a_bit != *p.alice_bit || *p.tp_b_bit != *p.bob_bit ||
             *p.alice_bit == *p.bob_bit;
    };
    if (attacked)
      for (std::size_t j : case4) result_.detection.add(case4_violates(t56_[j]));

    if (case4.size() < config_.n) {
      abort_session({.kind = AbortReason::Kind::InsufficientComparisonPositions});
      return false;
    }
    std::vector<std::size_t> order = case4;
    rng_.shuffle(order);
    kept_t56_.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(config_.n));
    std::sort(kept_t56_.begin(), kept_t56_.end());
    std::vector<std::size_t> checked;
    for (std::size_t j : order)
      if (!std::binary_search(kept_t56_.begin(), kept_t56_.end(), j)) checked.push_back(j);
    std::sort(checked.begin(), checked.end());

    {
      std::vector<int> a_bits, b_bits;
      for (std::size_t j : checked) {
        a_bits.push_back(*t56_[j].alice_bit);
        b_bits.push_back(*t56_[j].bob_bit);
      }
      event({.type = "request-bits", .seq = "t5t6", .party = "alice", .positions = checked});
      event({.type = "announce-bits", .seq = "t5t6", .party = "alice", .positions = checked,
             .bits = a_bits});
      event({.type = "request-bits", .seq = "t5t6", .party = "bob", .positions = checked});
      event({.type = "announce-bits", .seq = "t5t6", .party = "bob", .positions = checked,
             .bits = b_bits});
      for (std::size_t j : checked) checks_[CheckCategory::Case4].add(case4_violates(t56_[j]));
      event({.type = "check", .seq = "t5t6", .party = "tp", .basis = "z",
             .detail = std::string(to_string(CheckCategory::Case4)) + ": " +
                       std::to_string(checks_[CheckCategory::Case4].errors) + "/" +
                       std::to_string(checks_[CheckCategory::Case4].samples)});
    }

    if (!pass_thresholds({CheckCategory::Case1, CheckCategory::Case2, CheckCategory::Case3,
                          CheckCategory::Case4}))
      return false;

    for (std::size_t j : kept_t56_) {
      result_.s5.push_back(*t56_[j].alice_bit);
      result_.s6.push_back(*t56_[j].bob_bit);
    }
    event({.type = "sift", .seq = "t5t6", .party = "tp", .positions = kept_t56_});
    return true;
  }

  void finish() {
    result_.r_a = response_bits(inputs_.m_a, inputs_.k_ab, result_.s1, result_.s5);
    event({.type = "announce-response", .party = "alice", .detail = result_.r_a.to_hex()});
    result_.r_b = response_bits(inputs_.m_b, inputs_.k_ab, result_.s3, result_.s6);
    event({.type = "announce-response", .party = "bob", .detail = result_.r_b.to_hex()});

    auto [verdict, r_t] = tp_verdict(result_.r_a, result_.r_b, result_.s2, result_.s4);
    result_.verdict = verdict;
    result_.r_t = r_t;

    result_.announced = verdict;
    if (config_.tp_forges_verdict) {
      if (verdict.kind == VerdictKind::Equal) {
        result_.announced.kind = VerdictKind::NotEqual;
        result_.announced.first_difference = 0;
      } else {
        result_.announced.kind = VerdictKind::Equal;
        result_.announced.first_difference.reset();
      }
    }
    event({.type = "verdict", .party = "tp",
           .detail = std::string(to_string(result_.announced.kind)) + " r_t=" + r_t.to_hex()});

    if (config_.tp2_enabled) {
      Tp2Outcome out;
      out.r_tp = tp2_masked_key(*inputs_.k_t, result_.s2, result_.s4);
      event({.type = "announce-masked-key", .party = "tp", .detail = out.r_tp.to_hex()});
      auto [v2, r_t2] = tp2_verdict(result_.r_a, result_.r_b, out.r_tp, *inputs_.k_t);
      out.verdict = v2;
      out.consistent_with_announcement =
          v2.kind == result_.announced.kind &&
          v2.first_difference == result_.announced.first_difference;
      event({.type = "verdict", .party = "tp2",
             .detail = std::string(to_string(v2.kind)) +
                       (out.consistent_with_announcement ? " (consistent)" : " (inconsistent)")});
      result_.tp2 = std::move(out);
    }
  }

  ProtocolConfig config_;
  PrivateInputs inputs_;
  RandomStream rng_;
  std::vector<FirstPhasePosition> t1_, t3_;
  std::vector<SecondPhasePosition> t56_;
  std::vector<std::size_t> kept_t1_, kept_t3_, kept_t56_;
  std::map<CheckCategory, CheckStat> checks_;
  Transcript transcript_;
  SessionResult result_;
};

}  // namespace

SessionResult run_session(const ProtocolConfig& config, const PrivateInputs& inputs) {
  return SessionDriver(config, inputs).run();
}

}  // namespace sqpc
