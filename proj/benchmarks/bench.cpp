#include <benchmark/benchmark.h>

#include "sqpc/adversary.hpp"
#include "sqpc/analysis.hpp"
#include "sqpc/protocol.hpp"

namespace {

void bm_honest_session(benchmark::State& state) {
  sqpc::ProtocolConfig config;
  config.n = static_cast<std::size_t>(state.range(0));
  sqpc::RandomStream rng(7);
  const auto inputs = sqpc::PrivateInputs::random_inputs(config.n, rng, false);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = seed++;
    benchmark::DoNotOptimize(sqpc::run_session(config, inputs));
  }
}
BENCHMARK(bm_honest_session)->Arg(1)->Arg(4)->Arg(8);

void bm_intercept_resend_session(benchmark::State& state) {
  sqpc::ProtocolConfig config;
  config.n = 4;
  config.attack.kind = sqpc::AttackKind::InterceptResend;
  config.attack.scope = sqpc::AttackScope::T1Leg;
  config.attack.fake_bits = {0};
  sqpc::RandomStream rng(7);
  const auto inputs = sqpc::PrivateInputs::random_inputs(config.n, rng, false);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = seed++;
    benchmark::DoNotOptimize(sqpc::run_session(config, inputs));
  }
}
BENCHMARK(bm_intercept_resend_session);

void bm_bell_measurement(benchmark::State& state) {
  sqpc::RandomStream rng(11);
  for (auto _ : state) {
    auto reg = sqpc::prepare_bell(sqpc::BellKind::PsiPlus);
    benchmark::DoNotOptimize(sqpc::measure_bell(reg, 0, 1, rng));
  }
}
BENCHMARK(bm_bell_measurement);

void bm_entangle_measure_eval(benchmark::State& state) {
  sqpc::RandomStream rng(13);
  sqpc::AttackStrategy attack;
  attack.kind = sqpc::AttackKind::EntangleMeasure;
  attack.scope = sqpc::AttackScope::T5T6Leg;
  attack.probe_dim = static_cast<std::size_t>(state.range(0));
  attack.e_matrix = sqpc::random_unitary(2 * attack.probe_dim, rng);
  attack.f_matrix = sqpc::random_unitary(2 * attack.probe_dim, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(sqpc::evaluate_entangle_measure(attack, sqpc::EmContext::T5T6));
}
BENCHMARK(bm_entangle_measure_eval)->Arg(2)->Arg(4);

void bm_monte_carlo(benchmark::State& state) {
  sqpc::ProtocolConfig config;
  config.n = 2;
  config.seed = 99;
  config.attack.kind = sqpc::AttackKind::MeasureResend;
  config.attack.scope = sqpc::AttackScope::T1Leg;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sqpc::monte_carlo(config, static_cast<std::uint64_t>(state.range(0)), 1));
}
BENCHMARK(bm_monte_carlo)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
