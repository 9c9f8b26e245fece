#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "sqpc/density.hpp"
#include "sqpc/rng.hpp"
#include "sqpc/statevector.hpp"

using namespace sqpc;

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

// Independent dense matrix-vector product used as the oracle for
// apply_unitary.
std::vector<Complex> matvec(const std::vector<Complex>& m, const std::vector<Complex>& v) {
  const std::size_t d = v.size();
  std::vector<Complex> out(d, Complex(0, 0));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) out[r] += m[r * d + c] * v[c];
  return out;
}

void check_amplitudes(const StateVector& s, const std::vector<Complex>& expected,
                      double tol = 1e-12) {
  REQUIRE(s.dim() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(s.amp(i) - expected[i]) < tol);
  }
}

}  // namespace

TEST_CASE("bell preparation puts the weight on the anti-correlated components") {
  // Qubit 0 is the most significant index bit: amplitude 1 is |01>.
  check_amplitudes(prepare_bell(BellKind::PsiPlus), {0, kInvSqrt2, kInvSqrt2, 0});
  check_amplitudes(prepare_bell(BellKind::PsiMinus), {0, kInvSqrt2, -kInvSqrt2, 0});
  check_amplitudes(prepare_bell(BellKind::PhiPlus), {kInvSqrt2, 0, 0, kInvSqrt2});
  check_amplitudes(prepare_bell(BellKind::PhiMinus), {kInvSqrt2, 0, 0, -kInvSqrt2});
}

TEST_CASE("fresh qubits are computational basis states") {
  check_amplitudes(fresh_qubit(0), {1, 0});
  check_amplitudes(fresh_qubit(1), {0, 1});
}

TEST_CASE("tensor appends the new qubits as least significant bits") {
  const StateVector s = fresh_qubit(0).tensor(fresh_qubit(1));
  check_amplitudes(s, {0, 1, 0, 0});  // |01>
  const StateVector t = fresh_qubit(1).tensor(fresh_qubit(0));
  check_amplitudes(t, {0, 0, 1, 0});  // |10>
  CHECK(s.bit_mask(0) == 2);
  CHECK(s.bit_mask(1) == 1);
}

TEST_CASE("state construction validates size and norm") {
  CHECK_THROWS_AS(StateVector(1, {Complex(0.7, 0), Complex(0.7, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(2, {Complex(1, 0), Complex(0, 0)}), std::invalid_argument);
  CHECK_NOTHROW(StateVector(1, {Complex(kInvSqrt2, 0), Complex(0, kInvSqrt2)}));
}

TEST_CASE("z-basis born probabilities and collapse on a bell pair") {
  StateVector s = prepare_bell(BellKind::PsiPlus);
  CHECK(prob_one(s, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(prob_one(s, 1) == doctest::Approx(0.5).epsilon(1e-12));

  const double p = collapse_z(s, 0, 0);
  CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
  // Collapsing one half of |psi+> to |0> leaves the partner at |1>.
  CHECK(prob_one(s, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(collapse_z(s, 1, 0), std::domain_error);
}

TEST_CASE("measure_z samples the born distribution") {
  RandomStream rng(42);
  int ones = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    StateVector s = prepare_bell(BellKind::PsiPlus);
    const ZOutcome a = measure_z(s, 0, rng);
    const ZOutcome b = measure_z(s, 1, rng);
    CHECK(a + b == 1);  // anti-correlated
    ones += a;
  }
  // 4 sigma around 1/2 for 20000 fair draws: 0.5 +/- 0.0141.
  CHECK(std::abs(ones / static_cast<double>(trials) - 0.5) < 0.015);
}

TEST_CASE("bell probabilities form a distribution and recognize eigenstates") {
  for (BellKind kind : kAllBellKinds) {
    StateVector s = prepare_bell(kind);
    const auto probs = bell_probabilities(s, 0, 1);
    double total = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      total += probs[i];
      const bool is_kind = static_cast<std::size_t>(kind) == i;
      CHECK(probs[i] == doctest::Approx(is_kind ? 1.0 : 0.0).epsilon(1e-12));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    RandomStream rng(5);
    CHECK(measure_bell(s, 0, 1, rng) == kind);
  }
}

TEST_CASE("bell probabilities on a random state sum to one") {
  RandomStream rng(9);
  // Random 2-qubit state via a Haar-like unitary on |00>.
  std::vector<Complex> u;
  {
    // Gram-Schmidt over a Gaussian matrix, inline to stay independent of the
    // adversary helpers.
    const std::size_t d = 4;
    std::vector<std::vector<Complex>> rows(d, std::vector<Complex>(d));
    for (auto& row : rows)
      for (auto& x : row) x = Complex(rng.gaussian(), rng.gaussian());
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t p = 0; p < r; ++p) {
        Complex dot(0, 0);
        for (std::size_t c = 0; c < d; ++c) dot += std::conj(rows[p][c]) * rows[r][c];
        for (std::size_t c = 0; c < d; ++c) rows[r][c] -= dot * rows[p][c];
      }
      double norm = 0;
      for (std::size_t c = 0; c < d; ++c) norm += std::norm(rows[r][c]);
      norm = std::sqrt(norm);
      for (std::size_t c = 0; c < d; ++c) rows[r][c] /= norm;
    }
    for (const auto& row : rows)
      for (const auto& x : row) u.push_back(x);
  }
  StateVector s(2);
  apply_unitary(s, u, {0, 1});
  const auto probs = bell_probabilities(s, 0, 1);
  double total = 0;
  for (double p : probs) {
    CHECK(p >= -1e-12);
    total += p;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("collapse_bell projects onto the requested component") {
  // |01> = (|psi+> + |psi->)/sqrt(2): each psi branch has probability 1/2.
  StateVector s = fresh_qubit(0).tensor(fresh_qubit(1));
  const double p = collapse_bell(s, 0, 1, BellKind::PsiPlus);
  CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
  check_amplitudes(s, {0, kInvSqrt2, kInvSqrt2, 0}, 1e-10);

  StateVector t = prepare_bell(BellKind::PsiPlus);
  CHECK_THROWS_AS(collapse_bell(t, 0, 1, BellKind::PhiPlus), std::domain_error);
}

TEST_CASE("apply_unitary matches a dense matrix-vector oracle") {
  const std::vector<Complex> hadamard = {Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0),
                                         Complex(kInvSqrt2, 0), Complex(-kInvSqrt2, 0)};
  const std::vector<Complex> cnot = {
      Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0),
      Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0),
      Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0),
      Complex(0, 0), Complex(0, 0), Complex(1, 0), Complex(0, 0),
  };

  StateVector s(2);
  apply_unitary(s, hadamard, {0});
  check_amplitudes(s, {kInvSqrt2, 0, kInvSqrt2, 0}, 1e-12);
  apply_unitary(s, cnot, {0, 1});
  check_amplitudes(s, {kInvSqrt2, 0, 0, kInvSqrt2}, 1e-12);

  // Same circuit through the oracle on the full 4-dim vector.
  std::vector<Complex> v = {1, 0, 0, 0};
  const std::vector<Complex> h_on_first = {
      Complex(kInvSqrt2, 0), Complex(0, 0), Complex(kInvSqrt2, 0),  Complex(0, 0),
      Complex(0, 0), Complex(kInvSqrt2, 0), Complex(0, 0),  Complex(kInvSqrt2, 0),
      Complex(kInvSqrt2, 0), Complex(0, 0), Complex(-kInvSqrt2, 0), Complex(0, 0),
      Complex(0, 0), Complex(kInvSqrt2, 0), Complex(0, 0),  Complex(-kInvSqrt2, 0),
  };
  v = matvec(cnot, matvec(h_on_first, v));
  check_amplitudes(s, v, 1e-12);
}

TEST_CASE("apply_unitary acts on the addressed qubit inside a larger register") {
  // X on the middle qubit of |000>.
  const std::vector<Complex> x = {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)};
  StateVector s(3);
  apply_unitary(s, x, {1});
  std::vector<Complex> expected(8, Complex(0, 0));
  expected[2] = Complex(1, 0);  // |010>
  check_amplitudes(s, expected);

  apply_x(s, 2);
  std::vector<Complex> expected2(8, Complex(0, 0));
  expected2[3] = Complex(1, 0);  // |011>
  check_amplitudes(s, expected2);
}

TEST_CASE("apply_unitary rejects non-unitary matrices") {
  StateVector s(1);
  const std::vector<Complex> not_unitary = {Complex(1, 0), Complex(1, 0), Complex(0, 0),
                                            Complex(1, 0)};
  CHECK_THROWS_AS(apply_unitary(s, not_unitary, {0}), std::invalid_argument);
}

TEST_CASE("partial trace of a bell pair is maximally mixed") {
  const StateVector s = prepare_bell(BellKind::PsiPlus);
  const DensityLikeProbe rho = partial_trace(s, {0});
  rho.validate();
  CHECK(rho.dim == 2);
  CHECK(rho.at(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rho.at(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(rho.at(0, 1)) < 1e-12);
}

TEST_CASE("partial trace keeps the requested ordering") {
  // |01>: keeping qubit 1 alone gives |1><1|.
  const StateVector s = fresh_qubit(0).tensor(fresh_qubit(1));
  const DensityLikeProbe rho = partial_trace(s, {1});
  CHECK(rho.at(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.at(0, 0).real() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("trace distance separates orthogonal states and vanishes on equals") {
  const StateVector zero = fresh_qubit(0);
  const StateVector one = fresh_qubit(1);
  const DensityLikeProbe rho0 = partial_trace(zero, {0});
  const DensityLikeProbe rho1 = partial_trace(one, {0});
  CHECK(trace_distance(rho0, rho1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(trace_distance(rho0, rho0) == doctest::Approx(0.0).epsilon(1e-12));

  // Pure |0><0| against the maximally mixed state: distance 1/2.
  const DensityLikeProbe mixed = partial_trace(prepare_bell(BellKind::PsiPlus), {0});
  CHECK(trace_distance(rho0, mixed) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("density validation rejects non-physical matrices") {
  DensityLikeProbe bad;
  bad.dim = 2;
  bad.m = {Complex(1.5, 0), Complex(0, 0), Complex(0, 0), Complex(-0.5, 0)};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);  // negative eigenvalue

  DensityLikeProbe not_hermitian;
  not_hermitian.dim = 2;
  not_hermitian.m = {Complex(0.5, 0), Complex(0.3, 0), Complex(0, 0), Complex(0.5, 0)};
  CHECK_THROWS_AS(not_hermitian.validate(), std::domain_error);
}
