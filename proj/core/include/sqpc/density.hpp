#pragma once
// Reduced density matrices of small subsystems — used to inspect what an
// adversary's probe register holds — and the trace distance between two of
// them.

#include <cstddef>
#include <vector>

#include "sqpc/statevector.hpp"

namespace sqpc {

// Row-major complex matrix expected to be a density operator. Tolerances:
// unit trace to 1e-10, Hermiticity to 1e-10, eigenvalues >= -1e-8.
struct DensityLikeProbe {
  std::size_t dim = 0;
  std::vector<Complex> m;  // dim x dim, row-major

  const Complex& at(std::size_t r, std::size_t c) const { return m[r * dim + c]; }
  Complex& at(std::size_t r, std::size_t c) { return m[r * dim + c]; }

  // Throws std::domain_error when the invariants above fail.
  void validate() const;
};

// Reduced state of the ordered `keep` qubits (keep[0] becomes the most
// significant bit of the reduced basis index); every other qubit is traced
// out.
DensityLikeProbe partial_trace(const StateVector& state, const std::vector<std::size_t>& keep);

// (1/2) * sum of singular values of (a - b): 0 for identical states, 1 for
// states with orthogonal support.
double trace_distance(const DensityLikeProbe& a, const DensityLikeProbe& b);

}  // namespace sqpc
