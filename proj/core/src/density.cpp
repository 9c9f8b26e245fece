#include "sqpc/density.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace sqpc {

namespace {

constexpr double kTraceTolerance = 1e-10;
constexpr double kHermitianTolerance = 1e-10;
constexpr double kPsdTolerance = -1e-8;

Eigen::MatrixXcd to_eigen(const DensityLikeProbe& p) {
  Eigen::MatrixXcd m(p.dim, p.dim);
  for (std::size_t r = 0; r < p.dim; ++r)
    for (std::size_t c = 0; c < p.dim; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = p.at(r, c);
  return m;
}

}  // namespace

void DensityLikeProbe::validate() const {
  if (dim == 0 || m.size() != dim * dim)
    throw std::domain_error("DensityLikeProbe: dimension/storage mismatch");
  Complex tr(0.0, 0.0);
  for (std::size_t i = 0; i < dim; ++i) tr += at(i, i);
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTolerance)
    throw std::domain_error("DensityLikeProbe: trace is not 1");
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = r; c < dim; ++c)
      if (std::abs(at(r, c) - std::conj(at(c, r))) > kHermitianTolerance)
        throw std::domain_error("DensityLikeProbe: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(*this),
                                                         Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kPsdTolerance)
    throw std::domain_error("DensityLikeProbe: negative eigenvalue");
}

DensityLikeProbe partial_trace(const StateVector& state, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  const std::size_t k = keep.size();
  std::vector<std::size_t> keep_masks(k);
  std::size_t keep_mask = 0;
  for (std::size_t t = 0; t < k; ++t) {
    keep_masks[t] = state.bit_mask(keep[t]);
    if (keep_mask & keep_masks[t]) throw std::invalid_argument("partial_trace: duplicate qubit");
    keep_mask |= keep_masks[t];
  }

  const std::size_t d = std::size_t{1} << k;
  // Reduced index r (keep[0] = most significant bit) -> global offset.
  std::vector<std::size_t> offsets(d, 0);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t t = 0; t < k; ++t)
      if (r & (std::size_t{1} << (k - 1 - t))) offsets[r] |= keep_masks[t];

  DensityLikeProbe out;
  out.dim = d;
  out.m.assign(d * d, Complex(0.0, 0.0));
  const auto& amps = state.amplitudes();
  for (std::size_t rest = 0; rest < amps.size(); ++rest) {
    if (rest & keep_mask) continue;
    for (std::size_t r = 0; r < d; ++r) {
      const Complex ar = amps[rest | offsets[r]];
      if (ar == Complex(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < d; ++c)
        out.at(r, c) += ar * std::conj(amps[rest | offsets[c]]);
    }
  }
  return out;
}

double trace_distance(const DensityLikeProbe& a, const DensityLikeProbe& b) {
  if (a.dim != b.dim) throw std::invalid_argument("trace_distance: dimension mismatch");
  const Eigen::MatrixXcd diff = to_eigen(a) - to_eigen(b);
  // (a - b) is Hermitian, so its singular values are |eigenvalues|.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace sqpc
