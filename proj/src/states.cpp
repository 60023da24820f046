#include "qbound/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbound/errors.hpp"
#include "qbound/qubit.hpp"

namespace qbound {

DensityMatrix::DensityMatrix(const HermitianMatrix& m)
    : matrix_(m), spectrum_(hermitian_spectrum(m)) {
  const double trace = m.matrix().trace().real();
  if (std::abs(trace - 1.0) > 1e-12) {
    throw InvariantError("density matrix: unit trace violated (trace = " + std::to_string(trace) +
                         ")");
  }
  if (spectrum_.smallest() < -1e-12) {
    throw InvariantError("density matrix: positive semidefiniteness violated (min eigenvalue = " +
                         std::to_string(spectrum_.smallest()) + ")");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw DimensionError("maximally_mixed: dimension must be positive");
  return DensityMatrix(HermitianMatrix(ComplexMatrix::identity(dim) * (1.0 / dim)));
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> psi) {
  double n2 = 0.0;
  for (const cplx& z : psi) n2 += std::norm(z);
  if (n2 == 0.0) throw DomainError("pure: zero vector");
  ComplexMatrix m = ComplexMatrix::outer(psi, psi);
  m *= 1.0 / n2;
  return DensityMatrix(HermitianMatrix(m));
}

PositiveMatrix::PositiveMatrix(const HermitianMatrix& m)
    : matrix_(m), spectrum_(hermitian_spectrum(m)) {
  if (m.dim() < 2) throw DimensionError("positive weight must have dimension >= 2");
  const double lo = spectrum_.smallest();
  const double hi = spectrum_.largest();
  if (!(hi > 0.0) || !(lo > 1e-12 * hi)) {
    throw NonPositiveWeight("weight is not strictly positive (min eigenvalue = " +
                            std::to_string(lo) + ")");
  }
  inverse_ = spectral_apply(spectrum_, [](double x) { return 1.0 / x; });
}

PositiveMatrix::PositiveMatrix(const DensityMatrix& rho) : PositiveMatrix(rho.hermitian()) {}

double PositiveMatrix::optimal_constant() const noexcept {
  const double l1 = spectrum_.values[0];
  const double l2 = spectrum_.values[1];
  return (l1 + l2) / (l1 * l2);
}

double purity(const DensityMatrix& rho) { return frobenius_norm_sq(rho.matrix()); }

MixingCoefficient mixing_coefficient(const DensityMatrix& rho) {
  const auto& values = rho.spectrum().values;
  MixingCoefficient out;
  out.lambda1 = std::max(0.0, values[0]);
  out.lambda2 = values.size() > 1 ? std::max(0.0, values[1]) : 0.0;
  if (values.size() < 2 || out.lambda1 <= kZeroEigenvalueThreshold * values.back()) {
    out.value = 0.0;
  } else {
    out.value = out.lambda1 * out.lambda2 / (out.lambda1 + out.lambda2);
  }
  return out;
}

cplx expectation(const ComplexMatrix& x, const DensityMatrix& rho) {
  require_same_dim(x, rho.matrix(), "expectation");
  // Tr(Xρ) = Σ_ij X_ij ρ_ji
  cplx s = 0.0;
  const ComplexMatrix& r = rho.matrix();
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < x.dim(); ++j) s += x(i, j) * r(j, i);
  return s;
}

double expectation(const HermitianMatrix& x, const DensityMatrix& rho) {
  return require_real(expectation(x.matrix(), rho), 1.0 + x.matrix().max_abs(), "expectation");
}

double weighted_norm_sq(const ComplexMatrix& x, const PositiveMatrix& w) {
  require_same_dim(x, w.matrix(), "weighted_norm_sq");
  return std::max(0.0, weighted_gram(x, w.matrix()));
}

double weighted_norm_sq(const ComplexMatrix& x, const DensityMatrix& rho) {
  require_same_dim(x, rho.matrix(), "weighted_norm_sq");
  return std::max(0.0, weighted_gram(x, rho.matrix()));
}

// ---------------------------------------------------------------------------

cplx sample_complex_normal(SeededStream& rng) {
  constexpr double kScale = 0.70710678118654752440;  // 1/√2
  const double re = rng.normal();
  const double im = rng.normal();
  return {kScale * re, kScale * im};
}

Vec3 sample_unit_vector(SeededStream& rng) {
  for (;;) {
    const Vec3 g{rng.normal(), rng.normal(), rng.normal()};
    const double n = norm(g);
    if (n > 1e-300) return scaled(g, 1.0 / n);
  }
}

DensityMatrix sample_density_hs(std::size_t dim, SeededStream& rng) {
  if (dim < 2) throw DimensionError("sample_density_hs: dim must be >= 2");
  for (int attempt = 0; attempt < 3; ++attempt) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) g(i, j) = sample_complex_normal(rng);
    ComplexMatrix ggd = g * g.adjoint();
    const double tr = ggd.trace().real();
    if (!(tr > 1e-300) || !std::isfinite(tr)) continue;
    ggd *= 1.0 / tr;
    return DensityMatrix(HermitianMatrix(ggd));
  }
  throw DegenerateSample("sample_density_hs: Tr(GG†) underflowed three times");
}

DensityMatrix sample_qubit_fixed_purity(double p, SeededStream& rng) {
  if (!(p >= 0.5 && p <= 1.0)) {
    throw DomainError("sample_qubit_fixed_purity: purity " + std::to_string(p) +
                      " outside [0.5, 1]");
  }
  const double r = std::sqrt(std::max(0.0, 2.0 * p - 1.0));
  const Vec3 n = sample_unit_vector(rng);
  return bloch_to_density(BlochState(scaled(n, r)));
}

HermitianMatrix sample_observable_gue(std::size_t dim, SeededStream& rng) {
  if (dim < 2) throw DimensionError("sample_observable_gue: dim must be >= 2");
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = sample_complex_normal(rng);
  return HermitianMatrix((g + g.adjoint()) * 0.5);
}

BlochObservable sample_qubit_observable_unit_bloch(SeededStream& rng) {
  return BlochObservable{0.0, sample_unit_vector(rng)};
}

}  // namespace qbound
