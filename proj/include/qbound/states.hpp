#pragma once

#include <cstddef>

#include "qbound/bloch.hpp"
#include "qbound/matcore.hpp"
#include "qbound/rng.hpp"

namespace qbound {

/// Hermitian, positive semidefinite, unit-trace matrix with its spectrum
/// cached at construction.
///
/// Throws InvariantError when |Tr ρ - 1| > 1e-12 or λ_min < -1e-12.
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianMatrix& m);
  explicit DensityMatrix(const ComplexMatrix& m) : DensityMatrix(HermitianMatrix(m)) {}

  static DensityMatrix maximally_mixed(std::size_t dim);
  /// |ψ><ψ| for a (not necessarily normalized) nonzero vector.
  static DensityMatrix pure(std::span<const cplx> psi);

  const HermitianMatrix& hermitian() const noexcept { return matrix_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_.matrix(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }

 private:
  HermitianMatrix matrix_;
  Spectrum spectrum_;
};

/// Strictly positive Hermitian weight ω. Throws NonPositiveWeight unless
/// λ_min > 1e-12·λ_max (and λ_max > 0).
class PositiveMatrix {
 public:
  explicit PositiveMatrix(const HermitianMatrix& m);
  explicit PositiveMatrix(const ComplexMatrix& m) : PositiveMatrix(HermitianMatrix(m)) {}
  explicit PositiveMatrix(const DensityMatrix& rho);

  const HermitianMatrix& hermitian() const noexcept { return matrix_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_.matrix(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }

  /// (λ1 + λ2)/(λ1 λ2) from the two smallest eigenvalues.
  double optimal_constant() const noexcept;
  const ComplexMatrix& inverse() const noexcept { return inverse_; }

 private:
  HermitianMatrix matrix_;
  Spectrum spectrum_;
  ComplexMatrix inverse_;
};

/// λ1λ2/(λ1+λ2) from the two smallest eigenvalues; value is 0 once λ1 falls
/// to the zero threshold 1e-12·λ_max.
struct MixingCoefficient {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double value = 0.0;
};

inline constexpr double kZeroEigenvalueThreshold = 1e-12;

double purity(const DensityMatrix& rho);
MixingCoefficient mixing_coefficient(const DensityMatrix& rho);

/// ⟨X⟩_ρ = Tr(Xρ).
cplx expectation(const ComplexMatrix& x, const DensityMatrix& rho);
/// Real-valued expectation of an observable; checks the imaginary residue.
double expectation(const HermitianMatrix& x, const DensityMatrix& rho);

/// Tr(w X†X) for a strictly positive weight.
double weighted_norm_sq(const ComplexMatrix& x, const PositiveMatrix& w);
/// ‖X‖²_ρ = Tr(ρ X†X); ρ may be singular.
double weighted_norm_sq(const ComplexMatrix& x, const DensityMatrix& rho);

// Samplers --------------------------------------------------------------

/// GG†/Tr(GG†) with G standard complex Ginibre (Hilbert–Schmidt measure).
DensityMatrix sample_density_hs(std::size_t dim, SeededStream& rng);

/// Qubit with Bloch length √(2p − 1) and isotropic direction.
DensityMatrix sample_qubit_fixed_purity(double p, SeededStream& rng);

/// (G + G†)/2 with G standard complex Gaussian.
HermitianMatrix sample_observable_gue(std::size_t dim, SeededStream& rng);

/// a0 = 0 and a uniform on the unit sphere.
BlochObservable sample_qubit_observable_unit_bloch(SeededStream& rng);

/// Isotropic unit vector (normalized Gaussian triple).
Vec3 sample_unit_vector(SeededStream& rng);

/// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
cplx sample_complex_normal(SeededStream& rng);

}  // namespace qbound
