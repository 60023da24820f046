#pragma once

#include <cstddef>
#include <string_view>

#include "qbound/matcore.hpp"

namespace qbound {

/// Spin quantum number j stored as the positive integer 2j.
class SpinQuantumNumber {
 public:
  explicit SpinQuantumNumber(int twice_j);
  /// Accepts values whose double is a positive integer within 1e-12.
  static SpinQuantumNumber from_value(double j);
  /// Parses "1", "3/2", "0.5" and the like. Throws DomainError for inputs
  /// such as "7/3" that are not half-integers.
  static SpinQuantumNumber parse(std::string_view text);

  int twice() const noexcept { return twice_; }
  double value() const noexcept { return 0.5 * twice_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(twice_) + 1; }

 private:
  int twice_;
};

/// J1, J2, J3 in the basis |j, j⟩, |j, j−1⟩, …, |j, −j⟩ (m descending).
struct SpinSystem {
  SpinQuantumNumber j{1};
  double hbar = 1.0;
  HermitianMatrix j1, j2, j3;

  std::size_t dim() const noexcept { return j.dim(); }
};

SpinSystem build_spin(SpinQuantumNumber j, double hbar = 1.0);

/// Σ_{m=−j}^{j} m² = j(j+1)(2j+1)/3.
double alpha_constant(SpinQuantumNumber j);
/// Σ m² by direct summation.
double alpha_by_summation(SpinQuantumNumber j);

/// max over k, l of |[J_k, J_l] − iħ ε_klm J_m|.
double commutation_residual(const SpinSystem& sys);
/// max |J1² + J2² + J3² − ħ² j(j+1) I|.
double casimir_residual(const SpinSystem& sys);

struct MaximallyMixedDemo {
  double product = 0.0;
  double bound = 0.0;
  double robertson = 0.0;
  double cov_sq = 0.0;
};

/// V(J1)V(J2) and its bound terms at ρ = I/d, from traces of the spin
/// matrices (independently of the generic bound machinery).
MaximallyMixedDemo maximally_mixed_demo(const SpinSystem& sys);

}  // namespace qbound
