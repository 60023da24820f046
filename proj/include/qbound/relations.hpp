#pragma once

#include <span>
#include <vector>

#include "qbound/bloch.hpp"
#include "qbound/matcore.hpp"
#include "qbound/states.hpp"

namespace qbound {

/// The three lower-bound terms for one (ρ, A, B) triple together with the
/// variance product they bound.
struct BoundReport {
  double variance_a = 0.0;
  double variance_b = 0.0;
  double product = 0.0;
  double robertson = 0.0;           ///< ¼|⟨[A,B]⟩_ρ|²
  double schrodinger_cov_sq = 0.0;  ///< Cov_ρ(A,B)²
  double new_tradeoff = 0.0;        ///< λ1λ2/(λ1+λ2)·‖[A,B]‖²_ρ
  double total_bound = 0.0;
  double slack = 0.0;  ///< product − total_bound

  /// Slack below −1e-9·(1 + product) falsifies the relation.
  bool violates() const noexcept { return slack < -1e-9 * (1.0 + product); }
};

/// V_ρ(A) = Tr[(A − ⟨A⟩)²ρ].
double variance(const HermitianMatrix& a, const DensityMatrix& rho);

/// ½⟨{A,B}⟩_ρ − ⟨A⟩_ρ⟨B⟩_ρ.
double covariance(const HermitianMatrix& a, const HermitianMatrix& b, const DensityMatrix& rho);

double robertson_term(const HermitianMatrix& a, const HermitianMatrix& b, const DensityMatrix& rho);

double new_tradeoff_term(const HermitianMatrix& a, const HermitianMatrix& b,
                         const DensityMatrix& rho);

/// Standalone commutator-norm bound; numerically identical to
/// new_tradeoff_term but kept separate for comparison tables.
double conjectured_bound_term(const HermitianMatrix& a, const HermitianMatrix& b,
                              const DensityMatrix& rho);

/// (λ1²/(2λ_d))·‖[A,B]‖²_ρ, the bound obtained from the unweighted
/// commutator inequality and the norm sandwich. Zero for singular ρ.
double loose_bound_term(const HermitianMatrix& a, const HermitianMatrix& b,
                        const DensityMatrix& rho);

BoundReport bound_report(const HermitianMatrix& a, const HermitianMatrix& b,
                         const DensityMatrix& rho);

/// Fills total_bound and slack from the other fields.
void finalize(BoundReport& r) noexcept;

struct ShiftResult {
  cplx t;
  ComplexMatrix shifted;  ///< X + tY
};

/// Minimizes ‖X + tY‖_ω over complex t. Throws ZeroNormError if ‖Y‖_ω = 0.
ShiftResult shift_minimizer(const ComplexMatrix& x, const ComplexMatrix& y, const PositiveMatrix& w);

/// ‖X‖²_ω‖Y‖²_ω − |Tr(X†Yω)|², nonnegative by Cauchy–Schwarz.
double strengthened_lhs(const ComplexMatrix& x, const ComplexMatrix& y, const PositiveMatrix& w);

struct LemmaRatio {
  double lhs = 0.0;  ///< (λ1 + λ2)/(λ1 λ2)
  double rhs = 0.0;  ///< (ω_xx + ω_yy)/(ω_xx ω_yy − |ω_xy|²)
};

/// Compares the optimal constant of ω with the same quantity for the
/// compression of ω onto span{x, y}. x and y must be orthonormal within
/// 1e-10 (NotOrthonormal otherwise).
LemmaRatio lemma_a1_ratio_check(const PositiveMatrix& w, std::span<const cplx> x,
                                std::span<const cplx> y);

/// (|a|²|b|² − (a·b)²)·S_l(ρ) with linear entropy S_l = 2(1 − P). Qubit only.
double mpm_term(const BlochObservable& a, const BlochObservable& b, const DensityMatrix& rho);
double mpm_term(const HermitianMatrix& a, const HermitianMatrix& b, const DensityMatrix& rho);

/// (1 − P)/8·(ξ(A,A)ξ(B,B) − ξ(A,B)²). Qubit only.
double zheng_term(const HermitianMatrix& a, const HermitianMatrix& b, const DensityMatrix& rho);

}  // namespace qbound
