#pragma once

#include <cstddef>
#include <optional>

#include "qbound/matcore.hpp"
#include "qbound/rng.hpp"
#include "qbound/states.hpp"

namespace qbound {

/// ‖[X,Y]‖²_ω / (‖X‖²_ω ‖Y‖²_ω). Throws ZeroNormError if either norm vanishes.
double ratio(const ComplexMatrix& x, const ComplexMatrix& y, const PositiveMatrix& w);

struct TightnessCertificate {
  double c_target = 0.0;  ///< (λ1 + λ2)/(λ1 λ2) of ω
  double best_ratio = 0.0;
  ComplexMatrix x_best;
  ComplexMatrix y_best;  ///< Hermitian
  int restarts_used = 0;
  int iterations_used = 0;  ///< largest iteration count over all restarts
  int best_restart = -1;

  double gap() const noexcept { return c_target - best_ratio; }
  /// best_ratio ≤ c_target·(1 + 1e-9).
  bool within_bound() const noexcept { return best_ratio <= c_target * (1.0 + 1e-9); }
};

struct RatioSearchOptions {
  int restarts = 32;
  int max_iters = 500;
  /// Adds restart 0 seeded from the eigenvectors of the two smallest
  /// eigenvalues of ω.
  bool eigenpair_start = true;
};

/// Multi-start alternating power iteration. With Y fixed the ratio is a
/// Rayleigh quotient of the map X ↦ ad_Y*(ad_Y(X)) in the ω inner product;
/// with X fixed it is a Rayleigh quotient over Hermitian Y. Each half-step
/// applies that map once and renormalizes, so the ratio never decreases.
/// Restart r draws from rng.substream(r); ties between restarts resolve to
/// the lowest index.
TightnessCertificate maximize_ratio(const PositiveMatrix& w, const RatioSearchOptions& options,
                                    const SeededStream& rng);

/// One power step for X with Y held fixed: ad_Y*(ad_Y(X)) in the ω inner product.
ComplexMatrix ratio_step_x(const ComplexMatrix& x, const ComplexMatrix& y, const PositiveMatrix& w);
/// One power step for Hermitian Y with X held fixed.
ComplexMatrix ratio_step_y(const ComplexMatrix& x, const ComplexMatrix& y, const PositiveMatrix& w);

struct SlackProbe {
  double relative_slack = 1.0;  ///< slack / product at the witness
  double slack = 0.0;
  double product = 0.0;
  HermitianMatrix a;
  HermitianMatrix b;
  std::optional<DensityMatrix> rho;
  int iterations_used = 0;
};

/// slack/product of the extended relation, or 1 when the product vanishes.
double relative_slack(const HermitianMatrix& a, const HermitianMatrix& b, const DensityMatrix& rho);

/// Minimizes the relative slack over observable pairs by finite-difference
/// gradient descent with backtracking, from GUE starts. Without a fixed
/// state each restart draws a Hilbert–Schmidt state and keeps it fixed.
SlackProbe minimize_eq5_slack(std::size_t dim, const std::optional<DensityMatrix>& rho_fixed,
                              int restarts, int max_iters, const SeededStream& rng);

/// Real coordinates of a Hermitian matrix: diagonal, then (re, im) of the
/// strict upper triangle row by row. d² values.
std::vector<double> hermitian_to_params(const ComplexMatrix& m);
HermitianMatrix params_to_hermitian(std::size_t dim, std::span<const double> p);

}  // namespace qbound
