#include "qbound/relations.hpp"

#include <algorithm>
#include <cmath>

#include "qbound/errors.hpp"
#include "qbound/qubit.hpp"

namespace qbound {

namespace {

ComplexMatrix centered(const HermitianMatrix& a, const DensityMatrix& rho) {
  const double mean = expectation(a, rho);
  ComplexMatrix out = a.matrix();
  for (std::size_t i = 0; i < out.dim(); ++i) out(i, i) -= mean;
  return out;
}

void require_qubit(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 2) throw DimensionError(std::string(what) + ": qubit (dim 2) required");
}

}  // namespace

double variance(const HermitianMatrix& a, const DensityMatrix& rho) {
  require_same_dim(a, rho.matrix(), "variance");
  return std::max(0.0, weighted_gram(centered(a, rho), rho.matrix()));
}

double covariance(const HermitianMatrix& a, const HermitianMatrix& b, const DensityMatrix& rho) {
  require_same_dim(a, b, "covariance");
  require_same_dim(a, rho.matrix(), "covariance");
  const ComplexMatrix ac = centered(a, rho);
  const ComplexMatrix bc = centered(b, rho);
  const double scale = 1.0 + std::sqrt(frobenius_norm_sq(ac) * frobenius_norm_sq(bc));
  return require_real(0.5 * expectation(anticommutator(ac, bc), rho), scale, "covariance");
}

double robertson_term(const HermitianMatrix& a, const HermitianMatrix& b,
                      const DensityMatrix& rho) {
  require_same_dim(a, b, "robertson_term");
  return 0.25 * std::norm(expectation(commutator(a, b), rho));
}

double new_tradeoff_term(const HermitianMatrix& a, const HermitianMatrix& b,
                         const DensityMatrix& rho) {
  require_same_dim(a, b, "new_tradeoff_term");
  return mixing_coefficient(rho).value * weighted_norm_sq(commutator(a, b), rho);
}

double conjectured_bound_term(const HermitianMatrix& a, const HermitianMatrix& b,
                              const DensityMatrix& rho) {
  return new_tradeoff_term(a, b, rho);
}

double loose_bound_term(const HermitianMatrix& a, const HermitianMatrix& b,
                        const DensityMatrix& rho) {
  require_same_dim(a, b, "loose_bound_term");
  const auto& values = rho.spectrum().values;
  const double lmin = values.front();
  const double lmax = values.back();
  if (lmin <= kZeroEigenvalueThreshold * lmax) return 0.0;
  return lmin * lmin / (2.0 * lmax) * weighted_norm_sq(commutator(a, b), rho);
}

void finalize(BoundReport& r) noexcept {
  r.total_bound = r.robertson + r.schrodinger_cov_sq + r.new_tradeoff;
  r.slack = r.product - r.total_bound;
}

BoundReport bound_report(const HermitianMatrix& a, const HermitianMatrix& b,
                         const DensityMatrix& rho) {
  require_same_dim(a, b, "bound_report");
  require_same_dim(a, rho.matrix(), "bound_report");
  const ComplexMatrix& w = rho.matrix();
  const ComplexMatrix ac = centered(a, rho);
  const ComplexMatrix bc = centered(b, rho);
  // [Â, B̂] = [A, B]
  const ComplexMatrix comm = commutator(ac, bc);

  BoundReport r;
  r.variance_a = std::max(0.0, weighted_gram(ac, w));
  r.variance_b = std::max(0.0, weighted_gram(bc, w));
  r.product = r.variance_a * r.variance_b;
  r.robertson = 0.25 * std::norm(expectation(comm, rho));
  const double scale = 1.0 + std::sqrt(frobenius_norm_sq(ac) * frobenius_norm_sq(bc));
  const double cov =
      require_real(0.5 * expectation(anticommutator(ac, bc), rho), scale, "covariance");
  r.schrodinger_cov_sq = cov * cov;
  r.new_tradeoff = mixing_coefficient(rho).value * std::max(0.0, weighted_gram(comm, w));
  finalize(r);
  return r;
}

ShiftResult shift_minimizer(const ComplexMatrix& x, const ComplexMatrix& y,
                            const PositiveMatrix& w) {
  require_same_dim(x, y, "shift_minimizer");
  const double ny = weighted_norm_sq(y, w);
  if (!(ny > 0.0)) throw ZeroNormError("shift_minimizer: ‖Y‖_ω = 0");
  const cplx overlap = weighted_inner(x, y, w.matrix());
  const cplx t = -std::conj(overlap) / ny;
  return {t, x + t * y};
}

double strengthened_lhs(const ComplexMatrix& x, const ComplexMatrix& y, const PositiveMatrix& w) {
  require_same_dim(x, y, "strengthened_lhs");
  const double nx = weighted_norm_sq(x, w);
  const double ny = weighted_norm_sq(y, w);
  const double value = nx * ny - std::norm(weighted_inner(x, y, w.matrix()));
  if (value < -1e-12 * (1.0 + nx * ny)) {
    throw NumericalDefect("strengthened_lhs: weighted Cauchy–Schwarz violated");
  }
  return std::max(0.0, value);
}

LemmaRatio lemma_a1_ratio_check(const PositiveMatrix& w, std::span<const cplx> x,
                                std::span<const cplx> y) {
  const std::size_t d = w.dim();
  if (x.size() != d || y.size() != d) throw DimensionError("lemma_a1_ratio_check: vector length");
  cplx xx = 0.0, yy = 0.0, xy = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    xx += std::conj(x[i]) * x[i];
    yy += std::conj(y[i]) * y[i];
    xy += std::conj(x[i]) * y[i];
  }
  if (std::abs(xx - 1.0) > 1e-10 || std::abs(yy - 1.0) > 1e-10 || std::abs(xy) > 1e-10) {
    throw NotOrthonormal("lemma_a1_ratio_check: x and y must be orthonormal");
  }

  const ComplexMatrix& m = w.matrix();
  auto form = [&](std::span<const cplx> u, std::span<const cplx> v) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) s += std::conj(u[i]) * m(i, j) * v[j];
    return s;
  };
  const double wxx = form(x, x).real();
  const double wyy = form(y, y).real();
  const cplx wxy = form(x, y);

  const double l1 = w.spectrum().values[0];
  const double l2 = w.spectrum().values[1];
  return {(l1 + l2) / (l1 * l2), (wxx + wyy) / (wxx * wyy - std::norm(wxy))};
}

double mpm_term(const BlochObservable& a, const BlochObservable& b, const DensityMatrix& rho) {
  require_qubit(rho, "mpm_term");
  const double linear_entropy = 2.0 * (1.0 - purity(rho));
  const double ab = dot(a.a, b.a);
  return (norm_sq(a.a) * norm_sq(b.a) - ab * ab) * linear_entropy;
}

double mpm_term(const HermitianMatrix& a, const HermitianMatrix& b, const DensityMatrix& rho) {
  require_qubit(rho, "mpm_term");
  return mpm_term(observable_to_bloch(a), observable_to_bloch(b), rho);
}

double zheng_term(const HermitianMatrix& a, const HermitianMatrix& b, const DensityMatrix& rho) {
  require_qubit(rho, "zheng_term");
  require_same_dim(a, b, "zheng_term");
  require_same_dim(a, rho.matrix(), "zheng_term");
  const double xab = xi(a, b);
  return (1.0 - purity(rho)) / 8.0 * (xi(a, a) * xi(b, b) - xab * xab);
}

}  // namespace qbound
