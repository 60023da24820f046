#include "qbound/qubit.hpp"

#include <array>
#include <string>

#include "qbound/errors.hpp"

namespace qbound {

BlochState::BlochState(const Vec3& c) : c_(c) {
  for (double x : c) {
    if (!std::isfinite(x)) throw DomainError("Bloch vector is not finite");
  }
  if (norm(c) > 1.0 + 1e-12) {
    throw DomainError("Bloch vector length " + std::to_string(norm(c)) + " exceeds 1");
  }
}

const ComplexMatrix& pauli(int k) {
  static const std::array<ComplexMatrix, 3> sigma{
      ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
      ComplexMatrix{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
  };
  if (k < 0 || k > 2) throw DomainError("pauli index must be 0, 1 or 2");
  return sigma[static_cast<std::size_t>(k)];
}

namespace {

void require_qubit(std::size_t dim, const char* what) {
  if (dim != 2) throw DimensionError(std::string(what) + ": qubit (dim 2) required");
}

// (a0·I + a·σ) written out entrywise.
ComplexMatrix bloch_matrix(double a0, const Vec3& a) {
  return ComplexMatrix{{a0 + a[2], cplx(a[0], -a[1])}, {cplx(a[0], a[1]), a0 - a[2]}};
}

}  // namespace

DensityMatrix bloch_to_density(const BlochState& s) {
  return DensityMatrix(HermitianMatrix(bloch_matrix(0.5, scaled(s.c(), 0.5))));
}

BlochState density_to_bloch(const DensityMatrix& rho) {
  require_qubit(rho.dim(), "density_to_bloch");
  const ComplexMatrix& m = rho.matrix();
  // c_i = Tr(ρσ_i)
  const Vec3 c{2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
  return BlochState(c);
}

BlochObservable observable_to_bloch(const HermitianMatrix& a) {
  require_qubit(a.dim(), "observable_to_bloch");
  const ComplexMatrix& m = a.matrix();
  // a0 = Tr(A)/2, a_i = Tr(Aσ_i)/2
  return BlochObservable{0.5 * (m(0, 0) + m(1, 1)).real(),
                         {m(1, 0).real(), m(1, 0).imag(), 0.5 * (m(0, 0) - m(1, 1)).real()}};
}

HermitianMatrix bloch_to_observable(const BlochObservable& o) {
  return HermitianMatrix(bloch_matrix(o.a0, o.a));
}

BoundReport closed_form_report(const BlochObservable& a, const BlochObservable& b,
                               const BlochState& s) {
  const Vec3& c = s.c();
  const double ac = dot(a.a, c);
  const double bc = dot(b.a, c);
  const Vec3 axb = cross(a.a, b.a);
  const double triple = dot(axb, c);
  const double cov = dot(a.a, b.a) - ac * bc;

  BoundReport r;
  r.variance_a = norm_sq(a.a) - ac * ac;
  r.variance_b = norm_sq(b.a) - bc * bc;
  r.product = r.variance_a * r.variance_b;
  r.robertson = triple * triple;
  r.schrodinger_cov_sq = cov * cov;
  r.new_tradeoff = (1.0 - norm_sq(c)) * norm_sq(axb);
  finalize(r);
  return r;
}

double exact_equality_residual(const HermitianMatrix& a, const HermitianMatrix& b,
                               const DensityMatrix& rho) {
  require_qubit(rho.dim(), "exact_equality_residual");
  const BoundReport r = bound_report(a, b, rho);
  return std::abs(r.product - r.total_bound);
}

double xi(const HermitianMatrix& x, const HermitianMatrix& y) {
  require_qubit(x.dim(), "xi");
  require_same_dim(x, y, "xi");
  const cplx value = 2.0 * (x.matrix() * y.matrix()).trace() -
                     x.matrix().trace() * y.matrix().trace();
  return require_real(value, 1.0 + x.matrix().max_abs() * y.matrix().max_abs(), "xi");
}

}  // namespace qbound
