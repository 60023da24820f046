#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qbound {

using cplx = std::complex<double>;

/// Dense square complex matrix stored row-major.
///
/// Every constructor rejects non-finite entries, so downstream code may assume
/// all values are finite. Arithmetic results are built through the unchecked
/// path and stay finite unless an operation overflows.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);
  /// Takes ownership of dim*dim row-major entries.
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);
  /// Row-wise literal, e.g. {{1, 0}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// Outer product |u><v|.
  static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }

  ComplexMatrix adjoint() const;
  cplx trace() const noexcept;
  /// Largest entry modulus.
  double max_abs() const noexcept;
  std::vector<cplx> column(std::size_t j) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix m, cplx s) { return m *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
  friend ComplexMatrix operator-(ComplexMatrix m) { return m *= -1.0; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// Self-adjoint matrix. Construction symmetrizes (M + M†)/2 when the
/// Hermiticity defect is below 1e-12·(1 + max|entry|) and throws
/// InvariantError otherwise.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix identity(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return base_; }
  std::size_t dim() const noexcept { return base_.dim(); }

  operator const ComplexMatrix&() const noexcept { return base_; }  // NOLINT

 private:
  ComplexMatrix base_;
};

/// Eigen-decomposition with ascending eigenvalues; column i of `vectors`
/// is the eigenvector for values[i].
struct Spectrum {
  std::vector<double> values;
  ComplexMatrix vectors;

  double smallest() const { return values.front(); }
  double largest() const { return values.back(); }
};

/// Hermiticity defect max |M_ij - conj(M_ji)|.
double hermiticity_defect(const ComplexMatrix& m) noexcept;

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix anticommutator(const ComplexMatrix& x, const ComplexMatrix& y);

/// Tr(X†X).
double frobenius_norm_sq(const ComplexMatrix& x) noexcept;

/// Tr(X†Y).
cplx hs_inner(const ComplexMatrix& x, const ComplexMatrix& y);

/// Tr(w X†X) for an arbitrary weight, with no positivity check on w.
/// Callers that need the norm semantics go through weighted_norm_sq.
double weighted_gram(const ComplexMatrix& x, const ComplexMatrix& w);

/// Tr(X†Y w).
cplx weighted_inner(const ComplexMatrix& x, const ComplexMatrix& y, const ComplexMatrix& w);

/// Cyclic complex Jacobi. Sweeps until the off-diagonal Frobenius mass is at
/// most 1e-14·‖M‖, throwing ConvergenceError after 100 sweeps.
Spectrum hermitian_spectrum(const HermitianMatrix& m);

/// ‖M - V diag(values) V†‖_F.
double reconstruction_error(const ComplexMatrix& m, const Spectrum& s);

/// max |<v_i|v_j> - δ_ij| over the eigenvector columns.
double orthonormality_defect(const Spectrum& s);

/// Maps a Hermitian matrix through a scalar function of its eigenvalues.
ComplexMatrix spectral_apply(const Spectrum& s, double (*f)(double));

void require_same_dim(const ComplexMatrix& x, const ComplexMatrix& y, const char* what);

/// Returns z.real() after checking |z.imag()| <= 1e-12·scale.
double require_real(cplx z, double scale, const char* what);

}  // namespace qbound
