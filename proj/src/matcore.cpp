#include "qbound/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qbound/errors.hpp"

namespace qbound {

namespace {

void require_finite(std::span<const cplx> entries) {
  for (const cplx& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvariantError("matrix entry is not finite");
    }
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw DimensionError("expected " + std::to_string(dim_ * dim_) + " entries, got " +
                         std::to_string(data_.size()));
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionError("matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  require_finite(m.data_);
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw DimensionError("outer: vector lengths differ");
  ComplexMatrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

cplx ComplexMatrix::trace() const noexcept {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

std::vector<cplx> ComplexMatrix::column(std::size_t j) const {
  std::vector<cplx> c(dim_);
  for (std::size_t i = 0; i < dim_; ++i) c[i] = (*this)(i, j);
  return c;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) noexcept {
  for (cplx& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "matrix product");
  const std::size_t d = lhs.dim_;
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const cplx a = lhs(i, k);
      if (a == cplx{}) continue;
      for (std::size_t j = 0; j < d; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m);
  if (defect > 1e-12 * (1.0 + m.max_abs())) {
    throw InvariantError("matrix is not self-adjoint (defect " + std::to_string(defect) + ")");
  }
  base_ = m;
  base_ += m.adjoint();
  base_ *= 0.5;
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  return HermitianMatrix(ComplexMatrix::identity(dim));
}

double hermiticity_defect(const ComplexMatrix& m) noexcept {
  double defect = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
  return defect;
}

void require_same_dim(const ComplexMatrix& x, const ComplexMatrix& y, const char* what) {
  if (x.dim() != y.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(x.dim()) + " vs " + std::to_string(y.dim()) + ")");
  }
}

double require_real(cplx z, double scale, const char* what) {
  if (std::abs(z.imag()) > 1e-12 * scale) {
    throw NumericalDefect(std::string(what) + ": imaginary part " + std::to_string(z.imag()) +
                          " exceeds tolerance");
  }
  return z.real();
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_dim(x, y, "commutator");
  return x * y - y * x;
}

ComplexMatrix anticommutator(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_dim(x, y, "anticommutator");
  return x * y + y * x;
}

double frobenius_norm_sq(const ComplexMatrix& x) noexcept {
  double s = 0.0;
  for (const cplx& z : x.entries()) s += std::norm(z);
  return s;
}

cplx hs_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_dim(x, y, "hs_inner");
  cplx s = 0.0;
  const auto a = x.entries();
  const auto b = y.entries();
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

cplx weighted_inner(const ComplexMatrix& x, const ComplexMatrix& y, const ComplexMatrix& w) {
  require_same_dim(x, y, "weighted_inner");
  require_same_dim(x, w, "weighted_inner");
  // Tr(X†Y w) = Σ_{j,k} conj(X_jk) (Y w)_jk
  return hs_inner(x, y * w);
}

double weighted_gram(const ComplexMatrix& x, const ComplexMatrix& w) {
  return weighted_inner(x, x, w).real();
}

// ---------------------------------------------------------------------------

namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Annihilates a(p,q) with the unitary U = diag(1, conj(e)) · [[c, s], [-s, c]]
// acting on rows/columns p and q, where e = a(p,q)/|a(p,q)|.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  const cplx e = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx ec = std::conj(e);
  const std::size_t d = a.dim();

  for (std::size_t k = 0; k < d; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp - ec * s * akq;
    a(k, q) = s * akp + ec * c * akq;
  }
  for (std::size_t k = 0; k < d; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk - e * s * aqk;
    a(q, k) = s * apk + e * c * aqk;
  }
  for (std::size_t k = 0; k < d; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * vkp - ec * s * vkq;
    v(k, q) = s * vkp + ec * c * vkq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
}

}  // namespace

Spectrum hermitian_spectrum(const HermitianMatrix& m) {
  constexpr int kMaxSweeps = 100;
  const std::size_t d = m.dim();
  ComplexMatrix a = m.matrix();
  ComplexMatrix v = ComplexMatrix::identity(d);
  const double target = 1e-14 * std::sqrt(frobenius_norm_sq(a));

  int sweep = 0;
  while (off_diagonal_mass(a) > target) {
    if (++sweep > kMaxSweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge in 100 sweeps");
    }
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q)
        if (a(p, q) != cplx{}) jacobi_rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  Spectrum out;
  out.values.resize(d);
  out.vectors = ComplexMatrix(d);
  for (std::size_t k = 0; k < d; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < d; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix spectral_apply(const Spectrum& s, double (*f)(double)) {
  const std::size_t d = s.values.size();
  ComplexMatrix out(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double fk = f(s.values[k]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        out(i, j) += fk * s.vectors(i, k) * std::conj(s.vectors(j, k));
  }
  return out;
}

double reconstruction_error(const ComplexMatrix& m, const Spectrum& s) {
  const ComplexMatrix rebuilt = spectral_apply(s, [](double x) { return x; });
  return std::sqrt(frobenius_norm_sq(m - rebuilt));
}

double orthonormality_defect(const Spectrum& s) {
  const ComplexMatrix gram = s.vectors.adjoint() * s.vectors;
  double defect = 0.0;
  for (std::size_t i = 0; i < gram.dim(); ++i)
    for (std::size_t j = 0; j < gram.dim(); ++j)
      defect = std::max(defect, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  return defect;
}

}  // namespace qbound
