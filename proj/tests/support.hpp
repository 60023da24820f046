#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qbound/matcore.hpp"
#include "qbound/rng.hpp"
#include "qbound/states.hpp"

namespace qtest {

using qbound::ComplexMatrix;
using qbound::cplx;
using qbound::HermitianMatrix;
using qbound::PositiveMatrix;
using qbound::SeededStream;

inline ComplexMatrix random_matrix(std::size_t d, SeededStream& rng) {
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return m;
}

inline HermitianMatrix random_hermitian(std::size_t d, SeededStream& rng) {
  const ComplexMatrix g = random_matrix(d, rng);
  return HermitianMatrix((g + g.adjoint()) * 0.5);
}

/// GG†/Tr(GG†) blended with a little of I/d, so λ_min stays away from zero.
inline PositiveMatrix random_weight(std::size_t d, SeededStream& rng, double floor = 0.02) {
  const ComplexMatrix g = random_matrix(d, rng);
  ComplexMatrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  m *= 1.0 - floor;
  m += ComplexMatrix::identity(d) * (floor / static_cast<double>(d));
  return PositiveMatrix(HermitianMatrix((m + m.adjoint()) * 0.5));
}

inline std::vector<cplx> random_vector(std::size_t d, SeededStream& rng) {
  std::vector<cplx> v(d);
  for (cplx& z : v) z = cplx(rng.normal(), rng.normal());
  return v;
}

inline cplx vdot(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

/// Gram–Schmidt on two Gaussian vectors.
inline std::pair<std::vector<cplx>, std::vector<cplx>> orthonormal_pair(std::size_t d,
                                                                        SeededStream& rng) {
  std::vector<cplx> x = random_vector(d, rng);
  std::vector<cplx> y = random_vector(d, rng);
  const double nx = std::sqrt(vdot(x, x).real());
  for (cplx& z : x) z /= nx;
  const cplx overlap = vdot(x, y);
  for (std::size_t i = 0; i < d; ++i) y[i] -= overlap * x[i];
  const double ny = std::sqrt(vdot(y, y).real());
  for (cplx& z : y) z /= ny;
  return {x, y};
}

inline double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace qtest
