#pragma once

#include "qbound/bloch.hpp"
#include "qbound/matcore.hpp"
#include "qbound/relations.hpp"
#include "qbound/states.hpp"

namespace qbound {

/// σ_x, σ_y, σ_z for k = 0, 1, 2.
const ComplexMatrix& pauli(int k);

DensityMatrix bloch_to_density(const BlochState& s);
BlochState density_to_bloch(const DensityMatrix& rho);

BlochObservable observable_to_bloch(const HermitianMatrix& a);
HermitianMatrix bloch_to_observable(const BlochObservable& o);

/// All BoundReport fields from real 3-vector arithmetic only.
BoundReport closed_form_report(const BlochObservable& a, const BlochObservable& b,
                               const BlochState& s);

/// |product − total_bound| along the matrix path; zero up to rounding for
/// every qubit triple.
double exact_equality_residual(const HermitianMatrix& a, const HermitianMatrix& b,
                               const DensityMatrix& rho);

/// ξ(X, Y) = 2Tr(XY) − Tr(X)Tr(Y).
double xi(const HermitianMatrix& x, const HermitianMatrix& y);

}  // namespace qbound
