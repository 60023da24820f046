#include "qbound/spin.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "qbound/errors.hpp"

namespace qbound {

SpinQuantumNumber::SpinQuantumNumber(int twice_j) : twice_(twice_j) {
  if (twice_j < 1) throw DomainError("spin j must be a positive half-integer");
}

SpinQuantumNumber SpinQuantumNumber::from_value(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!std::isfinite(j) || std::abs(twice - rounded) > 1e-12 || rounded < 1.0) {
    throw DomainError("spin j = " + std::to_string(j) + " is not a positive half-integer");
  }
  return SpinQuantumNumber(static_cast<int>(rounded));
}

namespace {

double parse_number(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse spin value '" + s + "'");
  }
  if (used != s.size()) throw DomainError("cannot parse spin value '" + s + "'");
  return value;
}

}  // namespace

SpinQuantumNumber SpinQuantumNumber::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_value(parse_number(text));
  int num = 0;
  int den = 0;
  const auto n = text.substr(0, slash);
  const auto d = text.substr(slash + 1);
  const auto rn = std::from_chars(n.data(), n.data() + n.size(), num);
  const auto rd = std::from_chars(d.data(), d.data() + d.size(), den);
  if (rn.ec != std::errc{} || rn.ptr != n.data() + n.size() || rd.ec != std::errc{} ||
      rd.ptr != d.data() + d.size() || den <= 0) {
    throw DomainError("cannot parse spin value '" + std::string(text) + "'");
  }
  if ((2 * num) % den != 0) {
    throw DomainError("spin j = " + std::string(text) + " is not a positive half-integer");
  }
  return SpinQuantumNumber((2 * num) / den);
}

SpinSystem build_spin(SpinQuantumNumber j, double hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be positive");
  const std::size_t d = j.dim();
  const double jv = j.value();

  ComplexMatrix raise(d);
  ComplexMatrix jz(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double m = jv - static_cast<double>(k);
    jz(k, k) = hbar * m;
    // J+|j,m⟩ = ħ√((j−m)(j+m+1)) |j,m+1⟩, and |j,m+1⟩ sits at index k−1.
    if (k > 0) raise(k - 1, k) = hbar * std::sqrt((jv - m) * (jv + m + 1.0));
  }
  const ComplexMatrix lower = raise.adjoint();

  SpinSystem sys;
  sys.j = j;
  sys.hbar = hbar;
  sys.j1 = HermitianMatrix((raise + lower) * 0.5);
  sys.j2 = HermitianMatrix((raise - lower) * cplx(0.0, -0.5));
  sys.j3 = HermitianMatrix(jz);
  return sys;
}

double alpha_constant(SpinQuantumNumber j) {
  const double jv = j.value();
  return jv * (jv + 1.0) * (2.0 * jv + 1.0) / 3.0;
}

double alpha_by_summation(SpinQuantumNumber j) {
  double sum = 0.0;
  for (int twice_m = -j.twice(); twice_m <= j.twice(); twice_m += 2) {
    const double m = 0.5 * twice_m;
    sum += m * m;
  }
  return sum;
}

double commutation_residual(const SpinSystem& sys) {
  const ComplexMatrix* ops[3] = {&sys.j1.matrix(), &sys.j2.matrix(), &sys.j3.matrix()};
  const cplx ih(0.0, sys.hbar);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      ComplexMatrix expected(sys.dim());
      if (k != l) {
        const int m = 3 - k - l;
        const double eps = ((l - k + 3) % 3 == 1) ? 1.0 : -1.0;
        expected = *ops[m] * (ih * eps);
      }
      worst = std::max(worst, (commutator(*ops[k], *ops[l]) - expected).max_abs());
    }
  }
  return worst;
}

double casimir_residual(const SpinSystem& sys) {
  const ComplexMatrix& a = sys.j1.matrix();
  const ComplexMatrix& b = sys.j2.matrix();
  const ComplexMatrix& c = sys.j3.matrix();
  const double jv = sys.j.value();
  const ComplexMatrix target =
      ComplexMatrix::identity(sys.dim()) * (sys.hbar * sys.hbar * jv * (jv + 1.0));
  return (a * a + b * b + c * c - target).max_abs();
}

MaximallyMixedDemo maximally_mixed_demo(const SpinSystem& sys) {
  const double d = static_cast<double>(sys.dim());
  const ComplexMatrix& a = sys.j1.matrix();
  const ComplexMatrix& b = sys.j2.matrix();

  const double mean_a = a.trace().real() / d;
  const double mean_b = b.trace().real() / d;
  const double var_a = (a * a).trace().real() / d - mean_a * mean_a;
  const double var_b = (b * b).trace().real() / d - mean_b * mean_b;
  const ComplexMatrix comm = commutator(a, b);
  const double cov = anticommutator(a, b).trace().real() / (2.0 * d) - mean_a * mean_b;

  MaximallyMixedDemo out;
  out.product = var_a * var_b;
  out.robertson = 0.25 * std::norm(comm.trace() / d);
  out.cov_sq = cov * cov;
  // λ1 = λ2 = 1/d, so the coefficient is 1/(2d), and ‖C‖²_ρ = ‖C‖²/d.
  out.bound = frobenius_norm_sq(comm) / (2.0 * d * d);
  return out;
}

}  // namespace qbound
