#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qbound/errors.hpp"
#include "qbound/qubit.hpp"
#include "qbound/relations.hpp"
#include "qbound/states.hpp"
#include "support.hpp"

using namespace qbound;
using Catch::Matchers::WithinAbs;

namespace {

const HermitianMatrix& sx() {
  static const HermitianMatrix m(pauli(0));
  return m;
}
const HermitianMatrix& sy() {
  static const HermitianMatrix m(pauli(1));
  return m;
}
const HermitianMatrix& sz() {
  static const HermitianMatrix m(pauli(2));
  return m;
}

DensityMatrix half() { return DensityMatrix::maximally_mixed(2); }
DensityMatrix up() { return bloch_to_density(BlochState({0.0, 0.0, 1.0})); }

double scale_of(const BoundReport& r) { return 1.0 + r.product; }

}  // namespace

TEST_CASE("variance examples") {
  CHECK_THAT(variance(sx(), half()), WithinAbs(1.0, 1e-15));
  CHECK_THAT(variance(sz(), up()), WithinAbs(0.0, 1e-15));
  CHECK_THAT(variance(sx(), bloch_to_density(BlochState({0.0, 0.0, 0.6}))), WithinAbs(1.0, 1e-15));
  CHECK_THROWS_AS(variance(HermitianMatrix::identity(3), half()), DimensionError);
}

TEST_CASE("variance equals the ρ-norm of the centered observable") {
  SeededStream rng(40);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 50; ++rep) {
      const DensityMatrix rho = sample_density_hs(d, rng);
      const HermitianMatrix a = sample_observable_gue(d, rng);
      ComplexMatrix centered = a.matrix();
      const double mean = expectation(a, rho);
      for (std::size_t i = 0; i < d; ++i) centered(i, i) -= mean;
      const double v = variance(a, rho);
      CHECK(v >= 0.0);
      CHECK_THAT(v, WithinAbs(weighted_norm_sq(centered, rho), 1e-12 * (1.0 + v)));
      // Tr(A²ρ) − ⟨A⟩² as an independent formula.
      CHECK_THAT(v, WithinAbs(expectation(a.matrix() * a.matrix(), rho).real() - mean * mean,
                              1e-10 * (1.0 + frobenius_norm_sq(a))));
    }
  }
}

TEST_CASE("covariance examples") {
  CHECK_THAT(covariance(sx(), sy(), half()), WithinAbs(0.0, 1e-15));

  SeededStream rng(41);
  for (int rep = 0; rep < 100; ++rep) {
    const Vec3 c = scaled(sample_unit_vector(rng), rng.uniform());
    const DensityMatrix rho = bloch_to_density(BlochState(c));
    const BlochObservable ao{rng.normal(), {rng.normal(), rng.normal(), rng.normal()}};
    const BlochObservable bo{rng.normal(), {rng.normal(), rng.normal(), rng.normal()}};
    const HermitianMatrix a = bloch_to_observable(ao);
    const HermitianMatrix b = bloch_to_observable(bo);
    const double closed = dot(ao.a, bo.a) - dot(ao.a, c) * dot(bo.a, c);
    CHECK_THAT(covariance(a, b, rho), WithinAbs(closed, 1e-12 * (1.0 + std::abs(closed))));
    CHECK_THAT(covariance(a, a, rho), WithinAbs(variance(a, rho), 1e-12 * (1.0 + variance(a, rho))));
  }
  CHECK_THROWS_AS(covariance(sx(), HermitianMatrix::identity(3), half()), DimensionError);
}

TEST_CASE("robertson_term examples") {
  CHECK_THAT(robertson_term(sx(), sy(), half()), WithinAbs(0.0, 1e-15));
  CHECK_THAT(robertson_term(sx(), sy(), up()), WithinAbs(1.0, 1e-15));
  const std::vector<double> d1{1.0, -2.0, 0.5}, d2{3.0, 0.0, 1.0};
  const DensityMatrix rho3 = DensityMatrix::maximally_mixed(3);
  CHECK(robertson_term(HermitianMatrix(ComplexMatrix::diagonal(d1)),
                       HermitianMatrix(ComplexMatrix::diagonal(d2)), rho3) == 0.0);
}

TEST_CASE("new_tradeoff_term examples") {
  SeededStream rng(42);
  for (std::size_t d = 2; d <= 7; ++d) {
    const HermitianMatrix a = sample_observable_gue(d, rng);
    const HermitianMatrix b = sample_observable_gue(d, rng);
    const double f = frobenius_norm_sq(commutator(a, b));
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(d);
    CHECK_THAT(new_tradeoff_term(a, b, mixed), WithinAbs(f / (2.0 * d * d), 1e-12 * (1.0 + f)));
    CHECK_THAT(conjectured_bound_term(a, b, mixed), WithinAbs(f / (2.0 * d * d), 1e-12 * (1.0 + f)));

    const std::vector<cplx> psi = qtest::random_vector(d, rng);
    CHECK(new_tradeoff_term(a, b, DensityMatrix::pure(psi)) == 0.0);
    CHECK(conjectured_bound_term(a, b, DensityMatrix::pure(psi)) == 0.0);
  }
  for (int rep = 0; rep < 200; ++rep) {
    const DensityMatrix rho = sample_density_hs(2, rng);
    const HermitianMatrix a = sample_observable_gue(2, rng);
    const HermitianMatrix b = sample_observable_gue(2, rng);
    const double f = frobenius_norm_sq(commutator(a, b));
    const double expected = (1.0 - purity(rho)) / 4.0 * f;
    CHECK_THAT(new_tradeoff_term(a, b, rho), WithinAbs(expected, 1e-12 * (1.0 + f)));
    CHECK(conjectured_bound_term(a, b, rho) == new_tradeoff_term(a, b, rho));
  }
}

TEST_CASE("bound_report examples") {
  const BoundReport mixed = bound_report(sx(), sy(), half());
  CHECK_THAT(mixed.product, WithinAbs(1.0, 1e-15));
  CHECK_THAT(mixed.robertson, WithinAbs(0.0, 1e-15));
  CHECK_THAT(mixed.schrodinger_cov_sq, WithinAbs(0.0, 1e-15));
  CHECK_THAT(mixed.new_tradeoff, WithinAbs(1.0, 1e-15));
  CHECK_THAT(mixed.slack, WithinAbs(0.0, 1e-15));

  const BoundReport pure = bound_report(sx(), sy(), up());
  CHECK_THAT(pure.product, WithinAbs(1.0, 1e-15));
  CHECK_THAT(pure.robertson, WithinAbs(1.0, 1e-15));
  CHECK_THAT(pure.schrodinger_cov_sq, WithinAbs(0.0, 1e-15));
  CHECK_THAT(pure.new_tradeoff, WithinAbs(0.0, 1e-15));
  CHECK_THAT(pure.slack, WithinAbs(0.0, 1e-15));

  SeededStream rng(43);
  const std::vector<double> d1{1.0, -2.0, 0.5, 4.0}, d2{3.0, 0.0, 1.0, -1.0};
  const DensityMatrix rho = sample_density_hs(4, rng);
  const BoundReport commuting = bound_report(HermitianMatrix(ComplexMatrix::diagonal(d1)),
                                             HermitianMatrix(ComplexMatrix::diagonal(d2)), rho);
  CHECK(commuting.robertson == 0.0);
  CHECK(commuting.new_tradeoff == 0.0);

  CHECK_THROWS_AS(bound_report(sx(), sy(), DensityMatrix::maximally_mixed(3)), DimensionError);
}

TEST_CASE("bound_report field invariants and agreement with the single-term functions") {
  SeededStream rng(44);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 50; ++rep) {
      const DensityMatrix rho = sample_density_hs(d, rng);
      const HermitianMatrix a = sample_observable_gue(d, rng);
      const HermitianMatrix b = sample_observable_gue(d, rng);
      const BoundReport r = bound_report(a, b, rho);
      const double tol = 1e-12 * scale_of(r);
      CHECK_THAT(r.product, WithinAbs(r.variance_a * r.variance_b, tol));
      CHECK(r.total_bound == r.robertson + r.schrodinger_cov_sq + r.new_tradeoff);
      CHECK(r.slack == r.product - r.total_bound);
      CHECK_THAT(r.variance_a, WithinAbs(variance(a, rho), tol));
      CHECK_THAT(r.variance_b, WithinAbs(variance(b, rho), tol));
      CHECK_THAT(r.robertson, WithinAbs(robertson_term(a, b, rho), tol));
      const double cov = covariance(a, b, rho);
      CHECK_THAT(r.schrodinger_cov_sq, WithinAbs(cov * cov, tol));
      CHECK_THAT(r.new_tradeoff, WithinAbs(new_tradeoff_term(a, b, rho), tol));
    }
  }
}

TEST_CASE("extended relation holds on random triples") {
  SeededStream root(45);
  for (std::size_t d = 2; d <= 8; ++d) {
    for (std::uint64_t i = 0; i < 2000; ++i) {
      SeededStream s = root.substream(d * 100000 + i);
      const DensityMatrix rho = sample_density_hs(d, s);
      const BoundReport r = bound_report(sample_observable_gue(d, s), sample_observable_gue(d, s), rho);
      CHECK(r.slack >= -1e-9 * scale_of(r));
      CHECK(r.product - r.robertson - r.schrodinger_cov_sq >= -1e-9 * scale_of(r));
    }
  }
}

TEST_CASE("extended relation near pure and rank-deficient states") {
  SeededStream rng(46);
  for (std::size_t d = 3; d <= 6; ++d) {
    for (int rep = 0; rep < 100; ++rep) {
      // Rank-two state: the λ1 = 0 branch.
      const std::vector<cplx> u = qtest::random_vector(d, rng);
      const std::vector<cplx> v = qtest::random_vector(d, rng);
      ComplexMatrix m = ComplexMatrix::outer(u, u) + ComplexMatrix::outer(v, v);
      m *= 1.0 / m.trace().real();
      const DensityMatrix rho{HermitianMatrix(m)};
      const BoundReport r = bound_report(sample_observable_gue(d, rng), sample_observable_gue(d, rng), rho);
      CHECK(r.new_tradeoff == 0.0);
      CHECK(r.slack >= -1e-9 * scale_of(r));
    }
  }
}

TEST_CASE("weighted commutator norm equals half the Frobenius norm for qubits") {
  SeededStream rng(47);
  for (int rep = 0; rep < 500; ++rep) {
    const DensityMatrix rho = sample_density_hs(2, rng);
    const ComplexMatrix c = commutator(sample_observable_gue(2, rng), sample_observable_gue(2, rng));
    const double f = frobenius_norm_sq(c);
    CHECK_THAT(weighted_norm_sq(c, rho), WithinAbs(0.5 * f, 1e-12 * (1.0 + f)));
  }
}

TEST_CASE("bound_report is invariant under scalar shifts") {
  SeededStream rng(48);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 50; ++rep) {
      const DensityMatrix rho = sample_density_hs(d, rng);
      const HermitianMatrix a = sample_observable_gue(d, rng);
      const HermitianMatrix b = sample_observable_gue(d, rng);
      const double alpha = 4.0 * rng.normal();
      const double beta = 4.0 * rng.normal();
      const HermitianMatrix a2(a.matrix() + ComplexMatrix::identity(d) * alpha);
      const HermitianMatrix b2(b.matrix() + ComplexMatrix::identity(d) * beta);
      const BoundReport r = bound_report(a, b, rho);
      const BoundReport s = bound_report(a2, b2, rho);
      const double tol = 1e-10 * (1.0 + r.product) * (1.0 + alpha * alpha + beta * beta);
      CHECK_THAT(s.variance_a, WithinAbs(r.variance_a, tol));
      CHECK_THAT(s.variance_b, WithinAbs(r.variance_b, tol));
      CHECK_THAT(s.robertson, WithinAbs(r.robertson, tol));
      CHECK_THAT(s.schrodinger_cov_sq, WithinAbs(r.schrodinger_cov_sq, tol));
      CHECK_THAT(s.new_tradeoff, WithinAbs(r.new_tradeoff, tol));
      CHECK_THAT(s.slack, WithinAbs(r.slack, tol));
    }
  }
}

TEST_CASE("loose_bound_term") {
  SeededStream rng(49);
  for (std::size_t d = 2; d <= 6; ++d) {
    const HermitianMatrix a = sample_observable_gue(d, rng);
    const HermitianMatrix b = sample_observable_gue(d, rng);
    const double f = frobenius_norm_sq(commutator(a, b));
    CHECK_THAT(loose_bound_term(a, b, DensityMatrix::maximally_mixed(d)),
               WithinAbs(f / (2.0 * d) / d, 1e-12 * (1.0 + f)));
    CHECK(loose_bound_term(a, b, DensityMatrix::pure(qtest::random_vector(d, rng))) == 0.0);
  }
  for (int rep = 0; rep < 1000; ++rep) {
    const DensityMatrix rho = sample_density_hs(2, rng);
    const HermitianMatrix a = sample_observable_gue(2, rng);
    const HermitianMatrix b = sample_observable_gue(2, rng);
    CHECK(loose_bound_term(a, b, rho) <= new_tradeoff_term(a, b, rho) + 1e-12);
  }
  for (std::size_t d = 2; d <= 8; ++d) {
    for (int rep = 0; rep < 200; ++rep) {
      const DensityMatrix rho = sample_density_hs(d, rng);
      const HermitianMatrix a = sample_observable_gue(d, rng);
      const HermitianMatrix b = sample_observable_gue(d, rng);
      const double product = variance(a, rho) * variance(b, rho);
      CHECK(loose_bound_term(a, b, rho) <= product + 1e-9 * (1.0 + product));
    }
  }
}

TEST_CASE("shift_minimizer examples") {
  SeededStream rng(50);
  const PositiveMatrix half_w(ComplexMatrix::identity(2) * 0.5);
  const ShiftResult orth = shift_minimizer(pauli(0), pauli(1), half_w);
  CHECK(orth.t == cplx(0.0, 0.0));
  CHECK(orth.shifted == pauli(0));

  const PositiveMatrix w = qtest::random_weight(3, rng);
  const ComplexMatrix x = qtest::random_matrix(3, rng);
  const ShiftResult same = shift_minimizer(x, x, w);
  CHECK(std::abs(same.t - cplx(-1.0, 0.0)) <= 1e-14);
  CHECK(same.shifted.max_abs() <= 1e-12 * (1.0 + x.max_abs()));

  CHECK_THROWS_AS(shift_minimizer(x, ComplexMatrix(3), w), ZeroNormError);
}

TEST_CASE("shift_minimizer attains the minimum") {
  SeededStream rng(51);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 40; ++rep) {
      const PositiveMatrix w = qtest::random_weight(d, rng);
      const ComplexMatrix x = qtest::random_matrix(d, rng);
      const ComplexMatrix y = qtest::random_matrix(d, rng);
      const ShiftResult r = shift_minimizer(x, y, w);
      const double nx = weighted_norm_sq(x, w);
      const double ny = weighted_norm_sq(y, w);
      const double expected = nx - std::norm(weighted_inner(x, y, w.matrix())) / ny;
      const double best = weighted_norm_sq(r.shifted, w);
      CHECK_THAT(best, WithinAbs(expected, 1e-10 * (1.0 + nx)));
      for (int k = 0; k < 100; ++k) {
        const cplx t2 = r.t + cplx(rng.normal(), rng.normal()) * std::pow(10.0, -3.0 * rng.uniform());
        CHECK(weighted_norm_sq(x + t2 * y, w) >= best - 1e-12 * (1.0 + nx));
      }
    }
  }
}

TEST_CASE("strengthened_lhs") {
  SeededStream rng(52);
  const PositiveMatrix half_w(ComplexMatrix::identity(2) * 0.5);
  CHECK_THAT(strengthened_lhs(pauli(0), pauli(1), half_w), WithinAbs(1.0, 1e-15));

  for (std::size_t d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 200; ++rep) {
      const PositiveMatrix w = qtest::random_weight(d, rng);
      const ComplexMatrix x = qtest::random_matrix(d, rng);
      const ComplexMatrix y = (rep % 2 == 0) ? qtest::random_matrix(d, rng)
                                             : qtest::random_hermitian(d, rng).matrix();
      const double nx = weighted_norm_sq(x, w);
      const double ny = weighted_norm_sq(y, w);
      CHECK(strengthened_lhs(x, x, w) <= 1e-12 * (1.0 + nx * nx));
      const double lhs = strengthened_lhs(x, y, w);
      CHECK(lhs >= 0.0);
      CHECK(lhs <= nx * ny * (1.0 + 1e-12));
      if (rep % 2 == 1) {
        const double rhs = weighted_norm_sq(commutator(x, y), w);
        CHECK(w.optimal_constant() * lhs >= rhs - 1e-9 * (1.0 + rhs));
      }
    }
  }
}

TEST_CASE("lemma_a1_ratio_check") {
  SeededStream rng(53);
  for (std::size_t d = 2; d <= 6; ++d) {
    const PositiveMatrix w = qtest::random_weight(d, rng);
    const auto e1 = w.spectrum().vectors.column(0);
    const auto e2 = w.spectrum().vectors.column(1);
    const LemmaRatio eig = lemma_a1_ratio_check(w, e1, e2);
    CHECK_THAT(eig.rhs, WithinAbs(eig.lhs, 1e-10 * eig.lhs));

    const PositiveMatrix flat(ComplexMatrix::identity(d) * (1.0 / d));
    const auto [x, y] = qtest::orthonormal_pair(d, rng);
    const LemmaRatio f = lemma_a1_ratio_check(flat, x, y);
    CHECK_THAT(f.lhs, WithinAbs(2.0 * d, 1e-12));
    CHECK_THAT(f.rhs, WithinAbs(2.0 * d, 1e-10));
  }

  for (int rep = 0; rep < 10000; ++rep) {
    const PositiveMatrix w = qtest::random_weight(4, rng);
    const auto [x, y] = qtest::orthonormal_pair(4, rng);
    const LemmaRatio r = lemma_a1_ratio_check(w, x, y);
    CHECK(r.lhs >= r.rhs - 1e-10 * r.lhs);
  }

  const PositiveMatrix w = qtest::random_weight(3, rng);
  const std::vector<cplx> a{1.0, 0.0, 0.0}, b{0.6, 0.8, 0.0}, c{2.0, 0.0, 0.0}, e{0.0, 1.0, 0.0};
  CHECK_THROWS_AS(lemma_a1_ratio_check(w, a, b), NotOrthonormal);
  CHECK_THROWS_AS(lemma_a1_ratio_check(w, c, e), NotOrthonormal);
  const std::vector<cplx> short_v{1.0, 0.0};
  CHECK_THROWS_AS(lemma_a1_ratio_check(w, short_v, short_v), DimensionError);
}

TEST_CASE("qubit-only terms reject other dimensions") {
  const DensityMatrix rho3 = DensityMatrix::maximally_mixed(3);
  const HermitianMatrix a = HermitianMatrix::identity(3);
  CHECK_THROWS_AS(zheng_term(a, a, rho3), DimensionError);
  CHECK_THROWS_AS(mpm_term(a, a, rho3), DimensionError);
  CHECK_THROWS_AS(mpm_term(BlochObservable{}, BlochObservable{}, rho3), DimensionError);
}
