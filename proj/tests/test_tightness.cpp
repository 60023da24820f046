#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qbound/errors.hpp"
#include "qbound/qubit.hpp"
#include "qbound/relations.hpp"
#include "qbound/tightness.hpp"
#include "support.hpp"

using namespace qbound;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PositiveMatrix flat(std::size_t d) { return PositiveMatrix(ComplexMatrix::identity(d) * (1.0 / d)); }

double random_ratio(const PositiveMatrix& w, SeededStream& rng, bool general_x) {
  const std::size_t d = w.dim();
  const ComplexMatrix x =
      general_x ? qtest::random_matrix(d, rng) : qtest::random_hermitian(d, rng).matrix();
  return ratio(x, qtest::random_hermitian(d, rng), w);
}

// (1+1) evolution strategy over Hermitian pairs, minimizing relative slack.
double es_minimize_relative_slack(const DensityMatrix& rho, int iterations, SeededStream& rng) {
  const std::size_t d = rho.dim();
  std::vector<double> best = hermitian_to_params(qtest::random_hermitian(d, rng).matrix());
  const std::vector<double> b = hermitian_to_params(qtest::random_hermitian(d, rng).matrix());
  best.insert(best.end(), b.begin(), b.end());
  const std::size_t half = d * d;
  auto eval = [&](const std::vector<double>& p) {
    return relative_slack(params_to_hermitian(d, std::span(p.data(), half)),
                          params_to_hermitian(d, std::span(p.data() + half, half)), rho);
  };
  double f = eval(best);
  double sigma = 0.3;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> trial = best;
    for (double& v : trial) v += sigma * rng.normal();
    const double g = eval(trial);
    if (g <= f) {
      best = std::move(trial);
      f = g;
      sigma *= 1.5;
    } else {
      sigma *= std::pow(1.5, -0.25);
    }
    sigma = std::max(sigma, 1e-12);
  }
  return f;
}

}  // namespace

TEST_CASE("ratio examples") {
  CHECK_THAT(ratio(pauli(0), pauli(1), flat(2)), WithinAbs(4.0, 1e-14));
  CHECK_THAT(flat(2).optimal_constant(), WithinAbs(4.0, 1e-14));

  const std::vector<double> d1{1.0, 2.0, 3.0}, d2{0.5, -1.0, 4.0};
  SeededStream rng(70);
  const PositiveMatrix w = qtest::random_weight(3, rng);
  CHECK(ratio(ComplexMatrix::diagonal(d1), ComplexMatrix::diagonal(d2), flat(3)) == 0.0);
  const ComplexMatrix x = qtest::random_matrix(3, rng);
  CHECK(ratio(x, x, w) == 0.0);

  CHECK_THROWS_AS(ratio(ComplexMatrix(3), x, w), ZeroNormError);
  CHECK_THROWS_AS(ratio(x, ComplexMatrix(3), w), ZeroNormError);
  CHECK_THROWS_AS(ratio(x, pauli(0), w), DimensionError);
}

TEST_CASE("ratio is homogeneous") {
  SeededStream rng(71);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 50; ++rep) {
      const PositiveMatrix w = qtest::random_weight(d, rng);
      const ComplexMatrix x = qtest::random_matrix(d, rng);
      const ComplexMatrix y = qtest::random_hermitian(d, rng).matrix();
      const cplx alpha(rng.normal(), rng.normal());
      const double beta = 3.0 * rng.normal();
      CHECK_THAT(ratio(alpha * x, beta * y, w), WithinRel(ratio(x, y, w), 1e-12));
    }
  }
}

TEST_CASE("optimal constant is never exceeded and shift strengthening holds") {
  SeededStream rng(72);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 4000; ++rep) {
      const PositiveMatrix w = qtest::random_weight(d, rng, rep % 2 == 0 ? 0.02 : 1e-4);
      const double c = w.optimal_constant();
      const ComplexMatrix x =
          rep % 3 == 0 ? qtest::random_hermitian(d, rng).matrix() : qtest::random_matrix(d, rng);
      const ComplexMatrix y = qtest::random_hermitian(d, rng).matrix();
      CHECK(ratio(x, y, w) <= c * (1.0 + 1e-9));
      const double comm = weighted_norm_sq(commutator(x, y), w);
      CHECK(c * strengthened_lhs(x, y, w) >= comm - 1e-9 * c * weighted_norm_sq(x, w) * weighted_norm_sq(y, w));
    }
  }
}

TEST_CASE("eigenvector pair saturates the optimal constant") {
  SeededStream rng(73);
  for (std::size_t d = 2; d <= 7; ++d) {
    for (int rep = 0; rep < 50; ++rep) {
      const PositiveMatrix w = qtest::random_weight(d, rng);
      const auto e1 = w.spectrum().vectors.column(0);
      const auto e2 = w.spectrum().vectors.column(1);
      const double l1 = w.spectrum().values[0];
      const double l2 = w.spectrum().values[1];
      const ComplexMatrix x = ComplexMatrix::outer(e1, e2);
      const ComplexMatrix y = l2 * ComplexMatrix::outer(e1, e1) - l1 * ComplexMatrix::outer(e2, e2);
      CHECK_THAT(ratio(x, y, w), WithinRel((l1 + l2) / (l1 * l2), 1e-10));
    }
  }
}

TEST_CASE("power steps never decrease the ratio") {
  SeededStream rng(74);
  for (std::size_t d = 2; d <= 5; ++d) {
    for (int rep = 0; rep < 20; ++rep) {
      const PositiveMatrix w = qtest::random_weight(d, rng);
      ComplexMatrix x = qtest::random_matrix(d, rng);
      ComplexMatrix y = qtest::random_hermitian(d, rng).matrix();
      double r = ratio(x, y, w);
      for (int it = 0; it < 30; ++it) {
        x = ratio_step_x(x, y, w);
        const double rx = ratio(x, y, w);
        CHECK(rx >= r * (1.0 - 1e-12));
        y = ratio_step_y(x, y, w);
        CHECK(hermiticity_defect(y) == 0.0);
        const double ry = ratio(x, y, w);
        CHECK(ry >= rx * (1.0 - 1e-12));
        r = ry;
        x *= 1.0 / std::sqrt(weighted_norm_sq(x, w));
        y *= 1.0 / std::sqrt(weighted_norm_sq(y, w));
      }
    }
  }
}

TEST_CASE("maximize_ratio on flat weights") {
  const TightnessCertificate c2 = maximize_ratio(flat(2), {}, SeededStream(1));
  CHECK_THAT(c2.best_ratio, WithinRel(4.0, 1e-6));
  for (std::size_t d = 2; d <= 5; ++d) {
    const TightnessCertificate c = maximize_ratio(flat(d), {}, SeededStream(d));
    INFO("d = " << d);
    CHECK_THAT(c.c_target, WithinRel(2.0 * d, 1e-12));
    CHECK_THAT(c.best_ratio, WithinRel(2.0 * d, 1e-3));
    CHECK(c.within_bound());
  }
}

TEST_CASE("maximize_ratio on random weights against random search") {
  SeededStream rng(75);
  for (int rep = 0; rep < 3; ++rep) {
    const PositiveMatrix w = qtest::random_weight(3, rng);
    const TightnessCertificate cert = maximize_ratio(w, {}, SeededStream(100 + rep));
    CHECK(cert.best_ratio >= 0.999 * cert.c_target);
    CHECK(cert.within_bound());
    CHECK(hermiticity_defect(cert.y_best) <= 1e-12 * (1.0 + cert.y_best.max_abs()));
    CHECK_THAT(ratio(cert.x_best, cert.y_best, w), WithinRel(cert.best_ratio, 1e-12));

    double searched = 0.0;
    SeededStream search = rng.substream(static_cast<std::uint64_t>(rep));
    for (int i = 0; i < 1000000; ++i) searched = std::max(searched, random_ratio(w, search, i % 2 == 0));
    CHECK(searched <= cert.best_ratio * (1.0 + 1e-9));
    CHECK(searched <= cert.c_target * (1.0 + 1e-9));
  }
}

TEST_CASE("maximize_ratio without the eigenvector start") {
  SeededStream rng(76);
  for (std::size_t d : {3u, 4u}) {
    const PositiveMatrix w = qtest::random_weight(d, rng);
    RatioSearchOptions opts;
    opts.eigenpair_start = false;
    const TightnessCertificate cert = maximize_ratio(w, opts, SeededStream(9));
    CHECK(cert.restarts_used == 32);
    CHECK(cert.within_bound());
    CHECK(cert.iterations_used <= 500);
    CHECK(cert.best_ratio >= 0.999 * cert.c_target);
  }
}

TEST_CASE("maximize_ratio is reproducible and validates restarts") {
  SeededStream rng(77);
  const PositiveMatrix w = qtest::random_weight(4, rng);
  RatioSearchOptions opts;
  opts.restarts = 8;
  opts.max_iters = 60;
  const TightnessCertificate a = maximize_ratio(w, opts, SeededStream(5));
  const TightnessCertificate b = maximize_ratio(w, opts, SeededStream(5));
  CHECK(a.best_ratio == b.best_ratio);
  CHECK(a.x_best == b.x_best);
  CHECK(a.y_best == b.y_best);
  CHECK(a.best_restart == b.best_restart);
  CHECK(a.iterations_used == b.iterations_used);
  CHECK(a.restarts_used == 9);

  opts.restarts = 0;
  CHECK_THROWS_AS(maximize_ratio(w, opts, SeededStream(5)), DomainError);
}

TEST_CASE("Hermitian parameterization round trip") {
  SeededStream rng(78);
  for (std::size_t d = 1; d <= 6; ++d) {
    const HermitianMatrix h = qtest::random_hermitian(d, rng);
    const std::vector<double> p = hermitian_to_params(h.matrix());
    CHECK(p.size() == d * d);
    CHECK(params_to_hermitian(d, p).matrix() == h.matrix());
  }
  const std::vector<double> wrong(5);
  CHECK_THROWS_AS(params_to_hermitian(2, wrong), DimensionError);
}

TEST_CASE("relative slack probe") {
  // Degenerate witness: A = B at the maximally mixed state.
  SeededStream rng(79);
  const HermitianMatrix a = qtest::random_hermitian(3, rng);
  CHECK_THAT(relative_slack(a, a, DensityMatrix::maximally_mixed(3)), WithinAbs(0.0, 1e-12));
  CHECK(relative_slack(HermitianMatrix::identity(3), a, DensityMatrix::maximally_mixed(3)) == 1.0);

  const SlackProbe q = minimize_eq5_slack(2, std::nullopt, 4, 50, SeededStream(3));
  CHECK(q.slack >= -1e-9 * (1.0 + q.product));
  CHECK(q.slack <= 1e-9 * (1.0 + q.product));
  CHECK(q.rho.has_value());

  const DensityMatrix rho3 = sample_density_hs(3, rng);
  const SlackProbe p = minimize_eq5_slack(3, rho3, 4, 300, SeededStream(4));
  CHECK(p.relative_slack >= -1e-9);
  CHECK(p.slack >= -1e-9 * (1.0 + p.product));
  CHECK_THAT(p.relative_slack, WithinAbs(relative_slack(p.a, p.b, *p.rho), 1e-12));
  CHECK(p.rho->matrix() == rho3.matrix());

  SeededStream es_rng(80);
  const double baseline = es_minimize_relative_slack(rho3, 20000, es_rng);
  CHECK(baseline >= -1e-9);
  CHECK(std::abs(baseline - p.relative_slack) <= 1e-6);

  CHECK_THROWS_AS(minimize_eq5_slack(1, std::nullopt, 1, 1, SeededStream(1)), DimensionError);
  CHECK_THROWS_AS(minimize_eq5_slack(3, DensityMatrix::maximally_mixed(2), 1, 1, SeededStream(1)),
                  DimensionError);
  CHECK_THROWS_AS(minimize_eq5_slack(2, std::nullopt, 0, 1, SeededStream(1)), DomainError);
}
