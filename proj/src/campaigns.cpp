#include "qbound/campaigns.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "qbound/errors.hpp"
#include "qbound/parallel.hpp"
#include "qbound/qubit.hpp"
#include "qbound/rng.hpp"
#include "qbound/states.hpp"

namespace qbound {

VerifySummary run_verify(std::size_t dim, std::size_t samples, std::uint64_t seed) {
  if (dim < 2) throw DomainError("verify: dim must be >= 2");
  if (samples < 1) throw DomainError("verify: samples must be >= 1");

  const SeededStream root(seed);
  std::vector<BoundReport> reports(samples);
  parallel_for(samples, [&](std::size_t i) {
    SeededStream s = root.substream(i);
    const DensityMatrix rho = sample_density_hs(dim, s);
    const HermitianMatrix a = sample_observable_gue(dim, s);
    const HermitianMatrix b = sample_observable_gue(dim, s);
    reports[i] = bound_report(a, b, rho);
  });

  VerifySummary out;
  out.dim = dim;
  out.samples = samples;
  out.seed = seed;
  out.min_slack = std::numeric_limits<double>::infinity();
  out.min_relative_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const BoundReport& r = reports[i];
    const double scale = 1.0 + r.product;
    out.min_slack = std::min(out.min_slack, r.slack);
    if (r.slack / scale < out.min_relative_slack) {
      out.min_relative_slack = r.slack / scale;
      out.worst_index = i;
    }
    out.max_relative_residual = std::max(out.max_relative_residual, std::abs(r.slack) / scale);
    if (r.violates()) ++out.violations;
    if (r.product - r.robertson - r.schrodinger_cov_sq < -1e-9 * scale) ++out.classic_violations;
  }
  return out;
}

AveragedBounds analytic_averages(double p) {
  return {2.0 / 9.0 * (2.0 * p - 1.0), 2.0 / 9.0 * (2.0 * p * p - 4.0 * p + 3.0),
          4.0 / 3.0 * (1.0 - p), 4.0 / 9.0 * (2.0 - p) * (2.0 - p)};
}

namespace {

template <class F>
double bracketed_root(F f) {
  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t max_iter = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, 0.5, 1.0, tol, max_iter);
  return 0.5 * (lo + hi);
}

}  // namespace

double robertson_crossing() {
  return bracketed_root([](double p) {
    const AveragedBounds a = analytic_averages(p);
    return a.new_tradeoff - a.robertson;
  });
}

double schrodinger_crossing() {
  return bracketed_root([](double p) {
    const AveragedBounds a = analytic_averages(p);
    return a.new_tradeoff - (a.robertson + a.schrodinger_cov);
  });
}

std::vector<double> purity_grid(double p_min, double p_max, double step) {
  if (!(p_min >= 0.5 && p_min <= p_max && p_max <= 1.0)) {
    throw DomainError("purity grid must satisfy 0.5 <= min <= max <= 1");
  }
  if (!(step > 0.0)) throw DomainError("purity grid step must be positive");
  const auto count = static_cast<std::size_t>(std::floor((p_max - p_min) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = std::min(p_max, p_min + k * step);
  return grid;
}

SweepRow sweep_point(double purity, std::size_t grid_index, std::size_t samples,
                     std::uint64_t seed) {
  if (samples < 2) throw DomainError("sweep: samples must be >= 2");
  const SeededStream root = SeededStream(seed).substream(grid_index);

  std::vector<std::array<double, 4>> values(samples);
  parallel_for(samples, [&](std::size_t i) {
    SeededStream s = root.substream(i);
    const DensityMatrix rho = sample_qubit_fixed_purity(purity, s);
    const HermitianMatrix a = bloch_to_observable(sample_qubit_observable_unit_bloch(s));
    const HermitianMatrix b = bloch_to_observable(sample_qubit_observable_unit_bloch(s));
    const BoundReport r = bound_report(a, b, rho);
    values[i] = {r.robertson, r.schrodinger_cov_sq, r.new_tradeoff, r.product};
  });

  std::array<double, 4> mean{};
  for (const auto& v : values)
    for (std::size_t k = 0; k < 4; ++k) mean[k] += v[k];
  for (double& m : mean) m /= static_cast<double>(samples);
  std::array<double, 4> ss{};
  for (const auto& v : values)
    for (std::size_t k = 0; k < 4; ++k) ss[k] += (v[k] - mean[k]) * (v[k] - mean[k]);
  std::array<double, 4> se{};
  for (std::size_t k = 0; k < 4; ++k) {
    se[k] = std::sqrt(ss[k] / static_cast<double>(samples - 1) / static_cast<double>(samples));
  }

  SweepRow row;
  row.purity = purity;
  row.n_samples = samples;
  row.mean = {mean[0], mean[1], mean[2], mean[3]};
  row.stderr_ = {se[0], se[1], se[2], se[3]};
  row.analytic = analytic_averages(purity);
  return row;
}

std::vector<SweepRow> run_sweep(const std::vector<double>& grid, std::size_t samples,
                                std::uint64_t seed) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) rows.push_back(sweep_point(grid[g], g, samples, seed));
  return rows;
}

}  // namespace qbound
