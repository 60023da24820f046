#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qbound/relations.hpp"

namespace qbound {

/// Randomized check of the extended relation: Hilbert–Schmidt states and GUE
/// observable pairs, sample i drawn from SeededStream(seed).substream(i).
struct VerifySummary {
  std::size_t dim = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double min_slack = 0.0;
  double min_relative_slack = 0.0;      ///< min slack/(1 + product)
  double max_relative_residual = 0.0;   ///< max |slack|/(1 + product)
  std::size_t violations = 0;           ///< extended relation
  std::size_t classic_violations = 0;   ///< Robertson–Schrödinger alone
  std::size_t worst_index = 0;          ///< sample attaining min_relative_slack
};

VerifySummary run_verify(std::size_t dim, std::size_t samples, std::uint64_t seed);

/// Bound averages over pairs of unit-Bloch qubit observables at fixed purity.
struct AveragedBounds {
  double robertson = 0.0;
  double schrodinger_cov = 0.0;
  double new_tradeoff = 0.0;
  double product = 0.0;
};

/// Closed-form averages: (2/9)(2P−1), (2/9)(2P²−4P+3), (4/3)(1−P), (4/9)(2−P)².
AveragedBounds analytic_averages(double purity);

/// Purity where the averaged new term equals the averaged Robertson term (7/8).
double robertson_crossing();
/// Purity where the averaged new term equals Robertson plus Schrödinger (√3 − 1).
double schrodinger_crossing();

struct SweepRow {
  double purity = 0.0;
  std::size_t n_samples = 0;
  AveragedBounds mean;
  AveragedBounds stderr_;
  AveragedBounds analytic;
};

/// p_min, p_min + step, … up to p_max (inclusive within 1e-9·step).
std::vector<double> purity_grid(double p_min, double p_max, double step);

/// Monte Carlo row; sample i uses SeededStream(seed).substream(grid_index).substream(i).
SweepRow sweep_point(double purity, std::size_t grid_index, std::size_t samples,
                     std::uint64_t seed);

std::vector<SweepRow> run_sweep(const std::vector<double>& grid, std::size_t samples,
                                std::uint64_t seed);

}  // namespace qbound
