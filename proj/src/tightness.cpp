#include "qbound/tightness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qbound/errors.hpp"
#include "qbound/parallel.hpp"
#include "qbound/relations.hpp"

namespace qbound {

double ratio(const ComplexMatrix& x, const ComplexMatrix& y, const PositiveMatrix& w) {
  require_same_dim(x, y, "ratio");
  const double nx = weighted_norm_sq(x, w);
  const double ny = weighted_norm_sq(y, w);
  if (!(nx > 0.0) || !(ny > 0.0)) throw ZeroNormError("ratio: zero ω-norm argument");
  return weighted_norm_sq(commutator(x, y), w) / (nx * ny);
}

ComplexMatrix ratio_step_x(const ComplexMatrix& x, const ComplexMatrix& y,
                           const PositiveMatrix& w) {
  const ComplexMatrix& om = w.matrix();
  const ComplexMatrix yd = y.adjoint();
  const ComplexMatrix z = commutator(x, y);
  // ad_Y*(Z) = Z ω Y† ω⁻¹ − Y† Z
  return z * om * yd * w.inverse() - yd * z;
}

ComplexMatrix ratio_step_y(const ComplexMatrix& x, const ComplexMatrix& y,
                           const PositiveMatrix& w) {
  const ComplexMatrix& om = w.matrix();
  const ComplexMatrix xd = x.adjoint();
  const ComplexMatrix z = commutator(x, y);
  // Complex adjoint of Y ↦ XY − YX: K = X†Z − Z ω X† ω⁻¹.
  const ComplexMatrix k = xd * z - z * om * xd * w.inverse();
  // Project onto Hermitian matrices under Re Tr(ωYH): solve Hω + ωH = Kω + ωK†
  // in the eigenbasis of ω.
  const ComplexMatrix r = k * om + om * k.adjoint();
  const Spectrum& s = w.spectrum();
  const ComplexMatrix& u = s.vectors;
  ComplexMatrix h = u.adjoint() * r * u;
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j) h(i, j) /= (s.values[i] + s.values[j]);
  h = u * h * u.adjoint();
  return (h + h.adjoint()) * 0.5;
}

namespace {

struct RestartResult {
  double best = 0.0;
  ComplexMatrix x, y;
  int iterations = 0;
};

bool normalize(ComplexMatrix& m, const PositiveMatrix& w) {
  const double n = weighted_gram(m, w.matrix());
  if (!(n > 0.0) || !std::isfinite(n)) return false;
  m *= 1.0 / std::sqrt(n);
  return true;
}

ComplexMatrix gaussian_matrix(std::size_t d, SeededStream& rng) {
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = sample_complex_normal(rng);
  return m;
}

RestartResult run_restart(const PositiveMatrix& w, ComplexMatrix x, ComplexMatrix y,
                          int max_iters) {
  RestartResult out;
  if (!normalize(x, w) || !normalize(y, w)) return out;
  double current = weighted_gram(commutator(x, y), w.matrix());
  out.best = current;
  out.x = x;
  out.y = y;

  for (int it = 1; it <= max_iters; ++it) {
    out.iterations = it;
    ComplexMatrix nx = ratio_step_x(x, y, w);
    if (!normalize(nx, w)) break;
    ComplexMatrix ny = ratio_step_y(nx, y, w);
    if (!normalize(ny, w)) break;
    x = std::move(nx);
    y = std::move(ny);

    const double next = weighted_gram(commutator(x, y), w.matrix());
    if (next > out.best) {
      out.best = next;
      out.x = x;
      out.y = y;
    }
    const bool stalled = next - current < 1e-12 * std::max(1.0, std::abs(next));
    current = next;
    if (stalled) break;
  }
  return out;
}

}  // namespace

TightnessCertificate maximize_ratio(const PositiveMatrix& w, const RatioSearchOptions& options,
                                    const SeededStream& rng) {
  if (options.restarts < 1) throw DomainError("maximize_ratio: restarts must be >= 1");
  const std::size_t d = w.dim();
  const int offset = options.eigenpair_start ? 1 : 0;
  const std::size_t total = static_cast<std::size_t>(options.restarts + offset);

  std::vector<RestartResult> results(total);
  parallel_for(total, [&](std::size_t r) {
    ComplexMatrix x, y;
    if (options.eigenpair_start && r == 0) {
      const auto e1 = w.spectrum().vectors.column(0);
      const auto e2 = w.spectrum().vectors.column(1);
      x = ComplexMatrix::outer(e1, e2);
      y = ComplexMatrix::outer(e1, e1) - ComplexMatrix::outer(e2, e2);
    } else {
      SeededStream stream = rng.substream(r);
      x = gaussian_matrix(d, stream);
      const ComplexMatrix g = gaussian_matrix(d, stream);
      y = (g + g.adjoint()) * 0.5;
    }
    results[r] = run_restart(w, std::move(x), std::move(y), options.max_iters);
  });

  TightnessCertificate cert;
  cert.c_target = w.optimal_constant();
  cert.restarts_used = static_cast<int>(total);
  for (std::size_t r = 0; r < total; ++r) {
    cert.iterations_used = std::max(cert.iterations_used, results[r].iterations);
    if (cert.best_restart < 0 || results[r].best > cert.best_ratio) {
      cert.best_ratio = results[r].best;
      cert.best_restart = static_cast<int>(r);
      cert.x_best = results[r].x;
      cert.y_best = results[r].y;
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------

std::vector<double> hermitian_to_params(const ComplexMatrix& m) {
  const std::size_t d = m.dim();
  std::vector<double> p;
  p.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) p.push_back(m(i, i).real());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      p.push_back(m(i, j).real());
      p.push_back(m(i, j).imag());
    }
  return p;
}

HermitianMatrix params_to_hermitian(std::size_t dim, std::span<const double> p) {
  if (p.size() != dim * dim) throw DimensionError("params_to_hermitian: expected d² values");
  ComplexMatrix m(dim);
  std::size_t k = 0;
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = p[k++];
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      m(i, j) = cplx(p[k], p[k + 1]);
      m(j, i) = cplx(p[k], -p[k + 1]);
      k += 2;
    }
  return HermitianMatrix(m);
}

double relative_slack(const HermitianMatrix& a, const HermitianMatrix& b,
                      const DensityMatrix& rho) {
  const BoundReport r = bound_report(a, b, rho);
  if (!(r.product > 1e-300)) return 1.0;
  return r.slack / r.product;
}

namespace {

struct SlackRestart {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> params;
  int iterations = 0;
};

double params_norm(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return std::sqrt(s);
}

// Both observables are rescaled to unit parameter norm after every step;
// the objective is scale invariant in each.
void rescale_halves(std::vector<double>& p) {
  const std::size_t half = p.size() / 2;
  for (std::size_t part = 0; part < 2; ++part) {
    const std::span<double> s(p.data() + part * half, half);
    const double n = params_norm(s);
    if (n > 0.0)
      for (double& v : s) v /= n;
  }
}

SlackRestart descend(std::size_t d, const DensityMatrix& rho, std::vector<double> p,
                     int max_iters) {
  const std::size_t half = d * d;
  auto objective = [&](const std::vector<double>& q) {
    return relative_slack(params_to_hermitian(d, std::span(q.data(), half)),
                          params_to_hermitian(d, std::span(q.data() + half, half)), rho);
  };

  rescale_halves(p);
  SlackRestart out;
  out.params = p;
  out.value = objective(p);
  double step = 0.1;
  std::vector<double> grad(p.size());

  for (int it = 1; it <= max_iters; ++it) {
    out.iterations = it;
    if (out.value <= 1e-15) break;
    constexpr double h = 1e-6;
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::vector<double> up = out.params, down = out.params;
      up[k] += h;
      down[k] -= h;
      grad[k] = (objective(up) - objective(down)) / (2.0 * h);
    }
    const double gnorm2 = [&] {
      double s = 0.0;
      for (double g : grad) s += g * g;
      return s;
    }();
    if (!(gnorm2 > 0.0)) break;

    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      std::vector<double> trial = out.params;
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] -= step * grad[k];
      rescale_halves(trial);
      const double value = objective(trial);
      if (value <= out.value - 1e-4 * step * gnorm2) {
        out.params = std::move(trial);
        out.value = value;
        step *= 2.0;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return out;
}

}  // namespace

SlackProbe minimize_eq5_slack(std::size_t dim, const std::optional<DensityMatrix>& rho_fixed,
                              int restarts, int max_iters, const SeededStream& rng) {
  if (dim < 2) throw DimensionError("minimize_eq5_slack: dim must be >= 2");
  if (restarts < 1) throw DomainError("minimize_eq5_slack: restarts must be >= 1");
  if (rho_fixed && rho_fixed->dim() != dim) {
    throw DimensionError("minimize_eq5_slack: state dimension mismatch");
  }

  struct Slot {
    SlackRestart run;
    std::optional<DensityMatrix> rho;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(restarts));
  parallel_for(slots.size(), [&](std::size_t r) {
    SeededStream stream = rng.substream(r);
    DensityMatrix rho = rho_fixed ? *rho_fixed : sample_density_hs(dim, stream);
    std::vector<double> p = hermitian_to_params(sample_observable_gue(dim, stream));
    const auto pb = hermitian_to_params(sample_observable_gue(dim, stream));
    p.insert(p.end(), pb.begin(), pb.end());
    slots[r].run = descend(dim, rho, std::move(p), max_iters);
    slots[r].rho = std::move(rho);
  });

  SlackProbe best;
  best.relative_slack = std::numeric_limits<double>::infinity();
  for (const Slot& s : slots) {
    best.iterations_used = std::max(best.iterations_used, s.run.iterations);
    if (s.run.value < best.relative_slack) {
      const std::size_t half = dim * dim;
      best.relative_slack = s.run.value;
      best.a = params_to_hermitian(dim, std::span(s.run.params.data(), half));
      best.b = params_to_hermitian(dim, std::span(s.run.params.data() + half, half));
      best.rho = s.rho;
    }
  }
  const BoundReport r = bound_report(best.a, best.b, *best.rho);
  best.slack = r.slack;
  best.product = r.product;
  return best;
}

}  // namespace qbound
