#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbound/campaigns.hpp"
#include "qbound/cli.hpp"
#include "qbound/errors.hpp"
#include "qbound/matrix_io.hpp"
#include "qbound/relations.hpp"
#include "qbound/spin.hpp"
#include "qbound/states.hpp"
#include "qbound/tightness.hpp"

namespace qbound::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Emits a flat record either as a JSON object or as a two-line CSV.
class Record {
 public:
  Record& add(const std::string& key, double v) {
    keys_.push_back(key);
    cells_.push_back(num(v));
    doc_[key] = v;
    return *this;
  }
  Record& add(const std::string& key, std::uint64_t v) {
    keys_.push_back(key);
    cells_.push_back(std::to_string(v));
    doc_[key] = v;
    return *this;
  }
  Record& add(const std::string& key, bool v) {
    keys_.push_back(key);
    cells_.push_back(v ? "true" : "false");
    doc_[key] = v;
    return *this;
  }
  /// JSON-only structured field.
  Record& extra(const std::string& key, json v) {
    doc_[key] = std::move(v);
    return *this;
  }

  std::string render(const std::string& format) const {
    if (format == "csv") {
      std::string out;
      for (std::size_t k = 0; k < keys_.size(); ++k) out += (k ? "," : "") + keys_[k];
      out += "\n";
      for (std::size_t k = 0; k < cells_.size(); ++k) out += (k ? "," : "") + cells_[k];
      return out + "\n";
    }
    return doc_.dump(2) + "\n";
  }

 private:
  std::vector<std::string> keys_;
  std::vector<std::string> cells_;
  json doc_ = json::object();
};

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_file_atomic(out_path, text);
  }
}

json matrix_json(const ComplexMatrix& m) { return json::parse(matrix_to_json(m)); }

Record report_record(const BoundReport& r) {
  Record rec;
  rec.add("variance_a", r.variance_a)
      .add("variance_b", r.variance_b)
      .add("product", r.product)
      .add("robertson", r.robertson)
      .add("schrodinger_cov_sq", r.schrodinger_cov_sq)
      .add("new_tradeoff", r.new_tradeoff)
      .add("total_bound", r.total_bound)
      .add("slack", r.slack)
      .add("violation", r.violates());
  return rec;
}

struct Options {
  std::string state, obs_a, obs_b, omega, out, format = "json", grid = "0.5:1.0:0.05", j;
  std::size_t dim = 2;
  std::size_t samples = 10000;
  std::uint64_t seed = 7;
  int restarts = 32;
  int iters = 500;
  double hbar = 1.0;
};

int cmd_bounds(const Options& o, std::ostream& out) {
  const DensityMatrix rho(HermitianMatrix(read_matrix_file(o.state)));
  const HermitianMatrix a(read_matrix_file(o.obs_a));
  const HermitianMatrix b(read_matrix_file(o.obs_b));
  if (a.dim() != rho.dim() || b.dim() != rho.dim()) {
    throw InputError("state and observables must share one dimension");
  }
  const BoundReport r = bound_report(a, b, rho);
  emit(report_record(r).render(o.format), o.out, out);
  return r.violates() ? kViolation : kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out, bool qubit_equality) {
  const std::size_t dim = qubit_equality ? 2 : o.dim;
  const VerifySummary s = run_verify(dim, o.samples, o.seed);
  Record rec;
  rec.add("dim", static_cast<std::uint64_t>(s.dim))
      .add("samples", static_cast<std::uint64_t>(s.samples))
      .add("seed", s.seed)
      .add("min_slack", s.min_slack)
      .add("min_relative_slack", s.min_relative_slack)
      .add("max_relative_residual", s.max_relative_residual)
      .add("violations", static_cast<std::uint64_t>(s.violations))
      .add("classic_violations", static_cast<std::uint64_t>(s.classic_violations))
      .add("worst_index", static_cast<std::uint64_t>(s.worst_index));
  bool failed = s.violations > 0 || s.classic_violations > 0;
  if (qubit_equality) {
    const bool holds = s.max_relative_residual <= 1e-10;
    rec.add("equality_holds", holds);
    failed = failed || !holds;
  }
  emit(rec.render(o.format), o.out, out);
  return failed ? kViolation : kSuccess;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--grid: cannot parse '" + item + "'");
    }
  }
  if (parts.size() != 3) throw InputError("--grid expects MIN:MAX:STEP");
  try {
    return purity_grid(parts[0], parts[1], parts[2]);
  } catch (const DomainError& e) {
    throw InputError(std::string("--grid: ") + e.what());
  }
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const std::vector<double> grid = parse_grid(o.grid);
  if (o.samples < 2) throw InputError("--samples must be at least 2 for a sweep");
  const std::vector<SweepRow> rows = run_sweep(grid, o.samples, o.seed);

  std::string text;
  if (o.format == "json") {
    json doc = json::array();
    for (const SweepRow& r : rows) {
      doc.push_back({{"purity", r.purity},
                     {"n_samples", r.n_samples},
                     {"avg_robertson", r.mean.robertson},
                     {"stderr_robertson", r.stderr_.robertson},
                     {"analytic_robertson", r.analytic.robertson},
                     {"avg_schrodinger_cov", r.mean.schrodinger_cov},
                     {"stderr_schrodinger_cov", r.stderr_.schrodinger_cov},
                     {"analytic_schrodinger_cov", r.analytic.schrodinger_cov},
                     {"avg_new_tradeoff", r.mean.new_tradeoff},
                     {"stderr_new_tradeoff", r.stderr_.new_tradeoff},
                     {"analytic_new_tradeoff", r.analytic.new_tradeoff},
                     {"avg_product", r.mean.product},
                     {"stderr_product", r.stderr_.product},
                     {"analytic_product", r.analytic.product}});
    }
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << sweep_csv_header() << "\n";
    for (const SweepRow& r : rows) {
      os << num(r.purity) << "," << r.n_samples << ","                                   //
         << num(r.mean.robertson) << "," << num(r.stderr_.robertson) << ","              //
         << num(r.analytic.robertson) << "," << num(r.mean.schrodinger_cov) << ","       //
         << num(r.stderr_.schrodinger_cov) << "," << num(r.analytic.schrodinger_cov) << ","
         << num(r.mean.new_tradeoff) << "," << num(r.stderr_.new_tradeoff) << ","        //
         << num(r.analytic.new_tradeoff) << "," << num(r.mean.product) << ","            //
         << num(r.stderr_.product) << "," << num(r.analytic.product) << "\n";
    }
    text = os.str();
  }
  emit(text, o.out, out);
  return kSuccess;
}

int cmd_spin(const Options& o, std::ostream& out) {
  SpinQuantumNumber j = [&] {
    try {
      return SpinQuantumNumber::parse(o.j);
    } catch (const DomainError& e) {
      throw InputError(std::string("--j: ") + e.what());
    }
  }();
  if (!(o.hbar > 0.0)) throw InputError("--hbar must be positive");
  const SpinSystem sys = build_spin(j, o.hbar);
  const MaximallyMixedDemo demo = maximally_mixed_demo(sys);
  const double alpha = alpha_constant(j);
  const double d = static_cast<double>(sys.dim());

  Record rec;
  rec.add("j", j.value())
      .add("dim", static_cast<std::uint64_t>(sys.dim()))
      .add("hbar", o.hbar)
      .add("alpha", alpha)
      .add("bound", demo.bound)
      .add("bound_closed_form", std::pow(o.hbar, 4) * alpha / (2.0 * d * d))
      .add("product", demo.product)
      .add("product_closed_form", std::pow(o.hbar * o.hbar * alpha / d, 2))
      .add("robertson", demo.robertson)
      .add("cov_sq", demo.cov_sq)
      .add("commutation_residual", commutation_residual(sys))
      .add("casimir_residual", casimir_residual(sys));
  emit(rec.render(o.format), o.out, out);
  return demo.product + 1e-12 * (1.0 + demo.product) >= demo.bound ? kSuccess : kViolation;
}

int cmd_tightness(const Options& o, std::ostream& out) {
  if (o.restarts < 1) throw InputError("--restarts must be at least 1");
  if (o.iters < 1) throw InputError("--iters must be at least 1");
  const PositiveMatrix w(HermitianMatrix(read_matrix_file(o.omega)));
  const TightnessCertificate cert =
      maximize_ratio(w, {o.restarts, o.iters, true}, SeededStream(o.seed));

  Record rec;
  rec.add("dim", static_cast<std::uint64_t>(w.dim()))
      .add("c_target", cert.c_target)
      .add("best_ratio", cert.best_ratio)
      .add("gap", cert.gap())
      .add("relative_gap", cert.gap() / cert.c_target)
      .add("restarts_used", static_cast<std::uint64_t>(cert.restarts_used))
      .add("iterations_used", static_cast<std::uint64_t>(cert.iterations_used))
      .add("best_restart", static_cast<std::uint64_t>(cert.best_restart))
      .add("within_bound", cert.within_bound())
      .extra("x_best", matrix_json(cert.x_best))
      .extra("y_best", matrix_json(cert.y_best));
  emit(rec.render(o.format), o.out, out);
  return cert.within_bound() ? kSuccess : kViolation;
}

}  // namespace

const char* sweep_csv_header() {
  return "purity,n_samples,avg_robertson,stderr_robertson,analytic_robertson,"
         "avg_schrodinger_cov,stderr_schrodinger_cov,analytic_schrodinger_cov,"
         "avg_new_tradeoff,stderr_new_tradeoff,analytic_new_tradeoff,"
         "avg_product,stderr_product,analytic_product";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uncertainty-relation bounds: compute, verify and stress-test"};
  app.name(args.empty() ? "qbound" : args.front());
  app.require_subcommand(1);

  Options o;
  const std::vector<std::string> formats{"json", "csv"};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", o.out, "Write output to this file instead of stdout");
  };

  auto* bounds = app.add_subcommand("bounds", "Bound terms for one (state, A, B) triple");
  bounds->add_option("--state", o.state, "Density matrix JSON file")->required();
  bounds->add_option("--obs-a", o.obs_a, "Observable A JSON file")->required();
  bounds->add_option("--obs-b", o.obs_b, "Observable B JSON file")->required();
  add_format(bounds);

  auto* verify = app.add_subcommand("verify", "Randomized check of the extended relation");
  verify->add_option("--dim", o.dim, "Hilbert space dimension")->check(CLI::Range(2, 64));
  verify->add_option("--samples", o.samples, "Number of random triples")->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed, "Seed");
  add_format(verify);

  auto* equality = app.add_subcommand("qubit-equality", "Qubit exact-equality campaign");
  equality->add_option("--samples", o.samples, "Number of random triples")->check(CLI::PositiveNumber);
  equality->add_option("--seed", o.seed, "Seed");
  add_format(equality);

  auto* sweep = app.add_subcommand("sweep", "Purity sweep of averaged qubit bounds");
  sweep->add_option("--grid", o.grid, "MIN:MAX:STEP purity grid");
  sweep->add_option("--samples", o.samples, "Samples per grid point");
  sweep->add_option("--seed", o.seed, "Seed");
  sweep->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
  sweep->add_option("--out", o.out, "CSV output path");

  auto* spin = app.add_subcommand("spin", "Spin-j maximally mixed illustration");
  spin->add_option("j,--j", o.j, "Spin quantum number, e.g. 1/2 or 3/2")->required();
  spin->add_option("--hbar", o.hbar, "Reduced Planck constant");
  add_format(spin);

  auto* tight = app.add_subcommand("tightness", "Certify the optimal weighted commutator constant");
  tight->add_option("--omega", o.omega, "Strictly positive weight JSON file")->required();
  tight->add_option("--restarts", o.restarts, "Random restarts");
  tight->add_option("--iters", o.iters, "Iteration cap per restart");
  tight->add_option("--seed", o.seed, "Seed");
  add_format(tight);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  // The sweep defaults to CSV unless a format was requested.
  if (sweep->parsed() && sweep->count("--format") == 0) o.format = "csv";

  try {
    if (bounds->parsed()) return cmd_bounds(o, out);
    if (verify->parsed()) return cmd_verify(o, out, false);
    if (equality->parsed()) return cmd_verify(o, out, true);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (spin->parsed()) return cmd_spin(o, out);
    if (tight->parsed()) return cmd_tightness(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    // Role invariants (trace, positivity, Hermiticity, ...) and domain errors.
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace qbound::cli
