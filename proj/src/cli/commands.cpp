#include "lownoise/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "lownoise/capacity.hpp"
#include "lownoise/cli/channel_spec.hpp"
#include "lownoise/degradability.hpp"
#include "lownoise/errors.hpp"

namespace lownoise::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> linear_grid(double lo, double hi, int steps) {
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) grid[i] = i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1);
  return grid;
}

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

// Output sink: a file, or stdout for "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream(std::ostream& fallback) { return file_.is_open() ? file_ : fallback; }

 private:
  std::ofstream file_;
};

struct RowOutcome {
  SweepRow row;
  std::vector<std::string> warnings;
  bool numerical_failure = false;
};

class RowEvaluator {
 public:
  explicit RowEvaluator(const SweepConfig& config) : config_(config) {
    if (config.family == Family::pauli_poly) {
      std::array<std::vector<double>, 3> coefficients;
      for (int i = 0; i < 3; ++i) {
        coefficients[i] = {0.0};
        coefficients[i].insert(coefficients[i].end(), config.poly[i].begin(), config.poly[i].end());
      }
      family_.emplace(coefficients, 1.0);
    }
  }

  RowOutcome evaluate(double p) const {
    RowOutcome out;
    out.row = {p, kNaN, kNaN, kNaN};
    auto guarded = [&](const char* column, auto&& compute) -> double {
      try {
        return compute();
      } catch (const DomainError& e) {
        out.warnings.push_back("p=" + fmt(p) + " column " + column + ": " + e.what());
      } catch (const NumericalError& e) {
        out.warnings.push_back("p=" + fmt(p) + " column " + column + ": numerical failure: " + e.what());
        out.numerical_failure = true;
      }
      return kNaN;
    };
    if (config_.sdp) out.row.d = guarded("d", [&] { return *dg_sdp(channel(p), config_.sdp_options).eta_sdp; });
    if (config_.tuned) out.row.s = guarded("s", [&] { return tuned(p); });
    if (config_.analytic) out.row.bound = guarded("bound", [&] { return bound(p); });
    return out;
  }

 private:
  Channel channel(double p) const {
    switch (config_.family) {
      case Family::depol:
        return depolarizing(p);
      case Family::xz:
        return xz_channel(p, p);
      case Family::pauli_poly:
        return pauli(family_->evaluate(p));
      case Family::generalized_pauli:
        break;
    }
    const int d = config_.dim;
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("generalized-pauli: p outside [0, 1]");
    std::map<std::pair<int, int>, double> probs;
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) probs[{k, l}] = (k == 0 && l == 0) ? 1.0 - p : p / (d * d - 1.0);
    return generalized_pauli(d, probs);
  }

  double tuned(double p) const {
    switch (config_.family) {
      case Family::depol:
        return *depol_tuned_eta(p).eta_constructed;
      case Family::xz:
        return *xz_tuned_eta(p).eta_constructed;
      case Family::pauli_poly:
        return *tuned_pauli_eta(*family_, p).eta_constructed;
      case Family::generalized_pauli:
        return complementary_degrading_eta(channel(p), config_.sdp_options);
    }
    return kNaN;
  }

  double bound(double p) const {
    switch (config_.family) {
      case Family::depol:
        return 8.0 / 9.0 * (6.0 + std::sqrt(2.0)) * p * p;
      case Family::xz:
        return 16.0 * p * p + 32.0 * std::pow(p, 2.5);
      case Family::pauli_poly:
        family_->evaluate(p);
        return *tuned_pauli_eta(*family_, p).analytic_bound;
      case Family::generalized_pauli:
        return 2.0 * std::pow(2.0 * p, 1.5);
    }
    return kNaN;
  }

  const SweepConfig& config_;
  std::optional<PauliFamily> family_;
};

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "depol") return Family::depol;
  if (name == "xz") return Family::xz;
  if (name == "pauli-poly") return Family::pauli_poly;
  if (name == "generalized-pauli") return Family::generalized_pauli;
  throw std::invalid_argument("unknown family '" + name + "' (expected depol, xz, pauli-poly, generalized-pauli)");
}

void SweepConfig::validate() const {
  if (!(p_min >= 0.0)) throw std::invalid_argument("--pmin must be nonnegative");
  if (!(p_min < p_max)) throw std::invalid_argument("--pmin must be smaller than --pmax");
  if (steps < 2) throw std::invalid_argument("--steps must be at least 2");
  if (!sdp && !tuned && !analytic) throw std::invalid_argument("--methods selects no column");
  if (family == Family::generalized_pauli && dim < 2) throw std::invalid_argument("--dim must be at least 2");
  if (!(sdp_options.gap_tol > 0.0) || !(sdp_options.feas_tol > 0.0)) {
    throw std::invalid_argument("solver tolerances must be positive");
  }
}

std::array<std::vector<double>, 3> parse_poly(const std::string& text) {
  const std::vector<std::string> parts = split(text, ';');
  if (parts.size() != 3) throw std::invalid_argument("--poly needs three ';'-separated coefficient lists");
  std::array<std::vector<double>, 3> out;
  for (int i = 0; i < 3; ++i) {
    for (const std::string& item : split(parts[i], ',')) out[i].push_back(parse_double(item));
    if (out[i].empty()) throw std::invalid_argument("--poly: empty coefficient list");
  }
  return out;
}

void parse_methods(const std::string& text, SweepConfig& config) {
  config.sdp = config.tuned = config.analytic = false;
  for (const std::string& m : split(text, ',')) {
    if (m == "sdp") {
      config.sdp = true;
    } else if (m == "tuned") {
      config.tuned = true;
    } else if (m == "analytic") {
      config.analytic = true;
    } else {
      throw std::invalid_argument("unknown method '" + m + "' (expected sdp, tuned, analytic)");
    }
  }
}

SweepResult run_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const std::vector<double> grid = linear_grid(config.p_min, config.p_max, config.steps);
  const RowEvaluator evaluator(config);
  std::vector<RowOutcome> outcomes(grid.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) outcomes[i] = evaluator.evaluate(grid[i]);
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t count = std::min<std::size_t>(hw, grid.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  SweepResult result;
  out << 'p';
  if (config.sdp) out << " d";
  if (config.tuned) out << " s";
  if (config.analytic) out << " bound";
  out << '\n';
  for (const RowOutcome& o : outcomes) {
    out << fmt(o.row.p);
    if (config.sdp) out << ' ' << fmt(o.row.d);
    if (config.tuned) out << ' ' << fmt(o.row.s);
    if (config.analytic) out << ' ' << fmt(o.row.bound);
    out << '\n';
    for (const std::string& w : o.warnings) err << "warning: " << w << '\n';
    result.numerical_failure = result.numerical_failure || o.numerical_failure;
    result.rows.push_back(o.row);
  }
  return result;
}

void run_curves(const CurvesConfig& config, std::ostream& out) {
  if (config.r_values.empty()) throw std::invalid_argument("curves needs at least one r value");
  if (!(config.p_min >= 0.0) || !(config.p_min < config.p_max) || config.steps < 2) {
    throw std::invalid_argument("curves needs 0 <= pmin < pmax and steps >= 2");
  }
  const std::vector<double> grid = linear_grid(config.p_min, config.p_max, config.steps);
  std::vector<std::vector<CurvePoint>> columns;
  out << 'p';
  for (double r : config.r_values) {
    columns.push_back(bound_curves(config.c, r, grid));
    out << " g_r" << fmt(r) << " dg_r" << fmt(r);
  }
  out << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << fmt(grid[i]);
    for (const auto& col : columns) out << ' ' << fmt(col[i].g) << ' ' << fmt(col[i].derivative);
    out << '\n';
  }
}

int run_report(const ReportConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<ChannelSpec> loaded;
  try {
    loaded = load_channel_spec(config.spec_path);
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const ChannelSpec& spec = *loaded;

  try {
    std::optional<double> eta;
    if (config.eta_method == "tuned") {
      if (spec.kind == "depolarizing" && spec.p) {
        eta = *depol_tuned_eta(*spec.p).eta_constructed;
      } else if (spec.kind == "xz" && spec.p) {
        eta = *xz_tuned_eta(*spec.p).eta_constructed;
      } else {
        err << "error: --eta-method tuned needs a depolarizing or symmetric xz spec\n";
        return kUsage;
      }
    } else if (config.eta_method != "sdp") {
      err << "error: unknown --eta-method '" << config.eta_method << "' (expected sdp or tuned)\n";
      return kUsage;
    }
    const CapacityReport report = capacity_interval(spec.channel, spec.label, eta, config.sdp_options);
    out << report.to_text();
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kSuccess;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Capacity bounds for low-noise quantum channels"};
  app.require_subcommand(1);

  SweepConfig sweep;
  std::string family = "depol";
  std::string methods = "sdp,tuned,analytic";
  std::string poly;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Degradability parameters over a grid of p");
  sweep_cmd->add_option("--family", family, "depol | xz | pauli-poly | generalized-pauli")->capture_default_str();
  sweep_cmd->add_option("--pmin", sweep.p_min, "Smallest p")->capture_default_str();
  sweep_cmd->add_option("--pmax", sweep.p_max, "Largest p")->capture_default_str();
  sweep_cmd->add_option("--steps", sweep.steps, "Number of grid points")->capture_default_str();
  sweep_cmd->add_option("--methods", methods, "Comma list of sdp, tuned, analytic")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "Output file, '-' for stdout")->capture_default_str();
  sweep_cmd->add_option("--gap-tol", sweep.sdp_options.gap_tol, "SDP duality-gap tolerance")->capture_default_str();
  sweep_cmd->add_option("--feas-tol", sweep.sdp_options.feas_tol, "SDP feasibility tolerance")->capture_default_str();
  sweep_cmd->add_option("--poly", poly, "pauli-poly coefficients 'c1,d1,..;c2,..;c3,..' from the linear term");
  sweep_cmd->add_option("--dim", sweep.dim, "generalized-pauli dimension")->capture_default_str();

  CurvesConfig curves;
  std::string r_list = "1,1.5,2";
  CLI::App* curves_cmd = app.add_subcommand("curves", "g(c p^r) and its derivative");
  curves_cmd->add_option("--c", curves.c, "Prefactor c")->capture_default_str();
  curves_cmd->add_option("--r", r_list, "Comma list of exponents r")->capture_default_str();
  curves_cmd->add_option("--pmin", curves.p_min, "Smallest p")->capture_default_str();
  curves_cmd->add_option("--pmax", curves.p_max, "Largest p")->capture_default_str();
  curves_cmd->add_option("--steps", curves.steps, "Number of grid points")->capture_default_str();
  curves_cmd->add_option("--out", curves.out, "Output file, '-' for stdout")->capture_default_str();

  ReportConfig report;
  CLI::App* report_cmd = app.add_subcommand("report", "Capacity intervals for a channel spec file");
  report_cmd->add_option("spec", report.spec_path, "YAML channel spec")->required();
  report_cmd->add_option("--eta-method", report.eta_method, "sdp | tuned")->capture_default_str();
  report_cmd->add_option("--gap-tol", report.sdp_options.gap_tol, "SDP duality-gap tolerance")->capture_default_str();
  report_cmd->add_option("--feas-tol", report.sdp_options.feas_tol, "SDP feasibility tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*sweep_cmd) {
      sweep.family = parse_family(family);
      parse_methods(methods, sweep);
      if (!poly.empty()) sweep.poly = parse_poly(poly);
      sweep.validate();
      Sink sink(sweep.out);
      const SweepResult result = run_sweep(sweep, sink.stream(std::cout), std::cerr);
      return result.numerical_failure ? kNumericalFailure : kSuccess;
    }
    if (*curves_cmd) {
      for (const std::string& item : split(r_list, ',')) {
        if (!item.empty()) curves.r_values.push_back(parse_double(item));
      }
      Sink sink(curves.out);
      run_curves(curves, sink.stream(std::cout));
      return kSuccess;
    }
    return run_report(report, std::cout, std::cerr);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "error: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace lownoise::cli
