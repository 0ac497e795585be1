#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "lownoise/sdp.hpp"

namespace lownoise::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kNumericalFailure = 2 };

enum class Family { depol, xz, pauli_poly, generalized_pauli };

Family parse_family(const std::string& name);

struct SweepConfig {
  Family family = Family::depol;
  double p_min = 0.0;
  double p_max = 0.1;
  int steps = 21;
  bool sdp = true;
  bool tuned = true;
  bool analytic = true;
  std::string out = "-";
  SdpOptions sdp_options;
  // pauli-poly: coefficients of p, p^2, ... for each of the three Pauli errors.
  std::array<std::vector<double>, 3> poly{{{1.0 / 3.0}, {1.0 / 3.0}, {1.0 / 3.0}}};
  // generalized-pauli: dimension; weight 1 - p on the identity, rest uniform.
  int dim = 3;

  /// Throws std::invalid_argument on p_min < 0, p_min >= p_max or steps < 2.
  void validate() const;
};

/// Parses "c1,d1;c2;c3,d3" into three coefficient lists starting at the linear term.
std::array<std::vector<double>, 3> parse_poly(const std::string& text);

/// Parses "sdp,tuned,analytic" style method lists into the config.
void parse_methods(const std::string& text, SweepConfig& config);

struct SweepRow {
  double p = 0.0;
  double d = 0.0;      // SDP degradability parameter
  double s = 0.0;      // constructed degrading map
  double bound = 0.0;  // analytic bound
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool numerical_failure = false;
};

/// Evaluates all rows (concurrently) and writes the table in row order.
/// Row-level domain or numerical errors become NaN entries with a warning on `err`.
SweepResult run_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err);

struct CurvesConfig {
  double c = 1.0;
  std::vector<double> r_values;
  double p_min = 0.0;
  double p_max = 0.1;
  int steps = 101;
  std::string out = "-";
};

/// Columns p, then g_r<r> and dg_r<r> for every r. Empty r-list is an error.
void run_curves(const CurvesConfig& config, std::ostream& out);

struct ReportConfig {
  std::string spec_path;
  std::string eta_method = "sdp";  // sdp | tuned
  SdpOptions sdp_options;
};

/// Prints the capacity report for the channel described in the spec file.
int run_report(const ReportConfig& config, std::ostream& out, std::ostream& err);

/// Entry point of the command-line tool.
int run_cli(int argc, char** argv);

}  // namespace lownoise::cli
