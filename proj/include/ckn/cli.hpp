#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ckn/quadrature.hpp"
#include "ckn/testfns.hpp"

namespace ckn::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kNonConvergence = 2,
  kUsageError = 64,
};

enum class Format { csv, json };

/// Everything a command needs, after flags, config file and defaults have
/// been merged (flags win over the config file, which wins over defaults).
struct RunConfig {
  int n = 3;
  double p = 2.0;
  double s = 3.5;
  double t = 0.72;
  double alpha = 1.0;
  // eig-check samples alpha at random unless --alpha was set explicitly.
  bool alpha_given = false;
  GridSettings grid;
  int k_max = 32;
  RadialKind family = RadialKind::gns_power;
  std::vector<double> alphas = {-0.5, -0.1, 0.0, 0.5, 1.0, 2.0};
  int samples = 200;
  int poly_samples = 100;
  std::uint64_t seed = 20240611;
  Format format = Format::json;
  std::string out;
  bool trace = false;
  bool inject_fault = false;
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Individual commands, for callers that already hold a validated config.
int cmd_eig_check(const RunConfig& config, std::ostream& out);
int cmd_symmetry_scan(const RunConfig& config, std::ostream& out);
int cmd_sweep_alpha(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_estimate_m(const RunConfig& config, std::ostream& out);

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double value);

}  // namespace ckn::cli
