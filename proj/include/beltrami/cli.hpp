#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "beltrami/coefficients.hpp"

namespace beltrami::cli {

/// Parsed `key = value` coefficient specification. Blank lines and lines
/// starting with '#' are ignored; unknown keys are rejected.
struct CoefficientSpec {
  std::string family = "gp";
  std::optional<double> p;
  std::optional<double> alpha;
  std::optional<double> lambda_re;
  std::optional<double> lambda_im;
  std::optional<double> gamma;
  std::optional<std::string> file;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_L;
};

CoefficientSpec parse_spec(const std::string& text);
CoefficientSpec read_spec(const std::filesystem::path& path);

struct RunConfig {
  std::string subcommand;
  CoefficientSpec spec;
  std::size_t grid_n = 512;
  double grid_L = 2.0;
  int n_terms = 64;
  double beta = 1.5;
  std::optional<double> M;
  std::filesystem::path out = ".";
  bool plot = false;
  std::uint64_t seed = 1;
  bool strict = false;
  bool strict_sharpness = false;
  std::string method;
  std::optional<std::string> a11, a12, a22, u, v;

  double p() const;
  complex lambda() const;
};

/// Radial profile named by the spec (gp, alpha, stretch).
RadialProfile profile_for(const CoefficientSpec& spec);
bool is_radial(const CoefficientSpec& spec);
/// Coefficient on the configured grid.
BeltramiCoefficient coefficient_for(const RunConfig& config);

/// Runs the command line and returns the process exit code:
/// 0 success, 1 failed inequality, 2 configuration error, 3 non-convergence
/// under --strict.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace beltrami::cli
