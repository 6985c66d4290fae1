#ifndef SKDV_CONFIG_HPP
#define SKDV_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "skdv/data_families.hpp"
#include "skdv/dynamics.hpp"
#include "skdv/estimates.hpp"
#include "skdv/experiments.hpp"

namespace skdv {

/// All collected validation problems of one config, not just the first.
class ConfigParseError : public std::runtime_error {
public:
  explicit ConfigParseError(std::vector<std::string> errs);
  std::vector<std::string> errors;
};

/// Validated whole-run configuration with documented defaults filled in.
struct RunConfig {
  std::string subcommand; // simulate | conserve | iscan | estimates | converge | gwp-threshold
  std::uint64_t seed = 1;
  std::string out_dir = "out";

  int grid_n = 1024;
  double box_length = 64.0 * M_PI;
  PhysParams physics{1.0, 1.0, 1.0};
  StepperConfig stepper{1e-3, true, 1e8};
  IParams imethod{8.0, 0.7};
  DataFamily data;

  double t_end = 1.0;
  int stride = 20;
  bool track_rates = false;

  std::vector<double> scan_N{4, 8, 16, 32};
  double scan_s = 0.7;
  double scan_T = 1.0;
  int scan_samples = 50;
  int scan_n = 1536;
  double scan_box_length = 8.0 * M_PI;

  std::string est_id = "L13";
  int est_samples = 100;
  std::vector<int> est_resolutions{64, 128, 256};
  EstimateParams est;

  std::string conv_oracle = "plane_wave";
  std::vector<double> conv_dts{4e-3, 2e-3, 1e-3};
  double conv_T = 1.0;

  bool beta_zero = false;
};

/// Parse the flat key/value format (lines of "section.key = value", '#'
/// comments) and validate as a whole. Unknown keys are rejected; every
/// problem found is reported, not just the first.
RunConfig parse_config(const std::string& text);

/// Same, with command-line overrides applied on top of the file keys.
RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides);

/// Canonical flat rendering of the effective config; re-parsing it yields an
/// equal RunConfig (the manifest round-trip property).
std::string canonical_config_text(const RunConfig& cfg);

} // namespace skdv

#endif
