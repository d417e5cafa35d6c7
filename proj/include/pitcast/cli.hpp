#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pitcast/bayes_factor.hpp"
#include "pitcast/forecast_engine.hpp"

namespace pitcast {

/// Named rho values taken from commonly quoted ranges: internal models use
/// roughly 0.5%-5% for retail and 10%-40% for non-retail obligors; the
/// regulatory fixed settings are 15% for residential mortgages and 4% for
/// qualifying revolving retail exposures. The PD-dependent regulatory
/// formula is not provided.
struct RhoPreset {
  const char* name;
  double rho;
};

inline constexpr RhoPreset kRhoPresets[] = {
    {"retail-low", 0.005},          {"retail-high", 0.05},
    {"non-retail-low", 0.10},       {"non-retail-high", 0.40},
    {"residential-mortgage", 0.15}, {"qualifying-revolving", 0.04},
};

/// Resolves a numeric rho or a preset name.
[[nodiscard]] RSquared resolve_rho(const std::string& text);

/// Raw run settings as given on the command line or in a key=value file.
struct RunConfig {
  std::string rho;  // number or preset name; empty if unset
  std::optional<double> ar1;
  std::vector<double> ar2;  // empty or {a1, a2}
  std::string mode = "point";
  double prior_mean = 0.0;
  double prior_variance = 1.0;
  std::size_t horizons = 10;
  std::optional<double> grid_lo;
  std::optional<double> grid_hi;
  std::optional<std::size_t> grid_nodes;
  std::size_t low_default_threshold = kDefaultLowDefaultThreshold;
  std::uint64_t seed = 1;
  bool serial = false;
};

/// RunConfig after every value went through the owning module's validation.
struct ValidatedConfig {
  std::optional<RSquared> rho;
  std::optional<ProcessSpec> process;
  ModeSpec mode;
  PriorSpec prior;
  GridSpec grid;
  std::size_t horizons;
  std::size_t low_default_threshold;
  std::uint64_t seed;
  bool parallel;
};

[[nodiscard]] ValidatedConfig validate_config(const RunConfig& config);

/// Entry point of the `pitcast` tool. `args[0]` is the program name.
/// Returns the process exit status: 0 ok, 2 validation, 3 boundary
/// evidence, 4 io, 5 internal.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pitcast
