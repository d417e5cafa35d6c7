#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pitcast/csv.hpp"

namespace pitcast {

struct FigureConfig {
  int figure = 1;  // 1..7
  std::uint64_t seed = 1;
  std::size_t history_years = 100;  // simulated years up to and including T = 0
  std::size_t horizon = 100;        // forecast years after T = 0
};

struct FigureOutput {
  CsvTable table;
  std::vector<std::string> notes;  // one-line diagnostics (crossing period, gaps, ...)
};

/// Plot-ready data for one of the seven illustration figures.
///
///  1, 2   year, psi                      AR(1) a1 = 0.8 / AR(2) (1.3, -0.65)
///  3      psi, prior and exact / normal-approximated posteriors for
///         N = 10 and N = 1000 at a 20% default rate (TTC 3%, rho 15%)
///  4, 5   year, psi, pit_pd, default_rate, ttc_pd, forecast_simple,
///         forecast_bayes; AR(1) 0.8, N = 100, rho 15%, TTC 3% / 5%
///  6, 7   as 4 without forecast_bayes; AR(2) (1.3, -0.65),
///         N = 10,000 rho 15% / N = 100,000 rho 3%, TTC 3%
///
/// History rows are years -(history_years - 1)..0, forecast rows 1..horizon
/// (which also carry the simulated continuation). Unavailable values are
/// empty fields.
[[nodiscard]] FigureOutput replicate_figure(const FigureConfig& config);

}  // namespace pitcast
