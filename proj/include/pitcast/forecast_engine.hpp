#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pitcast/ar_dynamics.hpp"
#include "pitcast/bayes_factor.hpp"
#include "pitcast/factor_model.hpp"
#include "pitcast/ttc_term_structure.hpp"

namespace pitcast {

using ProcessSpec = std::variant<Ar1Params, Ar2Params>;

/// Treat the factor estimated from the default count as exact.
struct PointEstimate {};

/// Use the grid posterior of the current factor (AR(1) only).
struct Bayesian {
  PriorSpec prior;
  std::optional<GridSpec> grid;  // defaults to GridSpec::covering(prior)
};

using ModeSpec = std::variant<PointEstimate, Bayesian>;

inline constexpr std::size_t kDefaultLowDefaultThreshold = 10;

struct ForecastRequest {
  PortfolioSnapshot snapshot;
  /// Snapshot of the year before, required to seed AR(2) point forecasts.
  std::optional<PortfolioSnapshot> previous_snapshot;
  RSquared rho{0.15};
  ProcessSpec process = validate_ar1(0.8);
  ModeSpec mode = PointEstimate{};
  std::size_t horizon_max = 10;
  /// One curve per obligor with at least horizon_max entries. Empty means
  /// each obligor keeps its snapshot TTC PD at every horizon.
  std::vector<TtcCurve> ttc_curves;
  std::size_t low_default_threshold = kDefaultLowDefaultThreshold;
  bool parallel = true;
};

/// Forward PD term structure of one obligor; vectors are indexed by
/// horizon - 1.
struct PitCurve {
  std::string obligor_id;
  std::vector<double> ttc_pds;
  std::vector<double> marginal_pit_pds;
  /// 1 - prod_{t<=h} (1 - marginal_pit_pds[t]).
  std::vector<double> cumulative_pds;
};

struct ForecastResult {
  /// Current factor belief: (psi_hat, 0) in point mode, the moment-matched
  /// posterior in Bayesian mode.
  FactorDistribution current_factor;
  std::optional<double> previous_factor;
  std::optional<double> posterior_normal_gap;
  /// Factor distribution at horizons 1..H.
  std::vector<FactorDistribution> factor_path;
  std::vector<PitCurve> curves;
  std::vector<std::string> warnings;
};

/// Snapshot -> current factor -> factor path -> per-obligor forward PIT PDs.
[[nodiscard]] ForecastResult run_forecast(const ForecastRequest& request);

/// Cumulative survival product of marginal PDs.
[[nodiscard]] std::vector<double> cumulative_from_marginal(const std::vector<double>& marginal);

struct HorizonSummary {
  std::size_t horizon;
  double mean_ttc_pd;
  double mean_marginal_pit_pd;
  double mean_cumulative_pd;
};

struct LifetimeTable {
  std::vector<HorizonSummary> horizons;
  std::vector<PitCurve> obligors;  // sorted by obligor id
};

/// Per-horizon simple means over obligors (not survival weighted), plus the
/// per-obligor rows ordered by id.
[[nodiscard]] LifetimeTable lifetime_summary(const std::vector<PitCurve>& curves);

}  // namespace pitcast
