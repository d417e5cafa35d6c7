#include "pitcast/forecast_engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "pitcast/error.hpp"
#include "pitcast/kernels.hpp"

namespace pitcast {

namespace {

std::string obligor_id(const PortfolioSnapshot& s, std::size_t i) {
  return s.obligor_ids.empty() ? std::to_string(i + 1) : s.obligor_ids[i];
}

void warn_if_low_default(const PortfolioSnapshot& s, std::size_t threshold, const char* which,
                         std::vector<std::string>& warnings) {
  if (s.defaults < threshold) {
    std::ostringstream msg;
    msg << which << " snapshot has " << s.defaults << " defaults (below " << threshold
        << "); the point estimate is unreliable, consider the Bayesian mode";
    warnings.push_back(msg.str());
  }
}

bool homogeneous(const PortfolioSnapshot& s) {
  return std::all_of(s.ttc_pds.begin(), s.ttc_pds.end(),
                     [&](double pd) { return pd == s.ttc_pds.front(); });
}

struct IdKey {
  bool numeric;
  unsigned long long value;
};

IdKey id_key(const std::string& id) {
  unsigned long long v = 0;
  const auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), v);
  const bool numeric = ec == std::errc{} && ptr == id.data() + id.size() && !id.empty();
  return {numeric, numeric ? v : 0};
}

}  // namespace

std::vector<double> cumulative_from_marginal(const std::vector<double>& marginal) {
  std::vector<double> cumulative(marginal.size());
  double survival = 1.0;
  for (std::size_t h = 0; h < marginal.size(); ++h) {
    survival *= 1.0 - marginal[h];
    cumulative[h] = 1.0 - survival;
  }
  return cumulative;
}

ForecastResult run_forecast(const ForecastRequest& request) {
  const auto& snapshot = request.snapshot;
  snapshot.validate();
  if (request.horizon_max < 1) throw InvalidArgument("horizon_max must be >= 1");
  const std::size_t n = snapshot.size();
  const std::size_t horizons = request.horizon_max;
  if (!request.ttc_curves.empty()) {
    if (request.ttc_curves.size() != n)
      throw InvalidArgument("need one TTC curve per obligor");
    for (std::size_t i = 0; i < n; ++i) {
      request.ttc_curves[i].validate();
      if (request.ttc_curves[i].horizons() < horizons) {
        std::ostringstream msg;
        msg << "TTC curve of obligor '" << obligor_id(snapshot, i) << "' covers "
            << request.ttc_curves[i].horizons() << " horizons, need " << horizons;
        throw InvalidArgument(msg.str());
      }
    }
  }

  ForecastResult result;
  const bool ar2 = std::holds_alternative<Ar2Params>(request.process);
  const bool bayes = std::holds_alternative<Bayesian>(request.mode);
  EstimateOptions estimate_options;
  estimate_options.parallel = request.parallel;

  if (bayes) {
    if (ar2) throw UnsupportedMode("Bayesian factor estimation is defined for AR(1) only");
    if (!homogeneous(snapshot))
      throw UnsupportedMode("Bayesian factor estimation needs a common TTC PD for all obligors");
    const auto& spec = std::get<Bayesian>(request.mode);
    const DefaultEvidence evidence{n, snapshot.defaults, snapshot.ttc_pds.front(),
                                   request.rho.value()};
    const GridSpec grid = spec.grid ? *spec.grid : GridSpec::covering(spec.prior);
    const auto post = posterior(evidence, spec.prior, grid, {request.parallel});
    const auto approx = posterior_normal_approx(post);
    result.current_factor = approx.factor;
    result.posterior_normal_gap = approx.max_density_gap;
  } else {
    warn_if_low_default(snapshot, request.low_default_threshold, "current", result.warnings);
    result.current_factor = {estimate_factor(snapshot, request.rho, estimate_options), 0.0};
    if (ar2) {
      if (!request.previous_snapshot)
        throw InvalidArgument("AR(2) point forecasts need the previous year's snapshot");
      warn_if_low_default(*request.previous_snapshot, request.low_default_threshold,
                          "previous", result.warnings);
      result.previous_factor =
          estimate_factor(*request.previous_snapshot, request.rho, estimate_options);
    }
  }

  result.factor_path.reserve(horizons);
  for (std::size_t h = 1; h <= horizons; ++h) {
    const int hi = static_cast<int>(h);
    if (ar2) {
      result.factor_path.push_back(ar2_conditional_moments(
          std::get<Ar2Params>(request.process), result.current_factor.mean,
          *result.previous_factor, hi));
    } else {
      result.factor_path.push_back(
          propagate_ar1(result.current_factor, std::get<Ar1Params>(request.process), hi));
    }
  }

  std::vector<double> ttc(n * horizons);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < horizons; ++h)
      ttc[i * horizons + h] = request.ttc_curves.empty()
                                  ? snapshot.ttc_pds[i]
                                  : request.ttc_curves[i].marginal_pds[h];

  std::vector<NormalMoments> moments;
  moments.reserve(horizons);
  for (const auto& f : result.factor_path) moments.push_back({f.mean, f.variance});

  std::vector<double> pit(ttc.size());
  if (request.parallel)
    kernels::parallel::forward_pit_matrix(ttc, horizons, moments, request.rho.value(), pit);
  else
    kernels::serial::forward_pit_matrix(ttc, horizons, moments, request.rho.value(), pit);

  result.curves.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& curve = result.curves[i];
    curve.obligor_id = obligor_id(snapshot, i);
    const auto row = static_cast<std::ptrdiff_t>(i * horizons);
    const auto end = row + static_cast<std::ptrdiff_t>(horizons);
    curve.ttc_pds.assign(ttc.begin() + row, ttc.begin() + end);
    curve.marginal_pit_pds.assign(pit.begin() + row, pit.begin() + end);
    curve.cumulative_pds = cumulative_from_marginal(curve.marginal_pit_pds);
  }
  return result;
}

LifetimeTable lifetime_summary(const std::vector<PitCurve>& curves) {
  if (curves.empty()) throw InvalidArgument("lifetime summary needs at least one curve");
  const std::size_t horizons = curves.front().marginal_pit_pds.size();
  for (const auto& c : curves)
    if (c.marginal_pit_pds.size() != horizons || c.cumulative_pds.size() != horizons ||
        c.ttc_pds.size() != horizons)
      throw InvalidArgument("all curves must cover the same horizons");

  LifetimeTable table;
  table.obligors = curves;
  std::stable_sort(table.obligors.begin(), table.obligors.end(),
                   [](const PitCurve& a, const PitCurve& b) {
                     const auto ka = id_key(a.obligor_id);
                     const auto kb = id_key(b.obligor_id);
                     if (ka.numeric != kb.numeric) return ka.numeric;
                     if (ka.numeric && ka.value != kb.value) return ka.value < kb.value;
                     return a.obligor_id < b.obligor_id;
                   });

  const double count = static_cast<double>(curves.size());
  table.horizons.reserve(horizons);
  for (std::size_t h = 0; h < horizons; ++h) {
    double ttc = 0.0, marginal = 0.0, cumulative = 0.0;
    for (const auto& c : table.obligors) {
      ttc += c.ttc_pds[h];
      marginal += c.marginal_pit_pds[h];
      cumulative += c.cumulative_pds[h];
    }
    table.horizons.push_back({h + 1, ttc / count, marginal / count, cumulative / count});
  }
  return table;
}

}  // namespace pitcast
