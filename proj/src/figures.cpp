#include "pitcast/figures.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "pitcast/error.hpp"
#include "pitcast/forecast_engine.hpp"
#include "pitcast/simulation.hpp"

namespace pitcast {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct HistoryFigure {
  double pd_ttc;
  double rho;
  std::uint64_t n;
  bool ar2;
  bool with_bayes;
};

HistoryFigure history_figure(int id) {
  switch (id) {
    case 4: return {0.03, 0.15, 100, false, true};
    case 5: return {0.05, 0.15, 100, false, true};
    case 6: return {0.03, 0.15, 10'000, true, false};
    case 7: return {0.03, 0.03, 100'000, true, false};
    default: break;
  }
  throw InvalidArgument("no history figure " + std::to_string(id));
}

FigureOutput path_figure(const FigureConfig& config) {
  FigureOutput out;
  std::vector<double> path;
  if (config.figure == 1) {
    path = simulate_ar1_path(validate_ar1(0.8), config.history_years, config.seed);
  } else {
    path = simulate_ar2_path(validate_ar2(1.3, -0.65), config.history_years, config.seed);
  }
  out.table.header = {"year", "psi"};
  for (std::size_t t = 0; t < path.size(); ++t)
    out.table.rows.push_back({std::to_string(t + 1), format_number(path[t])});
  try {
    std::ostringstream note;
    note << "double-crossing period " << format_number(double_crossing_period(path)) << " years";
    out.notes.push_back(note.str());
  } catch (const Error& e) {
    out.notes.push_back(std::string("double-crossing period unavailable: ") + e.what());
  }
  return out;
}

FigureOutput posterior_figure() {
  FigureOutput out;
  const PriorSpec prior;
  const GridSpec grid = GridSpec::covering(prior);
  const auto small = posterior({10, 2, 0.03, 0.15}, prior, grid);
  const auto large = posterior({1000, 200, 0.03, 0.15}, prior, grid);
  const auto small_approx = posterior_normal_approx(small);
  const auto large_approx = posterior_normal_approx(large);

  auto normal_density = [](double x, const FactorDistribution& f) {
    const double sd = std::sqrt(f.variance);
    return std_normal_pdf((x - f.mean) / sd) / sd;
  };

  out.table.header = {"psi",          "prior",           "posterior_n10",
                      "approx_n10",   "posterior_n1000", "approx_n1000"};
  for (std::size_t i = 0; i < small.psi_nodes.size(); ++i) {
    const double x = small.psi_nodes[i];
    out.table.rows.push_back({format_number(x), format_number(std_normal_pdf(x)),
                              format_number(small.densities[i]),
                              format_number(normal_density(x, small_approx.factor)),
                              format_number(large.densities[i]),
                              format_number(normal_density(x, large_approx.factor))});
  }
  for (const auto& [label, post, approx] :
       {std::tuple{"N=10", &small, &small_approx}, std::tuple{"N=1000", &large, &large_approx}}) {
    std::ostringstream note;
    note << label << ": posterior mean " << format_number(post->mean) << ", variance "
         << format_number(post->variance) << ", mode " << format_number(post->mode)
         << ", max density gap to normal " << format_number(approx->max_density_gap);
    out.notes.push_back(note.str());
  }
  return out;
}

PortfolioSnapshot homogeneous_snapshot(std::uint64_t n, double pd, std::uint64_t defaults) {
  PortfolioSnapshot s;
  s.ttc_pds.assign(n, pd);
  s.defaults = defaults;
  return s;
}

FigureOutput history_figure_output(const FigureConfig& config) {
  const HistoryFigure fig = history_figure(config.figure);
  if (config.history_years < 2) throw InvalidArgument("history figures need >= 2 history years");
  if (config.horizon < 1) throw InvalidArgument("history figures need a forecast horizon >= 1");
  const std::size_t length = config.history_years + config.horizon;

  std::vector<double> path;
  ProcessSpec process = validate_ar1(0.8);
  if (fig.ar2) {
    const auto p = validate_ar2(1.3, -0.65);
    process = p;
    path = simulate_ar2_path(p, length, config.seed);
  } else {
    path = simulate_ar1_path(std::get<Ar1Params>(process), length, config.seed);
  }
  const auto history =
      simulate_default_history(path, Probability(fig.pd_ttc), RSquared(fig.rho), fig.n,
                               config.seed ^ 0x9E3779B97F4A7C15ULL, DefaultMethod::kBinomial);

  const std::size_t now = config.history_years - 1;  // row index of T = 0
  FigureOutput out;

  ForecastRequest request;
  request.snapshot = homogeneous_snapshot(fig.n, fig.pd_ttc, history.default_counts[now]);
  request.rho = RSquared(fig.rho);
  request.process = process;
  request.horizon_max = config.horizon;
  if (fig.ar2)
    request.previous_snapshot =
        homogeneous_snapshot(fig.n, fig.pd_ttc, history.default_counts[now - 1]);

  // Every obligor has the same curve; the first one is reported.
  std::optional<std::vector<double>> simple, bayes;
  try {
    auto result = run_forecast(request);
    simple = result.curves.front().marginal_pit_pds;
    std::ostringstream note;
    note << "point estimate psi(T=0) = " << format_number(result.current_factor.mean);
    if (result.previous_factor)
      note << ", psi(T=-1) = " << format_number(*result.previous_factor);
    out.notes.push_back(note.str());
    for (const auto& w : result.warnings) out.notes.push_back("warning: " + w);
  } catch (const BoundaryEvidenceError& e) {
    out.notes.push_back(std::string("simple forecast unavailable: ") + e.what());
  }
  if (fig.with_bayes) {
    request.mode = Bayesian{};
    auto result = run_forecast(request);
    bayes = result.curves.front().marginal_pit_pds;
    std::ostringstream note;
    note << "posterior psi(T=0) ~ N(" << format_number(result.current_factor.mean) << ", "
         << format_number(result.current_factor.variance) << ")";
    out.notes.push_back(note.str());
  }

  out.table.header = {"year", "psi", "pit_pd", "default_rate", "ttc_pd", "forecast_simple"};
  if (fig.with_bayes) out.table.header.push_back("forecast_bayes");
  const auto rates = history.default_rates();
  for (std::size_t t = 0; t < length; ++t) {
    const long long year = static_cast<long long>(t) - static_cast<long long>(now);
    const bool forecast_row = t > now;
    auto at = [&](const std::optional<std::vector<double>>& curve) {
      return forecast_row && curve ? (*curve)[t - now - 1] : kNaN;
    };
    std::vector<std::string> row = {std::to_string(year), format_number(path[t]),
                                    format_number(history.pit_pds[t]), format_number(rates[t]),
                                    format_number(fig.pd_ttc), format_number(at(simple))};
    if (fig.with_bayes) row.push_back(format_number(at(bayes)));
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

FigureOutput replicate_figure(const FigureConfig& config) {
  switch (config.figure) {
    case 1:
    case 2:
      if (config.history_years < 10)
        throw InvalidArgument("path figures need at least 10 simulated years");
      return path_figure(config);
    case 3:
      return posterior_figure();
    case 4:
    case 5:
    case 6:
    case 7:
      return history_figure_output(config);
    default:
      throw InvalidArgument("unknown figure id " + std::to_string(config.figure) +
                            " (expected 1..7)");
  }
}

}  // namespace pitcast
