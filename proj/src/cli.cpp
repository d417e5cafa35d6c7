#include "pitcast/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "pitcast/csv.hpp"
#include "pitcast/error.hpp"
#include "pitcast/figures.hpp"
#include "pitcast/simulation.hpp"

namespace pitcast {

RSquared resolve_rho(const std::string& text) {
  for (const auto& preset : kRhoPresets)
    if (text == preset.name) return RSquared(preset.rho);
  double v = 0.0;
  try {
    v = parse_number(text, "rho");
  } catch (const IoError&) {
    std::string names;
    for (const auto& preset : kRhoPresets) names += std::string(names.empty() ? "" : ", ") + preset.name;
    throw InvalidArgument("rho must be a number or one of: " + names + "; got '" + text + "'");
  }
  return RSquared(v);
}

ValidatedConfig validate_config(const RunConfig& config) {
  ValidatedConfig v{.rho = std::nullopt,
                    .process = std::nullopt,
                    .mode = PointEstimate{},
                    .prior = {config.prior_mean, config.prior_variance},
                    .grid = {},
                    .horizons = config.horizons,
                    .low_default_threshold = config.low_default_threshold,
                    .seed = config.seed,
                    .parallel = !config.serial};
  if (!config.rho.empty()) v.rho = resolve_rho(config.rho);
  if (config.ar1 && !config.ar2.empty())
    throw ValidationError("give either --ar1 or --ar2, not both");
  if (config.ar1) v.process = validate_ar1(*config.ar1);
  if (!config.ar2.empty()) {
    if (config.ar2.size() != 2) throw ValidationError("--ar2 takes exactly two coefficients");
    v.process = validate_ar2(config.ar2[0], config.ar2[1]);
  }
  v.prior.validate();
  if (config.grid_lo || config.grid_hi || config.grid_nodes) {
    v.grid = GridSpec{};
    if (config.grid_lo) v.grid.lo = *config.grid_lo;
    if (config.grid_hi) v.grid.hi = *config.grid_hi;
    if (config.grid_nodes) v.grid.nodes = *config.grid_nodes;
  } else {
    v.grid = GridSpec::covering(v.prior);
  }
  if (config.mode == "bayes") {
    v.mode = Bayesian{v.prior, v.grid};
  } else if (config.mode != "point") {
    throw ValidationError("mode must be 'point' or 'bayes', got '" + config.mode + "'");
  }
  if (config.horizons < 1) throw ValidationError("--horizons must be >= 1");
  return v;
}

namespace {

struct IoPaths {
  std::string out;
  std::string summary_out;
  std::string snapshot;
  std::string previous_snapshot;
  std::string ttc_curves;
  std::string matrix;
  std::vector<std::string> grades;
  std::uint64_t n = 0;
  std::uint64_t defaults = 0;
  double pd_ttc = 0.03;
  std::size_t years = 100;
  std::uint64_t portfolio = 100;
  std::string method = "binomial";
  int figure = 0;
  std::size_t history_years = 100;
};

RSquared need_rho(const ValidatedConfig& c) {
  if (!c.rho) throw ValidationError("--rho is required");
  return *c.rho;
}

const ProcessSpec& need_process(const ValidatedConfig& c) {
  if (!c.process) throw ValidationError("an AR process is required (--ar1 A or --ar2 A1 A2)");
  return *c.process;
}

std::string describe(const ProcessSpec& process) {
  std::ostringstream s;
  if (const auto* p = std::get_if<Ar1Params>(&process))
    s << "AR(1) a1=" << format_number(p->a1());
  else {
    const auto& q = std::get<Ar2Params>(process);
    s << "AR(2) a1=" << format_number(q.a1()) << " a2=" << format_number(q.a2());
  }
  return s.str();
}

void maybe_write(const std::string& path, const CsvTable& table) {
  if (!path.empty()) write_csv_file(path, table);
}

int cmd_validate_params(const ValidatedConfig& c, const IoPaths& io, std::ostream& out) {
  const auto& process = need_process(c);
  CsvTable table{{"key", "value"}, {}};
  std::ostringstream line;
  line << describe(process) << " valid";
  if (const auto* p = std::get_if<Ar1Params>(&process)) {
    table.rows.push_back({"process", "ar1"});
    table.rows.push_back({"a1", format_number(p->a1())});
    table.rows.push_back({"innovation_variance", format_number(p->innovation_variance())});
    line << ": innovation variance " << format_number(p->innovation_variance());
  } else {
    const auto& q = std::get<Ar2Params>(process);
    const double period = ar2_spectral_period(q);
    table.rows.push_back({"process", "ar2"});
    table.rows.push_back({"a1", format_number(q.a1())});
    table.rows.push_back({"a2", format_number(q.a2())});
    table.rows.push_back({"innovation_variance", format_number(q.innovation_variance())});
    table.rows.push_back({"spectral_period_years", format_number(period)});
    line << ": innovation variance " << format_number(q.innovation_variance())
         << ", spectral period " << format_number(period) << " years";
  }
  if (c.rho) {
    table.rows.push_back({"rho", format_number(c.rho->value())});
    line << ", rho " << format_number(c.rho->value());
  }
  maybe_write(io.out, table);
  out << line.str() << '\n';
  return 0;
}

PortfolioSnapshot load_snapshot(const std::string& path) {
  if (path.empty()) throw ValidationError("--snapshot is required");
  return snapshot_from_csv(read_csv_file(path), path);
}

int cmd_estimate_factor(const ValidatedConfig& c, const IoPaths& io, std::ostream& out) {
  const RSquared rho = need_rho(c);
  const auto snapshot = load_snapshot(io.snapshot);
  EstimateOptions options;
  options.parallel = c.parallel;
  double psi = 0.0;
  try {
    psi = estimate_factor(snapshot, rho, options);
  } catch (const BoundaryEvidenceError& e) {
    throw BoundaryEvidenceError(std::string(e.what()) + " (run `pitcast posterior`)");
  }
  const double rate = static_cast<double>(snapshot.defaults) / static_cast<double>(snapshot.size());
  maybe_write(io.out, {{"psi", "defaults", "obligors", "default_rate"},
                       {{format_number(psi), std::to_string(snapshot.defaults),
                         std::to_string(snapshot.size()), format_number(rate)}}});
  out << "psi_hat " << format_number(psi) << " from " << snapshot.defaults << " defaults out of "
      << snapshot.size() << " obligors";
  if (snapshot.defaults < c.low_default_threshold)
    out << " (warning: fewer than " << c.low_default_threshold
        << " defaults; consider `pitcast posterior`)";
  out << '\n';
  return 0;
}

int cmd_posterior(const ValidatedConfig& c, const IoPaths& io, std::ostream& out) {
  DefaultEvidence evidence{io.n, io.defaults, io.pd_ttc, need_rho(c).value()};
  if (!io.snapshot.empty()) {
    const auto snapshot = load_snapshot(io.snapshot);
    for (double pd : snapshot.ttc_pds)
      if (pd != snapshot.ttc_pds.front())
        throw UnsupportedMode("the posterior needs a common TTC PD for all obligors");
    evidence.n = snapshot.size();
    evidence.n_defaults = snapshot.defaults;
    evidence.pd_ttc = snapshot.ttc_pds.front();
  } else if (io.n == 0) {
    throw ValidationError("give --snapshot or --n/--defaults/--pd-ttc");
  }
  const auto post = posterior(evidence, c.prior, c.grid, {c.parallel});
  const auto approx = posterior_normal_approx(post);
  const double sd = std::sqrt(approx.factor.variance);
  const double prior_sd = std::sqrt(c.prior.variance);

  CsvTable table{{"psi", "prior_density", "posterior_density", "normal_approx_density"}, {}};
  for (std::size_t i = 0; i < post.psi_nodes.size(); ++i) {
    const double x = post.psi_nodes[i];
    table.rows.push_back({format_number(x),
                          format_number(std_normal_pdf((x - c.prior.mean) / prior_sd) / prior_sd),
                          format_number(post.densities[i]),
                          format_number(std_normal_pdf((x - approx.factor.mean) / sd) / sd)});
  }
  maybe_write(io.out, table);
  out << "posterior mean " << format_number(post.mean) << ", variance "
      << format_number(post.variance) << ", mode " << format_number(post.mode)
      << ", max density gap to normal " << format_number(approx.max_density_gap) << '\n';
  return 0;
}

int cmd_forecast(const ValidatedConfig& c, const IoPaths& io, std::ostream& out,
                 std::ostream& err) {
  ForecastRequest request;
  request.rho = need_rho(c);
  request.process = need_process(c);
  request.mode = c.mode;
  request.horizon_max = c.horizons;
  request.low_default_threshold = c.low_default_threshold;
  request.parallel = c.parallel;
  request.snapshot = load_snapshot(io.snapshot);
  if (!io.previous_snapshot.empty()) request.previous_snapshot = load_snapshot(io.previous_snapshot);
  if (!io.ttc_curves.empty())
    request.ttc_curves =
        ttc_curves_from_csv(read_csv_file(io.ttc_curves), request.snapshot, io.ttc_curves);

  const auto result = run_forecast(request);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  const auto table = lifetime_summary(result.curves);

  CsvTable curves{{"obligor_id", "horizon", "ttc_pd", "marginal_pit_pd", "cumulative_pd"}, {}};
  for (const auto& curve : table.obligors)
    for (std::size_t h = 0; h < curve.marginal_pit_pds.size(); ++h)
      curves.rows.push_back({curve.obligor_id, std::to_string(h + 1),
                             format_number(curve.ttc_pds[h]),
                             format_number(curve.marginal_pit_pds[h]),
                             format_number(curve.cumulative_pds[h])});
  if (io.out.empty()) throw ValidationError("--out is required");
  write_csv_file(io.out, curves);

  CsvTable summary{{"horizon", "mean_ttc_pd", "mean_marginal_pit_pd", "mean_cumulative_pd"}, {}};
  for (const auto& row : table.horizons)
    summary.rows.push_back({std::to_string(row.horizon), format_number(row.mean_ttc_pd),
                            format_number(row.mean_marginal_pit_pd),
                            format_number(row.mean_cumulative_pd)});
  maybe_write(io.summary_out, summary);

  out << "forecast " << describe(request.process)
      << ", " << result.curves.size() << " obligors, " << c.horizons << " horizons, psi(T0) "
      << format_number(result.current_factor.mean);
  if (result.current_factor.variance > 0.0)
    out << " (variance " << format_number(result.current_factor.variance) << ")";
  out << ", mean PIT PD h1 " << format_number(table.horizons.front().mean_marginal_pit_pd)
      << ", h" << c.horizons << " " << format_number(table.horizons.back().mean_marginal_pit_pd)
      << '\n';
  return 0;
}

int cmd_project_ttc(const ValidatedConfig& c, const IoPaths& io, std::ostream& out) {
  if (io.matrix.empty()) throw ValidationError("--matrix is required");
  const auto m = transition_matrix_from_csv(read_csv_file(io.matrix, RowWidth::kHeaderPlusOne), io.matrix);
  std::vector<std::string> grades = io.grades;
  if (grades.empty()) grades.assign(m.grades.begin(), m.grades.end() - 1);

  CsvTable table{{"grade", "horizon", "marginal_pd", "cumulative_pd"}, {}};
  for (const auto& grade : grades) {
    const auto curve = project_ttc_curve(m, grade, c.horizons);
    const auto cumulative = cumulative_from_marginal(curve.marginal_pds);
    for (std::size_t h = 0; h < curve.horizons(); ++h)
      table.rows.push_back({grade, std::to_string(h + 1), format_number(curve.marginal_pds[h]),
                            format_number(cumulative[h])});
  }
  if (io.out.empty()) throw ValidationError("--out is required");
  write_csv_file(io.out, table);
  out << "projected " << grades.size() << " grade(s) over " << c.horizons << " horizons\n";
  return 0;
}

int cmd_simulate(const ValidatedConfig& c, const IoPaths& io, std::ostream& out) {
  const RSquared rho = need_rho(c);
  const auto& process = need_process(c);
  DefaultMethod method;
  if (io.method == "binomial")
    method = DefaultMethod::kBinomial;
  else if (io.method == "asset-return")
    method = DefaultMethod::kAssetReturn;
  else
    throw ValidationError("--method must be 'binomial' or 'asset-return'");
  if (io.out.empty()) throw ValidationError("--out is required");

  const auto path = std::holds_alternative<Ar1Params>(process)
                        ? simulate_ar1_path(std::get<Ar1Params>(process), io.years, c.seed)
                        : simulate_ar2_path(std::get<Ar2Params>(process), io.years, c.seed);
  const auto history = simulate_default_history(path, Probability(io.pd_ttc), rho, io.portfolio,
                                                c.seed + 1, method);
  const auto rates = history.default_rates();
  CsvTable table{{"year", "psi", "pit_pd", "defaults", "default_rate"}, {}};
  double mean_rate = 0.0;
  for (std::size_t t = 0; t < path.size(); ++t) {
    table.rows.push_back({std::to_string(t + 1), format_number(path[t]),
                          format_number(history.pit_pds[t]),
                          std::to_string(history.default_counts[t]), format_number(rates[t])});
    mean_rate += rates[t];
  }
  write_csv_file(io.out, table);
  out << "simulated " << path.size() << " years of " << describe(process) << ", mean default rate "
      << format_number(mean_rate / static_cast<double>(path.size()));
  try {
    out << ", double-crossing period " << format_number(double_crossing_period(path)) << " years";
  } catch (const Error&) {
    out << ", double-crossing period unavailable";
  }
  out << '\n';
  return 0;
}

int cmd_replicate_figure(const ValidatedConfig& c, const IoPaths& io, std::ostream& out) {
  if (io.out.empty()) throw ValidationError("--out is required");
  FigureConfig config{io.figure, c.seed, io.history_years, c.horizons};
  const auto figure = replicate_figure(config);
  write_csv_file(io.out, figure.table);
  out << "figure " << io.figure << ": " << figure.table.rows.size() << " rows";
  for (const auto& note : figure.notes) out << "; " << note;
  out << '\n';
  return 0;
}

int report(const Error& e, std::ostream& err) {
  err << "error: category=" << category_name(e.category()) << ": " << e.what() << '\n';
  return static_cast<int>(e.category());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Endogenous forward point-in-time PD forecasts", "pitcast"};
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig config;
  IoPaths io;
  app.add_option("--rho", config.rho, "systematic weight rho in [0,1) or a preset name");
  app.add_option("--ar1", config.ar1, "AR(1) coefficient a1");
  app.add_option("--ar2", config.ar2, "AR(2) coefficients a1 a2")->expected(2);
  app.add_option("--mode", config.mode, "point | bayes");
  app.add_option("--prior-mean", config.prior_mean);
  app.add_option("--prior-variance", config.prior_variance);
  app.add_option("--horizons", config.horizons, "forecast horizon in years");
  app.add_option("--grid-lo", config.grid_lo);
  app.add_option("--grid-hi", config.grid_hi);
  app.add_option("--grid-nodes", config.grid_nodes);
  app.add_option("--low-default-threshold", config.low_default_threshold);
  app.add_option("--seed", config.seed);
  app.add_flag("--serial", config.serial, "use the serial reference kernels");

  auto* validate = app.add_subcommand("validate-params", "check AR/rho parameters");
  validate->add_option("--out", io.out);

  auto* estimate = app.add_subcommand("estimate-factor", "point estimate of the current factor");
  estimate->add_option("--snapshot", io.snapshot)->required();
  estimate->add_option("--out", io.out);

  auto* post = app.add_subcommand("posterior", "grid posterior of the current factor");
  post->add_option("--snapshot", io.snapshot);
  post->add_option("--n", io.n);
  post->add_option("--defaults", io.defaults);
  post->add_option("--pd-ttc", io.pd_ttc);
  post->add_option("--out", io.out);

  auto* forecast = app.add_subcommand("forecast", "forward PIT PD curves");
  forecast->add_option("--snapshot", io.snapshot)->required();
  forecast->add_option("--previous-snapshot", io.previous_snapshot);
  forecast->add_option("--ttc-curves", io.ttc_curves);
  forecast->add_option("--out", io.out)->required();
  forecast->add_option("--summary-out", io.summary_out);

  auto* project = app.add_subcommand("project-ttc", "forward TTC PDs from a transition matrix");
  project->add_option("--matrix", io.matrix)->required();
  project->add_option("--grade", io.grades);
  project->add_option("--out", io.out)->required();

  auto* simulate = app.add_subcommand("simulate", "simulate factor path and default counts");
  simulate->add_option("--years", io.years);
  simulate->add_option("--pd-ttc", io.pd_ttc);
  simulate->add_option("--n", io.portfolio);
  simulate->add_option("--method", io.method, "binomial | asset-return");
  simulate->add_option("--out", io.out)->required();

  auto* figure = app.add_subcommand("replicate-figure", "plot-ready data for figures 1-7");
  figure->add_option("--figure", io.figure)->required();
  figure->add_option("--history-years", io.history_years);
  figure->add_option("--out", io.out)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: category=validation: " << e.what() << '\n';
    return static_cast<int>(ErrorCategory::kValidation);
  }

  try {
    const auto validated = validate_config(config);
    if (validate->parsed()) return cmd_validate_params(validated, io, out);
    if (estimate->parsed()) return cmd_estimate_factor(validated, io, out);
    if (post->parsed()) return cmd_posterior(validated, io, out);
    if (forecast->parsed()) return cmd_forecast(validated, io, out, err);
    if (project->parsed()) return cmd_project_ttc(validated, io, out);
    if (simulate->parsed()) return cmd_simulate(validated, io, out);
    if (figure->parsed()) return cmd_replicate_figure(validated, io, out);
  } catch (const Error& e) {
    return report(e, err);
  } catch (const std::exception& e) {
    err << "error: category=internal: " << e.what() << '\n';
    return static_cast<int>(ErrorCategory::kInternal);
  }
  err << "error: category=internal: no subcommand handled\n";
  return static_cast<int>(ErrorCategory::kInternal);
}

}  // namespace pitcast
