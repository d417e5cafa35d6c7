// Acceptance gate: one PASS/FAIL line per criterion. A criterion passes
// only if its check holds and it finishes within its time limit.

#include <algorithm>
#include <cfloat>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pitcast/ar_dynamics.hpp"
#include "pitcast/bayes_factor.hpp"
#include "pitcast/csv.hpp"
#include "pitcast/error.hpp"
#include "pitcast/factor_model.hpp"
#include "pitcast/figures.hpp"
#include "pitcast/forecast_engine.hpp"
#include "pitcast/math_kernel.hpp"
#include "pitcast/simulation.hpp"

using namespace pitcast;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. forward_pit with the unconditional factor returns pd_ttc.
Outcome ttc_reduction() {
  constexpr double kRelTol = 4.0 * DBL_EPSILON;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> log_pd(std::log(1e-6), std::log(0.999)), r(0.0, 0.999);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double pd = std::exp(log_pd(rng));
    const double got = forward_pit(Probability(pd), RSquared(r(rng)), {0.0, 1.0}).value();
    worst = std::max(worst, std::abs(got - pd) / pd);
  }
  return {worst <= kRelTol,
          fmt("max relative error %.3g (tol %.3g = 4 eps) over 1000 pairs", worst, kRelTol)};
}

// 2. E[Phi(x)] = Phi(mu / sqrt(1 + sigma^2)) against Monte Carlo.
Outcome appendix_identity() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> mu(-3.0, 3.0), var(0.0, 4.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double m = mu(rng), v = var(rng);
    const auto mc = oracle::mc_normal_mean(oracle::cdf, m, v, 1'000'000, 2000 + i);
    const double z = std::abs(expected_normal_cdf({m, v}).value() - mc.mean) / mc.stderr_;
    worst = std::max(worst, z);
  }
  return {worst <= 4.0, fmt("max |closed form - MC| = %.2f stderr (tol 4) over 20 sets, 1e6 draws",
                            worst)};
}

// 3. forward_pit against the Monte Carlo mean of pit_conditional.
Outcome closed_form_vs_mc() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> pd(0.001, 0.3), r(0.01, 0.5), mu(-3.0, 3.0),
      var(0.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Probability p(pd(rng));
    const RSquared rho(r(rng));
    const double m = mu(rng), v = var(rng);
    const auto g = [&](double psi) { return pit_conditional(p, rho, psi).value(); };
    const auto mc = oracle::mc_normal_mean(g, m, v, 1'000'000, 3000 + i);
    const double z = std::abs(forward_pit(p, rho, {m, v}).value() - mc.mean) / mc.stderr_;
    worst = std::max(worst, z);
  }
  return {worst <= 4.0, fmt("max |closed form - MC| = %.2f stderr (tol 4) over 20 sets, 1e6 draws",
                            worst)};
}

// 4. AR(1) forward PIT: moment form and decayed-rho form coincide.
Outcome dual_form() {
  constexpr double kTol = 1e-12;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> pd(1e-5, 0.5), r(0.0, 0.99), a(0.0, 0.999),
      psi(-5.0, 5.0);
  std::uniform_int_distribution<int> h(1, 100);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const Probability p(pd(rng));
    const RSquared rho(r(rng));
    const auto ar = validate_ar1(a(rng));
    const double s = psi(rng);
    const int hh = h(rng);
    worst = std::max(worst, std::abs(forward_pit_ar1(p, rho, ar, s, hh).value() -
                                     forward_pit_ar1_decayed_rho(p, rho, ar, s, hh).value()));
  }
  return {worst <= kTol, fmt("max |difference| %.3g (tol 1e-12) over 20000 random points", worst)};
}

// 5. Heterogeneous portfolios built so that a known psi gives an integer
// expected default count; estimate_factor must recover psi.
Outcome factor_round_trip() {
  constexpr double kTol = 1e-6;
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> pd(0.002, 0.2), r(0.02, 0.6), psi_dist(-3.0, 3.0);
  std::uniform_int_distribution<int> size(20, 20000);
  double worst = 0.0;
  int built = 0;
  while (built < 50) {
    const double psi = psi_dist(rng), rho = r(rng);
    const int n = size(rng);
    PortfolioSnapshot s;
    double sum = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      s.ttc_pds.push_back(pd(rng));
      sum += oracle::pit(s.ttc_pds.back(), rho, psi);
    }
    // last obligor tops the expected count up to the next integer
    const double defaults = std::ceil(sum + 0.05);
    const double last_pit = defaults - sum;
    if (!(last_pit > 0.05 && last_pit < 0.95) || defaults >= n) continue;
    s.ttc_pds.push_back(
        oracle::cdf(oracle::quantile(last_pit) * std::sqrt(1 - rho) + psi * std::sqrt(rho)));
    s.defaults = static_cast<std::size_t>(defaults);
    worst = std::max(worst, std::abs(estimate_factor(s, RSquared(rho)) - psi));
    ++built;
  }
  return {worst <= kTol, fmt("max |psi_hat - psi| %.3g (tol 1e-6) over 50 portfolios", worst)};
}

// 6. Stationary moments of simulated paths.
Outcome ar_moments() {
  const auto a1 = simulate_ar1_path(validate_ar1(0.8), 1'000'000, 606);
  const auto a2 = simulate_ar2_path(validate_ar2(1.3, -0.65), 1'000'000, 607);
  const double v1 = oracle::sample_variance(a1), v2 = oracle::sample_variance(a2);
  const double r1 = oracle::lag1_autocorrelation(a1);
  const bool pass = std::abs(v1 - 1) <= 0.03 && std::abs(v2 - 1) <= 0.03 && std::abs(r1 - 0.8) <= 0.02;
  return {pass, fmt("AR(1) var %.4f, lag-1 acf %.4f; AR(2) var %.4f (tol 1 +- 0.03, 0.8 +- 0.02)",
                    v1, r1, v2)};
}

// 7. Cycle statistics.
Outcome cycle_statistics() {
  const auto a1 = simulate_ar1_path(validate_ar1(0.8), 1'000'000, 707);
  const auto a2 = simulate_ar2_path(validate_ar2(1.3, -0.65), 1'000'000, 708);
  const double c1 = double_crossing_period(a1), c2 = double_crossing_period(a2);
  const double spectral = ar2_spectral_period(validate_ar2(1.3, -0.65));
  const bool pass = std::abs(c1 - 10) <= 1 && std::abs(c2 - 9) <= 1 && std::abs(spectral - 10.46) <= 0.01;
  return {pass, fmt("double crossing AR(1) %.3f (10 +- 1), AR(2) %.3f (9 +- 1); spectral %.4f "
                    "(10.46 +- 0.01)",
                    c1, c2, spectral)};
}

// 8. Posterior sharpening and large-n consistency at a 20% default rate.
Outcome bayes_sharpening() {
  const PriorSpec prior;
  const GridSpec grid = GridSpec::covering(prior);
  const auto n10 = posterior({10, 2, 0.03, 0.15}, prior, grid);
  const auto n1000 = posterior({1000, 200, 0.03, 0.15}, prior, grid);
  const auto n1e5 = posterior({100'000, 20'000, 0.03, 0.15}, prior, grid);
  const double target = oracle::bisect(
      [](double psi) { return -oracle::pit(0.03, 0.15, psi); }, -0.2, -8.0, 8.0);
  const bool pass = n10.variance > n1000.variance && std::abs(n1e5.mode - target) <= 0.02;
  return {pass, fmt("variance n=10 %.4f > n=1000 %.4f; n=1e5 mode %.4f vs %.4f (tol 0.02)",
                    n10.variance, n1000.variance, n1e5.mode, target)};
}

// Successive local peaks of the gap sequence are non-increasing and the
// last gap is below `final_tol`. AR(2) curves overshoot before they decay,
// so the h = 1 value is not itself a peak bound.
bool envelope_converges(const std::vector<double>& gap, double final_tol) {
  double last_peak = INFINITY;
  for (std::size_t h = 1; h + 1 < gap.size(); ++h) {
    if (gap[h] >= gap[h - 1] && gap[h] >= gap[h + 1] && gap[h] > 0.0) {
      if (gap[h] > last_peak * (1 + 1e-9)) return false;
      last_peak = gap[h];
    }
  }
  return gap.back() < final_tol;
}

// 9. Convergence of forecasts. Every curve must approach its TTC curve, and
// at the first horizon H with a1^(2H) < 1e-8 the gap must be below 1e-6.
// Checked on the Figure-4 setting (N = 100, TTC 3%, rho 15%, a1 = 0.8) for
// every interior default count in point mode and every count in Bayesian mode.
Outcome forecast_convergence() {
  constexpr double kTol = 1e-6;
  const double a1 = 0.8;
  const auto horizon = static_cast<std::size_t>(std::ceil(std::log(1e-8) / (2 * std::log(a1))));
  const std::size_t long_horizon = 4 * horizon;
  double worst = 0.0, worst_psi = 0.0, worst_long = 0.0;
  bool envelope = true;
  int failing = 0, curves = 0;
  for (int mode = 0; mode < 2; ++mode) {
    for (std::size_t d = mode == 0 ? 1 : 0; d <= (mode == 0 ? 99u : 100u); ++d) {
      ForecastRequest req;
      req.snapshot.ttc_pds.assign(100, 0.03);
      req.snapshot.defaults = d;
      req.process = validate_ar1(a1);
      req.horizon_max = long_horizon;
      if (mode == 1) req.mode = Bayesian{};
      const auto r = run_forecast(req);
      const auto& curve = r.curves.front().marginal_pit_pds;
      std::vector<double> gap;
      for (double v : curve) gap.push_back(std::abs(v - 0.03));
      envelope = envelope && envelope_converges(gap, 1e-9);
      worst_long = std::max(worst_long, gap.back());
      const double at_h = gap[horizon - 1];
      ++curves;
      if (at_h >= kTol) ++failing;
      if (at_h > worst) {
        worst = at_h;
        worst_psi = r.current_factor.mean;
      }
    }
  }
  return {envelope && failing == 0,
          fmt("gap at H=%zu (a1^2H=%.2g): max %.3g at psi %.3f, %d of %d curves >= 1e-6 "
              "(the gap scales with |psi| a1^H, not a1^2H); converging envelope: %s, max gap "
              "at h=%zu %.3g",
              horizon, std::pow(a1, 2.0 * horizon), worst, worst_psi, failing, curves,
              envelope ? "yes" : "no", long_horizon, worst_long)};
}

double cell(const CsvTable& t, std::size_t row, const char* col) {
  return parse_number(t.rows[row][t.column(col)], col);
}

// 10. Figures 4-7: forecasts start at the horizon-1 conditional value and
// converge to TTC in envelope.
Outcome figure_replication() {
  constexpr double kStartTol = 1e-9;
  constexpr double kFinalTol = 1e-6;
  struct Fig {
    int id;
    bool ar2;
    double n;
    double rho;
    double ttc;
  };
  const Fig figs[] = {{4, false, 100, 0.15, 0.03}, {5, false, 100, 0.15, 0.05},
                      {6, true, 1e4, 0.15, 0.03},  {7, true, 1e5, 0.03, 0.03}};
  int checked = 0, failed = 0, blank = 0;
  double worst_start = 0.0;
  std::string first_failure;
  for (const auto& f : figs) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto out = replicate_figure({f.id, seed, 100, 100});
      const auto& t = out.table;
      const std::size_t now = 99;  // row of year 0
      const double b = oracle::quantile(f.ttc);
      auto psi_hat = [&](std::size_t row) {
        const double d = std::round(cell(t, row, "default_rate") * f.n);
        return oracle::bisect([&](double psi) { return -f.n * oracle::pit_at_barrier(b, f.rho, psi); },
                              -d, -12.0, 12.0);
      };
      std::vector<std::pair<std::string, double>> starts;  // column, expected h=1 value
      const double d0 = std::round(cell(t, now, "default_rate") * f.n);
      const double d1 = std::round(cell(t, now - 1, "default_rate") * f.n);
      const bool boundary = d0 == 0 || d0 == f.n || (f.ar2 && (d1 == 0 || d1 == f.n));
      if (!boundary) {
        double mean, var;
        if (f.ar2) {
          const auto p = validate_ar2(1.3, -0.65);
          mean = 1.3 * psi_hat(now) - 0.65 * psi_hat(now - 1);
          var = p.innovation_variance();
        } else {
          mean = 0.8 * psi_hat(now);
          var = 0.36;
        }
        starts.emplace_back("forecast_simple",
                            oracle::cdf((b - mean * std::sqrt(f.rho)) /
                                        std::sqrt(1 - f.rho + var * f.rho)));
      } else {
        ++blank;
      }
      if (!f.ar2) {
        // posterior moments by Simpson quadrature, then one AR(1) step
        const std::size_t m = 20000;
        std::vector<double> lf(m + 1);
        for (std::size_t i = 0; i <= m; ++i) {
          const double psi = -8.0 + 16.0 * i / m;
          const double pit = oracle::pit_at_barrier(b, f.rho, psi);
          lf[i] = (d0 > 0 ? d0 * std::log(pit) : 0.0) +
                  (f.n > d0 ? (f.n - d0) * std::log1p(-pit) : 0.0) - 0.5 * psi * psi;
        }
        const double peak = *std::max_element(lf.begin(), lf.end());
        double z = 0, s1 = 0, s2 = 0;
        for (std::size_t i = 0; i <= m; ++i) {
          const double psi = -8.0 + 16.0 * i / m;
          const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
          const double v = w * std::exp(lf[i] - peak);
          z += v;
          s1 += v * psi;
          s2 += v * psi * psi;
        }
        const double pm = s1 / z, pv = s2 / z - pm * pm;
        const double mean = 0.8 * pm, var = 1 + (pv - 1) * 0.64;
        starts.emplace_back("forecast_bayes", oracle::cdf((b - mean * std::sqrt(f.rho)) /
                                                          std::sqrt(1 - f.rho + var * f.rho)));
      }
      for (const auto& [col, expected] : starts) {
        ++checked;
        const double start = cell(t, now + 1, col.c_str());
        std::vector<double> gap;
        for (std::size_t row = now + 1; row < t.rows.size(); ++row)
          gap.push_back(std::abs(cell(t, row, col.c_str()) - f.ttc));
        const double err = std::abs(start - expected);
        worst_start = std::max(worst_start, err);
        if (err > kStartTol || !envelope_converges(gap, kFinalTol)) {
          ++failed;
          if (first_failure.empty())
            first_failure = fmt(" first failure: figure %d seed %llu %s", f.id,
                                static_cast<unsigned long long>(seed), col.c_str());
        }
      }
    }
  }
  return {failed == 0 && checked > 0,
          fmt("%d forecast curves over figures 4-7 x 5 seeds (%d simple forecasts blank on "
              "boundary evidence); max |h1 - conditional| %.3g (tol 1e-9); %d failed envelope/start",
              checked, blank, worst_start, failed) +
              first_failure};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "TTC reduction", 1.0, ttc_reduction},
      {2, "Appendix identity vs Monte Carlo", 30.0, appendix_identity},
      {3, "Closed-form forecast vs Monte Carlo", 60.0, closed_form_vs_mc},
      {4, "AR(1) dual-form identity", 1.0, dual_form},
      {5, "Factor round trip", 5.0, factor_round_trip},
      {6, "AR moment checks", 60.0, ar_moments},
      {7, "Cycle statistics", 60.0, cycle_statistics},
      {8, "Bayesian sharpening and consistency", 30.0, bayes_sharpening},
      {9, "Convergence of forecasts", 5.0, forecast_convergence},
      {10, "Figure replication (qualitative)", 120.0, figure_replication},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.time_limit_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s [%2d] %s: %s; %.2f s (limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.time_limit_s, in_time ? "" : ", EXCEEDED");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
