#include "pitcast/simulation.hpp"

#include <cmath>
#include <sstream>

#include "pitcast/error.hpp"

namespace pitcast {

double Rng::normal() noexcept { return detail::phi_inverse(uniform()); }

std::uint64_t Rng::binomial(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("binomial probability outside [0, 1]");
  const double u = uniform();
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;

  const double nd = static_cast<double>(n);
  const double odds = p / (1.0 - p);
  auto mode = static_cast<std::uint64_t>(std::floor((nd + 1.0) * p));
  if (mode > n) mode = n;
  const double mode_pmf = std::exp(binomial_log_pmf(n, mode, Probability(p)));

  // pmf(j - 1) = pmf(j) * j / ((n - j + 1) * odds). Collect the lower tail
  // until the terms stop contributing.
  std::vector<double> lower;  // lower[i] = pmf(mode - 1 - i)
  double lower_mass = 0.0;
  {
    double term = mode_pmf;
    for (std::uint64_t j = mode; j > 0; --j) {
      term *= static_cast<double>(j) / (static_cast<double>(n - j + 1) * odds);
      if (term == 0.0 || term < lower_mass * 1e-17) break;
      lower.push_back(term);
      lower_mass += term;
    }
  }

  if (u < lower_mass) {
    // Smallest j < mode with F(j) > u.
    double cdf = lower_mass;  // F(mode - 1)
    std::uint64_t j = mode - 1;
    for (std::size_t i = 0; i + 1 < lower.size(); ++i) {
      if (cdf - lower[i] <= u) break;
      cdf -= lower[i];
      --j;
    }
    return j;
  }

  double cdf = lower_mass + mode_pmf;
  double term = mode_pmf;
  std::uint64_t j = mode;
  while (cdf <= u && j < n) {
    ++j;
    term *= static_cast<double>(n - j + 1) / static_cast<double>(j) * odds;
    if (term == 0.0) break;
    cdf += term;
  }
  return j;
}

std::vector<double> simulate_ar1_path(const Ar1Params& p, std::size_t length,
                                      std::uint64_t seed) {
  if (length < 1) throw InvalidArgument("AR(1) path length must be >= 1");
  Rng rng(seed);
  const double sd = std::sqrt(p.innovation_variance());
  std::vector<double> path(length);
  path[0] = rng.normal();
  for (std::size_t t = 1; t < length; ++t) path[t] = p.a1() * path[t - 1] + sd * rng.normal();
  return path;
}

std::vector<double> simulate_ar2_path(const Ar2Params& p, std::size_t length,
                                      std::uint64_t seed) {
  if (length < 2) throw InvalidArgument("AR(2) path length must be >= 2");
  Rng rng(seed);
  const double sd = std::sqrt(p.innovation_variance());
  double prev = 0.0, cur = 0.0;
  for (std::size_t t = 0; t < kAr2BurnIn; ++t) {
    const double next = p.a1() * cur + p.a2() * prev + sd * rng.normal();
    prev = cur;
    cur = next;
  }
  std::vector<double> path(length);
  for (std::size_t t = 0; t < length; ++t) {
    const double next = p.a1() * cur + p.a2() * prev + sd * rng.normal();
    prev = cur;
    cur = next;
    path[t] = cur;
  }
  return path;
}

std::vector<double> SimulatedHistory::default_rates() const {
  std::vector<double> rates(default_counts.size());
  for (std::size_t t = 0; t < rates.size(); ++t)
    rates[t] = static_cast<double>(default_counts[t]) / static_cast<double>(n);
  return rates;
}

SimulatedHistory simulate_default_history(std::span<const double> psi_path,
                                          Probability pd_ttc, RSquared rho, std::uint64_t n,
                                          std::uint64_t seed, DefaultMethod method) {
  if (n < 1) throw InvalidArgument("portfolio size must be >= 1");
  if (psi_path.empty()) throw InvalidArgument("factor path is empty");
  const double barrier = barrier_from_ttc(pd_ttc).value;
  const double sqrt_rho = std::sqrt(rho.value());
  const double sqrt_idio = std::sqrt(1.0 - rho.value());

  SimulatedHistory history;
  history.psi_path.assign(psi_path.begin(), psi_path.end());
  history.n = n;
  history.seed = seed;
  history.pit_pds.reserve(psi_path.size());
  history.default_counts.reserve(psi_path.size());

  Rng rng(seed);
  for (double psi : psi_path) {
    const double pit = pit_conditional(pd_ttc, rho, psi).value();
    history.pit_pds.push_back(pit);
    std::uint64_t defaults = 0;
    if (method == DefaultMethod::kBinomial) {
      defaults = rng.binomial(n, pit);
    } else {
      const double systematic = psi * sqrt_rho;
      for (std::uint64_t i = 0; i < n; ++i)
        if (systematic + rng.normal() * sqrt_idio < barrier) ++defaults;
    }
    history.default_counts.push_back(defaults);
  }
  return history;
}

double double_crossing_period(std::span<const double> psi_path) {
  if (psi_path.size() < 10) throw InvalidArgument("crossing statistics need at least 10 years");
  std::size_t first = 0, last = 0, count = 0;
  for (std::size_t t = 1; t < psi_path.size(); ++t) {
    if (psi_path[t - 1] < 0.0 && psi_path[t] >= 0.0) {
      if (count == 0) first = t;
      last = t;
      ++count;
    }
  }
  if (count < 2) {
    std::ostringstream msg;
    msg << "only " << count << " upward zero crossing(s); need at least 2";
    throw DomainError(msg.str());
  }
  return static_cast<double>(last - first) / static_cast<double>(count - 1);
}

}  // namespace pitcast
