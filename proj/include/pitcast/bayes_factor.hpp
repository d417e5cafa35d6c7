#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pitcast/ar_dynamics.hpp"
#include "pitcast/factor_model.hpp"

namespace pitcast {

/// Normal prior on the current factor. The default is the unconditional
/// N(0, 1); an expert view of a mild downturn would be e.g. N(-1, 1).
struct PriorSpec {
  double mean = 0.0;
  double variance = 1.0;

  void validate() const;
};

/// Default count out of n obligors sharing one TTC PD.
struct DefaultEvidence {
  std::uint64_t n = 1;
  std::uint64_t n_defaults = 0;
  double pd_ttc = 0.5;
  double rho = 0.0;

  void validate() const;
};

/// Uniform quadrature grid over the factor.
struct GridSpec {
  double lo = -8.0;
  double hi = 8.0;
  std::size_t nodes = 4001;

  static constexpr std::size_t kMinNodes = 1001;
  static constexpr double kCoverageSds = 8.0;
  static constexpr double kNodesPerSd = 4.0;  // minimum resolution of the prior

  /// The default [-8, 8] x 4001 grid, widened if needed so that it covers
  /// prior.mean +- 8 prior standard deviations. A prior too narrow for the
  /// default spacing gets the grid prior.mean +- 8 sd instead.
  [[nodiscard]] static GridSpec covering(const PriorSpec& prior);
};

/// Discretised posterior density of the current factor.
struct PosteriorGrid {
  std::vector<double> psi_nodes;
  std::vector<double> densities;  // integrate to 1 under the trapezoid rule
  double mean = 0.0;
  double variance = 0.0;
  double mode = 0.0;              // node with the largest density
};

struct PosteriorOptions {
  bool parallel = true;
};

/// Bayes rule on the grid: prior density times the binomial likelihood of
/// the observed default count at pit_conditional(pd_ttc, rho, psi),
/// normalised by trapezoidal quadrature. The binomial coefficient cancels
/// and is omitted; the log-likelihood is shifted by its maximum before
/// exponentiation.
[[nodiscard]] PosteriorGrid posterior(const DefaultEvidence& evidence,
                                      const PriorSpec& prior, const GridSpec& grid,
                                      const PosteriorOptions& options = {});

struct NormalApproximation {
  FactorDistribution factor;
  double max_density_gap;  // max |posterior - matched normal| over the nodes
};

/// Moment-matched normal approximation with a non-normality diagnostic.
[[nodiscard]] NormalApproximation posterior_normal_approx(const PosteriorGrid& grid);

/// Carries an uncertain current factor through AR(1):
/// mean a1^h m, variance 1 + (v - 1) a1^(2h).
[[nodiscard]] FactorDistribution propagate_ar1(FactorDistribution factor, const Ar1Params& p,
                                               int horizon);

/// forward_pit with the propagated factor distribution.
[[nodiscard]] Probability bayes_forward_pit(Probability pd_ttc, RSquared rho,
                                            FactorDistribution factor, const Ar1Params& p,
                                            int horizon);

/// Trapezoid integral of `values` over uniformly spaced `nodes`.
[[nodiscard]] double trapezoid(const std::vector<double>& nodes,
                               const std::vector<double>& values);

}  // namespace pitcast
