#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pitcast/math_kernel.hpp"

namespace pitcast {

/// Weight of the systematic factor in the asset return, rho in [0, 1).
class RSquared {
 public:
  explicit RSquared(double rho);

  [[nodiscard]] constexpr double value() const noexcept { return rho_; }

 private:
  double rho_;
};

/// Asset-return threshold below which an obligor defaults.
struct DefaultBarrier {
  double value;
};

/// Normal belief about the systematic factor at some period. The
/// unconditional distribution is N(0, 1).
struct FactorDistribution {
  double mean = 0.0;
  double variance = 1.0;

  /// Throws InvalidArgument unless mean is finite and variance is finite and >= 0.
  void validate() const;
};

/// Obligor TTC PDs plus the number of defaults observed in one period.
struct PortfolioSnapshot {
  std::vector<std::string> obligor_ids;  // optional; empty or one per obligor
  std::vector<double> ttc_pds;
  std::size_t defaults = 0;

  [[nodiscard]] std::size_t size() const noexcept { return ttc_pds.size(); }

  /// Checks ids, each TTC PD in (0,1) and defaults <= size().
  void validate() const;
};

[[nodiscard]] DefaultBarrier barrier_from_ttc(Probability pd_ttc);

/// PIT PD conditional on a known factor realisation psi.
[[nodiscard]] Probability pit_conditional(Probability pd_ttc, RSquared rho, double psi);

/// Factor value at which `pit_conditional(pd_ttc, rho, psi) == pd_pit`.
/// Requires rho > 0.
[[nodiscard]] double factor_from_pit(Probability pd_ttc, Probability pd_pit, RSquared rho);

/// Expected PIT PD when the factor is N(factor.mean, factor.variance):
///
///   Phi((Phi^-1(pd_ttc) - mean*sqrt(rho)) / sqrt(1 - rho + variance*rho))
///
/// Reduces to pd_ttc for N(0,1) and to pit_conditional for a point mass.
[[nodiscard]] Probability forward_pit(Probability pd_ttc, RSquared rho,
                                      FactorDistribution factor);

struct EstimateOptions {
  double bracket = 8.0;           // initial search interval [-bracket, bracket]
  double expanded_bracket = 12.0; // used once if the first bracket has no sign change
  double residual_tolerance = 1e-8;
  bool parallel = true;
};

/// Solves sum_i pit_conditional(ttc_i, rho, psi) == defaults for psi by
/// bisection. The left side is strictly decreasing in psi, so the root is
/// unique. Zero or all defaults throw BoundaryEvidenceError.
[[nodiscard]] double estimate_factor(const PortfolioSnapshot& snapshot, RSquared rho,
                                     const EstimateOptions& options = {});

}  // namespace pitcast
