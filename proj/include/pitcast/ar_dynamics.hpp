#pragma once

#include "pitcast/factor_model.hpp"

namespace pitcast {

/// AR(1) factor psi_t = a1 * psi_{t-1} + eps_t with zero intercept and
/// innovation variance 1 - a1^2, so the stationary distribution is N(0, 1).
class Ar1Params {
 public:
  [[nodiscard]] double a1() const noexcept { return a1_; }
  [[nodiscard]] double innovation_variance() const noexcept { return 1.0 - a1_ * a1_; }

 private:
  friend Ar1Params validate_ar1(double a1);
  explicit Ar1Params(double a1) : a1_(a1) {}
  double a1_;
};

/// AR(2) factor psi_t = a1 psi_{t-1} + a2 psi_{t-2} + eps_t with zero intercept,
/// complex characteristic roots, and the innovation variance that makes the
/// stationary variance one:
///
///   sigma^2 = (1 + a2) ((1 - a2)^2 - a1^2) / (1 - a2)
class Ar2Params {
 public:
  [[nodiscard]] double a1() const noexcept { return a1_; }
  [[nodiscard]] double a2() const noexcept { return a2_; }
  [[nodiscard]] double innovation_variance() const noexcept { return sigma2_; }

 private:
  friend Ar2Params validate_ar2(double a1, double a2);
  Ar2Params(double a1, double a2, double sigma2) : a1_(a1), a2_(a2), sigma2_(sigma2) {}
  double a1_;
  double a2_;
  double sigma2_;
};

/// Accepts 0 <= a1 < 1. Throws ValidationError naming the failed restriction.
[[nodiscard]] Ar1Params validate_ar1(double a1);

/// Accepts the stationarity triangle (-1 < a2 < 1, a2 - a1 < 1, a2 + a1 < 1)
/// together with the complex-root condition a1^2 + 4 a2 < 0. The error
/// message lists every violated restriction.
[[nodiscard]] Ar2Params validate_ar2(double a1, double a2);

/// Distribution of psi_{T0 + horizon} given psi_{T0} = psi0.
/// mean = psi0 a1^h, variance = 1 - a1^(2h).
[[nodiscard]] FactorDistribution ar1_conditional_moments(const Ar1Params& p, double psi0,
                                                         int horizon);

/// Distribution of psi_{T0 + horizon} given psi_{T0} = psi0 and
/// psi_{T0 - 1} = psi_minus1, via the mean recursion and the MA weight sum
/// sigma^2 * sum_{t<=h} w_t^2 (w_1 = 1, w_2 = a1, w_t = a1 w_{t-1} + a2 w_{t-2}).
[[nodiscard]] FactorDistribution ar2_conditional_moments(const Ar2Params& p, double psi0,
                                                         double psi_minus1, int horizon);

/// Forward PIT PD under AR(1), via forward_pit with the AR(1) moments.
[[nodiscard]] Probability forward_pit_ar1(Probability pd_ttc, RSquared rho,
                                          const Ar1Params& p, double psi0, int horizon);

/// Same quantity in its decayed-rho form: pit_conditional with rho * a1^(2h).
[[nodiscard]] Probability forward_pit_ar1_decayed_rho(Probability pd_ttc, RSquared rho,
                                                      const Ar1Params& p, double psi0,
                                                      int horizon);

[[nodiscard]] Probability forward_pit_ar2(Probability pd_ttc, RSquared rho,
                                          const Ar2Params& p, double psi0,
                                          double psi_minus1, int horizon);

/// Period in years of the AR(2) spectral peak, 2*pi / arccos(a1 (a2 - 1) / (4 a2)).
///
/// The damped pseudo-period 2*pi / arccos(a1 / (2 sqrt(-a2))) is a different
/// quantity (about 9.93 years at a1 = 1.3, a2 = -0.65, against 10.46 here).
[[nodiscard]] double ar2_spectral_period(const Ar2Params& p);

}  // namespace pitcast
