#include "pitcast/ar_dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pitcast/error.hpp"

namespace pitcast {

Ar1Params validate_ar1(double a1) {
  if (!std::isfinite(a1)) throw ValidationError("AR(1): a1 must be finite");
  if (a1 < 0.0) throw ValidationError("AR(1): restriction a1 >= 0 violated");
  if (a1 >= 1.0) throw ValidationError("AR(1): restriction a1 < 1 violated");
  return Ar1Params(a1);
}

Ar2Params validate_ar2(double a1, double a2) {
  if (!std::isfinite(a1) || !std::isfinite(a2))
    throw ValidationError("AR(2): coefficients must be finite");
  std::vector<std::string> violated;
  if (!(a2 > -1.0)) violated.emplace_back("a2 > -1");
  if (!(a2 < 1.0)) violated.emplace_back("a2 < 1");
  if (!(a2 - a1 < 1.0)) violated.emplace_back("a2 - a1 < 1");
  if (!(a2 + a1 < 1.0)) violated.emplace_back("a2 + a1 < 1");
  if (!(a1 * a1 + 4.0 * a2 < 0.0)) violated.emplace_back("a1^2 + 4 a2 < 0");
  if (!violated.empty()) {
    std::ostringstream msg;
    msg << "AR(2): restriction" << (violated.size() > 1 ? "s " : " ");
    for (std::size_t i = 0; i < violated.size(); ++i) msg << (i ? ", " : "") << violated[i];
    msg << " violated";
    throw ValidationError(msg.str());
  }
  const double sigma2 = (1.0 + a2) * ((1.0 - a2) * (1.0 - a2) - a1 * a1) / (1.0 - a2);
  return Ar2Params(a1, a2, sigma2);
}

FactorDistribution ar1_conditional_moments(const Ar1Params& p, double psi0, int horizon) {
  if (horizon < 0) throw InvalidArgument("horizon must be >= 0");
  if (!std::isfinite(psi0)) throw InvalidArgument("psi0 must be finite");
  const double decay = std::pow(p.a1(), horizon);
  return {psi0 * decay, 1.0 - decay * decay};
}

FactorDistribution ar2_conditional_moments(const Ar2Params& p, double psi0,
                                           double psi_minus1, int horizon) {
  if (horizon < 1) throw InvalidArgument("AR(2) horizon must be >= 1");
  if (!std::isfinite(psi0) || !std::isfinite(psi_minus1))
    throw InvalidArgument("AR(2) seeds must be finite");
  const double a1 = p.a1();
  const double a2 = p.a2();

  double mean_prev = psi_minus1;
  double mean = psi0;
  double w_prev = 0.0;  // w_0
  double w = 1.0;       // w_1
  double weight_sum = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    const double next_mean = a1 * mean + a2 * mean_prev;
    mean_prev = mean;
    mean = next_mean;

    weight_sum += w * w;
    const double next_w = a1 * w + a2 * w_prev;
    w_prev = w;
    w = next_w;
  }
  return {mean, p.innovation_variance() * weight_sum};
}

Probability forward_pit_ar1(Probability pd_ttc, RSquared rho, const Ar1Params& p,
                            double psi0, int horizon) {
  if (horizon < 1) throw InvalidArgument("forecast horizon must be >= 1");
  return forward_pit(pd_ttc, rho, ar1_conditional_moments(p, psi0, horizon));
}

Probability forward_pit_ar1_decayed_rho(Probability pd_ttc, RSquared rho,
                                        const Ar1Params& p, double psi0, int horizon) {
  if (horizon < 1) throw InvalidArgument("forecast horizon must be >= 1");
  const double decay2 = std::pow(p.a1(), 2 * horizon);
  return pit_conditional(pd_ttc, RSquared(rho.value() * decay2), psi0);
}

Probability forward_pit_ar2(Probability pd_ttc, RSquared rho, const Ar2Params& p,
                            double psi0, double psi_minus1, int horizon) {
  return forward_pit(pd_ttc, rho, ar2_conditional_moments(p, psi0, psi_minus1, horizon));
}

double ar2_spectral_period(const Ar2Params& p) {
  const double arg = p.a1() * (p.a2() - 1.0) / (4.0 * p.a2());
  if (!(arg >= -1.0 && arg <= 1.0)) {
    std::ostringstream msg;
    msg << "AR(2) spectral peak undefined for a1 = " << p.a1() << ", a2 = " << p.a2()
        << ": arccos argument " << arg << " outside [-1, 1]";
    throw DomainError(msg.str());
  }
  return 2.0 * std::numbers::pi / std::acos(arg);
}

}  // namespace pitcast
