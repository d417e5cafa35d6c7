#include "pitcast/factor_model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "pitcast/error.hpp"
#include "pitcast/kernels.hpp"

namespace pitcast {

RSquared::RSquared(double rho) : rho_(rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    std::ostringstream msg;
    msg << "rho must lie in [0, 1), got " << rho;
    throw InvalidArgument(msg.str());
  }
}

void FactorDistribution::validate() const {
  if (!std::isfinite(mean)) throw InvalidArgument("factor mean must be finite");
  if (!(variance >= 0.0) || !std::isfinite(variance))
    throw InvalidArgument("factor variance must be finite and >= 0");
}

void PortfolioSnapshot::validate() const {
  if (ttc_pds.empty()) throw InvalidArgument("portfolio snapshot is empty");
  if (!obligor_ids.empty()) {
    if (obligor_ids.size() != ttc_pds.size())
      throw InvalidArgument("obligor id count does not match TTC PD count");
    std::set<std::string> seen;
    for (const auto& id : obligor_ids)
      if (!seen.insert(id).second) throw InvalidArgument("duplicate obligor id '" + id + "'");
  }
  for (std::size_t i = 0; i < ttc_pds.size(); ++i) {
    if (!(ttc_pds[i] > 0.0 && ttc_pds[i] < 1.0)) {
      std::ostringstream msg;
      msg << "TTC PD of obligor " << i << " must lie in (0, 1), got " << ttc_pds[i];
      throw InvalidArgument(msg.str());
    }
  }
  if (defaults > ttc_pds.size())
    throw InvalidArgument("default count exceeds the number of obligors");
}

namespace {

void require_interior(Probability p, const char* what) {
  if (!p.is_interior()) {
    throw DomainError(std::string(what) + " must lie strictly inside (0, 1)");
  }
}

}  // namespace

DefaultBarrier barrier_from_ttc(Probability pd_ttc) {
  require_interior(pd_ttc, "TTC PD");
  return {std_normal_quantile(pd_ttc)};
}

Probability pit_conditional(Probability pd_ttc, RSquared rho, double psi) {
  require_interior(pd_ttc, "TTC PD");
  if (!std::isfinite(psi)) throw InvalidArgument("factor realisation must be finite");
  if (rho.value() == 0.0) return pd_ttc;
  const double barrier = std_normal_quantile(pd_ttc);
  return std_normal_cdf((barrier - psi * std::sqrt(rho.value())) /
                        std::sqrt(1.0 - rho.value()));
}

double factor_from_pit(Probability pd_ttc, Probability pd_pit, RSquared rho) {
  require_interior(pd_ttc, "TTC PD");
  require_interior(pd_pit, "PIT PD");
  if (rho.value() == 0.0)
    throw DomainError("factor is unidentifiable at rho = 0");
  return (std_normal_quantile(pd_ttc) -
          std_normal_quantile(pd_pit) * std::sqrt(1.0 - rho.value())) /
         std::sqrt(rho.value());
}

Probability forward_pit(Probability pd_ttc, RSquared rho, FactorDistribution factor) {
  require_interior(pd_ttc, "TTC PD");
  factor.validate();
  // The unconditional factor carries no information: the TTC PD itself.
  if (factor.mean == 0.0 && factor.variance == 1.0) return pd_ttc;
  const double r = rho.value();
  const double barrier = std_normal_quantile(pd_ttc);
  return std_normal_cdf((barrier - factor.mean * std::sqrt(r)) /
                        std::sqrt(1.0 + (factor.variance - 1.0) * r));
}

double estimate_factor(const PortfolioSnapshot& snapshot, RSquared rho,
                       const EstimateOptions& options) {
  snapshot.validate();
  const std::size_t n = snapshot.size();
  if (snapshot.defaults == 0 || snapshot.defaults == n) {
    std::ostringstream msg;
    msg << snapshot.defaults << " defaults out of " << n
        << " obligors leave the factor estimate without a finite root; "
           "use the Bayesian posterior instead";
    throw BoundaryEvidenceError(msg.str());
  }
  if (rho.value() == 0.0) throw DomainError("factor is unidentifiable at rho = 0");

  std::vector<double> barriers(n);
  for (std::size_t i = 0; i < n; ++i) barriers[i] = detail::phi_inverse(snapshot.ttc_pds[i]);

  const auto loadings = kernels::Loadings::from_rho(rho.value());
  const double target = static_cast<double>(snapshot.defaults);
  auto residual = [&](double psi) {
    const double expected = options.parallel
                                ? kernels::parallel::expected_defaults(barriers, psi, loadings)
                                : kernels::serial::expected_defaults(barriers, psi, loadings);
    return expected - target;
  };

  // residual is decreasing: positive on the left of the root.
  double lo = -options.bracket;
  double hi = options.bracket;
  if (!(residual(lo) > 0.0 && residual(hi) < 0.0)) {
    lo = -options.expanded_bracket;
    hi = options.expanded_bracket;
    if (!(residual(lo) > 0.0 && residual(hi) < 0.0)) {
      std::ostringstream msg;
      msg << "no sign change of the expected-default residual on [" << lo << ", " << hi
          << "]";
      throw DomainError(msg.str());
    }
  }

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double r = residual(mid);
    if (r == 0.0) return mid;
    (r > 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const double final_residual = residual(root);
  if (!(std::abs(final_residual) < options.residual_tolerance)) {
    std::ostringstream msg;
    msg << "factor estimate did not converge, residual " << final_residual << " defaults";
    throw Error(ErrorCategory::kInternal, msg.str());
  }
  return root;
}

}  // namespace pitcast
