#include "pitcast/bayes_factor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pitcast/error.hpp"
#include "pitcast/kernels.hpp"

namespace pitcast {

void PriorSpec::validate() const {
  if (!std::isfinite(mean)) throw InvalidArgument("prior mean must be finite");
  if (!(variance > 0.0) || !std::isfinite(variance))
    throw InvalidArgument("prior variance must be finite and > 0");
}

void DefaultEvidence::validate() const {
  if (n < 1) throw InvalidArgument("evidence needs at least one obligor");
  if (n_defaults > n) throw InvalidArgument("default count exceeds obligor count");
  if (!(pd_ttc > 0.0 && pd_ttc < 1.0)) throw DomainError("TTC PD must lie in (0, 1)");
  static_cast<void>(RSquared{rho});
}

namespace {

double spacing(const GridSpec& grid) {
  return (grid.hi - grid.lo) / static_cast<double>(grid.nodes - 1);
}

}  // namespace

GridSpec GridSpec::covering(const PriorSpec& prior) {
  prior.validate();
  const double half = kCoverageSds * std::sqrt(prior.variance);
  GridSpec grid;
  grid.lo = std::min(grid.lo, prior.mean - half);
  grid.hi = std::max(grid.hi, prior.mean + half);
  if (spacing(grid) > std::sqrt(prior.variance) / kNodesPerSd) {
    grid.lo = prior.mean - half;
    grid.hi = prior.mean + half;
  }
  return grid;
}

double trapezoid(const std::vector<double>& nodes, const std::vector<double>& values) {
  if (nodes.size() < 2) return 0.0;
  const double h = (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) interior += values[i];
  return h * (0.5 * (values.front() + values.back()) + interior);
}

namespace {

std::vector<double> uniform_nodes(const GridSpec& grid) {
  std::vector<double> nodes(grid.nodes);
  const double h = (grid.hi - grid.lo) / static_cast<double>(grid.nodes - 1);
  for (std::size_t i = 0; i < grid.nodes; ++i) nodes[i] = grid.lo + h * static_cast<double>(i);
  nodes.back() = grid.hi;
  return nodes;
}

void summarise(PosteriorGrid& post) {
  const auto& x = post.psi_nodes;
  const auto& f = post.densities;
  std::vector<double> moment(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) moment[i] = x[i] * f[i];
  post.mean = trapezoid(x, moment);
  for (std::size_t i = 0; i < x.size(); ++i) moment[i] = (x[i] - post.mean) * (x[i] - post.mean) * f[i];
  post.variance = trapezoid(x, moment);
  const auto peak = std::max_element(f.begin(), f.end());
  post.mode = x[static_cast<std::size_t>(peak - f.begin())];
}

}  // namespace

PosteriorGrid posterior(const DefaultEvidence& evidence, const PriorSpec& prior,
                        const GridSpec& grid, const PosteriorOptions& options) {
  evidence.validate();
  prior.validate();
  if (!std::isfinite(grid.lo) || !std::isfinite(grid.hi) || !(grid.hi > grid.lo))
    throw InvalidArgument("posterior grid needs finite bounds with hi > lo");
  if (grid.nodes < GridSpec::kMinNodes) {
    std::ostringstream msg;
    msg << "posterior grid needs at least " << GridSpec::kMinNodes << " nodes, got "
        << grid.nodes;
    throw InvalidArgument(msg.str());
  }
  const double half = GridSpec::kCoverageSds * std::sqrt(prior.variance);
  if (grid.lo > prior.mean - half || grid.hi < prior.mean + half) {
    std::ostringstream msg;
    msg << "posterior grid [" << grid.lo << ", " << grid.hi
        << "] does not cover the prior mean +- 8 sd [" << prior.mean - half << ", "
        << prior.mean + half << "]";
    throw InvalidArgument(msg.str());
  }
  if (spacing(grid) > std::sqrt(prior.variance) / GridSpec::kNodesPerSd) {
    std::ostringstream msg;
    msg << "posterior grid spacing " << spacing(grid) << " is coarser than a quarter of the prior sd "
        << std::sqrt(prior.variance);
    throw InvalidArgument(msg.str());
  }

  PosteriorGrid post;
  post.psi_nodes = uniform_nodes(grid);
  const auto& x = post.psi_nodes;
  post.densities.resize(x.size());
  auto& log_post = post.densities;

  const double barrier = detail::phi_inverse(evidence.pd_ttc);
  const auto loadings = kernels::Loadings::from_rho(evidence.rho);
  if (options.parallel)
    kernels::parallel::default_log_likelihood(x, evidence.n, evidence.n_defaults, barrier,
                                              loadings, log_post);
  else
    kernels::serial::default_log_likelihood(x, evidence.n, evidence.n_defaults, barrier,
                                            loadings, log_post);

  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = x[i] - prior.mean;
    log_post[i] += -0.5 * z * z / prior.variance;
  }
  const double peak = *std::max_element(log_post.begin(), log_post.end());
  if (!std::isfinite(peak)) throw Error(ErrorCategory::kInternal, "posterior underflowed on the whole grid");
  for (double& v : log_post) v = std::exp(v - peak);

  const double mass = trapezoid(x, post.densities);
  for (double& v : post.densities) v /= mass;
  summarise(post);
  return post;
}

NormalApproximation posterior_normal_approx(const PosteriorGrid& grid) {
  if (grid.psi_nodes.size() < 2 || grid.psi_nodes.size() != grid.densities.size())
    throw InvalidArgument("posterior grid is malformed");
  if (!(grid.variance > 0.0)) throw InvalidArgument("posterior variance must be > 0");
  const double sd = std::sqrt(grid.variance);
  double gap = 0.0;
  for (std::size_t i = 0; i < grid.psi_nodes.size(); ++i) {
    const double normal = std_normal_pdf((grid.psi_nodes[i] - grid.mean) / sd) / sd;
    gap = std::max(gap, std::abs(normal - grid.densities[i]));
  }
  return {{grid.mean, grid.variance}, gap};
}

FactorDistribution propagate_ar1(FactorDistribution factor, const Ar1Params& p,
                                 int horizon) {
  if (horizon < 0) throw InvalidArgument("horizon must be >= 0");
  factor.validate();
  const double decay = std::pow(p.a1(), horizon);
  return {factor.mean * decay, 1.0 + (factor.variance - 1.0) * decay * decay};
}

Probability bayes_forward_pit(Probability pd_ttc, RSquared rho, FactorDistribution factor,
                              const Ar1Params& p, int horizon) {
  if (horizon < 1) throw InvalidArgument("forecast horizon must be >= 1");
  return forward_pit(pd_ttc, rho, propagate_ar1(factor, p, horizon));
}

}  // namespace pitcast
