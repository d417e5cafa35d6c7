#include "pitcast/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace pitcast::kernels {

Loadings Loadings::from_rho(double rho) noexcept {
  return {std::sqrt(rho), std::sqrt(1.0 - rho)};
}

double log_phi(double x) noexcept {
  if (x > 5.0) return std::log1p(-detail::phi(-x));
  if (x > -35.0) return std::log(detail::phi(x));
  // Mills-ratio asymptotic series, truncated after the x^-6 term (relative
  // error below 1e-10 for x <= -35).
  const double inv_x2 = 1.0 / (x * x);
  const double series = 1.0 - inv_x2 * (1.0 - 3.0 * inv_x2 * (1.0 - 5.0 * inv_x2));
  return -0.5 * x * x - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) +
         std::log(series);
}

namespace {

inline double pit_term(double barrier, double psi, Loadings l) noexcept {
  return detail::phi((barrier - psi * l.sqrt_rho) / l.sqrt_one_minus_rho);
}

inline double log_likelihood_at(double psi, std::uint64_t n, std::uint64_t k,
                                double barrier, Loadings l) noexcept {
  const double x = (barrier - psi * l.sqrt_rho) / l.sqrt_one_minus_rho;
  double ll = 0.0;
  if (k > 0) ll += static_cast<double>(k) * log_phi(x);
  if (n > k) ll += static_cast<double>(n - k) * log_phi(-x);
  return ll;
}

inline double forward_pit_at(double ttc, NormalMoments m, double rho) noexcept {
  if (m.mean == 0.0 && m.variance == 1.0) return ttc;
  const double barrier = detail::phi_inverse(ttc);
  return detail::phi((barrier - m.mean * std::sqrt(rho)) /
                     std::sqrt(1.0 + (m.variance - 1.0) * rho));
}

}  // namespace

namespace serial {

double expected_defaults(std::span<const double> barriers, double psi,
                         Loadings loadings) noexcept {
  // Same block order as the parallel version, so both agree bit for bit.
  double sum = 0.0;
  for (std::size_t begin = 0; begin < barriers.size(); begin += kReductionBlock) {
    const std::size_t end = std::min(begin + kReductionBlock, barriers.size());
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += pit_term(barriers[i], psi, loadings);
    sum += s;
  }
  return sum;
}

void default_log_likelihood(std::span<const double> psi_nodes, std::uint64_t n,
                            std::uint64_t defaults, double barrier, Loadings loadings,
                            std::span<double> out) noexcept {
  for (std::size_t i = 0; i < psi_nodes.size(); ++i)
    out[i] = log_likelihood_at(psi_nodes[i], n, defaults, barrier, loadings);
}

void forward_pit_matrix(std::span<const double> ttc_pds, std::size_t horizons,
                        std::span<const NormalMoments> moments, double rho,
                        std::span<double> out) noexcept {
  for (std::size_t idx = 0; idx < ttc_pds.size(); ++idx)
    out[idx] = forward_pit_at(ttc_pds[idx], moments[idx % horizons], rho);
}

}  // namespace serial

namespace parallel {

double expected_defaults(std::span<const double> barriers, double psi,
                         Loadings loadings) {
  const auto size = static_cast<std::ptrdiff_t>(barriers.size());
  const std::ptrdiff_t block = static_cast<std::ptrdiff_t>(kReductionBlock);
  const std::ptrdiff_t blocks = (size + block - 1) / block;
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::ptrdiff_t begin = b * block;
    const std::ptrdiff_t end = std::min(begin + block, size);
    double s = 0.0;
    for (std::ptrdiff_t i = begin; i < end; ++i)
      s += pit_term(barriers[static_cast<std::size_t>(i)], psi, loadings);
    partial[static_cast<std::size_t>(b)] = s;
  }

  double sum = 0.0;
  for (double s : partial) sum += s;
  return sum;
}

void default_log_likelihood(std::span<const double> psi_nodes, std::uint64_t n,
                            std::uint64_t defaults, double barrier, Loadings loadings,
                            std::span<double> out) noexcept {
  const auto size = static_cast<std::ptrdiff_t>(psi_nodes.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < size; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = log_likelihood_at(psi_nodes[u], n, defaults, barrier, loadings);
  }
}

void forward_pit_matrix(std::span<const double> ttc_pds, std::size_t horizons,
                        std::span<const NormalMoments> moments, double rho,
                        std::span<double> out) noexcept {
  const auto size = static_cast<std::ptrdiff_t>(ttc_pds.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < size; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = forward_pit_at(ttc_pds[u], moments[u % horizons], rho);
  }
}

}  // namespace parallel

}  // namespace pitcast::kernels
