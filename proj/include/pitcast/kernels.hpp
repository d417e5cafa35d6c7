#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel`. The
// two return bit-identical results for any thread count: pointwise kernels
// trivially, reductions because both sum fixed-size blocks in block order.

#include <cstddef>
#include <cstdint>
#include <span>

#include "pitcast/math_kernel.hpp"

namespace pitcast::kernels {

/// Block length of the deterministic parallel reduction.
inline constexpr std::size_t kReductionBlock = 1024;

/// One-factor loadings precomputed from rho.
struct Loadings {
  double sqrt_rho;
  double sqrt_one_minus_rho;

  static Loadings from_rho(double rho) noexcept;
};

/// log Phi(x), finite far into the lower tail.
[[nodiscard]] double log_phi(double x) noexcept;

namespace serial {

/// Sum over obligors of Phi((barrier_i - psi*sqrt(rho)) / sqrt(1-rho)).
[[nodiscard]] double expected_defaults(std::span<const double> barriers, double psi,
                                       Loadings loadings) noexcept;

/// Binomial log-likelihood (without the binomial coefficient) of observing
/// `defaults` out of `n` at each factor node.
void default_log_likelihood(std::span<const double> psi_nodes, std::uint64_t n,
                            std::uint64_t defaults, double barrier, Loadings loadings,
                            std::span<double> out) noexcept;

/// Forward PIT PDs for an obligor x horizon matrix (row-major).
/// `ttc_pds[i * horizons + h]` is obligor i's TTC PD at horizon h + 1 and
/// `moments[h]` the factor distribution there.
void forward_pit_matrix(std::span<const double> ttc_pds, std::size_t horizons,
                        std::span<const NormalMoments> moments, double rho,
                        std::span<double> out) noexcept;

}  // namespace serial

namespace parallel {

[[nodiscard]] double expected_defaults(std::span<const double> barriers, double psi,
                                       Loadings loadings);

void default_log_likelihood(std::span<const double> psi_nodes, std::uint64_t n,
                            std::uint64_t defaults, double barrier, Loadings loadings,
                            std::span<double> out) noexcept;

void forward_pit_matrix(std::span<const double> ttc_pds, std::size_t horizons,
                        std::span<const NormalMoments> moments, double rho,
                        std::span<double> out) noexcept;

}  // namespace parallel

}  // namespace pitcast::kernels
