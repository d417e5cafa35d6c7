#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pitcast/ar_dynamics.hpp"
#include "pitcast/factor_model.hpp"

namespace pitcast {

/// Seeded 64-bit generator with inversion-based variates only, so a seed
/// reproduces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  /// Standard normal by inverting the CDF.
  double normal() noexcept;
  /// Binomial(n, p) by CDF inversion around the mode.
  std::uint64_t binomial(std::uint64_t n, double p);

 private:
  std::mt19937_64 engine_;
};

inline constexpr std::size_t kAr2BurnIn = 1000;

/// psi_0 ~ N(0,1), psi_t = a1 psi_{t-1} + eps_t, eps_t ~ N(0, 1 - a1^2).
[[nodiscard]] std::vector<double> simulate_ar1_path(const Ar1Params& p, std::size_t length,
                                                    std::uint64_t seed);

/// AR(2) recursion started at (0, 0); the first kAr2BurnIn steps are dropped.
[[nodiscard]] std::vector<double> simulate_ar2_path(const Ar2Params& p, std::size_t length,
                                                    std::uint64_t seed);

enum class DefaultMethod {
  kBinomial,     // defaults ~ Binomial(n, pit)
  kAssetReturn,  // count obligors with psi sqrt(rho) + eps sqrt(1 - rho) < barrier
};

struct SimulatedHistory {
  std::vector<double> psi_path;
  std::vector<double> pit_pds;
  std::vector<std::uint64_t> default_counts;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;

  [[nodiscard]] std::vector<double> default_rates() const;
};

[[nodiscard]] SimulatedHistory simulate_default_history(std::span<const double> psi_path,
                                                        Probability pd_ttc, RSquared rho,
                                                        std::uint64_t n, std::uint64_t seed,
                                                        DefaultMethod method);

/// Mean gap in years between consecutive upward zero crossings
/// (psi_{t-1} < 0 <= psi_t).
[[nodiscard]] double double_crossing_period(std::span<const double> psi_path);

}  // namespace pitcast
