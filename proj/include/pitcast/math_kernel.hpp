#pragma once

#include <cstdint>

namespace pitcast {

/// A probability in [0, 1]. Construction rejects anything else, including NaN.
class Probability {
 public:
  explicit Probability(double value);

  [[nodiscard]] constexpr double value() const noexcept { return value_; }

  /// True when the value is strictly inside (0, 1), i.e. has a finite quantile.
  [[nodiscard]] constexpr bool is_interior() const noexcept {
    return value_ > 0.0 && value_ < 1.0;
  }

 private:
  double value_;
};

/// Mean and variance of a normal variate. Variance may be zero (point mass).
struct NormalMoments {
  double mean = 0.0;
  double variance = 1.0;
};

/// Standard normal CDF. Absolute error below 1e-15 over the whole real line.
[[nodiscard]] Probability std_normal_cdf(double z);

/// Standard normal quantile, accurate to a few ulp after one Halley step.
/// Throws DomainError for p in {0, 1}.
[[nodiscard]] double std_normal_quantile(Probability p);

/// E[Phi(x)] for x ~ N(mean, variance), which equals
/// Phi(mean / sqrt(1 + variance)).
[[nodiscard]] Probability expected_normal_cdf(NormalMoments moments);

/// log of the binomial pmf, with 0 * log(0) taken as 0.
[[nodiscard]] double binomial_log_pmf(std::uint64_t n, std::uint64_t k, Probability p);

/// Standard normal density.
[[nodiscard]] double std_normal_pdf(double z) noexcept;

namespace detail {

// Unchecked versions for hot loops. Arguments must already be validated.
[[nodiscard]] double phi(double z) noexcept;
[[nodiscard]] double phi_inverse(double p) noexcept;

}  // namespace detail

}  // namespace pitcast
