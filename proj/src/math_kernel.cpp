#include "pitcast/math_kernel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pitcast/error.hpp"

namespace pitcast {

const char* category_name(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::kValidation:
      return "validation";
    case ErrorCategory::kBoundaryEvidence:
      return "boundary-evidence";
    case ErrorCategory::kIo:
      return "io";
    case ErrorCategory::kInternal:
      return "internal";
  }
  return "internal";
}

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream msg;
    msg << "probability must lie in [0, 1], got " << value;
    throw InvalidArgument(msg.str());
  }
}

namespace detail {

double phi(double z) noexcept {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// Acklam's rational approximation (relative error ~1.15e-9), refined by one
// Halley step against erfc.
double phi_inverse(double p) noexcept {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  constexpr double p_high = 1.0 - p_low;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= p_high) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley refinement. In the upper tail work with the complement so the
  // residual is not swamped by cancellation against 1.
  // Phi(x) - p == (1 - p) - Phi(-x), and 1 - p is exact for p > 0.5.
  const double e = p > 0.5 ? (1.0 - p) - phi(-x) : phi(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace detail

Probability std_normal_cdf(double z) {
  if (!std::isfinite(z)) {
    throw InvalidArgument("std_normal_cdf: argument must be finite");
  }
  return Probability(detail::phi(z));
}

double std_normal_quantile(Probability p) {
  if (!p.is_interior()) {
    throw DomainError("std_normal_quantile: quantile of 0 or 1 is infinite");
  }
  return detail::phi_inverse(p.value());
}

Probability expected_normal_cdf(NormalMoments moments) {
  if (!std::isfinite(moments.mean) || !(moments.variance >= 0.0) ||
      !std::isfinite(moments.variance)) {
    throw InvalidArgument("expected_normal_cdf: need finite mean and variance >= 0");
  }
  return std_normal_cdf(moments.mean / std::sqrt(1.0 + moments.variance));
}

double binomial_log_pmf(std::uint64_t n, std::uint64_t k, Probability p) {
  if (k > n) {
    throw InvalidArgument("binomial_log_pmf: k exceeds n");
  }
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double log_choose =
      std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
  const double pv = p.value();
  double result = log_choose;
  if (k > 0) result += kd * std::log(pv);
  if (n > k) result += (nd - kd) * std::log1p(-pv);
  return result;
}

double std_normal_pdf(double z) noexcept {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace pitcast
