#pragma once

#include <limits>
#include <stdexcept>

#include "maxstab/random.hpp"

namespace maxstab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shape values with |xi| below this use the Gumbel (xi = 0) branch.
inline constexpr double kXiTolerance = 1e-8;

/// Location, scale and shape of a generalized extreme value distribution.
struct GevParams {
  double mu = 0.0;
  double sigma = 1.0;
  double xi = 0.0;

  [[nodiscard]] bool valid() const noexcept { return sigma > 0.0 && std::isfinite(mu) && std::isfinite(xi); }
  friend bool operator==(const GevParams&, const GevParams&) = default;
};

/// Effective block multiplier for the max-stability map; may be fractional (m * theta).
struct StabilityScale {
  double m_eff = 1.0;
};

// Support membership: 1 + xi (x - mu) / sigma > 0.
[[nodiscard]] bool in_support(double x, const GevParams& p) noexcept;

// Lower and upper support endpoints (possibly infinite).
[[nodiscard]] double support_lower(const GevParams& p) noexcept;
[[nodiscard]] double support_upper(const GevParams& p) noexcept;

// -log F(x), the exponent of the GEV distribution function. Zero above the
// upper endpoint, +inf below the lower endpoint.
[[nodiscard]] double gev_neglogcdf(double x, const GevParams& p) noexcept;

[[nodiscard]] double gev_cdf(double x, const GevParams& p) noexcept;
[[nodiscard]] double gev_logcdf(double x, const GevParams& p) noexcept;
// log(1 - F(x)), accurate in the upper tail.
[[nodiscard]] double gev_logsf(double x, const GevParams& p) noexcept;
[[nodiscard]] double gev_pdf(double x, const GevParams& p) noexcept;
[[nodiscard]] double gev_logpdf(double x, const GevParams& p) noexcept;

// log{F(b) - F(a)} for a < b, computed without subtracting nearly equal
// probabilities in either tail. -inf when the interval has no mass.
[[nodiscard]] double gev_log_interval(double a, double b, const GevParams& p) noexcept;

/// Inverse distribution function; throws std::domain_error for q outside (0, 1).
[[nodiscard]] double gev_quantile(double q, const GevParams& p);

/// Quantile from the upper-tail probability s = 1 - q, accurate for tiny s.
[[nodiscard]] double gev_quantile_upper(double s, const GevParams& p);

/// (m^xi - 1) / xi, or log m at xi = 0; the location shift of max-stability.
[[nodiscard]] double stability_shift(double xi, double log_m) noexcept;

/// d/dxi of stability_shift at fixed log_m.
[[nodiscard]] double stability_shift_dxi(double xi, double log_m) noexcept;

/// Parameters of the maximum of m_eff iid draws: F(x; p)^m = F(x; result).
[[nodiscard]] GevParams max_stability_map(const GevParams& p, StabilityScale s);

/// Rescale block length by an extremal index theta in (0, 1].
[[nodiscard]] GevParams extremal_index_map(const GevParams& p, double theta);

[[nodiscard]] double gev_sample(const GevParams& p, Rng& rng);

/// Inverse-CDF draw from the GEV restricted to (lower, upper). Works in the
/// survival scale when the window sits in the upper tail.
[[nodiscard]] double truncated_gev_sample(const GevParams& p, double lower, double upper, Rng& rng);

/// F(x; p)^m, the uniform-scale pivot of a block maximum.
[[nodiscard]] double beta_m1_pivot(double x, const GevParams& p, int m);

}  // namespace maxstab
