#include "maxstab/gev.hpp"

#include <cmath>

namespace maxstab {
namespace {

// log of -log F(x). Returns +inf below the lower endpoint and -inf above the
// upper endpoint so that exp() gives the right limits.
double log_exponent(double x, const GevParams& p) noexcept {
  const double z = (x - p.mu) / p.sigma;
  if (std::abs(p.xi) < kXiTolerance) {
    // First-order term keeps the branch the exact inverse of stability_shift.
    return -z + 0.5 * p.xi * z * z;
  }
  const double a = p.xi * z;
  if (a <= -1.0) {
    return p.xi > 0.0 ? kInf : -kInf;
  }
  return -std::log1p(a) / p.xi;
}

bool strictly_inside(double x, const GevParams& p) noexcept {
  if (std::abs(p.xi) < kXiTolerance) {
    return std::isfinite(x);
  }
  return 1.0 + p.xi * (x - p.mu) / p.sigma > 0.0;
}

}  // namespace

bool in_support(double x, const GevParams& p) noexcept { return strictly_inside(x, p); }

double support_lower(const GevParams& p) noexcept {
  if (p.xi >= kXiTolerance) return p.mu - p.sigma / p.xi;
  return -kInf;
}

double support_upper(const GevParams& p) noexcept {
  if (p.xi <= -kXiTolerance) return p.mu - p.sigma / p.xi;
  return kInf;
}

double gev_neglogcdf(double x, const GevParams& p) noexcept {
  if (x == kInf) return 0.0;
  if (x == -kInf) return kInf;
  return std::exp(log_exponent(x, p));
}

double gev_cdf(double x, const GevParams& p) noexcept { return std::exp(-gev_neglogcdf(x, p)); }

double gev_logcdf(double x, const GevParams& p) noexcept { return -gev_neglogcdf(x, p); }

double gev_logsf(double x, const GevParams& p) noexcept {
  const double t = gev_neglogcdf(x, p);
  if (t == 0.0) return -kInf;
  return std::log(-std::expm1(-t));
}

double gev_logpdf(double x, const GevParams& p) noexcept {
  if (!strictly_inside(x, p)) return -kInf;
  const double logt = log_exponent(x, p);
  const double t = std::exp(logt);
  if (!std::isfinite(logt)) return -kInf;
  return -std::log(p.sigma) + (1.0 + p.xi) * logt - t;
}

double gev_pdf(double x, const GevParams& p) noexcept { return std::exp(gev_logpdf(x, p)); }

double gev_log_interval(double a, double b, const GevParams& p) noexcept {
  if (!(a < b)) return -kInf;
  const double ta = gev_neglogcdf(a, p);
  const double tb = gev_neglogcdf(b, p);
  if (!(ta > tb)) return -kInf;
  if (ta == kInf) return -tb;
  return -tb + std::log(-std::expm1(-(ta - tb)));
}

double stability_shift(double xi, double log_m) noexcept {
  if (std::abs(xi) < kXiTolerance) {
    return log_m + 0.5 * xi * log_m * log_m;
  }
  return std::expm1(xi * log_m) / xi;
}

double stability_shift_dxi(double xi, double log_m) noexcept {
  const double u = xi * log_m;
  if (std::abs(u) < 0.5) {
    // sum_{k>=2} (k-1)/k! u^{k-2}
    double term = 0.5;  // (k-1)/k! at k = 2
    double sum = 0.0;
    double upow = 1.0;
    double fact = 2.0;
    for (int k = 2; k < 30; ++k) {
      term = static_cast<double>(k - 1) / fact;
      sum += term * upow;
      upow *= u;
      fact *= static_cast<double>(k + 1);
    }
    return log_m * log_m * sum;
  }
  return (u * std::exp(u) - std::expm1(u)) / (xi * xi);
}

double gev_quantile(double q, const GevParams& p) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("gev_quantile: probability must lie in (0, 1)");
  }
  const double y = -std::log(q);
  return p.mu + p.sigma * stability_shift(p.xi, -std::log(y));
}

double gev_quantile_upper(double s, const GevParams& p) {
  if (!(s > 0.0 && s < 1.0)) {
    throw std::domain_error("gev_quantile_upper: tail probability must lie in (0, 1)");
  }
  const double y = -std::log1p(-s);
  return p.mu + p.sigma * stability_shift(p.xi, -std::log(y));
}

GevParams max_stability_map(const GevParams& p, StabilityScale s) {
  if (!(s.m_eff > 0.0)) {
    throw std::domain_error("max_stability_map: block multiplier must be positive");
  }
  if (s.m_eff == 1.0) return p;
  const double log_m = std::log(s.m_eff);
  return {p.mu + p.sigma * stability_shift(p.xi, log_m), p.sigma * std::exp(p.xi * log_m), p.xi};
}

GevParams extremal_index_map(const GevParams& p, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::domain_error("extremal_index_map: theta must lie in (0, 1]");
  }
  return max_stability_map(p, {theta});
}

double gev_sample(const GevParams& p, Rng& rng) { return gev_quantile(uniform01(rng), p); }

double truncated_gev_sample(const GevParams& p, double lower, double upper, Rng& rng) {
  if (!(lower < upper)) {
    throw std::domain_error("truncated_gev_sample: lower bound must be below upper bound");
  }
  const double t_lo = gev_neglogcdf(lower, p);
  const double t_hi = gev_neglogcdf(upper, p);
  if (!(t_lo > t_hi)) {
    throw std::domain_error("truncated_gev_sample: truncation window carries no probability");
  }
  const double v = uniform01(rng);
  double x;
  if (t_lo < std::log(2.0)) {
    // Window lies in the upper half: interpolate survival probabilities.
    const double s_lo = -std::expm1(-t_lo);
    const double s_hi = -std::expm1(-t_hi);
    x = gev_quantile_upper(s_hi + v * (s_lo - s_hi), p);
  } else {
    const double f_lo = std::exp(-t_lo);
    const double f_hi = std::exp(-t_hi);
    x = gev_quantile(f_lo + v * (f_hi - f_lo), p);
  }
  if (!(x > lower)) x = std::nextafter(lower, upper);
  if (!(x < upper)) x = std::nextafter(upper, lower);
  return x;
}

double beta_m1_pivot(double x, const GevParams& p, int m) {
  if (m < 1) throw std::domain_error("beta_m1_pivot: m must be at least 1");
  return std::exp(-static_cast<double>(m) * gev_neglogcdf(x, p));
}

}  // namespace maxstab
