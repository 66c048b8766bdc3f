#pragma once

#include <cmath>

#include "maxstab/gev.hpp"

namespace maxstab::detail {

// GEV evaluator with the per-parameter constants hoisted out of likelihood loops.
class GevEval {
 public:
  explicit GevEval(const GevParams& p)
      : mu_(p.mu), inv_sigma_(1.0 / p.sigma), log_sigma_(std::log(p.sigma)), xi_(p.xi),
        gumbel_(std::abs(p.xi) < kXiTolerance), upper_(support_upper(p)) {}

  // log(-log F(x)); +inf below the lower endpoint, -inf above the upper one.
  [[nodiscard]] double log_exponent(double x) const noexcept {
    const double z = (x - mu_) * inv_sigma_;
    if (gumbel_) return -z;
    const double a = xi_ * z;
    if (a <= -1.0) return xi_ > 0.0 ? kInf : -kInf;
    return -std::log1p(a) / xi_;
  }

  [[nodiscard]] double logpdf(double x) const noexcept {
    const double z = (x - mu_) * inv_sigma_;
    double logt;
    if (gumbel_) {
      logt = -z;
    } else {
      const double a = xi_ * z;
      if (a <= -1.0) return -kInf;
      logt = -std::log1p(a) / xi_;
    }
    return -log_sigma_ + (1.0 + xi_) * logt - std::exp(logt);
  }

  [[nodiscard]] double neglogcdf(double x) const noexcept {
    if (x == kInf) return 0.0;
    if (x == -kInf) return kInf;
    return std::exp(log_exponent(x));
  }

  [[nodiscard]] double logcdf(double x) const noexcept { return -neglogcdf(x); }

  [[nodiscard]] double logsf(double x) const noexcept {
    const double t = neglogcdf(x);
    if (t == 0.0) return -kInf;
    return std::log(-std::expm1(-t));
  }

  [[nodiscard]] double log_interval(double a, double b) const noexcept {
    if (!(a < b)) return -kInf;
    const double ta = neglogcdf(a);
    const double tb = neglogcdf(b);
    if (!(ta > tb)) return -kInf;
    if (ta == kInf) return -tb;
    return -tb + std::log(-std::expm1(-(ta - tb)));
  }

  [[nodiscard]] double upper_endpoint() const noexcept { return upper_; }

 private:
  double mu_;
  double inv_sigma_;
  double log_sigma_;
  double xi_;
  bool gumbel_;
  double upper_;
};

}  // namespace maxstab::detail
