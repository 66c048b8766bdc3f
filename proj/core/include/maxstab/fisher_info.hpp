#pragma once

#include <array>
#include <string>
#include <variant>

#include "maxstab/gev.hpp"

namespace maxstab {

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Vector3 = std::array<double, 3>;

/// Expected information in the (mu, sigma, xi) parametrization.
struct InfoMatrix {
  Matrix3 entries{};
  bool valid_for_xi = false;  // xi > -1/2

  [[nodiscard]] double operator()(int i, int j) const { return entries[i][j]; }
};

[[nodiscard]] double det3(const Matrix3& a);
[[nodiscard]] Matrix3 inverse3(const Matrix3& a);
[[nodiscard]] Matrix3 multiply3(const Matrix3& a, const Matrix3& b);
[[nodiscard]] Matrix3 transpose3(const Matrix3& a);
[[nodiscard]] double quadratic_form3(const Vector3& g, const Matrix3& a);

/// Per-observation information of GEV(0, 1, xi). Throws std::domain_error for
/// xi <= -1/2.
[[nodiscard]] InfoMatrix standard_info_K(double xi);

/// Information per observation for general parameters: D^-1 K D^-1, D = diag(sigma, sigma, 1).
[[nodiscard]] InfoMatrix info_for_params(const GevParams& p);

/// Jacobian d(mu_m, sigma_m, xi) / d(mu, sigma, xi) of the max-stability map.
/// Rows index the mapped parameters.
[[nodiscard]] Matrix3 max_stability_jacobian(const GevParams& p, double m);

/// Information about the original parameters carried by one maximum of m draws.
[[nodiscard]] InfoMatrix info_block_max(const GevParams& p, double m);

/// Overall asymptotic relative efficiency m^{-(1 + 2 xi / 3)}.
[[nodiscard]] double are_overall(double xi, double m);

struct TargetMu {};
struct TargetSigma {};
struct TargetXi {};
/// Quantile at level 1 - 1/T of the base distribution.
struct TargetReturnLevel {
  double period = 20.0;
};
using EfficiencyTarget = std::variant<TargetMu, TargetSigma, TargetXi, TargetReturnLevel>;

[[nodiscard]] std::string target_label(const EfficiencyTarget& t);

/// Gradient of r_T = mu + sigma * [(-log(1 - 1/T))^-xi - 1] / xi.
[[nodiscard]] Vector3 return_level_gradient(const GevParams& p, double period);

/// Ratio of asymptotic confidence interval lengths, full sample of m over the
/// sample maximum alone. Real m >= 1 is accepted.
[[nodiscard]] double ci_length_ratio(const EfficiencyTarget& target, double xi, double m);

}  // namespace maxstab
