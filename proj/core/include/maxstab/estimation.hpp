#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "maxstab/block_likelihood.hpp"
#include "maxstab/optimize.hpp"

namespace maxstab {

/// Shape values outside this open interval are treated as infeasible.
inline constexpr double kXiMin = -0.99;
inline constexpr double kXiMax = 2.0;

struct FitOptions {
  bool check_hessian = true;
  int max_restarts = 5;
  std::uint64_t jitter_seed = 0x9e37;
  OptimOptions optim{};
};

struct FitResult {
  GevParams params;
  std::optional<AltHypothesis> alt;  // set for fits under A1/A2/A3
  double loglik = -kInf;
  bool converged = false;
  int n_evals = 0;
  bool hessian_ok = false;
  double grad_norm = 0.0;
  int restarts = 0;
  std::string message;
};

/// Thrown for data that cannot support a fit (too few values, all equal).
class DegenerateDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Gumbel moment starting values: sigma = sd * sqrt(6) / pi, mu = mean - 0.5772 sigma, xi = 0.1.
[[nodiscard]] GevParams gumbel_moment_start(std::span<const double> x);

/// Maximum likelihood GEV fit to block maxima, honouring rounding/censoring.
[[nodiscard]] FitResult fit_gev(std::span<const double> maxima, const DataTreatment& treatment = {},
                                std::optional<GevParams> init = std::nullopt, const FitOptions& opts = {});

/// Fit of the max-stable null: the block maximum has parameters tied to the
/// base parameters through the max-stability map with the frame's width.
[[nodiscard]] FitResult fit_null(const BlockFrame& frame, std::optional<GevParams> init = std::nullopt,
                                 const FitOptions& opts = {});

/// Joint fit of base parameters and the alternative's extra parameters. When
/// `null_fit` is supplied the search starts from it with the alternative at its
/// null point, so the result never falls below the null log-likelihood.
[[nodiscard]] FitResult fit_alternative(const BlockFrame& frame, AltKind kind,
                                        const std::optional<FitResult>& null_fit = std::nullopt,
                                        const FitOptions& opts = {});

/// Fit using only the m - 1 smallest values of each block (maximum left-censored),
/// constrained so that every block maximum lies inside the fitted support.
[[nodiscard]] FitResult fit_marginal(const BlockFrame& frame, std::optional<GevParams> init = std::nullopt,
                                     const FitOptions& opts = {});

/// Quantile `prob` of the maximum over `years * blocks_per_year` blocks.
/// prob = 0.5 gives the median T-year maximum; years = 1, blocks_per_year = 1,
/// prob = 1 - 1/T gives the classical T-block return level.
struct ReturnLevelTarget {
  double years = 1.0;
  double blocks_per_year = 1.0;
  double prob = 0.5;
};

/// Probability that the maximum over `horizon` blocks exceeds `threshold`.
struct ExceedanceTarget {
  double threshold = 0.0;
  double horizon = 1.0;
};

using ProfileTarget = std::variant<ReturnLevelTarget, ExceedanceTarget>;

[[nodiscard]] double target_value(const ProfileTarget& target, const GevParams& p);
[[nodiscard]] std::string target_label(const ProfileTarget& target);

struct ProfileCI {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  std::string target;
  bool lower_open = false;
  bool upper_open = false;
  bool non_unimodal = false;
  std::vector<std::pair<double, double>> trace;  // (target value, profile deviance)
};

using ParamLoglik = std::function<double(const GevParams&)>;

/// Profile-likelihood interval for a functional of the GEV parameters. The
/// location is solved from the target value, nuisance (log sigma, xi) is
/// maximized out, and the interval is where the deviance stays below the
/// chi-square(1) quantile at `level`.
[[nodiscard]] ProfileCI profile_ci(const ParamLoglik& loglik, const FitResult& fit, const ProfileTarget& target,
                                   double level = 0.95);

[[nodiscard]] ProfileCI profile_ci(std::span<const double> maxima, const DataTreatment& treatment,
                                   const FitResult& fit, const ProfileTarget& target, double level = 0.95);

/// Profiles the max-stable null model of a frame; targets refer to the base
/// (width-1) distribution.
[[nodiscard]] ProfileCI profile_ci(const BlockFrame& frame, const FitResult& null_fit, const ProfileTarget& target,
                                   double level = 0.95);

}  // namespace maxstab
