#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maxstab/stability_test.hpp"

namespace maxstab {

/// Parent distribution for penultimate and domain-of-attraction scenarios.
struct BaseDistribution {
  enum class Kind { Normal, Weibull };
  Kind kind = Kind::Normal;
  double shape = 1.0;  // Weibull shape k; ignored for the normal

  [[nodiscard]] double sample(Rng& rng) const;
  [[nodiscard]] double log_cdf(double x) const;
  /// Inverse of the survival function.
  [[nodiscard]] double quantile_upper(double s) const;
  [[nodiscard]] std::string name() const;
};

[[nodiscard]] BaseDistribution parse_base(const std::string& name, double shape = 1.0);

/// Penultimate GEV approximation to the maximum of m draws.
struct PenultimateResult {
  double d_m = 0.0;
  double c_m = 1.0;
  double xi_m = 0.0;
  [[nodiscard]] GevParams params() const { return {d_m, c_m, xi_m}; }
};

/// d_m solves G(d_m) = exp(-1/m), c_m = phi(d_m) and xi_m = phi'(d_m) for
/// phi = -G log G / g. m may be fractional but must be at least 2.
[[nodiscard]] PenultimateResult penultimate(const BaseDistribution& base, double m);

/// Rows of m order statistics from GEV(0, 1, 0.1) whose maximum is redrawn from
/// GEV(delta, exp(-delta / 10), 0.1) above the second largest value.
[[nodiscard]] BlockFrame simulate_scenario1(int n, int m, double delta, Rng& rng);

/// As scenario 1 with base law GEV(penultimate(base, 30)) and maximum from
/// GEV(penultimate(base, 30 delta)). delta = 1 is the null.
[[nodiscard]] BlockFrame simulate_penultimate_scenario(const BaseDistribution& base, int n, int m, double delta,
                                                       Rng& rng);

/// Rows of m exact draws from G^m_base (maxima of m_base parent draws) whose
/// maximum is redrawn from G^(m_base delta) above the second largest.
[[nodiscard]] BlockFrame simulate_mda(const BaseDistribution& base, int n, int m, double delta, Rng& rng,
                                      int m_base = 30);

/// First-order max-autoregressive process with extremal index theta.
struct MarSpec {
  double theta = 1.0;
  double xi = 0.0;
  int length = 0;
};

/// Standard Gumbel margins: Y_i = max(Y_{i-1}, Z_i) + log(1 - theta).
[[nodiscard]] std::vector<double> simulate_mar_gumbel(const MarSpec& spec, Rng& rng);
/// Frechet margins GEV(1, xi, xi): Y_i = max((1 - theta)^xi Y_{i-1}, Z_i).
[[nodiscard]] std::vector<double> simulate_mar_frechet(const MarSpec& spec, Rng& rng);
/// Dispatches on xi: zero uses the Gumbel recursion, positive the Frechet one.
[[nodiscard]] std::vector<double> simulate_mar(const MarSpec& spec, Rng& rng);

enum class ScenarioKind { Gev, Penultimate, Mda, Mar };

[[nodiscard]] std::string scenario_name(ScenarioKind kind);
[[nodiscard]] ScenarioKind parse_scenario(const std::string& name);

/// One cell of a simulation study. For the conditional scenarios each
/// replicate is a frame of n rows of m values with a departure of size delta.
/// For MAR data a series of n * c * m values is tested at block length m
/// against c * m.
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::Gev;
  BaseDistribution base{};
  int n = 100;
  int m = 2;
  double delta = 0.0;
  double theta = 1.0;
  double xi = 0.0;
  int c = 2;
  int m_base = 30;
};

/// The frame one replicate is tested on.
[[nodiscard]] BlockFrame simulate_replicate(const ScenarioSpec& spec, Rng& rng);

struct PowerCell {
  ScenarioSpec spec;
  AltKind alt = AltKind::A1;
  double level = 0.05;
  int reps = 0;
  int rejections = 0;
  int failures = 0;  // replicates whose fits failed; excluded from the rate
  [[nodiscard]] int used() const { return reps - failures; }
  [[nodiscard]] double power() const;
  [[nodiscard]] double mc_se() const;
  [[nodiscard]] double fail_rate() const;
};

struct StudyOptions {
  double level = 0.05;
  int reps = 2000;
  std::uint64_t seed = 1;
  int threads = 0;
  FitOptions fit{.check_hessian = false};
};

/// Rejection rates of each alternative on the same replicates.
[[nodiscard]] std::vector<PowerCell> power_cell(const ScenarioSpec& spec, const std::vector<AltKind>& alts,
                                                const StudyOptions& opts);

/// p-values of one alternative over the replicates of a cell (NaN for failures).
[[nodiscard]] std::vector<double> null_p_values(const ScenarioSpec& spec, AltKind alt, const StudyOptions& opts);

/// Long-format CSV: scenario columns, alternative, n, m, level, reps, power, mc_se, fail_rate.
[[nodiscard]] std::string power_csv_header();
[[nodiscard]] std::string power_csv_row(const PowerCell& cell);

}  // namespace maxstab
