#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maxstab/estimation.hpp"

namespace maxstab {

enum class PivotKind { AllObservations, BlockMaximum };

[[nodiscard]] std::string pivot_kind_name(PivotKind kind);
[[nodiscard]] PivotKind parse_pivot_kind(const std::string& name);

/// Pointwise and simultaneous bands for the ECDF of n pivots at fixed positions.
struct EcdfBand {
  std::vector<double> positions;
  std::vector<double> point_lo, point_hi;
  std::vector<double> simul_lo, simul_hi;
  double alpha = 0.05;
  double alpha_star = 0.05;
  int B = 0;
  int n = 0;  // sample size the bands refer to
};

struct PivotSeries {
  std::vector<double> values;  // sorted, in [0, 1]
  PivotKind kind = PivotKind::AllObservations;
  int n_retained = 0;
};

/// Positions i / (N + 1), i = 1..N. N = 0 picks min(n, 100).
[[nodiscard]] std::vector<double> default_positions(int n, int N = 0);

/// Proportion of `v` at or below `nu`.
[[nodiscard]] double ecdf_at(std::span<const double> sorted_v, double nu);

/// Smallest k with P(Bin(n, p) <= k) >= q.
[[nodiscard]] int binomial_quantile(double q, int n, double p);

/// Smallest two-sided binomial tail level over the positions, times two and
/// capped at 1: the level at which the ECDF of `v` first leaves its band.
[[nodiscard]] double alpha_b(std::span<const double> v, std::span<const double> positions);

/// Bands from binomial quantiles: pointwise at `alpha`, simultaneous at `alpha_star`.
[[nodiscard]] EcdfBand make_band(int n, std::span<const double> positions, double alpha, double alpha_star, int B);

/// True when the ECDF of `sorted_v` stays inside the simultaneous band at every position.
[[nodiscard]] bool band_covers(const EcdfBand& band, std::span<const double> sorted_v);

/// Linear-interpolation (type 7) sample quantile.
[[nodiscard]] double sample_quantile(std::vector<double> x, double prob);

/// Calibration by uniform sampling: alpha_star is the alpha-quantile of
/// alpha_b over B samples of n uniforms.
[[nodiscard]] EcdfBand simultaneous_band(int n, std::span<const double> positions, double alpha, int B,
                                         std::uint64_t seed, int threads = 0);

struct BandOptions {
  double alpha = 0.05;
  int B = 1000;
  int N = 0;  // 0 picks min(n, 100)
  std::uint64_t seed = 1;
  int threads = 0;
  FitOptions fit{.check_hessian = false};
};

struct BandResult {
  EcdfBand band;
  PivotSeries observed;
  std::vector<double> ecdf_observed;  // ECDF of the observed pivots at the positions
  std::vector<double> alpha_b_values;  // one per successful replicate
  int failed_replicates = 0;
};

/// Thrown when more than 10% of bootstrap refits fail.
class BootstrapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parametric-bootstrap calibrated band for PP plots of pivots. Replicates are
/// simulated from the fitted model, rounded and censored like the data, refitted
/// with the same estimator (GEV fit when m = 1, max-stable null otherwise) and
/// turned into pivots with their own estimates. Censored values are dropped and
/// the rest standardized by the GEV left-truncated at u; rounded values are
/// imputed within their rounding interval first.
[[nodiscard]] BandResult parametric_band(const BlockFrame& frame, const FitResult& fit, PivotKind kind,
                                         const BandOptions& opts = {});
[[nodiscard]] BandResult parametric_band(std::span<const double> maxima, const DataTreatment& treatment,
                                         const FitResult& fit, const BandOptions& opts = {});

/// Pivots of a frame under base parameters p (block maxima use the max-stable
/// map with the frame width). Rounded values are imputed with `rng`.
[[nodiscard]] PivotSeries compute_pivots(const BlockFrame& frame, const GevParams& p, PivotKind kind, Rng& rng);

/// Draw of the latent value behind rounded observation x from the GEV restricted
/// to [max(u, x - delta/2), x + delta/2]. delta = 0 returns x.
[[nodiscard]] double impute_rounded(double x, const GevParams& p, double delta, double u, Rng& rng);

}  // namespace maxstab
