#pragma once

#include <span>
#include <string>
#include <vector>

#include "maxstab/gev.hpp"

namespace maxstab {

/// How observations were recorded: rounded to the nearest `delta` (0 means
/// continuous) and left-censored at or below `u`.
struct DataTreatment {
  double delta = 0.0;
  double u = -kInf;

  [[nodiscard]] bool continuous() const noexcept { return delta == 0.0 && u == -kInf; }
  [[nodiscard]] bool censored() const noexcept { return u > -kInf; }
  void validate() const;
};

/// n blocks of m observations, each row sorted ascending. Values at or below
/// the censoring bound are stored as the bound itself and counted per row.
class BlockFrame {
 public:
  BlockFrame() = default;
  BlockFrame(std::vector<double> row_major, int m, DataTreatment treatment = {});
  static BlockFrame from_rows(const std::vector<std::vector<double>>& rows, DataTreatment treatment = {});

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] const DataTreatment& treatment() const noexcept { return treatment_; }
  [[nodiscard]] std::span<const double> row(int i) const noexcept {
    return {values_.data() + static_cast<std::size_t>(i) * m_, static_cast<std::size_t>(m_)};
  }
  [[nodiscard]] double row_max(int i) const noexcept { return values_[static_cast<std::size_t>(i) * m_ + m_ - 1]; }
  [[nodiscard]] double overall_max() const noexcept { return overall_max_; }
  [[nodiscard]] int censored_in_row(int i) const noexcept { return censored_counts_[i]; }
  [[nodiscard]] int uncensored_maxima() const noexcept { return uncensored_maxima_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::vector<double> maxima() const;

  /// Same values viewed under another treatment.
  [[nodiscard]] BlockFrame with_treatment(DataTreatment t) const;

 private:
  std::vector<double> values_;
  std::vector<int> censored_counts_;
  int n_ = 0;
  int m_ = 0;
  int uncensored_maxima_ = 0;
  double overall_max_ = -kInf;
  DataTreatment treatment_{};
};

enum class AltKind { A1, A2, A3 };

[[nodiscard]] int alt_df(AltKind kind) noexcept;
[[nodiscard]] std::string alt_name(AltKind kind);
[[nodiscard]] AltKind parse_alt(const std::string& name);

/// Departure of the block-maximum parameters from max-stability.
///   A1: maximum follows max-stability for block length omega * m.
///   A2: (mu_m + nu, phi * sigma_m, xi).
///   A3: (mu_m + nu, phi * sigma_m, xi + zeta).
struct AltHypothesis {
  AltKind kind = AltKind::A1;
  double omega = 1.0;
  double nu = 0.0;
  double phi = 1.0;
  double zeta = 0.0;

  [[nodiscard]] static AltHypothesis null_point(AltKind kind) { return {kind}; }
  [[nodiscard]] int df() const noexcept { return alt_df(kind); }
  [[nodiscard]] std::vector<double> free_params() const;
};

[[nodiscard]] GevParams alt_max_params(const GevParams& p0, double m, const AltHypothesis& alt);

/// Max times truncated lower order statistics, for continuous data. Additive
/// constants are dropped: under the null this equals the iid log-likelihood
/// plus n log m.
[[nodiscard]] double loglik_joint(const BlockFrame& frame, const GevParams& p0, const GevParams& pm);

/// Joint likelihood with rounding to delta and left-censoring at u, using
/// weighted interval probabilities. Reduces to loglik_joint for continuous data.
/// Throws std::invalid_argument when every block maximum is censored.
[[nodiscard]] double loglik_censored_rounded(const BlockFrame& frame, const GevParams& p0, const GevParams& pm);

/// Dispatches on the frame's treatment.
[[nodiscard]] double loglik_blocks(const BlockFrame& frame, const GevParams& p0, const GevParams& pm);

/// Likelihood of the m - 1 smallest values per block with the maximum
/// left-censored; -inf unless every block maximum lies inside the support.
[[nodiscard]] double loglik_marginal(const BlockFrame& frame, const GevParams& p0);

/// Plain GEV log-likelihood of a sample under a treatment (m = 1 frames).
[[nodiscard]] double loglik_gev(std::span<const double> x, const GevParams& p, const DataTreatment& t = {});

}  // namespace maxstab
