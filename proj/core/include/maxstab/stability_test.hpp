#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxstab/estimation.hpp"

namespace maxstab {

/// Outcome of a likelihood ratio test of max-stability.
struct TestReport {
  double statistic = 0.0;
  int df = 1;
  double p_value = 1.0;
  AltKind alt_kind = AltKind::A1;
  int m = 1;         // length of the base blocks
  int factor_c = 1;  // super-block width; the null maps with this factor
  FitResult null_fit;
  FitResult alt_fit;
  bool converged = false;
  std::vector<std::string> warnings;
};

/// Thrown when a fit needed by a test fails to converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TestOptions {
  FitOptions fit{};
  // Non-convergence raises ConvergenceError instead of returning a flagged report.
  bool throw_on_failure = false;
};

[[nodiscard]] double chisq_upper_tail(double statistic, int df);

/// LR test of the max-stable null against the chosen alternative on a frame
/// whose rows hold the observations making up each block maximum.
[[nodiscard]] TestReport lr_test(const BlockFrame& frame, AltKind kind, const TestOptions& opts = {});

/// Several alternatives against one shared null fit.
[[nodiscard]] std::vector<TestReport> lr_tests(const BlockFrame& frame, std::span<const AltKind> kinds,
                                               const TestOptions& opts = {});

/// Groups c consecutive blocks into super-blocks of width c * m. Leftover
/// blocks are dropped and counted in `dropped` when given.
[[nodiscard]] BlockFrame blocked_rebase(const BlockFrame& frame, int c, int* dropped = nullptr);

struct BlockedSeries {
  std::vector<double> maxima;   // maxima of consecutive blocks of length m
  int dropped_observations = 0;  // trailing values that did not fill a block
};

/// Maxima of consecutive length-m blocks in each segment (e.g. one season per
/// year), never spanning a segment boundary.
[[nodiscard]] BlockedSeries block_maxima(std::span<const std::vector<double>> segments, int m);

/// Rows of c consecutive m-block maxima, so each row maximum is a (c m)-block
/// maximum. Blocks never cross segment boundaries.
[[nodiscard]] BlockFrame series_frame(std::span<const std::vector<double>> segments, int m, int c,
                                      const DataTreatment& treatment, std::vector<std::string>* warnings = nullptr);

/// Test of block length m against c m on a raw series (or its segments).
[[nodiscard]] TestReport test_blocksize(std::span<const std::vector<double>> segments, int m, int c,
                                        const DataTreatment& treatment, AltKind kind, const TestOptions& opts = {});
[[nodiscard]] TestReport test_blocksize(std::span<const double> series, int m, int c, const DataTreatment& treatment,
                                        AltKind kind, const TestOptions& opts = {});

struct SelectionResult {
  std::optional<int> selected_m;  // empty when every candidate is rejected
  std::vector<TestReport> trail;
};

/// Tests block lengths in increasing order and stops at the first one whose
/// p-value reaches `level`.
[[nodiscard]] SelectionResult sequential_selection(std::span<const std::vector<double>> segments,
                                                   std::span<const int> m_grid, int c,
                                                   const DataTreatment& treatment, AltKind kind, double level = 0.05,
                                                   const TestOptions& opts = {});

}  // namespace maxstab
