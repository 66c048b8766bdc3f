#pragma once

#include <chrono>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxstab::cli {

/// Bad input file content or flags; maps to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seasonal window: either MM-DD:MM-DD (inclusive, may wrap past new year) or
/// MM-DD+N (N days from the start date).
struct Window {
  unsigned start_month = 1, start_day = 1;
  unsigned end_month = 12, end_day = 31;
  int span_days = 0;  // > 0 selects the MM-DD+N form

  /// Year in which the season containing `d` starts, or nothing when `d` is outside.
  [[nodiscard]] std::optional<int> season_of(std::chrono::year_month_day d) const;
};

[[nodiscard]] Window parse_window(const std::string& text);
[[nodiscard]] std::chrono::year_month_day parse_date(const std::string& text);

struct IngestOptions {
  std::string format = "auto";  // auto | csv | plain
  std::string column;           // CSV value column: header name or 0-based index
  std::optional<Window> window;
  int running_sum = 1;  // sum of K consecutive values, applied before the window
};

/// Observations split into segments that blocks must not cross (one per season
/// when a window is given).
struct Series {
  std::vector<std::vector<double>> segments;
  int missing_dropped = 0;
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] std::vector<double> flat() const;
};

[[nodiscard]] Series ingest(const std::string& path, const IngestOptions& opts);
[[nodiscard]] Series ingest_stream(std::istream& in, const IngestOptions& opts, bool csv);

/// Sums of k consecutive values; the first k - 1 positions are dropped.
[[nodiscard]] std::vector<double> running_sum(std::span<const double> x, int k);

}  // namespace maxstab::cli
