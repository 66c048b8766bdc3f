#include "ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace maxstab::cli {
namespace {

using namespace std::chrono;

std::string trim(std::string s) {
  auto keep = [](unsigned char c) { return !std::isspace(c) && c != '"' && c != '\''; };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), keep));
  s.erase(std::find_if(s.rbegin(), s.rend(), keep).base(), s.end());
  return s;
}

bool is_missing(const std::string& s) {
  std::string l;
  for (char c : s) l.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return l.empty() || l == "na" || l == "nan" || l == "null" || l == "." || l == "m" || l == "missing";
}

std::optional<double> to_number(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    else if (c == ',' && !quoted) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::optional<year_month_day> try_date(const std::string& text) {
  int y = 0;
  unsigned mo = 0, d = 0;
  char a = 0, b = 0;
  std::istringstream is(text.substr(0, 10));
  if (!(is >> y >> a >> mo >> b >> d) || a != '-' || b != '-') return std::nullopt;
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

struct Record {
  std::optional<year_month_day> date;
  double value;
};

std::pair<unsigned, unsigned> parse_month_day(const std::string& text) {
  unsigned mo = 0, d = 0;
  char sep = 0;
  std::istringstream is(text);
  if (!(is >> mo >> sep >> d) || sep != '-' || !is.eof()) {
    throw InputError("bad month-day '" + text + "' (expected MM-DD)");
  }
  if (!year_month_day{year{2001}, month{mo}, day{d}}.ok()) {
    throw InputError("month-day '" + text + "' is not a date in every year");
  }
  return {mo, d};
}

Series to_segments(const std::vector<Record>& recs, const IngestOptions& opts, int missing) {
  Series s;
  s.missing_dropped = missing;
  const bool dated = !recs.empty() && recs.front().date.has_value();
  if (dated) {
    for (std::size_t i = 1; i < recs.size(); ++i) {
      if (sys_days{*recs[i].date} < sys_days{*recs[i - 1].date}) {
        throw InputError("timestamps are not in chronological order");
      }
    }
  }
  std::vector<double> values(recs.size());
  std::transform(recs.begin(), recs.end(), values.begin(), [](const Record& r) { return r.value; });
  const int k = std::max(1, opts.running_sum);
  if (k > 1) values = running_sum(values, k);
  const std::size_t offset = recs.size() - values.size();

  if (!opts.window) {
    if (!values.empty()) s.segments.push_back(std::move(values));
  } else {
    if (!dated) throw InputError("a seasonal window needs a date column");
    std::optional<int> current;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto season = opts.window->season_of(*recs[i + offset].date);
      if (!season) continue;
      if (!current || *season != *current) {
        s.segments.emplace_back();
        current = season;
      }
      s.segments.back().push_back(values[i]);
    }
  }
  if (s.size() == 0) throw InputError("no observations selected");
  return s;
}

}  // namespace

std::optional<int> Window::season_of(year_month_day d) const {
  const int y = static_cast<int>(d.year());
  const sys_days day_d{d};
  auto start_in = [&](int yr) { return sys_days{year{yr} / month{start_month} / day{start_day}}; };
  if (span_days > 0) {
    for (int yr : {y, y - 1}) {
      const auto diff = (day_d - start_in(yr)).count();
      if (diff >= 0 && diff < span_days) return yr;
    }
    return std::nullopt;
  }
  const unsigned md = static_cast<unsigned>(d.month()) * 100 + static_cast<unsigned>(d.day());
  const unsigned s = start_month * 100 + start_day;
  const unsigned e = end_month * 100 + end_day;
  if (s <= e) {
    if (md >= s && md <= e) return y;
    return std::nullopt;
  }
  if (md >= s) return y;
  if (md <= e) return y - 1;
  return std::nullopt;
}

Window parse_window(const std::string& text) {
  Window w;
  if (const auto plus = text.find('+'); plus != std::string::npos) {
    std::tie(w.start_month, w.start_day) = parse_month_day(text.substr(0, plus));
    const auto n = to_number(text.substr(plus + 1));
    if (!n || *n < 1 || *n > 365 || std::floor(*n) != *n) {
      throw InputError("window length must be an integer number of days in 1..365");
    }
    w.span_days = static_cast<int>(*n);
    return w;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("bad window '" + text + "' (use MM-DD:MM-DD or MM-DD+NDAYS)");
  std::tie(w.start_month, w.start_day) = parse_month_day(text.substr(0, colon));
  std::tie(w.end_month, w.end_day) = parse_month_day(text.substr(colon + 1));
  return w;
}

year_month_day parse_date(const std::string& text) {
  const auto d = try_date(trim(text));
  if (!d) throw InputError("bad date '" + text + "' (expected YYYY-MM-DD)");
  return *d;
}

std::size_t Series::size() const {
  std::size_t n = 0;
  for (const auto& s : segments) n += s.size();
  return n;
}

std::vector<double> Series::flat() const {
  std::vector<double> out;
  for (const auto& s : segments) out.insert(out.end(), s.begin(), s.end());
  return out;
}

std::vector<double> running_sum(std::span<const double> x, int k) {
  if (k < 1) throw InputError("running-sum window must be positive");
  std::vector<double> out;
  if (x.size() < static_cast<std::size_t>(k)) return out;
  out.reserve(x.size() - static_cast<std::size_t>(k) + 1);
  for (std::size_t i = static_cast<std::size_t>(k) - 1; i < x.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = i + 1 - static_cast<std::size_t>(k); j <= i; ++j) s += x[j];
    out.push_back(s);
  }
  return out;
}

Series ingest_stream(std::istream& in, const IngestOptions& opts, bool csv) {
  std::vector<Record> recs;
  int missing = 0;
  std::string line;
  int lineno = 0;
  if (!csv) {
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream is(line);
      std::string tok;
      while (is >> tok) {
        if (is_missing(tok)) {
          ++missing;
          continue;
        }
        const auto v = to_number(tok);
        if (!v) throw InputError("line " + std::to_string(lineno) + ": cannot parse '" + tok + "' as a number");
        recs.push_back({std::nullopt, *v});
      }
    }
    return to_segments(recs, opts, missing);
  }

  int value_col = -1;
  int date_col = -1;
  bool first = true;
  bool date_decided = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const std::vector<std::string> f = split_csv(line);
    if (first) {
      first = false;
      const bool header = std::none_of(f.begin(), f.end(), [](const std::string& s) {
        return to_number(s).has_value() || try_date(s).has_value();
      });
      if (!opts.column.empty()) {
        if (const auto idx = to_number(opts.column)) {
          value_col = static_cast<int>(*idx);
        } else {
          if (!header) throw InputError("column '" + opts.column + "' requested but the file has no header");
          const auto it = std::find(f.begin(), f.end(), opts.column);
          if (it == f.end()) throw InputError("no column named '" + opts.column + "'");
          value_col = static_cast<int>(it - f.begin());
        }
      } else {
        value_col = f.size() > 1 ? 1 : 0;
      }
      if (header) continue;
    }
    if (!date_decided) {
      date_decided = true;
      date_col = f.size() > 1 && try_date(f[0]) && value_col != 0 ? 0 : -1;
    }
    if (value_col >= static_cast<int>(f.size())) {
      throw InputError("line " + std::to_string(lineno) + ": missing value column");
    }
    std::optional<year_month_day> date;
    if (date_col >= 0) {
      date = try_date(f[static_cast<std::size_t>(date_col)]);
      if (!date) throw InputError("line " + std::to_string(lineno) + ": bad date '" + f[0] + "'");
    }
    const std::string& cell = f[static_cast<std::size_t>(value_col)];
    if (is_missing(cell)) {
      ++missing;
      continue;
    }
    const auto v = to_number(cell);
    if (!v) throw InputError("line " + std::to_string(lineno) + ": cannot parse '" + cell + "' as a number");
    recs.push_back({date, *v});
  }
  return to_segments(recs, opts, missing);
}

Series ingest(const std::string& path, const IngestOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  bool csv = opts.format == "csv";
  if (opts.format == "auto") {
    csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  } else if (opts.format != "csv" && opts.format != "plain") {
    throw InputError("unknown format '" + opts.format + "' (use csv or plain)");
  }
  return ingest_stream(in, opts, csv);
}

}  // namespace maxstab::cli
