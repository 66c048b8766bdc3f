#include "maxstab/block_likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxstab/detail/gev_eval.hpp"

namespace maxstab {

using detail::GevEval;

void DataTreatment::validate() const {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("rounding width delta must be finite and non-negative");
  }
  if (std::isnan(u) || u == kInf) {
    throw std::invalid_argument("censoring bound u must be a real number or -inf");
  }
}

BlockFrame::BlockFrame(std::vector<double> row_major, int m, DataTreatment treatment)
    : values_(std::move(row_major)), m_(m), treatment_(treatment) {
  treatment_.validate();
  if (m_ < 1) throw std::invalid_argument("BlockFrame: block width must be at least 1");
  if (values_.empty() || values_.size() % static_cast<std::size_t>(m_) != 0) {
    throw std::invalid_argument("BlockFrame: value count must be a positive multiple of the block width");
  }
  n_ = static_cast<int>(values_.size() / static_cast<std::size_t>(m_));
  censored_counts_.assign(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) {
    auto first = values_.begin() + static_cast<std::ptrdiff_t>(i) * m_;
    for (auto it = first; it != first + m_; ++it) {
      if (!std::isfinite(*it)) throw std::invalid_argument("BlockFrame: non-finite observation");
      if (*it <= treatment_.u) {
        *it = treatment_.u;
        ++censored_counts_[static_cast<std::size_t>(i)];
      }
    }
    std::sort(first, first + m_);
    const double mx = *(first + m_ - 1);
    overall_max_ = std::max(overall_max_, mx);
    if (mx > treatment_.u) ++uncensored_maxima_;
  }
}

BlockFrame BlockFrame::from_rows(const std::vector<std::vector<double>>& rows, DataTreatment treatment) {
  if (rows.empty()) throw std::invalid_argument("BlockFrame: no rows");
  const std::size_t m = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * m);
  for (const auto& r : rows) {
    if (r.size() != m) throw std::invalid_argument("BlockFrame: ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return BlockFrame(std::move(flat), static_cast<int>(m), treatment);
}

std::vector<double> BlockFrame::maxima() const {
  std::vector<double> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = row_max(i);
  return out;
}

BlockFrame BlockFrame::with_treatment(DataTreatment t) const { return BlockFrame(values_, m_, t); }

int alt_df(AltKind kind) noexcept {
  switch (kind) {
    case AltKind::A1: return 1;
    case AltKind::A2: return 2;
    case AltKind::A3: return 3;
  }
  return 0;
}

std::string alt_name(AltKind kind) {
  switch (kind) {
    case AltKind::A1: return "a1";
    case AltKind::A2: return "a2";
    case AltKind::A3: return "a3";
  }
  return "?";
}

AltKind parse_alt(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "a1") return AltKind::A1;
  if (s == "a2") return AltKind::A2;
  if (s == "a3") return AltKind::A3;
  throw std::invalid_argument("unknown alternative '" + name + "' (expected a1, a2 or a3)");
}

std::vector<double> AltHypothesis::free_params() const {
  switch (kind) {
    case AltKind::A1: return {omega};
    case AltKind::A2: return {nu, phi};
    case AltKind::A3: return {nu, phi, zeta};
  }
  return {};
}

GevParams alt_max_params(const GevParams& p0, double m, const AltHypothesis& alt) {
  if (alt.kind == AltKind::A1) {
    if (!(alt.omega > 0.0)) throw std::domain_error("alternative A1 requires omega > 0");
    return max_stability_map(p0, {alt.omega * m});
  }
  if (!(alt.phi > 0.0)) throw std::domain_error("alternative requires phi > 0");
  GevParams pm = max_stability_map(p0, {m});
  pm.mu += alt.nu;
  pm.sigma *= alt.phi;
  if (alt.kind == AltKind::A3) pm.xi += alt.zeta;
  return pm;
}

double loglik_joint(const BlockFrame& frame, const GevParams& p0, const GevParams& pm) {
  if (!frame.treatment().continuous()) {
    throw std::invalid_argument("loglik_joint requires continuous data; use loglik_censored_rounded");
  }
  if (!p0.valid() || !pm.valid()) return -kInf;
  const GevEval f0(p0);
  const GevEval fm(pm);
  const int m = frame.m();
  double total = 0.0;
  for (int i = 0; i < frame.n(); ++i) {
    const auto row = frame.row(i);
    const double xmax = row[static_cast<std::size_t>(m - 1)];
    double term = fm.logpdf(xmax);
    if (m > 1) {
      if (xmax > f0.upper_endpoint()) return -kInf;
      const double log_trunc = f0.logcdf(xmax);
      for (int j = 0; j < m - 1; ++j) term += f0.logpdf(row[static_cast<std::size_t>(j)]);
      term -= static_cast<double>(m - 1) * log_trunc;
    }
    if (!(term > -kInf)) return -kInf;
    total += term;
  }
  return total;
}

namespace {

// Weighted contribution L^w F(u)^(1-w) of one uncensored rounded/continuous value.
double weighted_term(const GevEval& f, double x, double delta, double u, double log_fu) {
  if (delta == 0.0) return f.logpdf(x);
  const double half = 0.5 * delta;
  const double hi = x + half;
  const double lo = x - half;
  if (lo >= u) return f.log_interval(lo, hi);
  const double log_num = f.log_interval(u, hi);
  const double log_den = f.log_interval(lo, hi);
  if (!(log_den > -kInf)) return -kInf;
  const double w = std::exp(log_num - log_den);
  if (w == 0.0) return log_fu;
  return w * log_num + (1.0 - w) * log_fu;
}

}  // namespace

double loglik_censored_rounded(const BlockFrame& frame, const GevParams& p0, const GevParams& pm) {
  const DataTreatment& t = frame.treatment();
  if (frame.uncensored_maxima() == 0) {
    throw std::invalid_argument("every block maximum is censored; the likelihood carries no information");
  }
  if (!p0.valid() || !pm.valid()) return -kInf;
  const GevEval f0(p0);
  const GevEval fm(pm);
  const double u = t.u;
  const double half = 0.5 * t.delta;
  const double log_fu0 = t.censored() ? f0.logcdf(u) : 0.0;
  const double log_fum = t.censored() ? fm.logcdf(u) : 0.0;
  const int m = frame.m();
  double total = 0.0;
  for (int i = 0; i < frame.n(); ++i) {
    const auto row = frame.row(i);
    const double xmax = row[static_cast<std::size_t>(m - 1)];
    double term = xmax <= u ? log_fum : weighted_term(fm, xmax, t.delta, u, log_fum);
    if (m > 1) {
      if (std::max(u, xmax - half) > f0.upper_endpoint()) return -kInf;
      const double log_trunc = f0.logcdf(std::max(u, xmax + half));
      for (int j = 0; j < m - 1; ++j) {
        const double x = row[static_cast<std::size_t>(j)];
        term += x <= u ? log_fu0 : weighted_term(f0, x, t.delta, u, log_fu0);
      }
      term -= static_cast<double>(m - 1) * log_trunc;
    }
    if (!(term > -kInf)) return -kInf;
    total += term;
  }
  return total;
}

double loglik_blocks(const BlockFrame& frame, const GevParams& p0, const GevParams& pm) {
  if (frame.treatment().continuous()) return loglik_joint(frame, p0, pm);
  return loglik_censored_rounded(frame, p0, pm);
}

double loglik_marginal(const BlockFrame& frame, const GevParams& p0) {
  if (frame.m() < 2) throw std::invalid_argument("loglik_marginal requires blocks of at least two values");
  if (!frame.treatment().continuous()) {
    throw std::invalid_argument("loglik_marginal is defined for continuous data");
  }
  if (!p0.valid()) return -kInf;
  if (!(p0.sigma + p0.xi * (frame.overall_max() - p0.mu) > 0.0)) return -kInf;
  const GevEval f0(p0);
  const int m = frame.m();
  double total = 0.0;
  for (int i = 0; i < frame.n(); ++i) {
    const auto row = frame.row(i);
    double term = f0.logsf(row[static_cast<std::size_t>(m - 2)]);
    for (int j = 0; j < m - 1; ++j) term += f0.logpdf(row[static_cast<std::size_t>(j)]);
    if (!(term > -kInf)) return -kInf;
    total += term;
  }
  return total;
}

double loglik_gev(std::span<const double> x, const GevParams& p, const DataTreatment& t) {
  if (!p.valid()) return -kInf;
  const GevEval f(p);
  double total = 0.0;
  if (t.continuous()) {
    for (double v : x) {
      const double l = f.logpdf(v);
      if (!(l > -kInf)) return -kInf;
      total += l;
    }
    return total;
  }
  const double log_fu = t.censored() ? f.logcdf(t.u) : 0.0;
  for (double v : x) {
    const double l = v <= t.u ? log_fu : weighted_term(f, v, t.delta, t.u, log_fu);
    if (!(l > -kInf)) return -kInf;
    total += l;
  }
  return total;
}

}  // namespace maxstab
