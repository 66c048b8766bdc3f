#include "maxstab/bootstrap.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <cctype>
#include <cmath>
#include <limits>

#include "maxstab/parallel.hpp"

namespace maxstab {
namespace {

double binom_cdf(int k, int n, double p) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  return boost::math::cdf(boost::math::binomial(n, p), k);
}

double round_to(double x, double delta) { return delta > 0.0 ? delta * std::round(x / delta) : x; }

// Standardized value of x > u under the GEV left-truncated at u.
double truncated_pivot(double x, const GevParams& p, double u) {
  if (u == -kInf) return gev_cdf(x, p);
  const double lu = gev_logsf(u, p);
  if (lu == -kInf) return 1.0;
  return std::clamp(-std::expm1(gev_logsf(x, p) - lu), 0.0, 1.0);
}

std::vector<double> simulate_like(const BlockFrame& frame, const GevParams& p, Rng& rng) {
  const DataTreatment& t = frame.treatment();
  std::vector<double> v(frame.values().size());
  for (double& x : v) x = round_to(gev_sample(p, rng), t.delta);
  return v;
}

FitResult refit(const BlockFrame& frame, const GevParams& start, const FitOptions& opts) {
  if (frame.m() == 1) {
    const std::vector<double> mx = frame.maxima();
    return fit_gev(mx, frame.treatment(), start, opts);
  }
  return fit_null(frame, start, opts);
}

}  // namespace

std::string pivot_kind_name(PivotKind kind) {
  return kind == PivotKind::AllObservations ? "all_observations" : "block_maximum";
}

PivotKind parse_pivot_kind(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "all_observations" || s == "all") return PivotKind::AllObservations;
  if (s == "block_maximum" || s == "max") return PivotKind::BlockMaximum;
  throw std::invalid_argument("unknown pivot kind '" + name + "' (use all_observations or block_maximum)");
}

std::vector<double> default_positions(int n, int N) {
  if (N <= 0) N = std::min(n, 100);
  if (N < 1) throw std::invalid_argument("need at least one ECDF position");
  std::vector<double> pos(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) pos[static_cast<std::size_t>(i)] = (i + 1.0) / (N + 1.0);
  return pos;
}

double ecdf_at(std::span<const double> sorted_v, double nu) {
  if (sorted_v.empty()) return 0.0;
  const auto k = std::upper_bound(sorted_v.begin(), sorted_v.end(), nu) - sorted_v.begin();
  return static_cast<double>(k) / static_cast<double>(sorted_v.size());
}

int binomial_quantile(double q, int n, double p) {
  int lo = 0;
  int hi = n;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (binom_cdf(mid, n, p) >= q) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

double alpha_b(std::span<const double> v, std::span<const double> positions) {
  if (v.empty()) throw std::invalid_argument("alpha_b: empty sample");
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  const int n = static_cast<int>(s.size());
  double smallest = 1.0;
  for (double nu : positions) {
    const int k = static_cast<int>(std::upper_bound(s.begin(), s.end(), nu) - s.begin());
    const double lower_tail = binom_cdf(k, n, nu);
    const double upper_tail = 1.0 - binom_cdf(k - 1, n, nu);
    smallest = std::min({smallest, lower_tail, upper_tail});
  }
  return std::clamp(2.0 * smallest, std::numeric_limits<double>::min(), 1.0);
}

EcdfBand make_band(int n, std::span<const double> positions, double alpha, double alpha_star, int B) {
  EcdfBand band;
  band.positions.assign(positions.begin(), positions.end());
  band.alpha = alpha;
  band.alpha_star = alpha_star;
  band.B = B;
  band.n = n;
  const double dn = static_cast<double>(n);
  for (double nu : positions) {
    band.point_lo.push_back(binomial_quantile(alpha / 2.0, n, nu) / dn);
    band.point_hi.push_back(binomial_quantile(1.0 - alpha / 2.0, n, nu) / dn);
    band.simul_lo.push_back(binomial_quantile(alpha_star / 2.0, n, nu) / dn);
    band.simul_hi.push_back(binomial_quantile(1.0 - alpha_star / 2.0, n, nu) / dn);
  }
  return band;
}

bool band_covers(const EcdfBand& band, std::span<const double> sorted_v) {
  for (std::size_t i = 0; i < band.positions.size(); ++i) {
    const double e = ecdf_at(sorted_v, band.positions[i]);
    if (e < band.simul_lo[i] - 1e-12 || e > band.simul_hi[i] + 1e-12) return false;
  }
  return true;
}

double sample_quantile(std::vector<double> x, double prob) {
  if (x.empty()) throw std::invalid_argument("sample_quantile: empty sample");
  std::sort(x.begin(), x.end());
  const double h = (static_cast<double>(x.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

EcdfBand simultaneous_band(int n, std::span<const double> positions, double alpha, int B, std::uint64_t seed,
                           int threads) {
  if (n < 1) throw std::invalid_argument("simultaneous_band: n must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (B < 200) throw std::invalid_argument("simultaneous_band: need at least 200 replicates");
  std::vector<double> ab(static_cast<std::size_t>(B));
  parallel_for(B, threads, [&](int b) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(b));
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = uniform01(rng);
    ab[static_cast<std::size_t>(b)] = alpha_b(v, positions);
  });
  return make_band(n, positions, alpha, sample_quantile(std::move(ab), alpha), B);
}

double impute_rounded(double x, const GevParams& p, double delta, double u, Rng& rng) {
  if (delta == 0.0) return x;
  if (!(delta > 0.0)) throw std::invalid_argument("impute_rounded: delta must be non-negative");
  return truncated_gev_sample(p, std::max(u, x - delta / 2.0), x + delta / 2.0, rng);
}

PivotSeries compute_pivots(const BlockFrame& frame, const GevParams& p, PivotKind kind, Rng& rng) {
  const DataTreatment& t = frame.treatment();
  const int m = frame.m();
  const GevParams pm = kind == PivotKind::BlockMaximum ? max_stability_map(p, {static_cast<double>(m)}) : p;
  PivotSeries out;
  out.kind = kind;
  std::vector<double> row(static_cast<std::size_t>(m));
  for (int i = 0; i < frame.n(); ++i) {
    const auto r = frame.row(i);
    for (int j = 0; j < m; ++j) {
      const double x = r[static_cast<std::size_t>(j)];
      double y = x;
      if (x > t.u && t.delta > 0.0) {
        try {
          y = impute_rounded(x, p, t.delta, t.u, rng);
        } catch (const std::domain_error&) {
          y = x;  // rounding interval outside the fitted support
        }
      }
      row[static_cast<std::size_t>(j)] = y;
    }
    std::sort(row.begin(), row.end());
    if (kind == PivotKind::BlockMaximum) {
      if (row.back() > t.u) out.values.push_back(truncated_pivot(row.back(), pm, t.u));
    } else {
      for (double y : row)
        if (y > t.u) out.values.push_back(truncated_pivot(y, p, t.u));
    }
  }
  std::sort(out.values.begin(), out.values.end());
  out.n_retained = static_cast<int>(out.values.size());
  return out;
}

BandResult parametric_band(const BlockFrame& frame, const FitResult& fit, PivotKind kind, const BandOptions& opts) {
  if (!fit.converged) throw std::invalid_argument("parametric_band needs a converged fit");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (opts.B < 1) throw std::invalid_argument("parametric_band: B must be positive");
  const GevParams theta = fit.params;

  BandResult res;
  Rng obs_rng = substream(opts.seed, 0xffffffffULL);
  res.observed = compute_pivots(frame, theta, kind, obs_rng);
  if (res.observed.n_retained < 1) throw std::invalid_argument("no uncensored values to plot");
  const int n_obs = res.observed.n_retained;
  const std::vector<double> positions = default_positions(n_obs, opts.N);

  const int max_attempts = 2;
  std::vector<double> ab(static_cast<std::size_t>(opts.B));
  std::vector<int> failures(static_cast<std::size_t>(opts.B), 0);
  parallel_for(opts.B, opts.threads, [&](int b) {
    const auto ub = static_cast<std::size_t>(b);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      Rng rng = substream(opts.seed, ub, static_cast<std::uint64_t>(attempt));
      try {
        const BlockFrame sim(simulate_like(frame, theta, rng), frame.m(), frame.treatment());
        const FitResult f = refit(sim, theta, opts.fit);
        if (!f.converged) throw std::runtime_error("refit did not converge");
        const PivotSeries ps = compute_pivots(sim, f.params, kind, rng);
        if (ps.values.empty()) throw std::runtime_error("no uncensored values");
        ab[ub] = alpha_b(ps.values, positions);
        return;
      } catch (const std::exception&) {
        ++failures[ub];
      }
    }
    ab[ub] = std::numeric_limits<double>::quiet_NaN();
  });

  std::vector<double> kept;
  for (double a : ab)
    if (!std::isnan(a)) kept.push_back(a);
  for (int f : failures) res.failed_replicates += f;
  const int lost = opts.B - static_cast<int>(kept.size());
  if (res.failed_replicates > opts.B / 10 || kept.empty()) {
    throw BootstrapError("bootstrap refits failed in " + std::to_string(res.failed_replicates) + " of " +
                         std::to_string(opts.B + res.failed_replicates - lost) + " attempts");
  }
  res.alpha_b_values = kept;
  const double alpha_star = sample_quantile(std::move(kept), opts.alpha);
  res.band = make_band(n_obs, positions, opts.alpha, alpha_star, opts.B);
  for (double nu : positions) res.ecdf_observed.push_back(ecdf_at(res.observed.values, nu));
  return res;
}

BandResult parametric_band(std::span<const double> maxima, const DataTreatment& treatment, const FitResult& fit,
                           const BandOptions& opts) {
  const BlockFrame frame(std::vector<double>(maxima.begin(), maxima.end()), 1, treatment);
  return parametric_band(frame, fit, PivotKind::AllObservations, opts);
}

}  // namespace maxstab
