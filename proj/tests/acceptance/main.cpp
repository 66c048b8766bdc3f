// Acceptance runner: one PASS/FAIL/SKIP line per criterion.
//
//   acceptance [--smoke] [N ...]
//
// With no numbers every criterion runs. --smoke shortens the bootstrap
// calibration check to 200 replicates. Exit status is 1 when any criterion
// fails, 77 when every selected criterion was skipped, 0 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ingest.hpp"
#include "maxstab/bootstrap.hpp"
#include "maxstab/fisher_info.hpp"
#include "maxstab/parallel.hpp"
#include "maxstab/simulation.hpp"
#include "maxstab/stability_test.hpp"
#include "stats.hpp"

using namespace maxstab;
namespace fs = std::filesystem;

namespace {

enum class Status { Pass, Fail, Skip };

class Tally {
 public:
  void check(bool ok, const std::string& item) {
    ok_ = ok_ && ok;
    items_.push_back(ok ? item : "FAILED " + item);
  }
  void note(const std::string& item) { items_.push_back(item); }
  void skip(const std::string& why) {
    skipped_ = true;
    items_.push_back(why);
  }
  [[nodiscard]] Status status() const {
    if (!ok_) return Status::Fail;
    return skipped_ && checks_empty() ? Status::Skip : Status::Pass;
  }
  [[nodiscard]] std::string detail() const {
    std::string s;
    for (const auto& i : items_) s += (s.empty() ? "" : "; ") + i;
    return s;
  }
  void mark_checked() { checked_ = true; }

 private:
  [[nodiscard]] bool checks_empty() const { return !checked_; }
  bool ok_ = true;
  bool skipped_ = false;
  bool checked_ = false;
  std::vector<std::string> items_;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

std::string pct(double v) { return fmt(100.0 * v, 3) + "%"; }

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

struct Config {
  bool smoke = false;
};

// ---------------------------------------------------------------------------
// 1. Exact efficiency formulas.

void criterion1(Tally& t, const Config&) {
  t.mark_checked();
  const double a = are_overall(0.0, 2.0);
  t.check(std::abs(a - 0.5) <= 1e-10, "are(0,2)=" + fmt(a, 12));
  double worst = 0.0;
  for (double m : {2.0, 5.0, 12.0, 50.0}) {
    worst = std::max(worst, std::abs(are_overall(-0.5 + 1e-13, m) - std::pow(m, -2.0 / 3.0)));
  }
  t.check(worst <= 1e-10, "are(-1/2,m) vs m^(-2/3) max err " + fmt(worst, 3));
  double det_err = 0.0;
  for (double xi : {-0.4, -0.2, 0.0, 0.2, 0.5}) {
    for (double m : {2.0, 5.0, 12.0}) {
      for (const GevParams& p : {GevParams{0.0, 1.0, xi}, GevParams{1.3, 2.1, xi}}) {
        Matrix3 scaled = info_for_params(p).entries;
        for (auto& row : scaled)
          for (double& v : row) v *= m;
        const double ratio = det3(info_block_max(p, m).entries) / det3(scaled);
        const double expect = std::pow(m, -(3.0 + 2.0 * xi));
        det_err = std::max(det_err, std::abs(ratio / expect - 1.0));
      }
    }
  }
  t.check(det_err <= 1e-8, "determinant identity max rel err " + fmt(det_err, 3));
}

// ---------------------------------------------------------------------------
// 2. Confidence interval length ratios.

void criterion2(Tally& t, const Config&) {
  t.mark_checked();
  const double s2 = ci_length_ratio(TargetSigma{}, 0.0, 2.0);
  const double s12 = ci_length_ratio(TargetSigma{}, 0.0, 12.0);
  t.check(within(s2, 0.6, 0.02), "sigma m=2 " + fmt(s2) + " (0.6+-0.02)");
  t.check(within(s12, 0.12, 0.02), "sigma m=12 " + fmt(s12) + " (0.12+-0.02)");
  for (double xi : {-0.2, 0.0, 0.2}) {
    const double r = ci_length_ratio(TargetReturnLevel{20.0}, xi, 12.0);
    t.check(r >= 0.68 && r <= 0.82, "r20 xi=" + fmt(xi) + " " + fmt(r) + " in [0.68,0.82]");
  }
}

// ---------------------------------------------------------------------------
// 3-5. Size and power from the simulation harness.

// Size and power cells run with the harness defaults, seed included.
StudyOptions study(int reps = 2000) {
  StudyOptions o;
  o.reps = reps;
  return o;
}

StudyOptions study(std::uint64_t seed, int reps) {
  StudyOptions o = study(reps);
  o.seed = seed;
  return o;
}

ScenarioSpec weibull_penultimate(int n, int m, double delta) {
  ScenarioSpec s;
  s.kind = ScenarioKind::Penultimate;
  s.base = BaseDistribution{BaseDistribution::Kind::Weibull, 0.8};
  s.n = n;
  s.m = m;
  s.delta = delta;
  return s;
}

void check_rate(Tally& t, const PowerCell& c, double target, double tol) {
  const double p = c.power();
  t.check(within(p, target, tol), alt_name(c.alt) + " m=" + std::to_string(c.spec.m) + " n=" +
                                      std::to_string(c.spec.n) + " " + pct(p) + " (" + pct(target) + "+-" +
                                      pct(tol) + ", fails " + std::to_string(c.failures) + ")");
}

void criterion3(Tally& t, const Config&) {
  t.mark_checked();
  const auto small = power_cell(weibull_penultimate(25, 2, 1.0), {AltKind::A1, AltKind::A3}, study());
  check_rate(t, small[0], 0.063, 0.015);
  check_rate(t, small[1], 0.079, 0.020);
  const auto large = power_cell(weibull_penultimate(100, 10, 1.0), {AltKind::A1}, study());
  check_rate(t, large[0], 0.051, 0.015);
}

void criterion4(Tally& t, const Config&) {
  t.mark_checked();
  ScenarioSpec s;
  s.kind = ScenarioKind::Mda;
  s.base = BaseDistribution{BaseDistribution::Kind::Normal, 1.0};
  s.delta = 1.0;
  s.n = 50;
  s.m = 5;
  check_rate(t, power_cell(s, {AltKind::A1}, study())[0], 0.049, 0.015);
  s.n = 100;
  s.m = 10;
  check_rate(t, power_cell(s, {AltKind::A3}, study())[0], 0.120, 0.025);
}

void criterion5(Tally& t, const Config&) {
  t.mark_checked();
  const std::vector<AltKind> alts{AltKind::A1, AltKind::A3};
  const auto m2 = power_cell(weibull_penultimate(50, 2, 2.0), alts, study());
  const auto m10 = power_cell(weibull_penultimate(50, 10, 2.0), alts, study());
  auto margin = [&](const PowerCell& hi, const PowerCell& lo, const std::string& what) {
    const double se = std::hypot(hi.mc_se(), lo.mc_se());
    const double gap = hi.power() - lo.power();
    t.check(gap > 3.0 * se, what + " " + pct(hi.power()) + " vs " + pct(lo.power()) + " (" + fmt(gap / se, 3) +
                                " SE)");
  };
  margin(m2[0], m2[1], "A1>A3 at m=2");
  margin(m2[0], m10[0], "A1 m=2>m=10");
  t.note("A3 m=10 " + pct(m10[1].power()));
}

// ---------------------------------------------------------------------------
// 6. Block maxima of max-autoregressive series.

// Maxima of every other length-m block. Adjacent blocks share the tail of an
// extreme run, which makes neighbouring maxima dependent.
std::vector<double> alternate_maxima(const std::vector<double>& y, int m) {
  std::vector<double> out;
  for (std::size_t i = 0; i + static_cast<std::size_t>(m) <= y.size(); i += 2 * static_cast<std::size_t>(m)) {
    out.push_back(*std::max_element(y.begin() + static_cast<std::ptrdiff_t>(i),
                                    y.begin() + static_cast<std::ptrdiff_t>(i) + m));
  }
  return out;
}

void criterion6(Tally& t, const Config&) {
  t.mark_checked();
  const int n = 5000;
  double worst = 1.0;
  std::uint64_t stream = 0;
  auto record = [&](double p, const std::string& label) {
    worst = std::min(worst, p);
    if (p <= 0.01) t.check(false, label + " KS p=" + fmt(p, 3));
  };
  for (double theta : {0.3, 0.7}) {
    for (int m : {5, 20}) {
      Rng rng = substream(601, stream++);
      const auto mx = alternate_maxima(simulate_mar_gumbel({theta, 0.0, 2 * n * m}, rng), m);
      const double loc = std::log(1.0 + (m - 1) * theta);
      record(testing_support::ks_test(mx, [&](double x) { return std::exp(-std::exp(-(x - loc))); }),
             "gumbel theta=" + fmt(theta) + " m=" + std::to_string(m));
      for (double xi : {0.2, 0.4}) {
        Rng r2 = substream(602, stream++);
        const auto fm = alternate_maxima(simulate_mar_frechet({theta, xi, 2 * n * m}, r2), m);
        const double k = theta * (m - 1) + 1.0;
        record(testing_support::ks_test(
                   fm, [&](double x) { return x <= 0.0 ? 0.0 : std::exp(-k * std::pow(x, -1.0 / xi)); }),
               "frechet xi=" + fmt(xi) + " theta=" + fmt(theta) + " m=" + std::to_string(m));
      }
    }
  }
  t.check(worst > 0.01, "12 KS tests, smallest p=" + fmt(worst, 3));
}

// ---------------------------------------------------------------------------
// 7. Bootstrap calibration of simultaneous bands.

std::vector<double> sorted_sample(int n, const std::function<double(Rng&)>& draw, Rng& rng) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = draw(rng);
  std::sort(v.begin(), v.end());
  return v;
}

// Coverage of fresh datasets from GEV(truth) by bands calibrated with a
// parametric bootstrap run from the true parameters.
void calibrated_coverage(Tally& t, int n, int m, int B, int fresh, bool smoke) {
  const GevParams truth{0.0, 1.0, 0.1};
  FitOptions fo;
  fo.check_hessian = false;
  Rng seed_rng = substream(703, static_cast<std::uint64_t>(n));
  std::vector<double> first(static_cast<std::size_t>(n * m));
  for (double& v : first) v = gev_sample(truth, seed_rng);
  FitResult at_truth;
  at_truth.params = truth;
  at_truth.converged = true;
  BandOptions bo;
  bo.B = B;
  bo.alpha = 0.5;
  bo.seed = 704 + static_cast<std::uint64_t>(n);
  bo.fit = fo;
  const BandResult cal = parametric_band(BlockFrame(first, m), at_truth, PivotKind::AllObservations, bo);
  const int n_obs = n * m;
  const auto positions = cal.band.positions;
  const std::map<double, double> star{{0.5, sample_quantile(cal.alpha_b_values, 0.5)},
                                      {0.05, sample_quantile(cal.alpha_b_values, 0.05)}};

  std::vector<std::vector<double>> pivots(static_cast<std::size_t>(fresh));
  parallel_for(fresh, 0, [&](int r) {
    Rng rng = substream(705 + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r));
    std::vector<double> x(static_cast<std::size_t>(n_obs));
    for (double& v : x) v = gev_sample(truth, rng);
    const BlockFrame f(x, m);
    const FitResult fit = fit_null(f, std::nullopt, fo);
    if (!fit.converged) return;
    pivots[static_cast<std::size_t>(r)] = compute_pivots(f, fit.params, PivotKind::AllObservations, rng).values;
  });
  for (const auto& [alpha, a_star] : star) {
    const EcdfBand band = make_band(n_obs, positions, alpha, a_star, B);
    int covered = 0, used = 0;
    for (const auto& v : pivots) {
      if (v.empty()) continue;
      ++used;
      covered += band_covers(band, v);
    }
    const double cov = covered / static_cast<double>(used);
    const double target = 1.0 - alpha;
    double tol = alpha == 0.5 ? 0.05 : 0.02;
    if (smoke) tol = std::max(tol, 3.5 * std::sqrt(target * (1 - target) / used));
    t.check(within(cov, target, tol), "n=" + std::to_string(n) + " " + pct(target) + " band covers " + pct(cov) +
                                          " (alpha*=" + fmt(a_star, 3) + ", " + std::to_string(used) + " fits)");
  }
}

void criterion7(Tally& t, const Config& cfg) {
  t.mark_checked();
  const int reps = cfg.smoke ? 200 : 1000;
  const int n = 100;
  const auto positions = default_positions(n);
  const EcdfBand uniform50 = simultaneous_band(n, positions, 0.5, 100000, 701);

  // Pivots with estimated parameters sit too close to uniformity for this band.
  std::vector<int> inside(static_cast<std::size_t>(reps), 0);
  parallel_for(reps, 0, [&](int r) {
    Rng rng = substream(702, static_cast<std::uint64_t>(r));
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = gev_sample({0.0, 1.0, 0.0}, rng);
    const FitResult fit = fit_gev(x);
    for (double& v : x) v = gev_cdf(v, fit.params);
    std::sort(x.begin(), x.end());
    inside[static_cast<std::size_t>(r)] = band_covers(uniform50, x);
  });
  double gumbel = 0.0;
  for (int v : inside) gumbel += v;
  gumbel /= reps;
  const double se_g = std::sqrt(gumbel * (1 - gumbel) / reps);
  t.check(within(gumbel, 0.976, cfg.smoke ? std::max(0.02, 3.5 * se_g) : 0.02),
          "estimated Gumbel pivots " + pct(gumbel) + " (97.6%)");

  // Uniform samples are cheap, so this coverage uses ten times the replicates.
  const int uni_reps = 10 * reps;
  Rng urng(706);
  int covered = 0;
  for (int r = 0; r < uni_reps; ++r) {
    covered += band_covers(uniform50, sorted_sample(n, [](Rng& g) { return uniform01(g); }, urng));
  }
  const double uni = covered / static_cast<double>(uni_reps);
  t.check(within(uni, 0.505, cfg.smoke ? std::max(0.03, 3.5 * std::sqrt(0.25 / uni_reps)) : 0.03),
          "uniform " + pct(uni) + " (50.5%, " + std::to_string(uni_reps) + " samples)");

  const int B = cfg.smoke ? 200 : 500;
  const int fresh = cfg.smoke ? 200 : 2000;
  for (int size : {50, 100}) calibrated_coverage(t, size, 2, B, fresh, cfg.smoke);
  if (cfg.smoke) t.note("smoke run");
}

// ---------------------------------------------------------------------------
// 8. Likelihoods against independent long double evaluations.

struct LdGev {
  long double mu, sigma, xi;
  explicit LdGev(const GevParams& p) : mu(p.mu), sigma(p.sigma), xi(p.xi) {}
  // Exponent -log F; inf below the support, 0 above it.
  [[nodiscard]] long double expo(long double x) const {
    const long double z = (x - mu) / sigma;
    if (std::fabs(xi) < 1e-12L) return std::exp(-z);
    const long double s = 1.0L + xi * z;
    if (s <= 0.0L) return xi > 0 ? INFINITY : 0.0L;
    return std::pow(s, -1.0L / xi);
  }
  [[nodiscard]] long double cdf(long double x) const { return std::exp(-expo(x)); }
  [[nodiscard]] long double pdf(long double x) const {
    const long double e = expo(x);
    if (e == 0.0L || std::isinf(e)) return 0.0L;
    // d/dx of -expo: expo^(1 + xi) / sigma.
    return std::pow(e, 1.0L + xi) / sigma * std::exp(-e);
  }
};

double oracle_joint(const std::vector<std::vector<double>>& rows, const GevParams& p0, const GevParams& pm) {
  const LdGev f0(p0), fm(pm);
  long double total = 0.0L;
  for (const auto& row : rows) {
    std::vector<double> r = row;
    std::sort(r.begin(), r.end());
    const long double mx = r.back();
    total += std::log(fm.pdf(mx));
    for (std::size_t j = 0; j + 1 < r.size(); ++j) total += std::log(f0.pdf(r[j]) / f0.cdf(mx));
  }
  return static_cast<double>(total);
}

// Interval probabilities computed directly: censored values count F(u),
// values whose rounding interval straddles u take the weighted form.
double oracle_interval(const std::vector<std::vector<double>>& rows, const GevParams& p0, const GevParams& pm,
                       double delta, double u) {
  const LdGev f0(p0), fm(pm);
  const long double h = delta / 2.0L;
  auto term = [&](const LdGev& f, long double x) -> long double {
    const long double fu = f.cdf(u);
    if (x <= u) return std::log(fu);
    const long double lo = x - h, hi = x + h;
    if (lo >= u) return std::log(f.cdf(hi) - f.cdf(lo));
    const long double num = f.cdf(hi) - fu;
    const long double w = num / (f.cdf(hi) - f.cdf(lo));
    return w * std::log(num) + (1.0L - w) * std::log(fu);
  };
  long double total = 0.0L;
  for (const auto& row : rows) {
    std::vector<double> r = row;
    std::sort(r.begin(), r.end());
    const long double mx = std::max<long double>(r.back(), u);
    total += term(fm, r.back());
    for (std::size_t j = 0; j + 1 < r.size(); ++j) total += term(f0, r[j]);
    total -= static_cast<long double>(r.size() - 1) * std::log(f0.cdf(std::max<long double>(u, mx + h)));
  }
  return static_cast<double>(total);
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

GevParams random_params(Rng& rng) {
  return {2.0 * uniform01(rng) - 1.0, 0.5 + 1.5 * uniform01(rng), 0.8 * uniform01(rng) - 0.4};
}

double ld_quantile(const GevParams& p, double q) {
  const long double y = -std::log(static_cast<long double>(q));
  if (std::fabs(p.xi) < 1e-12) return static_cast<double>(p.mu - p.sigma * std::log(y));
  return static_cast<double>(p.mu + p.sigma * (std::pow(y, -static_cast<long double>(p.xi)) - 1.0L) / p.xi);
}

void criterion8(Tally& t, const Config&) {
  t.mark_checked();
  Rng rng(801);
  double worst_joint = 0.0;
  int frames = 0;
  while (frames < 100) {
    const int n = 1 + static_cast<int>(uniform01(rng) * 3);
    const int m = 1 + static_cast<int>(uniform01(rng) * 4);
    const GevParams p0 = random_params(rng);
    GevParams pm = max_stability_map(p0, {static_cast<double>(m)});
    pm.mu += 0.3 * (uniform01(rng) - 0.5);
    pm.sigma *= 0.8 + 0.4 * uniform01(rng);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    for (auto& r : rows)
      for (int j = 0; j < m; ++j) r.push_back(ld_quantile(p0, uniform01(rng)));
    const double oracle = oracle_joint(rows, p0, pm);
    if (!std::isfinite(oracle)) continue;  // maximum outside the perturbed support
    worst_joint = std::max(worst_joint, rel_gap(loglik_joint(BlockFrame::from_rows(rows), p0, pm), oracle));
    ++frames;
  }
  t.check(worst_joint <= 1e-10, "joint vs order statistics on 100 frames, max rel err " + fmt(worst_joint, 3));

  double worst_iv = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + static_cast<int>(uniform01(rng) * 3);
    const int m = 1 + static_cast<int>(uniform01(rng) * 4);
    const GevParams p0 = random_params(rng);
    const GevParams pm = max_stability_map(p0, {static_cast<double>(m)});
    const double delta = 0.1;
    const bool censor = k % 2 == 1;
    const double u = censor ? std::round(ld_quantile(p0, 0.3) / delta) * delta + 0.02 : -kInf;
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    for (auto& r : rows)
      for (int j = 0; j < m; ++j) r.push_back(std::round(ld_quantile(p0, uniform01(rng)) / delta) * delta);
    bool any_max = false;
    for (const auto& r : rows) any_max = any_max || *std::max_element(r.begin(), r.end()) > u;
    if (!any_max) continue;
    const BlockFrame f = BlockFrame::from_rows(rows, {delta, u});
    const double oracle = oracle_interval(rows, p0, pm, delta, u);
    worst_iv = std::max(worst_iv, rel_gap(loglik_censored_rounded(f, p0, pm), oracle));
  }
  t.check(worst_iv <= 1e-10, "censored/rounded vs interval probabilities, max rel err " + fmt(worst_iv, 3));

  // Rounded likelihood minus the log-width term approaches the density version.
  const GevParams p{0.0, 1.0, 0.2};
  std::vector<std::vector<double>> rows(10);
  for (auto& r : rows)
    for (int j = 0; j < 3; ++j) r.push_back(ld_quantile(p, uniform01(rng)));
  const BlockFrame f = BlockFrame::from_rows(rows);
  const GevParams pm = max_stability_map(p, {3.0});
  const double joint = loglik_joint(f, p, pm);
  std::vector<double> gaps;
  for (double d : {1e-2, 1e-4, 1e-6}) {
    gaps.push_back(std::abs(loglik_censored_rounded(f.with_treatment({d}), p, pm) - 30.0 * std::log(d) - joint));
  }
  const bool trend = gaps[1] < gaps[0] / 50 && gaps[2] < gaps[1] / 50 && gaps[2] < 1e-4;
  t.check(trend, "delta->0 gaps " + fmt(gaps[0], 3) + ", " + fmt(gaps[1], 3) + ", " + fmt(gaps[2], 3));
}

// ---------------------------------------------------------------------------
// 9. Application numbers, when the data files are supplied.

// Passes when |v - target| is within the relative tolerance or half a unit of
// the last reported digit, whichever is larger.
bool near_reported(double v, double target, double rel, double half_unit) {
  return std::abs(v - target) <= std::max(rel * std::abs(target), half_unit);
}

void cheeseboro(Tally& t, const fs::path& file) {
  const cli::Series s = cli::ingest(file.string(), {});
  const DataTreatment rounding{1.0};
  // Rows: m = 1, 2, 4, 8; columns c = 2 (A1, A2, A3), c = 4 (A1, A2, A3).
  const std::map<int, std::vector<double>> table{{1, {0, 0, 0, 0, 0, 0}},
                                                 {2, {0.014, 0.047, 0, 0.13, 0.3, 0}},
                                                 {4, {0.383, 0.546, 0.16, 0.2, 0.41, 0.18}},
                                                 {8, {0.137, 0.318, 0.43, 0.66, 0.76, 0.81}}};
  int hits = 0, cells = 0;
  const std::vector<AltKind> alts{AltKind::A1, AltKind::A2, AltKind::A3};
  for (const auto& [m, row] : table) {
    for (int ci = 0; ci < 2; ++ci) {
      const int c = ci == 0 ? 2 : 4;
      const BlockFrame f = series_frame(s.segments, m, c, rounding);
      const auto reports = lr_tests(f, alts);
      for (std::size_t k = 0; k < alts.size(); ++k) {
        const double target = row[static_cast<std::size_t>(ci) * 3 + k];
        const double p = reports[k].p_value;
        ++cells;
        if (std::abs(p - target) <= 0.02) {
          ++hits;
        } else {
          t.check(false, "cheeseboro m=" + std::to_string(m) + " c=" + std::to_string(c) + " " + alt_name(alts[k]) +
                             " p=" + fmt(p, 3) + " vs " + fmt(target, 3));
        }
      }
    }
  }
  t.check(hits == cells, "cheeseboro " + std::to_string(hits) + "/" + std::to_string(cells) + " p-values");
}

void thames(Tally& t, const fs::path& file) {
  const cli::Series s = cli::ingest(file.string(), {});
  const std::vector<AltKind> alts{AltKind::A1, AltKind::A2, AltKind::A3};
  const std::vector<double> target{0.44, 0.63, 0.14};
  for (std::size_t k = 0; k < alts.size(); ++k) {
    const double p = test_blocksize(s.segments, 1, 2, {}, alts[k]).p_value;
    t.check(std::abs(p - target[k]) <= 0.02, "thames " + alt_name(alts[k]) + " p=" + fmt(p, 3));
  }
  const FitResult fit = fit_gev(block_maxima(s.segments, 2).maxima);
  const GevParams& g = fit.params;
  t.check(near_reported(g.mu, 338.26, 0.01, 0.005) && near_reported(g.sigma, 96.6, 0.01, 0.05) &&
              near_reported(g.xi, -0.06, 0.01, 0.005),
          "thames biyearly fit (" + fmt(g.mu, 5) + ", " + fmt(g.sigma, 4) + ", " + fmt(g.xi, 2) + ")");
}

void abisko(Tally& t, const fs::path& file) {
  cli::IngestOptions o;
  o.running_sum = 3;
  o.window = cli::parse_window("06-15+84");
  const cli::Series s = cli::ingest(file.string(), o);
  const DataTreatment censor{0.0, 10.0};
  const std::vector<AltKind> alts{AltKind::A1, AltKind::A2, AltKind::A3};
  const auto weekly = lr_tests(series_frame(s.segments, 7, 4, censor), alts);
  for (const auto& r : weekly) {
    t.check(r.p_value < 1e-3 + 0.02, "abisko 7 vs 28 days " + alt_name(r.alt_kind) + " p=" + fmt(r.p_value, 3));
  }
  const auto monthly = lr_tests(series_frame(s.segments, 28, 3, censor), alts);
  const std::vector<double> target{0.69, 0.69, 0.95};
  for (std::size_t k = 0; k < alts.size(); ++k) {
    t.check(std::abs(monthly[k].p_value - target[k]) <= 0.02,
            "abisko 28 days vs season " + alt_name(alts[k]) + " p=" + fmt(monthly[k].p_value, 3));
  }
  const auto maxima = block_maxima(s.segments, 28).maxima;
  const FitResult fit = fit_gev(maxima, censor);
  const ProfileCI ci = profile_ci(maxima, censor, fit, ExceedanceTarget{69.9, 3.0});
  t.check(near_reported(ci.estimate, 9.3e-3, 0.01, 0.05e-3) && near_reported(ci.lower, 1.6e-3, 0.01, 0.05e-3) &&
              near_reported(ci.upper, 31e-3, 0.01, 0.5e-3),
          "abisko exceedance " + fmt(ci.estimate, 3) + " [" + fmt(ci.lower, 3) + ", " + fmt(ci.upper, 3) + "]");
}

void criterion9(Tally& t, const Config&) {
  const char* dir = std::getenv("MAXSTAB_DATA_DIR");
  if (dir == nullptr || *dir == '\0') {
    t.skip("MAXSTAB_DATA_DIR not set");
    return;
  }
  const std::vector<std::pair<std::string, std::function<void(Tally&, const fs::path&)>>> sets{
      {"cheeseboro.csv", cheeseboro}, {"thames.csv", thames}, {"abisko.csv", abisko}};
  for (const auto& [name, run] : sets) {
    const fs::path file = fs::path(dir) / name;
    if (!fs::exists(file)) {
      t.skip(name + " absent");
      continue;
    }
    t.mark_checked();
    run(t, file);
  }
}

// ---------------------------------------------------------------------------
// 10. Properties that need no external data.

void criterion10(Tally& t, const Config&) {
  t.mark_checked();
  Rng rng(1001);

  double closure = 0.0;
  for (int k = 0; k < 200; ++k) {
    const GevParams p = random_params(rng);
    const double a = 1.0 + 9.0 * uniform01(rng), b = 1.0 + 9.0 * uniform01(rng);
    const GevParams two = max_stability_map(max_stability_map(p, {a}), {b});
    const GevParams one = max_stability_map(p, {a * b});
    closure = std::max({closure, std::abs(two.mu - one.mu), std::abs(two.sigma / one.sigma - 1.0)});
    const double x = gev_quantile(0.2 + 0.6 * uniform01(rng), one);
    closure = std::max(closure, std::abs(std::pow(gev_cdf(x, p), a * b) - gev_cdf(x, one)));
  }
  t.check(closure < 1e-10, "max-stability closure " + fmt(closure, 3));

  double round_trip = 0.0;
  for (double xi : {-0.9, -0.4, -1e-9, 0.0, 1e-9, 0.3, 1.5}) {
    for (double q = 0.001; q < 1.0; q += 0.0137) {
      round_trip = std::max(round_trip, std::abs(gev_cdf(gev_quantile(q, {0.5, 2.0, xi}), {0.5, 2.0, xi}) - q));
    }
    // Upper tail in the quantile scale: near a finite endpoint the tail
    // probability of a rounded x carries the rounding of x magnified.
    for (double s : {1e-12, 1e-8, 1e-4}) {
      const double x = gev_quantile_upper(s, {0.5, 2.0, xi});
      const double back = gev_quantile_upper(std::exp(gev_logsf(x, {0.5, 2.0, xi})), {0.5, 2.0, xi});
      round_trip = std::max(round_trip, std::abs(back - x) / std::max(1.0, std::abs(x)));
    }
  }
  t.check(round_trip < 1e-9, "quantile/cdf round trips " + fmt(round_trip, 3));

  double branch = 0.0;
  for (double x : {-2.0, -0.5, 0.0, 1.0, 4.0}) {
    for (double eps : {-1e-7, 1e-7}) {
      branch = std::max({branch, std::abs(gev_cdf(x, {0, 1, eps}) - gev_cdf(x, {0, 1, 0})),
                         std::abs(gev_pdf(x, {0, 1, eps}) - gev_pdf(x, {0, 1, 0}))});
    }
  }
  t.check(branch < 1e-5, "shape branch continuity " + fmt(branch, 3));

  double equiv = 0.0;
  for (int k = 0; k < 20; ++k) {
    Rng r = substream(1002, static_cast<std::uint64_t>(k));
    std::vector<double> x(200);
    for (double& v : x) v = gev_sample({0, 1, 0.1}, r);
    const double a = 0.5 + 4.0 * uniform01(r), b = 10.0 * uniform01(r) - 5.0;
    std::vector<double> y(x.size());
    std::transform(x.begin(), x.end(), y.begin(), [&](double v) { return a * v + b; });
    const GevParams px = fit_gev(x).params, py = fit_gev(y).params;
    equiv = std::max({equiv, std::abs((py.mu - b) / a - px.mu), std::abs(py.sigma / a - px.sigma),
                      std::abs(py.xi - px.xi)});
  }
  t.check(equiv < 1e-3, "fit equivariance " + fmt(equiv, 3));

  double nest = 0.0;
  const std::vector<AltKind> alts{AltKind::A1, AltKind::A2, AltKind::A3};
  for (int k = 0; k < 50; ++k) {
    Rng r = substream(1003, static_cast<std::uint64_t>(k));
    std::vector<double> x(300);
    for (double& v : x) v = gev_sample({0, 1, 0.1}, r);
    TestOptions o;
    o.fit.check_hessian = false;
    const auto rep = lr_tests(BlockFrame(x, 3), alts, o);
    nest = std::max({nest, rep[0].statistic - rep[1].statistic, rep[1].statistic - rep[2].statistic});
  }
  t.check(nest < 1e-4, "LR nesting A1<=A2<=A3, worst excess " + fmt(nest, 3));

  ScenarioSpec null_gev;
  null_gev.n = 100;
  null_gev.m = 2;
  const StudyOptions so = study(1004, 1000);
  for (AltKind k : alts) {
    auto pv = null_p_values(null_gev, k, so);
    std::erase_if(pv, [](double v) { return std::isnan(v); });
    const double ks = testing_support::ks_test(pv, [](double v) { return std::clamp(v, 0.0, 1.0); });
    t.check(ks > 0.01, "null p-values " + alt_name(k) + " KS p=" + fmt(ks, 3));
  }

  const StudyOptions rerun = study(1005, 200);
  const auto c1 = power_cell(null_gev, {AltKind::A2}, rerun);
  const auto c2 = power_cell(null_gev, {AltKind::A2}, rerun);
  const auto p1 = null_p_values(null_gev, AltKind::A1, rerun);
  const auto p2 = null_p_values(null_gev, AltKind::A1, rerun);
  bool same = c1[0].rejections == c2[0].rejections && p1.size() == p2.size();
  for (std::size_t i = 0; same && i < p1.size(); ++i) same = p1[i] == p2[i] || (std::isnan(p1[i]) && std::isnan(p2[i]));
  t.check(same, "seeded reruns identical");
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--smoke") {
      cfg.smoke = true;
    } else {
      try {
        selected.push_back(std::stoi(a));
      } catch (const std::exception&) {
        std::cerr << "usage: acceptance [--smoke] [criterion ...]\n";
        return 2;
      }
    }
  }
  const std::vector<std::function<void(Tally&, const Config&)>> criteria{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  if (selected.empty())
    for (int i = 1; i <= 10; ++i) selected.push_back(i);

  int failed = 0, skipped = 0;
  for (int id : selected) {
    if (id < 1 || id > 10) {
      std::cerr << "no criterion " << id << "\n";
      return 2;
    }
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[static_cast<std::size_t>(id - 1)](t, cfg);
    } catch (const std::exception& e) {
      t.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const Status s = t.status();
    const char* label = s == Status::Pass ? "PASS" : s == Status::Fail ? "FAIL" : "SKIP";
    failed += s == Status::Fail;
    skipped += s == Status::Skip;
    std::cout << "criterion " << id << ": " << label << " " << t.detail() << " [" << fmt(secs, 3) << " s]"
              << std::endl;
  }
  if (failed > 0) return 1;
  if (skipped == static_cast<int>(selected.size())) return 77;
  return 0;
}
