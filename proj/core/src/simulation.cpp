#include "maxstab/simulation.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "maxstab/parallel.hpp"

namespace maxstab {
namespace {

const boost::math::normal kStdNormal{};

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double base_log_pdf(const BaseDistribution& b, double x) {
  if (b.kind == BaseDistribution::Kind::Normal) return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
  if (x <= 0.0) return -kInf;
  const double k = b.shape;
  return std::log(k) + (k - 1.0) * std::log(x) - std::pow(x, k);
}

// phi(x) = -G log G / g.
double phi(const BaseDistribution& b, double x) {
  const double lg = b.log_cdf(x);
  return -std::exp(lg) * lg / std::exp(base_log_pdf(b, x));
}

// Draw from G^M restricted to (lower, inf), inverted on the exponent scale.
double truncated_power_draw(const BaseDistribution& b, double M, double lower, Rng& rng) {
  const double t_l = -M * b.log_cdf(lower);
  const double v = uniform01(rng);
  const double t = -std::log1p(-v * -std::expm1(-t_l));
  double x = b.quantile_upper(-std::expm1(-t / M));
  if (!(x > lower)) x = std::nextafter(lower, kInf);
  return x;
}

// Replaces each row maximum by draw(second largest) and returns the frame.
template <class Draw>
BlockFrame conditional_frame(int n, int m, Draw&& base_draw, Rng& rng, auto&& max_draw) {
  if (n < 1 || m < 1) throw std::invalid_argument("scenario needs n >= 1 and m >= 1");
  std::vector<double> v(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    auto first = v.begin() + static_cast<std::ptrdiff_t>(i) * m;
    for (auto it = first; it != first + m; ++it) *it = base_draw(rng);
    std::sort(first, first + m);
    const double second = m >= 2 ? *(first + m - 2) : -kInf;
    *(first + m - 1) = max_draw(second, rng);
  }
  return BlockFrame(std::move(v), m);
}

}  // namespace

double BaseDistribution::sample(Rng& rng) const { return quantile_upper(uniform01(rng)); }

double BaseDistribution::log_cdf(double x) const {
  if (kind == Kind::Normal) {
    if (x > 0.0) return std::log1p(-boost::math::cdf(boost::math::complement(kStdNormal, x)));
    return std::log(boost::math::cdf(kStdNormal, x));
  }
  if (x <= 0.0) return -kInf;
  return std::log(-std::expm1(-std::pow(x, shape)));
}

double BaseDistribution::quantile_upper(double s) const {
  if (kind == Kind::Normal) return boost::math::quantile(boost::math::complement(kStdNormal, s));
  return std::pow(-std::log(s), 1.0 / shape);
}

std::string BaseDistribution::name() const { return kind == Kind::Normal ? "normal" : "weibull"; }

BaseDistribution parse_base(const std::string& name, double shape) {
  const std::string s = lower(name);
  if (s == "normal") return {BaseDistribution::Kind::Normal, 1.0};
  if (s == "weibull") {
    if (!(shape > 0.0)) throw std::invalid_argument("Weibull shape must be positive");
    return {BaseDistribution::Kind::Weibull, shape};
  }
  throw std::invalid_argument("unknown base distribution '" + name + "' (use normal or weibull)");
}

PenultimateResult penultimate(const BaseDistribution& base, double m) {
  if (!(m >= 2.0)) throw std::invalid_argument("penultimate: m must be at least 2");
  PenultimateResult r;
  r.d_m = base.quantile_upper(-std::expm1(-1.0 / m));
  if (!std::isfinite(r.d_m)) throw std::runtime_error("penultimate: could not locate d_m");
  r.c_m = phi(base, r.d_m);
  const double h = 1e-5 * std::max(1.0, std::abs(r.d_m));
  r.xi_m = (phi(base, r.d_m + h) - phi(base, r.d_m - h)) / (2.0 * h);
  return r;
}

BlockFrame simulate_scenario1(int n, int m, double delta, Rng& rng) {
  if (!(delta >= 0.0)) throw std::invalid_argument("scenario 1 needs delta >= 0");
  const GevParams p0{0.0, 1.0, 0.1};
  const GevParams p1{delta, std::exp(-delta / 10.0), 0.1};
  return conditional_frame(
      n, m, [&](Rng& g) { return gev_sample(p0, g); }, rng,
      [&](double second, Rng& g) { return truncated_gev_sample(p1, second, kInf, g); });
}

BlockFrame simulate_penultimate_scenario(const BaseDistribution& base, int n, int m, double delta, Rng& rng) {
  if (!(delta >= 1.0)) throw std::invalid_argument("penultimate scenario needs delta >= 1");
  const GevParams p0 = penultimate(base, 30.0).params();
  const GevParams p1 = penultimate(base, 30.0 * delta).params();
  return conditional_frame(
      n, m, [&](Rng& g) { return gev_sample(p0, g); }, rng,
      [&](double second, Rng& g) { return truncated_gev_sample(p1, second, kInf, g); });
}

BlockFrame simulate_mda(const BaseDistribution& base, int n, int m, double delta, Rng& rng, int m_base) {
  if (!(delta >= 1.0)) throw std::invalid_argument("domain-of-attraction scenario needs delta >= 1");
  if (m_base < 1) throw std::invalid_argument("m_base must be positive");
  const double M = m_base * delta;
  return conditional_frame(
      n, m,
      [&](Rng& g) {
        double mx = -kInf;
        for (int k = 0; k < m_base; ++k) mx = std::max(mx, base.sample(g));
        return mx;
      },
      rng, [&](double second, Rng& g) { return truncated_power_draw(base, M, second, g); });
}

std::vector<double> simulate_mar_gumbel(const MarSpec& spec, Rng& rng) {
  if (!(spec.theta > 0.0 && spec.theta <= 1.0)) throw std::invalid_argument("MAR: theta must lie in (0, 1]");
  if (spec.length < 1) throw std::invalid_argument("MAR: length must be positive");
  const GevParams gumbel{0.0, 1.0, 0.0};
  std::vector<double> y(static_cast<std::size_t>(spec.length));
  y[0] = gev_sample(gumbel, rng);
  if (spec.theta == 1.0) {
    for (std::size_t i = 1; i < y.size(); ++i) y[i] = gev_sample(gumbel, rng);
    return y;
  }
  const double shift = std::log1p(-spec.theta);
  const GevParams innov{std::log(spec.theta) - shift, 1.0, 0.0};
  for (std::size_t i = 1; i < y.size(); ++i) y[i] = std::max(y[i - 1], gev_sample(innov, rng)) + shift;
  return y;
}

std::vector<double> simulate_mar_frechet(const MarSpec& spec, Rng& rng) {
  if (!(spec.theta > 0.0 && spec.theta <= 1.0)) throw std::invalid_argument("MAR: theta must lie in (0, 1]");
  if (!(spec.xi > 0.0)) throw std::invalid_argument("Frechet MAR needs xi > 0");
  if (spec.length < 1) throw std::invalid_argument("MAR: length must be positive");
  const double xi = spec.xi;
  const double tx = std::pow(spec.theta, xi);
  const GevParams innov{tx, xi * tx, xi};
  const double decay = std::pow(1.0 - spec.theta, xi);
  std::vector<double> y(static_cast<std::size_t>(spec.length));
  y[0] = gev_sample({1.0, xi, xi}, rng);
  for (std::size_t i = 1; i < y.size(); ++i) y[i] = std::max(decay * y[i - 1], gev_sample(innov, rng));
  return y;
}

std::vector<double> simulate_mar(const MarSpec& spec, Rng& rng) {
  if (spec.xi < 0.0) throw std::invalid_argument("MAR processes need xi >= 0");
  return spec.xi == 0.0 ? simulate_mar_gumbel(spec, rng) : simulate_mar_frechet(spec, rng);
}

std::string scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Gev: return "gev";
    case ScenarioKind::Penultimate: return "penultimate";
    case ScenarioKind::Mda: return "mda";
    case ScenarioKind::Mar: return "mar";
  }
  return "";
}

ScenarioKind parse_scenario(const std::string& name) {
  const std::string s = lower(name);
  if (s == "gev" || s == "scenario1") return ScenarioKind::Gev;
  if (s == "penultimate") return ScenarioKind::Penultimate;
  if (s == "mda") return ScenarioKind::Mda;
  if (s == "mar") return ScenarioKind::Mar;
  throw std::invalid_argument("unknown scenario '" + name + "' (use gev, penultimate, mda or mar)");
}

BlockFrame simulate_replicate(const ScenarioSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case ScenarioKind::Gev: return simulate_scenario1(spec.n, spec.m, spec.delta, rng);
    case ScenarioKind::Penultimate: return simulate_penultimate_scenario(spec.base, spec.n, spec.m, spec.delta, rng);
    case ScenarioKind::Mda: return simulate_mda(spec.base, spec.n, spec.m, spec.delta, rng, spec.m_base);
    case ScenarioKind::Mar: {
      const MarSpec mar{spec.theta, spec.xi, spec.n * spec.c * spec.m};
      const std::vector<std::vector<double>> seg{simulate_mar(mar, rng)};
      return series_frame(seg, spec.m, spec.c, {});
    }
  }
  throw std::invalid_argument("unknown scenario");
}

double PowerCell::power() const { return used() > 0 ? static_cast<double>(rejections) / used() : 0.0; }

double PowerCell::mc_se() const {
  if (used() <= 0) return 0.0;
  const double p = power();
  return std::sqrt(p * (1.0 - p) / used());
}

double PowerCell::fail_rate() const { return reps > 0 ? static_cast<double>(failures) / reps : 0.0; }

std::vector<PowerCell> power_cell(const ScenarioSpec& spec, const std::vector<AltKind>& alts,
                                  const StudyOptions& opts) {
  if (opts.reps < 100) throw std::invalid_argument("power study needs at least 100 replicates");
  if (alts.empty()) throw std::invalid_argument("power study needs at least one alternative");
  const std::size_t k = alts.size();
  // Per replicate and alternative: 1 reject, 0 accept, -1 failed.
  std::vector<int> outcome(static_cast<std::size_t>(opts.reps) * k, -1);
  const TestOptions topts{opts.fit, false};
  parallel_for(opts.reps, opts.threads, [&](int r) {
    Rng rng = substream(opts.seed, static_cast<std::uint64_t>(r));
    try {
      const BlockFrame frame = simulate_replicate(spec, rng);
      const std::vector<TestReport> reps = lr_tests(frame, alts, topts);
      for (std::size_t a = 0; a < k; ++a) {
        if (reps[a].converged) outcome[static_cast<std::size_t>(r) * k + a] = reps[a].p_value < opts.level ? 1 : 0;
      }
    } catch (const std::exception&) {
    }
  });
  std::vector<PowerCell> cells;
  for (std::size_t a = 0; a < k; ++a) {
    PowerCell c{spec, alts[a], opts.level, opts.reps, 0, 0};
    for (int r = 0; r < opts.reps; ++r) {
      const int o = outcome[static_cast<std::size_t>(r) * k + a];
      if (o < 0) ++c.failures;
      else c.rejections += o;
    }
    cells.push_back(c);
  }
  return cells;
}

std::vector<double> null_p_values(const ScenarioSpec& spec, AltKind alt, const StudyOptions& opts) {
  std::vector<double> p(static_cast<std::size_t>(opts.reps), std::numeric_limits<double>::quiet_NaN());
  const TestOptions topts{opts.fit, false};
  parallel_for(opts.reps, opts.threads, [&](int r) {
    Rng rng = substream(opts.seed, static_cast<std::uint64_t>(r));
    try {
      const TestReport rep = lr_test(simulate_replicate(spec, rng), alt, topts);
      if (rep.converged) p[static_cast<std::size_t>(r)] = rep.p_value;
    } catch (const std::exception&) {
    }
  });
  return p;
}

std::string power_csv_header() {
  return "scenario,base,shape,n,m,c,delta,theta,xi,alternative,level,reps,rejections,failures,power,mc_se,fail_rate";
}

std::string power_csv_row(const PowerCell& cell) {
  const ScenarioSpec& s = cell.spec;
  std::ostringstream os;
  os.precision(10);
  os << scenario_name(s.kind) << ',' << s.base.name() << ',' << s.base.shape << ',' << s.n << ',' << s.m << ','
     << s.c << ',' << s.delta << ',' << s.theta << ',' << s.xi << ',' << alt_name(cell.alt) << ',' << cell.level << ','
     << cell.reps << ',' << cell.rejections << ',' << cell.failures << ',' << cell.power() << ',' << cell.mc_se()
     << ',' << cell.fail_rate();
  return os.str();
}

}  // namespace maxstab
