#include "maxstab/estimation.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "maxstab/random.hpp"

namespace maxstab {
namespace {

constexpr double kEulerGamma = std::numbers::egamma;

// Affine map to a unit-free scale so that optimizer steps are comparable
// across datasets and fits are equivariant.
struct Standardizer {
  double loc = 0.0;
  double scale = 1.0;

  [[nodiscard]] double to_internal(double x) const { return (x - loc) / scale; }
  [[nodiscard]] DataTreatment to_internal(const DataTreatment& t) const {
    return {t.delta / scale, t.u == -kInf ? -kInf : (t.u - loc) / scale};
  }
  [[nodiscard]] GevParams to_original(const GevParams& p) const {
    return {loc + scale * p.mu, scale * p.sigma, p.xi};
  }
  [[nodiscard]] GevParams to_internal(const GevParams& p) const {
    return {(p.mu - loc) / scale, p.sigma / scale, p.xi};
  }
};

bool shape_ok(double xi) { return xi > kXiMin && xi < kXiMax; }

GevParams decode_base(std::span<const double> th) { return {th[0], std::exp(th[1]), th[2]}; }

std::vector<double> encode_base(const GevParams& p) { return {p.mu, std::log(p.sigma), p.xi}; }

AltHypothesis decode_alt(AltKind kind, std::span<const double> th, double scale) {
  AltHypothesis a{kind};
  switch (kind) {
    case AltKind::A1: a.omega = std::exp(th[3]); break;
    case AltKind::A2:
      a.nu = th[3] * scale;
      a.phi = std::exp(th[4]);
      break;
    case AltKind::A3:
      a.nu = th[3] * scale;
      a.phi = std::exp(th[4]);
      a.zeta = th[5];
      break;
  }
  return a;
}

std::vector<double> uncensored_values(std::span<const double> x, double u) {
  std::vector<double> out;
  out.reserve(x.size());
  for (double v : x)
    if (v > u) out.push_back(v);
  return out;
}

Standardizer standardizer_for(std::span<const double> uncensored) {
  if (uncensored.size() < 3) {
    throw DegenerateDataError("at least three non-censored observations are required for a GEV fit");
  }
  const auto [lo, hi] = std::minmax_element(uncensored.begin(), uncensored.end());
  if (*lo == *hi) throw DegenerateDataError("all observations are equal; the GEV fit is degenerate");
  const GevParams g = gumbel_moment_start(uncensored);
  return {g.mu, g.sigma};
}

std::vector<double> jitter(const std::vector<double>& x, std::uint64_t seed, int restart) {
  Rng rng = substream(seed, static_cast<std::uint64_t>(restart));
  std::vector<double> y = x;
  for (double& v : y) v += 0.2 * (uniform01(rng) - 0.5);
  return y;
}

// Maximizes with jittered restarts while the gradient test fails. A maximum
// on the edge of the feasible region (shape bound, support constraint) never
// passes the gradient test; it is accepted once a restart reproduces its value.
OptimResult maximize_with_restarts(const Objective& f, const std::vector<double>& start, const FitOptions& opts,
                                   int& restarts, int& evals) {
  constexpr double kAgree = 1e-6;
  OptimResult best = maximize(f, start, opts.optim);
  evals = best.n_evals;
  restarts = 0;
  for (int r = 1; r <= opts.max_restarts && !best.converged; ++r) {
    std::vector<double> x0 = std::isfinite(best.value) ? jitter(best.x, opts.jitter_seed, r) : jitter(start, opts.jitter_seed, r);
    if (!std::isfinite(f(x0))) x0 = std::isfinite(best.value) ? best.x : start;
    OptimResult trial = maximize(f, x0, opts.optim);
    evals += trial.n_evals + 1;
    ++restarts;
    const bool agrees = std::isfinite(best.value) && std::abs(trial.value - best.value) <= kAgree * (1.0 + std::abs(best.value));
    if (trial.value > best.value || (trial.converged && trial.value >= best.value - 1e-9)) best = std::move(trial);
    if (agrees && !best.converged) {
      best.converged = true;
      best.message = "maximum on the boundary of the parameter space";
    }
  }
  return best;
}

void finish(FitResult& out, const Objective& f, const OptimResult& r, const FitOptions& opts) {
  out.converged = r.converged && std::isfinite(r.value);
  out.grad_norm = r.grad_norm;
  out.message = std::isfinite(r.value) ? r.message : "no feasible parameter values found";
  if (opts.check_hessian && std::isfinite(r.value)) {
    out.hessian_ok = negative_definite(numerical_hessian(f, r.x), r.x.size());
  }
}

}  // namespace

GevParams gumbel_moment_start(std::span<const double> x) {
  if (x.empty()) throw DegenerateDataError("no observations");
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = x.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const double sigma = sd * std::sqrt(6.0) / std::numbers::pi;
  return {mean - kEulerGamma * sigma, sigma, 0.1};
}

FitResult fit_gev(std::span<const double> maxima, const DataTreatment& treatment, std::optional<GevParams> init,
                  const FitOptions& opts) {
  treatment.validate();
  const std::vector<double> obs = uncensored_values(maxima, treatment.u);
  const Standardizer st = standardizer_for(obs);
  std::vector<double> xs(maxima.size());
  std::transform(maxima.begin(), maxima.end(), xs.begin(), [&](double v) { return st.to_internal(v); });
  const DataTreatment ts = st.to_internal(treatment);

  const Objective f = [&](std::span<const double> th) {
    if (!shape_ok(th[2])) return -kInf;
    return loglik_gev(xs, decode_base(th), ts);
  };
  std::vector<double> start = encode_base(init ? st.to_internal(*init) : GevParams{0.0, 1.0, 0.1});
  if (!std::isfinite(f(start))) start = encode_base({0.0, 1.0, 0.1});
  if (!std::isfinite(f(start))) start = encode_base({0.0, 1.0, 0.0});

  FitResult out;
  const OptimResult r = maximize_with_restarts(f, start, opts, out.restarts, out.n_evals);
  out.params = st.to_original(decode_base(r.x));
  out.loglik = loglik_gev(maxima, out.params, treatment);
  finish(out, f, r, opts);
  return out;
}

namespace {

struct FrameProblem {
  Standardizer st;
  BlockFrame internal;
};

FrameProblem standardize_frame(const BlockFrame& frame) {
  const std::vector<double> obs = uncensored_values(frame.values(), frame.treatment().u);
  FrameProblem fp{standardizer_for(obs), {}};
  std::vector<double> vals(frame.values().size());
  std::transform(frame.values().begin(), frame.values().end(), vals.begin(),
                 [&](double v) { return fp.st.to_internal(v); });
  fp.internal = BlockFrame(std::move(vals), frame.m(), fp.st.to_internal(frame.treatment()));
  return fp;
}

}  // namespace

FitResult fit_null(const BlockFrame& frame, std::optional<GevParams> init, const FitOptions& opts) {
  const FrameProblem fp = standardize_frame(frame);
  const double m = frame.m();
  const BlockFrame& fr = fp.internal;
  (void)loglik_blocks(fr, {0.0, 1.0, 0.1}, {0.0, 1.0, 0.1});  // surfaces all-censored errors early

  const Objective f = [&](std::span<const double> th) {
    if (!shape_ok(th[2])) return -kInf;
    const GevParams p0 = decode_base(th);
    return loglik_blocks(fr, p0, max_stability_map(p0, {m}));
  };
  std::vector<double> start = encode_base(init ? fp.st.to_internal(*init) : GevParams{0.0, 1.0, 0.1});
  if (!std::isfinite(f(start))) start = encode_base({0.0, 1.0, 0.1});
  if (!std::isfinite(f(start))) start = encode_base({0.0, 1.0, 0.0});

  FitResult out;
  const OptimResult r = maximize_with_restarts(f, start, opts, out.restarts, out.n_evals);
  out.params = fp.st.to_original(decode_base(r.x));
  out.loglik = loglik_blocks(frame, out.params, max_stability_map(out.params, {m}));
  finish(out, f, r, opts);
  return out;
}

FitResult fit_alternative(const BlockFrame& frame, AltKind kind, const std::optional<FitResult>& null_fit,
                          const FitOptions& opts) {
  const FitResult base = null_fit ? *null_fit : fit_null(frame, std::nullopt, opts);
  const FrameProblem fp = standardize_frame(frame);
  const double m = frame.m();
  const BlockFrame& fr = fp.internal;
  const double scale = fp.st.scale;

  const Objective f = [&](std::span<const double> th) {
    if (!shape_ok(th[2])) return -kInf;
    const GevParams p0 = decode_base(th);
    const AltHypothesis alt = decode_alt(kind, th, 1.0);
    if (kind == AltKind::A3 && !shape_ok(th[2] + alt.zeta)) return -kInf;
    return loglik_blocks(fr, p0, alt_max_params(p0, m, alt));
  };
  std::vector<double> start = encode_base(fp.st.to_internal(base.params));
  start.resize(3 + static_cast<std::size_t>(alt_df(kind)), 0.0);

  FitResult out;
  const OptimResult r = maximize_with_restarts(f, start, opts, out.restarts, out.n_evals);
  out.params = fp.st.to_original(decode_base(r.x));
  out.alt = decode_alt(kind, r.x, scale);
  out.loglik = loglik_blocks(frame, out.params, alt_max_params(out.params, m, *out.alt));
  finish(out, f, r, opts);
  return out;
}

FitResult fit_marginal(const BlockFrame& frame, std::optional<GevParams> init, const FitOptions& opts) {
  const FrameProblem fp = standardize_frame(frame);
  const BlockFrame& fr = fp.internal;
  const Objective f = [&](std::span<const double> th) {
    if (!shape_ok(th[2])) return -kInf;
    return loglik_marginal(fr, decode_base(th));
  };
  std::vector<double> start = encode_base(init ? fp.st.to_internal(*init) : GevParams{0.0, 1.0, 0.1});
  if (!std::isfinite(f(start))) start = encode_base({0.0, 1.0, 0.0});
  if (!std::isfinite(f(start))) start = encode_base({0.0, 2.0, 0.0});

  FitResult out;
  const OptimResult r = maximize_with_restarts(f, start, opts, out.restarts, out.n_evals);
  out.params = fp.st.to_original(decode_base(r.x));
  out.loglik = loglik_marginal(frame, out.params);
  finish(out, f, r, opts);
  return out;
}

// ---------------------------------------------------------------------------
// Profile likelihood

namespace {

// Target written as the q-quantile of the maximum over M blocks: either a
// return level (solve for the quantile) or an exceedance probability (solve
// for q at a fixed threshold).
struct QuantileForm {
  double log_m = 0.0;
  bool exceedance = false;
  double prob = 0.5;       // return level only
  double threshold = 0.0;  // exceedance only
};

QuantileForm quantile_form(const ProfileTarget& target) {
  if (const auto* rl = std::get_if<ReturnLevelTarget>(&target)) {
    const double mult = rl->years * rl->blocks_per_year;
    if (!(mult > 0.0) || !(rl->prob > 0.0 && rl->prob < 1.0)) {
      throw std::invalid_argument("return level target needs a positive horizon and prob in (0, 1)");
    }
    return {std::log(mult), false, rl->prob, 0.0};
  }
  const auto& ex = std::get<ExceedanceTarget>(target);
  if (!(ex.horizon > 0.0)) throw std::invalid_argument("exceedance target needs a positive horizon");
  return {std::log(ex.horizon), true, 0.5, ex.threshold};
}

// Location mu such that the q-quantile of the M-block maximum equals x.
double solve_location(double x, double q, double sigma, double xi, double log_m) {
  const double ell = -std::log(-std::log(q));
  return x - sigma * (stability_shift(xi, log_m) + std::exp(xi * log_m) * stability_shift(xi, ell));
}

// Search coordinate: the return level itself, or logit of the exceedance probability.
double to_search(const QuantileForm& qf, double value) {
  return qf.exceedance ? std::log(value) - std::log1p(-value) : value;
}
double from_search(const QuantileForm& qf, double s) { return qf.exceedance ? 1.0 / (1.0 + std::exp(-s)) : s; }

}  // namespace

double target_value(const ProfileTarget& target, const GevParams& p) {
  const QuantileForm qf = quantile_form(target);
  const GevParams pm = max_stability_map(p, {std::exp(qf.log_m)});
  if (qf.exceedance) return std::exp(gev_logsf(qf.threshold, pm));
  return gev_quantile(qf.prob, pm);
}

std::string target_label(const ProfileTarget& target) {
  if (const auto* rl = std::get_if<ReturnLevelTarget>(&target)) {
    return "return_level(years=" + std::to_string(rl->years) + ",blocks_per_year=" +
           std::to_string(rl->blocks_per_year) + ",prob=" + std::to_string(rl->prob) + ")";
  }
  const auto& ex = std::get<ExceedanceTarget>(target);
  return "exceed_prob(threshold=" + std::to_string(ex.threshold) + ",horizon=" + std::to_string(ex.horizon) + ")";
}

ProfileCI profile_ci(const ParamLoglik& loglik, const FitResult& fit, const ProfileTarget& target, double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("profile_ci: level must lie in (0, 1)");
  if (!std::isfinite(fit.loglik)) throw std::invalid_argument("profile_ci: requires a fitted model");
  const QuantileForm qf = quantile_form(target);
  const double sigma_ref = fit.params.sigma;
  const double cutoff = boost::math::quantile(boost::math::chi_squared(1.0), level);

  ProfileCI ci;
  ci.level = level;
  ci.target = target_label(target);
  ci.estimate = target_value(target, fit.params);
  double lmax = fit.loglik;

  auto params_for = [&](double value, std::span<const double> eta) {
    const double sigma = sigma_ref * std::exp(eta[0]);
    const double xi = eta[1];
    const double x = qf.exceedance ? qf.threshold : value;
    const double q = qf.exceedance ? 1.0 - value : qf.prob;
    return GevParams{solve_location(x, q, sigma, xi, qf.log_m), sigma, xi};
  };

  OptimOptions inner;
  inner.simplex_step = 0.05;
  inner.simplex_max_evals = 400;
  std::vector<double> warm{0.0, fit.params.xi};

  auto deviance = [&](double s, std::vector<double>& eta) {
    const double value = from_search(qf, s);
    if (qf.exceedance && !(value > 0.0 && value < 1.0)) return kInf;
    const Objective f = [&](std::span<const double> e) {
      if (!(e[1] > kXiMin && e[1] < kXiMax)) return -kInf;
      return loglik(params_for(value, e));
    };
    std::vector<double> start = eta;
    if (!std::isfinite(f(start))) start = warm;
    if (!std::isfinite(f(start))) {
      // Scan shapes for a feasible start.
      bool found = false;
      for (double ls : {0.0, 0.5, -0.5, 1.0}) {
        for (double xi : {-0.3, 0.0, 0.3, 0.6, 1.0, -0.6}) {
          start = {ls, xi};
          if (std::isfinite(f(start))) {
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) return kInf;
    }
    const OptimResult r = maximize(f, start, inner);
    if (!std::isfinite(r.value)) return kInf;
    eta = r.x;
    if (r.value > lmax) lmax = r.value;  // a better optimum than the supplied fit
    return 2.0 * (lmax - r.value);
  };

  const double s_hat = to_search(qf, ci.estimate);
  std::vector<double> eta_hat = warm;
  (void)deviance(s_hat, eta_hat);

  // Local curvature sets the initial step.
  const double h = qf.exceedance ? 0.05 : 0.05 * std::max(sigma_ref, 1e-8);
  std::vector<double> eta_tmp = eta_hat;
  const double d_plus = deviance(s_hat + h, eta_tmp);
  eta_tmp = eta_hat;
  const double d_minus = deviance(s_hat - h, eta_tmp);
  double curvature = 0.5 * (d_plus + d_minus) / (h * h);
  if (!std::isfinite(curvature) || curvature <= 0.0) curvature = 1.0 / (h * h);
  const double base_step = 0.5 * std::sqrt(cutoff / curvature);

  auto search_side = [&](double direction, double& bound, bool& open) {
    std::vector<double> eta = eta_hat;
    double s_prev = s_hat;
    double d_prev = 0.0;
    double step = base_step;
    std::vector<double> eta_prev = eta;
    for (int k = 0; k < 80; ++k) {
      const double s = s_prev + direction * step;
      double d = deviance(s, eta);
      ci.trace.emplace_back(from_search(qf, s), d);
      if (!std::isfinite(d)) d = kInf;
      if (d < d_prev - 1e-3 && d_prev > 1e-3) ci.non_unimodal = true;
      if (d >= cutoff) {
        // Bisect on [s_prev, s].
        double a = s_prev, b = s;
        std::vector<double> eta_a = eta_prev;
        const double tol = qf.exceedance ? 1e-5 : 1e-5 * std::max(std::abs(s_hat), sigma_ref);
        for (int it = 0; it < 60 && std::abs(b - a) > tol; ++it) {
          const double mid = 0.5 * (a + b);
          std::vector<double> eta_mid = eta_a;
          const double dm = deviance(mid, eta_mid);
          if (std::isfinite(dm) && dm < cutoff) {
            a = mid;
            eta_a = eta_mid;
          } else {
            b = mid;
          }
        }
        bound = from_search(qf, 0.5 * (a + b));
        open = false;
        return;
      }
      s_prev = s;
      d_prev = d;
      eta_prev = eta;
      if (k >= 3) step *= 1.5;
      if (qf.exceedance && std::abs(s) > 40.0) break;
    }
    open = true;
    bound = qf.exceedance ? (direction > 0 ? 1.0 : 0.0) : direction * kInf;
  };

  search_side(-1.0, ci.lower, ci.lower_open);
  search_side(+1.0, ci.upper, ci.upper_open);
  if (lmax > fit.loglik + 1e-6) ci.non_unimodal = true;
  if (ci.lower > ci.estimate) ci.lower = ci.estimate;
  if (ci.upper < ci.estimate) ci.upper = ci.estimate;
  std::sort(ci.trace.begin(), ci.trace.end());
  return ci;
}

ProfileCI profile_ci(std::span<const double> maxima, const DataTreatment& treatment, const FitResult& fit,
                     const ProfileTarget& target, double level) {
  std::vector<double> data(maxima.begin(), maxima.end());
  const ParamLoglik ll = [data = std::move(data), treatment](const GevParams& p) {
    return loglik_gev(data, p, treatment);
  };
  return profile_ci(ll, fit, target, level);
}

ProfileCI profile_ci(const BlockFrame& frame, const FitResult& null_fit, const ProfileTarget& target, double level) {
  const double m = frame.m();
  const ParamLoglik ll = [&frame, m](const GevParams& p) {
    return loglik_blocks(frame, p, max_stability_map(p, {m}));
  };
  return profile_ci(ll, null_fit, target, level);
}

}  // namespace maxstab
