#include "maxstab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace maxstab {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Counts evaluations and maps the maximization to minimization of -f.
class Counted {
 public:
  explicit Counted(const Objective& f) : f_(f) {}
  double operator()(std::span<const double> x) {
    ++evals_;
    const double v = f_(x);
    return std::isfinite(v) ? -v : kInfinity;
  }
  [[nodiscard]] int evals() const { return evals_; }
  void add(int k) { evals_ += k; }

 private:
  const Objective& f_;
  int evals_ = 0;
};

struct Vertex {
  std::vector<double> x;
  double v;
};

void nelder_mead(Counted& g, std::vector<double>& x, double& fx, const OptimOptions& opts) {
  const std::size_t p = x.size();
  std::vector<Vertex> simplex;
  simplex.push_back({x, fx});
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<double> y = x;
    double step = opts.simplex_step * std::max(1.0, std::abs(x[i]) * 0.1);
    double v = kInfinity;
    for (int tries = 0; tries < 12 && !std::isfinite(v); ++tries) {
      y[i] = x[i] + step;
      v = g(y);
      step *= -0.5;
    }
    simplex.push_back({y, v});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.v < b.v; };
  const int budget = g.evals() + opts.simplex_max_evals;
  std::vector<double> centroid(p), trial(p);
  auto point = [&](double coef, const std::vector<double>& worst) {
    for (std::size_t k = 0; k < p; ++k) trial[k] = centroid[k] + coef * (worst[k] - centroid[k]);
    return trial;
  };
  while (g.evals() < budget) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    const double best = simplex.front().v;
    const double worst = simplex.back().v;
    if (std::isfinite(worst) && std::abs(worst - best) <= opts.simplex_ftol * (std::abs(best) + 1e-10)) break;
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < p; ++k) centroid[k] += simplex[j].x[k] / static_cast<double>(p);
    Vertex& w = simplex.back();
    std::vector<double> xr = point(-1.0, w.x);
    const double fr = g(xr);
    if (fr < best) {
      std::vector<double> xe = point(-2.0, w.x);
      const double fe = g(xe);
      if (fe < fr) w = {std::move(xe), fe};
      else w = {std::move(xr), fr};
      continue;
    }
    if (fr < simplex[p - 1].v) {
      w = {std::move(xr), fr};
      continue;
    }
    const bool outside = fr < w.v;
    std::vector<double> xc = outside ? point(-0.5, w.x) : point(0.5, w.x);
    const double fc = g(xc);
    if (fc < std::min(fr, w.v)) {
      w = {std::move(xc), fc};
      continue;
    }
    for (std::size_t j = 1; j <= p; ++j) {
      for (std::size_t k = 0; k < p; ++k) simplex[j].x[k] = simplex[0].x[k] + 0.5 * (simplex[j].x[k] - simplex[0].x[k]);
      simplex[j].v = g(simplex[j].x);
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  x = simplex.front().x;
  fx = simplex.front().v;
}

std::vector<double> gradient_min(Counted& g, std::span<const double> x, double fx, double rel_step) {
  std::vector<double> grad(x.size());
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x[i]));
    y[i] = x[i] + h;
    const double fp = g(y);
    y[i] = x[i] - h;
    const double fm = g(y);
    y[i] = x[i];
    if (std::isfinite(fp) && std::isfinite(fm)) grad[i] = (fp - fm) / (2.0 * h);
    else if (std::isfinite(fp)) grad[i] = (fp - fx) / h;
    else if (std::isfinite(fm)) grad[i] = (fx - fm) / h;
    else grad[i] = std::numeric_limits<double>::quiet_NaN();
  }
  return grad;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::isnan(e) ? kInfinity : std::abs(e));
  return m;
}

}  // namespace

std::vector<double> numerical_gradient(const Objective& f, std::span<const double> x, double rel_step, int* evals) {
  Counted g(f);
  const double fx = g(x);
  std::vector<double> grad = gradient_min(g, x, fx, rel_step);
  for (double& v : grad) v = -v;
  if (evals) *evals += g.evals();
  return grad;
}

std::vector<double> numerical_hessian(const Objective& f, std::span<const double> x, double step) {
  const std::size_t p = x.size();
  std::vector<double> h(p * p, 0.0);
  std::vector<double> y(x.begin(), x.end());
  const double f0 = f(x);
  std::vector<double> steps(p);
  for (std::size_t i = 0; i < p; ++i) steps[i] = step * std::max(1.0, std::abs(x[i]));
  for (std::size_t i = 0; i < p; ++i) {
    y[i] = x[i] + steps[i];
    const double fp = f(y);
    y[i] = x[i] - steps[i];
    const double fm = f(y);
    y[i] = x[i];
    h[i * p + i] = (fp - 2.0 * f0 + fm) / (steps[i] * steps[i]);
    for (std::size_t j = 0; j < i; ++j) {
      double acc = 0.0;
      for (int si = -1; si <= 1; si += 2) {
        for (int sj = -1; sj <= 1; sj += 2) {
          y[i] = x[i] + si * steps[i];
          y[j] = x[j] + sj * steps[j];
          acc += si * sj * f(y);
        }
      }
      y[i] = x[i];
      y[j] = x[j];
      h[i * p + j] = h[j * p + i] = acc / (4.0 * steps[i] * steps[j]);
    }
  }
  return h;
}

bool negative_definite(std::vector<double> h, std::size_t p) {
  for (double& v : h) {
    if (!std::isfinite(v)) return false;
    v = -v;
  }
  for (std::size_t j = 0; j < p; ++j) {
    double d = h[j * p + j];
    for (std::size_t k = 0; k < j; ++k) d -= h[j * p + k] * h[j * p + k];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    h[j * p + j] = d;
    for (std::size_t i = j + 1; i < p; ++i) {
      double s = h[i * p + j];
      for (std::size_t k = 0; k < j; ++k) s -= h[i * p + k] * h[j * p + k];
      h[i * p + j] = s / d;
    }
  }
  return true;
}

OptimResult maximize(const Objective& f, std::vector<double> x0, const OptimOptions& opts) {
  Counted g(f);
  OptimResult res;
  const std::size_t p = x0.size();
  double fx = g(x0);
  if (!std::isfinite(fx)) {
    res.x = std::move(x0);
    res.value = -kInfinity;
    res.n_evals = g.evals();
    res.message = "objective is infeasible at the starting point";
    return res;
  }
  nelder_mead(g, x0, fx, opts);

  // BFGS on -f with an inverse-Hessian approximation.
  std::vector<double> x = x0;
  std::vector<double> grad = gradient_min(g, x, fx, opts.fd_step);
  std::vector<double> hinv(p * p, 0.0);
  auto reset = [&] {
    std::fill(hinv.begin(), hinv.end(), 0.0);
    const double scale = 1.0 / std::max(1.0, max_abs(grad));
    for (std::size_t i = 0; i < p; ++i) hinv[i * p + i] = scale;
  };
  reset();
  bool fresh = true;
  int stall = 0;
  std::vector<double> dir(p), xn(p);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (max_abs(grad) < opts.grad_tol * 0.01) break;
    if (std::any_of(grad.begin(), grad.end(), [](double v) { return std::isnan(v); })) break;
    for (std::size_t i = 0; i < p; ++i) {
      dir[i] = 0.0;
      for (std::size_t j = 0; j < p; ++j) dir[i] -= hinv[i * p + j] * grad[j];
    }
    double slope = std::inner_product(dir.begin(), dir.end(), grad.begin(), 0.0);
    if (!(slope < 0.0)) {
      if (fresh) break;
      reset();
      fresh = true;
      continue;
    }
    double t = 1.0;
    double fn = kInfinity;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t i = 0; i < p; ++i) xn[i] = x[i] + t * dir[i];
      fn = g(xn);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (fresh) break;
      reset();
      fresh = true;
      continue;
    }
    std::vector<double> gn = gradient_min(g, xn, fn, opts.fd_step);
    std::vector<double> s(p), y(p);
    for (std::size_t i = 0; i < p; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - grad[i];
    }
    const double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
    const double rel_change = std::abs(fn - fx) / (std::abs(fx) + 1e-10);
    x = xn;
    fx = fn;
    grad = std::move(gn);
    fresh = false;
    if (sy > 1e-12) {
      std::vector<double> hy(p, 0.0);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) hy[i] += hinv[i * p + j] * y[j];
      const double yhy = std::inner_product(y.begin(), y.end(), hy.begin(), 0.0);
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
          hinv[i * p + j] += (1.0 + yhy * rho) * rho * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
    }
    if (rel_change < opts.rel_tol * 1e-4) {
      if (++stall >= 3 && max_abs(grad) < opts.grad_tol) break;
    } else {
      stall = 0;
    }
  }
  res.x = std::move(x);
  res.value = -fx;
  res.grad_norm = max_abs(grad);
  res.converged = res.grad_norm < opts.grad_tol;
  res.n_evals = g.evals();
  res.message = res.converged ? "converged" : "gradient above tolerance";
  return res;
}

}  // namespace maxstab
