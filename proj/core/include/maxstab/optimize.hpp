#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace maxstab {

/// Objective to maximize; -inf marks infeasible points.
using Objective = std::function<double(std::span<const double>)>;

struct OptimOptions {
  double simplex_step = 0.25;
  int simplex_max_evals = 1500;
  double simplex_ftol = 1e-9;
  double rel_tol = 1e-8;   // relative objective change that stops the polish
  double grad_tol = 1e-4;  // max-norm of the numerical gradient for convergence
  double fd_step = 1e-6;   // relative central-difference step
  int max_iterations = 200;
};

struct OptimResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  int n_evals = 0;
  double grad_norm = 0.0;
  std::string message;
};

/// Nelder-Mead to locate the basin, then BFGS with central-difference
/// gradients to polish.
[[nodiscard]] OptimResult maximize(const Objective& f, std::vector<double> x0, const OptimOptions& opts = {});

[[nodiscard]] std::vector<double> numerical_gradient(const Objective& f, std::span<const double> x, double rel_step,
                                                     int* evals = nullptr);

/// Central-difference Hessian, row-major p x p.
[[nodiscard]] std::vector<double> numerical_hessian(const Objective& f, std::span<const double> x, double step = 1e-4);

/// True when the symmetric p x p matrix is negative definite (Cholesky of -H).
[[nodiscard]] bool negative_definite(std::vector<double> h, std::size_t p);

}  // namespace maxstab
