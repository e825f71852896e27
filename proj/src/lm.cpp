#include "metawave/lm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace metawave {

namespace {

Eigen::VectorXd clamp_to_box(Eigen::VectorXd x, const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper) {
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    x[j] = std::min(std::max(x[j], lower[j]), upper[j]);
  }
  return x;
}

Eigen::MatrixXd forward_jacobian(const ResidualFn& residuals,
                                 const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& r0,
                                 const Eigen::VectorXd& lower,
                                 const Eigen::VectorXd& upper,
                                 double rel_step) {
  Eigen::MatrixXd jac(r0.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    // Callers scale parameters to order one, so floor the difference step at
    // the relative step itself; a parameter sitting exactly at zero would
    // otherwise get a null Jacobian column.
    double h = rel_step * std::max(std::abs(x[j]), 1.0);
    Eigen::VectorXd xj = x;
    if (x[j] + h <= upper[j]) {
      xj[j] = x[j] + h;
    } else {
      h = -h;
      xj[j] = std::max(x[j] + h, lower[j]);
      h = xj[j] - x[j];
    }
    jac.col(j) = (residuals(xj) - r0) / h;
  }
  return jac;
}

}  // namespace

LMResult levenberg_marquardt(const ResidualFn& residuals,
                             const Eigen::VectorXd& init,
                             const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper,
                             const LMOptions& options) {
  if (lower.size() != init.size() || upper.size() != init.size()) {
    throw std::invalid_argument("bound vectors must match parameter count");
  }

  LMResult result;
  result.params = clamp_to_box(init, lower, upper);
  Eigen::VectorXd r = residuals(result.params);
  result.cost = r.squaredNorm();

  double damping = options.initial_damping;
  int negligible_steps = 0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    result.iterations = iter + 1;
    const Eigen::MatrixXd jac = forward_jacobian(
        residuals, result.params, r, lower, upper, options.fd_step);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;

    if (jtr.lpNorm<Eigen::Infinity>() < 1e-300) {
      result.converged = true;
      break;
    }

    const double max_diag = jtj.diagonal().maxCoeff();
    bool stepped = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      for (Eigen::Index j = 0; j < damped.rows(); ++j) {
        // Floor each damping entry at a fraction of the largest curvature so
        // a locally flat direction cannot make the system singular.
        damped(j, j) += damping * (jtj(j, j) + 1e-12 * max_diag + 1e-300);
      }
      const Eigen::VectorXd step = damped.ldlt().solve(-jtr);
      const Eigen::VectorXd trial =
          clamp_to_box(result.params + step, lower, upper);
      const Eigen::VectorXd r_trial = residuals(trial);
      const double cost_trial = r_trial.squaredNorm();
      if (std::isfinite(cost_trial) && cost_trial < result.cost) {
        const double reduction = result.cost - cost_trial;
        const double step_norm = (trial - result.params).norm();
        result.params = trial;
        r = r_trial;
        result.cost = cost_trial;
        stepped = true;
        // A single tiny step can be an artifact of momentarily high damping;
        // two in a row mean the minimum is resolved.
        if (reduction <= options.ftol * std::max(result.cost, 1e-300) ||
            step_norm <= options.xtol * (result.params.norm() + options.xtol)) {
          if (++negligible_steps >= 2) result.converged = true;
        } else {
          negligible_steps = 0;
        }
        damping = std::max(damping * 0.25, 1e-15);
        break;
      }
      damping *= 4.0;
      if (damping > 1e15) break;
    }
    if (!stepped || result.converged) {
      // No acceptable step at any damping means a (local) minimum within
      // floating-point resolution.
      result.converged = result.converged || !stepped;
      break;
    }
  }
  return result;
}

}  // namespace metawave
