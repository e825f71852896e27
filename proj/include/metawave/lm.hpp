#pragma once

#include <Eigen/Dense>
#include <functional>

namespace metawave {

struct LMOptions {
  int max_iterations = 200;
  // Stop when the relative cost reduction falls below ftol, or the step
  // shrinks below xtol relative to the parameter vector.
  double ftol = 1e-14;
  double xtol = 1e-14;
  double initial_damping = 1e-3;
  // Relative step for the forward-difference Jacobian.
  double fd_step = 1e-7;
};

struct LMResult {
  Eigen::VectorXd params;
  double cost = 0.0;  // sum of squared residuals at params
  int iterations = 0;
  bool converged = false;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Damped least squares with a numerically estimated Jacobian. Box bounds are
// enforced by projection after every trial step; pass +-infinity entries for
// unbounded parameters.
LMResult levenberg_marquardt(const ResidualFn& residuals,
                             const Eigen::VectorXd& init,
                             const Eigen::VectorXd& lower,
                             const Eigen::VectorXd& upper,
                             const LMOptions& options = {});

}  // namespace metawave
