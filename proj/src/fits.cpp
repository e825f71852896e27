#include "metawave/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "metawave/constants.hpp"
#include "metawave/lm.hpp"

namespace metawave {

namespace {

const cplx i_unit(0.0, 1.0);

double wrap_angle(double phi) {
  while (phi > pi) phi -= two_pi;
  while (phi <= -pi) phi += two_pi;
  return phi;
}

// Magnitudes are compared on a dB scale with a floor, as on a real
// analyzer: without the floor the near-zero samples beside the stop-band
// notch produce enormous residual slopes that dominate the entire fit.
double clamped_db(double magnitude) {
  return std::max(20.0 * std::log10(std::max(magnitude, 0.0)), -120.0);
}

}  // namespace

cplx fano_s21(double omega, double omega0, double gamma_i, double gamma_e,
              double phi0) {
  return 1.0 - gamma_e * std::exp(i_unit * phi0) /
                   (gamma_i + gamma_e + 2.0 * i_unit * (omega - omega0));
}

FanoFit fit_fano(const SParamTrace& trace, double f_lo_hz, double f_hi_hz,
                 const std::optional<FanoFit>& init) {
  std::vector<double> omega;
  std::vector<cplx> data;
  for (size_t i = 0; i < trace.freq_hz.size(); ++i) {
    if (trace.freq_hz[i] >= f_lo_hz && trace.freq_hz[i] <= f_hi_hz) {
      omega.push_back(two_pi * trace.freq_hz[i]);
      data.push_back(trace.s21[i]);
    }
  }
  if (omega.size() < 10) {
    throw std::invalid_argument(
        "lineshape window must contain at least 10 samples");
  }

  FanoFit guess;
  if (init) {
    guess = *init;
  } else {
    size_t dip = 0;
    for (size_t i = 1; i < data.size(); ++i) {
      if (std::abs(data[i]) < std::abs(data[dip])) dip = i;
    }
    const double gamma_tot = (omega.back() - omega.front()) / 10.0;
    const double t_min = std::clamp(std::abs(data[dip]), 1e-3, 0.99);
    guess.omega0 = omega[dip];
    guess.gamma_i = t_min * gamma_tot;
    guess.gamma_e = (1.0 - t_min) * gamma_tot;
    guess.phi0 = 0.0;
  }

  // Scale every parameter to order one: the center by itself, the widths by
  // the initial total width, so finite-difference steps stay meaningful.
  const double w_ref = guess.omega0;
  const double g_ref = guess.gamma_i + guess.gamma_e;
  const size_t m = omega.size();
  const ResidualFn residuals = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(2 * m);
    for (size_t i = 0; i < m; ++i) {
      const cplx diff = fano_s21(omega[i], x[0] * w_ref, x[1] * g_ref,
                                 x[2] * g_ref, x[3]) -
                        data[i];
      r[2 * i] = diff.real();
      r[2 * i + 1] = diff.imag();
    }
    return r;
  };

  Eigen::VectorXd x0(4), lo(4), hi(4);
  x0 << 1.0, guess.gamma_i / g_ref, guess.gamma_e / g_ref, guess.phi0;
  lo << two_pi * f_lo_hz / w_ref, 1e-8, 1e-8, -pi - 0.5;
  hi << two_pi * f_hi_hz / w_ref, w_ref / g_ref, w_ref / g_ref, pi + 0.5;

  const LMResult result = levenberg_marquardt(residuals, x0, lo, hi);

  FanoFit fit;
  fit.omega0 = result.params[0] * w_ref;
  fit.gamma_i = result.params[1] * g_ref;
  fit.gamma_e = result.params[2] * g_ref;
  fit.phi0 = wrap_angle(result.params[3]);
  fit.residual = std::sqrt(result.cost / static_cast<double>(m));
  if (!result.converged) {
    throw fano_fit_error("lineshape fit did not converge", fit);
  }
  return fit;
}

LumpedFit fit_lumped_model(const SParamTrace& trace, const LumpedFit& init,
                           int n_cells, double z_left, double z_right) {
  const size_t m = trace.freq_hz.size();
  if (m < 10) {
    throw std::invalid_argument("trace must contain at least 10 samples");
  }
  std::vector<double> data_db(m);
  for (size_t i = 0; i < m; ++i) {
    data_db[i] = clamped_db(std::abs(trace.s21[i]));
  }

  const double gamma_ref =
      init.gamma_i > 0.0 ? init.gamma_i
                         : 1e-5 * two_pi * trace.freq_hz[m / 2];

  // Parameters: log of the coupling/resonator elements relative to the
  // initial guess (multiplicative steps, no sign-flip risk), log of the loss
  // rate relative to its reference, and the frequency scale factor.
  const ResidualFn residuals = [&](const Eigen::VectorXd& x) {
    CapacitiveCell cell = init.cell;
    cell.ck = std::exp(x[0]) * init.cell.ck;
    cell.cr = std::exp(x[1]) * init.cell.cr;
    cell.lr = std::exp(x[2]) * init.cell.lr;
    FiniteWaveguide guide{cell, n_cells, std::exp(x[3]) * gamma_ref, z_left,
                          z_right};
    Eigen::VectorXd r(m);
    for (size_t i = 0; i < m; ++i) {
      const double w = two_pi * trace.freq_hz[i] / x[4];
      r[i] = clamped_db(std::abs(simulate_s21(w, guide).s21)) - data_db[i];
    }
    return r;
  };

  const double log_span = std::log(5.0);
  Eigen::VectorXd lo(5), hi(5);
  lo << -log_span, -log_span, -log_span, std::log(1e-6), 0.5 + 1e-9;
  hi << log_span, log_span, log_span, std::log(1e6), 1.5 - 1e-9;

  std::mt19937 gen(20260822u);
  std::uniform_real_distribution<double> elem(-0.15, 0.15);
  std::uniform_real_distribution<double> loss(-1.0, 1.0);
  std::uniform_real_distribution<double> shift(-0.05, 0.05);

  // The dB misfit has a noise floor on measured data, so the cost tolerance
  // is looser than for exact-inversion problems.
  LMOptions options;
  options.ftol = 1e-9;
  options.xtol = 1e-10;

  bool have_converged = false;
  LMResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (int start = 0; start < 5; ++start) {
    Eigen::VectorXd x0(5);
    if (start == 0) {
      x0 << 0.0, 0.0, 0.0, 0.0, init.scale;
    } else {
      x0 << elem(gen), elem(gen), elem(gen), loss(gen),
          std::clamp(init.scale + shift(gen), 0.51, 1.49);
    }
    const LMResult result = levenberg_marquardt(residuals, x0, lo, hi, options);
    const bool better = result.cost < best.cost;
    if (result.converged && (!have_converged || better)) {
      best = result;
      have_converged = true;
    } else if (!have_converged && better) {
      best = result;
    }
  }

  LumpedFit fit;
  fit.cell = init.cell;
  fit.cell.ck = std::exp(best.params[0]) * init.cell.ck;
  fit.cell.cr = std::exp(best.params[1]) * init.cell.cr;
  fit.cell.lr = std::exp(best.params[2]) * init.cell.lr;
  fit.gamma_i = std::exp(best.params[3]) * gamma_ref;
  fit.scale = best.params[4];
  fit.residual = std::sqrt(best.cost / static_cast<double>(m));
  if (!have_converged) {
    throw lumped_fit_error("chain-model fit did not converge from any start",
                           fit);
  }
  return fit;
}

}  // namespace metawave
