#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "metawave/transmission.hpp"

namespace metawave {

// Single-resonance lineshape parameters: center, internal and external
// widths (full widths; Q = omega0/gamma), and the background rotation.
struct FanoFit {
  double omega0 = 0.0;
  double gamma_i = 0.0;
  double gamma_e = 0.0;
  double phi0 = 0.0;     // in (-pi, pi]
  double residual = 0.0;  // RMS of the complex misfit
};

// Full-chain model parameters recovered from a transmission trace. The
// frequency scale factor maps model frequencies onto data frequencies
// (data = scale * model).
struct LumpedFit {
  CapacitiveCell cell;
  double gamma_i = 0.0;
  double scale = 1.0;
  double residual = 0.0;  // RMS dB misfit
};

class fano_fit_error : public std::runtime_error {
 public:
  fano_fit_error(const std::string& msg, FanoFit best_so_far)
      : std::runtime_error(msg), best_(best_so_far) {}
  const FanoFit& best() const { return best_; }

 private:
  FanoFit best_;
};

class lumped_fit_error : public std::runtime_error {
 public:
  lumped_fit_error(const std::string& msg, LumpedFit best_so_far)
      : std::runtime_error(msg), best_(best_so_far) {}
  const LumpedFit& best() const { return best_; }

 private:
  LumpedFit best_;
};

// Transmission past a side-coupled resonance: unit background minus a
// rotated Lorentzian dip.
cplx fano_s21(double omega, double omega0, double gamma_i, double gamma_e,
              double phi0);

// Least-squares fit of the complex lineshape to the samples inside
// [f_lo_hz, f_hi_hz]. Throws std::invalid_argument for a window with fewer
// than 10 samples and fano_fit_error (carrying the best parameters found)
// on non-convergence.
FanoFit fit_fano(const SParamTrace& trace, double f_lo_hz, double f_hi_hz,
                 const std::optional<FanoFit>& init = std::nullopt);

// Fit of the n-cell chain model to the |S21| trace in dB, multi-started
// from five perturbed copies of the initial guess. The line elements c0 and
// l0 stay frozen at their initial values; ck, cr, lr, gamma_i, and the
// frequency scale factor float. Throws lumped_fit_error on non-convergence.
LumpedFit fit_lumped_model(const SParamTrace& trace, const LumpedFit& init,
                           int n_cells = 9, double z_left = 50.0,
                           double z_right = 50.0);

}  // namespace metawave
