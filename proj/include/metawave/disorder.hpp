#pragma once

#include <cstdint>
#include <vector>

#include "metawave/circuit.hpp"

namespace metawave {

// Ensemble description for resonator-frequency disorder: each cell's
// resonance is drawn independently from Normal(omega0, sigma_rel * omega0).
struct DisorderConfig {
  int n_cells = 100;
  long long n_realizations = 100000;
  double sigma_rel = 0.005;
  std::uint64_t seed = 1;
};

// Localization lengths (meters) on a frequency grid.  mc_stderr is the
// Monte Carlo standard error of the combined inverse length (1/m).
struct LocalizationProfile {
  std::vector<double> freq;
  std::vector<double> ell_disorder;
  std::vector<double> ell_loss;
  std::vector<double> ell_total;
  std::vector<double> mc_stderr;
};

enum class EdgeTag { low, high };

// Effective scattering strength at a band edge for resonator-frequency
// disorder of relative width sigma_rel: the rate ratio squared times the
// frequency shift in units of the gap.  The low edge diverges as the
// internal loss vanishes (returns +infinity at gamma_i = 0).
double sigma_eff(EdgeTag edge, double gamma_e, double gamma_i, double delta,
                 double sigma_rel, double omega0);

// Band-edge localization length 2*Gamma(1/6)/(6^(1/3)*sqrt(pi)) *
// sigma^(-2/3) * d; +infinity at sigma = 0.
double analytic_loc_length(double sigma, double d);

// Attenuation length of the clean lossy lattice, 1/Im(k).
double loss_loc_length(double omega, const CapacitiveCell& cell,
                       double gamma_i);

// Harmonic combination 1/ell = 1/ell_d + 1/ell_l; an infinite partner is
// absorbed.
double combine_loc(double ell_d, double ell_l);

// Transfer-matrix Lyapunov estimate over the disorder ensemble, evaluated
// on the given frequency grid (rad/s).  Each realization is an n_cells
// segment of a long disordered chain: within a processing chunk the
// propagated state carries over between consecutive realizations, so the
// per-segment log-norm rates converge to the asymptotic amplitude decay
// rate even when the localization length far exceeds one segment.  The
// cascade runs twice per realization - with gamma_i for the combined
// length and loss-free for the disorder-only length - on common disorder
// draws.  ell_disorder is reported in the average-transmission convention
// (2 / disorder-induced excess rate); ell_total combines that scattering
// rate with the clean attenuation im(k); ell_loss carries the clean
// lossy-lattice attenuation length.  Deterministic for a given (config,
// seed) and independent of the worker-thread count.
LocalizationProfile monte_carlo_localization(const CapacitiveCell& cell,
                                             const DisorderConfig& config,
                                             const std::vector<double>& freqs,
                                             double gamma_i);

}  // namespace metawave
