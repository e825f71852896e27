#pragma once

#include <array>
#include <complex>

#include "metawave/circuit.hpp"

namespace metawave {

using cplx = std::complex<double>;

// Amplitudes of the propagating-photon and resonator components of a Bloch
// eigenmode, normalized so photon^2 + resonator^2 = 1.  The photon amplitude
// carries the relative sign of the hybridization (negative below the
// resonator frequency).
struct ModeWeights {
  double photon = 0.0;
  double resonator = 0.0;
};

// Both polariton branches at one Bloch momentum, rad/s.
struct BandPoint {
  double omega_minus = 0.0;
  double omega_plus = 0.0;
  ModeWeights weights_minus;
  ModeWeights weights_plus;
};

// Stop-band boundaries of the infinite lattice, rad/s.  The upper edge is
// the dressed resonator frequency; the lower edge is pulled down by the
// coupling, omega_c_minus = omega0*sqrt(1 - 4*eta).
struct BandEdges {
  double omega_c_minus = 0.0;
  double omega_c_plus = 0.0;
  double delta() const { return omega_c_plus - omega_c_minus; }
  double midgap() const { return 0.5 * (omega_c_plus + omega_c_minus); }
};

// Rotating-wave branches
//   omega_pm = ((Omega_k + omega0) +- sqrt((Omega_k - omega0)^2 + 4 g_k^2))/2
// with hybridization weights evaluated at the branch frequencies.
BandPoint rwa_bands(double k, const CapacitiveCell& cell);

// Branches keeping the counter-rotating terms:
//   omega_pm^2 = ((Omega^2 + omega0^2) +- sqrt((Omega^2 - omega0^2)^2
//                 + 16 g^2 omega0 Omega))/2.
BandPoint exact_bands(double k, const CapacitiveCell& cell);

// All four eigenfrequencies {-omega_plus, -omega_minus, omega_minus,
// omega_plus} of the Bosonic Bogoliubov problem at momentum k, obtained by
// dense diagonalization of the 4x4 dynamical matrix in the
// (a_k, a_-k^dag, b_k, b_-k^dag) basis.  Sorted ascending.
std::array<double, 4> brute_force_bands(double k, const CapacitiveCell& cell);

// Analytic stop-band boundaries of the cell.
BandEdges band_edges(const CapacitiveCell& cell);

// Complex Bloch momentum at a given drive frequency, from the closed-form
// inversion of the lattice dispersion:
//   sin^2(k d/2) = (omega^2 l0 c0'/4) * (omega_c+^2 - omega^2 + i omega g_i)
//                  / (omega_c-^2 - omega^2 + i omega g_i),
// where g_i is the resonator loss rate (full width, q_i = omega0/g_i).
// Returned with Re k in [0, pi/d] (phase advance per meter) and Im k >= 0
// (attenuation per meter); purely imaginary inside the gap when lossless.
cplx inverse_dispersion(double omega, const CapacitiveCell& cell,
                        double gamma_i = 0.0);

// Leading-order lossless momentum near a band edge on a line of index n:
//   below the gap:  k = (n*omega_c-/c) * sqrt(delta/(omega_c- - omega)),
//   above the gap:  k = (n*omega_c+/c) * sqrt((omega - omega_c+)/delta),
// with delta the gap width.  Frequencies inside the gap are outside the
// domain of either branch and raise std::domain_error.
double edge_expansion(double omega, const BandEdges& edges,
                      const WaveguideSpec& spec);

// Complex group index n_g = c * dk/domega near the band edges, keeping the
// resonator loss in the singular edge factor.  Diverges as delta^(-1/2)
// above the upper edge and as delta^(-3/2) below the lower edge; at the
// upper edge with loss the real and imaginary parts are equal.  Components
// are reported as magnitudes (Re >= 0, Im >= 0).
cplx group_index(double omega, const CapacitiveCell& cell, double gamma_i);

// Transmission-line view of the loaded waveguide: a line of index n and
// pitch d, shunt-loaded by resonators with external rate gamma_e and pole
// omega0_side.  With P = omega0_side^2 - omega^2 + i*omega*gamma_i,
//   continuum:  k = (n*omega/c) * sqrt(1 + (2*gamma_e*c/(n*d))/P),
//   discrete:   cos(k d) = 1 - ((omega n d/c)^2/2) * (1 + (2*gamma_e*c/(n*d))/P).
// Same reporting convention as inverse_dispersion.
cplx circuit_dispersion(double omega, const WaveguideSpec& line,
                        const PortParams& port, double gamma_i, bool discrete);

}  // namespace metawave
