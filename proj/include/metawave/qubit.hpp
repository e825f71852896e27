#pragma once

#include <functional>
#include <vector>

#include "metawave/bandstructure.hpp"
#include "metawave/circuit.hpp"

namespace metawave {

// Transmon qubit in the weakly anharmonic regime.  Energies are in
// joules, capacitances in farads; flux is the bias in units of the flux
// quantum.  The Josephson-to-charging energy ratio must stay in the
// transmon regime (>= 20 at zero flux).
struct TransmonParams {
  double ej_max = 0.0;
  double ec = 0.0;
  double cq = 0.0;
  double cg = 0.0;
  double flux = 0.0;
};

// Waveguide environment seen from the qubit port: a chain of n_cells
// loaded cells (total length x = n_cells*d) with internal resonator loss
// gamma_i, terminated resistively in r_load.
struct QubitEnvironment {
  CapacitiveCell cell;
  int n_cells = 9;
  double r_load = 50.0;
  double gamma_i = 0.0;

  double x() const { return static_cast<double>(n_cells) * cell.d; }

  QubitEnvironment with_cells(int n) const {
    QubitEnvironment out = *this;
    out.n_cells = n;
    return out;
  }
};

// Josephson energy ej_max*cos(2*pi*flux); std::domain_error outside the
// positive branch.
double josephson_energy(const TransmonParams& p);

// Transition frequency from hbar*omega = sqrt(8*ec*ej) - ec (rad/s).
double transmon_frequency(const TransmonParams& p);

struct LinearizedQubit {
  double l_j;      // Josephson inductance (H)
  double omega_q;  // frequency of the linearized LC circuit (rad/s)
};
LinearizedQubit linearized_qubit(const TransmonParams& p);

// Shunt capacitance for which the linearized frequency coincides with the
// transmon transition at zero flux.
double calibrate_cq(const TransmonParams& p);

// Input impedance of the terminated periodic line seen from the qubit end.
struct LineImpedance {
  cplx exact;         // image-parameter (tanh) form, valid at any frequency
  cplx approx;        // deep-gap form  Z_B + 4*r_load*exp(-2*im(k)*x)
  bool approx_valid;  // evanescent, im(k)*x >= 2, and r_load <= |Z_B|/2
};
LineImpedance bloch_line_impedance(double omega, const QubitEnvironment& env);

// Admittance of the coupling capacitor in series with the line:
// Y = i*omega*cg / (1 + z_line*i*omega*cg).
cplx load_admittance(double omega, double cg, cplx z_line);
cplx load_admittance(double omega, const TransmonParams& p,
                     const QubitEnvironment& env);

// Dispersive frequency pull of the qubit by the loaded line.
struct LambShift {
  double raw;         // -(omega^2 l_j / 2) * im(Y_L)
  double capacitive;  // z_line = 0 limit of raw: the bare coupling-
                      // capacitor pull -omega^3*l_j*cg/2 (equals
                      // -omega*cg/(2*cq) at the linearized frequency)
  double anomalous;   // raw - capacitive: the part shaped by the line
  bool weak;          // |raw| small against the band-edge detuning
};
LambShift lamb_shift(double omega_q, const TransmonParams& p,
                     const QubitEnvironment& env);

// Radiative decay through the coupling capacitor.
struct PurcellDecay {
  double kappa;       // omega^2 * l_j * re(Y_L)  (rad/s)
  double t_rad;       // 1/kappa
  double t_rad_deep;  // closed form cq*exp(2*im(k)*x)/(4 omega^2 cg^2 r_load)
};
PurcellDecay purcell_decay(double omega_q, const TransmonParams& p,
                           const QubitEnvironment& env);

// In-band emission rate gamma = (length/c) * f^2 * n_g for a coupling
// strength f (rad/s) and group index n_g.
double markov_decay_in_band(double f_coupling, double length_l, double n_g);

// Complex roots of the total admittance (line + coupling + qubit) whose
// real part lies in [omega_lo, omega_hi]: dressed frequency = re, decay
// rate = -2*im.
std::vector<cplx> strong_coupling_poles(const TransmonParams& p,
                                        const QubitEnvironment& env,
                                        double omega_lo, double omega_hi);

// Relative lifetime slope |dT_rad/domega|/T_rad (lhs, from a centered
// finite difference of the deep-gap lifetime shape) against the group
// delay x*|im(n_g)|/c (rhs), both in seconds.
struct SlopeIdentity {
  double lhs;
  double rhs;
};
SlopeIdentity lifetime_slope_identity(double omega,
                                      const QubitEnvironment& env,
                                      double gamma_i);

// Emission rates of the first two transitions; the upper one carries the
// doubled dipole weight at its own frequency omega_fe = omega_ge - ec/hbar.
struct TwoRates {
  double omega_ge;
  double omega_fe;
  double gamma_ge;
  double gamma_fe;
};
TwoRates two_transition_rates(
    const TransmonParams& p,
    const std::function<double(double)>& single_photon_rate);
TwoRates two_transition_rates(const TransmonParams& p,
                              const QubitEnvironment& env);

// Coupling capacitance for which the geometric mean of the anomalous
// shift magnitudes just inside the two band edges equals target_shift.
double calibrate_cg(const TransmonParams& p, const QubitEnvironment& env,
                    double target_shift);

// Aggregate observables at the qubit's own transition frequency;
// t_int is a phenomenological intrinsic lifetime (infinity to disable).
struct QubitPrediction {
  double omega_q_bare;
  double lamb_raw;
  double lamb_anomalous;
  double kappa;
  double t_rad;
  double t1_total;
};
QubitPrediction predict_qubit(const TransmonParams& p,
                              const QubitEnvironment& env, double t_int);

}  // namespace metawave
