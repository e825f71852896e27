#pragma once

#include <stdexcept>
#include <string>

#include "metawave/constants.hpp"

namespace metawave {

// Geometry and impedance of the host coplanar-waveguide section that each
// unit cell is built from.  All quantities SI: ohms, dimensionless index,
// meters.
struct WaveguideSpec {
  double z0 = 50.0;  // characteristic impedance, ohm
  double n = 1.0;    // phase index of the bare line
  double d = 1.0;    // unit-cell pitch, m
};

// One unit cell of the capacitively loaded line: a series inductance l0 and
// shunt capacitance c0 representing the stretch of waveguide, plus an LC
// resonator (lr, cr) attached through a coupling capacitance ck.
struct CapacitiveCell {
  double c0 = 0.0;  // waveguide shunt capacitance per cell, F
  double l0 = 0.0;  // waveguide series inductance per cell, H
  double cr = 0.0;  // resonator capacitance, F
  double lr = 0.0;  // resonator inductance, H
  double ck = 0.0;  // coupling capacitance, F
  double d = 1.0;   // cell pitch, m
};

// Dual arrangement: the resonator couples through a shared inductance lk
// instead of a coupling capacitor.
struct InductiveCell {
  double c0 = 0.0;  // waveguide shunt capacitance per cell, F
  double l0 = 0.0;  // waveguide series inductance per cell, H
  double cr = 0.0;  // resonator capacitance, F
  double lr = 0.0;  // resonator inductance, H
  double lk = 0.0;  // coupling inductance, H
  double d = 1.0;   // cell pitch, m
};

enum class Coupling { capacitive, inductive };

// Renormalized element values after eliminating the coupling element.  For a
// capacitive cell the three x-values are capacitances (x0 = c0', xr = cr',
// xk = ck'); for an inductive cell they are inductances.  omega0 is the
// dressed resonator frequency seen by the line, rad/s.
struct EffectiveParams {
  double x0 = 0.0;
  double xr = 0.0;
  double xk = 0.0;
  double omega0 = 0.0;
  Coupling kind = Coupling::capacitive;
};

// Side-coupled resonator as seen from a matched line: pole frequency of the
// shunt admittance and the external (radiative) decay rate into the line.
struct PortParams {
  double omega0_side = 0.0;  // shunt-admittance pole, rad/s
  double gamma_e = 0.0;      // external coupling rate, rad/s
};

// Star-mesh reduction of the coupling network.  The shared coupling
// capacitor is absorbed into renormalized shunt, resonator, and bridge
// elements: with s = ck*cr + ck*c0 + c0*cr,
//   c0' = s/(ck+cr),  cr' = s/(ck+c0),  ck' = s/ck,
// and the dressed resonator frequency omega0 = 1/sqrt(lr*cr').
EffectiveParams derive_effective(const CapacitiveCell& cell);

// Inductive dual of the reduction above with the roles of L and C swapped.
EffectiveParams derive_effective(const InductiveCell& cell);

// Dispersion of the bare (resonator-decoupled) discrete line,
//   Omega_k = 2*|sin(k d/2)| / sqrt(l0*c0'),
// which uses the renormalized shunt capacitance so that the photonic branch
// already carries the capacitive loading of the couplers.
double bare_dispersion(double k, const CapacitiveCell& cell);

// Photon-resonator coupling rate at Bloch momentum k,
//   g_k = ck*sqrt(omega0*Omega_k) / (2*sqrt((c0+ck)*(cr+ck))).
double coupling_g(double k, const CapacitiveCell& cell);

// Inductive dual: g_k = sqrt(l0'*lr')/(2*lk') * sqrt(omega0*Omega_k).
double coupling_g(double k, const InductiveCell& cell);

// Dimensionless coupling strength eta = g_k^2/(omega0*Omega_k), independent
// of k.  For the capacitive cell eta = ck^2/(4*(c0+ck)*(cr+ck)) < 1/4.
double coupling_eta(const CapacitiveCell& cell);
double coupling_eta(const InductiveCell& cell);

// Pole frequency and external rate of the side resonator loading a line of
// impedance z0_line:
//   omega0_side = 1/sqrt(lr*(cr+ck)),
//   gamma_e     = (z0_line/(2*lr)) * (ck/(cr+ck))^2.
PortParams resonator_port_params(const CapacitiveCell& cell, double z0_line);

// Effective transmission-line view of the loaded cell far from resonance:
// phase index n_eff = c*sqrt(l0*c0')/d and impedance z_eff = sqrt(l0/c0'),
// at the original pitch.
WaveguideSpec effective_spec(const CapacitiveCell& cell);

// Build a unit cell realizing a requested stop band on a given host line.
// midgap_ghz and span_ghz are the band-gap center and width in GHz;
// coupling_fraction u = ck/(cr+ck) fixes how the coupler/resonator split is
// resolved (the band edges alone do not).  The host line fixes
// l0 = z0*n*d/c and c0 = n*d/(z0*c); the gap-edge ratio fixes eta, and u
// then determines ck, cr, and lr.
CapacitiveCell cell_from_spec(const WaveguideSpec& spec, double midgap_ghz,
                              double span_ghz, double coupling_fraction = 0.95);

// Decay rate of a mode of quality factor q at frequency omega: gamma = omega/q.
double gamma_from_q(double omega, double q);

// Thrown when element values or fit targets are outside the physical domain.
class circuit_error : public std::invalid_argument {
 public:
  explicit circuit_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace metawave
