#pragma once

#include <vector>

#include "metawave/circuit.hpp"
#include "metawave/twoport.hpp"

namespace metawave {

// A finite chain of loaded cells between resistive ports.
// gamma_i is the resonator loss rate (full width: q_i = omega0/gamma_i),
// realized as a series resistance gamma_i*lr in the resonator branch.
// By default the chain repeats `cell` n_cells times; filling `custom_cells`
// instead cascades those cells in order (per-cell element values may differ,
// e.g. for disorder studies), and n_cells/cell are ignored.
struct FiniteWaveguide {
  CapacitiveCell cell;
  int n_cells = 1;
  double gamma_i = 0.0;
  double z_left = 50.0;
  double z_right = 50.0;
  std::vector<CapacitiveCell> custom_cells;
};

// A measured or simulated scattering record on an increasing frequency grid.
// freq_hz holds ordinary frequency; s11 may be empty when only transmission
// was recorded.
struct SParamTrace {
  std::vector<double> freq_hz;
  std::vector<cplx> s21;
  std::vector<cplx> s11;
};

// Transfer matrix of one symmetric T-cell at drive frequency omega:
// half the line inductance on each side of the shunt node, which carries
// the line capacitance in parallel with the coupled, lossy resonator.
TwoPort abcd_cell(double omega, const CapacitiveCell& cell, double gamma_i);

// Scattering parameters of the full chain at one frequency.
SMatrix simulate_s21(double omega, const FiniteWaveguide& guide);

// Frequency sweep, evaluated in parallel.
std::vector<SMatrix> simulate_s21(const std::vector<double>& omegas,
                                  const FiniteWaveguide& guide);

// Sweep packaged as a trace: input in ordinary frequency, S11 included.
SParamTrace simulate_trace(const std::vector<double>& freq_hz,
                           const FiniteWaveguide& guide);

// Impedance seen from the left port with the chain terminated in z_load.
cplx input_impedance(double omega, const FiniteWaveguide& guide, cplx z_load);

// Local density of states at the input port, normalized to the same chain
// with the resonators decoupled (ck = 0): the ratio of input conductances.
// Identically 1 for a bare chain; peaked at the hybridized mode frequencies.
double ldos(double omega, const FiniteWaveguide& guide);

}  // namespace metawave
