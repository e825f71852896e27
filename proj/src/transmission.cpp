#include "metawave/transmission.hpp"

#include <cmath>

#include "metawave/constants.hpp"
#include "metawave/parallel.hpp"

namespace metawave {

namespace {

const cplx i_unit(0.0, 1.0);

// Admittance of the shunt node: line capacitance plus the resonator branch
// (coupling capacitor in series with the damped LC resonator).
cplx shunt_node_admittance(double omega, const CapacitiveCell& cell,
                           double gamma_i) {
  cplx y = i_unit * omega * cell.c0;
  if (cell.ck > 0.0) {
    const cplx z_res = gamma_i * cell.lr + i_unit * omega * cell.lr;
    const cplx y_tank = i_unit * omega * cell.cr + 1.0 / z_res;
    const cplx z_branch = 1.0 / (i_unit * omega * cell.ck) + 1.0 / y_tank;
    y += 1.0 / z_branch;
  }
  return y;
}

// Transfer matrix of the whole chain: a repeated-cell power unless
// explicit per-cell values were supplied.
TwoPort chain_matrix(double omega, const FiniteWaveguide& guide) {
  if (!guide.custom_cells.empty()) {
    TwoPort chain = abcd_cell(omega, guide.custom_cells.front(), guide.gamma_i);
    for (size_t i = 1; i < guide.custom_cells.size(); ++i) {
      chain = cascade(chain, abcd_cell(omega, guide.custom_cells[i],
                                       guide.gamma_i));
    }
    return chain;
  }
  return chain_power(abcd_cell(omega, guide.cell, guide.gamma_i),
                     guide.n_cells);
}

}  // namespace

TwoPort abcd_cell(double omega, const CapacitiveCell& cell, double gamma_i) {
  const TwoPort half = series_impedance(i_unit * omega * (0.5 * cell.l0));
  const TwoPort shunt =
      shunt_admittance(shunt_node_admittance(omega, cell, gamma_i));
  return cascade(cascade(half, shunt), half);
}

SMatrix simulate_s21(double omega, const FiniteWaveguide& guide) {
  return to_scattering(chain_matrix(omega, guide), guide.z_left,
                       guide.z_right);
}

std::vector<SMatrix> simulate_s21(const std::vector<double>& omegas,
                                  const FiniteWaveguide& guide) {
  std::vector<SMatrix> result(omegas.size());
  parallel_for(omegas.size(), [&](size_t i) {
    result[i] = simulate_s21(omegas[i], guide);
  });
  return result;
}

SParamTrace simulate_trace(const std::vector<double>& freq_hz,
                           const FiniteWaveguide& guide) {
  std::vector<double> omegas(freq_hz.size());
  for (size_t i = 0; i < freq_hz.size(); ++i) {
    omegas[i] = two_pi * freq_hz[i];
  }
  const std::vector<SMatrix> swept = simulate_s21(omegas, guide);
  SParamTrace trace;
  trace.freq_hz = freq_hz;
  trace.s21.resize(swept.size());
  trace.s11.resize(swept.size());
  for (size_t i = 0; i < swept.size(); ++i) {
    trace.s21[i] = swept[i].s21;
    trace.s11[i] = swept[i].s11;
  }
  return trace;
}

cplx input_impedance(double omega, const FiniteWaveguide& guide, cplx z_load) {
  const TwoPort chain = chain_matrix(omega, guide);
  return (chain.a * z_load + chain.b) / (chain.c * z_load + chain.d);
}

double ldos(double omega, const FiniteWaveguide& guide) {
  FiniteWaveguide bare = guide;
  bare.cell.ck = 0.0;
  for (CapacitiveCell& c : bare.custom_cells) c.ck = 0.0;
  const cplx y_loaded =
      1.0 / input_impedance(omega, guide, cplx(guide.z_right, 0.0));
  const cplx y_bare =
      1.0 / input_impedance(omega, bare, cplx(bare.z_right, 0.0));
  return y_loaded.real() / y_bare.real();
}

}  // namespace metawave
