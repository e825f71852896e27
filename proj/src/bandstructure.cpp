#include "metawave/bandstructure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace metawave {

namespace {

// Hybridization weights of a branch at frequency omega against a resonator
// at omega0 with coupling g.  Unit-norm (photon, resonator) amplitudes; the
// decoupled resonator branch is the g -> 0 limit (0, 1).
ModeWeights branch_weights(double omega, double omega0, double g) {
  const double detune = omega - omega0;
  const double norm = std::sqrt(detune * detune + g * g);
  if (norm == 0.0) {
    return {0.0, 1.0};
  }
  return {detune / norm, g / norm};
}

cplx abs_components(cplx k) {
  return {std::abs(k.real()), std::abs(k.imag())};
}

}  // namespace

BandPoint rwa_bands(double k, const CapacitiveCell& cell) {
  const EffectiveParams eff = derive_effective(cell);
  const double omega_k = bare_dispersion(k, cell);
  const double g = coupling_g(k, cell);
  const double mean = 0.5 * (omega_k + eff.omega0);
  const double split =
      0.5 * std::sqrt((omega_k - eff.omega0) * (omega_k - eff.omega0) +
                      4.0 * g * g);
  BandPoint point;
  point.omega_minus = mean - split;
  point.omega_plus = mean + split;
  point.weights_minus = branch_weights(point.omega_minus, eff.omega0, g);
  point.weights_plus = branch_weights(point.omega_plus, eff.omega0, g);
  return point;
}

BandPoint exact_bands(double k, const CapacitiveCell& cell) {
  const EffectiveParams eff = derive_effective(cell);
  const double omega_k = bare_dispersion(k, cell);
  const double g = coupling_g(k, cell);
  const double w0sq = eff.omega0 * eff.omega0;
  const double wksq = omega_k * omega_k;
  // omega^2 are the roots of x^2 - (Omega^2 + omega0^2) x
  //   + omega0*Omega*(omega0*Omega - 4 g^2) = 0; the smaller root is formed
  // as product/larger to avoid cancellation.
  const double trace = wksq + w0sq;
  const double prod = eff.omega0 * omega_k * (eff.omega0 * omega_k - 4.0 * g * g);
  const double disc = std::sqrt(
      std::max(0.0, trace * trace - 4.0 * prod));
  const double x_plus = 0.5 * (trace + disc);
  const double x_minus = (x_plus > 0.0) ? prod / x_plus : 0.0;
  BandPoint point;
  point.omega_plus = std::sqrt(x_plus);
  point.omega_minus = std::sqrt(std::max(0.0, x_minus));
  point.weights_minus = branch_weights(point.omega_minus, eff.omega0, g);
  point.weights_plus = branch_weights(point.omega_plus, eff.omega0, g);
  return point;
}

std::array<double, 4> brute_force_bands(double k, const CapacitiveCell& cell) {
  const EffectiveParams eff = derive_effective(cell);
  const double omega_k = bare_dispersion(k, cell);
  const double g = coupling_g(k, cell);
  const double w0 = eff.omega0;

  // Dynamical matrix J*H in the (a_k, a_-k^dag, b_k, b_-k^dag) basis, with
  // H the quadratic Hamiltonian kernel and J = diag(1,-1,1,-1) the bosonic
  // symplectic form.
  Eigen::Matrix4d jh;
  jh << omega_k, 0.0, g, -g,
        0.0, -omega_k, g, -g,
        g, -g, w0, 0.0,
        g, -g, 0.0, -w0;

  const Eigen::EigenSolver<Eigen::Matrix4d> solver(jh);
  std::array<double, 4> freqs{};
  for (int i = 0; i < 4; ++i) {
    freqs[static_cast<size_t>(i)] = solver.eigenvalues()[i].real();
  }
  std::sort(freqs.begin(), freqs.end());
  return freqs;
}

BandEdges band_edges(const CapacitiveCell& cell) {
  const EffectiveParams eff = derive_effective(cell);
  const double eta = coupling_eta(cell);
  BandEdges edges;
  edges.omega_c_plus = eff.omega0;
  edges.omega_c_minus = eff.omega0 * std::sqrt(1.0 - 4.0 * eta);
  return edges;
}

cplx inverse_dispersion(double omega, const CapacitiveCell& cell,
                        double gamma_i) {
  const EffectiveParams eff = derive_effective(cell);
  const BandEdges edges = band_edges(cell);
  const double wsq = omega * omega;
  const cplx loss(0.0, omega * gamma_i);
  const cplx numer = edges.omega_c_plus * edges.omega_c_plus - wsq + loss;
  const cplx denom = edges.omega_c_minus * edges.omega_c_minus - wsq + loss;
  const cplx w_param =
      0.25 * wsq * cell.l0 * eff.x0 * numer / denom;
  const cplx kd = 2.0 * std::asin(std::sqrt(w_param));
  return abs_components(kd / cell.d);
}

double edge_expansion(double omega, const BandEdges& edges,
                      const WaveguideSpec& spec) {
  if (!(omega > 0.0)) {
    throw std::domain_error("edge_expansion requires omega > 0");
  }
  if (omega >= edges.omega_c_plus) {
    const double detune = omega - edges.omega_c_plus;
    return spec.n * edges.omega_c_plus / c_light *
           std::sqrt(detune / edges.delta());
  }
  if (omega < edges.omega_c_minus) {
    const double detune = edges.omega_c_minus - omega;
    return spec.n * edges.omega_c_minus / c_light *
           std::sqrt(edges.delta() / detune);
  }
  throw std::domain_error(
      "edge_expansion is undefined inside the stop band");
}

cplx group_index(double omega, const CapacitiveCell& cell, double gamma_i) {
  const BandEdges edges = band_edges(cell);
  const double n_eff = effective_spec(cell).n;
  const double wc_plus = edges.omega_c_plus;
  const double wc_minus = edges.omega_c_minus;

  if (omega >= edges.midgap()) {
    // Upper edge: k ~ (n w/c) sqrt((w + wc+) z / (w^2 - wc-^2)) with the
    // loss folded into the singular factor z = (w - wc+) - i w g_i/(w + wc+)
    // so that (w + wc+) z = w^2 - wc+^2 - i w g_i exactly.
    const double u_f = omega + wc_plus;
    const double w_reg = omega * omega - wc_minus * wc_minus;
    const cplx z(omega - wc_plus, -omega * gamma_i / u_f);
    const double s_up =
        n_eff * omega * std::sqrt(u_f) / (2.0 * std::sqrt(w_reg));
    // Derivative of the regular prefactor n w sqrt(u_f/w_reg); evaluated
    // with the lossless edge distance clamped at zero so the shared
    // sqrt(z)-phase of the singular term is preserved at the edge.
    const double detune_reg = std::max(omega - wc_plus, 0.0);
    const double reg_deriv =
        n_eff * std::sqrt(u_f) / std::sqrt(w_reg) +
        n_eff * omega / (2.0 * std::sqrt(u_f) * std::sqrt(w_reg)) -
        n_eff * omega * omega * std::sqrt(u_f) /
            (w_reg * std::sqrt(w_reg));
    const cplx n_g = s_up / std::sqrt(z) + std::sqrt(detune_reg) * reg_deriv;
    return abs_components(n_g);
  }

  // Lower edge: k ~ (n w/c) sqrt((wc+^2 - w^2)/((w + wc-) zh)) with
  // zh = (wc- - w) + i w g_i/(w + wc-); only the singular zh^(-3/2) term is
  // kept so the edge phase stays pi/4-pure.
  const double p = wc_plus * wc_plus - omega * omega;
  const double q = omega + wc_minus;
  const cplx zh(wc_minus - omega, omega * gamma_i / q);
  const double s_low = n_eff * omega * std::sqrt(p) / (2.0 * std::sqrt(q));
  const cplx n_g = s_low / (zh * std::sqrt(zh));
  return abs_components(n_g);
}

cplx circuit_dispersion(double omega, const WaveguideSpec& line,
                        const PortParams& port, double gamma_i,
                        bool discrete) {
  const double pole_sq = port.omega0_side * port.omega0_side;
  const cplx pole_term(pole_sq - omega * omega, omega * gamma_i);
  const double load = 2.0 * port.gamma_e * c_light / (line.n * line.d);
  const cplx bracket = 1.0 + load / pole_term;
  if (!discrete) {
    const cplx k = line.n * omega / c_light * std::sqrt(bracket);
    return abs_components(k);
  }
  const double phase = omega * line.n * line.d / c_light;
  const cplx cos_kd = 1.0 - 0.5 * phase * phase * bracket;
  const cplx kd = std::acos(cos_kd);
  return abs_components(kd / line.d);
}

}  // namespace metawave
