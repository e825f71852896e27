#include "metawave/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "metawave/bandstructure.hpp"
#include "metawave/constants.hpp"
#include "metawave/transmission.hpp"
#include "metawave/twoport.hpp"

namespace metawave {

namespace {

const cplx i_unit(0.0, 1.0);
const double kInf = std::numeric_limits<double>::infinity();

void check_transmon(const TransmonParams& p, bool need_caps) {
  if (p.ec <= 0.0 || p.ej_max <= 0.0) {
    throw std::invalid_argument("transmon: energies must be positive");
  }
  if (p.ej_max / p.ec < 20.0) {
    throw std::invalid_argument(
        "transmon: ej_max/ec below the transmon-regime bound of 20");
  }
  if (need_caps && (p.cq <= 0.0 || p.cg <= 0.0)) {
    throw std::invalid_argument("transmon: capacitances must be positive");
  }
}

void check_environment(const QubitEnvironment& env) {
  if (env.r_load <= 0.0 || env.n_cells < 0 || env.gamma_i < 0.0) {
    throw std::invalid_argument("qubit environment: invalid termination");
  }
}

// Cell transfer matrix continued to complex drive frequency (needed by the
// pole search); coincides with abcd_cell on the real axis.
TwoPort cell_matrix(cplx omega, const CapacitiveCell& cell, double gamma_i) {
  cplx y = i_unit * omega * cell.c0;
  if (cell.ck > 0.0) {
    const cplx z_res = gamma_i * cell.lr + i_unit * omega * cell.lr;
    const cplx y_tank = i_unit * omega * cell.cr + 1.0 / z_res;
    const cplx z_branch = 1.0 / (i_unit * omega * cell.ck) + 1.0 / y_tank;
    y += 1.0 / z_branch;
  }
  const TwoPort half = series_impedance(i_unit * omega * (0.5 * cell.l0));
  return cascade(cascade(half, shunt_admittance(y)), half);
}

// Image propagation factor and image impedance of a symmetric cell,
// taken from one shared square root so the pair stays consistent at any
// complex frequency: lam_big is the eigenvalue with |lam| >= 1 (decay
// from the qubit port toward the load) and z_image = B/s its impedance.
struct ImagePair {
  cplx lam_big;
  cplx z_image;
};

ImagePair image_pair(const TwoPort& m) {
  const cplx a = 0.5 * (m.a + m.d);
  cplx s = std::sqrt(a * a - 1.0);
  if (std::abs(a + s) < 1.0) s = -s;
  return {a + s, m.b / s};
}

// Image-parameter input impedance of n cells terminated in r_load:
// Z_I*(R_L + Z_I*tanh(n*gamma*d))/(Z_I + R_L*tanh(n*gamma*d)), written
// through lam^n so no logarithm branch is ever taken.  The value is
// independent of the branch picked inside image_pair, and equals the
// cascaded input impedance exactly.
cplx line_input_impedance(cplx omega, const QubitEnvironment& env) {
  if (env.n_cells == 0) return cplx(env.r_load, 0.0);
  const TwoPort m = cell_matrix(omega, env.cell, env.gamma_i);
  const ImagePair ip = image_pair(m);
  cplx th(1.0, 0.0);  // tanh saturates once lam^n would overflow
  if (env.n_cells * std::log(std::abs(ip.lam_big)) < 300.0) {
    const cplx ln = std::pow(ip.lam_big, env.n_cells);
    th = (ln - 1.0 / ln) / (ln + 1.0 / ln);
  }
  return ip.z_image * (env.r_load + ip.z_image * th) /
         (ip.z_image + env.r_load * th);
}

cplx admittance_at(cplx omega, double cg, cplx z_line) {
  const cplx y_cap = i_unit * omega * cg;
  return y_cap / (1.0 + z_line * y_cap);
}

// Total admittance at the qubit node: line load, shunt capacitor, junction.
cplx total_admittance(cplx omega, const TransmonParams& p, double l_j,
                      const QubitEnvironment& env) {
  const cplx y_load = admittance_at(omega, p.cg, line_input_impedance(omega, env));
  return y_load + i_unit * omega * p.cq + 1.0 / (i_unit * omega * l_j);
}

double flux_for_frequency(const TransmonParams& p, double omega) {
  const double energy = hbar * omega + p.ec;
  const double cosine = energy * energy / (8.0 * p.ec * p.ej_max);
  if (cosine <= 0.0 || cosine > 1.0) {
    throw std::domain_error("transmon: frequency outside the tuning range");
  }
  return std::acos(cosine) / two_pi;
}

}  // namespace

double josephson_energy(const TransmonParams& p) {
  check_transmon(p, false);
  const double ej = p.ej_max * std::cos(two_pi * p.flux);
  if (ej <= 0.0) {
    throw std::domain_error("transmon: josephson energy not positive");
  }
  return ej;
}

double transmon_frequency(const TransmonParams& p) {
  const double ej = josephson_energy(p);
  return (std::sqrt(8.0 * p.ec * ej) - p.ec) / hbar;
}

LinearizedQubit linearized_qubit(const TransmonParams& p) {
  const double ej = josephson_energy(p);
  if (p.cq <= 0.0) {
    throw std::invalid_argument("transmon: cq must be positive");
  }
  const double phi_junction = flux_quantum / two_pi;
  const double l_j = phi_junction * phi_junction / ej;
  return {l_j, 1.0 / std::sqrt(l_j * p.cq)};
}

double calibrate_cq(const TransmonParams& p) {
  TransmonParams zero = p;
  zero.flux = 0.0;
  zero.cq = 1.0;  // placeholder, unused by the frequency
  const double omega = transmon_frequency(zero);
  const double ej = josephson_energy(zero);
  const double phi_junction = flux_quantum / two_pi;
  const double l_j = phi_junction * phi_junction / ej;
  return 1.0 / (l_j * omega * omega);
}

LineImpedance bloch_line_impedance(double omega, const QubitEnvironment& env) {
  check_environment(env);
  LineImpedance result;
  result.exact = line_input_impedance(cplx(omega, 0.0), env);
  if (env.n_cells == 0) {
    result.approx = result.exact;
    result.approx_valid = false;
    return result;
  }
  const TwoPort m = cell_matrix(cplx(omega, 0.0), env.cell, env.gamma_i);
  const ImagePair ip = image_pair(m);
  const cplx zb = ip.z_image;
  const double im_kx = std::log(std::abs(ip.lam_big)) * env.n_cells;
  result.approx = zb + 4.0 * env.r_load * std::exp(-2.0 * im_kx);
  const TwoPort lossless = abcd_cell(omega, env.cell, 0.0);
  const double a_lossless = 0.5 * std::abs(lossless.a + lossless.d);
  result.approx_valid = a_lossless > 1.0 && im_kx >= 2.0 &&
                        env.r_load <= 0.5 * std::abs(zb);
  return result;
}

cplx load_admittance(double omega, double cg, cplx z_line) {
  return admittance_at(cplx(omega, 0.0), cg, z_line);
}

cplx load_admittance(double omega, const TransmonParams& p,
                     const QubitEnvironment& env) {
  check_transmon(p, true);
  check_environment(env);
  return admittance_at(cplx(omega, 0.0), p.cg,
                       line_input_impedance(cplx(omega, 0.0), env));
}

LambShift lamb_shift(double omega_q, const TransmonParams& p,
                     const QubitEnvironment& env) {
  check_transmon(p, true);
  check_environment(env);
  const double l_j = linearized_qubit(p).l_j;
  const cplx y_load = load_admittance(omega_q, p, env);
  LambShift shift;
  shift.raw = -0.5 * omega_q * omega_q * l_j * y_load.imag();
  // Z_line = 0 limit of the same expression: the bare coupling capacitor
  shift.capacitive = -0.5 * omega_q * omega_q * omega_q * l_j * p.cg;
  shift.anomalous = shift.raw - shift.capacitive;
  const BandEdges edges = band_edges(env.cell);
  const double detuning = std::min(std::abs(omega_q - edges.omega_c_minus),
                                   std::abs(omega_q - edges.omega_c_plus));
  shift.weak = std::abs(shift.raw) < 0.1 * detuning;
  return shift;
}

PurcellDecay purcell_decay(double omega_q, const TransmonParams& p,
                           const QubitEnvironment& env) {
  check_transmon(p, true);
  check_environment(env);
  const double l_j = linearized_qubit(p).l_j;
  const cplx y_load = load_admittance(omega_q, p, env);
  PurcellDecay decay;
  decay.kappa = omega_q * omega_q * l_j * y_load.real();
  decay.t_rad = decay.kappa > 0.0 ? 1.0 / decay.kappa : kInf;
  const double im_k =
      inverse_dispersion(omega_q, env.cell, env.gamma_i).imag();
  decay.t_rad_deep = p.cq * std::exp(2.0 * im_k * env.x()) /
                     (4.0 * omega_q * omega_q * p.cg * p.cg * env.r_load);
  return decay;
}

double markov_decay_in_band(double f_coupling, double length_l, double n_g) {
  return (length_l / c_light) * f_coupling * f_coupling * n_g;
}

std::vector<cplx> strong_coupling_poles(const TransmonParams& p,
                                        const QubitEnvironment& env,
                                        double omega_lo, double omega_hi) {
  check_transmon(p, true);
  check_environment(env);
  if (!(omega_lo > 0.0) || !(omega_hi > omega_lo)) {
    throw std::invalid_argument("pole search: invalid window");
  }
  const double l_j = linearized_qubit(p).l_j;
  const auto y_total = [&](cplx omega) {
    return total_admittance(omega, p, l_j, env);
  };

  // seed on impedance peaks of the real-frequency trace
  const int grid = 801;
  std::vector<double> mag(grid);
  for (int i = 0; i < grid; ++i) {
    const double w =
        omega_lo + (omega_hi - omega_lo) * i / static_cast<double>(grid - 1);
    mag[i] = std::abs(1.0 / y_total(cplx(w, 0.0)));
  }
  std::vector<cplx> roots;
  for (int i = 1; i + 1 < grid; ++i) {
    if (!(mag[i] > mag[i - 1] && mag[i] >= mag[i + 1])) continue;
    const double seed =
        omega_lo + (omega_hi - omega_lo) * i / static_cast<double>(grid - 1);
    cplx x0(seed, 0.0);
    cplx x1 = x0 * (1.0 + 1e-6);
    cplx f0 = y_total(x0);
    cplx f1 = y_total(x1);
    bool converged = false;
    for (int iter = 0; iter < 80; ++iter) {
      const cplx denom = f1 - f0;
      if (std::abs(denom) == 0.0) break;
      const cplx x2 = x1 - f1 * (x1 - x0) / denom;
      if (!std::isfinite(x2.real()) || !std::isfinite(x2.imag())) break;
      const double step = std::abs(x2 - x1);
      x0 = x1;
      f0 = f1;
      x1 = x2;
      f1 = y_total(x1);
      if (step <= 1e-10 * std::abs(x1)) {
        converged = true;
        break;
      }
    }
    if (!converged) continue;
    if (x1.real() < omega_lo || x1.real() > omega_hi) continue;
    // passive roots decay: in the +i*omega*t circuit convention they sit
    // in the upper half plane; report them mirrored so -2*im = rate
    if (x1.imag() < -1e-9 * x1.real() || x1.imag() > 0.05 * x1.real()) {
      continue;
    }
    const cplx found(x1.real(), -std::abs(x1.imag()));
    bool duplicate = false;
    for (const cplx& r : roots) {
      if (std::abs(r - found) < 1e-8 * std::abs(found)) duplicate = true;
    }
    if (!duplicate) roots.push_back(found);
  }
  std::sort(roots.begin(), roots.end(),
            [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
  return roots;
}

SlopeIdentity lifetime_slope_identity(double omega,
                                      const QubitEnvironment& env,
                                      double gamma_i) {
  check_environment(env);
  const double x = env.x();
  const auto lifetime_shape = [&](double w) {
    const double im_k = inverse_dispersion(w, env.cell, gamma_i).imag();
    return std::exp(2.0 * im_k * x) / (w * w);
  };
  const double h = band_edges(env.cell).delta() / 1e4;
  SlopeIdentity identity;
  identity.lhs = std::abs(lifetime_shape(omega + h) - lifetime_shape(omega - h)) /
                 (2.0 * h * lifetime_shape(omega));
  identity.rhs =
      x * std::abs(group_index(omega, env.cell, gamma_i).imag()) / c_light;
  return identity;
}

TwoRates two_transition_rates(
    const TransmonParams& p,
    const std::function<double(double)>& single_photon_rate) {
  TwoRates rates;
  rates.omega_ge = transmon_frequency(p);
  rates.omega_fe = rates.omega_ge - p.ec / hbar;
  rates.gamma_ge = single_photon_rate(rates.omega_ge);
  rates.gamma_fe = 2.0 * single_photon_rate(rates.omega_fe);
  return rates;
}

TwoRates two_transition_rates(const TransmonParams& p,
                              const QubitEnvironment& env) {
  return two_transition_rates(p, [&](double omega) {
    return purcell_decay(omega, p, env).kappa;
  });
}

double calibrate_cg(const TransmonParams& p, const QubitEnvironment& env,
                    double target_shift) {
  check_environment(env);
  if (!(target_shift > 0.0)) {
    throw std::invalid_argument("calibrate_cg: target must be positive");
  }
  const BandEdges edges = band_edges(env.cell);
  const double probes[2] = {edges.omega_c_minus + edges.delta() / 50.0,
                            edges.omega_c_plus - edges.delta() / 50.0};
  double cg = 1e-15;
  for (int iter = 0; iter < 6; ++iter) {
    double product = 1.0;
    for (double omega : probes) {
      TransmonParams tuned = p;
      tuned.cg = cg;
      tuned.flux = flux_for_frequency(p, omega);
      product *= std::abs(lamb_shift(omega, tuned, env).anomalous);
    }
    const double mean = std::sqrt(product);
    if (!(mean > 0.0)) break;
    cg *= std::sqrt(target_shift / mean);
  }
  return cg;
}

QubitPrediction predict_qubit(const TransmonParams& p,
                              const QubitEnvironment& env, double t_int) {
  if (!(t_int > 0.0)) {
    throw std::invalid_argument(
        "predict_qubit: intrinsic lifetime must be positive (inf disables)");
  }
  const double omega = transmon_frequency(p);
  const LambShift shift = lamb_shift(omega, p, env);
  const PurcellDecay decay = purcell_decay(omega, p, env);
  QubitPrediction out;
  out.omega_q_bare = omega;
  out.lamb_raw = shift.raw;
  out.lamb_anomalous = shift.anomalous;
  out.kappa = decay.kappa;
  out.t_rad = decay.t_rad;
  if (std::isfinite(t_int) && std::isfinite(decay.t_rad)) {
    out.t1_total = 1.0 / (1.0 / decay.t_rad + 1.0 / t_int);
  } else if (std::isfinite(t_int)) {
    out.t1_total = t_int;
  } else {
    out.t1_total = decay.t_rad;
  }
  return out;
}

}  // namespace metawave
