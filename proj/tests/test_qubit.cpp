#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "metawave/bandstructure.hpp"
#include "metawave/circuit.hpp"
#include "metawave/constants.hpp"
#include "metawave/qubit.hpp"
#include "metawave/transmission.hpp"
#include "metawave/twoport.hpp"

using namespace metawave;

namespace {

CapacitiveCell device_cell() {
  return cell_from_spec({50.0, 2.54, 350e-6}, 5.83, 1.82);
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// Charging energy chosen so the zero-flux transition lands exactly at
// 7.9 GHz for ej_max/ec = 100: h*nu = ec*(sqrt(800) - 1).
TransmonParams device_qubit() {
  const double ec = h_planck * 7.9e9 / (std::sqrt(800.0) - 1.0);
  TransmonParams p{100.0 * ec, ec, 0.0, 1e-15, 0.0};
  p.cq = calibrate_cq(p);
  return p;
}

QubitEnvironment device_environment() {
  const CapacitiveCell cell = device_cell();
  return {cell, 9, 50.0, band_edges(cell).omega_c_plus / 7.2e4};
}

// Flux bias that puts the *linearized* frequency at omega (the linearized
// mode scales as sqrt(cos); used where the LC model, not the transmon
// spectrum, sets the working point).
double flux_for_linearized(const TransmonParams& p, double omega) {
  TransmonParams zero = p;
  zero.flux = 0.0;
  const double w0 = linearized_qubit(zero).omega_q;
  return std::acos((omega / w0) * (omega / w0)) / two_pi;
}

// Flux bias that puts the transmon transition at omega (bisection).
double flux_for_transition(const TransmonParams& p, double omega) {
  TransmonParams q = p;
  double lo = 0.0;
  double hi = 0.249;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    q.flux = mid;
    (transmon_frequency(q) > omega ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("transmon spectrum follows the junction and charging energies") {
  TransmonParams p = device_qubit();

  // the calibration identity pins the zero-flux transition exactly
  CHECK(rel_diff(transmon_frequency(p), ghz_to_rad(7.9)) < 1e-12);

  // a sixth of a flux quantum halves the Josephson energy
  TransmonParams tuned = p;
  tuned.flux = 1.0 / 6.0;
  CHECK(rel_diff(josephson_energy(tuned), 0.5 * p.ej_max) < 1e-12);

  // frequency falls monotonically as the flux bias grows
  double prev = transmon_frequency(p);
  for (int i = 1; i <= 12; ++i) {
    tuned.flux = 0.02 * static_cast<double>(i);
    const double w = transmon_frequency(tuned);
    CHECK(w < prev);
    prev = w;
  }

  // bisection lands the transition on requested targets
  for (double nu : {5.2, 5.8, 7.0}) {
    tuned.flux = flux_for_transition(p, ghz_to_rad(nu));
    CHECK(rel_diff(transmon_frequency(tuned), ghz_to_rad(nu)) < 1e-10);
  }

  // past a quarter flux quantum the Josephson energy changes sign
  tuned.flux = 0.3;
  CHECK_THROWS_AS(josephson_energy(tuned), std::domain_error);

  // outside the weakly anharmonic regime the model refuses to run
  TransmonParams shallow = p;
  shallow.ej_max = 10.0 * p.ec;
  CHECK_THROWS_AS(transmon_frequency(shallow), std::invalid_argument);
}

TEST_CASE("linearized junction inductance tracks flux and stiffness") {
  TransmonParams p = device_qubit();

  // independent hand evaluation of (phi0/2pi)^2 / ej at ej/h = 20 GHz
  TransmonParams stiff = p;
  stiff.ej_max = h_planck * 20e9;
  stiff.ec = stiff.ej_max / 100.0;
  CHECK(rel_diff(linearized_qubit(stiff).l_j, 8.173076e-9) < 1e-6);

  // the calibrated shunt makes the LC mode coincide with the transition
  CHECK(rel_diff(linearized_qubit(p).omega_q, transmon_frequency(p)) < 1e-12);
  CHECK(rel_diff(p.cq, 71.892784e-15) < 1e-6);

  // doubling the Josephson energy halves l_j and stiffens omega by sqrt(2)
  TransmonParams doubled = p;
  doubled.ej_max = 2.0 * p.ej_max;
  CHECK(rel_diff(linearized_qubit(doubled).l_j,
                 0.5 * linearized_qubit(p).l_j) < 1e-12);
  CHECK(rel_diff(linearized_qubit(doubled).omega_q,
                 std::sqrt(2.0) * linearized_qubit(p).omega_q) < 1e-12);

  // flux-tuned inductance at a 5.8 GHz transition; hand oracle
  // (phi0/2pi)^2 * 8*ec / (hbar*omega + ec)^2
  TransmonParams tuned = p;
  tuned.flux = flux_for_transition(p, ghz_to_rad(5.8));
  CHECK(rel_diff(linearized_qubit(tuned).l_j, 10.210586e-9) < 1e-6);

  // guards on the capacitances
  TransmonParams bad = p;
  bad.cq = 0.0;
  CHECK_THROWS_AS(linearized_qubit(bad), std::invalid_argument);
}

TEST_CASE("terminated-line input impedance matches a direct cascade") {
  const CapacitiveCell cell = device_cell();
  const double gamma_dev = band_edges(cell).omega_c_plus / 7.2e4;

  for (double nu : {4.0, 4.5, 5.83, 6.9}) {
    for (int n : {1, 5, 9, 23}) {
      for (double gi : {0.0, gamma_dev}) {
        const double w = ghz_to_rad(nu);
        const QubitEnvironment env{cell, n, 50.0, gi};
        const TwoPort m = chain_power(abcd_cell(w, cell, gi), n);
        const cplx direct =
            (m.a * env.r_load + m.b) / (m.c * env.r_load + m.d);
        const cplx img = bloch_line_impedance(w, env).exact;
        CHECK(std::abs(img - direct) / std::abs(direct) < 1e-10);
      }
    }
  }

  // zero cells: the line is just its termination
  const QubitEnvironment bare{cell, 0, 37.5, 0.0};
  const LineImpedance none = bloch_line_impedance(ghz_to_rad(5.0), bare);
  CHECK(none.exact == cplx(37.5, 0.0));
  CHECK_FALSE(none.approx_valid);

  // a matched resistive load makes the pass-band impedance length-free
  const QubitEnvironment m9{cell, 9, 25.720208, 0.0};
  const QubitEnvironment m27{cell, 27, 25.720208, 0.0};
  const cplx z9 = bloch_line_impedance(ghz_to_rad(4.0), m9).exact;
  const cplx z27 = bloch_line_impedance(ghz_to_rad(4.0), m27).exact;
  CHECK(std::abs(z9 - z27) / std::abs(z9) < 1e-6);

  // deep in the gap the exact form saturates to the evanescent closed form
  const double w_mid = band_edges(cell).midgap();
  const QubitEnvironment deep{cell, 100, 5.0, 0.0};
  const LineImpedance far = bloch_line_impedance(w_mid, deep);
  CHECK(far.approx_valid);
  CHECK(std::abs(far.exact - far.approx) < 1e-6);
  CHECK(rel_diff(far.approx.imag(), 45.241034) < 1e-6);
  CHECK(std::abs(far.approx.real()) < 1e-8);

  // validity flag: needs evanescence, depth >= 2 decay lengths, and a
  // termination small against the image impedance
  const QubitEnvironment short5{cell, 9, 5.0, 0.0};
  const QubitEnvironment long5{cell, 20, 5.0, 0.0};
  const QubitEnvironment long50{cell, 20, 50.0, 0.0};
  CHECK_FALSE(bloch_line_impedance(w_mid, short5).approx_valid);
  CHECK(bloch_line_impedance(w_mid, long5).approx_valid);
  CHECK_FALSE(bloch_line_impedance(w_mid, long50).approx_valid);
  CHECK_FALSE(bloch_line_impedance(ghz_to_rad(4.0), long5).approx_valid);
  const LineImpedance ok = bloch_line_impedance(w_mid, long5);
  CHECK(std::abs(ok.approx - ok.exact) / std::abs(ok.exact) < 0.05);

  // termination guard
  CHECK_THROWS_AS(bloch_line_impedance(w_mid, {cell, 9, -1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("coupling admittance stays passive and perturbative") {
  const TransmonParams p = device_qubit();
  const QubitEnvironment env = device_environment();
  const CapacitiveCell cell = env.cell;

  // a passive network can only absorb
  for (int i = 0; i <= 400; ++i) {
    const double w = ghz_to_rad(3.5 + 4.0 * i / 400.0);
    CHECK(load_admittance(w, p, env).real() > -1e-15);
  }

  // small-capacitor expansion: the residual after the first-order
  // correction shrinks quadratically with cg
  const double w = band_edges(cell).midgap();
  const cplx z = bloch_line_impedance(w, env).exact;
  for (double cg_f : {0.05, 0.2, 1.0}) {
    const double cg = cg_f * 1e-15;
    const cplx y = load_admittance(w, cg, z);
    const cplx iwc = cplx(0.0, w * cg);
    const double residual = std::abs(y / iwc - (1.0 - iwc * z));
    CHECK(residual < 1e-5 * cg_f * cg_f);
  }

  // mid-gap dissipation decays with chain length at twice the evanescent
  // rate (the round trip to the lossy termination)
  const double imk = inverse_dispersion(w, cell, 0.0).imag();
  std::vector<double> lengths, lre;
  for (int n : {6, 8, 10, 12, 14}) {
    const QubitEnvironment e{cell, n, 50.0, 0.0};
    lengths.push_back(e.x());
    lre.push_back(std::log(load_admittance(w, p, e).real()));
  }
  const double slope = (lre.back() - lre.front()) /
                       (lengths.back() - lengths.front());
  CHECK(rel_diff(-slope, 2.0 * imk) < 0.03);
}

TEST_CASE("line reshapes the qubit frequency pull near the gap") {
  TransmonParams p = device_qubit();
  const QubitEnvironment env = device_environment();
  const BandEdges edges = band_edges(env.cell);

  // with no line the pull is the bare capacitor result and nothing else
  TransmonParams pt = p;
  pt.cg = 2e-15;
  const QubitEnvironment none{env.cell, 0, 1e-9, 0.0};
  const double w_lin = linearized_qubit(pt).omega_q;
  const LambShift bare = lamb_shift(w_lin, pt, none);
  CHECK(rel_diff(bare.raw / w_lin, -pt.cg / (2.0 * pt.cq)) < 1e-9);
  CHECK(std::abs(bare.anomalous) < 1e-12 * std::abs(bare.raw));

  // inside the gap the line reactance is inductive throughout, so the
  // anomalous part is negative from edge to edge ...
  for (double nu : {4.9564, 5.3, 5.83, 6.3, 6.7036}) {
    CHECK(lamb_shift(ghz_to_rad(nu), p, env).anomalous < 0.0);
  }
  // ... and flips sign just below the lower edge, where the finite chain
  // presents a capacitive window
  for (double nu : {4.905, 4.9125}) {
    CHECK(lamb_shift(ghz_to_rad(nu), p, env).anomalous > 0.0);
  }

  // frozen magnitudes across the gap (MHz of nu, not omega)
  CHECK(rel_diff(lamb_shift(ghz_to_rad(5.83), p, env).anomalous,
                 two_pi * -0.03652e6) < 1e-3);
  CHECK(rel_diff(lamb_shift(ghz_to_rad(6.7036), p, env).anomalous,
                 two_pi * -0.08059e6) < 1e-3);

  // the weak-pull flag compares the raw pull to the edge detuning
  CHECK(lamb_shift(edges.midgap(), p, env).weak);
  TransmonParams strong = p;
  strong.cg = 15e-15;
  CHECK_FALSE(lamb_shift(edges.midgap(), strong, env).weak);
}

TEST_CASE("radiative decay through the coupling capacitor") {
  TransmonParams p = device_qubit();
  const QubitEnvironment env = device_environment();
  const CapacitiveCell cell = env.cell;
  const BandEdges edges = band_edges(cell);
  const double w_mid = edges.midgap();

  // halving the coupling capacitor quarters the decay rate
  TransmonParams half = p;
  half.cg = 0.5e-15;
  const double quarter = purcell_decay(w_mid, p, env).kappa /
                         purcell_decay(w_mid, half, env).kappa;
  CHECK(std::abs(quarter / 4.0 - 1.0) < 0.01);

  // the mid-gap lifetime grows exponentially with chain length at twice
  // the evanescent decay rate
  const double imk = inverse_dispersion(w_mid, cell, env.gamma_i).imag();
  const double t6 = purcell_decay(w_mid, p, env.with_cells(6)).t_rad;
  const double t12 = purcell_decay(w_mid, p, env.with_cells(12)).t_rad;
  CHECK(rel_diff(std::log(t12 / t6), 2.0 * imk * 6.0 * cell.d) < 0.05);

  // in its joint validity regime the closed deep-gap form agrees with the
  // exact rate to better than twenty percent
  TransmonParams tuned = p;
  tuned.flux = flux_for_linearized(p, w_mid);
  const QubitEnvironment deep{cell, 20, 5.0, 0.0};
  const PurcellDecay pd = purcell_decay(w_mid, tuned, deep);
  CHECK(std::abs(pd.t_rad / pd.t_rad_deep - 1.0) < 0.2);

  // with a termination comparable to the image impedance the mismatch is
  // the image-impedance rotation (r^2 + x^2)/x^2 of the absorbed power
  const QubitEnvironment deep50{cell, 20, 50.0, 0.0};
  const PurcellDecay pd50 = purcell_decay(w_mid, tuned, deep50);
  const double x_b = bloch_line_impedance(w_mid, deep50).approx.imag();
  const double rotation = (50.0 * 50.0 + x_b * x_b) / (x_b * x_b);
  CHECK(rel_diff(pd50.t_rad / pd50.t_rad_deep, rotation) < 0.02);

  // protected mid-gap lifetime towers over the out-of-band lifetime
  const double t_in = purcell_decay(w_mid, p, env).t_rad;
  const double t_out =
      purcell_decay(edges.omega_c_plus * 1.02, p, env).t_rad;
  CHECK(t_in / t_out > 5.0);
  CHECK(t_in / t_out < 25.0);
}

TEST_CASE("in-band emission follows the group index") {
  // quadratic in the coupling, linear in length and group index, zero at
  // zero coupling
  CHECK(markov_decay_in_band(0.0, 3.15e-3, 10.0) == 0.0);
  const double base = markov_decay_in_band(1e6, 3.15e-3, 10.0);
  CHECK(rel_diff(markov_decay_in_band(2e6, 3.15e-3, 10.0), 4.0 * base) <
        1e-12);
  CHECK(rel_diff(markov_decay_in_band(1e6, 6.30e-3, 10.0), 2.0 * base) <
        1e-12);
  CHECK(rel_diff(markov_decay_in_band(1e6, 3.15e-3, 20.0), 2.0 * base) <
        1e-12);

  // against the full circuit: calibrate the coupling once at 4.2 GHz on a
  // long matched chain, then the closed form tracks the circuit rate
  // across the lower band
  TransmonParams p = device_qubit();
  const CapacitiveCell cell = device_cell();
  const double r_match =
      std::abs(bloch_impedance(abcd_cell(ghz_to_rad(4.2), cell, 0.0)).real());
  const QubitEnvironment line{cell, 100, r_match, 0.0};
  const double x = line.x();
  const double kappa_cal = purcell_decay(ghz_to_rad(4.2), p, line).kappa;
  const double ng_cal = std::abs(group_index(ghz_to_rad(4.2), cell, 0.0));
  const double f_cal = std::sqrt(kappa_cal * c_light / (x * ng_cal));
  for (double nu : {4.10, 4.15, 4.25}) {
    const double w = ghz_to_rad(nu);
    const double ng = std::abs(group_index(w, cell, 0.0));
    const double markov = markov_decay_in_band(f_cal, x, ng);
    const double circuit = purcell_decay(w, p, line).kappa;
    CHECK(rel_diff(markov, circuit) < 0.25);
  }
}

TEST_CASE("hybridized poles of the qubit-line circuit") {
  TransmonParams p = device_qubit();
  const QubitEnvironment env = device_environment();
  const CapacitiveCell cell = env.cell;

  // no line: the single pole is the capacitively pulled LC mode
  TransmonParams pc = p;
  pc.cg = 5e-15;
  const QubitEnvironment none{cell, 0, 1e-9, 0.0};
  const double w_pull =
      1.0 / std::sqrt(linearized_qubit(pc).l_j * (pc.cq + pc.cg));
  const auto lone = strong_coupling_poles(pc, none, ghz_to_rad(7.0),
                                          ghz_to_rad(8.0));
  REQUIRE(lone.size() == 1);
  CHECK(rel_diff(lone[0].real(), w_pull) < 1e-9);
  CHECK(std::abs(lone[0].imag()) < 1e-6 * lone[0].real());

  // weak coupling in the gap: one pole, whose shift and width reproduce
  // the perturbative pull and decay rate
  TransmonParams weak = p;
  weak.flux = flux_for_linearized(p, ghz_to_rad(5.8));
  const double w_lin = linearized_qubit(weak).omega_q;
  const auto roots = strong_coupling_poles(weak, env, ghz_to_rad(5.6),
                                           ghz_to_rad(5.9));
  REQUIRE(roots.size() == 1);
  const double shift_pole = roots[0].real() - w_lin;
  const double shift_pert = lamb_shift(w_lin, weak, env).raw;
  CHECK(rel_diff(shift_pole, shift_pert) < 0.03);
  const double rate_pole = -2.0 * roots[0].imag();
  const double rate_pert = purcell_decay(roots[0].real(), weak, env).kappa;
  CHECK(rel_diff(rate_pole, rate_pert) < 0.01);
  CHECK(roots[0].imag() < 0.0);

  // strong coupling swept through a discrete chain mode: two resolved
  // branches that never touch (an avoided crossing)
  TransmonParams strong = p;
  strong.cg = 15e-15;
  const double dress_s = std::sqrt(strong.cq / (strong.cq + strong.cg));
  const double w_mode = ghz_to_rad(4.9008);
  double min_gap = std::numeric_limits<double>::infinity();
  double gap_on = 0.0;
  for (double det : {-0.003, 0.0, 0.003}) {
    strong.flux =
        flux_for_linearized(p, w_mode * (1.0 + det) / dress_s);
    const auto branches = strong_coupling_poles(
        strong, env, ghz_to_rad(4.86), ghz_to_rad(4.94));
    REQUIRE(branches.size() >= 2);
    double gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < branches.size(); ++i) {
      gap = std::min(gap, branches[i + 1].real() - branches[i].real());
    }
    if (det == 0.0) gap_on = gap;
    min_gap = std::min(min_gap, gap);
  }
  CHECK(min_gap > two_pi * 1e6);
  CHECK(gap_on > two_pi * 2e6);
  CHECK(gap_on < two_pi * 5e6);

  // a window with no resonance yields no roots and no error
  const auto empty = strong_coupling_poles(p, env, ghz_to_rad(5.3),
                                           ghz_to_rad(5.6));
  CHECK(empty.empty());
}

TEST_CASE("lifetime slope against the group delay at the band edges") {
  const CapacitiveCell cell = device_cell();
  const BandEdges edges = band_edges(cell);
  const double delta = edges.omega_c_plus - edges.omega_c_minus;
  const QubitEnvironment env = device_environment();

  // without loss, just inside either edge, the logarithmic lifetime slope
  // runs at twice the single-pass group delay (round trip to the
  // termination and back)
  for (double off : {0.01, 0.02}) {
    const SlopeIdentity lo = lifetime_slope_identity(
        edges.omega_c_minus + off * delta, env, 0.0);
    const SlopeIdentity hi = lifetime_slope_identity(
        edges.omega_c_plus - off * delta, env, 0.0);
    CHECK(lo.lhs / lo.rhs > 1.7);
    CHECK(lo.lhs / lo.rhs < 2.2);
    CHECK(hi.lhs / hi.rhs > 1.7);
    CHECK(hi.lhs / hi.rhs < 2.2);
  }

  // internal loss rounds the upper edge: the ratio drops toward one
  const SlopeIdentity upper = lifetime_slope_identity(
      edges.omega_c_plus, env, env.gamma_i);
  CHECK(upper.lhs / upper.rhs > 1.1);
  CHECK(upper.lhs / upper.rhs < 1.45);

  // at the lossy lower edge the evanescent envelope goes stationary and
  // the finite-difference slope collapses
  const SlopeIdentity lower = lifetime_slope_identity(
      edges.omega_c_minus, env, env.gamma_i);
  CHECK(lower.lhs < 1e-3 * lower.rhs);

  // both sides scale linearly with the chain length
  const SlopeIdentity x1 = lifetime_slope_identity(
      edges.omega_c_plus, env, env.gamma_i);
  const SlopeIdentity x2 = lifetime_slope_identity(
      edges.omega_c_plus, env.with_cells(18), env.gamma_i);
  CHECK(rel_diff(x2.lhs / x1.lhs, 2.0) < 0.05);
  CHECK(rel_diff(x2.rhs / x1.rhs, 2.0) < 1e-12);
}

TEST_CASE("first two transitions decay with doubled weight on the upper") {
  TransmonParams p = device_qubit();
  const QubitEnvironment env = device_environment();

  // the upper transition sits one charging energy below the lower one and
  // carries twice the single-photon rate at its own frequency
  TransmonParams tuned = p;
  tuned.flux = flux_for_transition(p, ghz_to_rad(5.8));
  const TwoRates tr = two_transition_rates(tuned, env);
  CHECK(rel_diff(tr.omega_ge - tr.omega_fe, p.ec / hbar) < 1e-12);
  CHECK(rel_diff(tr.gamma_ge,
                 purcell_decay(tr.omega_ge, tuned, env).kappa) < 1e-12);
  CHECK(rel_diff(tr.gamma_fe,
                 2.0 * purcell_decay(tr.omega_fe, tuned, env).kappa) <
        1e-12);

  // callable overload: a flat rate profile isolates the factor of two
  const TwoRates flat = two_transition_rates(
      tuned, [](double) { return 1.0e5; });
  CHECK(rel_diff(flat.gamma_fe, 2.0 * flat.gamma_ge) < 1e-12);

  // parked just inside the gap, the lower transition stays protected
  // while the upper one lands in the lower pass band and decays fast
  TransmonParams parked = p;
  parked.flux = flux_for_transition(p, ghz_to_rad(5.15));
  const TwoRates split = two_transition_rates(parked, env);
  CHECK(rad_to_ghz(split.omega_fe) < 4.92);
  CHECK(split.gamma_fe / split.gamma_ge > 5.0);
}

TEST_CASE("coupling calibration hits a target edge shift") {
  TransmonParams p = device_qubit();
  const QubitEnvironment env = device_environment();

  const double cg_star = calibrate_cg(p, env, two_pi * 10e6);
  CHECK(rel_diff(cg_star, 18.887281e-15) < 1e-4);

  // the geometric mean of the anomalous magnitudes just inside the two
  // edges comes back at the target
  const BandEdges edges = band_edges(env.cell);
  const double delta = edges.omega_c_plus - edges.omega_c_minus;
  TransmonParams cal = p;
  cal.cg = cg_star;
  double product = 1.0;
  for (double w : {edges.omega_c_minus + delta / 50.0,
                   edges.omega_c_plus - delta / 50.0}) {
    TransmonParams at = cal;
    at.flux = flux_for_transition(cal, w);
    product *= std::abs(lamb_shift(w, at, env).anomalous);
  }
  CHECK(rel_diff(std::sqrt(product), two_pi * 10e6) < 1e-4);
}

TEST_CASE("lifetime prediction combines radiative and intrinsic decay") {
  TransmonParams p = device_qubit();
  p.cg = 5e-15;
  p.flux = 0.17;
  const QubitEnvironment env = device_environment();

  const QubitPrediction q = predict_qubit(p, env, 20e-6);
  CHECK(rel_diff(q.omega_q_bare, transmon_frequency(p)) < 1e-12);
  CHECK(rel_diff(rad_to_ghz(q.omega_q_bare), 5.3947) < 1e-4);
  CHECK(rel_diff(q.lamb_raw, two_pi * -182.4443e6) < 1e-3);
  CHECK(rel_diff(q.lamb_anomalous, two_pi * -0.8610e6) < 1e-3);
  CHECK(rel_diff(q.kappa, two_pi * 9.8713e4) < 1e-3);
  CHECK(rel_diff(q.t_rad, 1.6123e-6) < 1e-3);
  CHECK(rel_diff(q.t1_total, 1.4920e-6) < 1e-3);

  // the two channels add as rates
  CHECK(rel_diff(1.0 / q.t1_total, 1.0 / q.t_rad + 1.0 / 20e-6) < 1e-12);

  // without an intrinsic channel the total is purely radiative
  const QubitPrediction rad_only = predict_qubit(
      p, env, std::numeric_limits<double>::infinity());
  CHECK(rad_only.t1_total == rad_only.t_rad);

  // a non-positive intrinsic lifetime is rejected
  CHECK_THROWS_AS(predict_qubit(p, env, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(predict_qubit(p, env, -1e-6), std::invalid_argument);
}
