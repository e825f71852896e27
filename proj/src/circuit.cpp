#include "metawave/circuit.hpp"

#include <cmath>

namespace metawave {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw circuit_error(std::string(name) + " must be positive and finite");
  }
}

void validate(const CapacitiveCell& cell) {
  require_positive(cell.c0, "c0");
  require_positive(cell.l0, "l0");
  require_positive(cell.cr, "cr");
  require_positive(cell.lr, "lr");
  require_positive(cell.d, "d");
  if (cell.ck < 0.0 || !std::isfinite(cell.ck)) {
    throw circuit_error("ck must be non-negative and finite");
  }
}

void validate(const InductiveCell& cell) {
  require_positive(cell.c0, "c0");
  require_positive(cell.l0, "l0");
  require_positive(cell.cr, "cr");
  require_positive(cell.lr, "lr");
  require_positive(cell.d, "d");
  if (cell.lk < 0.0 || !std::isfinite(cell.lk)) {
    throw circuit_error("lk must be non-negative and finite");
  }
}

}  // namespace

EffectiveParams derive_effective(const CapacitiveCell& cell) {
  validate(cell);
  EffectiveParams eff;
  eff.kind = Coupling::capacitive;
  const double s = cell.ck * cell.cr + cell.ck * cell.c0 + cell.c0 * cell.cr;
  eff.x0 = s / (cell.ck + cell.cr);
  eff.xr = s / (cell.ck + cell.c0);
  eff.xk = s / cell.ck;  // +inf for an open coupling branch (ck = 0)
  eff.omega0 = 1.0 / std::sqrt(cell.lr * eff.xr);
  return eff;
}

EffectiveParams derive_effective(const InductiveCell& cell) {
  validate(cell);
  EffectiveParams eff;
  eff.kind = Coupling::inductive;
  const double s = cell.lk * cell.lr + cell.lk * cell.l0 + cell.l0 * cell.lr;
  eff.x0 = s / (cell.lk + cell.lr);
  eff.xr = s / (cell.lk + cell.l0);
  eff.xk = s / cell.lk;  // +inf for a shorted coupling branch (lk = 0)
  eff.omega0 = 1.0 / std::sqrt(eff.xr * cell.cr);
  return eff;
}

double bare_dispersion(double k, const CapacitiveCell& cell) {
  const EffectiveParams eff = derive_effective(cell);
  return 2.0 * std::abs(std::sin(0.5 * k * cell.d)) / std::sqrt(cell.l0 * eff.x0);
}

double coupling_g(double k, const CapacitiveCell& cell) {
  const EffectiveParams eff = derive_effective(cell);
  const double omega_k = 2.0 * std::abs(std::sin(0.5 * k * cell.d)) /
                         std::sqrt(cell.l0 * eff.x0);
  const double denom =
      2.0 * std::sqrt((cell.c0 + cell.ck) * (cell.cr + cell.ck));
  return cell.ck * std::sqrt(eff.omega0 * omega_k) / denom;
}

double coupling_g(double k, const InductiveCell& cell) {
  const EffectiveParams eff = derive_effective(cell);
  const double omega_k = 2.0 * std::abs(std::sin(0.5 * k * cell.d)) /
                         std::sqrt(eff.x0 * cell.c0);
  return std::sqrt(eff.x0 * eff.xr) / (2.0 * eff.xk) *
         std::sqrt(eff.omega0 * omega_k);
}

double coupling_eta(const CapacitiveCell& cell) {
  validate(cell);
  return cell.ck * cell.ck /
         (4.0 * (cell.c0 + cell.ck) * (cell.cr + cell.ck));
}

double coupling_eta(const InductiveCell& cell) {
  const EffectiveParams eff = derive_effective(cell);
  return eff.x0 * eff.xr / (4.0 * eff.xk * eff.xk);
}

PortParams resonator_port_params(const CapacitiveCell& cell, double z0_line) {
  validate(cell);
  require_positive(z0_line, "z0_line");
  PortParams port;
  const double u = cell.ck / (cell.cr + cell.ck);
  port.omega0_side = 1.0 / std::sqrt(cell.lr * (cell.cr + cell.ck));
  port.gamma_e = 0.5 * z0_line / cell.lr * u * u;
  return port;
}

WaveguideSpec effective_spec(const CapacitiveCell& cell) {
  const EffectiveParams eff = derive_effective(cell);
  WaveguideSpec spec;
  spec.z0 = std::sqrt(cell.l0 / eff.x0);
  spec.n = c_light * std::sqrt(cell.l0 * eff.x0) / cell.d;
  spec.d = cell.d;
  return spec;
}

CapacitiveCell cell_from_spec(const WaveguideSpec& spec, double midgap_ghz,
                              double span_ghz, double coupling_fraction) {
  require_positive(spec.z0, "z0");
  require_positive(spec.n, "n");
  require_positive(spec.d, "d");
  require_positive(midgap_ghz, "midgap_ghz");
  require_positive(span_ghz, "span_ghz");
  if (!(span_ghz < 2.0 * midgap_ghz)) {
    throw circuit_error("gap span must leave a positive lower edge");
  }
  if (!(coupling_fraction > 0.0 && coupling_fraction < 1.0)) {
    throw circuit_error("coupling_fraction must lie in (0, 1)");
  }

  CapacitiveCell cell;
  cell.d = spec.d;
  cell.l0 = spec.z0 * spec.n * spec.d / c_light;
  cell.c0 = spec.n * spec.d / (spec.z0 * c_light);

  // Upper/lower gap edges set the coupling strength through their ratio:
  // omega_minus/omega_plus = sqrt(1 - 4*eta).
  const double omega_plus = ghz_to_rad(midgap_ghz + 0.5 * span_ghz);
  const double omega_minus = ghz_to_rad(midgap_ghz - 0.5 * span_ghz);
  const double ratio2 = (omega_minus / omega_plus) * (omega_minus / omega_plus);
  const double eta = 0.25 * (1.0 - ratio2);

  // Split the resonator/coupler capacitance budget: with u = ck/(cr+ck) and
  // s = cr+ck, eta = u^2*s/(4*(c0 + u*s)) inverts to
  // s = 4*eta*c0/(u*(u - 4*eta)), which requires u > 4*eta.
  const double u = coupling_fraction;
  if (!(u > 4.0 * eta)) {
    throw circuit_error(
        "coupling_fraction too small for the requested gap ratio");
  }
  const double s = 4.0 * eta * cell.c0 / (u * (u - 4.0 * eta));
  cell.ck = u * s;
  cell.cr = (1.0 - u) * s;

  // The upper gap edge is the dressed resonator frequency 1/sqrt(lr*cr').
  const double s_cap = cell.ck * cell.cr + cell.ck * cell.c0 + cell.c0 * cell.cr;
  const double cr_eff = s_cap / (cell.ck + cell.c0);
  cell.lr = 1.0 / (omega_plus * omega_plus * cr_eff);
  return cell;
}

double gamma_from_q(double omega, double q) {
  require_positive(omega, "omega");
  require_positive(q, "q");
  return omega / q;
}

}  // namespace metawave
