#include "metawave/twoport.hpp"

#include <cmath>

namespace metawave {

TwoPort cascade(const TwoPort& first, const TwoPort& second) {
  TwoPort m;
  m.a = first.a * second.a + first.b * second.c;
  m.b = first.a * second.b + first.b * second.d;
  m.c = first.c * second.a + first.d * second.c;
  m.d = first.c * second.b + first.d * second.d;
  return m;
}

TwoPort series_impedance(cplx z) {
  TwoPort m;
  m.b = z;
  return m;
}

TwoPort shunt_admittance(cplx y) {
  TwoPort m;
  m.c = y;
  return m;
}

TwoPort chain_power(const TwoPort& cell, int n) {
  TwoPort result;           // identity
  TwoPort base = cell;
  unsigned int e = (n > 0) ? static_cast<unsigned int>(n) : 0u;
  while (e > 0) {
    if (e & 1u) result = cascade(result, base);
    base = cascade(base, base);
    e >>= 1u;
  }
  return result;
}

SMatrix to_scattering(const TwoPort& m, double z1, double z2) {
  const cplx den = m.a * z2 + m.b + m.c * z1 * z2 + m.d * z1;
  const double root = 2.0 * std::sqrt(z1 * z2);
  SMatrix s;
  s.s11 = (m.a * z2 + m.b - m.c * z1 * z2 - m.d * z1) / den;
  s.s21 = root / den;
  s.s12 = root * m.det() / den;
  s.s22 = (-m.a * z2 + m.b - m.c * z1 * z2 + m.d * z1) / den;
  return s;
}

cplx bloch_phase(const TwoPort& cell) {
  const cplx kd = std::acos(0.5 * (cell.a + cell.d));
  return {std::abs(kd.real()), std::abs(kd.imag())};
}

cplx bloch_impedance(const TwoPort& cell) {
  const cplx kd = bloch_phase(cell);
  const cplx lambda = std::exp(cplx(0.0, 1.0) * kd);
  return cell.b / (lambda - cell.a);
}

}  // namespace metawave
