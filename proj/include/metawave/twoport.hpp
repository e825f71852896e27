#pragma once

#include <complex>

#include "metawave/constants.hpp"

namespace metawave {

using cplx = std::complex<double>;

// Transfer (ABCD) matrix of a two-port: (V1, I1) = M * (V2, I2) with I2
// flowing out of port 2.  Reciprocal networks have det = 1.
struct TwoPort {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};
  cplx c{0.0, 0.0};
  cplx d{1.0, 0.0};

  cplx det() const { return a * d - b * c; }
};

// Chain two-ports left to right: signal enters `first`, then `second`.
TwoPort cascade(const TwoPort& first, const TwoPort& second);

// Elementary sections.
TwoPort series_impedance(cplx z);
TwoPort shunt_admittance(cplx y);

// M^n by binary exponentiation (n >= 0).
TwoPort chain_power(const TwoPort& cell, int n);

// Scattering matrix between source impedance z1 and load impedance z2.
struct SMatrix {
  cplx s11, s12, s21, s22;
};
SMatrix to_scattering(const TwoPort& m, double z1, double z2);

// Per-cell Bloch phase k*d of a periodic line built from `cell`:
// cos(k d) = (A + D)/2, reported with Re in [0, pi] (phase advance) and
// Im >= 0 (attenuation).
cplx bloch_phase(const TwoPort& cell);

// Characteristic (Bloch) impedance of the forward-propagating wave,
// Z_B = B/(lambda - A) with lambda = exp(i k d) on the decaying branch.
// Real and positive in a lossless pass band.
cplx bloch_impedance(const TwoPort& cell);

}  // namespace metawave
