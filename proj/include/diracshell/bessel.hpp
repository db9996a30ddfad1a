#pragma once

#include <complex>

namespace dshell {

inline constexpr double kEulerGamma = 0.57721566490153286061;

struct BesselK01 {
  std::complex<double> k0;
  std::complex<double> k1;
};

struct BesselI01 {
  std::complex<double> i0;
  std::complex<double> i1;
};

// Modified Bessel functions of the second kind, orders 0 and 1, for Re w > 0.
BesselK01 bessel_k01(std::complex<double> w);

// Modified Bessel functions of the first kind, orders 0 and 1 (entire).
BesselI01 bessel_i01(std::complex<double> w);

}  // namespace dshell
