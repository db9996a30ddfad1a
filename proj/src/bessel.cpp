#include "diracshell/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dshell {

namespace {

using cplx = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = 3.14159265358979323846;

// Power series around 0, accurate for |w| <= 2.
BesselK01 k01_series(cplx w) {
  const cplx y = 0.25 * w * w;
  const cplx lg = std::log(0.5 * w);

  cplx i0{1.0}, i1{0.0};
  cplx s0{0.0}, s1{0.0};
  cplx term{1.0};          // y^k / (k!)^2
  double harmonic = 0.0;   // H_k
  double psi_k1 = -kEulerGamma;            // psi(k+1)
  double psi_k2 = 1.0 - kEulerGamma;       // psi(k+2)
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      term *= y / (double(k) * double(k));
      harmonic += 1.0 / k;
      psi_k1 += 1.0 / k;
      psi_k2 += 1.0 / (k + 1);
    }
    const cplx t1 = term / double(k + 1);  // y^k / (k! (k+1)!)
    i0 += (k > 0 ? term : cplx{0.0});
    i1 += t1;
    s0 += term * harmonic;
    s1 += t1 * (psi_k1 + psi_k2);
    if (k > 2 && std::abs(term) < kEps * std::abs(i0) * 1e-2) break;
  }
  i1 *= 0.5 * w;
  BesselK01 r;
  r.k0 = -(lg + kEulerGamma) * i0 + s0;
  r.k1 = 1.0 / w + lg * i1 - 0.25 * w * s1;
  return r;
}

// Steed's continued fraction for K_nu with nu = 0, then K_1 from the ratio.
BesselK01 k01_cf(cplx w) {
  cplx b = 2.0 * (1.0 + w);
  cplx d = 1.0 / b;
  cplx h = d, delh = d;
  cplx q1{0.0}, q2{1.0};
  const double a1 = 0.25;
  cplx q = a1, c = a1, a = -a1;
  cplx s = 1.0 + q * delh;
  for (int i = 1; i < 10000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) < kEps * std::abs(s)) break;
  }
  h *= a1;
  BesselK01 r;
  r.k0 = std::sqrt(kPi / (2.0 * w)) * std::exp(-w) / s;
  r.k1 = r.k0 * (w + 0.5 - h) / w;
  return r;
}

}  // namespace

BesselK01 bessel_k01(cplx w) {
  if (!(w.real() > 0.0)) throw std::domain_error("bessel_k01: argument must have positive real part");
  return std::abs(w) <= 2.0 ? k01_series(w) : k01_cf(w);
}

BesselI01 bessel_i01(cplx w) {
  const cplx y = 0.25 * w * w;
  cplx term{1.0};
  cplx i0{1.0}, i1{1.0};
  for (int k = 1; k < 500; ++k) {
    term *= y / (double(k) * double(k));
    i0 += term;
    i1 += term / double(k + 1);
    if (std::abs(term) < kEps * 1e-2 * std::abs(i0)) break;
  }
  return {i0, 0.5 * w * i1};
}

}  // namespace dshell
