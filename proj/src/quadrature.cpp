#include "diracshell/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace dshell {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> hilbert_weights(int n) {
  if (n < 2 || n % 2) throw std::invalid_argument("hilbert_weights: N must be even");
  std::vector<double> w(n, 0.0);
  for (int k = 1; k < n; k += 2) w[k] = 2.0 / n / std::tan(kPi * k / n);
  return w;
}

std::vector<double> log_weights(int n) {
  if (n < 2 || n % 2) throw std::invalid_argument("log_weights: N must be even");
  const int h = n / 2;
  std::vector<double> r(n);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int m = 1; m < h; ++m) s += std::cos(2.0 * kPi * m * k / n) / m;
    r[k] = -s / h - (k % 2 ? -1.0 : 1.0) / (2.0 * h * h);
  }
  return r;
}

std::vector<std::complex<double>> trig_resample(const std::vector<std::complex<double>>& f, int m) {
  using cplx = std::complex<double>;
  const int n = static_cast<int>(f.size());
  if (n % 2 || m < n) throw std::invalid_argument("trig_resample: need even N and M >= N");
  // coefficients for p = -n/2 .. n/2 - 1
  std::vector<cplx> c(n);
  for (int p = -n / 2; p < n / 2; ++p) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += f[j] * std::polar(1.0, -2.0 * kPi * double(p) * j / n);
    c[p + n / 2] = s / double(n);
  }
  std::vector<cplx> out(m);
  for (int l = 0; l < m; ++l) {
    const double t = double(l) / m;
    const cplx step = std::polar(1.0, 2.0 * kPi * t);
    cplx e = std::polar(1.0, 2.0 * kPi * (-n / 2 + 1) * t);
    cplx s = 0.0;
    for (int p = -n / 2 + 1; p < n / 2; ++p) {
      s += c[p + n / 2] * e;
      e *= step;
    }
    s += c[0] * std::cos(kPi * n * t);
    out[l] = s;
  }
  return out;
}

}  // namespace dshell
