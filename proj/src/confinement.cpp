#include "diracshell/confinement.hpp"

#include <cmath>

namespace dshell {

TransmissionData transmission_data(const InteractionStrengths& s, const DiracRepresentation& rep,
                                   std::span<const double> nu) {
  s.validate();
  TransmissionData t;
  t.d = s.d();
  const CMatrix id = rep.identity();
  const CMatrix an = rep.alpha_dot(nu);
  const CMatrix p = coupling_matrix(s, rep, nu);
  t.R = 0.5 * kI * an * p;
  if (s.is_confinement()) {
    t.bc_plus = 2.0 * id - kI * an * p;
    t.bc_minus = 2.0 * id + kI * an * p;
  } else {
    const CMatrix ip = id + t.R;
    t.Q = (4.0 / (t.d + 4.0)) * ip * ip;
  }
  return t;
}

double confinement_identity_residual(const TransmissionData& t) {
  const int n = static_cast<int>(t.R.rows());
  const CMatrix id = CMatrix::Identity(n, n);
  if (t.Q) return ((id - t.R) * (*t.Q) - (id + t.R)).norm();
  return std::max(((id - t.R) * (id + t.R)).norm(), ((id + t.R) * (id - t.R)).norm());
}

double zigzag_kernel_check(const DiracRepresentation& rep, double m, cplx c, int n,
                           std::span<const Eigen::Vector2d> samples, double h) {
  if (rep.q != 2) throw DomainError("zigzag kernel check is defined for q = 2");
  if (n < 3) throw DomainError("zigzag kernel order must exceed 2");
  auto f = [&](double x1, double x2) {
    Vector2c v;
    v << 0.0, std::pow(cplx(x1, -x2) - std::conj(c), -n);
    return v;
  };
  const Matrix2c a0 = rep.alpha(0), a1 = rep.alpha(1), a2 = rep.alpha(2);
  double worst = 0.0;
  for (const auto& x : samples) {
    if (std::abs(cplx(x(0), x(1)) - c) < 10.0 * h) throw DomainError("sample point too close to the pole");
    const Vector2c d1 = (f(x(0) + h, x(1)) - f(x(0) - h, x(1))) / (2 * h);
    const Vector2c d2 = (f(x(0), x(1) + h) - f(x(0), x(1) - h)) / (2 * h);
    const Vector2c r = -kI * (a1 * d1 + a2 * d2) + m * a0 * f(x(0), x(1)) + m * f(x(0), x(1));
    worst = std::max(worst, r.norm());
  }
  return worst;
}

}  // namespace dshell
