#pragma once

#include <optional>

#include "diracshell/dirac_algebra.hpp"

namespace dshell {

struct TransmissionData {
  double d = 0.0;
  CMatrix R;                   // (i/2)(a.nu) P
  std::optional<CMatrix> Q;    // 4/(d+4) (I+R)^2, present when d != -4
  std::optional<CMatrix> bc_plus;   // 2I - i(a.nu)P, present when d == -4
  std::optional<CMatrix> bc_minus;  // 2I + i(a.nu)P, present when d == -4
};

TransmissionData transmission_data(const InteractionStrengths& s, const DiracRepresentation& rep,
                                   std::span<const double> nu);

// ||(I-R)Q - (I+R)|| when d != -4, else max of ||(I-R)(I+R)||, ||(I+R)(I-R)||
double confinement_identity_residual(const TransmissionData& t);

// Defect residual of f_n = (x1 - i x2 - conj(c))^{-n} e_2, pole at the point c, n > 2,
// for (-i a.grad + m a0 + m) with q = 2; max over the samples, central differences with step h.
double zigzag_kernel_check(const DiracRepresentation& rep, double m, cplx c, int n,
                           std::span<const Eigen::Vector2d> samples, double h);

}  // namespace dshell
