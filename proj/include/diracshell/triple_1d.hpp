#pragma once

#include <functional>
#include <vector>

#include "diracshell/dirac_algebra.hpp"

namespace dshell {

// Weyl function M(z) = (i/2) diag(zeta, 1/zeta) of the point interaction at 0.
Matrix2c weyl_1d(cplx z, double m);

// gamma(z) xi evaluated at x != 0
Vector2c gamma_field_1d(cplx z, double m, const Vector2c& xi, double x);

// P with the normal nu = -1: eta I + tau s3 - lambda s2
Matrix2c coupling_matrix_1d(const InteractionStrengths& s);

cplx bs_determinant_1d(cplx z, const InteractionStrengths& s);

// |(d/4 - 1) sqrt(m^2 - z^2) - (m tau + eta z)| for real z in [-m, m]
double gap_equation_residual_1d(double z, const InteractionStrengths& s);

enum class Branch1D { d_equals_4, z_plus, z_minus, numeric };
std::string to_string(Branch1D b);

struct Eigenvalue1D {
  double value = 0.0;
  Branch1D branch = Branch1D::numeric;
  double residual = 0.0;     // gap equation residual
  double bs_residual = 0.0;  // |det(I + P M(z))|
};

std::vector<Eigenvalue1D> discrete_spectrum_1d_closed_form(const InteractionStrengths& s);
std::vector<Eigenvalue1D> discrete_spectrum_1d_numeric(const InteractionStrengths& s,
                                                        int resolution = 20000, double tol = 1e-10);

// Krein correction: -G(x) (I + P M)^{-1} P G(-y)
Matrix2c resolvent_kernel_1d(cplx z, const InteractionStrengths& s, double x, double y);

// A spinor on R \ {0} given by its restrictions to [0, inf) and (-inf, 0].
struct PiecewiseSpinor1D {
  std::function<Vector2c(double)> plus, minus;
  std::function<Vector2c(double)> dplus, dminus;
};

Vector2c gamma0_1d(const PiecewiseSpinor1D& f);  // -i s1 (f(0+) - f(0-))
Vector2c gamma1_1d(const PiecewiseSpinor1D& f);  // (f(0+) + f(0-)) / 2

struct GreenIdentity1D {
  cplx lhs;  // (Tf, g) - (f, Tg)
  cplx rhs;  // (G1 f, G0 g) - (G0 f, G1 g)
  double residual;
};

// f, g must decay on [-half_width, half_width]; composite Gauss-Legendre per side.
GreenIdentity1D green_identity_residual_1d(const PiecewiseSpinor1D& f, const PiecewiseSpinor1D& g,
                                           double m, double half_width = 40.0, int panels = 800);

// Element of the maximal domain with (G0 f, G1 f) = ((c0, c1), (c2, c3)).
PiecewiseSpinor1D boundary_lift_1d(const Eigen::Vector4cd& c);

}  // namespace dshell
