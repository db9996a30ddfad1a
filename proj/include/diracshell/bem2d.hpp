#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "diracshell/dirac_algebra.hpp"
#include "diracshell/geometry2d.hpp"

namespace dshell {

enum class Execution { serial, parallel };

enum class OperatorLabel { C, D_alpha, Riesz };
std::string to_string(OperatorLabel l);

// Nystrom matrix of a boundary operator on L^2(Sigma).
//   matrix:   acts on nodal values phi_j
//   weighted: S^{1/2} matrix S^{-1/2} with S = diag(|gamma'(t_j)|); its
//             Euclidean norm is the L^2(Sigma) norm, and it is exactly
//             Hermitian when the operator is self-adjoint.
struct DiscretizedOperator {
  OperatorLabel label = OperatorLabel::C;
  int n = 0;
  cplx z = 0.0;
  double m = 0.0;
  CMatrix matrix;
  CMatrix weighted;
  std::shared_ptr<const QuadratureGrid> grid;
};

// Free Green function G_{z,2} with kappa = -i k; rebuilt per (z, m).
class GreenFunction2D {
 public:
  GreenFunction2D(cplx z, double m);
  Matrix2c operator()(const Vec2& d) const;
  cplx z() const { return z_; }
  double m() const { return m_; }
  cplx kappa() const { return kappa_; }
  const Matrix2c& mass_part() const { return zm_; }  // z I + m s3

 private:
  cplx z_;
  double m_;
  cplx kappa_;
  Matrix2c zm_;
};

// a . v for q = 2 (s1 v1 + s2 v2)
Matrix2c alpha_dot2(const Vec2& v);

DiscretizedOperator assemble_D_alpha(const QuadratureGrid& grid, Execution exec = Execution::parallel);
DiscretizedOperator assemble_C(cplx z, double m, const QuadratureGrid& grid, Execution exec = Execution::parallel);
DiscretizedOperator assemble_riesz(const QuadratureGrid& grid, Execution exec = Execution::parallel);

// Largest singular value.
double spectral_norm(const CMatrix& a);

// Orthonormal basis (weighted frame) of the resolved subspace: per spinor
// component, trigonometric polynomials in t of degree <= degree (N/4 when
// negative). Operator residuals below are spectral norms restricted to it;
// the last few modes below Nyquist carry O(1) aliasing error in any
// collocation scheme and are excluded.
CMatrix resolved_basis(const QuadratureGrid& grid, int blocks, int degree = -1);

// || (W - W^H) Q || for the weighted matrix W and resolved basis Q
double hermiticity_deviation(const DiscretizedOperator& op);

// || (4 (C diag(a.nu))^2 + I) Q || in L^2(Sigma)
double cinv_residual(const DiscretizedOperator& c);
double cinv_residual(cplx z, double m, const QuadratureGrid& grid);

// || (R^2 - 4 I) Q || in L^2(Sigma)
double riesz_square_residual(const DiscretizedOperator& r);
double riesz_square_residual(const QuadratureGrid& grid);

// blockdiag(a.nu_j), 2N x 2N
CMatrix normal_alpha_blocks(const QuadratureGrid& grid);

struct OmegaBounds {
  double omega_min = 0.0;
  double omega_max = 0.0;
  std::vector<double> spectrum;  // sorted eigenvalues of |D_alpha^N|
  int outliers_removed = 0;      // per side
};

// Default outlier budget ceil(N/64) when k < 0.
OmegaBounds omega_bounds(const DiscretizedOperator& d_alpha, int k = -1);

// Rows: label, N, z_re, z_im, m header, then row-major (re,im) pairs of matrix.
void dump_matrix_csv(const DiscretizedOperator& op, std::ostream& os);

}  // namespace dshell
