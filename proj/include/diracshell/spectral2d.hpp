#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diracshell/layer_potential.hpp"

namespace dshell {

struct ScanResult {
  int n = 0;
  std::vector<double> z;
  std::vector<double> sigma_min;
};

// Nodal coupling blockdiag(P(nu_j)), 2N x 2N.
CMatrix coupling_blocks(const InteractionStrengths& s, const QuadratureGrid& grid);

// I + P C_z in the weighted frame (its singular values are L^2(Sigma) ones).
CMatrix birman_schwinger_matrix(const InteractionStrengths& s, const QuadratureGrid& grid, cplx z,
                                Execution exec = Execution::parallel);

// Smallest singular value of I + P C_z at `points` equispaced z in
// [-m (1 - margin), m (1 - margin)].
ScanResult bs_scan(const InteractionStrengths& s, const QuadratureGrid& grid, int points = 400, double margin = 1e-3,
                   Execution exec = Execution::parallel);

void write_scan_csv(const ScanResult& scan, std::ostream& os);

struct EigenCertificate {
  double sigma_min = 0.0;       // at z(N)
  double convergence = 0.0;     // |z(N) - z(2N)|
  double jump_residual = 0.0;   // relative to max_j |phi_j|
};

struct EigenpairReport {
  double z = 0.0;     // refined at N
  double z_2n = 0.0;  // refined at 2N
  int n = 0;
  InteractionStrengths strengths;
  std::shared_ptr<const QuadratureGrid> grid;
  CVector density;  // nodal, Euclidean norm 1
  EigenCertificate certificate;
  int multiplicity = 1;
  bool accepted = false;
  std::vector<std::string> warnings;
};

struct EigenOptions {
  int scan_points = 400;
  int scan_n = 64;            // coarse grid for locating dips, capped at N
  double margin = 1e-3;       // relative gap margin of the scan
  double candidate = 0.1;     // coarse dips below this are refined
  double tol_bs = 1e-6;
  double tol_conv = 1e-6;     // relative to m
  double tol_jump = 1e-4;
  double tol_z = 1e-10;       // secant stopping, relative to m
  TraceOptions traces;
};

std::vector<EigenpairReport> find_eigenvalues(const InteractionStrengths& s, const ClosedCurve& curve, int n,
                                              const EigenOptions& opt = {});

// Same, with the coarse scan supplied (its grid must come from `curve`).
std::vector<EigenpairReport> find_eigenvalues(const InteractionStrengths& s, const ClosedCurve& curve, int n,
                                              const ScanResult& scan, const EigenOptions& opt = {});

struct EigenfunctionSamples {
  std::vector<Vector2c> values;
  double jump_residual = 0.0;  // max_j |i(a.nu)(g+ - g-) + P (g+ + g-)/2| / max_j |phi_j|
};

EigenfunctionSamples reconstruct_eigenfunction(const EigenpairReport& report, const std::vector<Vec2>& points,
                                               const TraceOptions& traces = {});

// Jump-condition residual of u = Phi_z phi on the grid.
double jump_condition_residual(const InteractionStrengths& s, const QuadratureGrid& grid, double z,
                               const CVector& density, const TraceOptions& traces = {});

// Kernel of (A - z)^{-1} - (A_0 - z)^{-1} at x, y off the curve:
//   K(x,y) = - sum_ij w_i G(x - x_i) [(I + P C)^{-1} P]_ij G(x_j - y)
// Throws "resolvent pole proximity" when sigma_min(I + P C_z) < pole_tol.
class ResolventCorrection {
 public:
  ResolventCorrection(const InteractionStrengths& s, const QuadratureGrid& grid, cplx z, double pole_tol = 1e-6);
  Matrix2c operator()(const Vec2& x, const Vec2& y) const;
  double sigma_min() const { return sigma_min_; }

 private:
  InteractionStrengths s_;
  std::shared_ptr<const QuadratureGrid> grid_;
  cplx z_;
  GreenFunction2D green_;
  Eigen::PartialPivLU<CMatrix> lu_;  // natural-frame I + P C
  CMatrix p_;
  double sigma_min_ = 0.0;
};

Matrix2c resolvent_correction_kernel(const InteractionStrengths& s, const QuadratureGrid& grid, cplx z, const Vec2& x,
                                     const Vec2& y);

}  // namespace dshell
