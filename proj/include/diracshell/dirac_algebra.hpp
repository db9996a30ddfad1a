#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dshell {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Raised for any violated precondition; the message names the condition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DiracRepresentation {
  int q = 0;
  int n_spinor = 0;
  // alphas[0] is the mass matrix, alphas[1..q] the kinetic ones.
  std::vector<CMatrix> alphas;

  const CMatrix& alpha(int j) const { return alphas.at(j); }
  CMatrix identity() const { return CMatrix::Identity(n_spinor, n_spinor); }
  // alpha . v for a q-vector v
  CMatrix alpha_dot(std::span<const double> v) const;
};

DiracRepresentation build_dirac_matrices(int q);

// max over j,k of the max-row-sum norm of (a_j a_k + a_k a_j)/2 - delta_jk I
double verify_anticommutation(const DiracRepresentation& rep);

// Frobenius norm of (a.xi + m a0 - z)(a.xi + m a0 + z) - (|xi|^2 + m^2 - z^2) I
double symbol_factorization_check(const DiracRepresentation& rep, double m, cplx z,
                                  std::span<const double> xi);

struct InteractionStrengths {
  double eta = 0.0;
  double tau = 0.0;
  double lambda = 0.0;
  double m = 1.0;

  double d() const { return eta * eta - tau * tau - lambda * lambda; }
  double criticality() const {
    const double a = d() / 4.0 - 1.0;
    return a * a - lambda * lambda;
  }
  bool is_trivial() const { return eta == 0.0 && tau == 0.0 && lambda == 0.0; }
  bool is_critical() const;
  bool is_confinement() const;
  bool is_zigzag() const;
  void validate() const;
};

struct SpectralParameters {
  cplx z;
  cplx k;     // sqrt(z^2 - m^2), Im k > 0
  cplx zeta;  // (z + m) / k
};

// Square root on the branch Im > 0 (principal root flipped when needed).
cplx upper_sqrt(cplx w);
bool on_branch_cut(cplx z, double m);
SpectralParameters spectral_parameters(cplx z, double m);

// P = eta I + tau a0 + lambda i (a.nu) a0
CMatrix coupling_matrix(const InteractionStrengths& s, const DiracRepresentation& rep,
                        std::span<const double> nu);

enum class Regime { trivial, non_critical, critical };
std::string to_string(Regime r);

struct StrengthClassification {
  Regime regime = Regime::trivial;
  bool confinement = false;
  bool zigzag = false;
  double d = 0.0;
  double criticality = 0.0;
  std::optional<double> extra_essential_point;
  std::string essential_spectrum;
  bool gap_empty = false;
  std::vector<std::string> notes;
};

StrengthClassification classify_strengths(const InteractionStrengths& s);

// Green function of (-i a.grad + m a0 - z) in dimension rep.q, evaluated at x != 0.
CMatrix fundamental_solution(const DiracRepresentation& rep, double m, cplx z,
                             std::span<const double> x);

// Central-difference norm of (-i a.grad + m a0 - z) G(x) with step h.
double fundamental_solution_residual(const DiracRepresentation& rep, double m, cplx z,
                                     std::span<const double> x, double h);

std::string format_number(double v);

}  // namespace dshell
