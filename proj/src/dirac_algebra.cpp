#include "diracshell/dirac_algebra.hpp"

#include <cmath>
#include <cstdio>

#include "diracshell/bessel.hpp"

namespace dshell {

namespace {

Matrix2c pauli(int j) {
  Matrix2c s;
  switch (j) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: s = Matrix2c::Identity();
  }
  return s;
}

double tolerance_scale(double d) { return 1e-12 * std::max(1.0, d * d); }

}  // namespace

CMatrix DiracRepresentation::alpha_dot(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != q) throw DomainError("alpha_dot: vector length must equal q");
  CMatrix r = CMatrix::Zero(n_spinor, n_spinor);
  for (int j = 0; j < q; ++j) r += v[j] * alphas[j + 1];
  return r;
}

DiracRepresentation build_dirac_matrices(int q) {
  DiracRepresentation rep;
  rep.q = q;
  if (q == 1 || q == 2) {
    rep.n_spinor = 2;
    rep.alphas.push_back(pauli(3));
    for (int j = 1; j <= q; ++j) rep.alphas.push_back(pauli(j));
  } else if (q == 3) {
    rep.n_spinor = 4;
    CMatrix a0 = CMatrix::Zero(4, 4);
    a0.topLeftCorner(2, 2) = Matrix2c::Identity();
    a0.bottomRightCorner(2, 2) = -Matrix2c::Identity();
    rep.alphas.push_back(a0);
    for (int j = 1; j <= 3; ++j) {
      CMatrix a = CMatrix::Zero(4, 4);
      a.topRightCorner(2, 2) = pauli(j);
      a.bottomLeftCorner(2, 2) = pauli(j);
      rep.alphas.push_back(a);
    }
  } else {
    throw DomainError("unsupported dimension: q must be 1, 2 or 3");
  }
  return rep;
}

double verify_anticommutation(const DiracRepresentation& rep) {
  double worst = 0.0;
  const CMatrix id = rep.identity();
  const int n = static_cast<int>(rep.alphas.size());
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      CMatrix e = 0.5 * (rep.alphas[j] * rep.alphas[k] + rep.alphas[k] * rep.alphas[j]);
      if (j == k) e -= id;
      worst = std::max(worst, e.cwiseAbs().rowwise().sum().maxCoeff());
    }
  return worst;
}

double symbol_factorization_check(const DiracRepresentation& rep, double m, cplx z,
                                  std::span<const double> xi) {
  const CMatrix id = rep.identity();
  const CMatrix base = rep.alpha_dot(xi) + m * rep.alpha(0);
  double xi2 = 0.0;
  for (double v : xi) xi2 += v * v;
  const CMatrix lhs = (base - z * id) * (base + z * id);
  return (lhs - (xi2 + m * m - z * z) * id).norm();
}

bool InteractionStrengths::is_critical() const {
  return std::abs(criticality()) <= tolerance_scale(d());
}

bool InteractionStrengths::is_confinement() const {
  return std::abs(d() + 4.0) <= 1e-12 * std::max(1.0, std::abs(d()));
}

bool InteractionStrengths::is_zigzag() const {
  return is_confinement() && std::abs(lambda * lambda - 4.0) <= 1e-12 * std::max(1.0, lambda * lambda);
}

void InteractionStrengths::validate() const {
  if (!std::isfinite(eta) || !std::isfinite(tau) || !std::isfinite(lambda) || !std::isfinite(m))
    throw DomainError("interaction strengths must be finite");
  if (m < 0.0) throw DomainError("mass must be non-negative");
}

cplx upper_sqrt(cplx w) {
  cplx r = std::sqrt(w);
  if (r.imag() < 0.0) r = -r;
  return r;
}

bool on_branch_cut(cplx z, double m) { return z.imag() == 0.0 && std::abs(z.real()) >= m; }

SpectralParameters spectral_parameters(cplx z, double m) {
  if (m < 0.0) throw DomainError("mass must be non-negative");
  if (on_branch_cut(z, m)) throw DomainError("spectral parameter on branch cut");
  SpectralParameters p;
  p.z = z;
  p.k = upper_sqrt(z * z - m * m);
  p.zeta = (z + m) / p.k;
  return p;
}

CMatrix coupling_matrix(const InteractionStrengths& s, const DiracRepresentation& rep,
                        std::span<const double> nu) {
  double n2 = 0.0;
  for (double v : nu) n2 += v * v;
  if (std::abs(n2 - 1.0) > 1e-10) throw DomainError("normal vector must have unit length");
  const CMatrix& a0 = rep.alpha(0);
  return s.eta * rep.identity() + s.tau * a0 + s.lambda * kI * rep.alpha_dot(nu) * a0;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::trivial: return "trivial";
    case Regime::non_critical: return "non_critical";
    case Regime::critical: return "critical";
  }
  return "unknown";
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

StrengthClassification classify_strengths(const InteractionStrengths& s) {
  s.validate();
  StrengthClassification c;
  c.d = s.d();
  c.criticality = s.criticality();
  const double m = s.m;
  c.gap_empty = (m == 0.0);
  const std::string lo = "(-inf," + format_number(-m) + "]";
  const std::string hi = "[" + format_number(m) + ",inf)";
  c.essential_spectrum = c.gap_empty ? "(-inf,inf)" : lo + " U " + hi;

  if (s.is_trivial()) {
    c.regime = Regime::trivial;
    c.notes.push_back("free Dirac operator");
    return c;
  }
  c.regime = s.is_critical() ? Regime::critical : Regime::non_critical;
  c.confinement = s.is_confinement();
  c.zigzag = s.is_zigzag();

  if (c.regime == Regime::critical && !c.confinement) {
    // critical and d != -4 forces eta != 0
    const double p = -m * s.tau / s.eta;
    c.extra_essential_point = p == 0.0 ? 0.0 : p;
    if (!c.gap_empty)
      c.essential_spectrum = lo + " U {" + format_number(*c.extra_essential_point) + "} U " + hi;
    c.notes.push_back("extra essential spectrum point -m*tau/eta (established for q = 2)");
  }
  if (c.confinement) {
    c.notes.push_back("confinement: the operator decouples into interior and exterior parts");
    if (!c.zigzag) {
      c.notes.push_back("interior operator has purely discrete spectrum");
    } else if (s.eta == 0.0 && s.tau == 0.0) {
      const double sgn = s.lambda > 0 ? 1.0 : -1.0;
      c.notes.push_back("zigzag: " + format_number(-sgn * m) +
                        " is an eigenvalue with infinite multiplicity of the interior operator");
      c.notes.push_back("zigzag: " + format_number(sgn * m) +
                        " is an eigenvalue with infinite multiplicity of the exterior operator (q = 2)");
    } else {
      const bool interior = s.eta * s.tau * s.lambda > 0.0;
      c.notes.push_back(std::string("zigzag: the ") + (interior ? "interior" : "exterior") +
                        " operator is unitarily equivalent to the case eta = tau = 0");
    }
  }
  if (c.gap_empty) c.notes.push_back("m = 0: the spectral gap is empty");
  return c;
}

CMatrix fundamental_solution(const DiracRepresentation& rep, double m, cplx z,
                             std::span<const double> x) {
  if (static_cast<int>(x.size()) != rep.q) throw DomainError("point dimension must equal q");
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double r = std::sqrt(r2);
  if (r == 0.0) throw DomainError("singular point");
  const SpectralParameters sp = spectral_parameters(z, m);
  const cplx k = sp.k;
  const CMatrix& a0 = rep.alpha(0);
  const CMatrix id = rep.identity();

  if (rep.q == 1) {
    const double sg = x[0] > 0 ? 1.0 : -1.0;
    Matrix2c g;
    g << sp.zeta, sg, sg, 1.0 / sp.zeta;
    return 0.5 * kI * std::exp(kI * k * r) * g;
  }
  if (rep.q == 2) {
    const BesselK01 kb = bessel_k01(-kI * k * r);
    return (k / (2 * kPi)) * kb.k1 * rep.alpha_dot(x) / r +
           (1.0 / (2 * kPi)) * kb.k0 * (z * id + m * a0);
  }
  const CMatrix ax = rep.alpha_dot(x);
  return (z * id + m * a0 + (1.0 - kI * k * r) * kI * ax / r2) * std::exp(kI * k * r) / (4 * kPi * r);
}

double fundamental_solution_residual(const DiracRepresentation& rep, double m, cplx z,
                                     std::span<const double> x, double h) {
  const int q = rep.q;
  std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
  CMatrix res = (m * rep.alpha(0) - z * rep.identity()) * fundamental_solution(rep, m, z, x);
  for (int j = 0; j < q; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const CMatrix dg = (fundamental_solution(rep, m, z, xp) - fundamental_solution(rep, m, z, xm)) / (2 * h);
    res += -kI * rep.alpha(j + 1) * dg;
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return res.norm();
}

}  // namespace dshell
