#include "diracshell/spectral2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "diracshell/linalg.hpp"

namespace dshell {

namespace {

Matrix2c coupling2(const InteractionStrengths& s, const DiracRepresentation& rep, const Vec2& nu) {
  const double v[2] = {nu(0), nu(1)};
  return coupling_matrix(s, rep, v);
}

struct SmallEig {
  cplx mu;
  CVector x;
};

// Eigenvalue of smallest modulus by inverse iteration on a fixed LU.
SmallEig smallest_eigenvalue(const CMatrix& a, const CVector& start) {
  const Eigen::PartialPivLU<CMatrix> lu(a);
  CVector x = start;
  if (x.size() != a.rows() || x.norm() == 0.0) {
    x.resize(a.rows());
    for (int i = 0; i < x.size(); ++i) x(i) = cplx(1.0 + 0.37 * std::sin(1.3 * i), 0.21 * std::cos(0.7 * i));
  }
  x.normalize();
  cplx mu = 0.0;
  for (int it = 0; it < 200; ++it) {
    CVector y = lu.solve(x);
    const cplx next = 1.0 / x.dot(y);  // x^H y ~ 1/mu
    x = y.normalized();
    const bool done = it > 0 && std::abs(next - mu) <= 1e-14 + 1e-11 * std::abs(next);
    mu = next;
    if (done) break;
  }
  // Rayleigh quotient with the converged vector
  mu = x.dot(a * x);
  return {mu, x};
}

// Secant iteration on z -> mu(z); stays inside [lo, hi].
std::optional<double> secant_root(const InteractionStrengths& s, const QuadratureGrid& grid, double z0, double z1,
                                  double lo, double hi, double tol, CVector& vec) {
  auto mu = [&](double z) {
    const SmallEig e = smallest_eigenvalue(birman_schwinger_matrix(s, grid, z), vec);
    vec = e.x;
    return e.mu;
  };
  cplx f0 = mu(z0), f1 = mu(z1);
  for (int it = 0; it < 60; ++it) {
    if (f1 == f0) return std::nullopt;
    const double z2 = z1 - std::real(f1 * (z1 - z0) / (f1 - f0));
    if (!(z2 > lo && z2 < hi)) return std::nullopt;
    if (std::abs(z2 - z1) <= tol) return z2;
    z0 = z1;
    f0 = f1;
    z1 = z2;
    f1 = mu(z1);
  }
  return std::nullopt;
}

double sigma_min_at(const InteractionStrengths& s, const QuadratureGrid& grid, double z) {
  const Eigen::VectorXd sv = singular_values(birman_schwinger_matrix(s, grid, z));
  return sv(sv.size() - 1);
}

// golden-section minimum of sigma_min on [a, b]
double golden_min(const InteractionStrengths& s, const QuadratureGrid& grid, double a, double b, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = sigma_min_at(s, grid, c), fd = sigma_min_at(s, grid, d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = sigma_min_at(s, grid, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = sigma_min_at(s, grid, d);
    }
  }
  return 0.5 * (a + b);
}

double refine(const InteractionStrengths& s, const QuadratureGrid& grid, double guess, double h, double lo, double hi,
              double tol, CVector& vec) {
  // starting points stay strictly inside the gap
  const double a = std::max(guess - 0.5 * h, 0.5 * (lo + guess)), b = std::min(guess + 0.5 * h, 0.5 * (hi + guess));
  // mu(z) can behave like sqrt(z - z*) when two small eigenvalues collide,
  // so a secant root is kept only if sigma_min confirms it
  if (auto r = secant_root(s, grid, a, b, lo, hi, tol, vec))
    if (sigma_min_at(s, grid, *r) < 1e-9) return *r;
  // no clean zero crossing: fall back to the minimiser of sigma_min
  return golden_min(s, grid, std::max(lo, guess - h), std::min(hi, guess + h), tol);
}

}  // namespace

CMatrix coupling_blocks(const InteractionStrengths& s, const QuadratureGrid& g) {
  const DiracRepresentation rep = build_dirac_matrices(2);
  CMatrix p = CMatrix::Zero(2 * g.n, 2 * g.n);
  for (int j = 0; j < g.n; ++j) p.block<2, 2>(2 * j, 2 * j) = coupling2(s, rep, g.normal[j]);
  return p;
}

CMatrix birman_schwinger_matrix(const InteractionStrengths& s, const QuadratureGrid& g, cplx z, Execution exec) {
  const DiscretizedOperator c = assemble_C(z, s.m, g, exec);
  const DiracRepresentation rep = build_dirac_matrices(2);
  CMatrix a = c.weighted;
  for (int i = 0; i < g.n; ++i) a.middleRows(2 * i, 2) = (coupling2(s, rep, g.normal[i]) * a.middleRows(2 * i, 2)).eval();
  a += CMatrix::Identity(a.rows(), a.cols());
  return a;
}

ScanResult bs_scan(const InteractionStrengths& s, const QuadratureGrid& g, int points, double margin, Execution exec) {
  s.validate();
  if (!(s.m > 0.0)) throw DomainError("empty gap");
  if (points < 2) throw DomainError("scan needs at least two points");
  ScanResult r;
  r.n = g.n;
  r.z.resize(points);
  r.sigma_min.resize(points);
  const double zmax = s.m * (1.0 - margin);
  for (int i = 0; i < points; ++i) r.z[i] = -zmax + 2.0 * zmax * i / (points - 1);
  if (s.is_trivial()) {
    std::fill(r.sigma_min.begin(), r.sigma_min.end(), 1.0);
    return r;
  }
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (int i = 0; i < points; ++i) {
    const Eigen::VectorXd sv = singular_values(birman_schwinger_matrix(s, g, r.z[i], Execution::serial));
    r.sigma_min[i] = sv(sv.size() - 1);
  }
  return r;
}

void write_scan_csv(const ScanResult& scan, std::ostream& os) {
  char buf[80];
  os << "z,sigma_min\n";
  for (std::size_t i = 0; i < scan.z.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", scan.z[i], scan.sigma_min[i]);
    os << buf;
  }
}

double jump_condition_residual(const InteractionStrengths& s, const QuadratureGrid& g, double z, const CVector& phi,
                               const TraceOptions& traces) {
  const LayerPotential lp(z, s.m, g, phi);
  const OneSidedTraces tr = one_sided_traces(lp, traces);
  const DiracRepresentation rep = build_dirac_matrices(2);
  double worst = 0.0, scale = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const Vector2c gp = tr.plus.block<2, 1>(2 * j, 0), gm = tr.minus.block<2, 1>(2 * j, 0);
    const Vector2c r = kI * alpha_dot2(g.normal[j]) * (gp - gm) + coupling2(s, rep, g.normal[j]) * (0.5 * (gp + gm));
    worst = std::max(worst, r.norm());
    scale = std::max(scale, phi.segment<2>(2 * j).norm());
  }
  return scale > 0.0 ? worst / scale : worst;
}

std::vector<EigenpairReport> find_eigenvalues(const InteractionStrengths& s, const ClosedCurve& curve, int n,
                                              const EigenOptions& opt) {
  s.validate();
  if (!(s.m > 0.0)) throw DomainError("empty gap");
  if (s.is_trivial()) return {};
  const QuadratureGrid coarse = build_grid(curve, std::min(n, opt.scan_n));
  return find_eigenvalues(s, curve, n, bs_scan(s, coarse, opt.scan_points, opt.margin), opt);
}

std::vector<EigenpairReport> find_eigenvalues(const InteractionStrengths& s, const ClosedCurve& curve, int n,
                                              const ScanResult& scan, const EigenOptions& opt) {
  s.validate();
  if (!(s.m > 0.0)) throw DomainError("empty gap");
  if (scan.z.size() < 2) throw DomainError("scan needs at least two points");
  std::vector<EigenpairReport> out;
  if (s.is_trivial()) return out;
  const StrengthClassification cls = classify_strengths(s);
  const auto fine = std::make_shared<const QuadratureGrid>(build_grid(curve, n));
  const QuadratureGrid fine2 = build_grid(curve, 2 * n);
  const double h = scan.z[1] - scan.z[0];
  const double lo = -s.m, hi = s.m;
  const double tol = opt.tol_z * s.m;
  const int np = static_cast<int>(scan.z.size());

  for (int i = 0; i < np; ++i) {
    const double v = scan.sigma_min[i];
    const bool left = i == 0 || v < scan.sigma_min[i - 1];
    const bool right = i == np - 1 || v <= scan.sigma_min[i + 1];
    if (!(left && right) || v >= opt.candidate) continue;

    EigenpairReport rep;
    rep.n = n;
    rep.strengths = s;
    rep.grid = fine;
    if (i == 0 || i == np - 1) rep.warnings.push_back("branch-point proximity");

    CVector vec;
    rep.z = refine(s, *fine, scan.z[i], h, lo, hi, tol, vec);
    rep.z_2n = refine(s, fine2, rep.z, 1e-3 * h, lo, hi, tol, vec);
    if (s.m - std::abs(rep.z) < opt.margin * s.m &&
        std::find(rep.warnings.begin(), rep.warnings.end(), "branch-point proximity") == rep.warnings.end())
      rep.warnings.push_back("branch-point proximity");
    if (cls.regime == Regime::critical && cls.extra_essential_point &&
        std::abs(rep.z - *cls.extra_essential_point) < std::max(2.0 * h, 1e-6 * s.m))
      rep.warnings.push_back("possible essential-spectrum point, not an isolated eigenvalue");

    const SvdResult sv = svd(birman_schwinger_matrix(s, *fine, rep.z));
    const int last = static_cast<int>(sv.s.size()) - 1;
    rep.certificate.sigma_min = sv.s(last);
    rep.multiplicity = 0;
    for (int k = last; k >= 0 && sv.s(k) < 10.0 * opt.tol_bs; --k) ++rep.multiplicity;
    // weighted right singular vector back to nodal values
    CVector phi = sv.v.col(last);
    for (int j = 0; j < n; ++j) phi.segment<2>(2 * j) /= std::sqrt(fine->speed[j]);
    rep.density = phi.normalized();
    rep.certificate.convergence = std::abs(rep.z - rep.z_2n);
    rep.certificate.jump_residual = jump_condition_residual(s, *fine, rep.z, rep.density, opt.traces);
    rep.accepted = rep.certificate.sigma_min < opt.tol_bs && rep.certificate.convergence < opt.tol_conv * s.m &&
                   rep.certificate.jump_residual < opt.tol_jump;

    // neighbouring coarse minima can refine to the same root
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const EigenpairReport& o) {
      return std::abs(o.z - rep.z) < 1e3 * tol;
    });
    if (!duplicate) out.push_back(std::move(rep));
  }
  return out;
}

EigenfunctionSamples reconstruct_eigenfunction(const EigenpairReport& report, const std::vector<Vec2>& points,
                                               const TraceOptions& traces) {
  if (!report.grid || report.density.size() != 2 * report.grid->n) throw DomainError("eigenpair report has no density");
  const LayerPotential lp(report.z, report.strengths.m, *report.grid, report.density);
  EigenfunctionSamples out;
  const std::vector<SpinorBlock> vals = lp.evaluate(points);
  out.values.reserve(vals.size());
  for (const auto& v : vals) out.values.push_back(v.col(0));
  out.jump_residual = jump_condition_residual(report.strengths, *report.grid, report.z, report.density, traces);
  return out;
}

ResolventCorrection::ResolventCorrection(const InteractionStrengths& s, const QuadratureGrid& g, cplx z,
                                         double pole_tol)
    : s_(s), grid_(std::make_shared<const QuadratureGrid>(g)), z_(z), green_(z, s.m) {
  s.validate();
  const CMatrix bs = birman_schwinger_matrix(s, g, z);
  const Eigen::VectorXd sv = singular_values(bs);
  sigma_min_ = sv(sv.size() - 1);
  if (sigma_min_ < pole_tol) throw DomainError("resolvent pole proximity");
  // natural frame: S^{-1/2} (I + P C_w) S^{1/2}
  CMatrix a = bs;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) a.block<2, 2>(2 * i, 2 * j) *= std::sqrt(g.speed[j] / g.speed[i]);
  lu_.compute(a);
  p_ = coupling_blocks(s, g);
}

Matrix2c ResolventCorrection::operator()(const Vec2& x, const Vec2& y) const {
  const QuadratureGrid& g = *grid_;
  if (s_.is_trivial()) return Matrix2c::Zero();
  CMatrix col(2 * g.n, 2);
  for (int j = 0; j < g.n; ++j) col.middleRows(2 * j, 2) = green_(g.x[j] - y);
  const CMatrix dens = lu_.solve(p_ * col);
  const LayerPotential lp(z_, s_.m, g, dens);
  return -lp.evaluate(x);
}

Matrix2c resolvent_correction_kernel(const InteractionStrengths& s, const QuadratureGrid& grid, cplx z, const Vec2& x,
                                     const Vec2& y) {
  return ResolventCorrection(s, grid, z)(x, y);
}

}  // namespace dshell
