#include "diracshell/triple_1d.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

namespace dshell {

namespace {

Matrix2c sigma1() {
  Matrix2c s;
  s << 0, 1, 1, 0;
  return s;
}

Matrix2c green_1d(const SpectralParameters& sp, double x) {
  const double sg = x >= 0 ? 1.0 : -1.0;
  Matrix2c g;
  g << sp.zeta, sg, sg, 1.0 / sp.zeta;
  return 0.5 * kI * std::exp(kI * sp.k * std::abs(x)) * g;
}

double gap_function(double z, const InteractionStrengths& s) {
  const double m = s.m;
  const double root = std::sqrt(std::max(0.0, m * m - z * z));
  return (s.d() / 4.0 - 1.0) * root - (m * s.tau + s.eta * z);
}

Eigenvalue1D make_eigenvalue(double z, Branch1D b, const InteractionStrengths& s) {
  Eigenvalue1D e;
  e.value = z == 0.0 ? 0.0 : z;
  e.branch = b;
  e.residual = std::abs(gap_function(z, s));
  e.bs_residual = std::abs(bs_determinant_1d(z, s));
  return e;
}

void require_gap(const InteractionStrengths& s) {
  s.validate();
  if (!(s.m > 0.0)) throw DomainError("empty gap: m must be positive");
}

}  // namespace

Matrix2c weyl_1d(cplx z, double m) {
  const SpectralParameters sp = spectral_parameters(z, m);
  Matrix2c w = Matrix2c::Zero();
  w(0, 0) = 0.5 * kI * sp.zeta;
  w(1, 1) = 0.5 * kI / sp.zeta;
  return w;
}

Vector2c gamma_field_1d(cplx z, double m, const Vector2c& xi, double x) {
  if (x == 0.0) throw DomainError("gamma field is evaluated off the interaction point");
  return green_1d(spectral_parameters(z, m), x) * xi;
}

Matrix2c coupling_matrix_1d(const InteractionStrengths& s) {
  const DiracRepresentation rep = build_dirac_matrices(1);
  const double nu[1] = {-1.0};
  return coupling_matrix(s, rep, nu);
}

cplx bs_determinant_1d(cplx z, const InteractionStrengths& s) {
  return (Matrix2c::Identity() + coupling_matrix_1d(s) * weyl_1d(z, s.m)).determinant();
}

double gap_equation_residual_1d(double z, const InteractionStrengths& s) {
  return std::abs(gap_function(z, s));
}

std::string to_string(Branch1D b) {
  switch (b) {
    case Branch1D::d_equals_4: return "d_equals_4";
    case Branch1D::z_plus: return "z_plus";
    case Branch1D::z_minus: return "z_minus";
    case Branch1D::numeric: return "numeric";
  }
  return "unknown";
}

std::vector<Eigenvalue1D> discrete_spectrum_1d_closed_form(const InteractionStrengths& s) {
  require_gap(s);
  const double m = s.m, eta = s.eta, tau = s.tau, lambda = s.lambda, d = s.d();
  std::vector<Eigenvalue1D> out;
  if (s.is_trivial()) return out;
  if (std::abs(d - 4.0) <= 1e-12 * std::max(1.0, std::abs(d))) {
    out.push_back(make_eigenvalue(-m * tau / eta, Branch1D::d_equals_4, s));
    return out;
  }
  const double a = d / 4.0 - 1.0;
  const double denom = eta * eta + a * a;
  const double spread = std::abs(a) * std::sqrt(lambda * lambda + (d / 4.0 + 1.0) * (d / 4.0 + 1.0));
  const std::array<std::pair<double, Branch1D>, 2> cands = {
      std::pair{m * (-eta * tau + spread) / denom, Branch1D::z_plus},
      std::pair{m * (-eta * tau - spread) / denom, Branch1D::z_minus}};
  for (const auto& [z, b] : cands) {
    if (!(std::abs(z) < m)) continue;
    if (!((d - 4.0) * (m * tau + eta * z) > 0.0)) continue;
    if (!out.empty() && std::abs(out.back().value - z) <= 1e-14 * m) continue;
    out.push_back(make_eigenvalue(z, b, s));
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.value < r.value; });
  return out;
}

std::vector<Eigenvalue1D> discrete_spectrum_1d_numeric(const InteractionStrengths& s, int resolution,
                                                        double tol) {
  require_gap(s);
  if (resolution < 4) throw DomainError("resolution must be at least 4");
  std::vector<Eigenvalue1D> out;
  if (s.is_trivial()) return out;
  const double m = s.m;
  const int n = resolution;
  std::vector<double> zs(n + 1), gs(n + 1);
#pragma omp parallel for schedule(static)
  for (int i = 0; i <= n; ++i) {
    zs[i] = i == n ? m : -m + 2.0 * m * i / n;
    gs[i] = gap_function(zs[i], s);
  }
  auto g = [&](double z) { return gap_function(z, s); };
  auto push = [&](double z) {
    if (!(std::abs(z) < m)) return;
    for (const auto& e : out)
      if (std::abs(e.value - z) <= 1e-9 * m) return;
    out.push_back(make_eigenvalue(z, Branch1D::numeric, s));
  };

  for (int i = 0; i < n; ++i) {
    double lo = zs[i], hi = zs[i + 1], glo = gs[i], ghi = gs[i + 1];
    if (glo == 0.0) {
      push(lo);
      continue;
    }
    if (glo * ghi < 0.0) {
      for (int it = 0; it < 200 && hi - lo > 1e-15 * m; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm < 0) == (glo < 0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      push(0.5 * (lo + hi));
    }
  }
  // touching roots: local minima of |g| without a sign change
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 1; i < n; ++i) {
    const double a0 = std::abs(gs[i - 1]), a1 = std::abs(gs[i]), a2 = std::abs(gs[i + 1]);
    if (!(a1 <= a0 && a1 <= a2) || gs[i - 1] * gs[i + 1] <= 0.0 || gs[i] * gs[i - 1] <= 0.0) continue;
    double lo = zs[i - 1], hi = zs[i + 1];
    double c = hi - gr * (hi - lo), dd = lo + gr * (hi - lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * m; ++it) {
      if (std::abs(g(c)) < std::abs(g(dd))) hi = dd; else lo = c;
      c = hi - gr * (hi - lo);
      dd = lo + gr * (hi - lo);
    }
    const double z = 0.5 * (lo + hi);
    if (std::abs(g(z)) <= tol * m) push(z);
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.value < r.value; });
  return out;
}

Matrix2c resolvent_kernel_1d(cplx z, const InteractionStrengths& s, double x, double y) {
  s.validate();
  const SpectralParameters sp = spectral_parameters(z, s.m);
  const Matrix2c p = coupling_matrix_1d(s);
  const Matrix2c a = Matrix2c::Identity() + p * weyl_1d(z, s.m);
  if (std::abs(a.determinant()) < 1e-12) throw DomainError("pole of resolvent");
  return -green_1d(sp, x) * a.inverse() * p * green_1d(sp, -y);
}

Vector2c gamma0_1d(const PiecewiseSpinor1D& f) { return -kI * sigma1() * (f.plus(0.0) - f.minus(0.0)); }

Vector2c gamma1_1d(const PiecewiseSpinor1D& f) { return 0.5 * (f.plus(0.0) + f.minus(0.0)); }

GreenIdentity1D green_identity_residual_1d(const PiecewiseSpinor1D& f, const PiecewiseSpinor1D& g,
                                           double m, double half_width, int panels) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  const Matrix2c s1 = sigma1();
  Matrix2c s3;
  s3 << 1, 0, 0, -1;
  auto t = [&](const Vector2c& v, const Vector2c& dv) -> Vector2c { return -kI * s1 * dv + m * s3 * v; };

  const double h = half_width / panels;
  const auto& abs = Rule::abscissa();
  const auto& wts = Rule::weights();
  cplx lhs = 0.0;
  auto integrand = [&](double x, bool right) {
    const Vector2c fv = right ? f.plus(x) : f.minus(x);
    const Vector2c fd = right ? f.dplus(x) : f.dminus(x);
    const Vector2c gv = right ? g.plus(x) : g.minus(x);
    const Vector2c gd = right ? g.dplus(x) : g.dminus(x);
    return gv.dot(t(fv, fd)) - t(gv, gd).dot(fv);
  };
  for (int p = 0; p < panels; ++p) {
    const double c = (p + 0.5) * h;
    for (std::size_t k = 0; k < abs.size(); ++k) {
      const int signs = abs[k] == 0.0 ? 1 : 2;
      for (int sgn = 0; sgn < signs; ++sgn) {
        const double xi = sgn == 0 ? abs[k] : -abs[k];
        const double w = 0.5 * h * wts[k];
        lhs += w * integrand(c + 0.5 * h * xi, true);
        lhs += w * integrand(-(c + 0.5 * h * xi), false);
      }
    }
  }
  // Eigen's dot conjugates its left argument: (u, v) = v^H u
  const cplx rhs = gamma0_1d(g).dot(gamma1_1d(f)) - gamma1_1d(g).dot(gamma0_1d(f));
  return {lhs, rhs, std::abs(lhs - rhs)};
}

PiecewiseSpinor1D boundary_lift_1d(const Eigen::Vector4cd& c) {
  const Vector2c jump = 0.5 * kI * Vector2c(c(1), c(0));
  const Vector2c mean(c(2), c(3));
  PiecewiseSpinor1D f;
  f.plus = [=](double x) -> Vector2c { return (jump + mean) * std::exp(-x); };
  f.dplus = [=](double x) -> Vector2c { return -(jump + mean) * std::exp(-x); };
  f.minus = [=](double x) -> Vector2c { return (mean - jump) * std::exp(x); };
  f.dminus = [=](double x) -> Vector2c { return (mean - jump) * std::exp(x); };
  return f;
}

}  // namespace dshell
