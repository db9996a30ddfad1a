#include "diracshell/bem2d.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "diracshell/bessel.hpp"
#include "diracshell/linalg.hpp"
#include "diracshell/quadrature.hpp"

namespace dshell {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

Matrix2c sigma3() {
  Matrix2c s;
  s << 1, 0, 0, -1;
  return s;
}

// Per-grid quantities shared by the assembly routines.
struct SplitTables {
  std::vector<double> hilbert, logw, cot, log4sin2, sq;
  std::vector<Matrix2c> a;  // i (a . T) / 2
};

SplitTables make_tables(const QuadratureGrid& g) {
  const int n = g.n;
  SplitTables s;
  s.hilbert = hilbert_weights(n);
  s.logw = log_weights(n);
  s.cot.assign(n, 0.0);
  s.log4sin2.assign(n, 0.0);
  for (int k = 1; k < n; ++k) {
    s.cot[k] = 1.0 / std::tan(kPi * k / n);
    const double sn = std::sin(kPi * k / n);
    s.log4sin2[k] = std::log(4.0 * sn * sn);
  }
  s.sq.resize(n);
  s.a.resize(n);
  for (int j = 0; j < n; ++j) {
    s.sq[j] = std::sqrt(g.speed[j]);
    s.a[j] = 0.5 * kI * alpha_dot2(g.dx[j] / g.speed[j]);
  }
  return s;
}

// Principal-value part in parameter form: the Hilbert kernel a(t_i) cot(pi(t_i - s))
// with discrete weights, plus the smooth remainder by the trapezoid rule. The
// Nyquist mode of the first spinor component is read as -N/2 and that of the
// second as +N/2, matching the angular-momentum pairing of a.nu.
Matrix2c pv_block(const QuadratureGrid& g, const SplitTables& t, int i, int j, Matrix2c* dker_out) {
  const int n = g.n;
  const int k = ((i - j) % n + n) % n;
  if (i == j) {
    if (dker_out) dker_out->setZero();
    return (-kI / (4.0 * kPi * g.speed[i])) * alpha_dot2(g.ddx[i]) / double(n) + t.a[i] * (kI * sigma3() / double(n));
  }
  const Vec2 d = g.x[i] - g.x[j];
  const Matrix2c dker = (kI * g.speed[j] / (kTwoPi * d.squaredNorm())) * alpha_dot2(d);
  if (dker_out) *dker_out = dker;
  const double alt = (k % 2 ? -1.0 : 1.0) / double(n);
  return t.a[i] * (t.hilbert[k] * Matrix2c::Identity() + kI * alt * sigma3()) + (dker - t.a[i] * t.cot[k]) / double(n);
}

CMatrix weighted_from_natural(const CMatrix& c, const SplitTables& t, int block) {
  CMatrix out = c;
  const int n = static_cast<int>(t.sq.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out.block(block * i, block * j, block, block) *= t.sq[i] / t.sq[j];
  return out;
}

std::shared_ptr<const QuadratureGrid> share(const QuadratureGrid& g) {
  return std::make_shared<const QuadratureGrid>(g);
}

}  // namespace

std::string to_string(OperatorLabel l) {
  switch (l) {
    case OperatorLabel::C: return "C";
    case OperatorLabel::D_alpha: return "D_alpha";
    case OperatorLabel::Riesz: return "Riesz";
  }
  return "unknown";
}

Matrix2c alpha_dot2(const Vec2& v) {
  Matrix2c a;
  a << 0, cplx(v(0), -v(1)), cplx(v(0), v(1)), 0;
  return a;
}

GreenFunction2D::GreenFunction2D(cplx z, double m) : z_(z), m_(m) {
  const SpectralParameters sp = spectral_parameters(z, m);
  kappa_ = -kI * sp.k;
  zm_ = z * Matrix2c::Identity() + m * sigma3();
}

Matrix2c GreenFunction2D::operator()(const Vec2& d) const {
  const double r = d.norm();
  const BesselK01 kb = bessel_k01(kappa_ * r);
  return (kI * kappa_ / (kTwoPi * r)) * kb.k1 * alpha_dot2(d) + (kb.k0 / kTwoPi) * zm_;
}

DiscretizedOperator assemble_D_alpha(const QuadratureGrid& g, Execution exec) {
  const int n = g.n;
  const SplitTables t = make_tables(g);
  CMatrix c(2 * n, 2 * n);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c.block<2, 2>(2 * i, 2 * j) = pv_block(g, t, i, j, nullptr);
  DiscretizedOperator op;
  op.label = OperatorLabel::D_alpha;
  op.n = n;
  op.weighted = weighted_from_natural(c, t, 2);
  op.matrix = std::move(c);
  op.grid = share(g);
  return op;
}

DiscretizedOperator assemble_C(cplx z, double m, const QuadratureGrid& g, Execution exec) {
  const GreenFunction2D green(z, m);
  const int n = g.n;
  const SplitTables t = make_tables(g);
  const cplx kappa = green.kappa();
  const Matrix2c zm = green.mass_part();
  CMatrix c(2 * n, 2 * n);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = ((i - j) % n + n) % n;
      Matrix2c blk;
      if (i == j) {
        const double s = g.speed[i];
        const Matrix2c l1 = (-0.25 * s / kPi) * zm;
        const Matrix2c l2 = (-s / kTwoPi) * (kEulerGamma + std::log(kappa * s / (4.0 * kPi))) * zm;
        blk = pv_block(g, t, i, i, nullptr) + t.logw[0] * l1 + l2 / double(n);
      } else {
        Matrix2c dker;
        const Matrix2c pv = pv_block(g, t, i, j, &dker);
        const Vec2 d = g.x[i] - g.x[j];
        const double r = d.norm();
        const cplx wv = kappa * r;
        const BesselK01 kb = bessel_k01(wv);
        const BesselI01 ib = bessel_i01(wv);
        const Matrix2c ad = alpha_dot2(d) / r;
        const double sq = g.speed[j];
        const Matrix2c gfull = (kI * kappa / kTwoPi) * kb.k1 * ad + (kb.k0 / kTwoPi) * zm;
        const Matrix2c m1 = (kI * kappa / kTwoPi) * ib.i1 * ad - (ib.i0 / kTwoPi) * zm;
        const Matrix2c l1 = 0.5 * sq * m1;
        const Matrix2c l2 = sq * gfull - dker - l1 * t.log4sin2[k];
        blk = pv + t.logw[k] * l1 + l2 / double(n);
      }
      c.block<2, 2>(2 * i, 2 * j) = blk;
    }
  }
  DiscretizedOperator op;
  op.label = OperatorLabel::C;
  op.n = n;
  op.z = z;
  op.m = m;
  op.weighted = weighted_from_natural(c, t, 2);
  op.matrix = std::move(c);
  op.grid = share(g);
  return op;
}

DiscretizedOperator assemble_riesz(const QuadratureGrid& g, Execution exec) {
  const int n = g.n;
  const SplitTables t = make_tables(g);
  std::vector<cplx> xc(n), dc(n), ddc(n);
  for (int j = 0; j < n; ++j) {
    xc[j] = cplx(g.x[j](0), g.x[j](1));
    dc[j] = cplx(g.dx[j](0), g.dx[j](1));
    ddc[j] = cplx(g.ddx[j](0), g.ddx[j](1));
  }
  CMatrix r(n, n);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int k = ((i - j) % n + n) % n;
      if (i == j) {
        r(i, j) = ((-kI / kPi) * (ddc[i] / dc[i]) + 2.0) / double(n);
      } else {
        const cplx kr = (2.0 * kI / kPi) * dc[j] / (xc[i] - xc[j]);
        const double alt = (k % 2 ? -1.0 : 1.0) / double(n);
        r(i, j) = 2.0 * kI * t.hilbert[k] + 2.0 * alt + (kr - 2.0 * kI * t.cot[k]) / double(n);
      }
    }
  DiscretizedOperator op;
  op.label = OperatorLabel::Riesz;
  op.n = n;
  op.weighted = weighted_from_natural(r, t, 1);
  op.matrix = std::move(r);
  op.grid = share(g);
  return op;
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

CMatrix resolved_basis(const QuadratureGrid& g, int blocks, int degree) {
  const int n = g.n;
  if (degree < 0) degree = n / 4;
  if (2 * degree >= n) throw DomainError("resolved degree must stay below N/2");
  const int per = 2 * degree + 1;
  CMatrix v = CMatrix::Zero(blocks * n, blocks * per);
  for (int b = 0; b < blocks; ++b)
    for (int p = -degree; p <= degree; ++p) {
      const int col = b * per + p + degree;
      for (int j = 0; j < n; ++j)
        v(blocks * j + b, col) = std::sqrt(g.speed[j]) * std::polar(1.0, 2.0 * kPi * p * j / n);
    }
  // Loewdin orthonormalisation keeps the basis independent of column order
  Eigen::SelfAdjointEigenSolver<CMatrix> es(v.adjoint() * v);
  const Eigen::VectorXd isq = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return v * (es.eigenvectors() * isq.asDiagonal() * es.eigenvectors().adjoint());
}

double hermiticity_deviation(const DiscretizedOperator& op) {
  const CMatrix q = resolved_basis(*op.grid, op.label == OperatorLabel::Riesz ? 1 : 2);
  return spectral_norm(op.weighted * q - op.weighted.adjoint() * q);
}

CMatrix normal_alpha_blocks(const QuadratureGrid& g) {
  CMatrix a = CMatrix::Zero(2 * g.n, 2 * g.n);
  for (int j = 0; j < g.n; ++j) a.block<2, 2>(2 * j, 2 * j) = alpha_dot2(g.normal[j]);
  return a;
}

double cinv_residual(const DiscretizedOperator& c) {
  if (c.label != OperatorLabel::C) throw DomainError("cinv_residual expects the operator C");
  // right multiplication by the block diagonal a.nu, done blockwise
  CMatrix ca = c.weighted;
  const int n = c.n;
  for (int j = 0; j < n; ++j) {
    const Matrix2c an = alpha_dot2(c.grid->normal[j]);
    ca.middleCols(2 * j, 2) = (c.weighted.middleCols(2 * j, 2) * an).eval();
  }
  const CMatrix q = resolved_basis(*c.grid, 2);
  const CMatrix caq = ca * q;
  return spectral_norm(4.0 * (ca * caq) + q);
}

double cinv_residual(cplx z, double m, const QuadratureGrid& grid) {
  return cinv_residual(assemble_C(z, m, grid));
}

double riesz_square_residual(const DiscretizedOperator& r) {
  if (r.label != OperatorLabel::Riesz) throw DomainError("riesz_square_residual expects the Riesz operator");
  const CMatrix q = resolved_basis(*r.grid, 1);
  const CMatrix rq = r.weighted * q;
  return spectral_norm(r.weighted * rq - 4.0 * q);
}

double riesz_square_residual(const QuadratureGrid& grid) { return riesz_square_residual(assemble_riesz(grid)); }

OmegaBounds omega_bounds(const DiscretizedOperator& d, int k) {
  if (d.label != OperatorLabel::D_alpha) throw DomainError("omega_bounds expects the operator D_alpha");
  const CMatrix h = 0.5 * (d.weighted + d.weighted.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  OmegaBounds b;
  b.spectrum.resize(h.rows());
  for (int i = 0; i < h.rows(); ++i) b.spectrum[i] = std::abs(es.eigenvalues()(i));
  std::sort(b.spectrum.begin(), b.spectrum.end());
  if (k < 0) k = (d.n + 63) / 64;
  const int total = static_cast<int>(b.spectrum.size());
  if (2 * k >= total) throw DomainError("outlier budget removes the whole spectrum");
  b.outliers_removed = k;
  b.omega_min = b.spectrum[k];
  b.omega_max = b.spectrum[total - 1 - k];
  return b;
}

void dump_matrix_csv(const DiscretizedOperator& op, std::ostream& os) {
  char buf[64];
  os << "label,N,z_re,z_im,m\n";
  os << to_string(op.label) << ',' << op.n << ',' << format_number(op.z.real()) << ','
     << format_number(op.z.imag()) << ',' << format_number(op.m) << '\n';
  for (int i = 0; i < op.matrix.rows(); ++i) {
    for (int j = 0; j < op.matrix.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", op.matrix(i, j).real(), op.matrix(i, j).imag());
      if (j) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace dshell
