#include "diracshell/layer_potential.hpp"

#include <algorithm>
#include <cmath>

#include "diracshell/quadrature.hpp"

namespace dshell {

namespace {
constexpr double kNearFactor = 6.0;
}

LayerPotential::LayerPotential(cplx z, double m, const QuadratureGrid& grid, const CMatrix& densities)
    : green_(z, m), grid_(std::make_shared<const QuadratureGrid>(grid)), density_(densities) {
  if (densities.rows() != 2 * grid.n) throw DomainError("density must have 2N rows");
  length_ = grid.length();
}

int LayerPotential::level_for(const Vec2& x) const {
  const NearestPoint np = nearest_point(*grid_, x);
  const double d = np.distance;
  if (d < min_distance()) throw DomainError("point too close to the curve: use jump relation");
  // trapezoid error ~ exp(-2 pi d / spacing); only the stretch of curve within a few d matters
  double s = grid_->curve->speed(np.t);
  for (int j = 0; j < grid_->n; ++j)
    if ((grid_->x[j] - x).norm() < 4.0 * d + grid_->speed[j] / grid_->n) s = std::max(s, grid_->speed[j]);
  int n = grid_->n;
  while (n * d < kNearFactor * s) n *= 2;
  return n;
}

const LayerPotential::Level& LayerPotential::level(int n) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = levels_.find(n);
  if (it != levels_.end()) return it->second;
  Level lv;
  lv.n = n;
  lv.x.resize(n);
  lv.weight.resize(n);
  const ClosedCurve& c = *grid_->curve;
  for (int l = 0; l < n; ++l) {
    const double t = double(l) / n;
    lv.x[l] = c.point(t);
    lv.weight[l] = c.speed(t) / n;
  }
  const int nc = grid_->n;
  const int p = static_cast<int>(density_.cols());
  lv.density.resize(2 * n, p);
  std::vector<cplx> coarse(nc);
  for (int col = 0; col < p; ++col)
    for (int comp = 0; comp < 2; ++comp) {
      for (int j = 0; j < nc; ++j) coarse[j] = density_(2 * j + comp, col);
      const std::vector<cplx> fine = n == nc ? coarse : trig_resample(coarse, n);
      for (int l = 0; l < n; ++l) lv.density(2 * l + comp, col) = fine[l];
    }
  return levels_.emplace(n, std::move(lv)).first->second;
}

SpinorBlock LayerPotential::evaluate(const Vec2& x) const {
  const Level& lv = level(level_for(x));
  SpinorBlock out = SpinorBlock::Zero(2, density_.cols());
  for (int l = 0; l < lv.n; ++l) out += lv.weight[l] * green_(x - lv.x[l]) * lv.density.middleRows(2 * l, 2);
  return out;
}

std::vector<SpinorBlock> LayerPotential::evaluate(const std::vector<Vec2>& points, Execution exec) const {
  const int np = static_cast<int>(points.size());
  std::vector<int> lvl(np);
  for (int i = 0; i < np; ++i) {
    lvl[i] = level_for(points[i]);
    level(lvl[i]);
  }
  std::vector<SpinorBlock> out(np);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (int i = 0; i < np; ++i) {
    const Level& lv = level(lvl[i]);
    SpinorBlock acc = SpinorBlock::Zero(2, density_.cols());
    for (int l = 0; l < lv.n; ++l)
      acc += lv.weight[l] * green_(points[i] - lv.x[l]) * lv.density.middleRows(2 * l, 2);
    out[i] = std::move(acc);
  }
  return out;
}

namespace {

// Neville extrapolation of samples f(h_k) to h = 0.
SpinorBlock extrapolate_to_zero(const std::vector<double>& h, std::vector<SpinorBlock> f) {
  const int k = static_cast<int>(h.size());
  for (int level = 1; level < k; ++level)
    for (int i = 0; i + level < k; ++i) {
      const double hi = h[i], hj = h[i + level];
      f[i] = (hj * f[i] - hi * f[i + 1]) / (hj - hi);
    }
  return f[0];
}

}  // namespace

OneSidedTraces one_sided_traces(const LayerPotential& lp, const TraceOptions& opt) {
  const QuadratureGrid& g = lp.grid();
  const int n = g.n, kpts = opt.points;
  if (kpts < 2) throw DomainError("trace extrapolation needs at least two samples");
  if (opt.step <= 0.0) throw DomainError("trace step must be positive");
  // local node spacing; slow stretches of the parametrisation get short offsets
  std::vector<double> h0(n);
  for (int j = 0; j < n; ++j) h0[j] = std::max(opt.step * g.speed[j] / n, 2.0 * lp.min_distance());

  std::vector<Vec2> pts;
  pts.reserve(2 * n * kpts);
  for (int side = 0; side < 2; ++side)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < kpts; ++k) {
        const double hk = (k + 1) * h0[j];
        pts.push_back(g.x[j] + (side == 0 ? -hk : hk) * g.normal[j]);
      }
  const std::vector<SpinorBlock> vals = lp.evaluate(pts);

  OneSidedTraces tr;
  const int p = static_cast<int>(vals.front().cols());
  tr.plus.resize(2 * n, p);
  tr.minus.resize(2 * n, p);
  for (int side = 0; side < 2; ++side)
    for (int j = 0; j < n; ++j) {
      const auto first = vals.begin() + (side * n + j) * kpts;
      std::vector<double> h(kpts);
      for (int k = 0; k < kpts; ++k) h[k] = (k + 1) * h0[j];
      const SpinorBlock v = extrapolate_to_zero(h, std::vector<SpinorBlock>(first, first + kpts));
      (side == 0 ? tr.plus : tr.minus).middleRows(2 * j, 2) = v;
    }
  return tr;
}

double JumpRelationReport::max() const {
  return std::max(std::max(plus_error, minus_error), std::max(difference_error, sum_error));
}

JumpRelationReport jump_relation_residual(cplx z, double m, const QuadratureGrid& grid, const CVector& density,
                                          const TraceOptions& opt) {
  const DiscretizedOperator c = assemble_C(z, m, grid);
  const LayerPotential lp(z, m, grid, density);
  const OneSidedTraces tr = one_sided_traces(lp, opt);
  const CVector cphi = c.matrix * density;
  JumpRelationReport r;
  for (int j = 0; j < grid.n; ++j) {
    const Vector2c phi = density.segment<2>(2 * j);
    const Vector2c an = alpha_dot2(grid.normal[j]) * phi;
    const Vector2c cp = cphi.segment<2>(2 * j);
    const Vector2c tp = tr.plus.block<2, 1>(2 * j, 0), tm = tr.minus.block<2, 1>(2 * j, 0);
    r.plus_error = std::max(r.plus_error, (tp - (-0.5 * kI * an + cp)).norm());
    r.minus_error = std::max(r.minus_error, (tm - (0.5 * kI * an + cp)).norm());
    r.difference_error = std::max(r.difference_error, (tp - tm + kI * an).norm());
    r.sum_error = std::max(r.sum_error, (tp + tm - 2.0 * cp).norm());
  }
  return r;
}

}  // namespace dshell
