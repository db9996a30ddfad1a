#pragma once

#include <map>
#include <mutex>

#include "diracshell/bem2d.hpp"

namespace dshell {

using SpinorBlock = Eigen::Matrix<cplx, 2, Eigen::Dynamic>;

// Phi_z applied to one or more nodal densities (columns of a 2N x p matrix).
// Near targets use the trapezoid rule on a trigonometrically upsampled
// density; the level doubles until distance >= 6 x local node spacing.
class LayerPotential {
 public:
  LayerPotential(cplx z, double m, const QuadratureGrid& grid, const CMatrix& densities);

  SpinorBlock evaluate(const Vec2& x) const;
  std::vector<SpinorBlock> evaluate(const std::vector<Vec2>& points, Execution exec = Execution::parallel) const;

  const QuadratureGrid& grid() const { return *grid_; }
  // smallest admissible distance, 1e-4 len
  double min_distance() const { return 1e-4 * length_; }

 private:
  struct Level {
    int n = 0;
    std::vector<Vec2> x;
    std::vector<double> weight;
    CMatrix density;  // 2 n x p
  };
  int level_for(const Vec2& x) const;
  const Level& level(int n) const;

  GreenFunction2D green_;
  std::shared_ptr<const QuadratureGrid> grid_;
  CMatrix density_;
  double length_ = 0.0;
  mutable std::mutex mutex_;
  mutable std::map<int, Level> levels_;
};

struct OneSidedTraces {
  CMatrix plus;   // interior side, 2N x p
  CMatrix minus;  // exterior side
};

struct TraceOptions {
  int points = 8;        // samples per side
  double step = 0.5;     // h_k = k * step * |gamma'(t_j)| / N, at least 2e-4 len
};

// Traces at every node from polynomial extrapolation of Phi_z phi(x_j -+ h nu_j) to h = 0.
OneSidedTraces one_sided_traces(const LayerPotential& lp, const TraceOptions& opt = {});

struct JumpRelationReport {
  double plus_error = 0.0;        // max_j |trace+ - (-(i/2)(a.nu)phi + C phi)|
  double minus_error = 0.0;       // max_j |trace- - ((i/2)(a.nu)phi + C phi)|
  double difference_error = 0.0;  // max_j |(trace+ - trace-) + i (a.nu) phi|
  double sum_error = 0.0;         // max_j |(trace+ + trace-) - 2 C phi|
  double max() const;
};

JumpRelationReport jump_relation_residual(cplx z, double m, const QuadratureGrid& grid, const CVector& density,
                                          const TraceOptions& opt = {});

}  // namespace dshell
