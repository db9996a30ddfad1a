#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "diracshell/dirac_algebra.hpp"

namespace dshell {

using Vec2 = Eigen::Vector2d;

// Smooth closed curve parametrised on [0, 1), counter-clockwise after construction.
class ClosedCurve {
 public:
  using Map = std::function<Vec2(double)>;

  ClosedCurve(Map point, Map d1, Map d2, std::string name);

  Vec2 point(double t) const { return point_(t); }
  Vec2 derivative(double t) const { return d1_(t); }
  Vec2 second_derivative(double t) const { return d2_(t); }
  double speed(double t) const { return d1_(t).norm(); }
  // outward unit normal (gamma2', -gamma1') / |gamma'|
  Vec2 normal(double t) const;
  const std::string& name() const { return name_; }
  double length() const { return length_; }

  ClosedCurve rotated(double angle) const;
  ClosedCurve translated(const Vec2& shift) const;
  // reparametrise t -> t + t0
  ClosedCurve shifted(double t0) const;

 private:
  Map point_, d1_, d2_;
  std::string name_;
  double length_ = 0.0;
};

ClosedCurve circle(double r);
ClosedCurve ellipse(double a, double b);
ClosedCurve kite();
ClosedCurve star(double eps, int k);

// "circle:r=1", "ellipse:a=2,b=1", "kite", "star:eps=0.2,k=5"
ClosedCurve parse_curve(std::string_view spec);

// Equispaced nodes t_j = j/N with geometry sampled once.
struct QuadratureGrid {
  int n = 0;
  std::shared_ptr<const ClosedCurve> curve;
  std::vector<double> t;
  std::vector<Vec2> x, dx, ddx, normal;
  std::vector<double> speed;
  std::vector<double> weight;  // speed / N

  double length() const;
};

QuadratureGrid build_grid(const ClosedCurve& curve, int n);

struct NearestPoint {
  double t = 0.0;
  double distance = 0.0;
};

// Closest curve parameter to x: nearest node followed by Newton refinement.
NearestPoint nearest_point(const QuadratureGrid& grid, const Vec2& x);

}  // namespace dshell
