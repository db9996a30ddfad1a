#include "diracshell/geometry2d.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "diracshell/dirac_algebra.hpp"

namespace dshell {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double signed_area(const ClosedCurve::Map& p, const ClosedCurve::Map& d1) {
  const int n = 512;
  double a = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = double(j) / n;
    const Vec2 x = p(t), dx = d1(t);
    a += 0.5 * (x(0) * dx(1) - x(1) * dx(0));
  }
  return a / n;
}

std::map<std::string, double> parse_params(std::string_view s) {
  std::map<std::string, double> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const std::string_view item = s.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw DomainError("malformed curve parameter '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    const std::string_view val = item.substr(eq + 1);
    double v = 0.0;
    const auto res = std::from_chars(val.data(), val.data() + val.size(), v);
    if (res.ec != std::errc() || res.ptr != val.data() + val.size())
      throw DomainError("malformed curve parameter value '" + std::string(val) + "'");
    out[key] = v;
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double take(std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  const double v = it->second;
  p.erase(it);
  return v;
}

}  // namespace

ClosedCurve::ClosedCurve(Map point, Map d1, Map d2, std::string name)
    : point_(std::move(point)), d1_(std::move(d1)), d2_(std::move(d2)), name_(std::move(name)) {
  const int n = 512;
  double len = 0.0, smin = INFINITY;
  for (int j = 0; j < n; ++j) {
    const double s = d1_(double(j) / n).norm();
    smin = std::min(smin, s);
    len += s;
  }
  if (!(smin > 0.0) || !std::isfinite(len)) throw DomainError("degenerate curve: vanishing or invalid tangent");
  if ((point_(0.0) - point_(1.0)).norm() > 1e-10 * std::max(1.0, len / n))
    throw DomainError("curve is not closed on [0,1]");
  if (signed_area(point_, d1_) < 0.0) {
    Map p = point_, a = d1_, b = d2_;
    point_ = [p](double t) { return p(-t); };
    d1_ = [a](double t) -> Vec2 { return -a(-t); };
    d2_ = [b](double t) { return b(-t); };
  }
  length_ = len / n;
}

Vec2 ClosedCurve::normal(double t) const {
  const Vec2 d = d1_(t);
  return Vec2(d(1), -d(0)) / d.norm();
}

ClosedCurve ClosedCurve::rotated(double angle) const {
  const Eigen::Matrix2d r = Eigen::Rotation2Dd(angle).toRotationMatrix();
  Map p = point_, a = d1_, b = d2_;
  return ClosedCurve([=](double t) -> Vec2 { return r * p(t); }, [=](double t) -> Vec2 { return r * a(t); },
                     [=](double t) -> Vec2 { return r * b(t); }, name_);
}

ClosedCurve ClosedCurve::translated(const Vec2& shift) const {
  Map p = point_;
  return ClosedCurve([=](double t) -> Vec2 { return p(t) + shift; }, d1_, d2_, name_);
}

ClosedCurve ClosedCurve::shifted(double t0) const {
  Map p = point_, a = d1_, b = d2_;
  return ClosedCurve([=](double t) { return p(t + t0); }, [=](double t) { return a(t + t0); },
                     [=](double t) { return b(t + t0); }, name_);
}

ClosedCurve circle(double r) {
  if (!(r > 0.0)) throw DomainError("circle radius must be positive");
  return ClosedCurve(
      [r](double t) { return Vec2(r * std::cos(kTwoPi * t), r * std::sin(kTwoPi * t)); },
      [r](double t) { return Vec2(-kTwoPi * r * std::sin(kTwoPi * t), kTwoPi * r * std::cos(kTwoPi * t)); },
      [r](double t) {
        const double c = kTwoPi * kTwoPi * r;
        return Vec2(-c * std::cos(kTwoPi * t), -c * std::sin(kTwoPi * t));
      },
      "circle:r=" + format_number(r));
}

ClosedCurve ellipse(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("ellipse semi-axes must be positive");
  return ClosedCurve(
      [=](double t) { return Vec2(a * std::cos(kTwoPi * t), b * std::sin(kTwoPi * t)); },
      [=](double t) { return Vec2(-kTwoPi * a * std::sin(kTwoPi * t), kTwoPi * b * std::cos(kTwoPi * t)); },
      [=](double t) {
        const double c = kTwoPi * kTwoPi;
        return Vec2(-c * a * std::cos(kTwoPi * t), -c * b * std::sin(kTwoPi * t));
      },
      "ellipse:a=" + format_number(a) + ",b=" + format_number(b));
}

ClosedCurve kite() {
  const double w = kTwoPi;
  return ClosedCurve(
      [=](double t) { return Vec2(std::cos(w * t) + 0.65 * std::cos(2 * w * t) - 0.65, 1.5 * std::sin(w * t)); },
      [=](double t) { return Vec2(-w * std::sin(w * t) - 1.3 * w * std::sin(2 * w * t), 1.5 * w * std::cos(w * t)); },
      [=](double t) {
        return Vec2(-w * w * std::cos(w * t) - 2.6 * w * w * std::cos(2 * w * t), -1.5 * w * w * std::sin(w * t));
      },
      "kite");
}

ClosedCurve star(double eps, int k) {
  if (k < 1) throw DomainError("star: k must be positive");
  if (!(eps >= 0.0 && eps * k < 1.0)) throw DomainError("star: requires 0 <= eps < 1/k");
  const double w = kTwoPi;
  // r(t) = 1 + eps cos(w k t), x = r (cos wt, sin wt)
  auto r0 = [=](double t) { return 1.0 + eps * std::cos(w * k * t); };
  auto r1 = [=](double t) { return -eps * w * k * std::sin(w * k * t); };
  auto r2 = [=](double t) { return -eps * w * w * k * k * std::cos(w * k * t); };
  return ClosedCurve(
      [=](double t) { return Vec2(r0(t) * std::cos(w * t), r0(t) * std::sin(w * t)); },
      [=](double t) {
        const double c = std::cos(w * t), s = std::sin(w * t);
        return Vec2(r1(t) * c - w * r0(t) * s, r1(t) * s + w * r0(t) * c);
      },
      [=](double t) {
        const double c = std::cos(w * t), s = std::sin(w * t);
        const double a = r2(t) - w * w * r0(t), b = 2 * w * r1(t);
        return Vec2(a * c - b * s, a * s + b * c);
      },
      "star:eps=" + format_number(eps) + ",k=" + std::to_string(k));
}

ClosedCurve parse_curve(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string kind(spec.substr(0, colon));
  auto params = colon == std::string_view::npos ? std::map<std::string, double>{} : parse_params(spec.substr(colon + 1));
  auto finish = [&](ClosedCurve c) {
    if (!params.empty()) throw DomainError("unknown curve parameter '" + params.begin()->first + "'");
    return c;
  };
  if (kind == "circle") return finish(circle(take(params, "r", 1.0)));
  if (kind == "ellipse") {
    const double a = take(params, "a", 2.0), b = take(params, "b", 1.0);
    return finish(ellipse(a, b));
  }
  if (kind == "kite") return finish(kite());
  if (kind == "star") {
    const double eps = take(params, "eps", 0.1);
    const double k = take(params, "k", 5.0);
    if (k != std::floor(k)) throw DomainError("star: k must be an integer");
    return finish(star(eps, static_cast<int>(k)));
  }
  throw DomainError("unknown curve '" + kind + "'");
}

double QuadratureGrid::length() const {
  double s = 0.0;
  for (double w : weight) s += w;
  return s;
}

QuadratureGrid build_grid(const ClosedCurve& curve, int n) {
  if (n < 4 || n % 2 != 0) throw DomainError("grid size N must be even and at least 4");
  QuadratureGrid g;
  g.n = n;
  g.curve = std::make_shared<const ClosedCurve>(curve);
  g.t.resize(n);
  g.x.resize(n);
  g.dx.resize(n);
  g.ddx.resize(n);
  g.normal.resize(n);
  g.speed.resize(n);
  g.weight.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = double(j) / n;
    g.t[j] = t;
    g.x[j] = curve.point(t);
    g.dx[j] = curve.derivative(t);
    g.ddx[j] = curve.second_derivative(t);
    g.speed[j] = g.dx[j].norm();
    g.normal[j] = Vec2(g.dx[j](1), -g.dx[j](0)) / g.speed[j];
    g.weight[j] = g.speed[j] / n;
  }
  return g;
}

NearestPoint nearest_point(const QuadratureGrid& grid, const Vec2& x) {
  int best = 0;
  double bd = INFINITY;
  for (int j = 0; j < grid.n; ++j) {
    const double d = (grid.x[j] - x).squaredNorm();
    if (d < bd) {
      bd = d;
      best = j;
    }
  }
  const ClosedCurve& c = *grid.curve;
  double t = grid.t[best];
  const double step = 1.0 / grid.n;
  for (int it = 0; it < 30; ++it) {
    const Vec2 r = c.point(t) - x, d1 = c.derivative(t), d2 = c.second_derivative(t);
    const double f = r.dot(d1);
    double fp = d1.squaredNorm() + r.dot(d2);
    if (fp <= 0.0) fp = d1.squaredNorm();
    double dt = -f / fp;
    dt = std::clamp(dt, -step, step);
    t += dt;
    if (std::abs(dt) < 1e-15) break;
  }
  NearestPoint np;
  np.distance = std::min(std::sqrt(bd), (c.point(t) - x).norm());
  np.t = t - std::floor(t);
  return np;
}

}  // namespace dshell
