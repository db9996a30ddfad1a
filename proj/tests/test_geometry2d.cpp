#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "diracshell/geometry2d.hpp"
#include "diracshell/quadrature.hpp"

using namespace dshell;

namespace {


double grid_length(const QuadratureGrid& g) {
  double s = 0.0;
  for (double w : g.weight) s += w;
  return s;
}

}  // namespace

TEST_CASE("built-in curves") {
  const ClosedCurve c = circle(1.0);
  CHECK((c.point(0.0) - Vec2(1, 0)).norm() < 1e-15);
  CHECK((c.normal(0.0) - Vec2(1, 0)).norm() < 1e-15);
  const ClosedCurve c2 = circle(2.5);
  for (double t : {0.1, 0.37, 0.8}) CHECK((c2.normal(t) - c2.point(t) / 2.5).norm() < 1e-14);

  // ellipse perimeter by adaptive quadrature of the speed
  const ClosedCurve e = ellipse(2.0, 1.0);
  const double len = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double t) { return e.speed(t); }, 0.0, 1.0, 10, 1e-14);
  CHECK(len == doctest::Approx(9.688448220547675).epsilon(1e-12));
  CHECK(e.length() == doctest::Approx(len).epsilon(1e-12));

  CHECK_THROWS_AS(circle(0.0), DomainError);
  CHECK_THROWS_AS(ellipse(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(star(0.3, 5), DomainError);
  CHECK_NOTHROW(star(0.15, 5));
}

TEST_CASE("curve parsing") {
  CHECK(parse_curve("circle:r=1.0").length() == doctest::Approx(2 * kPi));
  CHECK(parse_curve("ellipse:a=2,b=1").length() == doctest::Approx(9.688448220547675));
  CHECK_NOTHROW(parse_curve("kite"));
  CHECK_NOTHROW(parse_curve("star:eps=0.1,k=5"));
  CHECK_THROWS_AS(parse_curve("square"), DomainError);
  CHECK_THROWS_AS(parse_curve("circle:r=abc"), DomainError);
  CHECK_THROWS_AS(parse_curve("circle:q=1"), DomainError);
  CHECK_THROWS_AS(parse_curve("star:eps=0.1,k=2.5"), DomainError);
}

TEST_CASE("quadrature grids") {
  const QuadratureGrid g = build_grid(circle(1.0), 64);
  CHECK(std::abs(grid_length(g) - 2 * kPi) <= 1e-12);
  Vec2 flux = Vec2::Zero();
  for (int j = 0; j < g.n; ++j) flux += g.weight[j] * g.normal[j];
  CHECK(flux.norm() <= 1e-12);

  const QuadratureGrid k1 = build_grid(kite(), 128), k2 = build_grid(kite(), 256);
  CHECK(std::abs(grid_length(k1) - grid_length(k2)) <= 1e-10);
  for (int j = 0; j < k1.n; ++j) {
    CHECK(k1.x[j] == k2.x[2 * j]);
    CHECK(std::abs(k1.normal[j].norm() - 1.0) < 1e-12);
  }
  // positive signed area: counter-clockwise
  for (const ClosedCurve& c : {kite(), ellipse(2, 1), star(0.1, 5), circle(1).rotated(0.3)}) {
    const QuadratureGrid q = build_grid(c, 128);
    double area = 0.0;
    for (int j = 0; j < q.n; ++j) area += 0.5 * (q.x[j](0) * q.dx[j](1) - q.x[j](1) * q.dx[j](0)) / q.n;
    CHECK(area > 0.0);
  }
  // a clockwise parametrisation is flipped on construction
  const ClosedCurve cw([](double t) { return Vec2(std::cos(2 * kPi * t), -std::sin(2 * kPi * t)); },
                       [](double t) { return Vec2(-2 * kPi * std::sin(2 * kPi * t), -2 * kPi * std::cos(2 * kPi * t)); },
                       [](double t) { return Vec2(-4 * kPi * kPi * std::cos(2 * kPi * t), 4 * kPi * kPi * std::sin(2 * kPi * t)); },
                       "cw");
  CHECK((cw.normal(0.1) - cw.point(0.1)).norm() < 1e-14);

  CHECK_THROWS_AS(build_grid(circle(1.0), 63), DomainError);
}

TEST_CASE("nearest point") {
  const QuadratureGrid g = build_grid(ellipse(2, 1), 64);
  const auto np = nearest_point(g, Vec2(0.0, 1.5));
  CHECK(np.distance == doctest::Approx(0.5).epsilon(1e-12));
  const auto np2 = nearest_point(g, Vec2(2.3, 0.0));
  CHECK(np2.distance == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("periodic quadrature weights") {
  const int n = 32;
  const auto h = hilbert_weights(n);
  const auto l = log_weights(n);
  // exact on e^{2 pi i p s}: cot gives -i sgn(p), log(4 sin^2) gives -1/|p|
  for (int p = -n / 2 + 1; p < n / 2; ++p) {
    for (int i : {0, 5}) {
      std::complex<double> hs = 0.0, ls = 0.0;
      for (int j = 0; j < n; ++j) {
        const int k = ((i - j) % n + n) % n;
        const auto e = std::polar(1.0, 2 * kPi * p * j / double(n));
        hs += h[k] * e;
        ls += l[k] * e;
      }
      const auto ei = std::polar(1.0, 2 * kPi * p * i / double(n));
      const double sg = p > 0 ? 1.0 : (p < 0 ? -1.0 : 0.0);
      CHECK(std::abs(hs - std::complex<double>(0, -sg) * ei) < 1e-13);
      CHECK(std::abs(ls - (p == 0 ? 0.0 : -1.0 / std::abs(p)) * ei) < 1e-13);
    }
  }
  std::vector<std::complex<double>> f(n);
  for (int j = 0; j < n; ++j) f[j] = std::cos(2 * kPi * 3 * j / double(n)) + std::complex<double>(0, 1) * std::sin(2 * kPi * 7 * j / double(n));
  const auto fine = trig_resample(f, 4 * n);
  for (int l2 = 0; l2 < 4 * n; ++l2) {
    const double t = l2 / double(4 * n);
    CHECK(std::abs(fine[l2] - (std::cos(2 * kPi * 3 * t) + std::complex<double>(0, 1) * std::sin(2 * kPi * 7 * t))) < 1e-13);
  }
}
