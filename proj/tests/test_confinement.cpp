#include <doctest.h>

#include <random>

#include "diracshell/confinement.hpp"

using namespace dshell;

namespace {
double max_abs(const CMatrix& a) { return a.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("transmission data examples") {
  const auto rep = build_dirac_matrices(2);
  const double ex[2] = {1, 0}, ey[2] = {0, 1};

  auto t = transmission_data({0, 0, 0, 1}, rep, ex);
  CHECK(max_abs(t.R) == 0.0);
  REQUIRE(t.Q);
  CHECK(max_abs(*t.Q - rep.identity()) == 0.0);

  t = transmission_data({0, 0, 2, 1}, rep, ey);
  CHECK_FALSE(t.Q);
  REQUIRE(t.bc_plus);
  REQUIRE(t.bc_minus);
  const CMatrix id = rep.identity();
  CHECK(max_abs((id - t.R) * (id + t.R)) == 0.0);

  t = transmission_data({1, 0, 0, 1}, rep, ex);
  REQUIRE(t.Q);
  CHECK(t.d == 1.0);
  CHECK(max_abs(*t.Q - 0.8 * (id + t.R) * (id + t.R)) < 1e-15);
  CHECK(std::abs(t.Q->determinant()) > 1e-3);
}

TEST_CASE("transmission identities on random data") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int q : {2, 3}) {
    const auto rep = build_dirac_matrices(q);
    const CMatrix id = rep.identity();
    for (int i = 0; i < 200; ++i) {
      std::vector<double> nu(q);
      for (auto& v : nu) v = u(rng);
      const double nn = std::sqrt(std::inner_product(nu.begin(), nu.end(), nu.begin(), 0.0));
      for (auto& v : nu) v /= nn;

      // d = -4 family
      const double eta = u(rng), phi = u(rng), r = std::sqrt(eta * eta + 4.0);
      const InteractionStrengths sc{eta, r * std::cos(phi), r * std::sin(phi), 1.0};
      auto t = transmission_data(sc, rep, nu);
      CHECK(max_abs(t.R * t.R - id) < 1e-12);  // R^2 = -(d/4) I
      CHECK(confinement_identity_residual(t) <= 1e-12);
      if (std::abs(sc.lambda * sc.lambda - 4.0) > 1e-3) {
        // the two row blocks describe the same condition
        Eigen::JacobiSVD<CMatrix> sv(*t.bc_plus);
        CHECK(sv.singularValues()(rep.n_spinor / 2) < 1e-12 * sv.singularValues()(0));
        CHECK(sv.singularValues()(rep.n_spinor / 2 - 1) > 1e-8);
      }

      const InteractionStrengths sg{u(rng), u(rng), u(rng), 1.0};
      if (std::abs(sg.d() + 4.0) < 1e-3) continue;
      t = transmission_data(sg, rep, nu);
      CHECK(max_abs(t.R * t.R + (sg.d() / 4.0) * id) < 1e-12);
      CHECK(confinement_identity_residual(t) <= 1e-12 * std::max(1.0, std::abs(4.0 / (sg.d() + 4.0))));
      const CMatrix qinv = t.Q->inverse();
      // Q is invertible; its conditioning degrades like 1/|d + 4|
      CHECK(max_abs(*t.Q * qinv - id) < 1e-14 * t.Q->norm() * qinv.norm());
    }
  }
}

TEST_CASE("zigzag kernel elements") {
  const auto rep = build_dirac_matrices(2);
  std::vector<Eigen::Vector2d> ring;
  for (int k = 0; k < 12; ++k) ring.emplace_back(2 * std::cos(0.5 * k), 2 * std::sin(0.5 * k));
  CHECK(zigzag_kernel_check(rep, 1.0, 0.0, 3, ring, 1e-4) <= 1e-6);
  CHECK(zigzag_kernel_check(rep, 0.0, 0.0, 3, ring, 1e-4) <= 1e-6);
  for (int n = 3; n <= 5; ++n) {
    const double a = zigzag_kernel_check(rep, 1.0, cplx(0.2, 0.1), n, ring, 2e-3);
    const double b = zigzag_kernel_check(rep, 1.0, cplx(0.2, 0.1), n, ring, 1e-3);
    CHECK(a / b == doctest::Approx(4.0).epsilon(0.1));
  }
  const std::vector<Eigen::Vector2d> bad = {Eigen::Vector2d(0.2, 0.1)};
  CHECK_THROWS_AS(zigzag_kernel_check(rep, 1.0, cplx(0.2, 0.1), 3, bad, 1e-3), DomainError);
  CHECK_THROWS_AS(zigzag_kernel_check(rep, 1.0, 0.0, 2, ring, 1e-3), DomainError);
  CHECK_THROWS_AS(zigzag_kernel_check(build_dirac_matrices(3), 1.0, 0.0, 3, ring, 1e-3), DomainError);
}
