#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <random>

#include "diracshell/bessel.hpp"
#include "diracshell/dirac_algebra.hpp"

using namespace dshell;

namespace {

Matrix2c pauli(int k) {
  Matrix2c s;
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, cplx(0, -1), cplx(0, 1), 0;
  if (k == 3) s << 1, 0, 0, -1;
  return s;
}

double max_abs(const CMatrix& a) { return a.cwiseAbs().maxCoeff(); }

// K_nu(w) = int_0^inf exp(-w cosh t) cosh(nu t) dt, Re w > 0
cplx k_integral(int nu, cplx w) {
  using boost::math::quadrature::gauss_kronrod;
  auto re = [&](double t) { return std::real(std::exp(-w * std::cosh(t))) * std::cosh(nu * t); };
  auto im = [&](double t) { return std::imag(std::exp(-w * std::cosh(t))) * std::cosh(nu * t); };
  return {gauss_kronrod<double, 61>::integrate(re, 0.0, 12.0, 15, 1e-15),
          gauss_kronrod<double, 61>::integrate(im, 0.0, 12.0, 15, 1e-15)};
}

// I_nu(w) = (1/pi) int_0^pi exp(w cos t) cos(nu t) dt
cplx i_integral(int nu, cplx w) {
  using boost::math::quadrature::gauss_kronrod;
  auto re = [&](double t) { return std::real(std::exp(w * std::cos(t))) * std::cos(nu * t); };
  auto im = [&](double t) { return std::imag(std::exp(w * std::cos(t))) * std::cos(nu * t); };
  return cplx(gauss_kronrod<double, 61>::integrate(re, 0.0, kPi, 15, 1e-15),
              gauss_kronrod<double, 61>::integrate(im, 0.0, kPi, 15, 1e-15)) /
         kPi;
}

}  // namespace

TEST_CASE("anticommutation of the built-in representations") {
  for (int q = 1; q <= 3; ++q) CHECK(verify_anticommutation(build_dirac_matrices(q)) == 0.0);
  DiracRepresentation rep = build_dirac_matrices(2);
  rep.alphas[1] += 1e-3 * rep.identity();
  CHECK(verify_anticommutation(rep) == doctest::Approx(2e-3).epsilon(1e-3));
  CHECK_THROWS_AS(build_dirac_matrices(4), DomainError);
}

TEST_CASE("representation layout") {
  const auto r1 = build_dirac_matrices(1), r2 = build_dirac_matrices(2), r3 = build_dirac_matrices(3);
  CHECK(r1.n_spinor == 2);
  CHECK(r3.n_spinor == 4);
  CHECK(max_abs(r1.alpha(0) - pauli(3)) == 0.0);
  CHECK(max_abs(r1.alpha(1) - pauli(1)) == 0.0);
  CHECK(max_abs(r2.alpha(2) - pauli(2)) == 0.0);
  CHECK(max_abs(r3.alpha(0).topLeftCorner(2, 2) - Matrix2c::Identity()) == 0.0);
  CHECK(max_abs(r3.alpha(0).bottomRightCorner(2, 2) + Matrix2c::Identity()) == 0.0);
  CHECK(max_abs(r3.alpha(2).topRightCorner(2, 2) - pauli(2)) == 0.0);
}

TEST_CASE("symbol factorization") {
  const double xi3[3] = {1, 2, 3};
  CHECK(symbol_factorization_check(build_dirac_matrices(3), 1.0, cplx(0, 0.3), xi3) <= 1e-13);
  const double zero[2] = {0, 0};
  CHECK(symbol_factorization_check(build_dirac_matrices(2), 0.0, 0.0, zero) == 0.0);
  const double xi2[2] = {0.7, -0.2};
  CHECK(symbol_factorization_check(build_dirac_matrices(2), 1.0, 0.5, xi2) <= 1e-13);
  CHECK_THROWS_AS(symbol_factorization_check(build_dirac_matrices(2), 1.0, 0.5, xi3), DomainError);
}

TEST_CASE("spectral parameters") {
  auto p = spectral_parameters(0.0, 1.0);
  CHECK(std::abs(p.k - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(p.zeta - cplx(0, -1)) < 1e-15);
  p = spectral_parameters(0.6, 1.0);
  CHECK(std::abs(p.k - cplx(0, 0.8)) < 1e-15);
  CHECK(std::abs(p.zeta - cplx(0, -2)) < 1e-14);
  p = spectral_parameters(cplx(0, 1), 0.0);
  CHECK(std::abs(p.k - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(p.zeta - 1.0) < 1e-15);
  CHECK_THROWS_WITH_AS(spectral_parameters(1.5, 1.0), "spectral parameter on branch cut", DomainError);
  CHECK_THROWS_AS(spectral_parameters(-1.0, 1.0), DomainError);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 50; ++i) {
    const cplx z(u(rng), u(rng));
    if (z.imag() == 0.0) continue;
    const auto a = spectral_parameters(z, 1.0), b = spectral_parameters(std::conj(z), 1.0);
    CHECK(a.k.imag() > 0.0);
    CHECK(std::abs(b.k + std::conj(a.k)) < 1e-13);
    CHECK(std::abs(a.zeta * (z - 1.0) / a.k - 1.0) < 1e-12);  // zeta^{-1} = (z - m)/k
  }
}

TEST_CASE("coupling matrix") {
  const DiracRepresentation r1 = build_dirac_matrices(1), r2 = build_dirac_matrices(2), r3 = build_dirac_matrices(3);
  const double m1[1] = {-1.0}, e1[2] = {1.0, 0.0}, n3[3] = {0.0, 0.6, 0.8};
  CHECK(max_abs(coupling_matrix({1, 0, 0, 1}, r3, n3) - r3.identity()) == 0.0);
  CHECK(max_abs(coupling_matrix({0, 0, 1, 1}, r1, m1) + pauli(2)) < 1e-15);
  CHECK(max_abs(coupling_matrix({0, 1, 0, 1}, r2, e1) - pauli(3)) == 0.0);
  const double bad[2] = {1.0, 0.1};
  CHECK_THROWS_AS(coupling_matrix({1, 1, 1, 1}, r2, bad), DomainError);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const InteractionStrengths s{u(rng), u(rng), u(rng), 1.0};
    const InteractionStrengths sm{s.eta, -s.tau, -s.lambda, 1.0};
    const double th = u(rng), ph = u(rng);
    const double nu2[2] = {std::cos(th), std::sin(th)};
    const double nu3[3] = {std::sin(ph) * std::cos(th), std::sin(ph) * std::sin(th), std::cos(ph)};
    for (const auto& [rep, nu] : {std::pair{r2, std::span<const double>(nu2)}, std::pair{r3, std::span<const double>(nu3)}}) {
      const CMatrix p = coupling_matrix(s, rep, nu);
      CHECK(max_abs(p - p.adjoint()) < 1e-14);
      CHECK(max_abs(coupling_matrix(sm, rep, nu) * p - s.d() * rep.identity()) < 1e-12);
    }
  }
}

TEST_CASE("classifier") {
  auto c = classify_strengths({0, 0, 0, 1});
  CHECK(c.regime == Regime::trivial);
  CHECK(c.essential_spectrum == "(-inf,-1] U [1,inf)");
  CHECK_FALSE(c.extra_essential_point);

  c = classify_strengths({2, 0, 0, 1});
  CHECK(c.regime == Regime::critical);
  REQUIRE(c.extra_essential_point);
  CHECK(*c.extra_essential_point == 0.0);
  CHECK(c.essential_spectrum == "(-inf,-1] U {0} U [1,inf)");

  c = classify_strengths({0, 0, 2, 1});
  CHECK(c.regime == Regime::critical);
  CHECK(c.confinement);
  CHECK(c.zigzag);
  CHECK_FALSE(c.extra_essential_point);
  bool infinite = false;
  for (const auto& n : c.notes) infinite |= n.find("-1 is an eigenvalue with infinite multiplicity of the interior") != std::string::npos;
  CHECK(infinite);

  c = classify_strengths({0, 0, 1, 0});
  CHECK(c.gap_empty);

  // lambda -> -lambda keeps the flags
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const InteractionStrengths s{u(rng), u(rng), u(rng), 1.0}, t{s.eta, s.tau, -s.lambda, 1.0};
    const auto a = classify_strengths(s), b = classify_strengths(t);
    CHECK(a.regime == b.regime);
    CHECK(a.confinement == b.confinement);
    CHECK(a.zigzag == b.zigzag);
  }
}

TEST_CASE("Bessel K0, K1 and I0, I1 against independent values") {
  for (double x : {1e-4, 0.05, 0.5, 1.0, 1.9, 2.1, 5.0, 20.0, 80.0}) {
    const auto k = bessel_k01(x);
    const auto i = bessel_i01(x);
    CHECK(std::abs(k.k0 - boost::math::cyl_bessel_k(0, x)) <= 1e-14 * std::abs(k.k0));
    CHECK(std::abs(k.k1 - boost::math::cyl_bessel_k(1, x)) <= 1e-14 * std::abs(k.k1));
    if (x < 30) {
      CHECK(std::abs(i.i0 - boost::math::cyl_bessel_i(0, x)) <= 1e-14 * std::abs(i.i0));
      CHECK(std::abs(i.i1 - boost::math::cyl_bessel_i(1, x)) <= 1e-14 * std::abs(i.i1));
    }
  }
  for (cplx w : {cplx(0.3, 0.2), cplx(1.0, -1.5), cplx(2.5, 2.0), cplx(0.8, 3.0), cplx(6.0, -4.0)}) {
    const auto k = bessel_k01(w);
    const auto i = bessel_i01(w);
    CHECK(std::abs(k.k0 - k_integral(0, w)) <= 1e-12 * std::abs(k.k0));
    CHECK(std::abs(k.k1 - k_integral(1, w)) <= 1e-12 * std::abs(k.k1));
    CHECK(std::abs(i.i0 - i_integral(0, w)) <= 1e-12 * std::abs(i.i0));
    CHECK(std::abs(i.i1 - i_integral(1, w)) <= 1e-12 * std::abs(i.i1));
  }
  CHECK_THROWS(bessel_k01(cplx(-0.1, 1.0)));
}

TEST_CASE("fundamental solutions") {
  const auto r1 = build_dirac_matrices(1), r2 = build_dirac_matrices(2), r3 = build_dirac_matrices(3);
  const double x1[1] = {1.0};
  Matrix2c expect;
  expect << cplx(0, -1), 1, 1, cplx(0, 1);
  expect *= 0.5 * kI * std::exp(-1.0);
  CHECK(max_abs(fundamental_solution(r1, 1.0, 0.0, x1) - expect) < 1e-15);

  // G(-x) = G(x) with the off-diagonal signs flipped
  const double xp[1] = {0.7}, xm[1] = {-0.7};
  const CMatrix gp = fundamental_solution(r1, 1.0, cplx(0.2, 0.1), xp);
  const CMatrix gm = fundamental_solution(r1, 1.0, cplx(0.2, 0.1), xm);
  CHECK(std::abs(gp(0, 0) - gm(0, 0)) < 1e-15);
  CHECK(std::abs(gp(0, 1) + gm(0, 1)) < 1e-15);

  // q = 3 at z = 0: (a0 + (1 + r) i a1 / r) e^{-r} / (4 pi r)
  const double r = 1.3, x3[3] = {r, 0, 0};
  const CMatrix g3 = (r3.alpha(0) + (1.0 + r) * kI * r3.alpha(1) / r) * std::exp(-r) / (4.0 * kPi * r);
  CHECK(max_abs(fundamental_solution(r3, 1.0, 0.0, x3) - g3) < 1e-15);

  // q = 2 with real kappa against boost: (i kappa/2pi) K1 (a.x)/|x| + K0/(2pi) (z + m s3)
  const double x2[2] = {0.6, -0.8};
  const double z = 0.3, kappa = std::sqrt(1.0 - z * z);
  const CMatrix ad = r2.alpha_dot(x2);
  const CMatrix g2 = (kI * kappa / (2 * kPi)) * boost::math::cyl_bessel_k(1, kappa) * ad +
                     boost::math::cyl_bessel_k(0, kappa) / (2 * kPi) * (z * r2.identity() + r2.alpha(0));
  CHECK(max_abs(fundamental_solution(r2, 1.0, z, x2) - g2) < 1e-15);

  const double origin[2] = {0, 0};
  CHECK_THROWS_AS(fundamental_solution(r2, 1.0, 0.0, origin), DomainError);
}

TEST_CASE("fundamental solution defect is second order") {
  const double x2[2] = {1, 0};
  CHECK(fundamental_solution_residual(build_dirac_matrices(2), 1.0, 0.3, x2, 1e-3) <= 1e-4);
  const double x1[1] = {2};
  CHECK(fundamental_solution_residual(build_dirac_matrices(1), 1.0, 0.0, x1, 1e-4) <= 1e-6);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int q = 1; q <= 3; ++q) {
    const auto rep = build_dirac_matrices(q);
    for (int i = 0; i < 5; ++i) {
      std::vector<double> x(q);
      for (auto& v : x) v = u(rng);
      const cplx z(0.4, 0.3 * i);
      const double a = fundamental_solution_residual(rep, 1.0, z, x, 2e-3);
      const double b = fundamental_solution_residual(rep, 1.0, z, x, 1e-3);
      CHECK(a / b == doctest::Approx(4.0).epsilon(0.1));
    }
  }
}
