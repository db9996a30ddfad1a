// Serial vs OpenMP assembly of C_z and the Birman-Schwinger scan.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "diracshell/spectral2d.hpp"

using namespace dshell;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int nmax = argc > 1 ? std::atoi(argv[1]) : 512;
  std::printf("threads available: %d\n", omp_get_max_threads());
  std::printf("%8s %12s %12s %8s %12s\n", "N", "serial[s]", "parallel[s]", "speedup", "max|diff|");
  for (int n = 64; n <= nmax; n *= 2) {
    const QuadratureGrid g = build_grid(kite(), n);
    DiscretizedOperator a, b;
    const double ts = seconds([&] { a = assemble_C(0.3, 1.0, g, Execution::serial); });
    const double tp = seconds([&] { b = assemble_C(0.3, 1.0, g, Execution::parallel); });
    std::printf("%8d %12.4f %12.4f %8.2f %12.3g\n", n, ts, tp, ts / tp, (a.matrix - b.matrix).cwiseAbs().maxCoeff());
  }
  const InteractionStrengths s{-3.0, 0.0, 0.0, 1.0};
  const QuadratureGrid g = build_grid(circle(1.0), 64);
  ScanResult rs, rp;
  const double ts = seconds([&] { rs = bs_scan(s, g, 100, 1e-3, Execution::serial); });
  const double tp = seconds([&] { rp = bs_scan(s, g, 100, 1e-3, Execution::parallel); });
  double diff = 0.0;
  for (std::size_t i = 0; i < rs.sigma_min.size(); ++i) diff = std::max(diff, std::abs(rs.sigma_min[i] - rp.sigma_min[i]));
  std::printf("bs_scan N=64, 100 points: serial %.3f s, parallel %.3f s, speedup %.2f, max|diff| %.3g\n", ts, tp, ts / tp,
              diff);
  return 0;
}
