#include "diracshell/linalg.hpp"

#include <complex>
#include <stdexcept>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace dshell {

namespace {

SvdResult run(const Eigen::MatrixXcd& a, bool vectors) {
  const lapack_int m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  SvdResult r;
  r.s.resize(k);
  if (k == 0) return r;
  Eigen::MatrixXcd work = a;
  Eigen::MatrixXcd vt;
  if (vectors) {
    r.u.resize(m, k);
    vt.resize(k, n);
  }
  const lapack_int info =
      LAPACKE_zgesdd(LAPACK_COL_MAJOR, vectors ? 'S' : 'N', m, n, work.data(), m, r.s.data(),
                     vectors ? r.u.data() : nullptr, m, vectors ? vt.data() : nullptr, vectors ? k : 1);
  if (info != 0) throw std::runtime_error("zgesdd failed with info " + std::to_string(info));
  if (vectors) r.v = vt.adjoint();
  return r;
}

}  // namespace

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a) { return run(a, false).s; }

SvdResult svd(const Eigen::MatrixXcd& a) { return run(a, true); }

}  // namespace dshell
