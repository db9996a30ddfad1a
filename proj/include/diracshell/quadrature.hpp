#pragma once

#include <complex>
#include <vector>

namespace dshell {

// Discrete principal value weights for int_0^1 cot(pi(t_i - s)) f(s) ds on N
// equispaced nodes, indexed by k = i - j mod N. Exact on trigonometric
// polynomials of degree < N/2.
std::vector<double> hilbert_weights(int n);

// Weights for int_0^1 log(4 sin^2(pi(t_i - s))) f(s) ds, indexed by |i - j| mod N.
std::vector<double> log_weights(int n);

// Trigonometric interpolation of equispaced samples (period 1) onto m >= n
// equispaced nodes. The Nyquist mode is split symmetrically.
std::vector<std::complex<double>> trig_resample(const std::vector<std::complex<double>>& f, int m);

}  // namespace dshell
