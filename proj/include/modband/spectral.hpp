#pragma once

#include <complex>
#include <span>
#include <vector>

namespace modband {

using cplx = std::complex<double>;

// X[n] = scale · Σ_k x[k] e^{−j2πkn/K}
std::vector<cplx> dft(std::span<const double> x, double scale = 1.0);
std::vector<cplx> dft(std::span<const cplx> x, double scale = 1.0);
// x[k] = (1/(scale·K)) Σ_n X[n] e^{j2πkn/K}
std::vector<cplx> idft(std::span<const cplx> X, double scale = 1.0);

// x[(k+1) mod K] − x[k]
std::vector<double> cyclic_difference(std::span<const double> x);
// Δ^order x, length K − order
std::vector<double> finite_difference(std::span<const double> x, int order);
// exclusive prefix sum, length K + 1: out[k] = Σ_{m<k} x[m]
std::vector<double> prefix_sum(std::span<const double> x);

inline int wrap_index(long n, int K) {
    long r = n % K;
    return static_cast<int>(r < 0 ? r + K : r);
}

}  // namespace modband
