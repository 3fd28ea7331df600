#include "modband/spectral.hpp"

#include <numbers>

#include "modband/error.hpp"

namespace modband {

namespace {

template <class T>
std::vector<cplx> dft_impl(std::span<const T> x, double scale) {
    const std::size_t K = x.size();
    std::vector<cplx> twiddle(K);
    for (std::size_t i = 0; i < K; ++i)
        twiddle[i] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(i) /
                                         static_cast<double>(K));
    std::vector<cplx> X(K);
    for (std::size_t n = 0; n < K; ++n) {
        cplx acc{};
        for (std::size_t k = 0; k < K; ++k) acc += x[k] * twiddle[(k * n) % K];
        X[n] = scale * acc;
    }
    return X;
}

}  // namespace

std::vector<cplx> dft(std::span<const double> x, double scale) { return dft_impl(x, scale); }

std::vector<cplx> dft(std::span<const cplx> x, double scale) { return dft_impl(x, scale); }

std::vector<cplx> idft(std::span<const cplx> X, double scale) {
    const std::size_t K = X.size();
    std::vector<cplx> conj_in(K);
    for (std::size_t n = 0; n < K; ++n) conj_in[n] = std::conj(X[n]);
    std::vector<cplx> x = dft_impl(std::span<const cplx>(conj_in), 1.0);
    const double norm = 1.0 / (scale * static_cast<double>(K));
    for (auto& v : x) v = std::conj(v) * norm;
    return x;
}

std::vector<double> cyclic_difference(std::span<const double> x) {
    const std::size_t K = x.size();
    std::vector<double> d(K);
    for (std::size_t k = 0; k < K; ++k) d[k] = x[(k + 1) % K] - x[k];
    return d;
}

std::vector<double> finite_difference(std::span<const double> x, int order) {
    if (order < 0) throw Error(ErrorKind::precondition, "difference order must be >= 0");
    std::vector<double> d(x.begin(), x.end());
    for (int j = 0; j < order; ++j) {
        if (d.empty()) break;
        for (std::size_t k = 0; k + 1 < d.size(); ++k) d[k] = d[k + 1] - d[k];
        d.pop_back();
    }
    return d;
}

std::vector<double> prefix_sum(std::span<const double> x) {
    std::vector<double> s(x.size() + 1, 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) s[k + 1] = s[k] + x[k];
    return s;
}

}  // namespace modband
