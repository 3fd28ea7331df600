#include "oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "modband/error.hpp"

namespace modband::oracle {

namespace {

struct Fit {
    std::vector<double> amps;
    double residual;
};

Fit least_squares(const BinMap& bins, const std::vector<int>& support, int K) {
    const int rows = static_cast<int>(bins.size());
    const int cols = static_cast<int>(support.size());
    Eigen::MatrixXd A(2 * rows, cols);
    Eigen::VectorXd b(2 * rows);
    int i = 0;
    for (const auto& [n, v] : bins) {
        for (int m = 0; m < cols; ++m) {
            double ph = -2.0 * std::numbers::pi * static_cast<double>(n) * support[static_cast<std::size_t>(m)] / K;
            A(2 * i, m) = std::cos(ph);
            A(2 * i + 1, m) = std::sin(ph);
        }
        b(2 * i) = v.real();
        b(2 * i + 1) = v.imag();
        ++i;
    }
    Fit f;
    if (cols == 0) {
        f.residual = b.norm();
        return f;
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    f.amps.assign(c.data(), c.data() + cols);
    f.residual = (A * c - b).norm();
    return f;
}

void enumerate(int K, int size, int start, std::vector<int>& cur,
               const std::function<void(const std::vector<int>&)>& visit) {
    if (static_cast<int>(cur.size()) == size) {
        visit(cur);
        return;
    }
    for (int k = start; k < K; ++k) {
        cur.push_back(k);
        enumerate(K, size, k + 1, cur, visit);
        cur.pop_back();
    }
}

}  // namespace

SpikeFit exhaustive_spike_fit(const BinMap& bins, int K, int folds) {
    if (K > 16 || folds > 3)
        throw Error(ErrorKind::domain_too_large, "oracle limited to K <= 16, folds <= 3");
    SpikeFit best;
    best.residual = least_squares(bins, {}, K).residual;
    double scale = 0.0;
    for (const auto& [n, v] : bins) scale = std::max(scale, std::abs(v));
    std::vector<int> cur;
    for (int size = 1; size <= folds; ++size) {
        enumerate(K, size, 0, cur, [&](const std::vector<int>& support) {
            ++best.supports_examined;
            Fit f = least_squares(bins, support, K);
            // a smaller support wins unless the larger one fits clearly better
            if (f.residual < best.residual - 1e-9 * std::max(scale, 1.0)) {
                best.residual = f.residual;
                best.train.locations = support;
                best.train.amplitudes = f.amps;
            }
        });
    }
    return best;
}

std::vector<double> dense_residue(const std::function<double(double)>& g, double lambda,
                                  double sample_period, int K) {
    std::vector<double> r(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        double v = g(k * sample_period);
        r[static_cast<std::size_t>(k)] = 2.0 * lambda * std::floor(v / (2.0 * lambda) + 0.5);
    }
    return r;
}

}  // namespace modband::oracle
