#pragma once

#include <functional>
#include <vector>

#include "modband/recovery_fourier.hpp"

namespace modband::oracle {

struct SpikeFit {
    SpikeTrain train;
    long supports_examined = 0;
    double residual = 0.0;
};

// Tries every support of size <= folds; K <= 16, folds <= 3.
SpikeFit exhaustive_spike_fit(const BinMap& bins, int K, int folds);

// r[k] = γ[k] − fold_ideal(γ[k]) from the ground-truth signal.
std::vector<double> dense_residue(const std::function<double(double)>& g, double lambda,
                                  double sample_period, int K);

}  // namespace modband::oracle
