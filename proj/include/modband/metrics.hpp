#pragma once

#include <span>
#include <vector>

namespace modband {

double mse(std::span<const double> a, std::span<const double> b);

// m such that recovered − 2λm is closest to truth on average
long offset_multiple(std::span<const double> recovered, std::span<const double> truth,
                     double lambda);
std::vector<double> fix_offset(std::span<const double> recovered,
                               std::span<const double> truth, double lambda);
// removes the mean difference without quantizing (non-ideal levels)
std::vector<double> fix_offset_free(std::span<const double> recovered,
                                    std::span<const double> truth);

double max_abs(std::span<const double> x);

}  // namespace modband
