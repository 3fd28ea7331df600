#include "modband/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "modband/error.hpp"

namespace modband {

namespace {

void same_length(std::size_t a, std::size_t b) {
    if (a != b) throw Error(ErrorKind::length_mismatch, "sequences differ in length");
}

double mean_difference(std::span<const double> a, std::span<const double> b) {
    same_length(a.size(), b.size());
    if (a.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] - b[k];
    return acc / static_cast<double>(a.size());
}

}  // namespace

double mse(std::span<const double> a, std::span<const double> b) {
    same_length(a.size(), b.size());
    if (a.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

long offset_multiple(std::span<const double> recovered, std::span<const double> truth,
                     double lambda) {
    return std::lround(mean_difference(recovered, truth) / (2.0 * lambda));
}

std::vector<double> fix_offset(std::span<const double> recovered,
                               std::span<const double> truth, double lambda) {
    double shift = 2.0 * lambda * static_cast<double>(offset_multiple(recovered, truth, lambda));
    std::vector<double> out(recovered.begin(), recovered.end());
    for (auto& v : out) v -= shift;
    return out;
}

std::vector<double> fix_offset_free(std::span<const double> recovered,
                                    std::span<const double> truth) {
    double shift = mean_difference(recovered, truth);
    std::vector<double> out(recovered.begin(), recovered.end());
    for (auto& v : out) v -= shift;
    return out;
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace modband
