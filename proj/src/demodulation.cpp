#include "modband/demodulation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "modband/error.hpp"
#include "modband/sampling_planner.hpp"
#include "modband/spectral.hpp"

namespace modband {

namespace {

int samples_per_period(double omega_s, double period) {
    double k = omega_s * period / (2.0 * std::numbers::pi);
    double r = std::round(k);
    if (r < 1.0 || std::abs(k - r) > 1e-9 * std::max(1.0, k)) {
        std::ostringstream os;
        os << "sampling rate " << omega_s << " is not a multiple of 2pi/" << period;
        throw Error(ErrorKind::grid_mismatch, os.str());
    }
    return static_cast<int>(r);
}

FourierSeries select_range(const SampledSpectrum& spec, double h_lo, double h_hi) {
    const int K = spec.K();
    FourierSeries out(spec.period);
    if (K == 0) return out;
    for (int h = std::max(0, snap_ceil(h_lo)); h <= snap_floor(h_hi); ++h) {
        cplx v = spec.bins[static_cast<std::size_t>(wrap_index(h, K))];
        if (h == 0)
            out.set(0, v.real());
        else if ((2L * h) % K == 0)
            out.set_pair(h, cplx(0.5 * v.real(), 0.0));
        else
            out.set_pair(h, v);
    }
    return out;
}

}  // namespace

SampledSpectrum sample_spectrum(std::span<const double> samples, double period) {
    SampledSpectrum s;
    s.period = period;
    s.bins = dft(samples, 1.0 / static_cast<double>(samples.size()));
    return s;
}

SampledSpectrum alias_spectrum(const FourierSeries& series, int K) {
    if (K < 1) throw Error(ErrorKind::precondition, "K must be >= 1");
    SampledSpectrum s;
    s.period = series.period();
    s.bins.assign(static_cast<std::size_t>(K), cplx{});
    for (const auto& [n, c] : series.coeffs()) s.bins[static_cast<std::size_t>(wrap_index(n, K))] += c;
    return s;
}

bool SpectralSelector::contains(double omega) const {
    double a = std::abs(omega);
    return a >= omega_begin() && a <= omega_end();
}

FourierSeries band_select(const SampledSpectrum& spectrum, const SpectralSelector& sel) {
    int K = samples_per_period(sel.omega_s, spectrum.period);
    if (K != spectrum.K())
        throw Error(ErrorKind::grid_mismatch, "selector rate does not match spectrum length");
    return select_range(spectrum, 0.5 * (sel.wedge - 1) * K, 0.5 * sel.wedge * K);
}

FourierSeries band_select(const FourierSeries& series, const SpectralSelector& sel) {
    int K = samples_per_period(sel.omega_s, series.period());
    return band_select(alias_spectrum(series, K), sel);
}

FourierSeries lowpass_extract(const SampledSpectrum& spectrum) {
    return select_range(spectrum, 0.0, 0.5 * spectrum.K());
}

FourierSeries lowpass_extract(const FourierSeries& series, double omega_s) {
    return lowpass_extract(alias_spectrum(series, samples_per_period(omega_s, series.period())));
}

std::vector<double> sinc_interpolate(std::span<const double> samples, double omega,
                                     std::span<const double> times) {
    if (!(omega > 0.0)) throw Error(ErrorKind::precondition, "omega must be positive");
    const double T = std::numbers::pi / omega;
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        double acc = 0.0;
        for (std::size_t k = 0; k < samples.size(); ++k) {
            double u = t / T - static_cast<double>(k);
            double r = std::round(u);
            if (std::abs(u - r) < 1e-12) {
                if (r == 0.0) acc += samples[k];
                continue;
            }
            double x = std::numbers::pi * u;
            acc += samples[k] * std::sin(x) / x;
        }
        out.push_back(acc);
    }
    return out;
}

FourierSeries periodic_interpolant(std::span<const double> samples, double period) {
    return lowpass_extract(sample_spectrum(samples, period));
}

std::vector<double> am_remodulate(const std::function<double(double)>& baseband,
                                  double omega_c, double theta_c,
                                  std::span<const double> times) {
    double s = std::sin(theta_c);
    if (std::abs(s) < 1e-6)
        throw Error(ErrorKind::ill_conditioned, "carrier phase too close to a multiple of pi");
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(baseband(t) * std::sin(omega_c * t + theta_c) / s);
    return out;
}

}  // namespace modband
