#pragma once

#include <functional>
#include <span>
#include <vector>

#include "modband/signal_model.hpp"

namespace modband {

// One period of an aliased spectrum: bins[b] = Σ_{n ≡ b mod K} c_n.
struct SampledSpectrum {
    double period = 1.0;
    std::vector<cplx> bins;

    int K() const { return static_cast<int>(bins.size()); }
    double sample_period() const { return period / K(); }
};

SampledSpectrum sample_spectrum(std::span<const double> samples, double period);
SampledSpectrum alias_spectrum(const FourierSeries& s, int K);

struct SpectralSelector {
    double omega_s = 0.0;
    int wedge = 1;

    // positive half of D(Ω_S, P); the mirror is implied
    double omega_begin() const { return 0.5 * (wedge - 1) * omega_s; }
    double omega_end() const { return 0.5 * wedge * omega_s; }
    bool contains(double omega) const;
};

// Harmonics whose bins are self-conjugate (DC or K/2) are split evenly
// between +h and −h so the output stays real.
FourierSeries band_select(const SampledSpectrum& spectrum, const SpectralSelector& sel);
FourierSeries band_select(const FourierSeries& series, const SpectralSelector& sel);

FourierSeries lowpass_extract(const SampledSpectrum& spectrum);
FourierSeries lowpass_extract(const FourierSeries& series, double omega_s);

// Σ_k x[k] sinc(Ω(t − kT)), T = π/Ω, samples taken at t = kT.
std::vector<double> sinc_interpolate(std::span<const double> samples, double omega,
                                     std::span<const double> times);

// Periodic (Dirichlet) interpolant of one period of samples.
FourierSeries periodic_interpolant(std::span<const double> samples, double period);

std::vector<double> am_remodulate(const std::function<double(double)>& baseband,
                                  double omega_c, double theta_c,
                                  std::span<const double> times);

}  // namespace modband
