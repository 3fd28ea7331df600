#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace modband {

using cplx = std::complex<double>;

struct BandSpec {
    double omega_low = 0.0;
    double omega_high = 0.0;

    // Ω_L == Ω_U is accepted as a single-tone band.
    static BandSpec make(double omega_low, double omega_high);

    double width() const { return omega_high - omega_low; }
};

// Index n such that omega == 2πn/period, or grid_mismatch.
int harmonic_index(double omega, double period);
bool on_grid(double omega, double period);

class FourierSeries {
public:
    FourierSeries() = default;
    explicit FourierSeries(double period);
    FourierSeries(double period, std::map<int, cplx> coeffs);

    double period() const { return period_; }
    const std::map<int, cplx>& coeffs() const { return coeffs_; }

    cplx coeff(int n) const;
    void set(int n, cplx value);
    // sets n and -n consistently; n == 0 keeps the real part only
    void set_pair(int n, cplx value);
    void add_pair(int n, cplx value);

    int max_harmonic() const;
    double energy() const;
    bool conjugate_symmetric(double tol = 1e-12) const;

    double operator()(double t) const;
    std::vector<double> operator()(std::span<const double> times) const;

    FourierSeries scaled(double factor) const;

private:
    double period_ = 1.0;
    std::map<int, cplx> coeffs_;
};

struct PeriodicBandpassSignal {
    FourierSeries series;
    BandSpec band;

    double period() const { return series.period(); }
    double operator()(double t) const { return series(t); }
};

struct AmParams {
    double amp = 0.0;
    double omega_msg = 0.0;
    double phase_msg = 0.0;
    double omega_carrier = 0.0;
    double phase_carrier = 0.0;

    BandSpec band() const;
    double operator()(double t) const;
};

PeriodicBandpassSignal synth_random_bandpass(const BandSpec& band, double period,
                                             std::uint64_t seed);
PeriodicBandpassSignal synth_am(const AmParams& p, double period);

// Moves Ω_M and Ω_C onto the nearest harmonics of 2π/period.
AmParams snap_to_grid(const AmParams& p, double period);

std::vector<double> evaluate(const FourierSeries& s, std::span<const double> times);
std::vector<double> evaluate(const PeriodicBandpassSignal& s, std::span<const double> times);

std::vector<double> sample_times(double sample_period, std::size_t count, double t0 = 0.0);

double sup_norm(const FourierSeries& s, int oversample_factor = 64);
double sup_norm(const PeriodicBandpassSignal& s, int oversample_factor = 64);

}  // namespace modband
