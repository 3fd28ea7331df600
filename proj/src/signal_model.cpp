#include "modband/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modband/error.hpp"
#include "modband/rng.hpp"

namespace modband {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double grid_position(double omega, double period) { return omega * period / two_pi; }

}  // namespace

BandSpec BandSpec::make(double omega_low, double omega_high) {
    if (!(omega_low > 0.0) || !(omega_high >= omega_low) || !std::isfinite(omega_high)) {
        std::ostringstream os;
        os << "invalid band (" << omega_low << ", " << omega_high << ")";
        throw Error(ErrorKind::precondition, os.str());
    }
    return BandSpec{omega_low, omega_high};
}

bool on_grid(double omega, double period) {
    double x = grid_position(omega, period);
    return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x));
}

int harmonic_index(double omega, double period) {
    if (!(period > 0.0))
        throw Error(ErrorKind::precondition, "period must be positive");
    double x = grid_position(omega, period);
    if (!on_grid(omega, period)) {
        std::ostringstream os;
        os << "frequency " << omega << " is not a multiple of 2pi/" << period
           << " (index " << x << ")";
        throw Error(ErrorKind::grid_mismatch, os.str());
    }
    return static_cast<int>(std::lround(x));
}

FourierSeries::FourierSeries(double period) : period_(period) {
    if (!(period > 0.0))
        throw Error(ErrorKind::precondition, "period must be positive");
}

FourierSeries::FourierSeries(double period, std::map<int, cplx> coeffs)
    : FourierSeries(period) {
    coeffs_ = std::move(coeffs);
}

cplx FourierSeries::coeff(int n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? cplx{} : it->second;
}

void FourierSeries::set(int n, cplx value) { coeffs_[n] = value; }

void FourierSeries::set_pair(int n, cplx value) {
    if (n == 0) {
        coeffs_[0] = value.real();
        return;
    }
    coeffs_[n] = value;
    coeffs_[-n] = std::conj(value);
}

void FourierSeries::add_pair(int n, cplx value) {
    if (n == 0) {
        coeffs_[0] += value.real();
        return;
    }
    coeffs_[n] += value;
    coeffs_[-n] += std::conj(value);
}

int FourierSeries::max_harmonic() const {
    int m = 0;
    for (const auto& [n, c] : coeffs_)
        if (c != cplx{}) m = std::max(m, std::abs(n));
    return m;
}

double FourierSeries::energy() const {
    double e = 0.0;
    for (const auto& [n, c] : coeffs_) e += std::norm(c);
    return e;
}

bool FourierSeries::conjugate_symmetric(double tol) const {
    for (const auto& [n, c] : coeffs_)
        if (std::abs(c - std::conj(coeff(-n))) > tol) return false;
    return true;
}

double FourierSeries::operator()(double t) const {
    cplx acc{};
    double mag = 0.0;
    double x = t / period_;
    for (const auto& [n, c] : coeffs_) {
        double phase = two_pi * std::fmod(n * x, 1.0);
        acc += c * std::polar(1.0, phase);
        mag += std::abs(c);
    }
    if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, mag)) {
        std::ostringstream os;
        os << "imaginary residual " << acc.imag() << " at t=" << t;
        throw Error(ErrorKind::conjugate_symmetry, os.str());
    }
    return acc.real();
}

std::vector<double> FourierSeries::operator()(std::span<const double> times) const {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) out.push_back((*this)(t));
    return out;
}

FourierSeries FourierSeries::scaled(double factor) const {
    FourierSeries out(period_);
    for (const auto& [n, c] : coeffs_) out.coeffs_[n] = c * factor;
    return out;
}

BandSpec AmParams::band() const {
    if (!(omega_carrier > omega_msg && omega_msg > 0.0))
        throw Error(ErrorKind::precondition, "AM parameters need omega_carrier > omega_msg > 0");
    return BandSpec::make(omega_carrier - omega_msg, omega_carrier + omega_msg);
}

double AmParams::operator()(double t) const {
    return amp * (1.0 + std::cos(omega_msg * t + phase_msg)) *
           std::sin(omega_carrier * t + phase_carrier);
}

PeriodicBandpassSignal synth_random_bandpass(const BandSpec& band, double period,
                                             std::uint64_t seed) {
    int lo = harmonic_index(band.omega_low, period);
    int hi = harmonic_index(band.omega_high, period);
    CounterRng rng(seed, 0);
    FourierSeries s(period);
    for (int n = lo; n <= hi; ++n) {
        double u0 = rng.uniform();
        double u1 = rng.uniform();
        s.set_pair(n, cplx(100.0 * u0, 120.0 * u1));
    }
    double peak = sup_norm(s);
    return {s.scaled(1.0 / peak), band};
}

PeriodicBandpassSignal synth_am(const AmParams& p, double period) {
    BandSpec band = p.band();
    int nc = harmonic_index(p.omega_carrier, period);
    int nm = harmonic_index(p.omega_msg, period);
    // sin(x) = (e^{jx} - e^{-jx}) / 2j
    const cplx j2(0.0, 2.0);
    FourierSeries s(period);
    s.add_pair(nc, p.amp * std::polar(1.0, p.phase_carrier) / j2);
    s.add_pair(nc + nm, 0.5 * p.amp * std::polar(1.0, p.phase_carrier + p.phase_msg) / j2);
    s.add_pair(nc - nm, 0.5 * p.amp * std::polar(1.0, p.phase_carrier - p.phase_msg) / j2);
    return {s, band};
}

AmParams snap_to_grid(const AmParams& p, double period) {
    AmParams out = p;
    double step = two_pi / period;
    out.omega_msg = std::round(p.omega_msg / step) * step;
    out.omega_carrier = std::round(p.omega_carrier / step) * step;
    return out;
}

std::vector<double> evaluate(const FourierSeries& s, std::span<const double> times) {
    return s(times);
}

std::vector<double> evaluate(const PeriodicBandpassSignal& s, std::span<const double> times) {
    return s.series(times);
}

std::vector<double> sample_times(double sample_period, std::size_t count, double t0) {
    std::vector<double> t(count);
    for (std::size_t k = 0; k < count; ++k) t[k] = t0 + static_cast<double>(k) * sample_period;
    return t;
}

double sup_norm(const FourierSeries& s, int oversample_factor) {
    if (oversample_factor < 8)
        throw Error(ErrorKind::precondition, "oversample factor must be at least 8");
    int nmax = s.max_harmonic();
    if (nmax == 0) return std::abs(s.coeff(0).real());
    long points = static_cast<long>(oversample_factor) * 2 * nmax;
    double dt = s.period() / static_cast<double>(points);
    double best = 0.0;
    for (long i = 0; i < points; ++i) best = std::max(best, std::abs(s(i * dt)));
    return best;
}

double sup_norm(const PeriodicBandpassSignal& s, int oversample_factor) {
    return sup_norm(s.series, oversample_factor);
}

}  // namespace modband
