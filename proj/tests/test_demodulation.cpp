#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modband/demodulation.hpp"
#include "modband/error.hpp"
#include "modband/folding.hpp"
#include "modband/signal_model.hpp"

using namespace modband;
using std::numbers::pi;

TEST_CASE("first wedge is the identity on the Nyquist band") {
    FourierSeries s(1.0);
    s.set_pair(2, cplx(0.3, -0.1));
    s.set_pair(4, cplx(-0.2, 0.5));
    auto out = band_select(s, SpectralSelector{2 * pi * 10, 1});
    CHECK(out.conjugate_symmetric());
    for (int n = -4; n <= 4; ++n) CHECK(std::abs(out.coeff(n) - s.coeff(n)) < 1e-15);
    auto lp = lowpass_extract(s, 2 * pi * 10);
    for (int n = -4; n <= 4; ++n) CHECK(std::abs(lp.coeff(n) - s.coeff(n)) < 1e-15);
}

TEST_CASE("relocated baseband returns to the original band") {
    auto g = synth_random_bandpass(BandSpec::make(50 * pi, 51 * pi), 2.0, 7);
    auto y = g.series(sample_times(0.080, 25));
    auto out = band_select(sample_spectrum(y, 2.0), SpectralSelector{25 * pi, 5});
    CHECK(std::abs(out.coeff(51) - g.series.coeff(51)) < 1e-10);
    CHECK(std::abs(out.coeff(-51) - g.series.coeff(-51)) < 1e-10);
    // harmonic 50 and -50 share bin 0, only the real part survives
    CHECK(std::abs(out.coeff(50).real() - g.series.coeff(50).real()) < 1e-10);
    CHECK(out.coeff(50).imag() == 0.0);
    for (const auto& [n, c] : out.coeffs())
        if (std::abs(n) != 50 && std::abs(n) != 51) CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("selected band abuts the baseband replica at the widest rate") {
    // harmonics 10..14 with P = 3 at the maximal rate Omega_S = Omega_L
    FourierSeries s(1.0);
    for (int n = 10; n <= 14; ++n) s.set_pair(n, cplx(1.0 / n, 0.1 * n));
    s.set_pair(10, 0.25);  // bin 0 keeps only the real part
    const double omega_s = 2 * pi * 10;
    SpectralSelector sel{omega_s, 3};
    CHECK(sel.omega_begin() == doctest::Approx(2 * pi * 10));
    auto base = lowpass_extract(s, omega_s);
    CHECK(base.max_harmonic() == 4);
    auto out = band_select(s, sel);
    for (int n = -15; n <= 15; ++n) CHECK(std::abs(out.coeff(n) - s.coeff(n)) < 1e-15);
}

TEST_CASE("zero spectrum selects nothing") {
    SampledSpectrum z{1.0, std::vector<cplx>(8)};
    auto out = band_select(z, SpectralSelector{2 * pi * 8, 3});
    CHECK(out.energy() == 0.0);
    CHECK(lowpass_extract(z).energy() == 0.0);
}

TEST_CASE("self-conjugate bins are split between +h and -h") {
    SampledSpectrum s{1.0, {cplx(2.0, 0.0), 0.0, cplx(1.0, 0.0), 0.0}};
    auto lp = lowpass_extract(s);
    CHECK(lp.coeff(0) == cplx(2.0, 0.0));
    CHECK(lp.coeff(2) == cplx(0.5, 0.0));
    CHECK(lp.coeff(-2) == cplx(0.5, 0.0));
}

TEST_CASE("band select rejects an off-grid rate") {
    FourierSeries s(1.0);
    s.set_pair(3, 1.0);
    CHECK_THROWS_AS(band_select(s, SpectralSelector{2 * pi * 7.5, 1}), Error);
    CHECK_THROWS_AS(band_select(sample_spectrum(std::vector<double>(6, 0.0), 1.0),
                                SpectralSelector{2 * pi * 8, 1}),
                    Error);
}

TEST_CASE("AM baseband samples coincide with the bandpass samples") {
    AmParams p = snap_to_grid({-2.502, 2 * pi * 35, 1.147, 2 * pi * 400, -0.17}, 0.2);
    auto g = synth_am(p, 0.2);
    const double T = 2.5e-3;
    auto base = lowpass_extract(g.series, 2 * pi / T);
    CHECK(base.max_harmonic() < 40);
    for (int k = 0; k < 80; ++k) CHECK(std::abs(base(k * T) - g(k * T)) < 1e-12);
    // and so do their modulo samples
    for (int k = 0; k < 80; ++k)
        CHECK(std::abs(fold_ideal(base(k * T), 2.01) - fold_ideal(g(k * T), 2.01)) < 1e-9);
}

TEST_CASE("sinc interpolation reproduces grid samples") {
    std::vector<double> x{0.5, -1.0, 2.0, 0.25, 3.0};
    const double omega = pi / 0.1;
    std::vector<double> t{0.0, 0.1, 0.2, 0.4};
    auto v = sinc_interpolate(x, omega, t);
    CHECK(v[0] == 0.5);
    CHECK(v[1] == -1.0);
    CHECK(v[2] == 2.0);
    CHECK(v[3] == 3.0);
}

TEST_CASE("sinc interpolation of a constant") {
    const int N = 2001;
    std::vector<double> x(N, 1.0);
    std::vector<double> t{0.5 * (N - 1) + 0.5};
    CHECK(std::abs(sinc_interpolate(x, pi, t)[0] - 1.0) < 1e-3);
}

TEST_CASE("sinc interpolation of a bandlimited tone") {
    const int N = 400001;
    const double w0 = 0.3 * pi;
    std::vector<double> x(N);
    for (int k = 0; k < N; ++k) x[k] = std::sin(w0 * k + 0.2);
    std::vector<double> t;
    for (int i = -10; i <= 10; ++i) t.push_back(0.5 * (N - 1) + 2.0 * i + 0.37);
    auto v = sinc_interpolate(x, pi, t);
    double err = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) err = std::max(err, std::abs(v[i] - std::sin(w0 * t[i] + 0.2)));
    CHECK(err < 1e-6);
}

TEST_CASE("periodic interpolant") {
    FourierSeries s(1.0);
    s.set_pair(1, cplx(0.2, 0.4));
    s.set_pair(3, cplx(-0.1, 0.0));
    auto x = s(sample_times(1.0 / 9, 9));
    auto p = periodic_interpolant(x, 1.0);
    for (double t : {0.013, 0.5, 0.77}) CHECK(p(t) == doctest::Approx(s(t)).epsilon(1e-12));
}

TEST_CASE("AM remodulation") {
    std::vector<double> t{0.0, 0.01, 0.37};
    const double wc = 200 * pi;
    const double th = -0.93;
    auto v = am_remodulate([th](double) { return std::sin(th); }, wc, th, t);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(v[i] == doctest::Approx(std::sin(wc * t[i] + th)));

    auto g = [](double t) { return 1.0 + t; };
    auto w = am_remodulate(g, wc, pi / 2, t);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(w[i] == doctest::Approx(g(t[i]) * std::cos(wc * t[i])));

    CHECK_THROWS_AS(am_remodulate(g, wc, 0.0, t), Error);
}
