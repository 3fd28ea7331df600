#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modband/demodulation.hpp"
#include "modband/error.hpp"
#include "modband/folding.hpp"
#include "modband/metrics.hpp"
#include "modband/recovery_time.hpp"
#include "modband/sampling_planner.hpp"
#include "modband/signal_model.hpp"
#include "modband/spectral.hpp"

using namespace modband;
using std::numbers::pi;

namespace {

const BandSpec sweep_band = BandSpec::make(50 * pi, 51 * pi);

UsAlgConfig sweep_config(double lambda, double beta) {
    UsAlgConfig cfg;
    cfg.lambda = lambda;
    cfg.beta = beta;
    cfg.band = sweep_band;
    cfg.sample_period = 0.080;
    cfg.wedge = 5;
    cfg.periodic = true;
    return cfg;
}

FoldedCapture sweep_capture(std::uint64_t seed, double lambda) {
    auto g = synth_random_bandpass(sweep_band, 2.0, seed);
    return capture_ideal([g](double t) { return g(t); }, lambda, 0.080, 25);
}

double lattice_beta(const FoldedCapture& c, double lambda) {
    return 2 * lambda * std::ceil(max_abs(*c.ground_truth) * 1.001 / (2 * lambda));
}

}  // namespace

TEST_CASE("unfolded input passes through") {
    std::vector<double> y{0.1, -0.2, 0.3, 0.05, -0.4, 0.2, 0.0, 0.1};
    UsAlgConfig cfg;
    cfg.lambda = 0.5;
    cfg.beta = 0.5;
    cfg.band = BandSpec::make(1.0, 2.0);
    cfg.sample_period = 0.1;
    auto rep = unfold_us(y, cfg);
    CHECK(rep.success);
    CHECK(rep.recovered == y);
}

TEST_CASE("wedge that does not relocate the band is rejected") {
    auto c = sweep_capture(3, 0.1);
    auto cfg = sweep_config(0.1, lattice_beta(c, 0.1));
    cfg.wedge = 1;
    CHECK_THROWS_AS(unfold_us(c.samples, cfg), Error);
    cfg.wedge = 6;
    CHECK_THROWS_AS(unfold_us(c.samples, cfg), Error);
    cfg.wedge = 5;
    CHECK(unfold_us(c.samples, cfg).success);
}

TEST_CASE("fixed order recovers a relocated bandpass capture") {
    const double lambda = 0.07;
    auto c = sweep_capture(6, lambda);
    auto cfg = sweep_config(lambda, lattice_beta(c, lambda));
    cfg.order = 3;
    auto out = recover_bandpass_time(c, cfg, 5);
    CHECK(out.report.success);
    CHECK(out.report.order_used == 3);
    REQUIRE(out.report.mse);
    CHECK(*out.report.mse <= 1e-12);
    CHECK(residue_and_fold_count(c).folds > 0);
}

TEST_CASE("adaptive order over several seeds") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const double lambda = 0.05 + 0.005 * static_cast<double>(seed);
        auto c = sweep_capture(seed, lambda);
        auto out = recover_bandpass_time(c, sweep_config(lambda, lattice_beta(c, lambda)), 5);
        CHECK(out.report.success);
        REQUIRE(out.report.mse);
        CHECK(*out.report.mse <= 1e-12);
        // band selection restores the bandpass harmonics
        auto g = synth_random_bandpass(sweep_band, 2.0, seed);
        CHECK(std::abs(out.signal.series.coeff(51) - g.series.coeff(51)) < 1e-10);
    }
}

TEST_CASE("non-ideal levels are detected") {
    const double lambda = 0.07;
    int detected = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto g = synth_random_bandpass(sweep_band, 2.0, seed);
        auto gamma = g.series(sample_times(0.080, 25));
        auto c = fold_nonideal(gamma, jittered_residue(gamma, lambda, 0.1, seed), lambda);
        c.sample_period = 0.080;
        auto cfg = sweep_config(lambda, lattice_beta(c, lambda));
        cfg.periodic = false;
        UsAlgConfig strict = cfg;
        auto rep = unfold_us(c.samples, strict);
        detected += rep.success ? 0 : 1;
    }
    CHECK(detected == 10);
}

TEST_CASE("lowpass first wedge") {
    // harmonics 1..3 of a 1 s period, T below 1/(2 Omega e)
    FourierSeries s(1.0);
    s.set_pair(1, cplx(0.8, 0.3));
    s.set_pair(2, cplx(-0.5, 0.6));
    s.set_pair(3, cplx(0.2, -0.7));
    const int K = 60;
    const double lambda = 0.4;
    auto c = capture_ideal([&s](double t) { return s(t); }, lambda, 1.0 / K, K);
    UsAlgConfig cfg;
    cfg.lambda = lambda;
    cfg.beta = lattice_beta(c, lambda);
    cfg.band = BandSpec::make(2 * pi, 6 * pi);
    cfg.sample_period = 1.0 / K;
    cfg.periodic = true;
    auto out = recover_bandpass_time(c, cfg, 1);
    CHECK(out.report.success);
    REQUIRE(out.report.mse);
    CHECK(*out.report.mse < 1e-20);
    for (int n = -3; n <= 3; ++n)
        CHECK(std::abs(out.signal.series.coeff(n) - s.coeff(n)) < 1e-12);
}

TEST_CASE("AM coefficients survive fold and recovery") {
    const double tau = 0.2;
    AmParams p = snap_to_grid({-2.502, 2 * pi * 35, 1.147, 2 * pi * 400, -0.6}, tau);
    auto g = synth_am(p, tau);
    const double T = 2.5e-3;
    const double lambda = 1.5;
    auto c = capture_ideal([&g](double t) { return g(t); }, lambda, T, 80);
    REQUIRE(residue_and_fold_count(c).folds > 0);
    UsAlgConfig cfg;
    cfg.lambda = lambda;
    cfg.beta = lattice_beta(c, lambda);
    cfg.band = p.band();
    cfg.sample_period = T;
    cfg.periodic = true;
    auto out = recover_bandpass_time(c, cfg, 2);
    CHECK(out.report.success);
    // the band straddles the carrier at Omega_S, so demodulate and remodulate
    auto rec = fix_offset(out.report.recovered, *c.ground_truth, lambda);
    auto base = periodic_interpolant(rec, tau);
    std::vector<double> t;
    for (int i = 0; i < 2000; ++i) t.push_back(i * tau / 2000);
    auto v = am_remodulate([&base](double x) { return base(x); }, p.omega_carrier, p.phase_carrier, t);
    double err = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) err = std::max(err, std::abs(v[i] - g(t[i])));
    CHECK(err < 1e-10);
}

TEST_CASE("short sequences") {
    UsAlgConfig cfg = sweep_config(0.07, 1.12);
    cfg.periodic = false;
    cfg.order = 3;
    std::vector<double> y{0.01, 0.02, 0.03};
    CHECK_THROWS_AS(unfold_us(y, cfg), Error);
    CHECK_THROWS_AS(unfold_fixed_order(y, 0.07, 1.12, 3, false), Error);
}

TEST_CASE("generalized recovery without hysteresis matches the ideal path") {
    const double lambda = 0.07;
    auto g = synth_random_bandpass(sweep_band, 2.0, 4);
    auto fn = [&g](double t) { return g(t); };
    HysteresisParams h{lambda, 0.0, 0.0};
    auto cg = capture_generalized(fn, h, 0.080, 25, default_event_grid(51 * pi));
    auto ci = capture_ideal(fn, lambda, 0.080, 25);
    double beta = lattice_beta(ci, lambda);
    auto rg = recover_generalized(cg, h, beta, sweep_band, 5, std::nullopt, true);
    auto ri = recover_bandpass_time(ci, sweep_config(lambda, beta), 5).report;
    REQUIRE(rg.success);
    REQUIRE(ri.success);
    CHECK(rg.order_used == ri.order_used);
    auto a = fix_offset(rg.recovered, *cg.ground_truth, lambda);
    auto b = fix_offset(ri.recovered, *ci.ground_truth, lambda);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-12);
}

TEST_CASE("generalized recovery of an AM replica with hysteresis") {
    const double tau = 0.06;
    AmParams p = snap_to_grid({2.47, 216.0, -1.57, 2500.0, -1.57}, tau);
    auto g = synth_am(p, tau);
    HysteresisParams h{1.93, 0.88, 0.0};
    auto c = capture_generalized([&g](double t) { return g(t); }, h, 2.5e-3, 24,
                                 default_event_grid(p.band().omega_high));
    CHECK(residue_and_fold_count(c).folds == 7);
    double beta = lattice_beta(c, h.lambda_h());
    auto rep = recover_generalized(c, h, beta, p.band(), 2, std::nullopt, true);
    CHECK(rep.success);
    REQUIRE(rep.mse);
    CHECK(*rep.mse <= 1e-10);

    HysteresisParams slow{1.93, 0.88, 1e-4};
    CHECK_THROWS_AS(recover_generalized(c, slow, beta, p.band(), 2), Error);
}

TEST_CASE("generalized capture without folds") {
    FourierSeries s(1.0);
    s.set_pair(2, 0.3);
    HysteresisParams h{1.0, 0.4, 0.0};
    auto c = capture_generalized([&s](double t) { return s(t); }, h, 0.05, 20, 1e-3);
    auto rep = recover_generalized(c, h, 1.0, BandSpec::make(4 * pi, 4 * pi), 1, std::nullopt, true);
    CHECK(rep.success);
    CHECK(rep.recovered == c.samples);
}

TEST_CASE("high-order differences of the input fold exactly") {
    FourierSeries s(1.0);
    s.set_pair(1, cplx(0.8, 0.3));
    s.set_pair(3, cplx(0.2, -0.7));
    const int K = 200;
    const double lambda = 0.4;
    const double T = 1.0 / K;
    auto c = capture_ideal([&s](double t) { return s(t); }, lambda, T, K);
    double beta = max_abs(*c.ground_truth);
    bool valid = false;
    int N = us_order(lambda, beta, T, 6 * pi, &valid);
    REQUIRE(valid);
    auto dg = finite_difference(*c.ground_truth, N);
    auto dy = finite_difference(c.samples, N);
    for (std::size_t k = 0; k < dg.size(); ++k) CHECK(std::abs(dg[k] - fold_ideal(dy[k], lambda)) < 1e-12);
}
