#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modband/error.hpp"
#include "modband/sampling_planner.hpp"

using namespace modband;
using std::numbers::e;
using std::numbers::pi;

namespace {

const BandSpec sweep_band = BandSpec::make(50 * pi, 51 * pi);
const BandSpec relocated_band = BandSpec::make(199 * pi, 200 * pi);
const BandSpec am_band = BandSpec::make(584.33, 672.30);

}  // namespace

TEST_CASE("classic unlimited sampling") {
    auto u = us_classic(51 * pi, 0.07, 1.12);
    CHECK(std::abs(u.t_us - 1.0 / (102 * pi * e)) <= 1e-15 * u.t_us);
    CHECK(u.t_us == doctest::Approx(1.148e-3).epsilon(1e-3));

    CHECK(us_classic(pi, 0.5, 0.5, 0.08).n_star == 0);

    bool valid = false;
    CHECK(us_order(0.07, 1.12, 0.08, pi, &valid) == 8);
    CHECK(valid);
    us_order(0.07, 1.12, 0.5, pi, &valid);
    CHECK_FALSE(valid);

    CHECK_THROWS_AS(us_classic(pi, 1.0, 0.5), Error);
}

TEST_CASE("classic Fourier-domain rate") {
    auto p = fp_classic(1.0, 2 * pi, 0);
    CHECK(p.sample_count == 4);
    CHECK(p.t_max == doctest::Approx(0.25));
    CHECK(fp_classic(1.0, 2 * pi, 1).sample_count == 6);
    CHECK(fp_classic(2.0, 200 * pi, 259).sample_count == 920);
    CHECK(fp_classic(2.0, 200 * pi, 259).t_max == doctest::Approx(2.0 / 920));
}

TEST_CASE("Nyquist wedges") {
    auto p5 = lemma1_range(sweep_band, 5);
    CHECK(p5.t_min == doctest::Approx(0.08));
    CHECK(p5.t_max == doctest::Approx(0.0980392).epsilon(1e-6));
    CHECK(p5.parity == Parity::odd);

    auto p1 = lemma1_range(sweep_band, 1);
    CHECK(p1.t_min == 0.0);
    CHECK(p1.t_max == doctest::Approx(pi / (51 * pi)));

    // narrow band: the widest wedge is still non-empty
    BandSpec narrow = BandSpec::make(100.0, 101.0);
    int top = static_cast<int>(std::floor(narrow.omega_high / narrow.width()));
    auto pt = lemma1_range(narrow, top);
    CHECK_FALSE(pt.empty());
    CHECK(lemma1_range(narrow, top + 1).empty());
}

TEST_CASE("unlimited-time ranges") {
    auto p1 = theorem1_range(sweep_band, 1);
    CHECK(p1.t_min == 0.0);
    CHECK(p1.t_max == doctest::Approx(1.0 / (102 * pi * e)));

    auto p2 = theorem1_range(sweep_band, 2);
    CHECK(p2.t_min == doctest::Approx(0.0388290).epsilon(1e-6));
    CHECK(p2.t_max == doctest::Approx(2.0 / 51));
    CHECK_FALSE(p2.empty());
    CHECK(p2.parity == Parity::even);

    auto p5 = theorem1_range(sweep_band, 5);
    CHECK(p5.t_min == doctest::Approx(0.08));
    CHECK(p5.t_max == doctest::Approx(0.0795794).epsilon(1e-6));
    CHECK(p5.empty());
    CHECK_FALSE(p5.feasible);
    CHECK_FALSE(p5.reason.empty());

    CHECK_THROWS_AS(theorem1_range(sweep_band, 0), Error);
}

TEST_CASE("maximum wedge index") {
    auto b = p_max(sweep_band);
    CHECK(b.odd == 3);
    CHECK(b.even == 2);
    CHECK(b.overall == 2);
    CHECK(p_max(am_band).even == 0);
    CHECK(p_max(BandSpec::make(1.0, 100.0)).overall == 0);
}

TEST_CASE("baseband relocation") {
    auto r5 = baseband_relocation(sweep_band, 5);
    CHECK(r5.omega_s == doctest::Approx(25 * pi));
    CHECK(2 * pi / r5.omega_s == doctest::Approx(0.080));
    CHECK(r5.omega_base == doctest::Approx(pi));

    auto r2 = baseband_relocation(relocated_band, 2);
    CHECK(r2.omega_s == doctest::Approx(200 * pi));
    CHECK(2 * pi / r2.omega_s == doctest::Approx(0.010));

    auto r1 = baseband_relocation(sweep_band, 1);
    CHECK_FALSE(r1.relocated);
    CHECK(r1.note == "no relocation; use lowpass");

    CHECK(wedge_of(sweep_band, 0.080) == 5);
    CHECK(wedge_of(relocated_band, 0.010) == 2);
}

TEST_CASE("AM time-domain rate") {
    auto p = am_time_rate(am_band, 1);
    REQUIRE(p.omega_s);
    CHECK(*p.omega_s == doctest::Approx(628.315));
    CHECK(*p.omega_s == doctest::Approx(200 * pi).epsilon(1e-4));
    CHECK_FALSE(p.feasible);  // ratio 14.28 < 4 pi e
    CHECK(p.wedge == 2);

    CHECK(am_time_rate(BandSpec::make(500.0, 500.0), 1).feasible);
    CHECK(*am_time_rate(am_band, 2).omega_s == doctest::Approx(*p.omega_s / 2));
}

TEST_CASE("Fourier-domain ranges") {
    auto lp = theorem3_ranges(1.0, 5, 5, 2, 1);
    CHECK(lp.outer.t_min == 0.0);
    CHECK(lp.outer.t_max == doctest::Approx(1.0 / (2 * (5 + 2 + 1))));

    CHECK(theorem3_ranges(1.0, 3, 8, 2, 1).inner.feasible);
    CHECK_FALSE(theorem3_ranges(1.0, 2, 8, 2, 1).inner.feasible);

    auto b = theorem3_ranges(2.0, 199, 200, 40, 2);
    CHECK(b.outer.t_min == doctest::Approx(6.329114e-3).epsilon(1e-6));
    CHECK(b.outer.t_max == doctest::Approx(0.010));
    CHECK_FALSE(b.outer.empty());
}

TEST_CASE("AM Fourier-domain rate") {
    auto p = am_fourier_rate(0.299, am_band, 4, 1);
    REQUIRE(p.omega_s);
    CHECK(*p.omega_s == doctest::Approx(200 * pi).epsilon(1e-4));
    CHECK(p.feasible);
    CHECK(am_band.width() == doctest::Approx(28 * pi).epsilon(1e-3));
    CHECK(p.reason.find("924.616") != std::string::npos);

    // Q_L − M − 1 = 0 closes the interval
    CHECK_FALSE(am_fourier_rate(0.299, am_band, 26, 1).feasible);
}

TEST_CASE("discrete band indices") {
    double step = 2 * pi / 0.299;
    BandSpec snapped = BandSpec::make(27 * step, 32 * step);
    auto d = discrete_indices(0.299, 30, snapped, 2);
    CHECK(d.q_high_base == 3);
    // carrier on bin K: the relocated band straddles DC
    CHECK(d.q_low_base == -2);
    CHECK_FALSE(d.feasible);

    auto b = discrete_indices(2.0, 200, relocated_band, 2);
    CHECK(b.q_low == 199);
    CHECK(b.q_high == 200);
    CHECK(b.q_high_base == 1);
    CHECK(b.q_low_base == 0);

    auto lp = discrete_indices(2.0, 500, relocated_band, 1);
    CHECK(lp.q_high_base == 200);
    CHECK(lp.q_low_base == 199);

    CHECK_THROWS_AS(discrete_indices(2.0, 200, BandSpec::make(199.5 * pi, 200 * pi), 2), Error);
}

TEST_CASE("admissible sample counts") {
    auto ks = admissible_sample_counts(theorem3_ranges(2.0, 199, 200, 40, 2).outer, 2.0);
    REQUIRE_FALSE(ks.empty());
    CHECK(ks.front() == 200);
    CHECK(ks.back() == 316);
    CHECK(admissible_sample_counts(theorem1_range(sweep_band, 5), 2.0).empty());
}

TEST_CASE("regime names round-trip") {
    for (Regime r : {Regime::nyquist_lemma, Regime::unlimited_time, Regime::fourier_inner,
                     Regime::fourier_outer, Regime::am_time, Regime::am_fourier,
                     Regime::us_classic, Regime::fp_classic})
        CHECK(regime_from_string(to_string(r)) == r);
    CHECK_THROWS_AS(regime_from_string("bogus"), Error);
}
