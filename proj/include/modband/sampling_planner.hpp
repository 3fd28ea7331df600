#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modband/signal_model.hpp"

namespace modband {

enum class Parity { odd, even };

enum class Regime {
    nyquist_lemma,
    unlimited_time,
    fourier_inner,
    fourier_outer,
    am_time,
    am_fourier,
    us_classic,
    fp_classic,
};

const char* to_string(Parity p);
const char* to_string(Regime r);
Regime regime_from_string(const std::string& name);

inline Parity parity_of(int wedge) { return wedge % 2 ? Parity::odd : Parity::even; }

struct SamplingPlan {
    double t_min = 0.0;
    double t_max = 0.0;
    int wedge = 1;
    Parity parity = Parity::odd;
    Regime regime = Regime::nyquist_lemma;
    double baseband_bandwidth = 0.0;  // Ω_U^g at the midpoint
    bool feasible = true;
    std::string reason;
    std::optional<double> omega_s;      // AM corollaries fix the rate
    std::optional<int> sample_count;    // fp-classic minimum K

    bool empty() const { return !(t_min <= t_max + 1e-15); }
    double midpoint() const { return 0.5 * (t_min + t_max); }
};

struct DiscreteBandIndices {
    int K = 0;
    int q_low = 0;
    int q_high = 0;
    int q_high_base = 0;
    int q_low_base = 0;
    bool feasible = true;
    std::string reason;
};

struct UsClassic {
    double t_us = 0.0;
    int n_star = 0;
    bool order_valid = true;
};

struct WedgeBounds {
    int odd = 0;
    int even = 0;
    int overall = 0;
};

struct Relocation {
    bool relocated = true;
    double omega_s = 0.0;
    double omega_base = 0.0;
    std::string note;
};

struct FourierPlans {
    SamplingPlan outer;
    SamplingPlan inner;
};

// ceil/floor that treat values within 1e-9 of an integer as that integer
int snap_ceil(double x);
int snap_floor(double x);

// N = ⌈(log λ − log β)/log(T Ω e)⌉; order_valid is false when TΩe ≥ 1.
int us_order(double lambda, double beta, double sample_period, double omega, bool* valid = nullptr);

UsClassic us_classic(double omega, double lambda, double beta,
                     std::optional<double> sample_period = std::nullopt);
SamplingPlan fp_classic(double period, double omega, int folds);
SamplingPlan lemma1_range(const BandSpec& band, int wedge);
SamplingPlan theorem1_range(const BandSpec& band, int wedge);
WedgeBounds p_max(const BandSpec& band);
Relocation baseband_relocation(const BandSpec& band, int wedge);
double baseband_bandwidth(const BandSpec& band, int wedge, double omega_s);
// wedge P whose Nyquist interval contains T_S, or 0 if none
int wedge_of(const BandSpec& band, double sample_period);
SamplingPlan am_time_rate(const BandSpec& band, int p_am);
FourierPlans theorem3_ranges(double period, int q_low, int q_high, int folds, int wedge);
SamplingPlan am_fourier_rate(double period, const BandSpec& band, int folds, int p_am);
DiscreteBandIndices discrete_indices(double period, int K, const BandSpec& band, int wedge);

// Integer sample counts K with τ/K inside the plan.
std::vector<int> admissible_sample_counts(const SamplingPlan& plan, double period);

}  // namespace modband
