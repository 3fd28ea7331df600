#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modband/folding.hpp"
#include "modband/recovery_fourier.hpp"
#include "modband/sampling_planner.hpp"
#include "modband/signal_model.hpp"

namespace modband {

enum class SignalKind { random_bandpass, am, capture_file };
enum class Method { time, fourier };
enum class Demod { none, band_select, am };

const char* to_string(SignalKind k);
const char* to_string(Method m);
const char* to_string(Demod d);

struct ExperimentConfig {
    std::string name = "custom";

    SignalKind signal = SignalKind::random_bandpass;
    BandSpec band{1.0, 1.0};
    double period = 2.0;
    AmParams am;
    bool snap_am = true;  // move AM frequencies onto the 2π/τ grid
    std::string capture_path;
    double amplitude = 1.0;
    std::optional<int> max_folds;  // shrink amplitude until the cyclic count fits

    Architecture architecture = Architecture::ideal;
    double lambda = 0.1;
    std::optional<std::pair<double, double>> lambda_range;
    double hysteresis = 0.0;
    double transient = 0.0;
    double jitter = 0.1;

    double sample_period = 0.0;
    int wedge = 1;

    Method method = Method::time;
    std::optional<int> order;
    std::optional<double> beta;
    BinSet set = BinSet::automatic;
    bool snap_2lambda = false;
    std::optional<int> folds;

    Demod demod = Demod::band_select;
    bool empirical = false;

    std::uint64_t seed = 1;
    int replications = 1;

    int sample_count() const;
};

struct RunResult {
    int index = 0;
    double lambda = 0.0;
    double rho = 0.0;  // max|g| / λ
    double amplitude_scale = 1.0;
    int folds = 0;
    int cyclic_folds = 0;
    bool success = false;
    bool round_trip = false;
    double mse = 0.0;
    long offset_multiple = 0;
    int order_used = 0;
    int spikes = 0;
    std::optional<double> demod_error;  // coefficient error or dense-grid MSE
    std::vector<std::string> diagnostics;
};

struct SweepReport {
    std::string name;
    SamplingPlan plan;
    std::vector<std::string> warnings;
    std::vector<RunResult> runs;
    double max_mse = 0.0;
    double mean_mse = 0.0;
    double failure_rate = 0.0;
    int max_folds = 0;
    std::optional<double> max_demod_error;
};

// Plan that governs the configured method, rate and wedge.
SamplingPlan governing_plan(const ExperimentConfig& cfg);

struct RunArtifacts {
    RunResult result;
    std::vector<double> truth;
    std::vector<double> samples;
    std::vector<double> recovered;  // offset-corrected
};

RunArtifacts run_single(const ExperimentConfig& cfg, int index);
SweepReport run_experiment(const ExperimentConfig& cfg, int threads = 0);

// Thread count from MODBAND_THREADS, capped by the hardware.
int default_threads();

std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& name);

struct EmpiricalPlan {
    SamplingPlan plan;
    std::vector<std::pair<int, bool>> probes;  // (K, recovered)
};

// Brackets the sample counts K whose rates recover seeded probe signals.
EmpiricalPlan empirical_plan(const ExperimentConfig& base, int probes_per_rate = 3);

}  // namespace modband
