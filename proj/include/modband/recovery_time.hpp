#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modband/folding.hpp"
#include "modband/signal_model.hpp"

namespace modband {

struct UsAlgConfig {
    double lambda = 1.0;  // λ, or λ_h for generalized captures
    double beta = 1.0;    // bound on ‖γ‖∞
    std::optional<int> order;
    BandSpec band;
    double sample_period = 0.0;
    int wedge = 1;
    // samples cover exactly one period: allows periodic extension for the
    // κ window and enables the out-of-band consistency check
    bool periodic = false;
    // periodic extension of y; off for non-ideal captures, whose residue breaks periodicity
    bool wrap = true;
    int max_order = 8;
};

struct RecoveryReport {
    std::vector<double> recovered;
    long offset_multiple = 0;
    int order_used = 0;
    bool success = false;
    std::optional<double> mse;
    std::vector<int> orders_tried;
    std::vector<std::string> diagnostics;
    int spikes = 0;  // Fourier method: number of estimated fold spikes
};

struct BandpassRecovery {
    RecoveryReport report;
    PeriodicBandpassSignal signal;
};

double baseband_omega(const UsAlgConfig& cfg);

// One pass of the unfolding recursion at a fixed order.
std::vector<double> unfold_fixed_order(std::span<const double> y, double lambda, double beta,
                                       int order, bool periodic);

RecoveryReport unfold_us(std::span<const double> y, const UsAlgConfig& cfg);

BandpassRecovery recover_bandpass_time(const FoldedCapture& capture, UsAlgConfig cfg,
                                       int wedge);

// periodic: the K samples span exactly one period of the input
RecoveryReport recover_generalized(const FoldedCapture& capture, const HysteresisParams& h,
                                   double beta, const BandSpec& band, int wedge,
                                   std::optional<int> order = std::nullopt,
                                   bool periodic = false);

// Attaches offset_multiple and MSE when the capture carries ground truth.
void score_against_truth(RecoveryReport& report, const FoldedCapture& capture, double lambda);

}  // namespace modband
