#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "modband/signal_model.hpp"

namespace modband {

struct IdealModuloParams {
    double lambda = 1.0;
};

struct HysteresisParams {
    double lambda = 1.0;
    double hysteresis = 0.0;
    double transient = 0.0;

    double lambda_h() const { return lambda - 0.5 * hysteresis; }
    void validate() const;
};

// Level m applies from breakpoints[m] up to the next breakpoint. If
// levels has one extra entry, levels[0] covers the cell before the
// first breakpoint; otherwise that cell has level 0.
struct NonIdealResidue {
    std::vector<std::size_t> breakpoints;
    std::vector<double> levels;

    std::vector<double> expand(std::size_t length) const;
};

struct NonIdealParams {
    double lambda = 1.0;  // nominal threshold
    NonIdealResidue residue;
};

enum class Architecture { ideal, generalized, nonideal };

using FoldParams = std::variant<IdealModuloParams, HysteresisParams, NonIdealParams>;

struct FoldedCapture {
    std::vector<double> samples;
    double sample_period = 0.0;
    FoldParams params = IdealModuloParams{};
    std::optional<std::vector<double>> ground_truth;

    Architecture architecture() const;
    // λ for ideal/nonideal, λ_h for generalized
    double fold_threshold() const;
    std::size_t size() const { return samples.size(); }
};

const char* to_string(Architecture a);

double fold_ideal(double x, double lambda);
std::vector<double> fold_ideal(std::span<const double> x, double lambda);

struct FoldEvent {
    double time = 0.0;
    int sign = 0;
};

struct GeneralizedFold {
    HysteresisParams params;
    std::vector<FoldEvent> events;

    // Σ_p s_p ε_0(t − τ_p)
    double residual(double t) const;
    double trace(const std::function<double(double)>& g, double t) const;
};

double default_event_grid(double omega_high);

GeneralizedFold fold_generalized(const std::function<double(double)>& g,
                                 const HysteresisParams& h, double horizon,
                                 double grid_step);

FoldedCapture capture_ideal(const std::function<double(double)>& g, double lambda,
                            double sample_period, std::size_t count);
FoldedCapture capture_generalized(const std::function<double(double)>& g,
                                  const HysteresisParams& h, double sample_period,
                                  std::size_t count, double grid_step);

FoldedCapture fold_nonideal(std::span<const double> gamma, const NonIdealResidue& residue,
                            double nominal_lambda = 1.0);

// Levels 2λ(1+δ), δ ~ U(−jitter, jitter), placed where fold_ideal steps.
NonIdealResidue jittered_residue(std::span<const double> gamma, double lambda,
                                 double jitter, std::uint64_t seed,
                                 std::uint64_t stream = 0);

struct ResidueCount {
    std::vector<double> residue;
    int folds = 0;
};

ResidueCount residue_and_fold_count(const FoldedCapture& capture);

// Level changes counted cyclically, including the wrap from K−1 to 0.
int cyclic_fold_count(std::span<const double> residue, double lambda);
int fold_count(std::span<const double> residue, double lambda);

}  // namespace modband
