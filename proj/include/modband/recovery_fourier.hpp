#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modband/folding.hpp"
#include "modband/recovery_time.hpp"
#include "modband/signal_model.hpp"

namespace modband {

struct BinPartition {
    int K = 0;
    std::vector<int> outer;  // [Q_U^g+1, K−Q_U^g−1]
    std::vector<int> inner;  // [0, Q_L^g−1] ∪ [K−Q_L^g+1, K−1]
};

BinPartition partition_bins(int K, int q_low_base, int q_high_base);

struct SpikeTrain {
    std::vector<int> locations;
    std::vector<double> amplitudes;
    bool reliable = true;
    double fit_residual = 0.0;  // relative, over all bins
};

// Bin index n may be any integer; value modelled as Σ c_m e^{−j2πn k_m/K}.
using BinMap = std::map<int, cplx>;

// Bins or amplitudes at or below `floor` are treated as zero.
SpikeTrain estimate_spikes(const BinMap& bins, int K, int folds, double floor = 0.0);

// Σ_m c_m e^{−j2πn k_m/K}
cplx spike_spectrum(const SpikeTrain& train, int n, int K);

enum class BinSet { outer, inner, automatic };

const char* to_string(BinSet s);
BinSet bin_set_from_string(const std::string& name);

struct FourierOptions {
    BinSet set = BinSet::automatic;
    bool snap_2lambda = false;
};

BandpassRecovery recover_bandpass_fourier(const FoldedCapture& capture, double period,
                                          const BandSpec& band, int folds, int wedge,
                                          const FourierOptions& options = {});

}  // namespace modband
