#include "modband/recovery_fourier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modband/demodulation.hpp"
#include "modband/error.hpp"
#include "modband/metrics.hpp"
#include "modband/sampling_planner.hpp"
#include "modband/spectral.hpp"

namespace modband {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

cplx kernel(int n, int k, int K) {
    double phase = -two_pi * static_cast<double>((static_cast<long>(n) * k) % K) / K;
    return std::polar(1.0, phase);
}

// longest run of consecutive indices
std::vector<std::pair<int, cplx>> longest_run(const BinMap& bins) {
    std::vector<std::pair<int, cplx>> best, cur;
    for (const auto& [n, v] : bins) {
        if (!cur.empty() && n != cur.back().first + 1) {
            if (cur.size() > best.size()) best = cur;
            cur.clear();
        }
        cur.emplace_back(n, v);
    }
    if (cur.size() > best.size()) best = cur;
    return best;
}

Eigen::MatrixXcd hankel(const std::vector<std::pair<int, cplx>>& run, int order) {
    const int rows = static_cast<int>(run.size()) - order;
    Eigen::MatrixXcd H(rows, order + 1);
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c <= order; ++c) H(i, c) = run[static_cast<std::size_t>(i + c)].second;
    return H;
}

}  // namespace

BinPartition partition_bins(int K, int q_low_base, int q_high_base) {
    if (q_low_base < 0 || q_low_base > q_high_base)
        throw Error(ErrorKind::precondition, "need 0 <= Q_L^g <= Q_U^g");
    if (2 * q_high_base >= K) {
        std::ostringstream os;
        os << "Q_U^g = " << q_high_base << " leaves no outer bins for K = " << K;
        throw Error(ErrorKind::degenerate_partition, os.str());
    }
    BinPartition p;
    p.K = K;
    for (int n = q_high_base + 1; n <= K - q_high_base - 1; ++n) p.outer.push_back(n);
    for (int n = 0; n < q_low_base; ++n) p.inner.push_back(n);
    for (int n = K - q_low_base + 1; n < K; ++n) p.inner.push_back(n);
    return p;
}

cplx spike_spectrum(const SpikeTrain& train, int n, int K) {
    cplx acc{};
    for (std::size_t m = 0; m < train.locations.size(); ++m)
        acc += train.amplitudes[m] * kernel(n, train.locations[m], K);
    return acc;
}

SpikeTrain estimate_spikes(const BinMap& bins, int K, int folds, double floor) {
    if (K < 1) throw Error(ErrorKind::precondition, "K must be >= 1");
    if (folds < 0) throw Error(ErrorKind::precondition, "folds must be >= 0");
    SpikeTrain train;
    double peak = 0.0;
    for (const auto& [n, v] : bins) peak = std::max(peak, std::abs(v));
    if (folds == 0 || peak <= floor) return train;

    auto run = longest_run(bins);
    if (static_cast<int>(run.size()) < 2 * folds + 1) {
        std::ostringstream os;
        os << "need " << 2 * folds + 1 << " consecutive bins, have " << run.size();
        throw Error(ErrorKind::insufficient_data, os.str());
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hankel(run, folds), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-8 * sv(0)) ++rank;
    int order = std::min(rank, folds);
    if (order == 0) return train;
    if (order < folds) svd.compute(hankel(run, order), Eigen::ComputeFullV);

    Eigen::VectorXcd a = svd.matrixV().col(order);
    std::vector<int> locs;
    if (std::abs(a(order)) < 1e-12 * a.norm()) {
        train.reliable = false;
    } else {
        Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(order, order);
        for (int i = 1; i < order; ++i) C(i, i - 1) = 1.0;
        for (int i = 0; i < order; ++i) C(i, order - 1) = -a(i) / a(order);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(C, false);
        for (int i = 0; i < order; ++i) {
            cplx z = eig.eigenvalues()(i);
            double pos = -K * std::arg(z) / two_pi;
            double r = std::round(pos);
            if (std::abs(pos - r) > 0.25 || std::abs(std::abs(z) - 1.0) > 1e-3) train.reliable = false;
            int k = wrap_index(static_cast<long>(r), K);
            if (std::find(locs.begin(), locs.end(), k) != locs.end())
                train.reliable = false;
            else
                locs.push_back(k);
        }
    }
    std::sort(locs.begin(), locs.end());
    if (locs.empty()) return train;

    const int rows = static_cast<int>(bins.size());
    const int cols = static_cast<int>(locs.size());
    Eigen::MatrixXd A(2 * rows, cols);
    Eigen::VectorXd b(2 * rows);
    int i = 0;
    for (const auto& [n, v] : bins) {
        for (int m = 0; m < cols; ++m) {
            cplx e = kernel(n, locs[static_cast<std::size_t>(m)], K);
            A(2 * i, m) = e.real();
            A(2 * i + 1, m) = e.imag();
        }
        b(2 * i) = v.real();
        b(2 * i + 1) = v.imag();
        ++i;
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    double cmax = c.cwiseAbs().maxCoeff();
    for (int m = 0; m < cols; ++m) {
        if (std::abs(c(m)) < 1e-6 * cmax || std::abs(c(m)) <= floor) continue;
        train.locations.push_back(locs[static_cast<std::size_t>(m)]);
        train.amplitudes.push_back(c(m));
    }
    double bn = b.norm();
    train.fit_residual = bn > 0.0 ? (A * c - b).norm() / bn : 0.0;
    return train;
}

const char* to_string(BinSet s) {
    switch (s) {
    case BinSet::outer: return "outer";
    case BinSet::inner: return "inner";
    case BinSet::automatic: return "auto";
    }
    return "unknown";
}

BinSet bin_set_from_string(const std::string& name) {
    if (name == "outer") return BinSet::outer;
    if (name == "inner") return BinSet::inner;
    if (name == "auto") return BinSet::automatic;
    throw Error(ErrorKind::parse, "unknown bin set '" + name + "'");
}

BandpassRecovery recover_bandpass_fourier(const FoldedCapture& capture, double period,
                                          const BandSpec& band, int folds, int wedge,
                                          const FourierOptions& options) {
    const int K = static_cast<int>(capture.size());
    const double T = capture.sample_period;
    if (K < 2 || !(T > 0.0)) throw Error(ErrorKind::precondition, "capture is empty");
    if (std::abs(period / T - K) > 1e-6 * K) {
        std::ostringstream os;
        os << "period/T_S = " << period / T << " differs from K = " << K;
        throw Error(ErrorKind::grid_mismatch, os.str());
    }
    if (folds < 0) throw Error(ErrorKind::precondition, "folds must be >= 0");

    DiscreteBandIndices idx = discrete_indices(period, K, band, wedge);
    BinPartition part = partition_bins(K, std::max(0, idx.q_low_base), idx.q_high_base);
    const int outer_size = static_cast<int>(part.outer.size());
    const int inner_run = std::max(0, 2 * idx.q_low_base - 1);
    const int need = 2 * folds + 1;

    BinSet set = options.set;
    if (set == BinSet::automatic) {
        bool outer_ok = outer_size >= need;
        bool inner_ok = inner_run >= need;
        if (!outer_ok && !inner_ok) {
            std::ostringstream os;
            os << "neither bin set has " << need << " bins (outer " << outer_size << ", inner "
               << inner_run << ")";
            throw Error(ErrorKind::insufficient_data, os.str());
        }
        set = (outer_ok && (!inner_ok || outer_size >= inner_run)) ? BinSet::outer : BinSet::inner;
    }

    const int available = set == BinSet::outer ? outer_size : inner_run;
    if (folds > 0 && available < need) {
        std::ostringstream os;
        os << to_string(set) << " set has " << available << " bins, need " << need;
        throw Error(ErrorKind::insufficient_data, os.str());
    }

    std::vector<std::string> notes;
    if (!idx.feasible) notes.push_back("indices: " + idx.reason + "; inner set unavailable");

    std::vector<double> ybar = cyclic_difference(capture.samples);
    std::vector<cplx> Y = dft(ybar);
    BinMap bins;
    if (set == BinSet::outer) {
        for (int n : part.outer) bins[n] = -Y[static_cast<std::size_t>(n)];
    } else {
        for (int n = -(idx.q_low_base - 1); n <= idx.q_low_base - 1; ++n)
            bins[n] = -Y[static_cast<std::size_t>(wrap_index(n, K))];
    }

    const double lambda = capture.fold_threshold();
    SpikeTrain train = estimate_spikes(bins, K, folds, 1e-9 * lambda);
    if (options.snap_2lambda) {
        SpikeTrain snapped;
        snapped.reliable = train.reliable;
        for (std::size_t m = 0; m < train.locations.size(); ++m) {
            double c = 2.0 * lambda * std::round(train.amplitudes[m] / (2.0 * lambda));
            if (c == 0.0) continue;
            snapped.locations.push_back(train.locations[m]);
            snapped.amplitudes.push_back(c);
        }
        train = snapped;
    }

    std::vector<double> rbar(static_cast<std::size_t>(K), 0.0);
    for (std::size_t m = 0; m < train.locations.size(); ++m)
        rbar[static_cast<std::size_t>(train.locations[m])] += train.amplitudes[m];
    std::vector<double> r = prefix_sum(rbar);

    BandpassRecovery out;
    RecoveryReport& rep = out.report;
    rep.recovered.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        rep.recovered[static_cast<std::size_t>(k)] = r[static_cast<std::size_t>(k)] + capture.samples[static_cast<std::size_t>(k)];
    rep.spikes = static_cast<int>(train.locations.size());
    rep.success = train.reliable;
    if (!train.reliable) rep.diagnostics.push_back("spike locations off the sample grid");
    if (train.fit_residual > 1e-6) {
        rep.success = false;
        std::ostringstream os;
        os << "spike model residual " << train.fit_residual;
        rep.diagnostics.push_back(os.str());
    }
    if (std::abs(r.back()) > 1e-6 * lambda) {
        rep.success = false;
        std::ostringstream os;
        os << "spikes do not sum to zero over a period (" << r.back() << ")";
        rep.diagnostics.push_back(os.str());
    }
    rep.diagnostics.insert(rep.diagnostics.begin(), notes.begin(), notes.end());
    rep.diagnostics.push_back(std::string("bin set ") + to_string(set));
    score_against_truth(rep, capture, lambda);

    std::vector<double> base = rep.recovered;
    if (capture.ground_truth) {
        base = capture.architecture() == Architecture::nonideal
                   ? fix_offset_free(base, *capture.ground_truth)
                   : fix_offset(base, *capture.ground_truth, lambda);
    }
    SpectralSelector sel{two_pi / T, wedge};
    out.signal.series = band_select(sample_spectrum(base, period), sel);
    out.signal.band = band;
    return out;
}

}  // namespace modband
