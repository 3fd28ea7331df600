#include "modband/recovery_time.hpp"

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

double round_grid(double x, double lambda) {
    return 2.0 * lambda * std::ceil(std::floor(x / lambda) / 2.0);
}

int kappa_window(double lambda, double beta) {
    return std::max(1, static_cast<int>(std::ceil(6.0 * beta / lambda - 1e-9)));
}

std::size_t required_length(int order, int window) {
    return static_cast<std::size_t>(std::max(order + 2, window + order + 1));
}

struct Check {
    bool ok = true;
    std::string note;
};

Check consistency(std::span<const double> rec, std::span<const double> y,
                  const UsAlgConfig& cfg, double omega_base) {
    Check c;
    const double lam = cfg.lambda;
    for (std::size_t k = 0; k < rec.size(); ++k) {
        double m = (rec[k] - y[k]) / (2.0 * lam);
        if (!std::isfinite(rec[k]) || std::abs(m - std::round(m)) > 1e-9) {
            c.ok = false;
            c.note = "recovered samples leave the 2*lambda lattice";
            return c;
        }
    }
    auto [lo, hi] = std::minmax_element(rec.begin(), rec.end());
    if (*hi - *lo > 2.0 * cfg.beta * (1.0 + 1e-9) + 1e-12) {
        std::ostringstream os;
        os << "recovered range " << *hi - *lo << " exceeds 2*beta";
        c.ok = false;
        c.note = os.str();
        return c;
    }
    if (cfg.periodic && rec.size() > 2) {
        const int K = static_cast<int>(rec.size());
        auto X = dft(rec, 1.0 / K);
        int q = snap_ceil(omega_base * K * cfg.sample_period / (2.0 * std::numbers::pi));
        double worst = 0.0;
        for (int b = 0; b < K; ++b)
            if (std::min(b, K - b) > q) worst = std::max(worst, std::abs(X[static_cast<std::size_t>(b)]));
        if (worst > 1e-6 * lam) {
            std::ostringstream os;
            os << "out-of-band content " << worst << " above tolerance";
            c.ok = false;
            c.note = os.str();
        }
    }
    return c;
}

}  // namespace

double baseband_omega(const UsAlgConfig& cfg) {
    if (!(cfg.sample_period > 0.0))
        throw Error(ErrorKind::precondition, "sample period must be positive");
    const double omega_s = 2.0 * std::numbers::pi / cfg.sample_period;
    const double omega = baseband_bandwidth(cfg.band, cfg.wedge, omega_s);
    if (omega < 0.0 || omega > 0.5 * omega_s * (1.0 + 1e-9))
        throw Error(ErrorKind::precondition,
                    "band does not map into baseband from wedge " + std::to_string(cfg.wedge));
    return omega;
}

std::vector<double> unfold_fixed_order(std::span<const double> y_in, double lambda, double beta,
                                       int order, bool periodic) {
    const std::size_t K = y_in.size();
    if (order == 0) return {y_in.begin(), y_in.end()};
    const int J = kappa_window(lambda, beta);
    const double beta_eff = J * lambda / 6.0;
    const std::size_t need = required_length(order, J);

    std::vector<double> y(y_in.begin(), y_in.end());
    if (K < need) {
        if (!periodic || K == 0) {
            std::ostringstream os;
            os << "need at least " << need << " samples for order " << order
               << " and window " << J << ", have " << K;
            throw Error(ErrorKind::insufficient_length, os.str());
        }
        y.resize(need);
        for (std::size_t k = K; k < need; ++k) y[k] = y_in[k % K];
    }

    std::vector<double> yN = finite_difference(y, order);
    std::vector<double> s(yN.size());
    for (std::size_t k = 0; k < yN.size(); ++k) s[k] = fold_ideal(yN[k], lambda) - yN[k];

    for (int j = order - 1; j >= 1; --j) {
        std::vector<double> q = prefix_sum(s);
        for (double& v : q) v = round_grid(v, lambda);
        std::vector<double> dj = finite_difference(y, j);
        std::vector<double> w(q.size());
        for (std::size_t k = 0; k < q.size(); ++k) w[k] = q[k] + dj[k];
        std::vector<double> Sw = prefix_sum(w);
        double kappa = std::floor((Sw[0] - Sw[static_cast<std::size_t>(J)]) / (12.0 * beta_eff) + 0.5);
        for (std::size_t k = 0; k < q.size(); ++k) q[k] += 2.0 * lambda * kappa;
        s = std::move(q);
    }
    std::vector<double> r = prefix_sum(s);
    std::vector<double> out(K);
    for (std::size_t k = 0; k < K; ++k) out[k] = round_grid(r[k], lambda) + y[k];
    return out;
}

RecoveryReport unfold_us(std::span<const double> y, const UsAlgConfig& cfg) {
    if (!(cfg.lambda > 0.0)) throw Error(ErrorKind::precondition, "lambda must be positive");
    if (cfg.beta < cfg.lambda) throw Error(ErrorKind::precondition, "beta must be >= lambda");
    if (cfg.order && *cfg.order < 1) throw Error(ErrorKind::precondition, "order override must be >= 1");

    const double omega_base = baseband_omega(cfg);
    RecoveryReport rep;

    std::vector<int> orders;
    if (cfg.order) {
        orders.push_back(*cfg.order);
    } else {
        bool valid = false;
        int n0 = us_order(cfg.lambda, cfg.beta, cfg.sample_period, omega_base, &valid);
        if (valid) {
            orders.push_back(n0);
        } else {
            std::ostringstream os;
            os << "order formula undefined (T*Omega*e = "
               << cfg.sample_period * omega_base * std::numbers::e << ")";
            rep.diagnostics.push_back(os.str());
        }
        for (int n = 1; n <= cfg.max_order; ++n)
            if (std::find(orders.begin(), orders.end(), n) == orders.end()) orders.push_back(n);
    }

    for (int n : orders) {
        const bool wrap = cfg.periodic && cfg.wrap;
        if (y.size() <= static_cast<std::size_t>(n + 1) && !wrap) {
            if (cfg.order)
                throw Error(ErrorKind::insufficient_length, "sequence too short for the order");
            continue;
        }
        rep.orders_tried.push_back(n);
        std::vector<double> rec;
        try {
            rec = unfold_fixed_order(y, cfg.lambda, cfg.beta, n, wrap);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::insufficient_length || cfg.order) throw;
            rep.diagnostics.push_back(std::string("order ") + std::to_string(n) + ": " + e.what());
            continue;
        }
        Check c = consistency(rec, y, cfg, omega_base);
        rep.recovered = std::move(rec);
        rep.order_used = n;
        if (c.ok) {
            rep.success = true;
            return rep;
        }
        rep.diagnostics.push_back("order " + std::to_string(n) + ": " + c.note);
    }
    if (rep.orders_tried.empty())
        throw Error(ErrorKind::insufficient_length, "no order fits the sequence length");
    return rep;
}

void score_against_truth(RecoveryReport& report, const FoldedCapture& capture, double lambda) {
    if (!capture.ground_truth || report.recovered.empty()) return;
    const auto& truth = *capture.ground_truth;
    report.offset_multiple = offset_multiple(report.recovered, truth, lambda);
    // non-ideal levels are not on the 2λ lattice, so the constant is free
    if (capture.architecture() == Architecture::nonideal)
        report.mse = mse(fix_offset_free(report.recovered, truth), truth);
    else
        report.mse = mse(fix_offset(report.recovered, truth, lambda), truth);
}

BandpassRecovery recover_bandpass_time(const FoldedCapture& capture, UsAlgConfig cfg,
                                       int wedge) {
    cfg.wedge = wedge;
    if (cfg.sample_period <= 0.0) cfg.sample_period = capture.sample_period;
    if (capture.architecture() == Architecture::nonideal) cfg.wrap = false;

    const double lambda = cfg.lambda;
    BandpassRecovery out;
    out.report = unfold_us(capture.samples, cfg);
    score_against_truth(out.report, capture, lambda);

    const double period = cfg.sample_period * static_cast<double>(capture.size());
    std::vector<double> base = out.report.recovered;
    if (capture.ground_truth) base = fix_offset(base, *capture.ground_truth, lambda);
    SpectralSelector sel{2.0 * std::numbers::pi / cfg.sample_period, wedge};
    out.signal.series = band_select(sample_spectrum(base, period), sel);
    out.signal.band = cfg.band;
    return out;
}

RecoveryReport recover_generalized(const FoldedCapture& capture, const HysteresisParams& h,
                                   double beta, const BandSpec& band, int wedge,
                                   std::optional<int> order, bool periodic) {
    h.validate();
    if (h.transient > 0.0)
        throw Error(ErrorKind::unsupported_mode, "recovery requires a negligible transient");
    UsAlgConfig cfg;
    cfg.lambda = h.lambda_h();
    cfg.beta = std::max(beta, cfg.lambda);
    cfg.order = order;
    cfg.band = band;
    cfg.sample_period = capture.sample_period;
    cfg.wedge = wedge;
    cfg.periodic = periodic;
    RecoveryReport rep = unfold_us(capture.samples, cfg);
    score_against_truth(rep, capture, cfg.lambda);
    return rep;
}

}  // namespace modband
