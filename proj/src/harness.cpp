#include "modband/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "modband/demodulation.hpp"
#include "modband/error.hpp"
#include "modband/io.hpp"
#include "modband/metrics.hpp"
#include "modband/recovery_time.hpp"
#include "modband/rng.hpp"
#include "modband/spectral.hpp"

namespace modband {

namespace {

constexpr double pi = std::numbers::pi;

bool plan_contains(const SamplingPlan& plan, double t) {
    if (plan.omega_s) {
        double w = 2.0 * pi / t;
        return std::abs(w - *plan.omega_s) <= 1e-2 * *plan.omega_s;
    }
    return t >= plan.t_min * (1.0 - 1e-12) && t <= plan.t_max * (1.0 + 1e-12);
}

struct Prepared {
    FourierSeries g;
    std::optional<AmParams> am;
};

Prepared prepare_signal(const ExperimentConfig& cfg, std::uint64_t seed) {
    Prepared p;
    if (cfg.signal == SignalKind::random_bandpass) {
        p.g = synth_random_bandpass(cfg.band, cfg.period, seed).series.scaled(cfg.amplitude);
    } else {
        AmParams a = cfg.snap_am ? snap_to_grid(cfg.am, cfg.period) : cfg.am;
        a.amp *= cfg.amplitude;
        p.g = synth_am(a, cfg.period).series;
        p.am = a;
    }
    return p;
}

double coefficient_error(const FourierSeries& rec, const FourierSeries& truth, int K) {
    double err = 0.0;
    for (const auto& [n, c] : truth.coeffs()) {
        if (n < 0) continue;
        cplx r = rec.coeff(n);
        // imaginary part is unobservable when ±n share a bin
        bool self_conj = (2L * n) % K == 0;
        double d = self_conj ? std::abs(r.real() - c.real()) : std::abs(r - c);
        err = std::max(err, d);
    }
    for (const auto& [n, c] : rec.coeffs())
        if (truth.coeffs().count(n) == 0) err = std::max(err, std::abs(c));
    return err;
}

}  // namespace

const char* to_string(SignalKind k) {
    switch (k) {
    case SignalKind::random_bandpass: return "random_bandpass";
    case SignalKind::am: return "am";
    case SignalKind::capture_file: return "capture_file";
    }
    return "unknown";
}

const char* to_string(Method m) { return m == Method::time ? "time" : "fourier"; }

const char* to_string(Demod d) {
    switch (d) {
    case Demod::none: return "none";
    case Demod::band_select: return "band_select";
    case Demod::am: return "am";
    }
    return "unknown";
}

int ExperimentConfig::sample_count() const {
    if (!(sample_period > 0.0) || !(period > 0.0))
        throw Error(ErrorKind::precondition, "period and sample period must be positive");
    double k = period / sample_period;
    double r = std::round(k);
    if (r < 1.0 || std::abs(k - r) > 1e-6 * r) {
        std::ostringstream os;
        os << "period/T_S = " << k << " is not an integer";
        throw Error(ErrorKind::grid_mismatch, os.str());
    }
    return static_cast<int>(r);
}

SamplingPlan governing_plan(const ExperimentConfig& cfg) {
    const bool am = cfg.signal == SignalKind::am && cfg.wedge % 2 == 0;
    int folds = cfg.folds.value_or(cfg.max_folds.value_or(0));
    if (cfg.method == Method::time) {
        if (am) return am_time_rate(cfg.band, cfg.wedge / 2);
        return theorem1_range(cfg.band, cfg.wedge);
    }
    if (am) return am_fourier_rate(cfg.period, cfg.band, folds, cfg.wedge / 2);
    int ql = harmonic_index(cfg.band.omega_low, cfg.period);
    int qu = harmonic_index(cfg.band.omega_high, cfg.period);
    FourierPlans plans = theorem3_ranges(cfg.period, ql, qu, folds, cfg.wedge);
    switch (cfg.set) {
    case BinSet::outer: return plans.outer;
    case BinSet::inner: return plans.inner;
    case BinSet::automatic: break;
    }
    if (plans.outer.feasible && plan_contains(plans.outer, cfg.sample_period)) return plans.outer;
    if (plans.inner.feasible && plan_contains(plans.inner, cfg.sample_period)) return plans.inner;
    return plans.outer;
}

RunArtifacts run_single(const ExperimentConfig& cfg, int index) {
    RunArtifacts art;
    RunResult& res = art.result;
    res.index = index;

    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(index));
    const double lambda =
        cfg.lambda_range ? rng.uniform(cfg.lambda_range->first, cfg.lambda_range->second)
                         : cfg.lambda;
    const std::uint64_t signal_seed = rng.next();
    const std::uint64_t jitter_seed = rng.next();
    res.lambda = lambda;

    FoldedCapture capture;
    std::optional<Prepared> sig;
    double period = cfg.period;
    if (cfg.signal == SignalKind::capture_file) {
        capture = ingest_capture(cfg.capture_path);
        period = capture.sample_period * static_cast<double>(capture.size());
    } else {
        sig = prepare_signal(cfg, signal_seed);
        const int K = cfg.sample_count();
        const double T = cfg.sample_period;
        const double thr = cfg.architecture == Architecture::generalized
                               ? lambda - 0.5 * cfg.hysteresis
                               : lambda;
        std::vector<double> times = sample_times(T, static_cast<std::size_t>(K));
        std::vector<double> gamma = sig->g(times);
        if (cfg.max_folds) {
            for (int it = 0; it < 400; ++it) {
                std::vector<double> r(gamma.size());
                for (std::size_t k = 0; k < r.size(); ++k) r[k] = gamma[k] - fold_ideal(gamma[k], thr);
                if (cyclic_fold_count(r, thr) <= *cfg.max_folds) break;
                res.amplitude_scale *= 0.9;
                for (double& v : gamma) v *= 0.9;
            }
            sig->g = sig->g.scaled(res.amplitude_scale);
            if (sig->am) sig->am->amp *= res.amplitude_scale;
        }
        const FourierSeries& g = sig->g;
        auto fn = [&g](double t) { return g(t); };
        switch (cfg.architecture) {
        case Architecture::ideal:
            capture = capture_ideal(fn, lambda, T, static_cast<std::size_t>(K));
            break;
        case Architecture::generalized: {
            HysteresisParams h{lambda, cfg.hysteresis, cfg.transient};
            double w = 2.0 * pi * g.max_harmonic() / period;
            capture = capture_generalized(fn, h, T, static_cast<std::size_t>(K), default_event_grid(w));
            break;
        }
        case Architecture::nonideal: {
            NonIdealResidue residue = jittered_residue(gamma, lambda, cfg.jitter, jitter_seed);
            capture = fold_nonideal(gamma, residue, lambda);
            capture.sample_period = T;
            break;
        }
        }
    }

    const double thr = capture.fold_threshold();
    art.samples = capture.samples;
    if (capture.ground_truth) {
        art.truth = *capture.ground_truth;
        std::vector<double> r(art.truth.size());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = art.truth[k] - capture.samples[k];
        res.folds = fold_count(r, thr);
        res.cyclic_folds = cyclic_fold_count(r, thr);
    }
    double peak = sig ? sup_norm(sig->g) : max_abs(art.truth.empty() ? capture.samples : art.truth);
    res.rho = peak / lambda;
    const double beta = cfg.beta.value_or(2.0 * thr * std::ceil(peak * (1.0 + 1e-3) / (2.0 * thr)));

    BandpassRecovery rec;
    if (cfg.method == Method::time) {
        if (auto* h = std::get_if<HysteresisParams>(&capture.params)) {
            rec.report = recover_generalized(capture, *h, beta, cfg.band, cfg.wedge, cfg.order, true);
        } else {
            UsAlgConfig uc;
            uc.lambda = thr;
            uc.beta = std::max(beta, thr);
            uc.order = cfg.order;
            uc.band = cfg.band;
            uc.sample_period = capture.sample_period;
            uc.wedge = cfg.wedge;
            uc.periodic = true;
            rec = recover_bandpass_time(capture, uc, cfg.wedge);
        }
    } else {
        int folds = cfg.folds.value_or(res.cyclic_folds);
        if (!cfg.folds && !capture.ground_truth)
            throw Error(ErrorKind::unavailable, "fold count needed without ground truth");
        rec = recover_bandpass_fourier(capture, period, cfg.band, folds, cfg.wedge,
                                       FourierOptions{cfg.set, cfg.snap_2lambda});
    }
    const RecoveryReport& rep = rec.report;
    res.order_used = rep.order_used;
    res.spikes = rep.spikes;
    res.offset_multiple = rep.offset_multiple;
    res.diagnostics = rep.diagnostics;

    std::vector<double> diff(rep.recovered.size());
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = rep.recovered[k] - capture.samples[k];
    if (capture.architecture() == Architecture::nonideal) {
        res.round_trip = fold_count(diff, thr) <= std::max(res.cyclic_folds, rep.spikes);
    } else {
        res.round_trip = std::all_of(diff.begin(), diff.end(), [thr](double d) {
            double m = d / (2.0 * thr);
            return std::abs(m - std::round(m)) <= 1e-9;
        });
    }
    if (!res.round_trip) res.diagnostics.push_back("round-trip fold invariant violated");
    res.success = rep.success && res.round_trip;

    if (!art.truth.empty()) {
        art.recovered = capture.architecture() == Architecture::nonideal
                            ? fix_offset_free(rep.recovered, art.truth)
                            : fix_offset(rep.recovered, art.truth, thr);
        res.mse = mse(art.recovered, art.truth);
    } else {
        art.recovered = rep.recovered;
    }

    if (sig && !art.truth.empty()) {
        const int K = static_cast<int>(art.truth.size());
        if (cfg.demod == Demod::band_select) {
            SpectralSelector sel{2.0 * pi / capture.sample_period, cfg.wedge};
            FourierSeries selected = band_select(sample_spectrum(art.recovered, period), sel);
            res.demod_error = coefficient_error(selected, sig->g, K);
        } else if (cfg.demod == Demod::am && sig->am) {
            FourierSeries base = periodic_interpolant(art.recovered, period);
            std::vector<double> dense = sample_times(period / (16.0 * K), static_cast<std::size_t>(16 * K));
            auto remod = am_remodulate([&base](double t) { return base(t); }, sig->am->omega_carrier,
                                       sig->am->phase_carrier, dense);
            res.demod_error = mse(remod, sig->g(dense));
        }
    }
    return art;
}

int default_threads() {
    int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("MODBAND_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n >= 1) return std::min(n, hw);
        } catch (...) {
        }
    }
    return hw;
}

SweepReport run_experiment(const ExperimentConfig& cfg, int threads) {
    SweepReport report;
    report.name = cfg.name;
    if (cfg.replications < 0) throw Error(ErrorKind::precondition, "replications must be >= 0");
    if (cfg.signal != SignalKind::capture_file) {
        report.plan = governing_plan(cfg);
        bool inside = report.plan.feasible && plan_contains(report.plan, cfg.sample_period);
        if (!inside) {
            std::ostringstream os;
            os << "T_S = " << cfg.sample_period << " outside " << to_string(report.plan.regime)
               << " plan [" << report.plan.t_min << ", " << report.plan.t_max << "]";
            if (!report.plan.reason.empty()) os << ": " << report.plan.reason;
            if (!cfg.empirical) throw Error(ErrorKind::infeasible, os.str());
            report.warnings.push_back(os.str() + " (empirical mode)");
        }
    }
    const int n = cfg.replications;
    report.runs.resize(static_cast<std::size_t>(n));
    if (n == 0) return report;

    int workers = std::max(1, std::min(threads > 0 ? threads : default_threads(), n));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < n; i = next++) {
            RunResult r;
            try {
                r = run_single(cfg, i).result;
            } catch (const Error& e) {
                r.index = i;
                r.success = false;
                r.mse = std::numeric_limits<double>::infinity();
                r.diagnostics.push_back(std::string(to_string(e.kind())) + ": " + e.what());
            }
            report.runs[static_cast<std::size_t>(i)] = std::move(r);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    int failures = 0;
    double sum = 0.0;
    for (const auto& r : report.runs) {
        if (!r.success) ++failures;
        report.max_mse = std::max(report.max_mse, r.mse);
        sum += r.mse;
        report.max_folds = std::max(report.max_folds, r.folds);
        if (r.demod_error)
            report.max_demod_error = std::max(report.max_demod_error.value_or(0.0), *r.demod_error);
    }
    report.mean_mse = sum / n;
    report.failure_rate = static_cast<double>(failures) / n;
    return report;
}

std::vector<std::string> preset_names() {
    return {"am-demod", "time-single", "time-sweep", "fourier-sweep", "am-nonideal", "am-hysteresis"};
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.name = name;
    if (name == "am-demod") {
        c.signal = SignalKind::am;
        c.period = 0.2;
        c.am = {-2.502, 2.0 * pi * 35.0, 1.147, 2.0 * pi * 400.0, -0.17};
        c.band = snap_to_grid(c.am, c.period).band();
        c.architecture = Architecture::ideal;
        c.lambda = 2.01;
        c.sample_period = 2.5e-3;
        c.wedge = 2;
        c.method = Method::time;
        c.demod = Demod::am;
        c.empirical = true;
    } else if (name == "time-single" || name == "time-sweep") {
        c.band = BandSpec::make(50.0 * pi, 51.0 * pi);
        c.period = 2.0;
        c.sample_period = 0.080;
        c.wedge = 5;
        c.method = Method::time;
        c.empirical = true;
        if (name == "time-single") {
            c.lambda = 0.07;
            c.order = 3;
            c.seed = 6;
        } else {
            c.lambda_range = std::make_pair(0.05, 0.1);
            c.replications = 1000;
        }
    } else if (name == "fourier-sweep") {
        c.band = BandSpec::make(199.0 * pi, 200.0 * pi);
        c.period = 2.0;
        c.sample_period = 0.010;
        c.wedge = 2;
        c.method = Method::fourier;
        c.set = BinSet::outer;
        c.lambda_range = std::make_pair(0.02, 0.1);
        c.max_folds = 40;
        c.replications = 100;
    } else if (name == "am-nonideal") {
        c.signal = SignalKind::am;
        c.period = 0.299;
        c.am = {3.72, 43.98, 2.644, 628.31, -0.93};
        double step = 2.0 * pi / c.period;
        c.band = BandSpec::make(std::floor(584.33 / step) * step, std::ceil(672.30 / step) * step);
        c.architecture = Architecture::nonideal;
        c.jitter = 0.1;
        c.lambda = 2.01;
        c.sample_period = c.period / 30.0;
        c.wedge = 2;
        c.method = Method::fourier;
        c.set = BinSet::outer;
        c.demod = Demod::am;
        c.empirical = true;
    } else if (name == "am-hysteresis") {
        c.signal = SignalKind::am;
        c.period = 0.06;
        c.am = {2.47, 216.0, -1.57, 2500.0, -1.57};
        double step = 2.0 * pi / c.period;
        c.band = BandSpec::make(std::floor(2.29e3 / step) * step, std::ceil(2.73e3 / step) * step);
        c.architecture = Architecture::generalized;
        c.lambda = 1.93;
        c.hysteresis = 0.88;
        c.sample_period = 2.5e-3;
        c.wedge = 2;
        c.method = Method::time;
        c.demod = Demod::am;
        c.empirical = true;
    } else {
        throw Error(ErrorKind::precondition, "unknown preset '" + name + "'");
    }
    return c;
}

EmpiricalPlan empirical_plan(const ExperimentConfig& base, int probes_per_rate) {
    EmpiricalPlan out;
    SamplingPlan lemma = lemma1_range(base.band, base.wedge);
    out.plan = lemma;
    out.plan.regime = base.method == Method::time ? Regime::unlimited_time : Regime::fourier_outer;
    std::vector<int> counts = admissible_sample_counts(lemma, base.period);
    if (counts.size() > 400) counts.resize(400);
    std::optional<int> k_lo, k_hi;
    for (int K : counts) {
        ExperimentConfig c = base;
        c.sample_period = base.period / K;
        c.replications = probes_per_rate;
        c.empirical = true;
        bool ok = false;
        try {
            ok = run_experiment(c, 1).failure_rate == 0.0;
        } catch (const Error&) {
            ok = false;
        }
        out.probes.emplace_back(K, ok);
        if (ok) {
            k_lo = k_lo ? std::min(*k_lo, K) : K;
            k_hi = k_hi ? std::max(*k_hi, K) : K;
        }
    }
    std::ostringstream os;
    if (k_lo) {
        out.plan.t_min = base.period / *k_hi;
        out.plan.t_max = base.period / *k_lo;
        out.plan.feasible = true;
        os << "empirical: recovered at K in [" << *k_lo << ", " << *k_hi << "] of "
           << counts.size() << " admissible counts";
    } else {
        out.plan.feasible = false;
        out.plan.t_max = 0.0;
        os << "empirical: no admissible rate recovered the probes";
    }
    out.plan.reason = os.str();
    if (out.plan.midpoint() > 0.0)
        out.plan.baseband_bandwidth =
            baseband_bandwidth(base.band, base.wedge, 2.0 * pi / out.plan.midpoint());
    return out;
}

}  // namespace modband
