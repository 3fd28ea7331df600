#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "modband/demodulation.hpp"
#include "modband/error.hpp"
#include "modband/folding.hpp"
#include "modband/harness.hpp"
#include "modband/io.hpp"
#include "modband/metrics.hpp"
#include "modband/recovery_fourier.hpp"
#include "modband/recovery_time.hpp"
#include "modband/sampling_planner.hpp"

using namespace modband;

namespace {

constexpr int exit_infeasible = 2;
constexpr int exit_recovery = 3;

BandSpec parse_band(const std::vector<double>& v) {
    if (v.size() != 2) throw Error(ErrorKind::parse, "--band expects OMEGA_L,OMEGA_U");
    return BandSpec::make(v[0], v[1]);
}

// Widens a band to the enclosing harmonics of 2pi/period.
BandSpec snap_band(const BandSpec& b, double period) {
    if (on_grid(b.omega_low, period) && on_grid(b.omega_high, period)) return b;
    const double step = 2.0 * std::numbers::pi / period;
    BandSpec out = BandSpec::make(snap_floor(b.omega_low / step) * step,
                                  snap_ceil(b.omega_high / step) * step);
    std::cerr << "note: band widened to harmonics [" << std::lround(out.omega_low / step) << ", "
              << std::lround(out.omega_high / step) << "] of 2pi/" << period << '\n';
    return out;
}

void emit(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << '\n';
    else
        write_text_file(out, j.dump(2) + "\n");
}

void write_plot_csv(const std::string& path, const ExperimentConfig& cfg, const RunArtifacts& a) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::parse, "cannot write " + path);
    os << "t,g,z,y,g_tilde\n" << std::setprecision(17);
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
        double t = static_cast<double>(k) * cfg.sample_period;
        os << t << ',' << (k < a.truth.size() ? a.truth[k] : NAN) << ',' << a.samples[k] << ','
           << a.samples[k] << ',' << (k < a.recovered.size() ? a.recovered[k] : NAN) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modband: modulo sampling and recovery of bandpass signals"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out;
    app.add_option("-o,--out", out, "write JSON output to a file");

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize a periodic bandpass or AM signal");
    std::string synth_kind = "random";
    std::vector<double> band_v;
    double tau = 2.0;
    std::uint64_t seed = 1;
    std::vector<double> am_v;
    bool snap = false;
    synth->add_option("--kind", synth_kind, "random | am")->check(CLI::IsMember({"random", "am"}));
    synth->add_option("--band", band_v, "OMEGA_L,OMEGA_U in rad/s")->delimiter(',');
    synth->add_option("--tau", tau, "period in seconds");
    synth->add_option("--seed", seed);
    synth->add_option("--am", am_v, "A,OMEGA_M,THETA_M,OMEGA_C,THETA_C")->delimiter(',');
    synth->add_flag("--snap", snap, "move AM frequencies onto the 2pi/tau grid");

    // fold
    auto* fold = app.add_subcommand("fold", "fold and sample a signal into a capture CSV");
    std::string signal_path, capture_out;
    double lambda = 1.0, hyst = 0.0, trans = 0.0, jitter = -1.0, Ts = 0.0;
    int K = 0;
    fold->add_option("--signal", signal_path, "signal JSON from synth")->required();
    fold->add_option("--lambda", lambda)->required();
    fold->add_option("--ts", Ts, "sample period")->required();
    fold->add_option("--count", K, "number of samples (default: one period)");
    fold->add_option("--hysteresis", hyst);
    fold->add_option("--transient", trans);
    fold->add_option("--jitter", jitter, "non-ideal level jitter, e.g. 0.1");
    fold->add_option("--seed", seed);
    fold->add_option("--capture", capture_out, "output CSV path")->required();

    // plan
    auto* plan = app.add_subcommand("plan", "sampling-rate planner");
    std::string regime = "unlimited-time";
    int wedge = 1, folds = 0;
    double omega = 0.0, beta = 0.0;
    std::optional<double> plan_ts;
    plan->add_option("--band", band_v)->delimiter(',');
    plan->add_option("--tau", tau);
    plan->add_option("--wedge", wedge);
    plan->add_option("--folds", folds);
    plan->add_option("--omega", omega, "bandwidth for us-classic / fp-classic");
    plan->add_option("--lambda", lambda);
    plan->add_option("--beta", beta);
    plan->add_option("--ts", plan_ts);
    plan->add_option("--regime", regime,
                     "nyquist-lemma | unlimited-time | fourier-outer | fourier-inner | am-time | "
                     "am-fourier | us-classic | fp-classic | relocation | indices | pmax | empirical");

    // recover
    auto* recover = app.add_subcommand("recover", "recover samples from a capture CSV");
    std::string capture_path, method = "time", set = "auto";
    std::optional<int> order, rec_folds;
    std::optional<int> rec_wedge;
    std::optional<double> rec_lambda, rec_beta;
    bool snap2 = false;
    recover->add_option("--capture", capture_path)->required();
    recover->add_option("--method", method)->check(CLI::IsMember({"time", "fourier"}));
    recover->add_option("--band", band_v)->delimiter(',')->required();
    recover->add_option("--wedge", rec_wedge, "default: the wedge containing the band at the capture rate");
    recover->add_option("--lambda", rec_lambda, "override the fold threshold");
    recover->add_option("--beta", rec_beta);
    recover->add_option("--order", order);
    recover->add_option("--set", set)->check(CLI::IsMember({"outer", "inner", "auto"}));
    recover->add_option("--folds", rec_folds);
    recover->add_flag("--snap-2lambda", snap2);

    // eval
    auto* eval = app.add_subcommand("eval", "MSE of a recovery report against a capture's ground truth");
    std::string report_path;
    eval->add_option("--capture", capture_path)->required();
    eval->add_option("--report", report_path, "JSON from recover")->required();
    eval->add_option("--lambda", rec_lambda);

    // mc
    auto* mc = app.add_subcommand("mc", "run a Monte-Carlo experiment from a JSON config");
    std::string config_path, plot_path;
    int threads = 0;
    std::optional<int> reps;
    mc->add_option("--config", config_path)->required();
    mc->add_option("--threads", threads);
    mc->add_option("--replications", reps);
    mc->add_option("--plot", plot_path, "CSV of run 0 (t,g,z,y,g_tilde)");

    // preset
    auto* pre = app.add_subcommand("preset", "run a shipped experiment preset");
    std::string preset_name;
    bool emit_config = false;
    pre->add_option("name", preset_name)->required()->check(CLI::IsMember(preset_names()));
    pre->add_option("--threads", threads);
    pre->add_option("--replications", reps);
    pre->add_option("--plot", plot_path, "CSV of run 0 (t,g,z,y,g_tilde)");
    pre->add_flag("--emit-config", emit_config, "print the preset config instead of running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*synth) {
            if (synth_kind == "random") {
                emit(to_json(synth_random_bandpass(snap_band(parse_band(band_v), tau), tau, seed)), out);
            } else {
                if (am_v.size() != 5) throw Error(ErrorKind::parse, "--am expects five values");
                AmParams p{am_v[0], am_v[1], am_v[2], am_v[3], am_v[4]};
                if (snap) p = snap_to_grid(p, tau);
                emit(to_json(synth_am(p, tau)), out);
            }
            return 0;
        }
        if (*fold) {
            PeriodicBandpassSignal s = signal_from_json(read_json_file(signal_path));
            std::size_t count = K > 0 ? static_cast<std::size_t>(K)
                                      : static_cast<std::size_t>(std::lround(s.period() / Ts));
            auto g = [&s](double t) { return s(t); };
            FoldedCapture c;
            if (hyst > 0.0 || trans > 0.0) {
                HysteresisParams h{lambda, hyst, trans};
                c = capture_generalized(g, h, Ts, count, default_event_grid(s.band.omega_high));
            } else if (jitter >= 0.0) {
                std::vector<double> gamma = s.series(sample_times(Ts, count));
                c = fold_nonideal(gamma, jittered_residue(gamma, lambda, jitter, seed), lambda);
                c.sample_period = Ts;
            } else {
                c = capture_ideal(g, lambda, Ts, count);
            }
            write_capture(capture_out, c);
            auto rc = residue_and_fold_count(c);
            emit(json{{"samples", c.size()}, {"folds", rc.folds}, {"capture", capture_out}}, out);
            return 0;
        }
        if (*plan) {
            json j;
            bool feasible = true;
            if (regime == "us-classic") {
                UsClassic u = us_classic(omega, lambda, beta > 0 ? beta : lambda, plan_ts);
                j = {{"t_us", u.t_us}, {"n_star", u.n_star}, {"order_valid", u.order_valid}};
                feasible = u.order_valid;
            } else if (regime == "fp-classic") {
                j = to_json(fp_classic(tau, omega, folds));
            } else if (regime == "pmax") {
                WedgeBounds b = p_max(parse_band(band_v));
                j = {{"odd", b.odd}, {"even", b.even}, {"overall", b.overall}};
            } else if (regime == "relocation") {
                Relocation r = baseband_relocation(parse_band(band_v), wedge);
                j = {{"relocated", r.relocated}, {"omega_s", r.omega_s},
                     {"t_s", 2.0 * std::numbers::pi / r.omega_s}, {"omega_base", r.omega_base},
                     {"note", r.note}};
            } else if (regime == "indices") {
                if (!plan_ts) throw Error(ErrorKind::parse, "--ts is required for indices");
                int k = static_cast<int>(std::lround(tau / *plan_ts));
                DiscreteBandIndices d = discrete_indices(tau, k, snap_band(parse_band(band_v), tau), wedge);
                j = to_json(d);
                feasible = d.feasible;
            } else if (regime == "empirical") {
                ExperimentConfig c;
                c.name = "empirical";
                c.band = parse_band(band_v);
                c.period = tau;
                c.wedge = wedge;
                c.lambda = lambda;
                c.sample_period = tau;
                EmpiricalPlan e = empirical_plan(c);
                j = to_json(e.plan);
                json probes = json::array();
                for (auto [k, ok] : e.probes) probes.push_back({{"K", k}, {"recovered", ok}});
                j["probes"] = probes;
                feasible = e.plan.feasible;
            } else {
                BandSpec band = parse_band(band_v);
                SamplingPlan p;
                Regime r = regime_from_string(regime);
                if (r == Regime::nyquist_lemma) p = lemma1_range(band, wedge);
                else if (r == Regime::unlimited_time) p = theorem1_range(band, wedge);
                else if (r == Regime::am_time) p = am_time_rate(band, wedge);
                else if (r == Regime::am_fourier) p = am_fourier_rate(tau, band, folds, wedge);
                else {
                    int ql = snap_floor(tau * band.omega_low / (2.0 * std::numbers::pi));
                    int qu = snap_ceil(tau * band.omega_high / (2.0 * std::numbers::pi));
                    FourierPlans fp = theorem3_ranges(tau, ql, qu, folds, wedge);
                    p = r == Regime::fourier_outer ? fp.outer : fp.inner;
                }
                j = to_json(p);
                feasible = p.feasible && !p.empty();
            }
            emit(j, out);
            return feasible ? 0 : exit_infeasible;
        }
        if (*recover) {
            FoldedCapture c = ingest_capture(capture_path);
            if (rec_lambda) c.params = IdealModuloParams{*rec_lambda};
            double period = c.sample_period * static_cast<double>(c.size());
            BandSpec band = snap_band(parse_band(band_v), period);
            double thr = c.fold_threshold();
            if (rec_wedge) {
                wedge = *rec_wedge;
            } else {
                wedge = wedge_of(band, c.sample_period);
                if (wedge == 0)
                    throw Error(ErrorKind::precondition, "band does not fit a single wedge at this rate; pass --wedge");
            }
            RecoveryReport rep;
            if (method == "time") {
                double b = rec_beta.value_or(
                    2.0 * thr * std::ceil(max_abs(c.ground_truth ? *c.ground_truth : c.samples) * 1.001 / (2.0 * thr)));
                if (auto* h = std::get_if<HysteresisParams>(&c.params)) {
                    rep = recover_generalized(c, *h, b, band, wedge, order, true);
                } else {
                    UsAlgConfig cfg;
                    cfg.lambda = thr;
                    cfg.beta = std::max(b, thr);
                    cfg.order = order;
                    cfg.band = band;
                    cfg.sample_period = c.sample_period;
                    cfg.periodic = true;
                    rep = recover_bandpass_time(c, cfg, wedge).report;
                }
            } else {
                int m = rec_folds ? *rec_folds : -1;
                if (m < 0) {
                    if (!c.ground_truth)
                        throw Error(ErrorKind::unavailable, "--folds is required without ground truth");
                    std::vector<double> r(c.size());
                    for (std::size_t k = 0; k < r.size(); ++k) r[k] = (*c.ground_truth)[k] - c.samples[k];
                    m = cyclic_fold_count(r, thr);
                }
                rep = recover_bandpass_fourier(c, period, band, m, wedge,
                                               FourierOptions{bin_set_from_string(set), snap2})
                          .report;
            }
            emit(to_json(rep), out);
            return rep.success ? 0 : exit_recovery;
        }
        if (*eval) {
            FoldedCapture c = ingest_capture(capture_path);
            if (!c.ground_truth) throw Error(ErrorKind::unavailable, "capture has no gamma column");
            json rep = read_json_file(report_path);
            std::vector<double> rec = rep.at("recovered").get<std::vector<double>>();
            double thr = rec_lambda.value_or(c.fold_threshold());
            std::vector<double> fixed = c.architecture() == Architecture::nonideal
                                            ? fix_offset_free(rec, *c.ground_truth)
                                            : fix_offset(rec, *c.ground_truth, thr);
            emit(json{{"mse", mse(fixed, *c.ground_truth)},
                      {"offset_multiple", offset_multiple(rec, *c.ground_truth, thr)}},
                 out);
            return 0;
        }
        if (*mc || *pre) {
            ExperimentConfig cfg = *mc ? config_from_json(read_json_file(config_path)) : preset(preset_name);
            if (reps) cfg.replications = *reps;
            if (emit_config) {
                emit(to_json(cfg), out);
                return 0;
            }
            SweepReport r;
            try {
                r = run_experiment(cfg, threads);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::infeasible) throw;
                emit(json{{"error", e.what()}, {"plan", to_json(governing_plan(cfg))}}, out);
                return exit_infeasible;
            }
            if (!plot_path.empty() && cfg.replications > 0) write_plot_csv(plot_path, cfg, run_single(cfg, 0));
            emit(to_json(r), out);
            return r.failure_rate == 0.0 ? 0 : exit_recovery;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return 1;
    }
    return 0;
}
