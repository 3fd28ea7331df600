#include "modband/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "modband/error.hpp"
#include "modband/metrics.hpp"

namespace modband {

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

Architecture architecture_from_string(const std::string& s) {
    if (s == "ideal") return Architecture::ideal;
    if (s == "generalized") return Architecture::generalized;
    if (s == "nonideal") return Architecture::nonideal;
    throw Error(ErrorKind::parse, "unknown architecture '" + s + "'");
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, sep)) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        out.push_back(cell);
    }
    return out;
}

double parse_double(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": bad number '" + s + "'");
    }
}

}  // namespace

json to_json(const PeriodicBandpassSignal& s) {
    json coeffs = json::array();
    for (const auto& [n, c] : s.series.coeffs()) coeffs.push_back({n, c.real(), c.imag()});
    return {{"period", s.period()},
            {"band", {s.band.omega_low, s.band.omega_high}},
            {"coeffs", coeffs}};
}

PeriodicBandpassSignal signal_from_json(const json& j) {
    try {
        PeriodicBandpassSignal s;
        s.series = FourierSeries(j.at("period").get<double>());
        s.band = BandSpec::make(j.at("band").at(0).get<double>(), j.at("band").at(1).get<double>());
        for (const auto& c : j.at("coeffs"))
            s.series.set(c.at(0).get<int>(), cplx(c.at(1).get<double>(), c.at(2).get<double>()));
        if (!s.series.conjugate_symmetric(1e-12))
            throw Error(ErrorKind::conjugate_symmetry, "coefficients are not conjugate symmetric");
        return s;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, std::string("signal json: ") + e.what());
    }
}

json to_json(const SamplingPlan& p) {
    json j{{"t_min", number_or_null(p.t_min)},
           {"t_max", number_or_null(p.t_max)},
           {"feasible", p.feasible && !p.empty()},
           {"reason", p.reason},
           {"omega_base", number_or_null(p.baseband_bandwidth)},
           {"wedge", p.wedge},
           {"parity", to_string(p.parity)},
           {"regime", to_string(p.regime)}};
    if (p.omega_s) j["omega_s"] = *p.omega_s;
    if (p.sample_count) j["sample_count"] = *p.sample_count;
    return j;
}

json to_json(const DiscreteBandIndices& d) {
    return {{"K", d.K},
            {"q_low", d.q_low},
            {"q_high", d.q_high},
            {"q_high_base", d.q_high_base},
            {"q_low_base", d.q_low_base},
            {"feasible", d.feasible},
            {"reason", d.reason}};
}

json to_json(const RecoveryReport& r) {
    return {{"success", r.success},
            {"order_used", r.order_used},
            {"mse", r.mse ? number_or_null(*r.mse) : json(nullptr)},
            {"offset_multiple", r.offset_multiple},
            {"orders_tried", r.orders_tried},
            {"spikes", r.spikes},
            {"diagnostics", r.diagnostics},
            {"recovered", r.recovered}};
}

json to_json(const RunResult& r) {
    return {{"index", r.index},
            {"lambda", r.lambda},
            {"rho_peak_over_lambda", r.rho},
            {"amplitude_scale", r.amplitude_scale},
            {"folds", r.folds},
            {"cyclic_folds", r.cyclic_folds},
            {"success", r.success},
            {"round_trip", r.round_trip},
            {"mse", number_or_null(r.mse)},
            {"offset_multiple", r.offset_multiple},
            {"order_used", r.order_used},
            {"spikes", r.spikes},
            {"demod_error", r.demod_error ? number_or_null(*r.demod_error) : json(nullptr)},
            {"diagnostics", r.diagnostics}};
}

json to_json(const SweepReport& r) {
    json runs = json::array();
    for (const auto& run : r.runs) runs.push_back(to_json(run));
    return {{"name", r.name},
            {"plan", to_json(r.plan)},
            {"warnings", r.warnings},
            {"replications", r.runs.size()},
            {"max_mse", number_or_null(r.max_mse)},
            {"mean_mse", number_or_null(r.mean_mse)},
            {"failure_rate", r.failure_rate},
            {"max_folds", r.max_folds},
            {"max_demod_error", r.max_demod_error ? number_or_null(*r.max_demod_error) : json(nullptr)},
            {"runs", runs}};
}

json to_json(const ExperimentConfig& c) {
    json sig{{"kind", to_string(c.signal)},
             {"band", {c.band.omega_low, c.band.omega_high}},
             {"period", c.period},
             {"amplitude", c.amplitude},
             {"max_folds", optional_json(c.max_folds)}};
    if (c.signal == SignalKind::am) {
        sig["am"] = {{"amp", c.am.amp},
                     {"omega_msg", c.am.omega_msg},
                     {"phase_msg", c.am.phase_msg},
                     {"omega_carrier", c.am.omega_carrier},
                     {"phase_carrier", c.am.phase_carrier}};
        sig["snap_am"] = c.snap_am;
    }
    if (c.signal == SignalKind::capture_file) sig["capture"] = c.capture_path;
    json arch{{"kind", to_string(c.architecture)}, {"lambda", c.lambda}};
    if (c.lambda_range) arch["lambda_range"] = {c.lambda_range->first, c.lambda_range->second};
    if (c.architecture == Architecture::generalized) {
        arch["hysteresis"] = c.hysteresis;
        arch["transient"] = c.transient;
    }
    if (c.architecture == Architecture::nonideal) arch["jitter"] = c.jitter;
    json rec{{"method", to_string(c.method)},
             {"order", optional_json(c.order)},
             {"beta", optional_json(c.beta)},
             {"set", to_string(c.set)},
             {"snap_2lambda", c.snap_2lambda},
             {"folds", optional_json(c.folds)}};
    return {{"name", c.name},
            {"signal", sig},
            {"architecture", arch},
            {"sample_period", c.sample_period},
            {"wedge", c.wedge},
            {"recovery", rec},
            {"demod", to_string(c.demod)},
            {"empirical", c.empirical},
            {"seed", c.seed},
            {"replications", c.replications}};
}

ExperimentConfig config_from_json(const json& j) {
    try {
        ExperimentConfig c;
        c.name = j.value("name", c.name);
        const json& sig = j.at("signal");
        std::string kind = sig.value("kind", "random_bandpass");
        if (kind == "random_bandpass") c.signal = SignalKind::random_bandpass;
        else if (kind == "am") c.signal = SignalKind::am;
        else if (kind == "capture_file") c.signal = SignalKind::capture_file;
        else throw Error(ErrorKind::parse, "unknown signal kind '" + kind + "'");
        c.period = sig.value("period", c.period);
        c.amplitude = sig.value("amplitude", c.amplitude);
        if (sig.contains("max_folds") && !sig["max_folds"].is_null())
            c.max_folds = sig["max_folds"].get<int>();
        if (c.signal == SignalKind::am) {
            const json& a = sig.at("am");
            c.am = {a.at("amp").get<double>(), a.at("omega_msg").get<double>(),
                    a.value("phase_msg", 0.0), a.at("omega_carrier").get<double>(),
                    a.value("phase_carrier", 0.0)};
            c.snap_am = sig.value("snap_am", true);
        }
        if (sig.contains("band"))
            c.band = BandSpec::make(sig["band"].at(0).get<double>(), sig["band"].at(1).get<double>());
        else if (c.signal == SignalKind::am)
            c.band = (c.snap_am ? snap_to_grid(c.am, c.period) : c.am).band();
        else if (c.signal != SignalKind::capture_file)
            throw Error(ErrorKind::parse, "signal.band is required");
        if (c.signal == SignalKind::capture_file) c.capture_path = sig.at("capture").get<std::string>();

        const json& arch = j.at("architecture");
        c.architecture = architecture_from_string(arch.value("kind", "ideal"));
        c.lambda = arch.value("lambda", c.lambda);
        if (arch.contains("lambda_range"))
            c.lambda_range = std::make_pair(arch["lambda_range"].at(0).get<double>(),
                                            arch["lambda_range"].at(1).get<double>());
        c.hysteresis = arch.value("hysteresis", 0.0);
        c.transient = arch.value("transient", 0.0);
        c.jitter = arch.value("jitter", c.jitter);

        c.sample_period = j.at("sample_period").get<double>();
        c.wedge = j.value("wedge", 1);
        if (j.contains("recovery")) {
            const json& r = j["recovery"];
            c.method = r.value("method", "time") == "fourier" ? Method::fourier : Method::time;
            if (r.contains("order") && !r["order"].is_null()) c.order = r["order"].get<int>();
            if (r.contains("beta") && !r["beta"].is_null()) c.beta = r["beta"].get<double>();
            c.set = bin_set_from_string(r.value("set", "auto"));
            c.snap_2lambda = r.value("snap_2lambda", false);
            if (r.contains("folds") && !r["folds"].is_null()) c.folds = r["folds"].get<int>();
        }
        std::string demod = j.value("demod", "band_select");
        if (demod == "none") c.demod = Demod::none;
        else if (demod == "band_select") c.demod = Demod::band_select;
        else if (demod == "am") c.demod = Demod::am;
        else throw Error(ErrorKind::parse, "unknown demod '" + demod + "'");
        c.empirical = j.value("empirical", false);
        c.seed = j.value("seed", std::uint64_t{1});
        c.replications = j.value("replications", 1);
        if (c.method == Method::fourier && c.signal != SignalKind::capture_file) c.sample_count();
        return c;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, std::string("config json: ") + e.what());
    }
}

json params_to_json(const FoldParams& p) {
    if (auto* i = std::get_if<IdealModuloParams>(&p))
        return {{"architecture", "ideal"}, {"lambda", i->lambda}};
    if (auto* h = std::get_if<HysteresisParams>(&p))
        return {{"architecture", "generalized"},
                {"lambda", h->lambda},
                {"hysteresis", h->hysteresis},
                {"transient", h->transient}};
    const auto& n = std::get<NonIdealParams>(p);
    return {{"architecture", "nonideal"},
            {"lambda", n.lambda},
            {"breakpoints", n.residue.breakpoints},
            {"levels", n.residue.levels}};
}

FoldParams params_from_json(const json& j) {
    try {
        Architecture a = architecture_from_string(j.value("architecture", "ideal"));
        double lambda = j.at("lambda").get<double>();
        if (a == Architecture::ideal) return IdealModuloParams{lambda};
        if (a == Architecture::generalized)
            return HysteresisParams{lambda, j.value("hysteresis", 0.0), j.value("transient", 0.0)};
        NonIdealParams n{lambda, {}};
        n.residue.breakpoints = j.value("breakpoints", std::vector<std::size_t>{});
        n.residue.levels = j.value("levels", std::vector<double>{});
        return n;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, std::string("capture params: ") + e.what());
    }
}

void write_capture_csv(std::ostream& os, const FoldedCapture& c) {
    const bool truth = c.ground_truth.has_value();
    os << (truth ? "k,t,y,gamma\n" : "k,t,y\n");
    os << std::setprecision(17);
    for (std::size_t k = 0; k < c.samples.size(); ++k) {
        os << k << ',' << static_cast<double>(k) * c.sample_period << ',' << c.samples[k];
        if (truth) os << ',' << (*c.ground_truth)[k];
        os << '\n';
    }
}

void write_capture(const std::string& path, const FoldedCapture& capture) {
    std::ostringstream os;
    write_capture_csv(os, capture);
    write_text_file(path, os.str());
    write_text_file(path + ".json", params_to_json(capture.params).dump(2) + "\n");
}

FoldedCapture parse_capture_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::parse, "empty capture file");
    auto header = split(line, ',');
    bool has_truth = header.size() == 4 && header[3] == "gamma";
    if (header.size() < 3 || header[0] != "k" || header[1] != "t" || header[2] != "y" ||
        (header.size() == 4 && !has_truth) || header.size() > 4)
        throw Error(ErrorKind::parse, "header must be k,t,y[,gamma]");

    std::vector<double> t, y, g;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected " +
                                              std::to_string(header.size()) + " columns");
        double k = parse_double(cells[0], lineno);
        if (k != static_cast<double>(t.size()))
            throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": k must count up from 0");
        t.push_back(parse_double(cells[1], lineno));
        y.push_back(parse_double(cells[2], lineno));
        if (has_truth) g.push_back(parse_double(cells[3], lineno));
    }
    if (t.size() < 2) throw Error(ErrorKind::parse, "capture needs at least two rows");
    const double T = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(T > 0.0)) throw Error(ErrorKind::parse, "time column must increase");
    for (std::size_t k = 1; k < t.size(); ++k)
        if (std::abs((t[k] - t[k - 1]) - T) > 1e-6 * T)
            throw Error(ErrorKind::parse, "non-uniform sample spacing at row " + std::to_string(k));

    FoldedCapture c;
    c.samples = std::move(y);
    c.sample_period = T;
    // without a side-car the smallest consistent threshold is used
    c.params = IdealModuloParams{std::max(max_abs(c.samples), 1e-300)};
    if (has_truth) c.ground_truth = std::move(g);
    return c;
}

FoldedCapture ingest_capture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
    FoldedCapture c = parse_capture_csv(in);
    std::ifstream side(path + ".json");
    if (side) {
        json j;
        try {
            side >> j;
        } catch (const json::exception& e) {
            throw Error(ErrorKind::parse, path + ".json: " + e.what());
        }
        c.params = params_from_json(j);
    }
    return c;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::parse, "cannot write " + path);
    out << text;
}

}  // namespace modband
