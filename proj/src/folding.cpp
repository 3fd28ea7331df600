#include "modband/folding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modband/error.hpp"
#include "modband/rng.hpp"

namespace modband {

void HysteresisParams::validate() const {
    if (!(lambda > 0.0)) throw Error(ErrorKind::precondition, "lambda must be positive");
    if (!(hysteresis >= 0.0 && hysteresis < 2.0 * lambda))
        throw Error(ErrorKind::precondition, "hysteresis must lie in [0, 2 lambda)");
    if (!(transient >= 0.0)) throw Error(ErrorKind::precondition, "transient must be >= 0");
}

std::vector<double> NonIdealResidue::expand(std::size_t length) const {
    bool explicit_first = levels.size() == breakpoints.size() + 1;
    if (!explicit_first && levels.size() != breakpoints.size())
        throw Error(ErrorKind::partition, "levels must match breakpoints (or exceed by one)");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i] >= length)
            throw Error(ErrorKind::partition, "breakpoint outside the sample range");
        if (i > 0 && breakpoints[i] <= breakpoints[i - 1])
            throw Error(ErrorKind::partition, "breakpoints must be strictly increasing");
    }
    std::vector<double> r(length, explicit_first ? levels.front() : 0.0);
    std::size_t offset = explicit_first ? 1 : 0;
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        std::size_t end = i + 1 < breakpoints.size() ? breakpoints[i + 1] : length;
        std::fill(r.begin() + static_cast<long>(breakpoints[i]), r.begin() + static_cast<long>(end),
                  levels[i + offset]);
    }
    return r;
}

Architecture FoldedCapture::architecture() const {
    return static_cast<Architecture>(params.index());
}

double FoldedCapture::fold_threshold() const {
    if (auto* p = std::get_if<IdealModuloParams>(&params)) return p->lambda;
    if (auto* p = std::get_if<HysteresisParams>(&params)) return p->lambda_h();
    return std::get<NonIdealParams>(params).lambda;
}

const char* to_string(Architecture a) {
    switch (a) {
    case Architecture::ideal: return "ideal";
    case Architecture::generalized: return "generalized";
    case Architecture::nonideal: return "nonideal";
    }
    return "unknown";
}

double fold_ideal(double x, double lambda) {
    double u = x / (2.0 * lambda) + 0.5;
    double r = 2.0 * lambda * ((u - std::floor(u)) - 0.5);
    if (r >= lambda) r -= 2.0 * lambda;
    if (r < -lambda) r = -lambda;
    return r;
}

std::vector<double> fold_ideal(std::span<const double> x, double lambda) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = fold_ideal(x[i], lambda);
    return y;
}

double GeneralizedFold::residual(double t) const {
    double ramp_height = 2.0 * params.lambda_h();
    double acc = 0.0;
    for (const auto& e : events) {
        double dt = t - e.time;
        if (dt < 0.0) break;
        double frac = params.transient > 0.0 ? std::min(dt / params.transient, 1.0) : 1.0;
        acc += e.sign * ramp_height * frac;
    }
    return acc;
}

double GeneralizedFold::trace(const std::function<double(double)>& g, double t) const {
    return g(t) - residual(t);
}

double default_event_grid(double omega_high) {
    return 1.0 / (64.0 * omega_high / (2.0 * std::numbers::pi));
}

namespace {

// first t in (a, b] with g(t) crossing `level`; `rising` orients the sign
double bisect(const std::function<double(double)>& g, double a, double b, double level,
              bool rising, double tol) {
    while (b - a > tol) {
        double m = 0.5 * (a + b);
        double v = g(m);
        bool crossed = rising ? v >= level : v <= level;
        (crossed ? b : a) = m;
    }
    return b;
}

struct Levels {
    double lower;
    double upper;
};

GeneralizedFold simulate(const std::function<double(double)>& g, const HysteresisParams& h,
                         double t_begin, double t_end, double grid_step) {
    h.validate();
    if (!(grid_step > 0.0)) throw Error(ErrorKind::precondition, "grid step must be positive");
    const double lam = h.lambda;
    GeneralizedFold out{h, {}};

    double g0 = g(t_begin);
    double lower = lam * (2.0 * std::floor((g0 + lam) / (2.0 * lam)) - 1.0);
    Levels lv{lower, lower + 2.0 * lam};
    double tol = grid_step * 1e-3;

    long steps = static_cast<long>(std::ceil((t_end - t_begin) / grid_step));
    double t_prev = t_begin;
    for (long i = 1; i <= steps; ++i) {
        double t = std::min(t_begin + static_cast<double>(i) * grid_step, t_end);
        double v = g(t);
        bool up = v >= lv.upper;
        bool down = v <= lv.lower;
        if (!up && !down) {
            t_prev = t;
            continue;
        }
        double level = up ? lv.upper : lv.lower;
        double tau = bisect(g, t_prev, t, level, up, tol);
        int s = up ? 1 : -1;
        out.events.push_back({tau, s});
        if (up)
            lv = {level - h.hysteresis, level - h.hysteresis + 2.0 * lam};
        else
            lv = {level + h.hysteresis - 2.0 * lam, level + h.hysteresis};
        if (v > lv.upper || v < lv.lower) {
            std::ostringstream os;
            os << "two fold events within one grid step near t=" << tau
               << "; refine the grid (step " << grid_step << ")";
            throw Error(ErrorKind::resolution, os.str());
        }
        t_prev = t;
    }
    return out;
}

}  // namespace

GeneralizedFold fold_generalized(const std::function<double(double)>& g,
                                 const HysteresisParams& h, double horizon,
                                 double grid_step) {
    return simulate(g, h, 0.0, horizon, grid_step);
}

FoldedCapture capture_ideal(const std::function<double(double)>& g, double lambda,
                            double sample_period, std::size_t count) {
    if (!(lambda > 0.0)) throw Error(ErrorKind::precondition, "lambda must be positive");
    FoldedCapture c;
    c.sample_period = sample_period;
    c.params = IdealModuloParams{lambda};
    std::vector<double> gamma(count);
    for (std::size_t k = 0; k < count; ++k) gamma[k] = g(static_cast<double>(k) * sample_period);
    c.samples = fold_ideal(gamma, lambda);
    c.ground_truth = std::move(gamma);
    return c;
}

FoldedCapture capture_generalized(const std::function<double(double)>& g,
                                  const HysteresisParams& h, double sample_period,
                                  std::size_t count, double grid_step) {
    h.validate();
    // Start the simulation at the latest grid point at or before 0 where the
    // input is inside the range, so the trace starts in [−λ, λ).
    double t_begin = 0.0;
    for (long i = 0; std::abs(g(t_begin)) >= h.lambda_h(); ++i) {
        if (i > 1000000)
            throw Error(ErrorKind::precondition, "input never enters the modulo range");
        t_begin = -static_cast<double>(i + 1) * grid_step;
    }
    double horizon = static_cast<double>(count) * sample_period;
    GeneralizedFold fold = simulate(g, h, t_begin, horizon, grid_step);

    FoldedCapture c;
    c.sample_period = sample_period;
    c.params = h;
    std::vector<double> gamma(count), y(count);
    for (std::size_t k = 0; k < count; ++k) {
        double t = static_cast<double>(k) * sample_period;
        gamma[k] = g(t);
        y[k] = gamma[k] - fold.residual(t);
    }
    c.samples = std::move(y);
    c.ground_truth = std::move(gamma);
    return c;
}

FoldedCapture fold_nonideal(std::span<const double> gamma, const NonIdealResidue& residue,
                            double nominal_lambda) {
    std::vector<double> r = residue.expand(gamma.size());
    FoldedCapture c;
    c.params = NonIdealParams{nominal_lambda, residue};
    c.samples.resize(gamma.size());
    for (std::size_t k = 0; k < gamma.size(); ++k) c.samples[k] = gamma[k] - r[k];
    c.ground_truth = std::vector<double>(gamma.begin(), gamma.end());
    return c;
}

NonIdealResidue jittered_residue(std::span<const double> gamma, double lambda, double jitter,
                                 std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    NonIdealResidue out;
    if (gamma.empty()) return out;
    double tol = 1e-9 * lambda;
    double prev = gamma[0] - fold_ideal(gamma[0], lambda);
    double level = prev * (1.0 + rng.uniform(-jitter, jitter));
    out.levels.push_back(level);
    for (std::size_t k = 1; k < gamma.size(); ++k) {
        double r = gamma[k] - fold_ideal(gamma[k], lambda);
        if (std::abs(r - prev) > tol) {
            level += (r - prev) * (1.0 + rng.uniform(-jitter, jitter));
            out.breakpoints.push_back(k);
            out.levels.push_back(level);
        }
        prev = r;
    }
    return out;
}

int fold_count(std::span<const double> residue, double lambda) {
    int m = 0;
    for (std::size_t k = 1; k < residue.size(); ++k)
        if (std::abs(residue[k] - residue[k - 1]) > 1e-9 * lambda) ++m;
    return m;
}

int cyclic_fold_count(std::span<const double> residue, double lambda) {
    int m = fold_count(residue, lambda);
    if (residue.size() > 1 && std::abs(residue.front() - residue.back()) > 1e-9 * lambda) ++m;
    return m;
}

ResidueCount residue_and_fold_count(const FoldedCapture& capture) {
    if (!capture.ground_truth)
        throw Error(ErrorKind::unavailable, "capture has no ground truth");
    const auto& gamma = *capture.ground_truth;
    if (gamma.size() != capture.samples.size())
        throw Error(ErrorKind::length_mismatch, "ground truth and samples differ in length");
    ResidueCount out;
    out.residue.resize(gamma.size());
    for (std::size_t k = 0; k < gamma.size(); ++k) out.residue[k] = gamma[k] - capture.samples[k];
    if (capture.architecture() == Architecture::ideal) {
        const double step = 2.0 * capture.fold_threshold();
        for (double& r : out.residue) r = step * std::round(r / step);
    }
    out.folds = fold_count(out.residue, capture.fold_threshold());
    return out;
}

}  // namespace modband
