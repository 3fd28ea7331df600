#include "modband/sampling_planner.hpp"

#include <algorithm>
#include <climits>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modband/error.hpp"

namespace modband {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double e = std::numbers::e;

void require_wedge(int wedge) {
    if (wedge < 1) throw Error(ErrorKind::precondition, "wedge index must be >= 1");
}

void close_plan(SamplingPlan& plan) {
    if (plan.empty()) {
        plan.feasible = false;
        if (plan.reason.empty()) {
            std::ostringstream os;
            os << "empty interval: t_min " << plan.t_min << " > t_max " << plan.t_max;
            plan.reason = os.str();
        }
    }
}

int clamp_to_int(double x) {
    if (!std::isfinite(x) || x > static_cast<double>(INT_MAX)) return INT_MAX;
    return snap_floor(x);
}

}  // namespace

const char* to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

const char* to_string(Regime r) {
    switch (r) {
    case Regime::nyquist_lemma: return "nyquist-lemma";
    case Regime::unlimited_time: return "unlimited-time";
    case Regime::fourier_inner: return "fourier-inner";
    case Regime::fourier_outer: return "fourier-outer";
    case Regime::am_time: return "am-time";
    case Regime::am_fourier: return "am-fourier";
    case Regime::us_classic: return "us-classic";
    case Regime::fp_classic: return "fp-classic";
    }
    return "unknown";
}

Regime regime_from_string(const std::string& name) {
    for (Regime r : {Regime::nyquist_lemma, Regime::unlimited_time, Regime::fourier_inner,
                     Regime::fourier_outer, Regime::am_time, Regime::am_fourier,
                     Regime::us_classic, Regime::fp_classic})
        if (name == to_string(r)) return r;
    throw Error(ErrorKind::parse, "unknown regime '" + name + "'");
}

int snap_ceil(double x) {
    double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<int>(r);
    return static_cast<int>(std::ceil(x));
}

int snap_floor(double x) {
    double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<int>(r);
    return static_cast<int>(std::floor(x));
}

int us_order(double lambda, double beta, double sample_period, double omega, bool* valid) {
    double rate = sample_period * omega * e;
    bool ok = rate > 0.0 && rate < 1.0;
    if (valid) *valid = ok;
    if (!ok) return 0;
    if (beta <= lambda) return 0;
    return std::max(0, snap_ceil((std::log(lambda) - std::log(beta)) / std::log(rate)));
}

UsClassic us_classic(double omega, double lambda, double beta,
                     std::optional<double> sample_period) {
    if (!(omega > 0.0) || !(lambda > 0.0))
        throw Error(ErrorKind::precondition, "omega and lambda must be positive");
    if (beta < lambda) throw Error(ErrorKind::precondition, "beta must be >= lambda");
    UsClassic out;
    out.t_us = 1.0 / (2.0 * omega * e);
    double t = sample_period.value_or(out.t_us);
    out.n_star = us_order(lambda, beta, t, omega, &out.order_valid);
    return out;
}

SamplingPlan fp_classic(double period, double omega, int folds) {
    if (folds < 0) throw Error(ErrorKind::precondition, "folds must be >= 0");
    SamplingPlan plan;
    plan.regime = Regime::fp_classic;
    int K = 2 * (snap_ceil(omega * period / (2.0 * pi)) + folds + 1);
    if (K % 2) ++K;
    plan.sample_count = K;
    plan.t_min = 0.0;
    plan.t_max = period / K;
    plan.baseband_bandwidth = omega;
    return plan;
}

double baseband_bandwidth(const BandSpec& band, int wedge, double omega_s) {
    require_wedge(wedge);
    if (wedge % 2) return band.omega_high - (wedge - 1) * omega_s / 2.0;
    return wedge * omega_s / 2.0 - band.omega_low;
}

SamplingPlan lemma1_range(const BandSpec& band, int wedge) {
    require_wedge(wedge);
    SamplingPlan plan;
    plan.wedge = wedge;
    plan.parity = parity_of(wedge);
    plan.regime = Regime::nyquist_lemma;
    plan.t_min = pi * (wedge - 1) / band.omega_low;
    plan.t_max = pi * wedge / band.omega_high;
    close_plan(plan);
    if (plan.midpoint() > 0.0)
        plan.baseband_bandwidth = baseband_bandwidth(band, wedge, 2.0 * pi / plan.midpoint());
    return plan;
}

SamplingPlan theorem1_range(const BandSpec& band, int wedge) {
    require_wedge(wedge);
    SamplingPlan plan;
    plan.wedge = wedge;
    plan.parity = parity_of(wedge);
    plan.regime = Regime::unlimited_time;
    if (wedge % 2) {
        plan.t_min = pi * (wedge - 1) / band.omega_low;
        plan.t_max = (2.0 * pi * e * (wedge - 1) + 1.0) / (2.0 * e * band.omega_high);
    } else {
        plan.t_min = (2.0 * pi * e * wedge - 1.0) / (2.0 * e * band.omega_low);
        plan.t_max = pi * wedge / band.omega_high;
    }
    close_plan(plan);
    if (plan.midpoint() > 0.0)
        plan.baseband_bandwidth = baseband_bandwidth(band, wedge, 2.0 * pi / plan.midpoint());
    return plan;
}

WedgeBounds p_max(const BandSpec& band) {
    double d = 2.0 * pi * e * band.width();
    WedgeBounds b;
    b.odd = d > 0.0 ? clamp_to_int(band.omega_low / d + 1.0) : INT_MAX;
    b.even = d > 0.0 ? clamp_to_int(band.omega_high / d) : INT_MAX;
    b.overall = b.even;
    return b;
}

Relocation baseband_relocation(const BandSpec& band, int wedge) {
    require_wedge(wedge);
    Relocation r;
    if (wedge == 1) {
        r.relocated = false;
        r.omega_s = 2.0 * band.omega_high;
        r.omega_base = band.omega_high;
        r.note = "no relocation; use lowpass";
        return r;
    }
    r.omega_s = wedge % 2 ? 2.0 * band.omega_low / (wedge - 1) : 2.0 * band.omega_high / wedge;
    r.omega_base = baseband_bandwidth(band, wedge, r.omega_s);
    return r;
}

int wedge_of(const BandSpec& band, double sample_period) {
    double omega_s = 2.0 * pi / sample_period;
    int p = snap_floor(2.0 * band.omega_low / omega_s) + 1;
    if (p < 1) return 0;
    double upper = pi * p / band.omega_high;
    return sample_period <= upper * (1.0 + 1e-12) ? p : 0;
}

SamplingPlan am_time_rate(const BandSpec& band, int p_am) {
    if (p_am < 1) throw Error(ErrorKind::precondition, "P_AM must be >= 1");
    SamplingPlan plan;
    plan.regime = Regime::am_time;
    plan.wedge = 2 * p_am;
    plan.parity = Parity::even;
    double omega_s = (band.omega_high + band.omega_low) / (2.0 * p_am);
    plan.omega_s = omega_s;
    plan.t_min = plan.t_max = 2.0 * pi / omega_s;
    plan.baseband_bandwidth = band.width() / 2.0;
    double ratio = band.width() > 0.0
                       ? (band.omega_high + band.omega_low) / band.width()
                       : std::numeric_limits<double>::infinity();
    double bound = 4.0 * pi * e * p_am;
    plan.feasible = ratio >= bound;
    std::ostringstream os;
    os << "band ratio " << ratio << (plan.feasible ? " >= " : " < ") << bound;
    plan.reason = os.str();
    return plan;
}

FourierPlans theorem3_ranges(double period, int q_low, int q_high, int folds, int wedge) {
    require_wedge(wedge);
    if (folds < 0) throw Error(ErrorKind::precondition, "folds must be >= 0");
    const double tau = period;
    const double P = wedge;
    const int slack = q_low - folds - 1;

    auto make = [&](Regime regime) {
        SamplingPlan p;
        p.regime = regime;
        p.wedge = wedge;
        p.parity = parity_of(wedge);
        return p;
    };
    FourierPlans out{make(Regime::fourier_outer), make(Regime::fourier_inner)};

    auto guarded = [&](SamplingPlan& plan, double t_min, double t_max) {
        if (slack <= 0) {
            plan.feasible = false;
            std::ostringstream os;
            os << "requires Q_L > M+1 (Q_L=" << q_low << ", M=" << folds << ")";
            plan.reason = os.str();
            plan.t_min = t_min;
            plan.t_max = 0.0;
            return;
        }
        plan.t_min = t_min;
        plan.t_max = t_max;
    };
    auto lower_q = [&](double q) { return wedge == 1 ? 0.0 : (P - 1) * tau / (2.0 * q); };

    if (wedge % 2) {
        out.outer.t_min = lower_q(q_low);
        out.outer.t_max = P * tau / (2.0 * (q_high + folds + 1));
        if (wedge == 1) {
            // inner set size 2Q_L − 1 must reach 2M + 1
            out.inner.t_min = 0.0;
            out.inner.t_max = tau / (2.0 * q_high);
            if (q_low < folds + 1) {
                out.inner.feasible = false;
                std::ostringstream os;
                os << "inner set needs Q_L >= M+1 (Q_L=" << q_low << ", M=" << folds << ")";
                out.inner.reason = os.str();
            }
        } else {
            guarded(out.inner, lower_q(slack), P * tau / (2.0 * q_high));
        }
    } else {
        guarded(out.outer, lower_q(slack), P * tau / (2.0 * q_high));
        out.inner.t_min = lower_q(q_low);
        out.inner.t_max = P * tau / (2.0 * (q_high + folds + 1));
    }
    const BandSpec band{2.0 * pi * q_low / tau, 2.0 * pi * q_high / tau};
    for (SamplingPlan* p : {&out.outer, &out.inner}) {
        close_plan(*p);
        if (p->midpoint() > 0.0)
            p->baseband_bandwidth = baseband_bandwidth(band, wedge, 2.0 * pi / p->midpoint());
    }
    return out;
}

SamplingPlan am_fourier_rate(double period, const BandSpec& band, int folds, int p_am) {
    if (p_am < 1) throw Error(ErrorKind::precondition, "P_AM must be >= 1");
    SamplingPlan plan;
    plan.regime = Regime::am_fourier;
    plan.wedge = 2 * p_am;
    plan.parity = Parity::even;
    double omega_s = (band.omega_high + band.omega_low) / (2.0 * p_am);
    plan.omega_s = omega_s;
    plan.t_min = plan.t_max = 2.0 * pi / omega_s;
    plan.baseband_bandwidth = band.width() / 2.0;
    int q_low = snap_floor(period * band.omega_low / (2.0 * pi));
    double upper = 4.0 * pi * (q_low - folds - 1) / (period * (2.0 * p_am - 1.0));
    double lower = band.width();
    plan.feasible = lower <= omega_s && omega_s <= upper;
    std::ostringstream os;
    os << "rate " << omega_s << " vs [" << lower << ", " << upper << "] (Q_L=" << q_low << ")";
    plan.reason = os.str();
    return plan;
}

DiscreteBandIndices discrete_indices(double period, int K, const BandSpec& band, int wedge) {
    require_wedge(wedge);
    if (K < 1) throw Error(ErrorKind::precondition, "K must be >= 1");
    DiscreteBandIndices d;
    d.K = K;
    d.q_low = harmonic_index(band.omega_low, period);
    d.q_high = harmonic_index(band.omega_high, period);
    if (wedge % 2)
        d.q_high_base = d.q_high - (wedge - 1) * K / 2;
    else
        d.q_high_base = (wedge / 2) * K - d.q_low;
    d.q_low_base = d.q_high_base - (d.q_high - d.q_low);
    std::ostringstream os;
    if (d.q_low_base < 0) {
        d.feasible = false;
        os << "Q_L^g = " << d.q_low_base << " < 0: band is not inside wedge " << wedge;
    } else if (2 * d.q_high_base > K) {
        d.feasible = false;
        os << "Q_U^g = " << d.q_high_base << " exceeds K/2 = " << K / 2.0;
    }
    d.reason = os.str();
    return d;
}

std::vector<int> admissible_sample_counts(const SamplingPlan& plan, double period) {
    std::vector<int> out;
    if (plan.empty() || !(plan.t_max > 0.0)) return out;
    int k_lo = snap_ceil(period / plan.t_max);
    int k_hi = plan.t_min > 0.0 ? snap_floor(period / plan.t_min) : k_lo + 9999;
    for (int k = std::max(k_lo, 1); k <= k_hi && out.size() < 10000; ++k) out.push_back(k);
    return out;
}

}  // namespace modband
