#include "cmcomp/gw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cmcomp/parallel.hpp"
#include "cmcomp/stats.hpp"

namespace cmcomp {

GwTrajectory simulate_until(const SizeBiasedLaw &law, RootLaw root, StopKind kind, double threshold,
                            double pop_cap, std::uint64_t seed) {
    Rng rng(seed, 0x6777ULL);
    const bool f_root = root == RootLaw::F;
    auto draw = [&](int gen) -> double {
        if (gen == 0 && f_root) return static_cast<double>(law.base().sample(rng));
        return law.sample(rng);
    };

    GwTrajectory t;
    t.z.push_back(1.0);
    for (int k = 0;; ++k) {
        const double zk = t.z[k];
        if (kind == StopKind::Population && zk >= threshold) {
            double mk;
            if (k == 0 && f_root)
                mk = draw(0);
            else
                mk = law.sample_max(zk, rng.uniform());
            t.m.push_back(mk);
            t.stopped_at = k;
            t.reason = StopReason::Population;
            return t;
        }
        if (zk > pop_cap) {
            t.stopped_at = k;
            t.reason = StopReason::Cap;
            return t;
        }
        double sum = 0.0, mx = 0.0;
        const auto count = static_cast<std::int64_t>(zk);
        for (std::int64_t i = 0; i < count; ++i) {
            const double d = draw(k);
            sum += d;
            mx = std::max(mx, d);
        }
        t.m.push_back(mx);
        if (kind == StopKind::MaxOffspring && mx >= threshold) {
            t.stopped_at = k;
            t.reason = StopReason::MaxOffspring;
            return t;
        }
        t.z.push_back(sum);
    }
}

double y_estimate(const GwTrajectory &t, double tau) {
    if (t.censored()) throw std::invalid_argument("censored trajectory has no Y estimate");
    return std::pow(tau - 2.0, t.stopped_at) * std::log(t.z[t.stopped_at]);
}

double y_estimate_at(const GwTrajectory &t, double threshold, double tau) {
    for (int k = 0; k <= t.stopped_at && k < static_cast<int>(t.z.size()); ++k)
        if (t.z[k] >= threshold) return std::pow(tau - 2.0, k) * std::log(t.z[k]);
    throw std::invalid_argument("trajectory never reached the threshold");
}

double max_sum_ratio(const GwTrajectory &t, double tau) {
    if (t.censored()) throw std::invalid_argument("censored trajectory");
    const int k = t.stopped_at;
    return (tau - 2.0) * std::log(t.m[k]) / std::log(t.z[k]);
}

double YSample::quantile(double p) const {
    if (values.empty()) return NAN;
    const auto idx = static_cast<std::size_t>(std::clamp(p, 0.0, 1.0) * static_cast<double>(values.size() - 1));
    return values[idx];
}

double YSample::ccdf(double x) const {
    if (values.empty()) return NAN;
    const auto it = std::upper_bound(values.begin(), values.end(), x);
    return static_cast<double>(values.end() - it) / static_cast<double>(values.size());
}

namespace {

YSample collect(const std::vector<double> &raw, const std::vector<char> &cens) {
    YSample s;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (cens[i])
            ++s.censored;
        else
            s.values.push_back(raw[i]);
    }
    std::sort(s.values.begin(), s.values.end());
    return s;
}

}  // namespace

YSample sample_y_distribution(double tau, RootLaw root, double threshold, std::int64_t trials, std::uint64_t seed,
                              int jobs) {
    const SizeBiasedLaw law{DegreeLaw(tau)};
    std::vector<double> raw(static_cast<std::size_t>(trials));
    std::vector<char> cens(static_cast<std::size_t>(trials), 0);
    parallel_trials(trials, jobs, [&](std::int64_t i) {
        auto t = simulate_until(law, root, StopKind::Population, threshold, kDefaultPopCap, trial_seed(seed, i));
        if (t.censored())
            cens[i] = 1;
        else
            raw[i] = y_estimate(t, tau);
    });
    return collect(raw, cens);
}

YSample sample_y_distribution_serial(double tau, RootLaw root, double threshold, std::int64_t trials,
                                     std::uint64_t seed) {
    const SizeBiasedLaw law{DegreeLaw(tau)};
    std::vector<double> raw(static_cast<std::size_t>(trials));
    std::vector<char> cens(static_cast<std::size_t>(trials), 0);
    serial_trials(trials, [&](std::int64_t i) {
        auto t = simulate_until(law, root, StopKind::Population, threshold, kDefaultPopCap, trial_seed(seed, i));
        if (t.censored())
            cens[i] = 1;
        else
            raw[i] = y_estimate(t, tau);
    });
    return collect(raw, cens);
}

YSample sample_y_composed(double tau, double threshold, std::int64_t trials, std::uint64_t seed, int jobs) {
    const SizeBiasedLaw law{DegreeLaw(tau)};
    std::vector<double> raw(static_cast<std::size_t>(trials));
    std::vector<char> cens(static_cast<std::size_t>(trials), 0);
    parallel_trials(trials, jobs, [&](std::int64_t i) {
        const std::uint64_t ts = trial_seed(seed, i);
        Rng rng(ts, 0x726f6f74ULL);
        const std::int64_t dw = law.base().sample(rng);
        double best = 0.0;
        for (std::int64_t c = 0; c < dw; ++c) {
            auto t = simulate_until(law, RootLaw::FStar, StopKind::Population, threshold, kDefaultPopCap,
                                    stream_key(ts, 0x6368696c64ULL, static_cast<std::uint64_t>(c)));
            if (t.censored()) {
                cens[i] = 1;
                return;
            }
            best = std::max(best, y_estimate(t, tau));
        }
        raw[i] = (tau - 2.0) * best;
    });
    return collect(raw, cens);
}

NestedY nested_y(double tau, RootLaw root, double lo, double hi, std::int64_t trials, std::uint64_t seed, int jobs) {
    const SizeBiasedLaw law{DegreeLaw(tau)};
    std::vector<double> a(static_cast<std::size_t>(trials)), b(static_cast<std::size_t>(trials));
    std::vector<char> cens(static_cast<std::size_t>(trials), 0);
    parallel_trials(trials, jobs, [&](std::int64_t i) {
        auto t = simulate_until(law, root, StopKind::Population, hi, kDefaultPopCap, trial_seed(seed, i));
        if (t.censored()) {
            cens[i] = 1;
            return;
        }
        a[i] = y_estimate_at(t, lo, tau);
        b[i] = y_estimate(t, tau);
    });
    NestedY out;
    for (std::int64_t i = 0; i < trials; ++i) {
        if (cens[i]) {
            ++out.censored;
            continue;
        }
        out.y_lo.push_back(a[i]);
        out.y_hi.push_back(b[i]);
    }
    return out;
}

MaxSumSummary max_sum_diagnostic(double tau, double threshold, std::int64_t trials, std::uint64_t seed, int jobs) {
    const SizeBiasedLaw law{DegreeLaw(tau)};
    std::vector<double> raw(static_cast<std::size_t>(trials));
    std::vector<char> cens(static_cast<std::size_t>(trials), 0);
    parallel_trials(trials, jobs, [&](std::int64_t i) {
        auto t = simulate_until(law, RootLaw::FStar, StopKind::Population, threshold, kDefaultPopCap,
                                trial_seed(seed, i));
        if (t.censored())
            cens[i] = 1;
        else
            raw[i] = max_sum_ratio(t, tau);
    });
    MaxSumSummary s;
    for (std::int64_t i = 0; i < trials; ++i) {
        if (cens[i])
            ++s.censored;
        else
            s.ratios.push_back(raw[i]);
    }
    s.mean = mean(s.ratios);
    s.sd = stddev(s.ratios);
    return s;
}

}  // namespace cmcomp
