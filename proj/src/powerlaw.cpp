#include "cmcomp/powerlaw.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmcomp {

namespace {

// sum_{k >= m} (2/k)^s  =  2^s zeta(s, m)
double power_sum_from(double s, double m) {
    static const bool quiet = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)quiet;
    return std::pow(2.0, s) * gsl_sf_hzeta(s, m);
}

}  // namespace

DegreeLaw::DegreeLaw(double tau) : tau_(tau) {
    if (!(tau > 2.0 && tau < 3.0)) throw std::invalid_argument("tau must lie in (2,3)");
    // E[D] = sum_{k>=1} P(D >= k) = 1 + sum_{k>=2} (2/k)^{tau-1}
    mean_ = 1.0 + power_sum_from(tau - 1.0, 2.0);
}

double DegreeLaw::tail(double x) const {
    if (x < 2.0) return 1.0;
    return std::pow(2.0 / (std::floor(x) + 1.0), tau_ - 1.0);
}

double DegreeLaw::pmf(std::int64_t k) const {
    if (k < 2) return 0.0;
    const auto kd = static_cast<double>(k);
    return tail(kd - 1.0) - tail(kd);
}

std::int64_t DegreeLaw::from_uniform(double u) const {
    const double s = tau_ - 1.0;
    double x = 2.0 * std::pow(u, -1.0 / s);
    if (x > 9.0e18) x = 9.0e18;
    auto k = static_cast<std::int64_t>(std::floor(x));
    const double frac = x - std::floor(x);
    if (frac > 1e-9 * x && frac < 1.0 - 1e-9 * x && k >= 2) return k;
    // D >= k  iff  u <= (2/k)^s ; repair floating error at the cell edges
    while (k < static_cast<std::int64_t>(9.0e18) && u <= std::pow(2.0 / static_cast<double>(k + 1), s)) ++k;
    while (k > 2 && u > std::pow(2.0 / static_cast<double>(k), s)) --k;
    return std::max<std::int64_t>(k, 2);
}

SizeBiasedLaw::SizeBiasedLaw(const DegreeLaw &base) : base_(base) {}

double SizeBiasedLaw::pmf(std::int64_t j) const {
    if (j < 1) return 0.0;
    return static_cast<double>(j + 1) * base_.pmf(j + 1) / base_.mean();
}

double SizeBiasedLaw::tail(double x) const {
    if (x < 0.0) return 1.0;
    const double j = std::floor(x);
    const double s = base_.tau() - 1.0;
    // E[D] P(D* > j) = sum_{k >= j+2} k P(D=k) = (j+2) P(D >= j+2) + sum_{k >= j+3} P(D >= k)
    const double head = (j + 2.0) * std::pow(2.0 / (j + 2.0), s);
    const double v = (head + power_sum_from(s, j + 3.0)) / base_.mean();
    return std::min(1.0, v);
}

double SizeBiasedLaw::sample(Rng &rng) const {
    // Pareto proposal with index tau-2 (density x f(x)), accept with floor(x)/x >= 2/3
    const double inv = -1.0 / (base_.tau() - 2.0);
    for (;;) {
        double x = 2.0 * std::pow(rng.uniform(), inv);
        if (!(x < 1e300)) x = 1e300;
        const double k = std::floor(x);
        if (rng.uniform() * x <= k) return k - 1.0;
    }
}

double SizeBiasedLaw::sample_max(double m, double u) const {
    if (m < 1.0) throw std::invalid_argument("sample_max needs m >= 1");
    // smallest j with (1 - tail(j))^m >= u, i.e. tail(j) <= p
    const double p = -std::expm1(std::log(u) / m);
    if (tail(0.0) <= p) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (tail(hi) > p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) return 1e300;
    }
    // invariant: tail(lo) > p >= tail(hi)
    while (hi - lo > 1.0 && hi - lo > 1e-12 * hi) {
        const double mid = std::floor(lo + (hi - lo) / 2.0);
        if (mid <= lo || mid >= hi) break;
        if (tail(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

std::pair<double, double> SizeBiasedLaw::tail_constants() const {
    const double e = base_.tau() - 2.0;
    double lo = 1e300, hi = 0.0;
    auto visit = [&](double j) {
        // tail is constant on [j, j+1): extremes of x^e tail at the two ends
        const double t = tail(j);
        lo = std::min(lo, std::pow(j, e) * t);
        hi = std::max(hi, std::pow(j + 1.0, e) * t);
    };
    for (int j = 1; j <= 4096; ++j) visit(j);
    for (double j = 4096.0; j < 1e15; j *= 1.01) visit(std::floor(j));
    return {lo, hi};
}

}  // namespace cmcomp
