#pragma once

#include <cstdint>
#include <vector>

#include "cmcomp/powerlaw.hpp"

namespace cmcomp {

enum class RootLaw { F, FStar };
enum class StopKind { Population, MaxOffspring };
enum class StopReason { Population, MaxOffspring, Cap };

inline constexpr double kDefaultPopCap = 1e7;

// z[k] = generation sizes, m[k] = largest offspring count in generation k.
// Counts are doubles: with infinite-mean offspring they overflow 64-bit integers.
struct GwTrajectory {
    std::vector<double> z;
    std::vector<double> m;
    int stopped_at = -1;
    StopReason reason = StopReason::Cap;
    bool censored() const { return reason == StopReason::Cap; }
};

// Grows generation by generation until Z_k >= threshold (Population) or some
// individual of generation k has offspring >= threshold (MaxOffspring). A
// generation larger than pop_cap is never materialised: the run is censored.
// For Population stops m[stopped_at] is one exact draw of the maximum of
// Z_k offspring counts, so generation k itself is never expanded.
GwTrajectory simulate_until(const SizeBiasedLaw &law, RootLaw root, StopKind kind, double threshold,
                            double pop_cap, std::uint64_t seed);

// (tau-2)^k log Z_k at the stop; throws on censored trajectories
double y_estimate(const GwTrajectory &t, double tau);
// same, for the first generation with Z_k >= threshold (nested stopping)
double y_estimate_at(const GwTrajectory &t, double threshold, double tau);
// (tau-2)^{k+1} log M_k / ((tau-2)^k log Z_k) at the stop
double max_sum_ratio(const GwTrajectory &t, double tau);

struct YSample {
    std::vector<double> values;  // sorted, censored trials excluded
    std::int64_t censored = 0;
    double quantile(double p) const;
    double ccdf(double x) const;  // fraction of values > x
};

YSample sample_y_distribution(double tau, RootLaw root, double threshold, std::int64_t trials, std::uint64_t seed,
                              int jobs = 0);
YSample sample_y_distribution_serial(double tau, RootLaw root, double threshold, std::int64_t trials,
                                     std::uint64_t seed);

// (tau-2) * max of D_w independent F*-rooted Y values, D_w ~ F
YSample sample_y_composed(double tau, double threshold, std::int64_t trials, std::uint64_t seed, int jobs = 0);

// Y at two nested thresholds on one trajectory per trial
struct NestedY {
    std::vector<double> y_lo, y_hi;
    std::int64_t censored = 0;
};
NestedY nested_y(double tau, RootLaw root, double lo, double hi, std::int64_t trials, std::uint64_t seed,
                 int jobs = 0);

struct MaxSumSummary {
    std::vector<double> ratios;
    double mean = 0.0, sd = 0.0;
    std::int64_t censored = 0;
};
MaxSumSummary max_sum_diagnostic(double tau, double threshold, std::int64_t trials, std::uint64_t seed, int jobs = 0);

}  // namespace cmcomp
