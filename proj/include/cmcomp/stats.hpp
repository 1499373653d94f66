#pragma once

#include <cstdint>
#include <vector>

namespace cmcomp {

struct Interval {
    double lo = 0.0, hi = 0.0;
    double halfwidth() const { return (hi - lo) / 2.0; }
};

// Wilson score interval; z = 1.96 gives 95%
Interval wilson(std::int64_t successes, std::int64_t trials, double z = 1.96);

double binomial_se(double p, std::int64_t trials);

// sup-distance between two empirical CDFs
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// z statistic for H1: p1 > p2, pooled variance
double two_proportion_z(std::int64_t k1, std::int64_t n1, std::int64_t k2, std::int64_t n2);

double mean(const std::vector<double> &v);
double stddev(const std::vector<double> &v);
double median(std::vector<double> v);

}  // namespace cmcomp
