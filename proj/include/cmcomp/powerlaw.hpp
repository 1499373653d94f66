#pragma once

#include <cstdint>
#include <utility>

#include "cmcomp/rng.hpp"

namespace cmcomp {

// D = floor(2 U^{-1/(tau-1)}), U uniform on (0,1].
// P(D > x) = (2/(floor(x)+1))^{tau-1} for x >= 2, so c1 = 1 and C1 = 2^{tau-1}.
class DegreeLaw {
public:
    explicit DegreeLaw(double tau);

    double tau() const { return tau_; }
    static constexpr std::int64_t x_min = 2;

    double tail(double x) const;
    double pmf(std::int64_t k) const;
    double mean() const { return mean_; }

    std::int64_t from_uniform(double u) const;
    std::int64_t sample(Rng &rng) const { return from_uniform(rng.uniform()); }

private:
    double tau_;
    double mean_;
};

// Law of (D - 1) where D is drawn proportionally to k P(D=k): the forward degree.
class SizeBiasedLaw {
public:
    explicit SizeBiasedLaw(const DegreeLaw &base);

    const DegreeLaw &base() const { return base_; }
    double mean_degree() const { return base_.mean(); }

    double pmf(std::int64_t j) const;
    // P(D* > x), x real; exact through the Hurwitz zeta function
    double tail(double x) const;

    // Offspring counts can exceed 2^63 for tau near 2, so they are carried as doubles.
    double sample(Rng &rng) const;
    // One draw of the maximum of m i.i.d. copies, by inversion at level u
    double sample_max(double m, double u) const;

    // (c1*, C1*) with c1* x^{-(tau-2)} <= P(D* > x) <= C1* x^{-(tau-2)} for x >= 1.
    // Scanned numerically on a dense grid (a few thousand zeta calls; compute once and keep).
    std::pair<double, double> tail_constants() const;

private:
    DegreeLaw base_;
};

}  // namespace cmcomp
