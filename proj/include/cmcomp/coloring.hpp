#pragma once

#include <cstdint>
#include <vector>

#include "cmcomp/gw.hpp"

namespace cmcomp {

enum class Paint : std::uint8_t { Neutral = 0, Red = 1, Blue = 2 };
enum class StartRule { Rule1, Rule2 };

struct ColoringParams {
    double tau = 2.5;
    double Q = 100.0;
    double gamma = 1.5;
    StartRule rule = StartRule::Rule1;
    double p_e = -1.0;  // negative: use Q^{1-gamma}
    RootLaw root_law = RootLaw::F;
    double tie_blue_prob = 0.5;

    double error_prob() const;
    void validate() const;
};

// Individuals stored generation by generation; children of one parent are
// contiguous. Generation kappa's offspring counts are kept as "degrees" but
// their children are not created.
struct StoppedTree {
    std::vector<double> offspring;
    std::vector<std::int64_t> parent;       // -1 for the root
    std::vector<std::int64_t> first_child;  // index of first child, -1 in generation kappa
    std::vector<std::int64_t> gen_start;    // generation g is [gen_start[g], gen_start[g+1])
    int kappa = -1;
    std::int64_t v_star = -1;  // leftmost maximal individual of generation kappa
    bool censored = false;

    int generations() const { return static_cast<int>(gen_start.size()) - 1; }
    double m_kappa() const { return offspring[static_cast<std::size_t>(v_star)]; }
};

StoppedTree grow_stopped_tree(const ColoringParams &p, double pop_cap, std::uint64_t seed);

// Colour of one generation-kappa individual from its offspring count and its
// own uniform u; both rules read the same u, which couples them.
Paint start_color(double offspring, double u, const ColoringParams &p);
std::vector<Paint> starting_rule(const StoppedTree &t, const ColoringParams &p, std::uint64_t seed);

struct RootColorOutcome {
    Paint root = Paint::Neutral;
    int kappa = -1;
    double m_kappa = 0.0;
    std::int64_t blue_leaves = 0;
    std::int64_t red_leaves = 0;
    bool censored = false;
};

RootColorOutcome flow_to_root(const StoppedTree &t, const std::vector<Paint> &leaf_colors, double tie_blue_prob,
                              std::uint64_t seed);

// tree + starting rule + flow, one seed
RootColorOutcome color_once(const ColoringParams &p, double pop_cap, std::uint64_t seed);

struct RootProbs {
    std::int64_t trials = 0, red = 0, blue = 0, neutral = 0, censored = 0;
    std::int64_t mixed_band = 0;  // trials with M_kappa >= Q^gamma
    std::int64_t violations = 0;  // Rule 1, M_kappa < Q^gamma but root not Red
    double p_red = 0.0, p_blue = 0.0, ci_halfwidth = 0.0, censored_fraction = 0.0;
};
RootProbs estimate_root_probs(const ColoringParams &p, std::int64_t trials, double pop_cap, std::uint64_t seed,
                              int jobs = 0);

struct SweepCell {
    double gamma = 0.0, Q = 0.0;
    StartRule rule = StartRule::Rule1;
    RootProbs probs;
};
// Cell seeds depend on (seed, Q, gamma) only, so a cell does not change with the grid around it.
std::vector<SweepCell> gamma_sweep(double tau, StartRule rule, const std::vector<double> &Q_grid,
                                   const std::vector<double> &gamma_grid, std::int64_t trials, std::uint64_t seed,
                                   int jobs = 0, RootLaw root_law = RootLaw::F, double tie_blue_prob = 0.5,
                                   double pop_cap = kDefaultPopCap);

}  // namespace cmcomp
