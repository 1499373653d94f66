#include "cmcomp/coloring.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "cmcomp/parallel.hpp"
#include "cmcomp/stats.hpp"

namespace cmcomp {

double ColoringParams::error_prob() const { return p_e >= 0.0 ? p_e : std::pow(Q, 1.0 - gamma); }

void ColoringParams::validate() const {
    if (!(tau > 2.0 && tau < 3.0)) throw std::invalid_argument("tau must lie in (2,3)");
    if (!(Q >= 2.0)) throw std::invalid_argument("Q must be at least 2");
    if (!(gamma > 1.0 && gamma < 1.0 / (tau - 2.0))) throw std::invalid_argument("gamma must lie in (1, 1/(tau-2))");
    const double pe = error_prob();
    if (!(pe >= 0.0 && pe <= 1.0)) throw std::invalid_argument("p_e must lie in [0,1]");
    if (!(tie_blue_prob >= 0.0 && tie_blue_prob <= 1.0)) throw std::invalid_argument("tie probability outside [0,1]");
}

StoppedTree grow_stopped_tree(const ColoringParams &p, double pop_cap, std::uint64_t seed) {
    const SizeBiasedLaw law{DegreeLaw(p.tau)};
    Rng rng(seed, 0x74726565ULL);
    StoppedTree t;
    t.parent.push_back(-1);
    t.gen_start.push_back(0);
    for (int g = 0;; ++g) {
        const std::int64_t start = t.gen_start[g];
        const auto end = static_cast<std::int64_t>(t.parent.size());
        double total = 0.0, mx = -1.0;
        std::int64_t arg = -1;
        for (std::int64_t i = start; i < end; ++i) {
            const double d = (g == 0 && p.root_law == RootLaw::F) ? static_cast<double>(law.base().sample(rng))
                                                                   : law.sample(rng);
            t.offspring.push_back(d);
            total += d;
            if (d > mx) {
                mx = d;
                arg = i;
            }
        }
        t.gen_start.push_back(end);
        if (mx >= p.Q) {
            t.kappa = g;
            t.v_star = arg;
            t.first_child.resize(t.offspring.size(), -1);
            return t;
        }
        if (static_cast<double>(end) + total > pop_cap) {
            t.censored = true;
            t.first_child.resize(t.offspring.size(), -1);
            return t;
        }
        t.first_child.resize(t.offspring.size(), -1);
        for (std::int64_t i = start; i < end; ++i) {
            t.first_child[i] = static_cast<std::int64_t>(t.parent.size());
            const auto c = static_cast<std::int64_t>(t.offspring[i]);
            t.parent.insert(t.parent.end(), static_cast<std::size_t>(c), i);
        }
    }
}

Paint start_color(double offspring, double u, const ColoringParams &p) {
    if (offspring < p.Q) return Paint::Neutral;
    if (offspring < std::pow(p.Q, p.gamma)) {
        if (p.rule == StartRule::Rule1) return Paint::Red;
        return u <= p.error_prob() ? Paint::Blue : Paint::Red;
    }
    // mixed band, including degrees beyond Q^{1/(tau-2)}
    return u <= p.tie_blue_prob ? Paint::Blue : Paint::Red;
}

std::vector<Paint> starting_rule(const StoppedTree &t, const ColoringParams &p, std::uint64_t seed) {
    if (t.censored || t.kappa < 0) throw std::invalid_argument("starting rule needs a stopped tree");
    const std::int64_t start = t.gen_start[t.kappa], end = t.gen_start[t.kappa + 1];
    std::vector<Paint> out(static_cast<std::size_t>(end - start));
    for (std::int64_t i = start; i < end; ++i)
        out[i - start] = start_color(t.offspring[i], counter_uniform(seed, 0x5354ULL, static_cast<std::uint64_t>(i)), p);
    return out;
}

RootColorOutcome flow_to_root(const StoppedTree &t, const std::vector<Paint> &leaf_colors, double tie_blue_prob,
                              std::uint64_t seed) {
    RootColorOutcome o;
    o.kappa = t.kappa;
    if (t.censored) {
        o.censored = true;
        return o;
    }
    o.m_kappa = t.m_kappa();
    std::vector<Paint> col(t.offspring.size(), Paint::Neutral);
    const std::int64_t leaf0 = t.gen_start[t.kappa];
    for (std::size_t i = 0; i < leaf_colors.size(); ++i) {
        col[leaf0 + static_cast<std::int64_t>(i)] = leaf_colors[i];
        if (leaf_colors[i] == Paint::Blue) ++o.blue_leaves;
        if (leaf_colors[i] == Paint::Red) ++o.red_leaves;
    }
    for (int g = t.kappa - 1; g >= 0; --g) {
        for (std::int64_t i = t.gen_start[g]; i < t.gen_start[g + 1]; ++i) {
            bool red = false, blue = false;
            const std::int64_t c0 = t.first_child[i], c1 = c0 + static_cast<std::int64_t>(t.offspring[i]);
            for (std::int64_t c = c0; c < c1 && !(red && blue); ++c) {
                red |= col[c] == Paint::Red;
                blue |= col[c] == Paint::Blue;
            }
            if (red && blue)
                col[i] = counter_uniform(seed, 0x464cULL, static_cast<std::uint64_t>(i)) <= tie_blue_prob ? Paint::Blue
                                                                                                         : Paint::Red;
            else if (red)
                col[i] = Paint::Red;
            else if (blue)
                col[i] = Paint::Blue;
        }
    }
    o.root = col[0];
    return o;
}

RootColorOutcome color_once(const ColoringParams &p, double pop_cap, std::uint64_t seed) {
    const StoppedTree t = grow_stopped_tree(p, pop_cap, seed);
    if (t.censored) {
        RootColorOutcome o;
        o.censored = true;
        return o;
    }
    const auto leaves = starting_rule(t, p, stream_key(seed, 1));
    return flow_to_root(t, leaves, p.tie_blue_prob, stream_key(seed, 2));
}

RootProbs estimate_root_probs(const ColoringParams &p, std::int64_t trials, double pop_cap, std::uint64_t seed,
                              int jobs) {
    p.validate();
    std::vector<RootColorOutcome> out(static_cast<std::size_t>(trials));
    parallel_trials(trials, jobs, [&](std::int64_t i) { out[i] = color_once(p, pop_cap, trial_seed(seed, i)); });
    RootProbs r;
    r.trials = trials;
    const double qg = std::pow(p.Q, p.gamma);
    for (const auto &o : out) {
        if (o.censored) {
            ++r.censored;
            continue;
        }
        if (o.root == Paint::Red) ++r.red;
        if (o.root == Paint::Blue) ++r.blue;
        if (o.root == Paint::Neutral) ++r.neutral;
        if (o.m_kappa >= qg) ++r.mixed_band;
        if (p.rule == StartRule::Rule1 && o.m_kappa < qg && o.root != Paint::Red) ++r.violations;
    }
    const std::int64_t used = trials - r.censored;
    if (used > 0) {
        r.p_red = static_cast<double>(r.red) / static_cast<double>(used);
        r.p_blue = static_cast<double>(r.blue) / static_cast<double>(used);
        r.ci_halfwidth = wilson(r.blue, used).halfwidth();
    }
    r.censored_fraction = trials > 0 ? static_cast<double>(r.censored) / static_cast<double>(trials) : 0.0;
    return r;
}

std::vector<SweepCell> gamma_sweep(double tau, StartRule rule, const std::vector<double> &Q_grid,
                                   const std::vector<double> &gamma_grid, std::int64_t trials, std::uint64_t seed,
                                   int jobs, RootLaw root_law, double tie_blue_prob, double pop_cap) {
    if (Q_grid.empty() || gamma_grid.empty()) throw std::invalid_argument("empty sweep grid");
    std::vector<SweepCell> cells;
    for (double Q : Q_grid) {
        for (double g : gamma_grid) {
            ColoringParams p;
            p.tau = tau;
            p.Q = Q;
            p.gamma = g;
            p.rule = rule;
            p.root_law = root_law;
            p.tie_blue_prob = tie_blue_prob;
            const std::uint64_t cs =
                stream_key(seed, std::bit_cast<std::uint64_t>(Q), std::bit_cast<std::uint64_t>(g));
            cells.push_back({g, Q, rule, estimate_root_probs(p, trials, pop_cap, cs, jobs)});
        }
    }
    return cells;
}

}  // namespace cmcomp
