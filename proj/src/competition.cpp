#include "cmcomp/competition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmcomp {

CompetitionResult run_competition(const Multigraph &g, vertex_t r0, vertex_t b0, double tie_blue_prob,
                                  std::uint64_t seed) {
    if (r0 == b0) throw std::invalid_argument("sources must differ");
    if (r0 < 0 || b0 < 0 || r0 >= g.n() || b0 >= g.n()) throw std::out_of_range("source out of range");

    const auto n = static_cast<std::size_t>(g.n());
    CompetitionResult res;
    res.r0 = r0;
    res.b0 = b0;
    res.color.assign(n, Color::Uncolored);
    res.time.assign(n, kUnreached);

    res.color[r0] = Color::Red;
    res.color[b0] = Color::Blue;
    res.time[r0] = res.time[b0] = 0;
    res.red_count = res.blue_count = 1;
    std::int64_t max_red = g.degree(r0), max_blue = g.degree(b0);
    res.max_red_degree_by_time.push_back(max_red);
    res.max_blue_degree_by_time.push_back(max_blue);
    res.colored_by_time.push_back(2);

    // seen bit 1 = red neighbour, bit 2 = blue neighbour at the previous step
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<vertex_t> frontier{r0, b0}, next;
    for (std::int32_t t = 1; !frontier.empty(); ++t) {
        next.clear();
        for (auto u : frontier) {
            const auto c = static_cast<std::uint8_t>(res.color[u]);
            for (auto w : g.neighbors(u)) {
                if (res.color[w] != Color::Uncolored) continue;
                if (seen[w] == 0) next.push_back(w);
                seen[w] |= c;
            }
        }
        for (auto w : next) {
            Color c;
            if (seen[w] == 3)
                c = counter_uniform(seed, static_cast<std::uint64_t>(w)) <= tie_blue_prob ? Color::Blue : Color::Red;
            else
                c = static_cast<Color>(seen[w]);
            seen[w] = 0;
            res.color[w] = c;
            res.time[w] = t;
            if (c == Color::Red) {
                ++res.red_count;
                max_red = std::max(max_red, g.degree(w));
            } else {
                ++res.blue_count;
                max_blue = std::max(max_blue, g.degree(w));
            }
        }
        if (next.empty()) break;
        res.max_red_degree_by_time.push_back(max_red);
        res.max_blue_degree_by_time.push_back(max_blue);
        res.colored_by_time.push_back(res.red_count + res.blue_count);
        frontier.swap(next);
    }
    res.uncolored = static_cast<std::int64_t>(n) - res.red_count - res.blue_count;
    return res;
}

double growth_threshold(std::int64_t n, double rho) {
    return std::max(std::pow(static_cast<double>(n), rho), 2.0);
}

GrowthTrace growth_from_bfs(const BfsResult &from_r, const BfsResult &from_b, vertex_t b0, double threshold,
                            double tau) {
    GrowthTrace tr;
    tr.threshold = threshold;
    tr.source_distance = from_r.dist[b0];
    const std::size_t depth = std::max(from_r.layers.size(), from_b.layers.size());
    auto at = [](const std::vector<std::int64_t> &v, std::size_t k) -> std::int64_t { return k < v.size() ? v[k] : 0; };
    for (std::size_t k = 0; k < depth; ++k) {
        const std::int64_t zr = at(from_r.layers, k), zb = at(from_b.layers, k);
        tr.z_red.push_back(zr);
        tr.z_blue.push_back(zb);
        if (static_cast<double>(std::max(zr, zb)) >= threshold) {
            tr.stop = static_cast<std::int32_t>(k);
            break;
        }
    }
    if (tr.stop < 0) return tr;
    const double w = std::pow(tau - 2.0, tr.stop);
    const std::int64_t zr = tr.z_red.back(), zb = tr.z_blue.back();
    tr.y_red = zr > 0 ? w * std::log(static_cast<double>(zr)) : 0.0;
    tr.y_blue = zb > 0 ? w * std::log(static_cast<double>(zb)) : 0.0;
    tr.degenerate = !(tr.y_red > 0.0 && tr.y_blue > 0.0);
    return tr;
}

GrowthTrace extract_growth(const Multigraph &g, vertex_t r0, vertex_t b0, double rho, double tau) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0,1)");
    return growth_from_bfs(bfs_layers(g, r0), bfs_layers(g, b0), b0, growth_threshold(g.n(), rho), tau);
}

Outcome classify_outcome(const Multigraph &g, const CompetitionResult &res, const GrowthTrace &trace) {
    if (trace.degenerate) throw std::invalid_argument("outcome needs a non-degenerate growth trace");
    Outcome o;
    const double n = static_cast<double>(g.n());
    bool blue_loses = trace.y_blue < trace.y_red;
    if (trace.y_blue == trace.y_red) blue_loses = res.blue_count <= res.red_count;
    o.loser = blue_loses ? Color::Blue : Color::Red;
    o.q = blue_loses ? trace.y_blue / trace.y_red : trace.y_red / trace.y_blue;
    o.loser_mass = blue_loses ? res.blue_count : res.red_count;
    o.losing_fraction = static_cast<double>(std::min(res.blue_count, res.red_count)) / n;
    o.loser_fraction = static_cast<double>(o.loser_mass) / n;
    o.log_loser_mass = std::log(static_cast<double>(o.loser_mass)) / std::log(n);
    o.max_loser_degree = blue_loses ? res.max_blue_degree_by_time.back() : res.max_red_degree_by_time.back();
    o.source_distance = trace.source_distance;
    return o;
}

}  // namespace cmcomp
