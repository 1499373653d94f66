#include "cmcomp/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cmcomp {

bool DegreeSequence::ln_in_band(double mean_degree) const {
    if (degrees.empty()) return false;
    const double r = static_cast<double>(total) / static_cast<double>(n());
    return r >= mean_degree / 2.0 && r <= 2.0 * mean_degree;
}

DegreeSequence make_degree_sequence(std::vector<std::int64_t> draws) {
    DegreeSequence ds;
    ds.degrees = std::move(draws);
    std::int64_t s = 0;
    for (auto d : ds.degrees) s += d;
    if (s % 2 != 0) {
        ds.degrees.back() += 1;
        s += 1;
    }
    ds.total = s;
    return ds;
}

DegreeSequence sample_degree_sequence(std::int64_t n, const DegreeLaw &law, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("degree sequence needs n >= 2");
    std::vector<std::int64_t> d(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < n; ++v) d[v] = law.from_uniform(counter_uniform(seed, static_cast<std::uint64_t>(v)));
    return make_degree_sequence(std::move(d));
}

DegreeSequence sample_degree_sequence_serial(std::int64_t n, const DegreeLaw &law, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("degree sequence needs n >= 2");
    std::vector<std::int64_t> d(static_cast<std::size_t>(n));
    for (std::int64_t v = 0; v < n; ++v) d[v] = law.from_uniform(counter_uniform(seed, static_cast<std::uint64_t>(v)));
    return make_degree_sequence(std::move(d));
}

Multigraph::Multigraph(std::vector<std::int64_t> offsets, std::vector<vertex_t> nbrs)
    : offsets_(std::move(offsets)), nbrs_(std::move(nbrs)) {
    if (offsets_.empty() || offsets_.back() != static_cast<std::int64_t>(nbrs_.size()))
        throw std::invalid_argument("offsets do not match neighbor list");
}

std::int64_t Multigraph::max_degree() const {
    std::int64_t m = 0;
    for (vertex_t v = 0; v < n(); ++v) m = std::max(m, degree(v));
    return m;
}

std::vector<std::pair<vertex_t, vertex_t>> Multigraph::edges() const {
    std::vector<std::pair<vertex_t, vertex_t>> out;
    out.reserve(nbrs_.size() / 2);
    for (vertex_t v = 0; v < n(); ++v) {
        bool odd_loop = false;
        for (auto u : neighbors(v)) {
            if (u > v) {
                out.emplace_back(v, u);
            } else if (u == v) {
                // a self-loop fills two slots of v
                if (!odd_loop) out.emplace_back(v, v);
                odd_loop = !odd_loop;
            }
        }
    }
    return out;
}

Multigraph uniform_matching(const DegreeSequence &ds, std::uint64_t seed) {
    const std::int64_t L = ds.total;
    if (L % 2 != 0) throw std::invalid_argument("odd number of half-edges");
    if (L > static_cast<std::int64_t>(std::numeric_limits<std::uint32_t>::max()))
        throw std::length_error("too many half-edges");
    const auto n = static_cast<vertex_t>(ds.degrees.size());

    std::vector<std::int64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
    for (vertex_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + ds.degrees[v];

    std::vector<vertex_t> owner(static_cast<std::size_t>(L));
    for (vertex_t v = 0; v < n; ++v)
        std::fill(owner.begin() + offsets[v], owner.begin() + offsets[v + 1], v);

    // pool of unmatched half-edges with O(1) removal
    std::vector<std::uint32_t> pool(static_cast<std::size_t>(L)), pos(static_cast<std::size_t>(L));
    for (std::uint32_t h = 0; h < static_cast<std::uint32_t>(L); ++h) pool[h] = pos[h] = h;
    std::uint64_t size = static_cast<std::uint64_t>(L);
    auto remove = [&](std::uint32_t h) {
        const std::uint32_t i = pos[h];
        const std::uint32_t last = pool[size - 1];
        pool[i] = last;
        pos[last] = i;
        --size;
    };
    constexpr std::uint32_t kDone = std::numeric_limits<std::uint32_t>::max();

    std::vector<vertex_t> nbrs(static_cast<std::size_t>(L));
    Rng rng(seed, 0x6d61746368ULL);
    for (std::uint32_t h = 0; h < static_cast<std::uint32_t>(L); ++h) {
        if (pos[h] == kDone) continue;
        remove(h);
        pos[h] = kDone;
        const std::uint32_t p = pool[rng.below(size)];
        remove(p);
        pos[p] = kDone;
        nbrs[h] = owner[p];
        nbrs[p] = owner[h];
    }
    return Multigraph(std::move(offsets), std::move(nbrs));
}

Multigraph from_edges(vertex_t n, const std::vector<std::pair<vertex_t, vertex_t>> &edges) {
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
        ++offsets[u + 1];
        ++offsets[v + 1];
    }
    for (vertex_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    std::vector<std::int64_t> fill(offsets.begin(), offsets.end() - 1);
    std::vector<vertex_t> nbrs(static_cast<std::size_t>(offsets.back()));
    for (auto [u, v] : edges) {
        nbrs[fill[u]++] = v;
        nbrs[fill[v]++] = u;
    }
    return Multigraph(std::move(offsets), std::move(nbrs));
}

BfsResult bfs_layers(const Multigraph &g, vertex_t source) {
    if (source < 0 || source >= g.n()) throw std::out_of_range("bfs source out of range");
    BfsResult r;
    r.dist.assign(static_cast<std::size_t>(g.n()), kUnreached);
    std::vector<vertex_t> queue;
    queue.reserve(static_cast<std::size_t>(g.n()));
    r.dist[source] = 0;
    queue.push_back(source);
    std::size_t head = 0;
    std::int32_t cur = 0;
    std::int64_t count = 0;
    while (head < queue.size()) {
        const vertex_t u = queue[head++];
        const std::int32_t du = r.dist[u];
        if (du != cur) {
            r.layers.push_back(count);
            count = 0;
            cur = du;
        }
        ++count;
        for (auto w : g.neighbors(u)) {
            if (r.dist[w] == kUnreached) {
                r.dist[w] = du + 1;
                queue.push_back(w);
            }
        }
    }
    r.layers.push_back(count);
    return r;
}

std::int64_t half_edges_above(const Multigraph &g, double y) {
    std::int64_t s = 0;
    for (vertex_t v = 0; v < g.n(); ++v)
        if (static_cast<double>(g.degree(v)) >= y) s += g.degree(v);
    return s;
}

std::int64_t vertices_above(const Multigraph &g, double y) {
    std::int64_t s = 0;
    for (vertex_t v = 0; v < g.n(); ++v)
        if (static_cast<double>(g.degree(v)) >= y) ++s;
    return s;
}

void write_graph(std::ostream &os, const Multigraph &g) {
    os << g.n() << ' ' << g.half_edges() << '\n';
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

Multigraph read_graph(std::istream &is) {
    std::int64_t n = 0, L = 0;
    if (!(is >> n >> L) || n < 0 || L < 0 || L % 2 != 0) throw std::runtime_error("bad graph header");
    std::vector<std::pair<vertex_t, vertex_t>> edges(static_cast<std::size_t>(L / 2));
    for (auto &e : edges)
        if (!(is >> e.first >> e.second)) throw std::runtime_error("truncated edge list");
    return from_edges(static_cast<vertex_t>(n), edges);
}

}  // namespace cmcomp
