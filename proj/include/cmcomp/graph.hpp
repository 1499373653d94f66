#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "cmcomp/powerlaw.hpp"

namespace cmcomp {

using vertex_t = std::int32_t;
inline constexpr std::int32_t kUnreached = std::numeric_limits<std::int32_t>::max();

struct DegreeSequence {
    std::vector<std::int64_t> degrees;
    std::int64_t total = 0;  // L_n

    std::int64_t n() const { return static_cast<std::int64_t>(degrees.size()); }
    // L_n / n within [E[D]/2, 2 E[D]]; recorded, never used to resample
    bool ln_in_band(double mean_degree) const;
};

// Takes raw draws, adds one half-edge to the last vertex if the sum is odd.
DegreeSequence make_degree_sequence(std::vector<std::int64_t> draws);

// n i.i.d. draws; vertex v uses the counter-based uniform (seed, v), so the
// OpenMP and serial versions produce identical sequences.
DegreeSequence sample_degree_sequence(std::int64_t n, const DegreeLaw &law, std::uint64_t seed);
DegreeSequence sample_degree_sequence_serial(std::int64_t n, const DegreeLaw &law, std::uint64_t seed);

class Multigraph {
public:
    Multigraph() = default;
    Multigraph(std::vector<std::int64_t> offsets, std::vector<vertex_t> nbrs);

    vertex_t n() const { return static_cast<vertex_t>(offsets_.size()) - 1; }
    std::int64_t half_edges() const { return static_cast<std::int64_t>(nbrs_.size()); }
    std::int64_t degree(vertex_t v) const { return offsets_[v + 1] - offsets_[v]; }
    std::span<const vertex_t> neighbors(vertex_t v) const {
        return {nbrs_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
    }
    const std::vector<std::int64_t> &offsets() const { return offsets_; }
    const std::vector<vertex_t> &flat() const { return nbrs_; }

    std::int64_t max_degree() const;
    // each edge once as (u, v) with u <= v; a self-loop appears once
    std::vector<std::pair<vertex_t, vertex_t>> edges() const;

private:
    std::vector<std::int64_t> offsets_{0};
    std::vector<vertex_t> nbrs_;
};

// Sequential pairing: the lowest unmatched half-edge is matched to a uniform
// unmatched one. Throws on an odd half-edge count.
Multigraph uniform_matching(const DegreeSequence &ds, std::uint64_t seed);

Multigraph from_edges(vertex_t n, const std::vector<std::pair<vertex_t, vertex_t>> &edges);

struct BfsResult {
    std::vector<std::int32_t> dist;    // kUnreached when not reachable
    std::vector<std::int64_t> layers;  // layers[k] = #vertices at distance k
};
BfsResult bfs_layers(const Multigraph &g, vertex_t source);

// sum of D_v over vertices with D_v >= y
std::int64_t half_edges_above(const Multigraph &g, double y);
std::int64_t vertices_above(const Multigraph &g, double y);

// "n L_n" header then one "u v" line per edge
void write_graph(std::ostream &os, const Multigraph &g);
Multigraph read_graph(std::istream &is);

}  // namespace cmcomp
