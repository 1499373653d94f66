#pragma once

#include <cstdint>
#include <vector>

#include "cmcomp/graph.hpp"

namespace cmcomp {

enum class Color : std::uint8_t { Uncolored = 0, Red = 1, Blue = 2 };

struct CompetitionResult {
    std::vector<Color> color;
    std::vector<std::int32_t> time;  // kUnreached if never colored
    std::int64_t red_count = 0;
    std::int64_t blue_count = 0;
    std::int64_t uncolored = 0;
    // running maximum of blue (red) degrees among vertices colored up to step t
    std::vector<std::int64_t> max_blue_degree_by_time;
    std::vector<std::int64_t> max_red_degree_by_time;
    // R_t + B_t after each step
    std::vector<std::int64_t> colored_by_time;
    vertex_t r0 = 0, b0 = 0;
};

// Synchronous wavefront. A vertex first reached at step t takes the colour of its
// step-(t-1) neighbours, or on a tie is Blue with probability tie_blue_prob via the
// counter-based coin (seed, v).
CompetitionResult run_competition(const Multigraph &g, vertex_t r0, vertex_t b0, double tie_blue_prob,
                                  std::uint64_t seed);

struct GrowthTrace {
    std::vector<std::int64_t> z_red, z_blue;  // BFS layer sizes, up to the stop
    double threshold = 0.0;                   // max(n^rho, 2)
    std::int32_t stop = -1;                   // t(n^rho)
    double y_red = 0.0, y_blue = 0.0;
    bool degenerate = true;
    std::int32_t source_distance = kUnreached;
};

// Layer sizes from independent BFS runs; stops at the first k with
// max(Z_k^r, Z_k^b) >= threshold. Degenerate when the threshold is never
// reached or one of the two Y values is not positive.
GrowthTrace extract_growth(const Multigraph &g, vertex_t r0, vertex_t b0, double rho, double tau);
GrowthTrace growth_from_bfs(const BfsResult &from_r, const BfsResult &from_b, vertex_t b0, double threshold,
                            double tau);
double growth_threshold(std::int64_t n, double rho);

struct Outcome {
    Color loser = Color::Blue;    // colour whose source has the smaller Y
    double q = 0.0;               // Y_loser / Y_winner
    double losing_fraction = 0.0; // min(B, R) / n
    double loser_fraction = 0.0;  // mass of the loser colour / n
    double log_loser_mass = 0.0;  // log(mass) / log n
    std::int64_t loser_mass = 0;
    std::int64_t max_loser_degree = 0;
    std::int32_t source_distance = kUnreached;
};

Outcome classify_outcome(const Multigraph &g, const CompetitionResult &res, const GrowthTrace &trace);

}  // namespace cmcomp
