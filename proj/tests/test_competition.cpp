#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cmcomp/competition.hpp"
#include "cmcomp/rng.hpp"
#include "cmcomp/stats.hpp"
#include "oracle.hpp"

using namespace cmcomp;

namespace {

Multigraph cycle(vertex_t n) {
    std::vector<std::pair<vertex_t, vertex_t>> e;
    for (vertex_t v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
    return from_edges(n, e);
}

}  // namespace

TEST_CASE("sources must differ") {
    const auto g = cycle(4);
    CHECK_THROWS(run_competition(g, 1, 1, 0.5, 0));
    CHECK_THROWS(run_competition(g, 0, 7, 0.5, 0));
}

TEST_CASE("4-cycle with adjacent sources is deterministic") {
    const auto g = cycle(4);
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto r = run_competition(g, 0, 1, 0.5, s);
        CHECK(r.red_count == 2);
        CHECK(r.blue_count == 2);
        CHECK(oracle::invariant_violations(g, r) == 0);
    }
}

TEST_CASE("4-cycle with opposite sources") {
    const auto g = cycle(4);
    const int N = 100000;
    std::vector<int> hist(5, 0);
    double sum = 0;
    for (int s = 0; s < N; ++s) {
        const auto r = run_competition(g, 0, 2, 0.5, mix64(s));
        ++hist[r.blue_count];
        sum += static_cast<double>(r.blue_count);
    }
    const double p[5] = {0, 0.25, 0.5, 0.25, 0};
    for (int b = 0; b < 5; ++b) {
        const double se = std::sqrt(p[b] * (1 - p[b]) / N);
        CHECK(std::abs(hist[b] / double(N) - p[b]) <= 3 * se);
    }
    CHECK(sum / N == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("mean blue mass on six degree-2 vertices against enumeration") {
    const std::vector<std::int64_t> deg(6, 2);
    const auto law = oracle::exact_law(deg, 0.5);
    double mean_b = 0, second = 0, total = 0;
    for (const auto &[k, p] : law) {
        mean_b += p * static_cast<double>(std::get<0>(k));
        second += p * static_cast<double>(std::get<0>(k) * std::get<0>(k));
        total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    const double var = second - mean_b * mean_b;
    const int N = 100000;
    double acc = 0;
    const auto ds = make_degree_sequence(deg);
    for (int i = 0; i < N; ++i) {
        const auto g = uniform_matching(ds, stream_key(5, i, 1));
        acc += static_cast<double>(run_competition(g, 0, 1, 0.5, stream_key(5, i, 2)).blue_count);
    }
    CHECK(std::abs(acc / N - mean_b) <= 3 * std::sqrt(var / N));
}

TEST_CASE("structural invariants on sampled graphs") {
    for (double tau : {2.2, 2.5, 2.8}) {
        const DegreeLaw law(tau);
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto g = uniform_matching(sample_degree_sequence(30000, law, s), s + 1);
            Rng pick(s, 9);
            const auto r0 = static_cast<vertex_t>(pick.below(g.n()));
            auto b0 = static_cast<vertex_t>(pick.below(g.n() - 1));
            if (b0 >= r0) ++b0;
            const auto res = run_competition(g, r0, b0, 0.5, s + 2);
            CHECK(oracle::invariant_violations(g, res) == 0);
            // same seed, same colouring
            CHECK(run_competition(g, r0, b0, 0.5, s + 2).color == res.color);
        }
    }
}

TEST_CASE("tie rule is symmetric under exchanging the sources") {
    const DegreeLaw law(2.5);
    const int N = 10000;
    std::vector<double> blue_a, red_b;
    for (int i = 0; i < N; ++i) {
        const auto ga = uniform_matching(sample_degree_sequence_serial(300, law, stream_key(1, i)), stream_key(2, i));
        blue_a.push_back(static_cast<double>(run_competition(ga, 0, 1, 0.5, stream_key(3, i)).blue_count));
        const auto gb = uniform_matching(sample_degree_sequence_serial(300, law, stream_key(4, i)), stream_key(5, i));
        red_b.push_back(static_cast<double>(run_competition(gb, 1, 0, 0.5, stream_key(6, i)).red_count));
    }
    CHECK(ks_two_sample(blue_a, red_b) <= 0.05);
}

TEST_CASE("growth trace on a cycle never reaches 3") {
    const auto g = cycle(100);
    const double rho = std::log(3.0) / std::log(100.0);
    const auto tr = extract_growth(g, 0, 50, rho, 2.5);
    CHECK(tr.degenerate);
    CHECK(tr.stop == -1);
    REQUIRE(tr.z_red.size() == 51);
    for (std::size_t k = 1; k < 50; ++k) CHECK(tr.z_red[k] == 2);
    CHECK(tr.z_red[50] == 1);  // antipode
}

TEST_CASE("first generation is the set of distinct neighbours") {
    const DegreeLaw law(2.5);
    const auto g = uniform_matching(sample_degree_sequence(20000, law, 3), 4);
    for (vertex_t r0 = 0; r0 < 50; ++r0) {
        std::vector<vertex_t> nb(g.neighbors(r0).begin(), g.neighbors(r0).end());
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        nb.erase(std::remove(nb.begin(), nb.end(), r0), nb.end());
        const auto tr = extract_growth(g, r0, r0 == 0 ? 1 : 0, 0.9, 2.5);
        REQUIRE(tr.z_red.size() >= 2);
        CHECK(tr.z_red[1] == static_cast<std::int64_t>(nb.size()));
    }
}

TEST_CASE("growth trace stops at the first layer above the threshold") {
    const DegreeLaw law(2.5);
    const auto g = uniform_matching(sample_degree_sequence(100000, law, 8), 9);
    const auto tr = extract_growth(g, 10, 20, 0.3, 2.5);
    REQUIRE_FALSE(tr.degenerate);
    const double thr = std::pow(100000.0, 0.3);
    for (std::int32_t k = 0; k < tr.stop; ++k) CHECK(std::max(tr.z_red[k], tr.z_blue[k]) < thr);
    CHECK(std::max(tr.z_red[tr.stop], tr.z_blue[tr.stop]) >= thr);
    CHECK(tr.y_red == doctest::Approx(std::pow(0.5, tr.stop) * std::log(double(tr.z_red[tr.stop]))));
    CHECK(tr.y_red > 0.0);
    CHECK(tr.y_blue > 0.0);
    CHECK(tr.source_distance == bfs_layers(g, 10).dist[20]);
}

TEST_CASE("outcome on the symmetric 4-cycle") {
    const auto g = cycle(4);
    int hits = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto r = run_competition(g, 0, 2, 0.5, s);
        const auto tr = extract_growth(g, 0, 2, 0.5, 2.5);
        REQUIRE_FALSE(tr.degenerate);
        const auto o = classify_outcome(g, r, tr);
        CHECK(r.blue_count >= 1);
        CHECK(r.red_count >= 1);
        CHECK(o.q == doctest::Approx(1.0));
        CHECK(o.source_distance == 2);
        if (r.blue_count == 2) {
            ++hits;
            CHECK(o.losing_fraction == doctest::Approx(0.5));
        }
    }
    CHECK(hits > 0);
    GrowthTrace bad;
    CHECK_THROWS(classify_outcome(g, run_competition(g, 0, 2, 0.5, 0), bad));
}

TEST_CASE("BFS-extracted Y at n = 1e6") {
    const DegreeLaw law(2.5);
    std::vector<double> ys;
    for (std::uint64_t s = 0; s < 500; ++s) {
        const auto g = uniform_matching(sample_degree_sequence(1000000, law, stream_key(s, 1)), stream_key(s, 2));
        Rng pick(s, 3);
        const auto r0 = static_cast<vertex_t>(pick.below(g.n()));
        const auto tr = extract_growth(g, r0, r0 == 0 ? 1 : 0, 0.05, 2.5);
        if (tr.stop >= 0) ys.push_back(tr.y_red);
    }
    REQUIRE(ys.size() >= 450);
    CHECK(median(ys) > 0.0);
    const double m = static_cast<double>(ys.size());
    for (double x : {4.0, 6.0, 8.0}) {
        const double frac = static_cast<double>(std::count_if(ys.begin(), ys.end(), [&](double y) { return y > x; })) / m;
        const double bound = std::exp(-x / 2);
        CHECK(frac <= bound + 3 * std::sqrt(bound * (1 - bound) / m));
    }
}

TEST_CASE("Y is insensitive to the choice of rho") {
    // same source, two thresholds: the estimates should rank sources alike
    const DegreeLaw law(2.5);
    std::vector<double> a, b;
    for (std::uint64_t s = 0; s < 60; ++s) {
        const auto g = uniform_matching(sample_degree_sequence(300000, law, stream_key(s, 11)), stream_key(s, 12));
        const auto ta = extract_growth(g, 0, 1, 0.05, 2.5), tb = extract_growth(g, 0, 1, 0.15, 2.5);
        if (ta.stop < 0 || tb.stop < 0) continue;
        a.push_back(ta.y_red);
        b.push_back(tb.y_red);
    }
    REQUIRE(a.size() >= 50);
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i) d.push_back(std::abs(a[i] - b[i]));
    MESSAGE("median |Y(0.05) - Y(0.15)| = " << median(d));
    CHECK(median(d) <= 0.5);
}
