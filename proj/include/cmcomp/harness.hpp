#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "cmcomp/coloring.hpp"
#include "cmcomp/theory.hpp"

namespace cmcomp {

// One flat record. Values are int64, double or string; the same row renders as
// a CSV line or a JSON object with identical number formatting.
using Scalar = std::variant<std::int64_t, double, std::string>;
struct Row {
    std::vector<std::pair<std::string, Scalar>> cells;
    void add(std::string key, Scalar v) { cells.emplace_back(std::move(key), std::move(v)); }
};

// shortest round-trip form; "nan", "inf", "-inf" for non-finite values
std::string format_scalar(const Scalar &v);

void write_csv(std::ostream &os, const std::vector<std::string> &header, const std::vector<Row> &rows);
// non-finite doubles become null
void write_json_object(std::ostream &os, const Row &row);

Row theory_row(const TheoryPrediction &p);

struct CompeteConfig {
    std::int64_t n = 100000;
    double tau = 2.5;
    double rho = 0.05;
    std::int64_t trials = 1;
    std::uint64_t seed = 0;
    double tie_blue_prob = 0.5;
    int jobs = 0;
};

// "blue" fields follow the theory convention: the colour whose source has the
// smaller Y. B_inf and R_inf are the simulated colours (red started at r0).
struct RunRecord {
    std::int64_t run_id = 0;
    std::uint64_t seed = 0;  // trial seed
    std::int64_t n = 0;
    double tau = 0.0, rho = 0.0;
    double yr = 0.0, yb = 0.0, q = NAN;
    std::int64_t T_r = -1, T_b = -1;
    double b_r = NAN, b_b = NAN;
    std::string case_kind = "none", regime = "none";
    std::int64_t predicted_distance = -1;
    std::int64_t measured_distance = -1;  // -1 when the sources are disconnected
    std::int64_t B_inf = 0, R_inf = 0, uncolored = 0;
    std::int64_t max_blue_degree = 0;
    double blue_mass_exponent_pred = NAN, blue_mass_exponent_meas = NAN;
    double losing_fraction = NAN, loser_fraction = NAN;
    bool ln_ok = false;
    // growth trace degenerate, or no prediction exists for the extracted Y pair
    bool degenerate = true;
    std::string loser = "none";
    double runtime_ms = 0.0;
};

RunRecord run_one(const CompeteConfig &c, std::int64_t run_id);
std::vector<RunRecord> run_compete(const CompeteConfig &c);
std::vector<RunRecord> run_compete_serial(const CompeteConfig &c);

std::vector<std::string> run_record_header(bool canonical);
Row to_row(const RunRecord &r, bool canonical);

struct DistanceSummary {
    std::int64_t n = 0, pairs = 0, degenerate = 0;
    double mean_abs_error = NAN;  // over non-degenerate pairs
    double frac_within_one = 0.0; // denominator: all pairs, degenerate count as misses
    double frac_exact = 0.0;
};
DistanceSummary summarize_distances(std::int64_t n, const std::vector<RunRecord> &records);
// base.n is ignored; one compete batch per grid value, seeded by (seed, n)
std::vector<DistanceSummary> run_distances(const CompeteConfig &base, const std::vector<std::int64_t> &n_grid);

std::vector<std::string> coloring_header();
Row to_row(const SweepCell &c);

struct BpLimitRecord {
    std::int64_t trial = 0;
    std::int64_t stopped_at = -1;
    double z = NAN, y = NAN;
    bool censored = false;
};
std::vector<BpLimitRecord> run_bp_limit(double tau, RootLaw root, double threshold, std::int64_t trials,
                                        std::uint64_t seed, int jobs);

// Full CLI. Returns the exit code: 0 ok, 2 usage, 1 runtime failure.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace cmcomp
