#include "cmcomp/harness.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmcomp/competition.hpp"
#include "cmcomp/graph.hpp"
#include "cmcomp/gw.hpp"
#include "cmcomp/parallel.hpp"
#include "cmcomp/rng.hpp"

namespace cmcomp {

std::string format_scalar(const Scalar &v) {
    if (const auto *i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto *s = std::get_if<std::string>(&v)) return *s;
    const double d = std::get<double>(v);
    if (std::isnan(d)) return "nan";
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream &os, const std::vector<std::string> &header, const std::vector<Row> &rows) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto &r : rows) {
        if (r.cells.size() != header.size()) throw std::logic_error("row width does not match header");
        for (std::size_t i = 0; i < r.cells.size(); ++i) os << (i ? "," : "") << format_scalar(r.cells[i].second);
        os << '\n';
    }
}

void write_json_object(std::ostream &os, const Row &row) {
    os << '{';
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
        const auto &[k, v] = row.cells[i];
        os << (i ? "," : "") << nlohmann::json(k).dump() << ':';
        if (const auto *s = std::get_if<std::string>(&v))
            os << nlohmann::json(*s).dump();
        else if (const auto *d = std::get_if<double>(&v); d && !std::isfinite(*d))
            os << "null";
        else
            os << format_scalar(v);
    }
    os << '}';
}

namespace {

std::vector<std::string> keys_of(const Row &r) {
    std::vector<std::string> k;
    for (const auto &c : r.cells) k.push_back(c.first);
    return k;
}

std::int64_t flag(bool b) { return b ? 1 : 0; }

}  // namespace

Row theory_row(const TheoryPrediction &p) {
    constexpr double nan = NAN;
    Row r;
    r.add("n", p.input.n);
    r.add("tau", p.input.tau);
    r.add("Yr", p.input.y_r);
    r.add("Yb", p.input.y_b);
    r.add("swapped", flag(p.swapped));
    r.add("T_r", std::int64_t{p.tf.T_r});
    r.add("T_b", std::int64_t{p.tf.T_b});
    r.add("b_r", p.tf.b_r);
    r.add("b_b", p.tf.b_b);
    r.add("q", p.cr.q);
    r.add("case", to_string(p.cr.kind));
    r.add("regime", to_string(p.cr.regime));
    r.add("alpha_r", p.peak.alpha_r);
    r.add("alpha_b", p.peak.alpha_b);
    r.add("delta_r", p.peak.delta_r);
    r.add("delta_b", p.peak.delta_b);
    r.add("gamma", p.peak.gamma.value_or(nan));
    r.add("t_c", p.tc ? p.tc->t_c : nan);
    r.add("frac2tc", p.tc ? p.tc->frac2tc : nan);
    r.add("xi", p.tc ? p.tc->xi : nan);
    r.add("t_b", p.tc ? std::int64_t{p.tc->t_b} : std::int64_t{-1});
    r.add("distance", std::int64_t{p.distance});
    r.add("f_n", p.osc ? p.osc->f_n : nan);
    r.add("h_n", p.osc ? p.osc->h_n : nan);
    r.add("h_half_edge", p.osc ? p.osc->h_half_edge : nan);
    r.add("h_paths", p.osc ? p.osc->h_paths : nan);
    r.add("blue_mass_exponent", p.blue_mass_exponent.value_or(nan));
    r.add("max_degree_exponent", p.max_degree_exponent);
    return r;
}

// ---- compete ---------------------------------------------------------------

namespace {

RunRecord run_one_impl(const CompeteConfig &c, std::int64_t run_id, bool serial) {
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord r;
    r.run_id = run_id;
    r.seed = trial_seed(c.seed, static_cast<std::uint64_t>(run_id));
    r.n = c.n;
    r.tau = c.tau;
    r.rho = c.rho;

    const DegreeLaw law(c.tau);
    const std::uint64_t ts = r.seed;
    const DegreeSequence ds = serial ? sample_degree_sequence_serial(c.n, law, stream_key(ts, 1))
                                     : sample_degree_sequence(c.n, law, stream_key(ts, 1));
    r.ln_ok = ds.ln_in_band(law.mean());
    const Multigraph g = uniform_matching(ds, stream_key(ts, 2));

    Rng pick(ts, 4);
    const auto r0 = static_cast<vertex_t>(pick.below(static_cast<std::uint64_t>(c.n)));
    auto b0 = static_cast<vertex_t>(pick.below(static_cast<std::uint64_t>(c.n - 1)));
    if (b0 >= r0) ++b0;

    const GrowthTrace tr = extract_growth(g, r0, b0, c.rho, c.tau);
    const CompetitionResult res = run_competition(g, r0, b0, c.tie_blue_prob, stream_key(ts, 3));
    r.B_inf = res.blue_count;
    r.R_inf = res.red_count;
    r.uncolored = res.uncolored;
    r.measured_distance = tr.source_distance == kUnreached ? -1 : tr.source_distance;
    r.yr = tr.y_red;
    r.yb = tr.y_blue;

    if (!tr.degenerate) {
        const Outcome o = classify_outcome(g, res, tr);
        r.q = o.q;
        r.loser = o.loser == Color::Blue ? "blue" : "red";
        r.losing_fraction = o.losing_fraction;
        r.loser_fraction = o.loser_fraction;
        r.max_blue_degree = o.max_loser_degree;
        r.blue_mass_exponent_meas = o.log_loser_mass;
        try {
            const TheoryPrediction p = predict({static_cast<double>(c.n), c.tau, tr.y_red, tr.y_blue});
            r.T_r = p.tf.T_r;
            r.T_b = p.tf.T_b;
            r.b_r = p.tf.b_r;
            r.b_b = p.tf.b_b;
            r.case_kind = to_string(p.cr.kind);
            r.regime = to_string(p.cr.regime);
            r.predicted_distance = p.distance;
            r.blue_mass_exponent_pred = p.blue_mass_exponent.value_or(NAN);
            r.degenerate = false;
        } catch (const std::domain_error &) {
            // Y pair outside the range where the times are non-negative
        }
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

void check(const CompeteConfig &c) {
    if (c.n < 16) throw std::invalid_argument("n must be at least 16");
    if (c.n > std::int64_t{1} << 30) throw std::invalid_argument("n too large for 32-bit vertex ids");
    if (!(c.tau > 2.0 && c.tau < 3.0)) throw std::invalid_argument("tau must lie in (2,3)");
    if (!(c.rho > 0.0 && c.rho < 1.0)) throw std::invalid_argument("rho must lie in (0,1)");
    if (c.trials < 0) throw std::invalid_argument("trials must be non-negative");
    if (!(c.tie_blue_prob >= 0.0 && c.tie_blue_prob <= 1.0)) throw std::invalid_argument("tie probability outside [0,1]");
}

}  // namespace

RunRecord run_one(const CompeteConfig &c, std::int64_t run_id) {
    check(c);
    return run_one_impl(c, run_id, false);
}

std::vector<RunRecord> run_compete(const CompeteConfig &c) {
    check(c);
    std::vector<RunRecord> out(static_cast<std::size_t>(c.trials));
    parallel_trials(c.trials, c.jobs, [&](std::int64_t i) { out[i] = run_one_impl(c, i, false); });
    return out;
}

std::vector<RunRecord> run_compete_serial(const CompeteConfig &c) {
    check(c);
    std::vector<RunRecord> out(static_cast<std::size_t>(c.trials));
    serial_trials(c.trials, [&](std::int64_t i) { out[i] = run_one_impl(c, i, true); });
    return out;
}

std::vector<std::string> run_record_header(bool canonical) {
    std::vector<std::string> h{"run_id",
                               "seed",
                               "n",
                               "tau",
                               "rho",
                               "Yr_n",
                               "Yb_n",
                               "q",
                               "T_r",
                               "T_b",
                               "b_r",
                               "b_b",
                               "case",
                               "regime",
                               "predicted_distance",
                               "measured_distance",
                               "B_inf",
                               "R_inf",
                               "uncolored",
                               "max_blue_degree",
                               "blue_mass_exponent_pred",
                               "blue_mass_exponent_meas",
                               "Ln_ok",
                               "degenerate",
                               "loser",
                               "losing_fraction",
                               "loser_fraction"};
    if (!canonical) h.push_back("runtime_ms");
    return h;
}

Row to_row(const RunRecord &r, bool canonical) {
    Row row;
    row.add("run_id", r.run_id);
    row.add("seed", std::to_string(r.seed));  // unsigned 64-bit, kept exact
    row.add("n", r.n);
    row.add("tau", r.tau);
    row.add("rho", r.rho);
    row.add("Yr_n", r.yr);
    row.add("Yb_n", r.yb);
    row.add("q", r.q);
    row.add("T_r", r.T_r);
    row.add("T_b", r.T_b);
    row.add("b_r", r.b_r);
    row.add("b_b", r.b_b);
    row.add("case", r.case_kind);
    row.add("regime", r.regime);
    row.add("predicted_distance", r.predicted_distance);
    row.add("measured_distance", r.measured_distance);
    row.add("B_inf", r.B_inf);
    row.add("R_inf", r.R_inf);
    row.add("uncolored", r.uncolored);
    row.add("max_blue_degree", r.max_blue_degree);
    row.add("blue_mass_exponent_pred", r.blue_mass_exponent_pred);
    row.add("blue_mass_exponent_meas", r.blue_mass_exponent_meas);
    row.add("Ln_ok", flag(r.ln_ok));
    row.add("degenerate", flag(r.degenerate));
    row.add("loser", r.loser);
    row.add("losing_fraction", r.losing_fraction);
    row.add("loser_fraction", r.loser_fraction);
    if (!canonical) row.add("runtime_ms", r.runtime_ms);
    return row;
}

// ---- distances -------------------------------------------------------------

DistanceSummary summarize_distances(std::int64_t n, const std::vector<RunRecord> &records) {
    DistanceSummary s;
    s.n = n;
    s.pairs = static_cast<std::int64_t>(records.size());
    double err_sum = 0.0;
    std::int64_t used = 0, within = 0, exact = 0;
    for (const auto &r : records) {
        if (r.degenerate || r.measured_distance < 0) {
            ++s.degenerate;
            continue;
        }
        const auto e = std::abs(r.measured_distance - r.predicted_distance);
        err_sum += static_cast<double>(e);
        ++used;
        within += e <= 1;
        exact += e == 0;
    }
    if (used > 0) s.mean_abs_error = err_sum / static_cast<double>(used);
    if (s.pairs > 0) {
        s.frac_within_one = static_cast<double>(within) / static_cast<double>(s.pairs);
        s.frac_exact = static_cast<double>(exact) / static_cast<double>(s.pairs);
    }
    return s;
}

std::vector<DistanceSummary> run_distances(const CompeteConfig &base, const std::vector<std::int64_t> &n_grid) {
    for (std::size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("n grid must be strictly ascending");
    std::vector<DistanceSummary> out;
    for (std::int64_t n : n_grid) {
        CompeteConfig c = base;
        c.n = n;
        c.seed = stream_key(base.seed, 0x646973ULL, static_cast<std::uint64_t>(n));
        out.push_back(summarize_distances(n, run_compete(c)));
    }
    return out;
}

// ---- coloring / bp-limit ---------------------------------------------------

std::vector<std::string> coloring_header() {
    return {"gamma", "Q", "rule", "trials", "p_blue", "p_red", "ci_halfwidth", "censored_fraction"};
}

Row to_row(const SweepCell &c) {
    Row r;
    r.add("gamma", c.gamma);
    r.add("Q", c.Q);
    r.add("rule", std::int64_t{c.rule == StartRule::Rule1 ? 1 : 2});
    r.add("trials", c.probs.trials);
    r.add("p_blue", c.probs.p_blue);
    r.add("p_red", c.probs.p_red);
    r.add("ci_halfwidth", c.probs.ci_halfwidth);
    r.add("censored_fraction", c.probs.censored_fraction);
    return r;
}

std::vector<BpLimitRecord> run_bp_limit(double tau, RootLaw root, double threshold, std::int64_t trials,
                                        std::uint64_t seed, int jobs) {
    if (!(tau > 2.0 && tau < 3.0)) throw std::invalid_argument("tau must lie in (2,3)");
    if (!(threshold > 1.0)) throw std::invalid_argument("threshold must exceed 1");
    const SizeBiasedLaw law{DegreeLaw(tau)};
    std::vector<BpLimitRecord> out(static_cast<std::size_t>(trials));
    // same per-trial seeds as sample_y_distribution
    parallel_trials(trials, jobs, [&](std::int64_t i) {
        const auto t = simulate_until(law, root, StopKind::Population, threshold, kDefaultPopCap,
                                      trial_seed(seed, static_cast<std::uint64_t>(i)));
        BpLimitRecord r;
        r.trial = i;
        r.stopped_at = t.stopped_at;
        r.censored = t.censored();
        if (!r.censored) {
            r.z = t.z[t.stopped_at];
            r.y = y_estimate(t, tau);
        }
        out[i] = r;
    });
    return out;
}

// ---- CLI -------------------------------------------------------------------

namespace {

struct Emit {
    std::ostream *os;
    std::ofstream file;
    explicit Emit(const std::string &path, std::ostream &fallback) : os(&fallback) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open " + path);
            os = &file;
        }
    }
};

void write_rows(std::ostream &os, const std::vector<std::string> &header, const std::vector<Row> &rows, bool json) {
    if (!json) {
        write_csv(os, header, rows);
        return;
    }
    os << '[';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) os << ',';
        os << '\n';
        write_json_object(os, rows[i]);
    }
    os << "\n]\n";
}

RootLaw parse_root(const std::string &s) { return s == "F" ? RootLaw::F : RootLaw::FStar; }

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"competition on configuration-model graphs"};
    app.require_subcommand(1);

    double n = 0, tau = 0, yr = 0, yb = 0, rho = 0.05, tie = 0.5, threshold = 1e6, pop_cap = kDefaultPopCap;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    int jobs = 0, rule = 1;
    std::string out_path, root = "F";
    bool as_json = false, as_csv = false, canonical = false;
    std::vector<double> q_grid, gamma_grid;
    std::vector<std::int64_t> n_grid;

    auto common = [&](CLI::App *s, bool stochastic) {
        s->add_option("--out", out_path, "output file (default stdout)");
        auto *j = s->add_flag("--json", as_json, "JSON output");
        auto *c = s->add_flag("--csv", as_csv, "CSV output");
        j->excludes(c);
        if (stochastic) {
            s->add_option("--seed", seed, "master seed")->required();
            s->add_option("--jobs", jobs, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
        }
    };
    const auto tau_range = CLI::Range(2.0, 3.0);

    auto *theory = app.add_subcommand("theory", "print the theoretical prediction for (n, tau, Yr, Yb)");
    theory->add_option("--n", n, "graph size")->required()->check(CLI::Range(16.0, 1e300));
    theory->add_option("--tau", tau, "power-law exponent in (2,3)")->required()->check(tau_range);
    theory->add_option("--yr", yr, "red Y value")->required()->check(CLI::PositiveNumber);
    theory->add_option("--yb", yb, "blue Y value")->required()->check(CLI::PositiveNumber);
    common(theory, false);

    auto *compete = app.add_subcommand("compete", "simulate competitions, one CSV row per run");
    compete->add_option("--n", n, "graph size")->required()->check(CLI::Range(16.0, 1073741824.0));
    compete->add_option("--tau", tau, "power-law exponent in (2,3)")->required()->check(tau_range);
    compete->add_option("--rho", rho, "growth threshold exponent")->check(CLI::Range(0.0, 1.0));
    compete->add_option("--trials", trials, "number of runs")->required()->check(CLI::NonNegativeNumber);
    compete->add_option("--tie-blue-prob", tie, "P(blue) on a tie")->check(CLI::Range(0.0, 1.0));
    compete->add_flag("--canonical", canonical, "omit wall-clock columns");
    common(compete, true);

    auto *distances = app.add_subcommand("distances", "measured vs predicted distances across an n grid");
    distances->add_option("--n-grid,--n", n_grid, "ascending graph sizes")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(std::int64_t{16}, std::int64_t{1} << 30));
    distances->add_option("--tau", tau, "power-law exponent in (2,3)")->required()->check(tau_range);
    distances->add_option("--rho", rho, "growth threshold exponent")->check(CLI::Range(0.0, 1.0));
    distances->add_option("--trials", trials, "source pairs per n")->required()->check(CLI::NonNegativeNumber);
    distances->add_option("--tie-blue-prob", tie, "P(blue) on a tie")->check(CLI::Range(0.0, 1.0));
    common(distances, true);

    auto *coloring = app.add_subcommand("coloring", "root colour probabilities over a (Q, gamma) grid");
    coloring->add_option("--tau", tau, "power-law exponent in (2,3)")->required()->check(tau_range);
    coloring->add_option("--q-grid", q_grid, "Q values")->required()->delimiter(',')->check(CLI::Range(2.0, 1e300));
    coloring->add_option("--gamma-grid", gamma_grid, "gamma values")->required()->delimiter(',');
    coloring->add_option("--rule", rule, "starting rule, 1 or 2")->check(CLI::IsMember({1, 2}));
    coloring->add_option("--root", root, "root offspring law")->check(CLI::IsMember({"F", "Fstar"}));
    coloring->add_option("--trials", trials, "trials per cell")->required()->check(CLI::PositiveNumber);
    coloring->add_option("--tie-blue-prob", tie, "P(blue) in the mixed band and on flow ties")
        ->check(CLI::Range(0.0, 1.0));
    coloring->add_option("--pop-cap", pop_cap, "censor generations larger than this")->check(CLI::PositiveNumber);
    common(coloring, true);

    auto *bp = app.add_subcommand("bp-limit", "per-trial Y estimates of the branching process");
    bp->add_option("--tau", tau, "power-law exponent in (2,3)")->required()->check(tau_range);
    bp->add_option("--threshold", threshold, "population stop")->check(CLI::Range(2.0, 1e300));
    bp->add_option("--root", root, "root offspring law")->check(CLI::IsMember({"F", "Fstar"}));
    bp->add_option("--trials", trials, "number of trials")->required()->check(CLI::NonNegativeNumber);
    common(bp, true);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    if (tau == 2.0 || tau == 3.0) {
        err << "tau must lie strictly inside (2,3)\n";
        return 2;
    }

    try {
        if (theory->parsed()) {
            const Row row = theory_row(predict({n, tau, yr, yb}));
            Emit e(out_path, out);
            if (as_csv)
                write_csv(*e.os, keys_of(row), {row});
            else {
                write_json_object(*e.os, row);
                *e.os << '\n';
            }
            return 0;
        }
        if (compete->parsed() || distances->parsed()) {
            if (!(rho > 0.0 && rho < 1.0)) {
                err << "rho must lie strictly inside (0,1)\n";
                return 2;
            }
            CompeteConfig c;
            c.tau = tau;
            c.rho = rho;
            c.trials = trials;
            c.seed = seed;
            c.tie_blue_prob = tie;
            c.jobs = jobs;
            if (compete->parsed()) {
                c.n = static_cast<std::int64_t>(n);
                std::vector<Row> rows;
                for (const auto &r : run_compete(c)) rows.push_back(to_row(r, canonical));
                Emit e(out_path, out);
                write_rows(*e.os, run_record_header(canonical), rows, as_json);
                return 0;
            }
            std::vector<Row> rows;
            for (const auto &s : run_distances(c, n_grid)) {
                Row r;
                r.add("n", s.n);
                r.add("pairs", s.pairs);
                r.add("degenerate", s.degenerate);
                r.add("mean_abs_error", s.mean_abs_error);
                r.add("frac_within_one", s.frac_within_one);
                r.add("frac_exact", s.frac_exact);
                rows.push_back(std::move(r));
            }
            Emit e(out_path, out);
            write_rows(*e.os, {"n", "pairs", "degenerate", "mean_abs_error", "frac_within_one", "frac_exact"}, rows,
                       as_json);
            return 0;
        }
        if (coloring->parsed()) {
            for (double g : gamma_grid) {
                if (!(g > 1.0 && g < 1.0 / (tau - 2.0))) {
                    err << "gamma values must lie in (1, 1/(tau-2))\n";
                    return 2;
                }
            }
            const auto cells = gamma_sweep(tau, rule == 1 ? StartRule::Rule1 : StartRule::Rule2, q_grid, gamma_grid,
                                           trials, seed, jobs, parse_root(root), tie, pop_cap);
            std::vector<Row> rows;
            for (const auto &c : cells) {
                if (c.probs.censored_fraction > 0.05)
                    err << "warning: Q=" << format_scalar(c.Q) << " gamma=" << format_scalar(c.gamma)
                        << " censored fraction " << format_scalar(c.probs.censored_fraction) << '\n';
                rows.push_back(to_row(c));
            }
            Emit e(out_path, out);
            write_rows(*e.os, coloring_header(), rows, as_json);
            return 0;
        }
        if (bp->parsed()) {
            const auto recs = run_bp_limit(tau, parse_root(root), threshold, trials, seed, jobs);
            std::vector<Row> rows;
            std::int64_t cens = 0;
            for (const auto &b : recs) {
                Row r;
                r.add("trial", b.trial);
                r.add("stopped_at", b.stopped_at);
                r.add("z", b.z);
                r.add("y", b.y);
                r.add("censored", flag(b.censored));
                cens += b.censored;
                rows.push_back(std::move(r));
            }
            if (trials > 0 && static_cast<double>(cens) > 0.05 * static_cast<double>(trials))
                err << "warning: censored fraction " << format_scalar(static_cast<double>(cens) / trials) << '\n';
            Emit e(out_path, out);
            write_rows(*e.os, {"trial", "stopped_at", "z", "y", "censored"}, rows, as_json);
            return 0;
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace cmcomp
