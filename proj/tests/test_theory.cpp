#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cmcomp/theory.hpp"
#include "draws.hpp"

using namespace cmcomp;

namespace {

// 50-digit evaluations at n = 1e6, tau = 2.5
constexpr double kBr = 0.2032544726997217;   // Y = 1
constexpr double kBb = 0.9402200668659279;   // Y = 0.6 and Y = 0.3
constexpr double kDeltaR = 0.6633486176978508;

TheoryInput at(double yr, double yb) { return {1e6, 2.5, yr, yb}; }

double abs_log(double tau) { return std::fabs(std::log(tau - 2.0)); }

// Y whose stopping expression equals x exactly
double y_for(double n, double tau, double x) {
    return std::exp(std::log(std::log(n)) - abs_log(tau) * x) / (tau - 1.0);
}

int indicator(const TheoryInput &in, const TimesFractions &tf) {
    return in.tau - 1.0 > std::pow(in.tau - 2.0, tf.b_r) + std::pow(in.tau - 2.0, tf.b_b) ? 1 : 0;
}

}  // namespace

TEST_CASE("times and fractions at n = 1e6") {
    const auto a = times_and_fractions(at(1.0, 0.6));
    CHECK(a.T_r == 2);
    CHECK(a.T_b == 2);
    CHECK(a.b_r == doctest::Approx(kBr).epsilon(1e-9));
    CHECK(a.b_b == doctest::Approx(kBb).epsilon(1e-9));
    const auto b = times_and_fractions(at(1.0, 0.3));
    CHECK(b.T_b == 3);
    CHECK(b.b_b == doctest::Approx(kBb).epsilon(1e-9));
    CHECK(a.x_r == doctest::Approx(a.T_r + a.b_r + 1));
}

TEST_CASE("integer stopping expression has zero fraction") {
    for (int k : {1, 2, 4}) {
        const double y = y_for(1e6, 2.5, k);
        const auto tf = times_and_fractions({1e6, 2.5, y, y});
        CHECK(tf.T_r == k - 1);
        CHECK(tf.b_r == 0.0);
    }
}

TEST_CASE("invalid theory input") {
    CHECK_THROWS(times_and_fractions(at(50.0, 0.6)));  // time below zero
    CHECK_THROWS(times_and_fractions({1e6, 3.0, 1.0, 0.6}));
    CHECK_THROWS(times_and_fractions({1e6, 2.5, 0.0, 0.6}));
    CHECK_THROWS(times_and_fractions({10.0, 2.5, 1.0, 0.6}));
}

TEST_CASE("climbing layers") {
    // base case at tau = 2.5: e_0 = 2
    const double n = 1e6, C = 8.0, ln = std::log(n);
    CHECK(climb_layer_log(0, 0.1, 2.5, n, C) == doctest::Approx(0.2 * ln - 2.0 * std::log(C * ln)));
    // e_1 = 6 at tau = 2.5
    CHECK(climb_layer_log(1, 0.1, 2.5, n, C) == doctest::Approx(0.4 * ln - 6.0 * std::log(C * ln)));
    CHECK_THROWS(climb_layer_log(-1, 0.1, 2.5, n, C));

    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const double rho = 0.01 + 0.49 * u(g), tau = 2.05 + 0.9 * u(g), nn = std::pow(10.0, 3.0 + 297.0 * u(g));
        const double lc = std::log(C * std::log(nn));
        double rec = (rho * std::log(nn) - lc) / (tau - 2.0);
        for (int i = 0; i <= 10; ++i) {
            const double closed = climb_layer_log(i, rho, tau, nn, C);
            const double e_i = (std::pow(1.0 / (tau - 2.0), i + 1) - 1.0) / (3.0 - tau);
            const double scale = rho * std::pow(tau - 2.0, -(i + 1)) * std::log(nn) + e_i * lc;
            if (std::fabs(closed - rec) > 1e-9 * scale) ++bad;
            rec = (rec - lc) / (tau - 2.0);
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("i_star") {
    const auto [i, b] = i_star(0.1, 2.5);
    CHECK(i == 1);
    CHECK(b == doctest::Approx(0.736965594166206).epsilon(1e-9));
    const auto one = i_star(0.5 / 1.5, 2.5);
    CHECK(one.first == 0);
    CHECK(one.second == 0.0);
    CHECK_THROWS(i_star(0.9, 2.5));
    CHECK_THROWS(i_star(0.0, 2.5));

    // leading-order definitional search: first i with u_i <= n^{1/(tau-1)} < u_{i+1}
    std::mt19937_64 g(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const double tau = 2.05 + 0.9 * u(g);
        const double rho = (tau - 2.0) / (tau - 1.0) * std::exp(-6.0 * u(g));
        int found = -1;
        for (int k = 0; k < 10000 && found < 0; ++k)
            if (rho * std::pow(tau - 2.0, -(k + 1)) <= 1.0 / (tau - 1.0) &&
                1.0 / (tau - 1.0) < rho * std::pow(tau - 2.0, -(k + 2)))
                found = k;
        try {
            if (i_star(rho, tau).first != found) ++bad;
        } catch (const std::domain_error &) {
            ++bad;
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("avalanche layers") {
    const double n = 1e6, C = 8.0, ln = std::log(n), lc = std::log(C * ln);
    CHECK(avalanche_layer_log(1, 0.4, 0.3, 2.5, n, C) == doctest::Approx(0.4 * ln + 0.3 * lc));
    CHECK_THROWS(avalanche_layer_log(0, 0.4, 0.3, 2.5, n, C));
    CHECK(avalanche_layer_log(400, 0.4, 0.3, 2.5, n, C) == doctest::Approx(lc / 0.5).epsilon(1e-6));

    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const double tau = 2.05 + 0.9 * u(g), alpha = u(g), b = u(g), nn = std::pow(10.0, 3.0 + 297.0 * u(g));
        const double l2 = std::log(C * std::log(nn));
        double rec = avalanche_layer_log(1, alpha, b, tau, nn, C);
        for (int ell = 2; ell <= 20; ++ell) {
            rec = l2 + (tau - 2.0) * rec;
            const double closed = avalanche_layer_log(ell, alpha, b, tau, nn, C);
            if (std::fabs(closed - rec) > 1e-9 * std::fabs(rec)) ++bad;
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("peak exponents") {
    CHECK(delta_of(1.0, 2.5) == doctest::Approx(0.0).scale(1.0));
    CHECK(delta_of(0.0, 2.5) == doctest::Approx(1.0));
    CHECK(alpha_of(1.0, 2.5) == doctest::Approx(1.0 / 1.5));
    std::mt19937_64 g(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
        const double d = delta_of(u(g), 2.02 + 0.96 * u(g));
        if (!(d > 0.0 && d <= 1.0 + 1e-12)) ++bad;
    }
    CHECK(bad == 0);

    const auto p = peak_exponents(at(1.0, 0.6));
    CHECK(p.delta_r == doctest::Approx(kDeltaR).epsilon(1e-9));
    const double ar = 1.0 - std::pow(0.5, kBr) / 1.5, ab = 1.0 - std::pow(0.5, kBb) / 1.5;
    REQUIRE(p.gamma);
    CHECK(*p.gamma == doctest::Approx(ab / ar).epsilon(1e-9));
    CHECK_THROWS(gamma_exponent(at(1.0, 0.3)));
}

TEST_CASE("critical time") {
    const auto ct = critical_time(at(1.0, 0.3));
    CHECK(ct.t_c == doctest::Approx(1.138435724584039).epsilon(1e-9));
    CHECK(ct.frac2tc == doctest::Approx(0.2768714491680771).epsilon(1e-9));
    CHECK(ct.t_b == 4);
    CHECK_THROWS(critical_time(at(1.0, 0.6)));

    // T_b - T_r = 1 and b_b = delta_r: meeting exactly at t_c = 1
    const auto tf = times_and_fractions(at(1.0, 1.0));
    const double yb = y_for(1e6, 2.5, tf.T_r + 2 + kDeltaR);
    const auto sym = critical_time(at(1.0, yb));
    CHECK(sym.t_c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sym.frac2tc == 0.0);

    std::mt19937_64 g(5);
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto in = draws::no_coexist(g);
        const auto c = critical_time(in);
        if (std::fabs(c.t_c - critical_time_via_ratio(in)) >= 1e-9) ++bad;
        if (!(c.frac2tc >= 0.0 && c.frac2tc < 2.0)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("case classification") {
    // tau = 2.2 with both fractions 1/2: 2 * 0.2^0.5 < 1.2
    const double yr = y_for(1e6, 2.2, 2.5), yb = y_for(1e6, 2.2, 4.5);
    const auto tf = times_and_fractions({1e6, 2.2, yr, yb});
    CHECK(tf.b_r == doctest::Approx(0.5));
    CHECK(tf.b_b == doctest::Approx(0.5));
    const auto o = classify_case({1e6, 2.2, yr, yb});
    CHECK(o.regime == Regime::NoCoexist);
    CHECK(to_string(o.kind) == "O>");

    CHECK(classify_case(at(1.0, 0.6)).regime == Regime::CoexistTbEqTr);
    const auto e = classify_case(at(1.0, 0.3));
    CHECK(e.regime == Regime::NoCoexist);
    CHECK(e.kind == CaseKind::EGreater);
    CHECK(e.q == doctest::Approx(0.3));
    // labels are swapped so the larger Y is red
    CHECK(classify_case(at(0.3, 1.0)).kind == CaseKind::EGreater);
    CHECK(classify_case(at(1.0, 0.5)).regime == Regime::Boundary);
}

TEST_CASE("coexistence predicate") {
    std::mt19937_64 g(6);
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto in = draws::consistent(g);
        const auto cr = classify_case(in);
        if (cr.regime == Regime::Boundary) continue;
        const bool co = cr.regime == Regime::CoexistTbEqTr || cr.regime == Regime::CoexistTbEqTrPlus1;
        if (co != (cr.q > in.tau - 2.0 && cr.q < 1.0)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("oscillating exponents") {
    const auto o = oscillation_exponents(at(1.0, 0.3));
    CHECK(o.f_n == doctest::Approx(2.104285095956683).epsilon(1e-9));
    CHECK(o.h_n == doctest::Approx(1.152793558602963).epsilon(1e-9));
    CHECK(o.h_half_edge == doctest::Approx(1.527888316655202).epsilon(1e-9));
    CHECK(o.h_paths == doctest::Approx(0.5763967793014814).epsilon(1e-9));
    CHECK(std::fabs(o.f_n - o.h_half_edge - o.h_paths) < 1e-9);
    const auto p = predict(at(1.0, 0.3));
    REQUIRE(p.blue_mass_exponent);
    CHECK(*p.blue_mass_exponent == doctest::Approx(0.7683762763182657).epsilon(1e-9));
    CHECK(*p.blue_mass_exponent < 1.0);
    CHECK_THROWS(oscillation_exponents(at(1.0, 0.6)));

    // one more generation for blue: same fractions, odd parity
    const auto flip_in = at(1.0, 0.15);
    const auto tf = times_and_fractions(flip_in);
    CHECK(tf.T_b == 4);
    CHECK(tf.b_b == doctest::Approx(kBb).epsilon(1e-9));
    CHECK(classify_case(flip_in).kind == CaseKind::OGreater);
    const auto f = oscillation_exponents(flip_in);
    const double lift = 1.5 - std::pow(0.5, kBr);
    const double ratio = std::pow(0.5, -0.5) * (std::pow(0.5, kBb) + 0.5 * lift) / (std::pow(0.5, kBb) + lift);
    CHECK(f.f_n / o.f_n == doctest::Approx(ratio).epsilon(1e-9));
    CHECK(std::fabs(f.f_n - f.h_half_edge - f.h_paths) < 1e-9);
}

TEST_CASE("distance predictors") {
    CHECK(distance_closed(at(1.0, 0.6)) == 6);
    CHECK(distance_closed(at(0.6, 1.0)) == 6);
    CHECK(distance_minimized(at(1.0, 0.6)) == 6);
    CHECK(predict(at(1.0, 0.6)).distance == 6);

    // equal Y on both sides of 2 (tau-2)^b = tau-1
    const double bstar = std::log(0.75) / std::log(0.5);
    const double below = y_for(1e6, 2.5, 3.0 + bstar - 1e-6), above = y_for(1e6, 2.5, 3.0 + bstar + 1e-6);
    const int d_lo = distance_closed(at(below, below)), d_hi = distance_closed(at(above, above));
    CHECK(d_lo != d_hi);
    CHECK(distance_minimized(at(below, below)) == d_lo);
    CHECK(distance_minimized(at(above, above)) == d_hi);

    std::mt19937_64 g(7);
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto in = draws::consistent(g);
        const auto tf = times_and_fractions(in);
        const int d = distance_closed(in);
        if (d != distance_closed({in.n, in.tau, in.y_b, in.y_r})) ++bad;
        if (d != tf.T_r + tf.T_b + 1 + indicator(in, tf)) ++bad;
        if (d != distance_minimized(in)) ++bad;
        const double a = abs_log(in.tau), L = std::log(std::log(in.n));
        const double lhs = d - 2.0 * L / a + 1.0 + tf.b_r + tf.b_b - indicator(in, tf);
        const double rhs = -std::log((in.tau - 1.0) * (in.tau - 1.0) * in.y_r * in.y_b) / a;
        if (std::fabs(lhs - rhs) > 1e-9) ++bad;
        const double fl = 1.0 + tf.b_r + tf.b_b - indicator(in, tf);
        if (!(fl >= 2.0 * std::log(2.0 / (in.tau - 1.0)) / a - 1e-12 && fl < 2.0)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("consistency identities") {
    std::mt19937_64 g(8);
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto in = canonical(draws::consistent(g));
        const auto tf = times_and_fractions(in);
        const double a = abs_log(in.tau), q = in.y_b / in.y_r;
        if (std::fabs(tf.T_b + tf.b_b - (tf.T_r + tf.b_r - std::log(q) / a)) > 1e-9) ++bad;
        const double l = std::pow(in.tau - 2.0, (tf.T_b - tf.T_r) / 2.0);
        const double r = std::sqrt(q) * std::pow(in.tau - 2.0, (tf.b_r - tf.b_b) / 2.0);
        if (std::fabs(l - r) > 1e-9 * std::max(1.0, l)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("no-coexistence bounds") {
    std::mt19937_64 g(9);
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto in = draws::no_coexist(g);
        const auto p = predict(in);
        REQUIRE(p.osc);
        if (std::fabs(p.osc->f_n - p.osc->h_half_edge - p.osc->h_paths) > 1e-9) ++bad;
        if (!(*p.blue_mass_exponent < 1.0 - 1e-9)) ++bad;
        if (!(std::sqrt(p.cr.q) * p.osc->h_n <= 1.0)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("sum of log nu") {
    const auto in = at(1.0, 0.3);
    const auto o = oscillation_exponents(in);
    CHECK(sum_log_nu_leading(400, in) == doctest::Approx(std::sqrt(0.3) * o.h_paths).epsilon(1e-6));
    CHECK(sum_log_nu_leading(0, in) == 0.0);
    CHECK(sum_log_nu_upper(0, in, kDefaultC, 1.5) == 0.0);
    for (int j = 1; j <= 6; ++j) {
        const auto b = nu_bound(j, in, kDefaultC, 0.8361, 1.5260);
        CHECK(b.log_upper - b.log_lower == doctest::Approx(std::log(1.5260 / 0.8361)));
    }
    CHECK_THROWS(nu_bound(0, in, kDefaultC, 0.8361, 1.5260));

    std::mt19937_64 g(10);
    int bad = 0;
    for (int t = 0; t < 2000; ++t) {
        const auto r = draws::no_coexist(g);
        const auto os = oscillation_exponents(r);
        const double q = classify_case(r).q;
        if (std::fabs(sum_log_nu_leading(2000, r) - std::sqrt(q) * os.h_paths) > 1e-6) ++bad;
    }
    MESSAGE("random inputs off the limit: " << bad);
    CHECK(bad == 0);
}
