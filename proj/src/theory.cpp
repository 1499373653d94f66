#include "cmcomp/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmcomp {

namespace {

double abs_log(double tau) { return std::fabs(std::log(tau - 2.0)); }

// floor/frac with values within 1e-12 of an integer snapped onto it
std::pair<double, double> floor_frac(double x) {
    const double r = std::round(x);
    if (std::fabs(x - r) <= 1e-12 * std::max(1.0, std::fabs(x))) return {r, 0.0};
    const double f = std::floor(x);
    return {f, x - f};
}

void check(const TheoryInput &in) {
    if (!(in.n >= 16.0) || !std::isfinite(in.n)) throw std::domain_error("n must be a finite real >= 16");
    if (!(in.tau > 2.0 && in.tau < 3.0)) throw std::domain_error("tau must lie in (2,3)");
    if (!(in.y_r > 0.0 && in.y_b > 0.0) || !std::isfinite(in.y_r) || !std::isfinite(in.y_b))
        throw std::domain_error("Y values must be positive and finite");
}

double pw(double tau, double e) { return std::pow(tau - 2.0, e); }

bool is_o(CaseKind k) { return k == CaseKind::OLess || k == CaseKind::OGreater; }

void require_no_coexist(const CaseRegime &cr, const char *what) {
    if (cr.regime != Regime::NoCoexist) throw std::domain_error(std::string(what) + " needs the no-coexistence regime");
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::NoCoexist: return "NoCoexist";
        case Regime::CoexistTbEqTr: return "Coexist_TbEqTr";
        case Regime::CoexistTbEqTrPlus1: return "Coexist_TbEqTrPlus1";
        case Regime::Boundary: return "Boundary";
    }
    return "?";
}

std::string to_string(CaseKind c) {
    switch (c) {
        case CaseKind::None: return "none";
        case CaseKind::ELess: return "E<";
        case CaseKind::EGreater: return "E>";
        case CaseKind::OLess: return "O<";
        case CaseKind::OGreater: return "O>";
    }
    return "?";
}

TheoryInput canonical(const TheoryInput &in) {
    TheoryInput c = in;
    if (c.y_b > c.y_r) std::swap(c.y_r, c.y_b);
    return c;
}

TimesFractions times_and_fractions(const TheoryInput &in) {
    check(in);
    const double L = std::log(std::log(in.n));
    const double a = abs_log(in.tau);
    TimesFractions tf;
    tf.x_r = (L - std::log((in.tau - 1.0) * in.y_r)) / a;
    tf.x_b = (L - std::log((in.tau - 1.0) * in.y_b)) / a;
    if (tf.x_r < 1.0 || tf.x_b < 1.0) throw std::domain_error("Y too large for this n (negative time)");
    auto [fr, br] = floor_frac(tf.x_r);
    auto [fb, bb] = floor_frac(tf.x_b);
    tf.T_r = static_cast<int>(fr) - 1;
    tf.T_b = static_cast<int>(fb) - 1;
    tf.b_r = br;
    tf.b_b = bb;
    return tf;
}

double climb_layer_log(int i, double rho_eff, double tau, double n, double C) {
    if (i < 0 || !(C > 0.0)) throw std::domain_error("climb layer needs i >= 0 and C > 0");
    const double ln = std::log(n);
    const double e_i = (std::pow(1.0 / (tau - 2.0), i + 1) - 1.0) / (3.0 - tau);
    return rho_eff * std::pow(tau - 2.0, -(i + 1)) * ln - e_i * std::log(C * ln);
}

std::pair<int, double> i_star(double rho_eff, double tau) {
    if (!(rho_eff * (tau - 1.0) > 0.0 && rho_eff * (tau - 1.0) < 1.0))
        throw std::domain_error("i_* needs 0 < rho (tau-1) < 1");
    const double x = -std::log((tau - 1.0) * rho_eff) / abs_log(tau);
    auto [f, b] = floor_frac(x);
    const int is = static_cast<int>(f) - 1;
    if (is < 0) throw std::domain_error("rho too large: no non-negative i_*");
    return {is, b};
}

double avalanche_layer_log(int ell, double alpha, double b, double tau, double n, double C) {
    if (ell < 1) throw std::domain_error("avalanche layer index starts at 1");
    const double ln = std::log(n);
    const double p = std::pow(tau - 2.0, ell - 1);
    return alpha * p * ln + (b * p + (1.0 - p) / (3.0 - tau)) * std::log(C * ln);
}

double alpha_of(double b, double tau) { return 1.0 - pw(tau, b) / (tau - 1.0); }

double delta_of(double b, double tau) { return std::log(alpha_of(b, tau) * (tau - 1.0)) / std::log(tau - 2.0); }

CaseRegime classify_case(const TheoryInput &raw) {
    const TheoryInput in = canonical(raw);
    const TimesFractions tf = times_and_fractions(in);
    const double tau = in.tau;
    CaseRegime cr;
    cr.q = in.y_b / in.y_r;
    if (std::fabs(cr.q - (tau - 2.0)) < 1e-12) {
        cr.regime = Regime::Boundary;
        return cr;
    }
    if (tf.T_b == tf.T_r) {
        cr.regime = Regime::CoexistTbEqTr;
        return cr;
    }
    if (tf.T_b == tf.T_r + 1 && cr.q > tau - 2.0) {
        cr.regime = Regime::CoexistTbEqTrPlus1;
        return cr;
    }
    cr.regime = Regime::NoCoexist;
    const bool even = (tf.T_b - (tf.T_r + 1)) % 2 == 0;
    const bool greater = tau - 1.0 > pw(tau, tf.b_r) + pw(tau, tf.b_b);
    if (even)
        cr.kind = greater ? CaseKind::EGreater : CaseKind::ELess;
    else
        cr.kind = greater ? CaseKind::OGreater : CaseKind::OLess;
    return cr;
}

PeakExponents peak_exponents(const TheoryInput &raw) {
    const TheoryInput in = canonical(raw);
    const TimesFractions tf = times_and_fractions(in);
    PeakExponents p;
    p.alpha_r = alpha_of(tf.b_r, in.tau);
    p.alpha_b = alpha_of(tf.b_b, in.tau);
    p.delta_r = delta_of(tf.b_r, in.tau);
    p.delta_b = delta_of(tf.b_b, in.tau);
    const CaseRegime cr = classify_case(in);
    if (cr.regime == Regime::CoexistTbEqTr || cr.regime == Regime::CoexistTbEqTrPlus1)
        p.gamma = p.alpha_b * pw(in.tau, (tf.T_b == tf.T_r ? 1.0 : 0.0) - 1.0) / p.alpha_r;
    return p;
}

double gamma_exponent(const TheoryInput &in) {
    const PeakExponents p = peak_exponents(in);
    if (!p.gamma) throw std::domain_error("gamma is defined only in the coexistence regimes");
    return *p.gamma;
}

CriticalTime critical_time(const TheoryInput &raw) {
    const TheoryInput in = canonical(raw);
    require_no_coexist(classify_case(in), "critical time");
    const TimesFractions tf = times_and_fractions(in);
    const double dr = delta_of(tf.b_r, in.tau);
    CriticalTime ct;
    ct.t_c = (tf.T_b - tf.T_r + 1) / 2.0 + (tf.b_b - dr) / 2.0;
    const auto [fl, fr] = floor_frac(ct.t_c);
    ct.frac2tc = 2.0 * fr;
    ct.xi = pw(in.tau, -ct.frac2tc);
    ct.t_b = tf.T_r + static_cast<int>(fl) + 1;
    return ct;
}

double critical_time_via_ratio(const TheoryInput &raw) {
    const TheoryInput in = canonical(raw);
    require_no_coexist(classify_case(in), "critical time");
    const TimesFractions tf = times_and_fractions(in);
    const double dr = delta_of(tf.b_r, in.tau);
    return 0.5 * std::log(in.y_r / in.y_b) / abs_log(in.tau) + (tf.b_r + 1.0 - dr) / 2.0;
}

Oscillation oscillation_exponents(const TheoryInput &raw) {
    const TheoryInput in = canonical(raw);
    const CaseRegime cr = classify_case(in);
    require_no_coexist(cr, "oscillation exponents");
    const TimesFractions tf = times_and_fractions(in);
    const double tau = in.tau, br = tf.b_r, bb = tf.b_b;
    const double O = is_o(cr.kind) ? 1.0 : 0.0;
    const double Olt = cr.kind == CaseKind::OLess ? 1.0 : 0.0;
    const double Ogt = cr.kind == CaseKind::OGreater ? 1.0 : 0.0;
    const double Elt = cr.kind == CaseKind::ELess ? 1.0 : 0.0;
    const double Egt = cr.kind == CaseKind::EGreater ? 1.0 : 0.0;
    const bool first = cr.kind == CaseKind::ELess || cr.kind == CaseKind::OGreater;
    const double lift = tau - 1.0 - pw(tau, br);

    Oscillation o;
    o.f_n = pw(tau, (br - bb - 1.0 - O) / 2.0) * (pw(tau, bb + Olt) + lift * pw(tau, Ogt));
    if (first) {
        o.h_n = pw(tau, (br + bb - 1.0 - Ogt) / 2.0);
        o.h_half_edge = o.h_n;
    } else {
        o.h_n = pw(tau, (br - bb - 1.0 - Olt) / 2.0) * lift;
        o.h_half_edge = o.h_n * (3.0 - tau) + pw(tau, (br + bb - Egt) / 2.0);
    }
    o.h_paths = lift * pw(tau, (br - bb + Egt - Elt) / 2.0);
    return o;
}

int distance_closed(const TheoryInput &in) {
    const TimesFractions tf = times_and_fractions(in);
    const double L = std::log(std::log(in.n));
    const double a = abs_log(in.tau);
    const double fb = floor_frac((L - std::log((in.tau - 1.0) * in.y_b)) / a).first;
    const double fr = floor_frac((L - std::log((in.tau - 1.0) * in.y_r)) / a).first;
    const int ind = in.tau - 1.0 > pw(in.tau, tf.b_r) + pw(in.tau, tf.b_b) ? 1 : 0;
    return static_cast<int>(fb) + static_cast<int>(fr) - 1 + ind;
}

int distance_minimized(const TheoryInput &in) {
    check(in);
    const double ln = std::log(in.n);
    const double a = abs_log(in.tau);
    const int kmax = std::max(2, static_cast<int>(std::ceil(10.0 * std::log(ln) / a)));
    for (int k = 1; k <= kmax; ++k) {
        double best = std::numeric_limits<double>::infinity();
        for (int k1 = 0; k1 <= k - 1; ++k1)
            best = std::min(best, std::exp(a * (k1 + 1)) * in.y_r + std::exp(a * (k - k1)) * in.y_b);
        if (best >= ln) return k;
    }
    throw std::domain_error("distance search bound exceeded");
}

NuBound nu_bound(int j, const TheoryInput &raw, double C, double c_star, double C_star) {
    if (j < 1) throw std::domain_error("nu_j starts at j = 1");
    const TheoryInput in = canonical(raw);
    const CriticalTime ct = critical_time(in);
    const TimesFractions tf = times_and_fractions(in);
    const int ell = ct.t_b - tf.T_r - 1 + j;
    const double lu = avalanche_layer_log(ell, alpha_of(tf.b_r, in.tau), tf.b_r, in.tau, in.n, C);
    return {std::log(c_star) + (3.0 - in.tau) * lu, std::log(C_star) + (3.0 - in.tau) * lu};
}

double sum_log_nu_upper(int k, const TheoryInput &in, double C, double C_star) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += nu_bound(j, in, C, C_star, C_star).log_upper;
    return s;
}

double sum_log_nu_leading(int k, const TheoryInput &raw) {
    const TheoryInput in = canonical(raw);
    const CriticalTime ct = critical_time(in);
    const TimesFractions tf = times_and_fractions(in);
    const double tau = in.tau;
    const double ar = alpha_of(tf.b_r, tau);
    const double fl = ct.t_b - tf.T_r - 1;
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += (3.0 - tau) * ar * pw(tau, fl + j - 1);
    return s * (tau - 1.0);
}

TheoryPrediction predict(const TheoryInput &raw) {
    TheoryPrediction p;
    p.input = canonical(raw);
    p.swapped = raw.y_b > raw.y_r;
    const TheoryInput &in = p.input;
    const double tau = in.tau;
    p.tf = times_and_fractions(in);
    p.peak = peak_exponents(in);
    p.cr = classify_case(in);
    p.distance = distance_closed(in);
    switch (p.cr.regime) {
        case Regime::NoCoexist: {
            p.tc = critical_time(in);
            p.osc = oscillation_exponents(in);
            p.blue_mass_exponent = std::sqrt(p.cr.q) * p.osc->f_n / (tau - 1.0);
            p.max_degree_exponent = std::sqrt(p.cr.q) * p.osc->h_n / (tau - 1.0);
            break;
        }
        case Regime::CoexistTbEqTr: p.max_degree_exponent = 1.0 / (tau - 1.0); break;
        case Regime::CoexistTbEqTrPlus1: {
            const bool lt = tau - 1.0 < pw(tau, p.tf.b_r) + pw(tau, p.tf.b_b);
            p.max_degree_exponent = lt ? pw(tau, p.tf.b_b) / (tau - 1.0) : (tau - 1.0 - pw(tau, p.tf.b_r)) / (tau - 1.0);
            break;
        }
        case Regime::Boundary: p.max_degree_exponent = std::numeric_limits<double>::quiet_NaN(); break;
    }
    return p;
}

}  // namespace cmcomp
