#pragma once

#include <optional>
#include <string>
#include <utility>

namespace cmcomp {

// n enters only through log log n, so it is a real.
struct TheoryInput {
    double n = 0.0;
    double tau = 0.0;
    double y_r = 0.0;
    double y_b = 0.0;
};

struct TimesFractions {
    int T_r = 0, T_b = 0;
    double b_r = 0.0, b_b = 0.0;
    double x_r = 0.0, x_b = 0.0;  // T_j + b_j + 1
};

enum class Regime { NoCoexist, CoexistTbEqTr, CoexistTbEqTrPlus1, Boundary };
enum class CaseKind { None, ELess, EGreater, OLess, OGreater };

std::string to_string(Regime r);
std::string to_string(CaseKind c);

// Winner red: swaps the two Y values when y_b > y_r. Every regime-dependent
// evaluator below applies this first.
TheoryInput canonical(const TheoryInput &in);

// Uses the labels as given. Throws std::domain_error for invalid input or when
// a time would be negative (Y too large for this n).
TimesFractions times_and_fractions(const TheoryInput &in);

// log u_i; u_0 = (n^rho / (C log n))^{1/(tau-2)}, u_{i+1} = (u_i / (C log n))^{1/(tau-2)}
double climb_layer_log(int i, double rho_eff, double tau, double n, double C);
// (i_*, b); throws when the bracket is below one (no non-negative i_*)
std::pair<int, double> i_star(double rho_eff, double tau);
// log u~_l; u~_{l+1} = C log n * u~_l^{tau-2}
double avalanche_layer_log(int ell, double alpha, double b, double tau, double n, double C);

struct PeakExponents {
    double alpha_r = 0.0, alpha_b = 0.0;
    double delta_r = 0.0, delta_b = 0.0;
    std::optional<double> gamma;  // coexistence regimes only
};
PeakExponents peak_exponents(const TheoryInput &in);
double alpha_of(double b, double tau);
double delta_of(double b, double tau);
// throws outside the coexistence regimes
double gamma_exponent(const TheoryInput &in);

struct CaseRegime {
    CaseKind kind = CaseKind::None;
    Regime regime = Regime::NoCoexist;
    double q = 0.0;
};
CaseRegime classify_case(const TheoryInput &in);

struct CriticalTime {
    double t_c = 0.0;
    double frac2tc = 0.0;  // 2 {t_c}
    double xi = 0.0;       // (tau-2)^{-2{t_c}}
    int t_b = 0;           // T_r + floor(t_c) + 1
};
CriticalTime critical_time(const TheoryInput &in);
double critical_time_via_ratio(const TheoryInput &in);

struct Oscillation {
    double f_n = 0.0, h_n = 0.0, h_half_edge = 0.0, h_paths = 0.0;
};
Oscillation oscillation_exponents(const TheoryInput &in);

int distance_closed(const TheoryInput &in);
int distance_minimized(const TheoryInput &in);

// log-scale bounds c* u^{3-tau} <= nu_j <= C* u^{3-tau}, u = u~_{floor(t_c)+j}
struct NuBound {
    double log_lower = 0.0, log_upper = 0.0;
};
NuBound nu_bound(int j, const TheoryInput &in, double C, double c_star, double C_star);
// sum_{j=1}^k of log upper bounds
double sum_log_nu_upper(int k, const TheoryInput &in, double C, double C_star);
// leading-order part of the same sum divided by log n / (tau-1)
double sum_log_nu_leading(int k, const TheoryInput &in);

struct TheoryPrediction {
    TheoryInput input;  // canonical (red is the winner)
    bool swapped = false;
    TimesFractions tf;
    PeakExponents peak;
    CaseRegime cr;
    std::optional<CriticalTime> tc;
    int distance = 0;
    std::optional<Oscillation> osc;
    std::optional<double> blue_mass_exponent;  // sqrt(q) f_n / (tau-1)
    double max_degree_exponent = 0.0;          // log D_max(blue) / log n
};
TheoryPrediction predict(const TheoryInput &in);

inline constexpr double kDefaultC = 8.0;

}  // namespace cmcomp
