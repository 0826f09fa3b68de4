#pragma once
#include "cyarith/lseries.hpp"
#include <complex>

namespace cyarith {

// Lambda(s) = level^{s/2} * 2 (2pi)^{-s} Gamma(s) L(s), satisfying
// Lambda(s) = W * Lambda(w+1-s) for a real self-dual table of motivic
// weight w. W is pinned numerically at construction time.
struct CompletedLFunction {
    CoefficientTable table;
    double q_scale = 0.0;     // sqrt(level) / (2 pi)
    int root = 0;             // W = +-1
    double root_margin = 0.0; // | |W_num| - 1 | before rounding
};

// Computes the root number from the theta ratio F(1/u) / (u^{w+1} F(u)) at
// u = 1.25 and requires |W_num| = 1 to 1e-6; throws numeric_error otherwise
// or when the table is too short for the ratio to stabilize.
CompletedLFunction make_lfunction(const CoefficientTable& table);

// Coefficients needed for completed_lambda at s with truncation error below
// 1e-12, at any split point in [3/4, 4/3].
i64 coefficient_demand(int weight, i64 level, std::complex<double> s);

// Coefficients needed before the theta-ratio root number stabilizes; tables
// shorter than this make make_lfunction throw.
i64 sign_demand(int weight, i64 level);

// Smoothed approximate functional equation with incomplete-gamma weights.
// Throws numeric_error naming the required count when the table is short.
std::complex<double> completed_lambda(const CompletedLFunction& L, std::complex<double> s);

// |Lambda(s) - W Lambda(w+1-s)|, the two sides evaluated at different split
// points (1 and 4/3) so the identity is genuinely exercised.
double fe_residual(const CompletedLFunction& L, std::complex<double> s);

struct CentralValue {
    double value = 0.0;
    bool vanishes_by_sign = false; // W = -1 forces L((w+1)/2) = 0 exactly
};
// Finite value L((w+1)/2); exact zero with certificate when W = -1.
CentralValue central_value(const CompletedLFunction& L);

// W of the n-th power of the curve's Hecke character: theoretical map
// (-1)^{(n-1)/2} W(chi) for odd n, +1 for even n, verified against the
// numerically computed sign of the power character's own expansion.
int root_number(const CurveSpec& curve, int n);

// Coefficient of the printed weight-5/2 level-128 expansions: the a-series
// at D = 1 (mod 8), the b-series at D = 3 (mod 8). Throws past the printed
// precision (D >= 105 resp. 107).
i64 half_integral_coefficient(i64 D);

// L(X4(-D), 2) * D^{3/2} / coef_D^2 for odd squarefree D = 1, 3 (mod 8);
// constant within each residue class. An optional cache directory persists
// the underlying coefficient tables between calls.
double waldspurger_ratio(i64 D, const std::string& cache_dir = "");

// complex log-gamma (Lanczos) and upper incomplete gamma(s, x), x > 0;
// exposed so tests can pin them against closed forms.
std::complex<double> log_gamma(std::complex<double> z);
std::complex<double> upper_gamma(std::complex<double> s, double x);

} // namespace cyarith
