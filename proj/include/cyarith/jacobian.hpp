#pragma once
#include "cyarith/curves.hpp"
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace cyarith {

// Homothety class of a CM lattice: reduced basis (w1, w2), tau = w2/w1 in the
// standard fundamental domain, scale > 0 the homothety factor. For the
// triangular lattices (families 3/6) the ramified sqrt(3) is divided out of
// |w1| so the untwisted curve calibrates to mu.
struct PeriodLattice {
    std::complex<double> w1, w2;
    std::complex<double> tau;
    double scale = 0.0;
};

// lambda = Gamma(1/4)^2 / (2 sqrt(2 pi))        family 4
// mu     = Gamma(1/3)^3 / (2^{4/3} sqrt(3) pi)  families 3/6
double transcendental_scale(int family);

// AGM periods of y^2 = x^3 - Tx resp. y^2 = x^3 - T at the normalized twist.
// The lattice is cross-checked by rebuilding (g2, g3) from Eisenstein series;
// throws numeric_error on non-convergence, consistency_error on model drift.
PeriodLattice numeric_periods(const CurveSpec& curve);

// g2, g3 of the lattice spanned by (w1, w2), from the E4/E6 q-series.
std::pair<std::complex<double>, std::complex<double>>
weierstrass_invariants(const PeriodLattice& lat);

// j-invariant of the lattice: 1728 E4^3 / (E4^3 - E6^2).
std::complex<double> lattice_j(const PeriodLattice& lat);

// The middle cohomology of the threefold twisted factor-wise by (D_i, k_i) is
// governed by the curve of total twist prod D_i^{k_i}; this is its canonical
// rational model.
CurveSpec q_model(int family, const std::vector<std::pair<i64, int>>& factors);

// Order of the total twist in Q^x modulo fourth (family 4) resp. sixth
// (families 3/6) powers; the sign contributes a factor of 2.
int character_order(int family, const std::vector<std::pair<i64, int>>& factors);

struct YuiVerdict {
    bool holds = false;
    int character_order = 1;
    i64 total_twist = 1;
    std::string reason;
};

// Does the L-function of the twisted threefold equal that of the cube of its
// own Jacobian's curve? Decided by the order rule (n-1) == 0 mod order and
// asserted against an independent route (perfect square/cube test at n = 3,
// residue-symbol sampling beyond); disagreement raises consistency_error.
YuiVerdict yui_verdict(int family, const std::vector<std::pair<i64, int>>& factors);
YuiVerdict nfold_verdict(int family, int n,
                         const std::vector<std::pair<i64, int>>& factors);

// Naive period lattice of the intermediate Jacobian (the three curve factors'
// scales multiplied, same tau) together with the rational model it is
// homothetic to.
struct IntermediateJacobian {
    PeriodLattice lattice;
    CurveSpec model;
};
IntermediateJacobian intermediate_jacobian(int family,
                                           const std::vector<std::pair<i64, int>>& factors);

} // namespace cyarith
