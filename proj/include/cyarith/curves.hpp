#pragma once
#include "cyarith/quadint.hpp"
#include <complex>
#include <map>
#include <vector>

namespace cyarith {

// The four CM families:
//   family 3/6:  y^2 = x^3 - T      (automorphism order 3 resp. 6, CM by Z[zeta_3])
//   family 4:    y^2 = x^3 - T x    (automorphism order 4, CM by Z[i])
//   family 7:    y^2 + xy = x^3 - x^2 - 2x - 1   (conductor 49, CM by Q(sqrt-7))
// Families 3 and 6 share the curve; they differ only in which quotient group
// acts upstairs.
struct CurveSpec {
    int family = 4;
    i64 twist = 1;            // as given
    i64 normalized_twist = 1; // reduced modulo 6th (families 3/6) / 4th (family 4) powers

    bool operator==(const CurveSpec& o) const {
        return family == o.family && normalized_twist == o.normalized_twist;
    }
};

CurveSpec make_curve(int family, i64 twist);
i64 normalize_twist(int family, i64 twist);
Field cm_field_of(int family);

// Product of D^k over the factor list, with overflow guard. A threefold
// twisted factor-wise by (D_i, k_i) has total twist prod D_i^{k_i}.
i64 combined_twist(const std::vector<std::pair<i64, int>>& factors);

bool good_reduction(const CurveSpec& curve, i64 p);
std::vector<i64> good_primes(const CurveSpec& curve, i64 bound);

// Exhaustive point count over F_p; the trust anchor everything else is
// calibrated against. Throws bad_reduction_error / invalid_argument.
i64 count_points_naive(const CurveSpec& curve, i64 p);

/// Same value through the CM order: factor p, pick the distinguished generator,
// twist by the quartic/sextic residue character.
i64 ap_via_cm(const CurveSpec& curve, i64 p);

/// chi(p-ideal) for a good split prime: the Frobenius element whose trace is a_p.
QuadInt cm_frobenius(const CurveSpec& curve, i64 p);

// The per-family evaluation rule a_p = Tr(u0 * chi_m(c*T | pi)^s * pi_primary),
// found by searching unit normalisations against the naive count (the
// published conventions differ, so we do not hard-code one).
struct CMRule {
    QuadInt u0;
    i64 c;
    int s;
};
const CMRule& cm_rule(int family);

enum class Splitting { SPLIT, INERT, RAMIFIED, BAD };

struct FrobeniusData {
    i64 p = 0;
    i64 a_p = 0;
    Splitting splitting = Splitting::BAD;
    std::complex<double> alpha, beta; // conjugate pair, alpha+beta = a_p, alpha*beta = p
};

std::map<i64, FrobeniusData> ap_table(const CurveSpec& curve, i64 bound);

} // namespace cyarith
