#pragma once
#include "cyarith/numutil.hpp"
#include <complex>
#include <vector>

namespace cyarith {

// Rings of integers of Q(i), Q(sqrt-3), Q(sqrt-7), written a + b*w with
//   GAUSS:      w = i,           w^2 = -1
//   EISENSTEIN: w = zeta_3,      w^2 = -1 - w
//   KLEINIAN7:  w = (1+sqrt-7)/2, w^2 = -2 + w
// All three are norm-Euclidean PIDs, which the whole library leans on.
enum class Field { GAUSS, EISENSTEIN, KLEINIAN7 };

struct FieldInfo {
    i64 e, f;        // w^2 = e + f*w
    i64 disc;        // |discriminant|: 4, 3, 7
    int unit_count;  // 4, 6, 2
    int residue_order; // order m of the residue characters used: 4, 6, 1
};
const FieldInfo& field_info(Field k);

struct QuadInt {
    Field field;
    i64 a = 0, b = 0;

    bool operator==(const QuadInt&) const = default;
};

QuadInt qi(Field k, i64 a, i64 b);
QuadInt qi_add(QuadInt x, QuadInt y);
QuadInt qi_sub(QuadInt x, QuadInt y);
QuadInt qi_neg(QuadInt x);
QuadInt qi_mul(QuadInt x, QuadInt y);
QuadInt qi_conj(QuadInt x);
QuadInt qi_pow(QuadInt x, i64 n);
i64 qi_norm(QuadInt x);
i64 qi_trace(QuadInt x); // x + conj(x)

bool qi_is_zero(QuadInt x);
bool qi_is_unit(QuadInt x);
bool qi_is_one(QuadInt x);

// The full unit group (4, 6 or 2 elements).
std::vector<QuadInt> units_of(Field k);

// Nearest-lattice-point division: x = q*y + r with N(r) < N(y).
struct QuadDivMod { QuadInt q, r; };
QuadDivMod qi_divmod(QuadInt x, QuadInt y);
QuadInt qi_gcd(QuadInt x, QuadInt y); // up to units

bool qi_divides(QuadInt d, QuadInt x);
QuadInt qi_div_exact(QuadInt x, QuadInt d);
bool qi_congruent(QuadInt x, QuadInt y, QuadInt mod);

std::complex<double> qi_embed(QuadInt x); // upper-half-plane embedding of w

// How a rational prime decomposes.
enum class PrimeKind { SPLIT, INERT, RAMIFIED };
struct PrimeFactorisation {
    PrimeKind kind;
    QuadInt pi;     // N(pi) = p for split/ramified; pi = p itself when inert
    QuadInt pi_bar; // conjugate (split only; equals pi otherwise)
};
PrimeFactorisation factor_prime(Field k, i64 p);

// Distinguished associate: GAUSS = 1 mod (1+i)^3, EISENSTEIN = 1 mod 3,
// KLEINIAN7 = positive Legendre sign of (a+4b) mod 7. Throws
// precondition_error when x is not coprime to the normalisation modulus.
QuadInt primary_generator(QuadInt x);

// Full factorisation over the ring: x = unit * prod(primes[i]^exp[i]),
// each primes[i] primary (or the fixed ramified generator).
struct QuadFactorisation {
    QuadInt unit;
    std::vector<std::pair<QuadInt, int>> primes;
};
QuadFactorisation qi_factor(QuadInt x);

// The fixed generator of the ramified prime: (1+i), (1+2w) = sqrt-3, (-1+2w) = sqrt-7.
QuadInt ramified_generator(Field k);

// m-th power residue character: k in [0,m) with A^((p-1)/m) = zeta_m^k (mod pi),
// for split pi, gcd(A,p)=1. m = 4 (GAUSS) or 6 (EISENSTEIN).
int residue_char_exponent(i64 A, QuadInt pi);

// zeta_m^k as a ring element: i^k in GAUSS, (1+w)^k in EISENSTEIN.
QuadInt unit_root(Field k, int expnt);

// One generator per associate class, norm 1..bound, sorted by (norm, a, b).
std::vector<std::pair<QuadInt, i64>> ideals_by_norm(Field k, i64 bound);

// Canonical sector representative among associates (the one ideals_by_norm picks).
QuadInt sector_representative(QuadInt x);

} // namespace cyarith
