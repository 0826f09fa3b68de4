#pragma once
#include "cyarith/curves.hpp"

namespace cyarith {

// An algebraic Hecke character of the CM field, pinned down by the data the
// evaluation rule needs: at a split prime ideal with primary generator pi,
//   chi(p) = u0 * zeta_m^{sign * k(twist_arg | pi)} * pi^power,
// at an inert prime (p) the residue symbol is computed over O/(p) and the
// primary generator is -p. `power` is the infinity type; the attached
// newform has weight power+1 and level disc * N(conductor).
struct HeckeCharacter {
    Field field;
    int family = 4;
    i64 twist = 1;        // normalized total twist of the underlying curve(s)
    int power = 1;
    QuadInt u0;
    i64 twist_arg = 1;    // reduced modulo m-th powers, sign kept
    int sign = 1;
    QuadInt conductor;    // canonical (sector) generator of the conductor ideal
    QuadInt raw_modulus;  // generous modulus away from which the raw rule applies
    i64 level = 0;        // disc * N(conductor)
};

// A^n with every prime exponent reduced mod m; sign of A^n kept. Never
// materializes A^n, so large n is safe.
i64 reduced_power(i64 A, i64 n, int m);

// The infinity-type-1 character with chi(p)+chi(p-bar) = a_p(curve) at every
// good split prime (unit normalization from the calibrated rule).
HeckeCharacter hecke_character_of(const CurveSpec& curve);

// Product of n curve characters whose twists multiply to curve.twist: the
// character of the middle cohomology of the n-fold construction. The twist
// argument appears once (reduced c^n * T), unlike the literal n-th power.
HeckeCharacter nfold_character(const CurveSpec& curve, int n);

// The literal n-th power chi^n, made primitive (conductor re-descended).
HeckeCharacter power_character(const HeckeCharacter& chi, int n);

// Primitive value at the ideal generated by gen: 0 when gen meets the
// conductor; otherwise multiplicative over the prime factorization, with
// primes inside the raw modulus handled by lifting to a congruent element.
QuadInt evaluate(const HeckeCharacter& chi, QuadInt gen);

// chi((x)) / x^power for x coprime to the raw modulus: always a unit,
// computed purely in the unit group (no large powers).
QuadInt phi_unit(const HeckeCharacter& chi, QuadInt x);

// Whether the evaluation rule is well defined on residue classes mod M:
// the conductor is the smallest M for which this holds, and the passing
// set is a filter (tested, not assumed).
bool is_definition_modulus(const HeckeCharacter& chi, QuadInt M);

// Nebentypus at a positive integer: 0 on gcd(a, level) > 1, else the sign in
// chi((a)) = eta * a^power, times the Kronecker factor that unitarizes it.
i64 nebentypus(const HeckeCharacter& chi, i64 a);

i64 level(const HeckeCharacter& chi);

} // namespace cyarith
