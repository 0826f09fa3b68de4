#pragma once
#include <cstdint>
#include <optional>
#include <vector>

namespace cyarith {

using i64 = std::int64_t;
using i128 = __int128;

std::vector<i64> primes_up_to(i64 n);
bool is_prime(i64 n);

i64 mod_pow(i64 a, i64 e, i64 m);
i64 mod_inv(i64 a, i64 m); // gcd(a,m)=1 assumed

// Tonelli-Shanks; nullopt when a is a non-residue mod odd prime p.
std::optional<i64> sqrt_mod(i64 a, i64 p);

// Jacobi symbol (a|n) for odd n>0; Kronecker extends to all n.
int jacobi(i64 a, i64 n);
int kronecker(i64 a, i64 n);

// Factor |n| >= 1: list of (prime, exponent), primes ascending.
std::vector<std::pair<i64, int>> factor_int(i64 n);

// |x| with sign separated off for factorization helpers.
inline i64 iabs(i64 x) { return x < 0 ? -x : x; }

} // namespace cyarith
