#pragma once
#include "cyarith/hecke.hpp"

#include <optional>
#include <string>

namespace cyarith {

// Dirichlet coefficients a_1..a_N of one L-series, with the metadata the
// functional equation needs. `origin` records which of the two independent
// construction routes produced it (they are compared in tests, never mixed).
struct CoefficientTable {
    int weight = 1;  // motivic weight: 1 curve, 3 threefold, n n-fold
    i64 level = 0;
    std::vector<i64> a;  // 1-indexed; a[0] = 0 sentinel
    std::string origin;  // "point-count" | "ideal-sum" | "twist"

    i64 at(i64 n) const { return a.at(size_t(n)); }
    i64 size() const { return i64(a.size()) - 1; }
};

// alpha^3 + beta^3 for a conjugate pair with alpha+beta = a_p, alpha*beta = p.
i64 cube_trace(i64 a_p, i64 p);

// alpha^n + beta^n by the integer recurrence s_0 = 2, s_1 = a_p,
// s_k = a_p s_{k-1} - p s_{k-2}.
i64 power_trace(i64 a_p, i64 p, int n);

// Ideal-sum route: a_m = sum of chi over ideals of norm m.
CoefficientTable hecke_qexpansion(const HeckeCharacter& chi, i64 N);

// Point-count route for the curve itself (weight 1).
CoefficientTable curve_coefficients(const CurveSpec& curve, i64 N);

// Point-count route for the middle cohomology of the threefold built from
// curves twisted by D_i^{k_i}: prime traces from the Frobenius generators,
// Hecke recursion at prime powers, multiplicative fill. The twist argument
// enters once (total twist), which differs from the literal character cube
// exactly when the square-criterion fails.
CoefficientTable threefold_coefficients(int family, const std::vector<std::pair<i64, int>>& twists,
                                        i64 N);

// Same for the n-fold (odd n; even middle cohomology carries no such motive).
CoefficientTable nfold_coefficients(int family, int n,
                                    const std::vector<std::pair<i64, int>>& twists, i64 N);

struct DirichletChar {
    i64 modulus = 1;
    std::vector<int> values;  // values[r], r = 0..modulus-1; 0 off the units

    int operator()(i64 n) const { return values[size_t(((n % modulus) + modulus) % modulus)]; }
};

DirichletChar kronecker_char(i64 d);

// a_n -> psi(n) a_n; level scaled by modulus^2 as metadata.
CoefficientTable twist_series(const CoefficientTable& table, const DirichletChar& psi);

// 1 + linear*X + quadratic*X^2 at the rational prime p (X = p^{-s}).
// Good split: 1 - b_p X + p^w X^2; inert: 1 - chi((p)) X^2; degree drops
// at primes meeting the conductor.
struct EulerFactor {
    i64 linear = 0, quadratic = 0;
    int degree = 0;
};
EulerFactor euler_factor(const HeckeCharacter& chi, i64 p);

// Coefficient cache: header line `# family=<f> twist=<T> power=<n> level=<L>
// weight=<w>`, then TAB-separated n/a_n rows. Atomic replace + lockfile.
void write_coefficient_cache(const std::string& path, int family, i64 twist, int power,
                             const CoefficientTable& table);
std::optional<CoefficientTable> read_coefficient_cache(const std::string& path, int family,
                                                       i64 twist, int power);

} // namespace cyarith
