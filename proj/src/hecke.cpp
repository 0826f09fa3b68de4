#include "cyarith/hecke.hpp"
#include "cyarith/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace cyarith {

i64 reduced_power(i64 A, i64 n, int m) {
    if (A == 0) throw std::invalid_argument("reduced_power: zero argument");
    i64 out = (A < 0 && n % 2 != 0) ? -1 : 1;
    for (auto [p, e] : factor_int(A)) {
        i64 r = (i64(e) * n) % m;
        for (i64 i = 0; i < r; ++i) out *= p;
    }
    return out;
}

static int residue_order_of(Field f) { return field_info(f).residue_order; }

// zeta exponent of the residue symbol at an inert prime: A^((p^2-1)/m) lands in
// the scalar roots of unity mod p (trivially 1 when gcd(A,p)=1, but computed).
static int inert_symbol_exponent(Field field, i64 A, i64 p) {
    int m = residue_order_of(field);
    if (m == 1) return 0;
    i64 Ap = (A % p + p) % p;
    if (Ap == 0) throw precondition_error("inert residue symbol: argument shares a factor with p");
    if ((p * p - 1) % m != 0)
        throw consistency_error("inert residue symbol: residue field misses the roots of unity");
    i64 tv = mod_pow(Ap, (p * p - 1) / m, p);
    if (tv == 1) return 0;
    if (tv == p - 1) return m / 2;
    throw consistency_error("inert residue symbol: non-scalar value");
}

// u0 * zeta^{sign*k} for a primary prime generator (split or inert).
static QuadInt unit_factor(const HeckeCharacter& chi, QuadInt prim) {
    if (residue_order_of(chi.field) == 1) return chi.u0;
    int k = prim.b == 0 ? inert_symbol_exponent(chi.field, chi.twist_arg, -prim.a)
                        : residue_char_exponent(chi.twist_arg, prim);
    return qi_mul(chi.u0, unit_root(chi.field, chi.sign * k));
}

QuadInt phi_unit(const HeckeCharacter& chi, QuadInt x) {
    if (qi_is_zero(x)) throw std::invalid_argument("phi_unit: zero");
    if (std::gcd(qi_norm(x), qi_norm(chi.raw_modulus)) != 1)
        throw precondition_error("phi_unit: not coprime to the raw modulus");
    auto fac = qi_factor(x);
    QuadInt val = qi_pow(qi_conj(fac.unit), chi.power);
    for (auto [prim, e] : fac.primes)
        val = qi_mul(val, qi_pow(unit_factor(chi, prim), e));
    return val;
}

static const QuadInt DELTAS_AB[] = {
    {Field::GAUSS, 1, 0},  {Field::GAUSS, 0, 1},  {Field::GAUSS, 1, 1},
    {Field::GAUSS, -1, 0}, {Field::GAUSS, 0, -1}, {Field::GAUSS, 2, 0},
    {Field::GAUSS, 1, -1}, {Field::GAUSS, -1, 1}, {Field::GAUSS, 0, 2},
    {Field::GAUSS, 2, 1},  {Field::GAUSS, -2, 1}, {Field::GAUSS, 3, 0},
};

// Well-definedness of phi on residue classes mod M, by sampled congruent pairs.
static bool pair_test(const HeckeCharacter& chi, QuadInt M,
                      std::map<std::pair<i64, i64>, QuadInt>& cache) {
    i64 m0n = qi_norm(chi.raw_modulus);
    auto phi_cached = [&](QuadInt x) {
        auto it = cache.find({x.a, x.b});
        if (it == cache.end()) it = cache.emplace(std::pair{x.a, x.b}, phi_unit(chi, x)).first;
        return it->second;
    };
    int compared = 0;
    for (i64 na = -6; na <= 6 && compared < 60; ++na)
        for (i64 nb = -6; nb <= 6 && compared < 60; ++nb) {
            QuadInt alpha = qi(chi.field, na, nb);
            if (qi_is_zero(alpha) || std::gcd(qi_norm(alpha), m0n) != 1) continue;
            for (QuadInt d : DELTAS_AB) {
                QuadInt beta = qi_add(alpha, qi_mul(M, qi(chi.field, d.a, d.b)));
                if (qi_is_zero(beta) || std::gcd(qi_norm(beta), m0n) != 1) continue;
                if (!(phi_cached(alpha) == phi_cached(beta))) return false;
                ++compared;
            }
        }
    if (compared < 25) throw consistency_error("conductor pair test: sampling starved");
    return true;
}

bool is_definition_modulus(const HeckeCharacter& chi, QuadInt M) {
    std::map<std::pair<i64, i64>, QuadInt> cache;
    return pair_test(chi, M, cache);
}

// Candidate conductors: ramified prime up to a wild bound, the inert 2 for the
// Eisenstein ring (the twist argument always carries a factor 4 there), and
// the odd primes of the twist argument tamely (exponent 0/1 per prime ideal).
static std::vector<std::vector<QuadInt>> conductor_slots(Field field, i64 A) {
    std::vector<std::vector<QuadInt>> slots;
    auto powers_of = [&](QuadInt g, int emax) {
        std::vector<QuadInt> v{qi(field, 1, 0)};
        for (int e = 1; e <= emax; ++e) v.push_back(qi_mul(v.back(), g));
        return v;
    };
    int wild = field == Field::GAUSS ? 9 : field == Field::EISENSTEIN ? 8 : 2;
    slots.push_back(powers_of(ramified_generator(field), wild));
    if (field == Field::EISENSTEIN) slots.push_back(powers_of(qi(field, 2, 0), 4));
    const auto& fi = field_info(field);
    for (auto [q, e] : factor_int(A)) {
        if (q == 2 || q == fi.disc) continue;
        auto pf = factor_prime(field, q);
        if (pf.kind == PrimeKind::SPLIT) {
            slots.push_back(powers_of(pf.pi, 1));
            slots.push_back(powers_of(pf.pi_bar, 1));
        } else {
            slots.push_back(powers_of(qi(field, q, 0), 1));
        }
    }
    return slots;
}

static void descend_conductor(HeckeCharacter& chi) {
    auto slots = conductor_slots(chi.field, chi.twist_arg);
    QuadInt m0 = qi(chi.field, 1, 0);
    for (const auto& s : slots) m0 = qi_mul(m0, s.back());
    chi.raw_modulus = m0;

    std::vector<QuadInt> cands;
    std::vector<size_t> idx(slots.size(), 0);
    for (;;) {
        QuadInt g = qi(chi.field, 1, 0);
        for (size_t i = 0; i < slots.size(); ++i) g = qi_mul(g, slots[i][idx[i]]);
        cands.push_back(g);
        size_t i = 0;
        while (i < slots.size() && ++idx[i] == slots[i].size()) idx[i++] = 0;
        if (i == slots.size()) break;
    }
    std::sort(cands.begin(), cands.end(), [](QuadInt x, QuadInt y) {
        return std::tuple(qi_norm(x), x.a, x.b) < std::tuple(qi_norm(y), y.a, y.b);
    });

    std::map<std::pair<i64, i64>, QuadInt> cache;
    for (QuadInt g : cands)
        if (pair_test(chi, g, cache)) {
            chi.conductor = sector_representative(g);
            chi.level = field_info(chi.field).disc * qi_norm(g);
            return;
        }
    throw consistency_error("conductor descent: no candidate modulus admits the rule");
}

static HeckeCharacter build_character(Field field, int family, i64 twist, int n,
                                      QuadInt u0, i64 A, int sign) {
    static std::map<std::tuple<int, int, i64, i64, i64, int>, HeckeCharacter> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::tuple(int(field), n, A, u0.a, u0.b, sign);
    auto it = cache.find(key);
    if (it == cache.end()) {
        HeckeCharacter chi;
        chi.field = field;
        chi.family = family;
        chi.twist = twist;
        chi.power = n;
        chi.u0 = u0;
        chi.twist_arg = A;
        chi.sign = sign;
        descend_conductor(chi);
        it = cache.emplace(key, chi).first;
    }
    HeckeCharacter out = it->second;
    out.family = family;
    out.twist = twist;
    return out;
}

HeckeCharacter nfold_character(const CurveSpec& curve, int n) {
    if (n < 1) throw std::invalid_argument("nfold_character: n must be positive");
    Field field = cm_field_of(curve.family);
    const CMRule& rule = cm_rule(curve.family);
    int m = residue_order_of(field);
    i64 A = 1;
    if (m > 1) A = reduced_power(reduced_power(rule.c, n, m) * curve.normalized_twist, 1, m);
    return build_character(field, curve.family, curve.normalized_twist, n,
                           qi_pow(rule.u0, n), A, rule.s);
}

HeckeCharacter hecke_character_of(const CurveSpec& curve) { return nfold_character(curve, 1); }

HeckeCharacter power_character(const HeckeCharacter& chi, int n) {
    if (n < 1) throw std::invalid_argument("power_character: n must be positive");
    int m = residue_order_of(chi.field);
    i64 A = m > 1 ? reduced_power(chi.twist_arg, n, m) : 1;
    return build_character(chi.field, chi.family, chi.twist, chi.power * n,
                           qi_pow(chi.u0, n), A, chi.sign);
}

QuadInt evaluate(const HeckeCharacter& chi, QuadInt gen) {
    if (qi_is_zero(gen)) throw std::invalid_argument("evaluate: zero generator");
    if (std::log2l((long double)qi_norm(gen)) * chi.power > 60)
        throw numeric_error("evaluate: value exceeds 64-bit range");
    i64 m0n = qi_norm(chi.raw_modulus);
    QuadInt val = qi(chi.field, 1, 0);
    for (auto [prim, e] : qi_factor(gen).primes) {
        if (qi_norm(qi_gcd(prim, chi.conductor)) != 1) return qi(chi.field, 0, 0);
        QuadInt u;
        if (std::gcd(qi_norm(prim), m0n) == 1) {
            u = unit_factor(chi, prim);
        } else {
            // prime inside the raw modulus but away from the conductor: lift to
            // a congruent element where the raw rule applies
            u = qi(chi.field, 0, 0);
            for (i64 ta = -4; ta <= 4 && qi_is_zero(u); ++ta)
                for (i64 tb = -4; tb <= 4; ++tb) {
                    QuadInt y = qi_add(prim, qi_mul(chi.conductor, qi(chi.field, ta, tb)));
                    if (qi_is_zero(y) || std::gcd(qi_norm(y), m0n) != 1) continue;
                    u = phi_unit(chi, y);
                    break;
                }
            if (qi_is_zero(u)) throw consistency_error("evaluate: no coprime lift found");
        }
        val = qi_mul(val, qi_pow(qi_mul(u, qi_pow(prim, chi.power)), e));
    }
    return val;
}

i64 nebentypus(const HeckeCharacter& chi, i64 a) {
    if (a < 1) throw std::invalid_argument("nebentypus: argument must be positive");
    if (std::gcd(a, chi.level) != 1) return 0;
    if (a == 1) return 1;
    QuadInt v = evaluate(chi, qi(chi.field, a, 0));
    i64 mag = v.a < 0 ? -v.a : v.a;
    i64 q = mag;
    for (int i = 0; i < chi.power; ++i) {
        if (q % a != 0) throw consistency_error("nebentypus: value is not a^power");
        q /= a;
    }
    if (v.b != 0 || q != 1) throw consistency_error("nebentypus: non-rational unitarized value");
    i64 eta = v.a < 0 ? -1 : 1;
    if (chi.power % 2 != 0) eta *= kronecker(-field_info(chi.field).disc, a);
    return eta;
}

i64 level(const HeckeCharacter& chi) { return chi.level; }

} // namespace cyarith
