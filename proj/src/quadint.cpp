#include "cyarith/quadint.hpp"
#include "cyarith/errors.hpp"
#include <algorithm>
#include <cassert>
#include <cmath>

namespace cyarith {

const FieldInfo& field_info(Field k) {
    static const FieldInfo gauss{-1, 0, 4, 4, 4};
    static const FieldInfo eis{-1, -1, 3, 6, 6};
    static const FieldInfo k7{-2, 1, 7, 2, 1};
    switch (k) {
        case Field::GAUSS: return gauss;
        case Field::EISENSTEIN: return eis;
        default: return k7;
    }
}

QuadInt qi(Field k, i64 a, i64 b) { return QuadInt{k, a, b}; }

QuadInt qi_add(QuadInt x, QuadInt y) {
    assert(x.field == y.field);
    return {x.field, x.a + y.a, x.b + y.b};
}

QuadInt qi_sub(QuadInt x, QuadInt y) {
    assert(x.field == y.field);
    return {x.field, x.a - y.a, x.b - y.b};
}

QuadInt qi_neg(QuadInt x) { return {x.field, -x.a, -x.b}; }

QuadInt qi_mul(QuadInt x, QuadInt y) {
    assert(x.field == y.field);
    const auto& fi = field_info(x.field);
    i64 bd = x.b * y.b;
    return {x.field, x.a * y.a + fi.e * bd, x.a * y.b + x.b * y.a + fi.f * bd};
}

QuadInt qi_conj(QuadInt x) {
    const auto& fi = field_info(x.field);
    return {x.field, x.a + fi.f * x.b, -x.b};
}

QuadInt qi_pow(QuadInt x, i64 n) {
    assert(n >= 0);
    QuadInt r = qi(x.field, 1, 0);
    while (n > 0) {
        if (n & 1) r = qi_mul(r, x);
        x = qi_mul(x, x);
        n >>= 1;
    }
    return r;
}

i64 qi_norm(QuadInt x) {
    const auto& fi = field_info(x.field);
    return x.a * x.a + fi.f * x.a * x.b - fi.e * x.b * x.b;
}

i64 qi_trace(QuadInt x) { return 2 * x.a + field_info(x.field).f * x.b; }

bool qi_is_zero(QuadInt x) { return x.a == 0 && x.b == 0; }
bool qi_is_unit(QuadInt x) { return qi_norm(x) == 1; }
bool qi_is_one(QuadInt x) { return x.a == 1 && x.b == 0; }

std::vector<QuadInt> units_of(Field k) {
    switch (k) {
        case Field::GAUSS:
            return {qi(k, 1, 0), qi(k, 0, 1), qi(k, -1, 0), qi(k, 0, -1)};
        case Field::EISENSTEIN:
            return {qi(k, 1, 0), qi(k, 1, 1), qi(k, 0, 1),
                    qi(k, -1, 0), qi(k, -1, -1), qi(k, 0, -1)};
        default:
            return {qi(k, 1, 0), qi(k, -1, 0)};
    }
}

static i64 round_div(i64 v, i64 n) { // nearest integer to v/n, n > 0
    assert(n > 0);
    return v >= 0 ? (v + n / 2) / n : -((-v + n / 2) / n);
}

QuadDivMod qi_divmod(QuadInt x, QuadInt y) {
    assert(x.field == y.field);
    i64 n = qi_norm(y);
    if (n == 0) throw std::invalid_argument("qi_divmod: division by zero");
    QuadInt num = qi_mul(x, qi_conj(y));
    QuadInt q0 = qi(x.field, round_div(num.a, n), round_div(num.b, n));
    // nearest rounding is enough for d=-1,-3; scan a small neighbourhood so the
    // half-integral KLEINIAN7 basis stays Euclidean too
    QuadDivMod best{q0, qi_sub(x, qi_mul(q0, y))};
    i64 best_norm = qi_norm(best.r);
    for (i64 da = -1; da <= 1; ++da)
        for (i64 db = -1; db <= 1; ++db) {
            if (da == 0 && db == 0) continue;
            QuadInt q = qi(x.field, q0.a + da, q0.b + db);
            QuadInt r = qi_sub(x, qi_mul(q, y));
            i64 rn = qi_norm(r);
            if (rn < best_norm) { best = {q, r}; best_norm = rn; }
        }
    assert(best_norm < n);
    return best;
}

QuadInt qi_gcd(QuadInt x, QuadInt y) {
    while (!qi_is_zero(y)) {
        QuadInt r = qi_divmod(x, y).r;
        x = y;
        y = r;
    }
    return x;
}

bool qi_divides(QuadInt d, QuadInt x) {
    i64 n = qi_norm(d);
    if (n == 0) return qi_is_zero(x);
    QuadInt y = qi_mul(x, qi_conj(d));
    return y.a % n == 0 && y.b % n == 0;
}

QuadInt qi_div_exact(QuadInt x, QuadInt d) {
    i64 n = qi_norm(d);
    QuadInt y = qi_mul(x, qi_conj(d));
    assert(n != 0 && y.a % n == 0 && y.b % n == 0);
    return qi(x.field, y.a / n, y.b / n);
}

bool qi_congruent(QuadInt x, QuadInt y, QuadInt mod) { return qi_divides(mod, qi_sub(x, y)); }

std::complex<double> qi_embed(QuadInt x) {
    std::complex<double> w;
    switch (x.field) {
        case Field::GAUSS: w = {0.0, 1.0}; break;
        case Field::EISENSTEIN: w = {-0.5, std::sqrt(3.0) / 2}; break;
        default: w = {0.5, std::sqrt(7.0) / 2}; break;
    }
    return double(x.a) + double(x.b) * w;
}

QuadInt ramified_generator(Field k) {
    switch (k) {
        case Field::GAUSS: return qi(k, 1, 1);        // 1+i
        case Field::EISENSTEIN: return qi(k, 1, 2);   // sqrt(-3)
        default: return qi(k, -1, 2);                 // sqrt(-7)
    }
}

static i64 ramified_prime(Field k) { return field_info(k).disc == 4 ? 2 : field_info(k).disc; }

PrimeFactorisation factor_prime(Field k, i64 p) {
    if (!is_prime(p)) throw std::invalid_argument("factor_prime: p not prime");
    const auto& fi = field_info(k);
    if (p == ramified_prime(k)) {
        QuadInt g = ramified_generator(k);
        return {PrimeKind::RAMIFIED, g, g};
    }
    i64 poly_disc = fi.f * fi.f + 4 * fi.e; // -4, -3, -7
    if (kronecker(poly_disc, p) != 1)
        return {PrimeKind::INERT, qi(k, p, 0), qi(k, p, 0)};
    // root of w's minimal polynomial x^2 - f x - e mod p
    i64 r;
    if (p == 2) {
        r = 0; // KLEINIAN7 only: x^2 + x = x(x+1) mod 2
    } else {
        auto s = sqrt_mod(((poly_disc % p) + p) % p, p);
        assert(s.has_value());
        r = i64((i128(fi.f + *s) * mod_inv(2, p)) % p);
    }
    QuadInt pi = qi_gcd(qi(k, p, 0), qi(k, r, -1));
    assert(qi_norm(pi) == p);
    return {PrimeKind::SPLIT, pi, qi_conj(pi)};
}

QuadInt primary_generator(QuadInt x) {
    if (qi_is_zero(x)) throw precondition_error("primary_generator: zero");
    switch (x.field) {
        case Field::GAUSS: {
            QuadInt m = qi(x.field, -2, 2); // (1+i)^3
            for (QuadInt u : units_of(x.field)) {
                QuadInt y = qi_mul(u, x);
                if (qi_divides(m, qi_sub(y, qi(x.field, 1, 0)))) return y;
            }
            throw precondition_error("primary_generator: element not coprime to (1+i)");
        }
        case Field::EISENSTEIN: {
            for (QuadInt u : units_of(x.field)) {
                QuadInt y = qi_mul(u, x);
                if ((y.a - 1) % 3 == 0 && y.b % 3 == 0) return y;
            }
            throw precondition_error("primary_generator: element not coprime to sqrt(-3)");
        }
        default: {
            i64 t = ((x.a + 4 * x.b) % 7 + 7) % 7;
            if (t == 0) throw precondition_error("primary_generator: element not coprime to sqrt(-7)");
            return jacobi(t, 7) == 1 ? x : qi_neg(x);
        }
    }
}

QuadFactorisation qi_factor(QuadInt x) {
    if (qi_is_zero(x)) throw std::invalid_argument("qi_factor: zero");
    QuadFactorisation out;
    Field k = x.field;
    for (auto [p, e_norm] : factor_int(qi_norm(x))) {
        auto pf = factor_prime(k, p);
        if (pf.kind == PrimeKind::RAMIFIED) {
            int e = 0;
            while (qi_divides(pf.pi, x)) { x = qi_div_exact(x, pf.pi); ++e; }
            assert(e == e_norm);
            out.primes.emplace_back(pf.pi, e);
        } else if (pf.kind == PrimeKind::INERT) {
            QuadInt pp = primary_generator(qi(k, p, 0));
            int e = 0;
            while (qi_divides(pp, x)) { x = qi_div_exact(x, pp); ++e; }
            assert(2 * e == e_norm);
            out.primes.emplace_back(pp, e);
        } else {
            for (QuadInt g : {pf.pi, pf.pi_bar}) {
                QuadInt gp = primary_generator(g);
                int e = 0;
                while (qi_divides(gp, x)) { x = qi_div_exact(x, gp); ++e; }
                if (e > 0) out.primes.emplace_back(gp, e);
            }
        }
    }
    if (!qi_is_unit(x)) throw consistency_error("qi_factor: non-unit remainder");
    out.unit = x;
    return out;
}

int residue_char_exponent(i64 A, QuadInt pi) {
    const auto& fi = field_info(pi.field);
    int m = fi.residue_order;
    if (m == 1) return 0;
    i64 p = qi_norm(pi);
    assert(is_prime(p) && pi.b % p != 0);
    i64 Ap = (A % p + p) % p;
    if (Ap == 0) throw precondition_error("residue_char_exponent: argument shares a factor with p");
    i64 r = i64((i128(((-pi.a) % p + p) % p) * mod_inv(pi.b, p)) % p); // w = r (mod pi)
    i64 zeta = (pi.field == Field::GAUSS) ? r : (1 + r) % p;          // i or zeta_6
    i64 target = mod_pow(Ap, (p - 1) / m, p);
    i64 zk = 1;
    for (int j = 0; j < m; ++j) {
        if (zk == target) return j;
        zk = i64((i128(zk) * zeta) % p);
    }
    throw consistency_error("residue_char_exponent: target is not a root of unity");
}

QuadInt unit_root(Field k, int expnt) {
    int m = k == Field::GAUSS ? 4 : k == Field::EISENSTEIN ? 6 : 2;
    int j = ((expnt % m) + m) % m;
    switch (k) {
        case Field::GAUSS: {
            static const i64 tab[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            return qi(k, tab[j][0], tab[j][1]);
        }
        case Field::EISENSTEIN: {
            static const i64 tab[6][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
            return qi(k, tab[j][0], tab[j][1]);
        }
        default:
            return qi(k, j == 0 ? 1 : -1, 0);
    }
}

static bool in_sector(QuadInt x) {
    switch (x.field) {
        case Field::GAUSS: return x.a > 0 && x.b >= 0;
        case Field::EISENSTEIN: return x.a > x.b && x.b >= 0;
        default: return x.b > 0 || (x.b == 0 && x.a > 0);
    }
}

QuadInt sector_representative(QuadInt x) {
    if (qi_is_zero(x)) return x;
    for (QuadInt u : units_of(x.field)) {
        QuadInt y = qi_mul(u, x);
        if (in_sector(y)) return y;
    }
    throw consistency_error("sector_representative: no associate in sector");
}

std::vector<std::pair<QuadInt, i64>> ideals_by_norm(Field k, i64 bound) {
    if (bound < 1) throw std::invalid_argument("ideals_by_norm: bound must be >= 1");
    std::vector<std::pair<QuadInt, i64>> out;
    i64 L = i64(2 * std::sqrt(double(bound))) + 2;
    for (i64 a = -L; a <= L; ++a)
        for (i64 b = -L; b <= L; ++b) {
            QuadInt x = qi(k, a, b);
            if (qi_is_zero(x) || !in_sector(x)) continue;
            i64 n = qi_norm(x);
            if (n <= bound) out.emplace_back(x, n);
        }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        return std::tie(l.second, l.first.a, l.first.b) < std::tie(r.second, r.first.a, r.first.b);
    });
    return out;
}

} // namespace cyarith
