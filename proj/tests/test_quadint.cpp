#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyarith/errors.hpp"
#include "cyarith/quadint.hpp"

#include <random>

using namespace cyarith;

static const Field ALL[] = {Field::GAUSS, Field::EISENSTEIN, Field::KLEINIAN7};

TEST_CASE("ring presentations") {
    CHECK(field_info(Field::GAUSS).disc == 4);
    CHECK(field_info(Field::EISENSTEIN).disc == 3);
    CHECK(field_info(Field::KLEINIAN7).disc == 7);
    for (Field k : ALL) {
        const auto& fi = field_info(k);
        QuadInt w = qi(k, 0, 1);
        CHECK(qi_mul(w, w) == qi(k, fi.e, fi.f)); // defining relation
        CHECK(qi_norm(w) == -fi.e);
        CHECK((int)units_of(k).size() == fi.unit_count);
        for (QuadInt u : units_of(k)) {
            CHECK(qi_is_unit(u));
            CHECK(qi_norm(u) == 1);
        }
    }
    // zeta_6 = 1 + w generates the Eisenstein units
    QuadInt z = qi(Field::EISENSTEIN, 1, 1);
    CHECK(qi_pow(z, 2) == qi(Field::EISENSTEIN, 0, 1));
    CHECK(qi_pow(z, 3) == qi(Field::EISENSTEIN, -1, 0));
    CHECK(qi_pow(z, 6) == qi(Field::EISENSTEIN, 1, 0));
    for (int k = -7; k <= 7; ++k) {
        QuadInt zk = k >= 0 ? qi_pow(z, k) : qi_conj(qi_pow(z, -k));
        CHECK(unit_root(Field::EISENSTEIN, k) == zk);
        // conj(zeta^k) = zeta^-k for the Gauss table too
        QuadInt i1 = qi(Field::GAUSS, 0, 1);
        CHECK(unit_root(Field::GAUSS, k) == (k >= 0 ? qi_pow(i1, k) : qi_conj(qi_pow(i1, -k))));
    }
}

TEST_CASE("arithmetic identities") {
    CHECK(qi_mul(qi(Field::GAUSS, -1, 2), qi(Field::GAUSS, -1, 2)) == qi(Field::GAUSS, -3, -4));
    CHECK(qi_pow(qi(Field::GAUSS, -1, 2), 3) == qi(Field::GAUSS, 11, -2));
    CHECK(qi_trace(qi_pow(qi(Field::GAUSS, -1, 2), 3)) == 22);
    // sqrt(-7) = -1 + 2w squares to -7
    CHECK(qi_mul(ramified_generator(Field::KLEINIAN7), ramified_generator(Field::KLEINIAN7)) ==
          qi(Field::KLEINIAN7, -7, 0));
    CHECK(qi_norm(ramified_generator(Field::GAUSS)) == 2);
    CHECK(qi_norm(ramified_generator(Field::EISENSTEIN)) == 3);

    std::mt19937 rng(7);
    std::uniform_int_distribution<i64> d(-30, 30);
    for (int t = 0; t < 300; ++t) {
        Field k = ALL[t % 3];
        QuadInt x = qi(k, d(rng), d(rng)), y = qi(k, d(rng), d(rng));
        CHECK(qi_norm(qi_mul(x, y)) == qi_norm(x) * qi_norm(y));
        CHECK(qi_mul(x, qi_conj(x)) == qi(k, qi_norm(x), 0));
        CHECK(qi_trace(x) == x.a * 2 + field_info(k).f * x.b);
        CHECK(qi_add(x, qi_neg(x)) == qi(k, 0, 0));
        // embedding is a ring morphism
        auto ex = qi_embed(x), ey = qi_embed(y);
        CHECK(std::abs(qi_embed(qi_mul(x, y)) - ex * ey) < 1e-6);
        CHECK(std::abs(qi_embed(qi_add(x, y)) - (ex + ey)) < 1e-9);
    }
    CHECK(qi_embed(qi(Field::GAUSS, 0, 1)).imag() == doctest::Approx(1.0));
    CHECK(qi_embed(qi(Field::KLEINIAN7, 0, 2)).imag() == doctest::Approx(std::sqrt(7.0)));
}

TEST_CASE("euclidean division, gcd, divisibility") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<i64> d(-40, 40);
    for (int t = 0; t < 400; ++t) {
        Field k = ALL[t % 3];
        QuadInt x = qi(k, d(rng), d(rng)), y = qi(k, d(rng), d(rng));
        if (qi_is_zero(y)) continue;
        auto [q, r] = qi_divmod(x, y);
        CHECK(qi_add(qi_mul(q, y), r) == x);
        CHECK(qi_norm(r) < qi_norm(y));
        QuadInt g = qi_gcd(x, y);
        if (!qi_is_zero(x)) {
            CHECK(qi_divides(g, x));
            CHECK(qi_divides(g, y));
            CHECK(qi_div_exact(qi_mul(x, y), y) == x);
        }
    }
    // gcd(5, 1+2i) is the prime above 5
    QuadInt g = qi_gcd(qi(Field::GAUSS, 5, 0), qi(Field::GAUSS, 1, 2));
    CHECK(qi_norm(g) == 5);
    CHECK(qi_congruent(qi(Field::GAUSS, 7, 1), qi(Field::GAUSS, 1, -1), qi(Field::GAUSS, 3, 1)));
    CHECK_FALSE(qi_congruent(qi(Field::GAUSS, 7, 1), qi(Field::GAUSS, 1, 0), qi(Field::GAUSS, 3, 1)));
}

TEST_CASE("prime splitting") {
    struct Row { Field k; i64 p; PrimeKind kind; };
    const Row rows[] = {
        {Field::GAUSS, 2, PrimeKind::RAMIFIED},   {Field::GAUSS, 3, PrimeKind::INERT},
        {Field::GAUSS, 5, PrimeKind::SPLIT},      {Field::GAUSS, 13, PrimeKind::SPLIT},
        {Field::EISENSTEIN, 3, PrimeKind::RAMIFIED}, {Field::EISENSTEIN, 5, PrimeKind::INERT},
        {Field::EISENSTEIN, 7, PrimeKind::SPLIT},  {Field::EISENSTEIN, 2, PrimeKind::INERT},
        {Field::KLEINIAN7, 7, PrimeKind::RAMIFIED}, {Field::KLEINIAN7, 2, PrimeKind::SPLIT},
        {Field::KLEINIAN7, 3, PrimeKind::INERT},   {Field::KLEINIAN7, 11, PrimeKind::SPLIT},
    };
    for (auto [k, p, kind] : rows) {
        auto pf = factor_prime(k, p);
        CHECK(pf.kind == kind);
        if (kind == PrimeKind::INERT) {
            CHECK(pf.pi == qi(k, p, 0));
        } else {
            CHECK(qi_norm(pf.pi) == p);
            if (kind == PrimeKind::SPLIT) {
                CHECK(qi_norm(pf.pi_bar) == p);
                CHECK(qi_norm(qi_gcd(pf.pi, pf.pi_bar)) == 1); // distinct ideals
            }
        }
    }
    // splitting matches the quadratic character of the discriminant
    for (Field k : ALL)
        for (i64 p : primes_up_to(200)) {
            int chi = kronecker(-field_info(k).disc, p);
            auto pf = factor_prime(k, p);
            CHECK(pf.kind == (chi == 1    ? PrimeKind::SPLIT
                              : chi == -1 ? PrimeKind::INERT
                                          : PrimeKind::RAMIFIED));
        }
}

TEST_CASE("primary generators") {
    CHECK(primary_generator(qi(Field::GAUSS, 2, 1)) == qi(Field::GAUSS, -1, 2));
    CHECK(primary_generator(qi(Field::GAUSS, 2, -1)) == qi(Field::GAUSS, -1, -2));
    CHECK(primary_generator(qi(Field::GAUSS, 3, 0)) == qi(Field::GAUSS, -3, 0));
    CHECK(primary_generator(qi(Field::GAUSS, 7, 0)) == qi(Field::GAUSS, -7, 0));
    CHECK(primary_generator(qi(Field::EISENSTEIN, 5, 0)) == qi(Field::EISENSTEIN, -5, 0));
    // primary is idempotent and associate-invariant
    std::mt19937 rng(3);
    std::uniform_int_distribution<i64> d(-15, 15);
    for (int t = 0; t < 200; ++t) {
        Field k = ALL[t % 3];
        QuadInt x = qi(k, d(rng), d(rng));
        i64 n = qi_norm(x);
        i64 mod = k == Field::KLEINIAN7 ? 7 : k == Field::GAUSS ? 2 : 3;
        if (n == 0 || n % mod == 0) continue;
        QuadInt p = primary_generator(x);
        CHECK(primary_generator(p) == p);
        for (QuadInt u : units_of(k)) CHECK(primary_generator(qi_mul(u, x)) == p);
    }
    CHECK_THROWS_AS(primary_generator(qi(Field::GAUSS, 1, 1)), precondition_error);
    CHECK_THROWS_AS(primary_generator(qi(Field::KLEINIAN7, -1, 2)), precondition_error);
}

TEST_CASE("full factorisation over the ring") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<i64> d(-25, 25);
    for (int t = 0; t < 150; ++t) {
        Field k = ALL[t % 3];
        QuadInt x = qi(k, d(rng), d(rng));
        if (qi_is_zero(x)) continue;
        auto fac = qi_factor(x);
        CHECK(qi_is_unit(fac.unit));
        QuadInt prod = fac.unit;
        for (auto [pi, e] : fac.primes) {
            CHECK(e >= 1);
            i64 np = qi_norm(pi);
            CHECK((is_prime(np) || (pi.b == 0 && is_prime(-pi.a)))); // split/ramified vs inert
            prod = qi_mul(prod, qi_pow(pi, e));
        }
        CHECK(prod == x);
    }
    auto fac = qi_factor(qi(Field::GAUSS, 10, 0));
    CHECK(fac.primes.size() == 3);
    for (auto [pi, e] : fac.primes)
        CHECK(((pi == qi(Field::GAUSS, 1, 1) && e == 2) ||
               ((pi == qi(Field::GAUSS, -1, 2) || pi == qi(Field::GAUSS, -1, -2)) && e == 1)));
}

TEST_CASE("power residue character") {
    CHECK(residue_char_exponent(2, qi(Field::GAUSS, -1, 2)) == 3);
    for (Field k : {Field::GAUSS, Field::EISENSTEIN}) {
        int m = field_info(k).residue_order;
        for (i64 p : primes_up_to(60)) {
            auto pf = factor_prime(k, p);
            if (pf.kind != PrimeKind::SPLIT) continue;
            for (i64 A = 1; A < 12; ++A) {
                if (A % p == 0) continue;
                int e = residue_char_exponent(A, pf.pi);
                // defining congruence A^((p-1)/m) = zeta^e (mod pi)
                QuadInt lhs = qi(k, mod_pow(A, (p - 1) / m, p), 0);
                CHECK(qi_congruent(lhs, unit_root(k, e), pf.pi));
                // multiplicative in A
                int e2 = residue_char_exponent(A * A, pf.pi);
                CHECK(e2 == 2 * e % m);
            }
        }
    }
    CHECK_THROWS_AS(residue_char_exponent(5, qi(Field::GAUSS, -1, 2)), precondition_error);
}

TEST_CASE("ideal enumeration matches the Dedekind zeta coefficients") {
    auto r2 = ideals_by_norm(Field::GAUSS, 2);
    REQUIRE(r2.size() == 2);
    CHECK(r2[0].first == qi(Field::GAUSS, 1, 0));
    CHECK(r2[1].first == qi(Field::GAUSS, 1, 1));
    CHECK(r2[1].second == 2);

    for (Field k : ALL) {
        const i64 bound = 300;
        auto ideals = ideals_by_norm(k, bound);
        std::vector<int> count(size_t(bound) + 1, 0);
        i64 prev = 0;
        for (auto [g, n] : ideals) {
            CHECK(qi_norm(g) == n);
            CHECK(sector_representative(g) == g);
            CHECK(n >= prev);
            prev = n;
            ++count[size_t(n)];
        }
        // ideal counts = sum of the quadratic character over divisors
        i64 D = -field_info(k).disc;
        for (i64 n = 1; n <= bound; ++n) {
            int expect = 0;
            for (i64 d = 1; d <= n; ++d)
                if (n % d == 0) expect += kronecker(D, d);
            CHECK(count[size_t(n)] == expect);
        }
    }
    // associates collapse to one representative
    for (Field k : ALL)
        for (QuadInt u : units_of(k))
            CHECK(sector_representative(qi_mul(u, qi(k, 3, 2))) == sector_representative(qi(k, 3, 2)));
}
