#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyarith/curves.hpp"
#include "cyarith/errors.hpp"
#include "cyarith/lseries.hpp"

#include <cmath>
#include <filesystem>

using namespace cyarith;

TEST_CASE("symmetric power traces of a Frobenius pair") {
    CHECK(cube_trace(-2, 5) == 22);
    CHECK(cube_trace(0, 7) == 0);
    CHECK(cube_trace(6, 13) == -18);
    CHECK(power_trace(-2, 5, 0) == 2);
    CHECK(power_trace(-2, 5, 1) == -2);
    CHECK(power_trace(-2, 5, 2) == -6);
    for (i64 p : {5LL, 13LL, 29LL})
        for (i64 a = -4; a <= 4; ++a) {
            if (a * a > 4 * p) continue;
            CHECK(power_trace(a, p, 3) == cube_trace(a, p));
            for (int n = 0; n <= 15; ++n)
                CHECK(std::abs(double(power_trace(a, p, n))) <= 2 * std::pow(double(p), n / 2.0) + 1e-6);
        }
}

TEST_CASE("weight-1 tables against the point counts and the ideal sums") {
    auto curve = make_curve(4, 1);
    auto t = curve_coefficients(curve, 200);
    CHECK(t.weight == 1);
    CHECK(t.level == 32);
    CHECK(t.origin == "point-count");
    CHECK(t.at(1) == 1);
    CHECK(t.at(2) == 0);
    CHECK(t.at(5) == -2);
    CHECK(t.at(13) == 6);
    CHECK(t.at(25) == -1);  // a_5^2 - 5
    CHECK(t.at(9) == -3);   // inert square
    CHECK(t.at(65) == -12); // multiplicative
    CHECK(t.at(45) == 6);
    for (i64 p : good_primes(curve, 200)) CHECK(t.at(p) == count_points_naive(curve, p));

    auto ideal = hecke_qexpansion(hecke_character_of(curve), 200);
    CHECK(ideal.origin == "ideal-sum");
    CHECK(ideal.level == t.level);
    CHECK(ideal.a == t.a);
}

TEST_CASE("weight-1 table of the conductor-49 curve") {
    auto t = curve_coefficients(make_curve(7, 1), 60);
    CHECK(t.level == 49);
    CHECK(t.at(2) == 1);
    CHECK(t.at(4) == -1);
    CHECK(t.at(8) == -3);
    CHECK(t.at(7) == 0);
    CHECK(t.at(11) == 4);
    CHECK(t.at(29) == 2);
    CHECK(t.at(3) == 0);
    CHECK(t.at(9) == -3);
    auto ideal = hecke_qexpansion(hecke_character_of(make_curve(7, 1)), 60);
    CHECK(ideal.a == t.a);
}

TEST_CASE("bad primes of a twisted curve vanish on both routes") {
    auto curve = make_curve(4, 5);
    auto t = curve_coefficients(curve, 60);
    CHECK(t.level == 800);
    CHECK(t.at(2) == 0);
    CHECK(t.at(5) == 0);
    CHECK(t.at(10) == 0);
    for (i64 p : good_primes(curve, 60)) CHECK(t.at(p) == count_points_naive(curve, p));
    CHECK(hecke_qexpansion(hecke_character_of(curve), 60).a == t.a);
}

TEST_CASE("threefold tables: the two routes agree and inert primes vanish") {
    for (int fam : {4, 3, 7}) {
        CAPTURE(fam);
        auto t = threefold_coefficients(fam, {{1, 1}}, 300);
        CHECK(t.weight == 3);
        CHECK(t.level == hecke_character_of(make_curve(fam, 1)).level);
        auto ideal = hecke_qexpansion(nfold_character(make_curve(fam, 1), 3), 300);
        CHECK(ideal.a == t.a);
        for (i64 p : primes_up_to(300))
            if (factor_prime(cm_field_of(fam), p).kind == PrimeKind::INERT) CHECK(t.at(p) == 0);
    }
    auto t = threefold_coefficients(4, {{1, 1}}, 300);
    CHECK(t.at(5) == 22);
    CHECK(t.at(13) == -18);
    CHECK(t.at(9) == -27); // inert square: 3^3
}

TEST_CASE("multi-factor twists multiply into one total twist") {
    auto direct = threefold_coefficients(3, {{2, 1}}, 120);
    auto same = threefold_coefficients(3, {{1, 2}, {2, 1}}, 120);
    CHECK(same.a == direct.a);
    CHECK(same.level == direct.level);
    CHECK_THROWS_AS(threefold_coefficients(3, {{0, 1}}, 50), std::invalid_argument);
    CHECK_THROWS_AS(nfold_coefficients(4, 2, {{1, 1}}, 50), std::invalid_argument);
    CHECK_THROWS_AS(nfold_coefficients(4, -3, {{1, 1}}, 50), std::invalid_argument);
}

TEST_CASE("five-fold table matches the fifth symmetric trace at good primes") {
    auto t = nfold_coefficients(4, 5, {{1, 1}}, 120);
    CHECK(t.weight == 5);
    auto curve = make_curve(4, 1);
    for (i64 p : good_primes(curve, 120)) {
        if (factor_prime(Field::GAUSS, p).kind != PrimeKind::SPLIT) continue;
        CHECK(t.at(p) == power_trace(ap_via_cm(curve, p), p, 5));
    }
}

TEST_CASE("dirichlet twisting of a table") {
    auto psi = kronecker_char(-4);
    CHECK(psi.modulus == 4);
    CHECK(psi(1) == 1);
    CHECK(psi(3) == -1);
    CHECK(psi(2) == 0);
    CHECK(psi(7) == -1);
    auto p5 = kronecker_char(5);
    CHECK(p5.modulus == 5);
    CHECK(p5(2) == -1);
    CHECK(p5(4) == 1);

    auto base = curve_coefficients(make_curve(4, 1), 120);
    auto tw = twist_series(base, psi);
    CHECK(tw.level == 32 * 16);
    CHECK(tw.origin == "twist");
    CHECK(tw.at(5) == -2);
    CHECK(tw.at(13) == 6);
    CHECK(tw.at(7) == 0);
    CHECK(tw.at(25) == -1);
    CHECK(tw.at(2) == 0);
    for (i64 n = 1; n <= 120; ++n) CHECK(tw.at(n) == base.at(n) * psi(n));
}

TEST_CASE("euler factors by splitting type") {
    auto chi = hecke_character_of(make_curve(4, 1));
    auto e5 = euler_factor(chi, 5);
    CHECK(e5.degree == 2);
    CHECK(e5.linear == 2);
    CHECK(e5.quadratic == 5);
    auto e3 = euler_factor(chi, 3);
    CHECK(e3.degree == 2);
    CHECK(e3.linear == 0);
    CHECK(e3.quadratic == 3);
    auto e2 = euler_factor(chi, 2);
    CHECK(e2.degree == 0);

    auto chi3 = power_character(chi, 3);
    auto f7 = euler_factor(chi3, 7);
    CHECK(f7.degree == 2);
    CHECK(f7.linear == 0);
    CHECK(f7.quadratic == 343);
    auto f5 = euler_factor(chi3, 5);
    CHECK(f5.linear == -22);
    CHECK(f5.quadratic == 125);

    auto chi72 = power_character(hecke_character_of(make_curve(7, 1)), 2);
    auto r7 = euler_factor(chi72, 7);
    CHECK(r7.degree == 1);
    CHECK(r7.linear == 7);
    CHECK_THROWS_AS(euler_factor(chi, 4), std::invalid_argument);
}

TEST_CASE("coefficient cache round trip") {
    auto t = threefold_coefficients(4, {{1, 1}}, 50);
    auto path = (std::filesystem::temp_directory_path() / "cyarith_cache_test.tsv").string();
    write_coefficient_cache(path, 4, 1, 3, t);
    auto r = read_coefficient_cache(path, 4, 1, 3);
    REQUIRE(r.has_value());
    CHECK(r->a == t.a);
    CHECK(r->level == t.level);
    CHECK(r->weight == t.weight);
    CHECK(!read_coefficient_cache(path, 4, 2, 3).has_value());
    CHECK(!read_coefficient_cache(path, 6, 1, 3).has_value());
    CHECK(!read_coefficient_cache(path + ".missing", 4, 1, 3).has_value());
    std::filesystem::remove(path);
}
