#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyarith/errors.hpp"
#include "cyarith/jacobian.hpp"

#include <cmath>
#include <complex>

using namespace cyarith;

namespace {

// Frozen to the digits of Gamma(1/4)^2/(2 sqrt(2 pi)) and
// Gamma(1/3)^3/(2^{4/3} sqrt(3) pi).
const double LAMBDA = 2.6220575542921198;
const double MU = 1.4021821053254548;

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

} // namespace

TEST_CASE("transcendental scale constants") {
    CHECK(rel_err(transcendental_scale(4), LAMBDA) < 1e-12);
    CHECK(rel_err(transcendental_scale(3), MU) < 1e-12);
    CHECK(transcendental_scale(6) == transcendental_scale(3));
    CHECK_THROWS_AS(transcendental_scale(7), std::invalid_argument);
    CHECK_THROWS_AS(transcendental_scale(5), std::invalid_argument);
}

TEST_CASE("square lattice periods") {
    PeriodLattice l1 = numeric_periods(make_curve(4, 1));
    CHECK(std::abs(l1.tau - std::complex<double>(0, 1)) < 1e-9);
    CHECK(rel_err(l1.scale, LAMBDA) < 1e-9);
    CHECK(std::abs(lattice_j(l1) - 1728.0) < 1e-9 * 1728);

    // quartic twist: homothety by |T|^{-1/4}, same tau
    for (i64 T : {5, -1, 2, -3, 12}) {
        PeriodLattice lt = numeric_periods(make_curve(4, T));
        CHECK(std::abs(lt.tau - std::complex<double>(0, 1)) < 1e-9);
        CHECK(rel_err(lt.scale * std::pow(std::abs(double(T)), 0.25), LAMBDA) < 1e-9);
    }

    // fourth-power twist is the same curve, so the identical lattice
    PeriodLattice l16 = numeric_periods(make_curve(4, 16));
    CHECK(l16.scale == l1.scale);
    CHECK(l16.tau == l1.tau);
}

TEST_CASE("triangular lattice periods") {
    for (int family : {3, 6}) {
        PeriodLattice l1 = numeric_periods(make_curve(family, 1));
        CHECK(std::abs(std::abs(l1.tau) - 1.0) < 1e-9);
        CHECK(std::abs(std::abs(l1.tau.real()) - 0.5) < 1e-9);
        CHECK(l1.tau.imag() > 0);
        CHECK(rel_err(l1.scale, MU) < 1e-9);
        CHECK(std::abs(lattice_j(l1)) < 1e-9);
    }
    for (i64 T : {2, -1, 8, -27, 5}) {
        PeriodLattice lt = numeric_periods(make_curve(6, T));
        CHECK(rel_err(lt.scale * std::pow(std::abs(double(T)), 1.0 / 6.0), MU) < 1e-9);
        CHECK(std::abs(lattice_j(lt)) < 1e-9);
    }
    CHECK_THROWS_AS(numeric_periods(make_curve(7, 1)), std::invalid_argument);
}

TEST_CASE("eisenstein model recomputation") {
    // independent route: q-series g2/g3 from the reduced basis must rebuild
    // the defining equation y^2 = x^3 - Tx resp. x^3 - T (as Y^2 = 4X^3 - ...)
    for (i64 T : {1, 5, -2}) {
        auto [g2, g3] = weierstrass_invariants(numeric_periods(make_curve(4, T)));
        CHECK(std::abs(g2 - std::complex<double>(4.0 * T)) < 1e-9 * std::max<double>(1, 4 * std::abs(T)));
        CHECK(std::abs(g3) < 1e-9);
    }
    for (i64 T : {1, 2, -1}) {
        auto [g2, g3] = weierstrass_invariants(numeric_periods(make_curve(3, T)));
        CHECK(std::abs(g2) < 1e-9);
        CHECK(std::abs(g3 - std::complex<double>(4.0 * T)) < 1e-9 * std::max<double>(1, 4 * std::abs(T)));
    }
    // a hand-made square lattice of scale 1: g2 real, g3 = 0, j = 1728
    PeriodLattice unit{{1, 0}, {0, 1}, {0, 1}, 1.0};
    auto [g2, g3] = weierstrass_invariants(unit);
    CHECK(std::abs(g3) < 1e-12);
    CHECK(std::abs(g2.imag()) < 1e-12);
    CHECK(std::abs(lattice_j(unit) - 1728.0) < 1e-6);
}

TEST_CASE("q-model bookkeeping") {
    CHECK(q_model(4, {{1, 1}, {1, 1}, {1, 1}}) == make_curve(4, 1));
    CHECK(q_model(4, {{3, 2}, {1, 1}, {1, 1}}) == make_curve(4, 9));
    CHECK(q_model(6, {{2, 1}, {2, 1}, {2, 1}}) == make_curve(6, 8));
    // permutation invariance
    CHECK(q_model(4, {{3, 2}, {5, 1}, {2, 3}}) == q_model(4, {{2, 3}, {3, 2}, {5, 1}}));
    CHECK(q_model(4, {{5, 1}, {3, 2}, {2, 3}}) == q_model(4, {{3, 2}, {5, 1}, {2, 3}}));
    CHECK_THROWS_AS(q_model(4, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(q_model(7, {{1, 1}}), std::invalid_argument);
}

TEST_CASE("twist class order") {
    CHECK(character_order(4, {{1, 1}}) == 1);
    CHECK(character_order(4, {{2, 1}}) == 4);
    CHECK(character_order(6, {{4, 1}}) == 3);
    CHECK(character_order(6, {{2, 1}}) == 6);
    CHECK(character_order(4, {{9, 1}}) == 2);
    CHECK(character_order(6, {{8, 1}}) == 2);
    CHECK(character_order(4, {{-1, 1}}) == 2);
    CHECK(character_order(6, {{-1, 1}}) == 2);
    CHECK(character_order(6, {{-3, 1}}) == 6);
    // fourth/sixth power insensitivity
    for (i64 s : {2, 3, 10}) {
        CHECK(character_order(4, {{7, 1}, {s, 4}}) == character_order(4, {{7, 1}}));
        CHECK(character_order(6, {{7, 1}, {s, 6}}) == character_order(6, {{7, 1}}));
    }
    CHECK_THROWS_AS(character_order(4, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("threefold verdicts") {
    YuiVerdict v = yui_verdict(4, {{3, 2}});
    CHECK(v.holds);
    CHECK(v.character_order == 2);
    CHECK(v.total_twist == 9);
    CHECK(!v.reason.empty());

    CHECK(!yui_verdict(4, {{2, 1}}).holds);
    CHECK(yui_verdict(6, {{2, 3}}).holds);   // T = 8 is a cube
    CHECK(!yui_verdict(6, {{4, 1}}).holds);  // order 3 does not divide 2
    CHECK(yui_verdict(4, {{1, 1}}).holds);
    CHECK(yui_verdict(6, {{-2, 3}}).holds);  // T = -8 = (-2)^3

    // sign subtleties: -1 and -4 are trivial-square classes for family 4
    CHECK(yui_verdict(4, {{-1, 1}}).holds);
    CHECK(yui_verdict(4, {{-4, 1}}).holds);
    CHECK(yui_verdict(4, {{-9, 1}}).holds);
    CHECK(!yui_verdict(4, {{-8, 1}}).holds);
    CHECK(!yui_verdict(6, {{-4, 1}}).holds);
    CHECK(yui_verdict(6, {{-27, 1}}).holds);

    // n-fold generalization
    CHECK(nfold_verdict(4, 5, {{2, 1}}).holds);  // order 4 divides 4
    for (i64 T : {1, 2, 3, 4, -5, 12})
        CHECK(nfold_verdict(6, 7, {{T, 1}}).holds);  // every order divides 6
    CHECK(!nfold_verdict(6, 3, {{4, 1}}).holds);
    CHECK(!nfold_verdict(6, 5, {{3, 1}}).holds);  // order 6 does not divide 4
    CHECK(!nfold_verdict(6, 5, {{9, 1}}).holds);  // order 3 does not divide 4 either
    CHECK(nfold_verdict(6, 13, {{9, 1}}).holds);  // but divides 12
}

TEST_CASE("verdict error paths") {
    CHECK_THROWS_AS(nfold_verdict(4, 4, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(nfold_verdict(4, 1, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(nfold_verdict(4, 2, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(yui_verdict(4, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(yui_verdict(7, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(yui_verdict(4, {{2, -1}}), std::invalid_argument);
}

TEST_CASE("yui verdict equals threefold verdict at n = 3") {
    for (int family : {3, 4, 6})
        for (i64 T : {1, 2, 3, 4, 8, 9, -1, -2, -8, 16, 25, 27})
            CHECK(yui_verdict(family, {{T, 1}}).holds == nfold_verdict(family, 3, {{T, 1}}).holds);
}

TEST_CASE("intermediate jacobian") {
    IntermediateJacobian j4 = intermediate_jacobian(4, {});
    CHECK(rel_err(j4.lattice.scale, LAMBDA * LAMBDA * LAMBDA) < 1e-9);
    CHECK(std::abs(j4.lattice.tau - std::complex<double>(0, 1)) < 1e-9);
    CHECK(j4.model == make_curve(4, 1));

    IntermediateJacobian j6 = intermediate_jacobian(6, {});
    CHECK(rel_err(j6.lattice.scale, MU * MU * MU) < 1e-9);
    CHECK(std::abs(std::abs(j6.lattice.tau) - 1.0) < 1e-9);
    CHECK(std::abs(std::abs(j6.lattice.tau.real()) - 0.5) < 1e-9);
    CHECK(j6.model == make_curve(6, 1));

    IntermediateJacobian jt = intermediate_jacobian(4, {{25, 1}, {25, 1}, {25, 1}});
    CHECK(jt.model == make_curve(4, 25));  // 5^6 reduced modulo fourth powers
    CHECK(rel_err(jt.lattice.scale * std::pow(25.0, 3.0 / 4.0), LAMBDA * LAMBDA * LAMBDA) < 1e-9);

    // the three factor scales multiply, so a factor order cannot matter
    IntermediateJacobian a = intermediate_jacobian(6, {{2, 1}, {3, 1}, {5, 1}});
    IntermediateJacobian b = intermediate_jacobian(6, {{5, 1}, {2, 1}, {3, 1}});
    CHECK(a.lattice.scale == doctest::Approx(b.lattice.scale).epsilon(1e-12));
    CHECK(a.model == b.model);

    CHECK_THROWS_AS(intermediate_jacobian(7, {}), std::invalid_argument);
    CHECK_THROWS_AS(intermediate_jacobian(4, {{1, 1}, {1, 1}, {1, 1}, {1, 1}}),
                    std::invalid_argument);
}
