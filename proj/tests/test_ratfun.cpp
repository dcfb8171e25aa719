#include "doctest.h"

#include <random>

#include "isored/errors.hpp"
#include "isored/ratfun.hpp"
#include "support/build.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace isored;
using build::P;
using build::RF;

TEST_CASE("construction cancels common factors and normalizes the denominator") {
    // (l^2 - 1) / (l - 1) collapses to l + 1
    CHECK(rf_make(P({-1, 0, 1}), P({-1, 1})) == RF({1, 1}, {1}));
    // a denominator scale moves into the numerator: 2l / 2 is l
    CHECK(rf_make(P({0, 2}), P({2})) == rf_lambda());
    CHECK(rf_make(P({}), P({5})) == rf_zero());
    CHECK_THROWS_AS(rf_make(P({1}), P({})), ZeroDenominator);
}

TEST_CASE("arithmetic on pinned elements") {
    const RationalFunction inv_lm1 = RF({1}, {-1, 1}); // 1/(l-1)
    const RationalFunction inv_l = RF({1}, {0, 1});    // 1/l

    CHECK(rf_add(inv_lm1, inv_l) == RF({-1, 2}, {0, -1, 1})); // (2l-1)/(l^2-l)
    CHECK(rf_mul(inv_l, inv_l) == RF({1}, {0, 0, 1}));        // 1/l^2
    CHECK(rf_div(RF({1, 1}, {1}), rf_lambda()) == RF({1, 1}, {0, 1}));
    CHECK(rf_sub(inv_lm1, inv_lm1) == rf_zero());
    CHECK(rf_neg(rf_int(3)) == rf_int(-3));
    CHECK(rf_pow(inv_l, 3) == RF({1}, {0, 0, 0, 1}));
    CHECK_THROWS_AS(rf_div(rf_one(), rf_zero()), DivisionByZeroElement);
}

TEST_CASE("growth exponent") {
    CHECK(rf_pi(rf_lambda()) == 1);
    CHECK(rf_pi(rf_int(7)) == 0);
    CHECK(rf_pi(RF({1}, {-1, 1})) == -1);
    CHECK(rf_pi(RF({1, 0, 1}, {0, 1})) == 1); // (l^2+1)/l
    CHECK_THROWS_AS(rf_pi(rf_zero()), UndefinedDegree);
}

TEST_CASE("polynomial gcd and square-free splitting, pinned") {
    CHECK(poly_gcd(P({-1, 0, 1}), P({-1, 1})) == P({-1, 1}));
    CHECK_THROWS_AS(poly_gcd(Polynomial::zero(), Polynomial::zero()), BothZero);
    CHECK_THROWS_AS(squarefree_factor(Polynomial::zero()), ZeroPolynomial);

    // l^2 (l - 1): parts of multiplicity 1 and 2, in increasing order
    auto sf = squarefree_factor(P({0, 0, -1, 1}));
    REQUIRE(sf.factors.size() == 2);
    CHECK(sf.unit == GaussianRational(1));
    CHECK(sf.factors[0].first == P({-1, 1}));
    CHECK(sf.factors[0].second == 1);
    CHECK(sf.factors[1].first == P({0, 1}));
    CHECK(sf.factors[1].second == 2);

    // (l - 1)^3
    auto cube = squarefree_factor(P({-1, 3, -3, 1}));
    REQUIRE(cube.factors.size() == 1);
    CHECK(cube.factors[0].first == P({-1, 1}));
    CHECK(cube.factors[0].second == 3);
}

TEST_CASE("square-free output reassembles the input exactly") {
    gens::Rng rng(20240812);
    for (int trial = 0; trial < 60; ++trial) {
        // force repeated factors so multiplicities above 1 actually occur
        Polynomial p = gens::random_poly(rng, 2);
        p = p * poly_pow(gens::random_poly(rng, 1), gens::pick(rng, 1, 3));
        auto sf = squarefree_factor(p);
        Polynomial back = Polynomial::constant(sf.unit);
        for (std::size_t k = 0; k < sf.factors.size(); ++k) {
            const auto& [f, m] = sf.factors[k];
            CHECK(f == monic(f));
            CHECK(m >= 1);
            if (k > 0) CHECK(sf.factors[k - 1].second < m);
            for (std::size_t l = k + 1; l < sf.factors.size(); ++l)
                CHECK(poly_gcd(f, sf.factors[l].first).is_one());
            back = back * poly_pow(f, static_cast<unsigned>(m));
        }
        CHECK(back == p);
    }
}

TEST_CASE("field axioms against uncanonicalized pair arithmetic") {
    gens::Rng rng(911);
    for (int trial = 0; trial < 200; ++trial) {
        const RationalFunction a = gens::random_rf(rng), b = gens::random_rf(rng),
                               c = gens::random_rf(rng);
        const auto ra = oracles::raw_of(a), rb = oracles::raw_of(b);

        CHECK(rf_add(a, b) == oracles::canon(oracles::raw_add(ra, rb)));
        CHECK(rf_mul(a, b) == oracles::canon(oracles::raw_mul(ra, rb)));
        if (!b.is_zero()) CHECK(rf_div(a, b) == oracles::canon(oracles::raw_div(ra, rb)));

        CHECK(rf_add(a, b) == rf_add(b, a));
        CHECK(rf_mul(a, b) == rf_mul(b, a));
        CHECK(rf_add(rf_add(a, b), c) == rf_add(a, rf_add(b, c)));
        CHECK(rf_mul(rf_mul(a, b), c) == rf_mul(a, rf_mul(b, c)));
        CHECK(rf_mul(a, rf_add(b, c)) == rf_add(rf_mul(a, b), rf_mul(a, c)));
        CHECK(rf_add(a, rf_neg(a)) == rf_zero());
        if (!a.is_zero()) CHECK(rf_mul(a, rf_div(rf_one(), a)) == rf_one());
        CHECK(rf_add(a, rf_zero()) == a);
        CHECK(rf_mul(a, rf_one()) == a);
    }
}

TEST_CASE("canonicalization is idempotent") {
    gens::Rng rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        const RationalFunction a = gens::random_rf(rng);
        CHECK(rf_make(a.num, a.den) == a);
        CHECK(monic(a.den) == a.den);
        if (!a.is_zero()) CHECK(poly_gcd(a.num, a.den).is_one());
    }
}

TEST_CASE("growth exponent laws") {
    gens::Rng rng(77);
    int multiplicative = 0, bounded = 0, shifted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const RationalFunction a = gens::random_rf(rng), b = gens::random_rf(rng);
        if (!a.is_zero() && !b.is_zero()) {
            CHECK(rf_pi(rf_mul(a, b)) == rf_pi(a) + rf_pi(b));
            ++multiplicative;
            const RationalFunction sum = rf_add(a, b);
            if (!sum.is_zero()) {
                CHECK(rf_pi(sum) <= std::max(rf_pi(a), rf_pi(b)));
                ++bounded;
            }
            // dividing by (l - a) with pi(a) <= 0 lowers the exponent by one
            if (rf_pi(a) <= 0) {
                CHECK(rf_pi(rf_div(b, rf_sub(rf_lambda(), a))) == rf_pi(b) - 1);
                ++shifted;
            }
        }
    }
    CHECK(multiplicative > 200);
    CHECK(bounded > 150);
    CHECK(shifted > 50);
}

TEST_CASE("numeric evaluation agrees with exact arithmetic") {
    gens::Rng rng(1234);
    const std::complex<double> pts[] = {{0.3, 0.0}, {-1.7, 0.0}, {0.5, 0.5}, {2.0, -1.0}};
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const RationalFunction a = gens::random_rf(rng, 3), b = gens::random_rf(rng, 3);
        const RationalFunction sum = rf_add(a, b);
        for (const auto& z : pts) {
            std::complex<double> va, vb, vs;
            try {
                va = rf_eval(a, z);
                vb = rf_eval(b, z);
                vs = rf_eval(sum, z);
            } catch (const PoleAtPoint&) {
                continue;
            }
            const double scale = std::max({1.0, std::abs(va), std::abs(vb), std::abs(vs)});
            CHECK(std::abs(vs - (va + vb)) <= 1e-9 * scale);
            CHECK(std::abs(va - oracles::eval_pair(a.num, a.den, z)) <= 1e-9 * scale);
            ++checked;
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("evaluation at a pole is refused") {
    const RationalFunction w = RF({1}, {-1, 1}); // 1/(l-1)
    CHECK_THROWS_AS(rf_eval(w, {1.0, 0.0}), PoleAtPoint);
    CHECK(std::abs(rf_eval(w, {2.0, 0.0}) - std::complex<double>(1.0, 0.0)) < 1e-12);
    // the cancelled pole of (l^2-1)/(l-1) is gone after canonicalization
    CHECK(std::abs(rf_make(P({-1, 0, 1}), P({-1, 1})).num.eval({1.0, 0.0}) -
                   std::complex<double>(2.0, 0.0)) < 1e-12);
}

TEST_CASE("complex rational coefficients stay exact") {
    const GaussianRational i = GaussianRational::imaginary_unit();
    const RationalFunction w = rf_constant(i);
    CHECK(rf_mul(w, w) == rf_int(-1));
    CHECK(rf_div(rf_one(), w) == rf_constant(GaussianRational(mpq_class(0), mpq_class(-1))));
    // (l - i)(l + i) = l^2 + 1
    const RationalFunction lmi = rf_sub(rf_lambda(), w), lpi = rf_add(rf_lambda(), w);
    CHECK(rf_mul(lmi, lpi) == RF({1, 0, 1}, {1}));
}
