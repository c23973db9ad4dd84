#include <catch2/catch_amalgamated.hpp>

#include "qva/formal.hpp"

using namespace qva;

namespace {
Box box2(int lo, int hi) { return Box::cube(2, lo, hi); }

ScalarSeries mono2(std::vector<Var> vars, int e1, int e2, Scalar c) {
    ScalarSeries s = ScalarSeries::exact(std::move(vars));
    s.set({e1, e2, 0}, std::move(c));
    return s;
}
} // namespace

TEST_CASE("iota expansion of (x1 - x2)^-1 in both directions") {
    std::vector<Var> vars{Var::x1, Var::x2};
    IotaDirection d12{{Var::x1, Var::x2}};
    IotaDirection d21{{Var::x2, Var::x1}};
    BinomialFactor f{Scalar(1), Var::x1, Scalar(-1), Var::x2, -1};
    Box w = box2(-8, 8);

    ScalarSeries a = iota_expand({f}, vars, d12, w);
    // sum_{i>=0} x1^{-1-i} x2^i
    for (int i = 0; i <= 8; ++i) {
        if (-1 - i >= -8) REQUIRE(a.coeff({-1 - i, i, 0}) == Scalar(1));
    }
    REQUIRE(a.coeff({-1, 1, 0}).is_zero());

    ScalarSeries b = iota_expand({f}, vars, d21, w);
    for (int i = 0; i <= 7; ++i) REQUIRE(b.coeff({i, -1 - i, 0}) == Scalar(-1));
    REQUIRE(b.coeff({-1, 0, 0}).is_zero());
}

TEST_CASE("iota expansion of polynomials does not depend on the direction") {
    std::vector<Var> vars{Var::x1, Var::x2};
    Scalar z3 = Scalar::zeta(3);
    BinomialFactor f{Scalar(1), Var::x1, -z3, Var::x2, 2};
    Box w = box2(-4, 4);
    ScalarSeries a = iota_expand({f}, vars, IotaDirection{{Var::x1, Var::x2}}, w);
    ScalarSeries b = iota_expand({f}, vars, IotaDirection{{Var::x2, Var::x1}}, w);
    REQUIRE(!first_difference(a, b, w).has_value());
    REQUIRE(a.coeff({2, 0, 0}) == Scalar(1));
    REQUIRE(a.coeff({1, 1, 0}) == Scalar(-2) * z3);
    REQUIRE(a.coeff({0, 2, 0}) == z3 * z3);
}

TEST_CASE("iota is a ring homomorphism on windows") {
    std::vector<Var> vars{Var::x1, Var::x2};
    IotaDirection dir{{Var::x1, Var::x2}};
    Box w = box2(-6, 6);
    // (x1-x2)^-1 * (x1-2x2)^-1 expanded jointly equals the product of the
    // separate expansions.
    BinomialFactor f1{Scalar(1), Var::x1, Scalar(-1), Var::x2, -1};
    BinomialFactor f2{Scalar(1), Var::x1, Scalar(-2), Var::x2, -1};
    ScalarSeries joint = iota_expand({f1, f2}, vars, dir, w);
    ScalarSeries a = iota_expand({f1}, vars, dir, box2(-14, 14));
    ScalarSeries b = iota_expand({f2}, vars, dir, box2(-14, 14));
    ScalarSeries prod = multiply(a, b, w);
    REQUIRE(!first_difference(joint, prod, w).has_value());
    // Multiplying back by the denominators recovers 1 on the shrunk window.
    ScalarSeries back = iota_expand(
        {f1, f2, BinomialFactor{Scalar(1), Var::x1, Scalar(-1), Var::x2, 1},
         BinomialFactor{Scalar(1), Var::x1, Scalar(-2), Var::x2, 1}},
        vars, dir, box2(-5, 5));
    REQUIRE(!first_difference(back, ScalarSeries::constant(vars, Scalar(1)), box2(-5, 5))
                 .has_value());
}

TEST_CASE("derivatives commute with iota expansion") {
    std::vector<Var> vars{Var::x1, Var::x2};
    IotaDirection dir{{Var::x1, Var::x2}};
    BinomialFactor f{Scalar(1), Var::x1, Scalar(-1), Var::x2, -2};
    // d/dx2 (x1-x2)^-2 = 2 (x1-x2)^-3
    ScalarSeries lhs = iota_expand({f}, vars, dir, box2(-9, 9)).derivative(Var::x2);
    ScalarSeries rhs =
        iota_expand({BinomialFactor{Scalar(1), Var::x1, Scalar(-1), Var::x2, -3}}, vars, dir,
                    box2(-10, 10))
            .scaled(Scalar(2));
    REQUIRE(!first_difference(lhs, rhs, box2(-8, 8)).has_value());
}

TEST_CASE("series inversion in C((x))((x0))") {
    std::vector<Var> vars{Var::x, Var::x0};
    Box w = Box::cube(2, -10, 10);

    SECTION("f = x0 + x") {
        ScalarSeries f = mono2(vars, 0, 1, Scalar(1)) + mono2(vars, 1, 0, Scalar(1));
        ScalarSeries g = series_invert(f, Var::x, Var::x0, w);
        // g = x^-1 - x0 x^-2 + x0^2 x^-3 - ...
        REQUIRE(g.coeff({-1, 0, 0}) == Scalar(1));
        REQUIRE(g.coeff({-2, 1, 0}) == Scalar(-1));
        REQUIRE(g.coeff({-4, 3, 0}) == Scalar(-1));
        ScalarSeries prod = multiply(f, g, Box::cube(2, -8, 8));
        REQUIRE(!first_difference(prod, ScalarSeries::constant(vars, Scalar(1)),
                                  Box::cube(2, -8, 8))
                     .has_value());
    }
    SECTION("monomial f = x0^2 x") {
        ScalarSeries f = mono2(vars, 1, 2, Scalar(1));
        ScalarSeries g = series_invert(f, Var::x, Var::x0, w);
        REQUIRE(g.coeff({-1, -2, 0}) == Scalar(1));
        REQUIRE(g.terms().size() == 1);
    }
    SECTION("product of shifted factors with zeta_4") {
        Scalar z4 = Scalar::zeta(4);
        // f = (x0 + z4 x)(x0 + z4^-1 x)
        ScalarSeries l1 = mono2(vars, 0, 1, Scalar(1)) + mono2(vars, 1, 0, z4);
        ScalarSeries l2 = mono2(vars, 0, 1, Scalar(1)) + mono2(vars, 1, 0, z4.inverse());
        ScalarSeries f = multiply(l1, l2, Box::full(2));
        ScalarSeries g = series_invert(f, Var::x, Var::x0, w);
        ScalarSeries prod = multiply(f, g, Box::cube(2, -8, 8));
        REQUIRE(!first_difference(prod, ScalarSeries::constant(vars, Scalar(1)),
                                  Box::cube(2, -8, 8))
                     .has_value());
    }
    SECTION("zero input is invalid") {
        ScalarSeries z = ScalarSeries::exact(vars);
        REQUIRE_THROWS_AS(series_invert(z, Var::x, Var::x0, w), invalid_input);
    }
}

TEST_CASE("taylor shift") {
    Box w = Box::cube(2, -8, 8);
    SECTION("polynomial case") {
        ScalarSeries s = ScalarSeries::exact({Var::x});
        s.set({2, 0, 0}, Scalar(1));
        ScalarSeries t = taylor_shift(s, Scalar(1), Var::x0, w);
        // (x + x0)^2 = x^2 + 2 x x0 + x0^2 with vars ordered (x, x0)
        REQUIRE(t.coeff({2, 0, 0}) == Scalar(1));
        REQUIRE(t.coeff({1, 1, 0}) == Scalar(2));
        REQUIRE(t.coeff({0, 2, 0}) == Scalar(1));
    }
    SECTION("x^-1 expands binomially") {
        ScalarSeries s = ScalarSeries::exact({Var::x});
        s.set({-1, 0, 0}, Scalar(1));
        ScalarSeries t = taylor_shift(s, Scalar(1), Var::x0, w);
        for (int i = 0; i <= 7; ++i)
            REQUIRE(t.coeff({-1 - i, i, 0}) == Scalar(i % 2 ? -1 : 1));
    }
    SECTION("shift commutes with d/dx") {
        ScalarSeries s = ScalarSeries::exact({Var::x});
        s.set({-2, 0, 0}, Scalar(3));
        s.set({1, 0, 0}, Scalar(1));
        s.set({4, 0, 0}, Scalar(-2));
        ScalarSeries a = taylor_shift(s.derivative(Var::x), Scalar(1), Var::x0, w);
        ScalarSeries b = taylor_shift(s, Scalar(1), Var::x0, Box::cube(2, -9, 9)).derivative(Var::x);
        REQUIRE(!first_difference(a, b, Box::cube(2, -7, 7)).has_value());
    }
}

TEST_CASE("cancelation: dividing out a polynomial factor recovers the series") {
    // If f*H is known and H lives in C((x1))((x2)), H = iota(f^-1) * (f*H).
    std::vector<Var> vars{Var::x1, Var::x2};
    IotaDirection dir{{Var::x1, Var::x2}};
    ScalarSeries h = iota_expand({BinomialFactor{Scalar(1), Var::x1, Scalar(-1), Var::x2, -2}},
                                 vars, dir, Box::cube(2, -20, 20));
    ScalarSeries f = mono2(vars, 1, 0, Scalar(1)) + mono2(vars, 0, 1, Scalar(-1)); // x1 - x2
    ScalarSeries fh = multiply(f, h, Box::cube(2, -18, 18));
    ScalarSeries finv = series_invert(f, Var::x1, Var::x2, Box::cube(2, -16, 16));
    ScalarSeries rec = multiply(finv, fh, Box::cube(2, -8, 8));
    REQUIRE(!first_difference(rec, h, Box::cube(2, -7, 7)).has_value());
}
