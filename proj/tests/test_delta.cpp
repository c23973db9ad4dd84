#include <catch2/catch_amalgamated.hpp>

#include "qva/decompose.hpp"

using namespace qva;

TEST_CASE("delta coefficient lattice") {
    Box w = Box::cube(2, -9, 9);
    SECTION("plain delta is the defining series") {
        ScalarSeries d = delta_coefficients(Scalar(1), 0, w);
        for (int m = -8; m <= 8; ++m) REQUIRE(d.coeff({-m - 1, m, 0}) == Scalar(1));
        REQUIRE(d.coeff({0, 0, 0}).is_zero());
    }
    SECTION("substituted direction zeta3") {
        Scalar z3 = Scalar::zeta(3);
        ScalarSeries d = delta_coefficients(z3, 0, w);
        for (int m = -8; m <= 8; ++m) REQUIRE(d.coeff({-m - 1, m, 0}) == z3.pow(m));
    }
    SECTION("second derivative value") {
        ScalarSeries d = delta_coefficients(Scalar(1), 2, w);
        // coefficient of x1^-4 x2^1: m = 3, falling factorial 3*2 = 6
        REQUIRE(d.coeff({-4, 1, 0}) == Scalar(6));
    }
    SECTION("zero direction is invalid") {
        REQUIRE_THROWS_AS(delta_coefficients(Scalar(0), 0, w), invalid_input);
    }
}

TEST_CASE("two-sided delta identity") {
    Box w = Box::cube(3, -8, 8);
    for (const Scalar& a :
         {Scalar(1), Scalar(-1), Scalar::zeta(3), Scalar::zeta(4)}) {
        CheckOutcome r = verify_delta_identity(a, w);
        INFO(r.detail);
        REQUIRE(r.pass);
    }
}

TEST_CASE("delta identity negative control") {
    Box w = Box::cube(3, -6, 6);
    ScalarSeries lhs1 = delta_kernel3(Var::x0, Scalar(1), Var::x1, Scalar(-1), Var::x2, w);
    ScalarSeries lhs2 = delta_kernel3(Var::x0, Scalar(-1), Var::x2, Scalar(1), Var::x1, w);
    ScalarSeries rhs = delta_kernel3(Var::x1, Scalar(1), Var::x2, Scalar(1), Var::x0, w);
    ScalarSeries perturbed = lhs2;
    perturbed.set({1, 2, 3}, lhs2.coeff({1, 2, 3}) + Scalar(1));
    auto diff = first_difference(lhs1 - perturbed, rhs, w);
    REQUIRE(diff.has_value());
    REQUIRE(*diff == Exp{1, 2, 3});
}

TEST_CASE("delta substitution rules") {
    std::vector<Var> vars3{Var::x0, Var::x1, Var::x2};
    Box w2 = Box::cube(2, -8, 8);
    SECTION("x1 under the numerator-first delta") {
        ScalarSeries g = ScalarSeries::exact(vars3);
        g.set({0, 1, 0}, Scalar(1)); // g = x1
        ScalarSeries s = delta_substitute(g, DeltaSubstitutionForm::NumeratorFirst, Scalar(1), w2);
        REQUIRE(s.coeff({1, 0, 0}) == Scalar(1)); // x0
        REQUIRE(s.coeff({0, 1, 0}) == Scalar(1)); // x2
        REQUIRE(s.terms().size() == 2);
    }
    SECTION("x1^2 under the single-delta form with zeta4") {
        Scalar z4 = Scalar::zeta(4);
        ScalarSeries g = ScalarSeries::exact(vars3);
        g.set({0, 2, 0}, Scalar(1));
        ScalarSeries s = delta_substitute(g, DeltaSubstitutionForm::SingleDelta, z4, w2);
        // (z4 x2 + x0)^2 = z4^2 x2^2 + 2 z4 x2 x0 + x0^2
        REQUIRE(s.coeff({0, 2, 0}) == z4 * z4);
        REQUIRE(s.coeff({1, 1, 0}) == Scalar(2) * z4);
        REQUIRE(s.coeff({2, 0, 0}) == Scalar(1));
    }
    SECTION("nonnegative-x1 precondition") {
        ScalarSeries g = ScalarSeries::exact(vars3);
        g.set({0, -1, 0}, Scalar(1));
        REQUIRE_THROWS_AS(
            delta_substitute(g, DeltaSubstitutionForm::NumeratorSecond, Scalar(1), w2),
            invalid_input);
    }
    SECTION("delta * g equals delta * substituted g") {
        // Random-ish polynomial g; both products agree on the window.
        std::mt19937 rng(2024);
        std::uniform_int_distribution<int> ed(-2, 2), cd(-3, 3);
        ScalarSeries g = ScalarSeries::exact(vars3);
        for (int t = 0; t < 6; ++t)
            g.add_term({ed(rng), std::abs(ed(rng)), ed(rng)}, Scalar(cd(rng)));
        Scalar alpha = Scalar::zeta(3);
        Box w3 = Box::cube(3, -6, 6);
        Box big = Box::cube(3, -14, 14);
        ScalarSeries delta = delta_kernel3(Var::x1, alpha, Var::x2, Scalar(1), Var::x0, big);
        ScalarSeries sub = delta_substitute(g, DeltaSubstitutionForm::SingleDelta, alpha,
                                            Box::cube(2, -14, 14));
        ScalarSeries lhs = multiply(delta, g, w3);
        ScalarSeries rhs = multiply(delta, promoted(sub, vars3), w3);
        auto diff = first_difference(lhs, rhs, w3);
        INFO((diff ? "differs" : "equal"));
        REQUIRE(!diff.has_value());
    }
}

TEST_CASE("locality powers kill delta derivatives") {
    // (x1 - b x2)^m (d/dx2)^n delta vanishes for m > n.
    for (const Scalar& beta : {Scalar(1), Scalar::zeta(3)}) {
        for (int n = 0; n <= 2; ++n) {
            ScalarSeries d = delta_coefficients(beta, n, Box::cube(2, -12, 12));
            std::vector<Var> vars{Var::x1, Var::x2};
            ScalarSeries lin = ScalarSeries::exact(vars);
            lin.set({1, 0, 0}, Scalar(1));
            lin.set({0, 1, 0}, -beta);
            ScalarSeries acc = d;
            for (int m = 1; m <= n + 1; ++m)
                acc = multiply(acc, lin, Box::cube(2, -8, 8));
            REQUIRE(acc.is_zero_on_window());
            REQUIRE(!acc.window().is_empty());
        }
    }
}
