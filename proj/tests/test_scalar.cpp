#include <catch2/catch_amalgamated.hpp>

#include "qva/scalar.hpp"

using namespace qva;

TEST_CASE("cyclotomic relations") {
    // zeta_3 + zeta_3^2 + 1 = 0
    Scalar z3 = Scalar::zeta(3);
    REQUIRE((z3 + z3 * z3 + Scalar(1)).is_zero());
    // zeta_4^2 = -1
    Scalar z4 = Scalar::zeta(4);
    REQUIRE(z4 * z4 == Scalar(-1));
    // zeta_6 = -zeta_3^2 (mixed orders coerce through the lcm field)
    Scalar z6 = Scalar::zeta(6);
    REQUIRE(z6 == -(z3 * z3));
    REQUIRE(z6.pow(6) == Scalar(1));
}

TEST_CASE("q is transcendental") {
    Scalar q = Scalar::q_power(1);
    REQUIRE((q + q.inverse()) * q == q * q + Scalar(1));
    REQUIRE(Scalar::q_power(3) != Scalar::q_power(2));
    REQUIRE(Scalar::q_power(-2) * Scalar::q_power(2) == Scalar(1));
}

TEST_CASE("canonical fractions") {
    Scalar q = Scalar::q_power(1);
    Scalar a = (q * q - Scalar(1)) / (q - Scalar(1));
    REQUIRE(a == q + Scalar(1));
    Scalar b = (q + Scalar(1)) / (Scalar(2) * q + Scalar(2));
    REQUIRE(b == Scalar(Rat(1, 2)));
    REQUIRE_THROWS_AS(Scalar(1) / Scalar(0), invalid_input);
}

TEST_CASE("field axioms on sampled values") {
    std::vector<Scalar> vals = {
        Scalar(2), Scalar::zeta(3), Scalar::q_power(1) + Scalar::zeta(3),
        (Scalar(1) - Scalar::q_power(2)) / (Scalar(3) * Scalar::q_power(-1) + Scalar(1)),
    };
    for (const auto& a : vals)
        for (const auto& b : vals)
            for (const auto& c : vals) {
                REQUIRE((a + b) + c == a + (b + c));
                REQUIRE(a * (b + c) == a * b + a * c);
                REQUIRE((a * b) * c == a * (b * c));
            }
    for (const auto& a : vals) {
        if (a.is_zero()) continue;
        REQUIRE(a * a.inverse() == Scalar(1));
    }
}

TEST_CASE("group elements realize injectively") {
    GroupElement g = GroupElement::root_of_unity(1, 3);
    GroupElement h = GroupElement::q_power(2);
    REQUIRE((g * h).realize() == g.realize() * h.realize());
    REQUIRE((g * g * g).is_one());
    REQUIRE(GroupElement::q_power(2) != GroupElement::q_power(3));
    REQUIRE(g.inverse() * g == GroupElement::one());
    // zeta_4^2 normalizes to zeta_2 = -1
    REQUIRE(GroupElement::root_of_unity(2, 4) == GroupElement::root_of_unity(1, 2));
    REQUIRE(GroupElement::root_of_unity(2, 4).realize() == Scalar(-1));
}

TEST_CASE("text grammar round trip") {
    Scalar v = parse_scalar("(q + q^-1) * q", 3);
    REQUIRE(v == Scalar::q_power(2) + Scalar(1));
    Scalar w = parse_scalar("z^2 + z + 1", 3);
    REQUIRE(w.is_zero());
    Scalar u = parse_scalar("2/3 * q^2 - z", 4);
    Scalar u2 = parse_scalar(u.str(), 4);
    REQUIRE(u == u2);
    REQUIRE_THROWS_AS(parse_scalar("q +", 3), invalid_input);
}
