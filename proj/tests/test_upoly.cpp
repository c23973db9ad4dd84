#include <catch2/catch_amalgamated.hpp>

#include "qva/upoly.hpp"

using namespace qva;

namespace {
UPoly linear(const Scalar& root) {
    return UPoly(std::vector<Scalar>{-root, Scalar(1)});
}
} // namespace

TEST_CASE("extended gcd of distinct linear factors") {
    Scalar z3 = Scalar::zeta(3);
    UPoly f = linear(Scalar(1));
    UPoly g = linear(z3);
    ExtGcdResult r = poly_extended_gcd(f, g);
    REQUIRE(r.gcd == UPoly(Scalar(1)));
    REQUIRE(r.u * f + r.v * g == UPoly(Scalar(1)));
    // u = 1/(z3 - 1), v = -1/(z3 - 1)
    REQUIRE(r.u == UPoly((z3 - Scalar(1)).inverse()));
    REQUIRE(r.v == UPoly(-(z3 - Scalar(1)).inverse()));
}

TEST_CASE("extended gcd of equal inputs") {
    UPoly f = linear(Scalar(1)) * linear(Scalar(1));
    ExtGcdResult r = poly_extended_gcd(f, f);
    REQUIRE(r.gcd == f.monic());
    REQUIRE(r.u * f + r.v * f == r.gcd);
}

TEST_CASE("bezout cofactors for pairwise coprime parts") {
    Scalar z3 = Scalar::zeta(3);
    // p = (x-1)(x-z3)^2(x-z3^2); parts p_i = p / (x-root_i)^mult_i.
    UPoly f1 = linear(Scalar(1));
    UPoly f2 = linear(z3) * linear(z3);
    UPoly f3 = linear(z3 * z3);
    std::vector<UPoly> parts = {f2 * f3, f1 * f3, f1 * f2};
    auto q = bezout_cofactors(parts);
    UPoly sum;
    for (size_t i = 0; i < parts.size(); ++i) sum = sum + q[i] * parts[i];
    REQUIRE(sum == UPoly(Scalar(1)));
}

TEST_CASE("divmod and evaluation") {
    Scalar q = Scalar::q_power(1);
    UPoly p = linear(q) * linear(q.inverse()) * linear(Scalar(2));
    auto [quot, rem] = UPoly::divmod(p, linear(q));
    REQUIRE(rem.is_zero());
    REQUIRE(quot == linear(q.inverse()) * linear(Scalar(2)));
    REQUIRE(p.eval(q).is_zero());
    REQUIRE(!p.eval(Scalar(3)).is_zero());
    REQUIRE_THROWS_AS(poly_extended_gcd(UPoly(), UPoly()), invalid_input);
}

TEST_CASE("factored polynomials expand correctly") {
    FactoredPoly fp;
    fp.roots.push_back({Scalar(1), 1});
    fp.roots.push_back({Scalar::zeta(3), 2});
    fp.x_power = 1;
    UPoly expect = UPoly::monomial(1, Scalar(1)) * linear(Scalar(1)) * linear(Scalar::zeta(3)) *
                   linear(Scalar::zeta(3));
    REQUIRE(fp.expand() == expect);
    REQUIRE(fp.multiplicity_of(Scalar::zeta(3)) == 2);
    REQUIRE(fp.multiplicity_of(Scalar(5)) == 0);
    REQUIRE(fp.degree() == 4);
}
