// Jet spaces of hypersurface cones: symbolic classes in L and B, enumerated
// counts, the translation bijection between places, and the y-window counts
// feeding the arc reassembly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lab/circle.hpp"
#include "lab/jets.hpp"

using namespace lab;

TEST_CASE("symbolic class algebra") {
    GClass L = GClass::term(1, 0, 1), B = GClass::term(0, 1, 1);
    CHECK(L * B == GClass::term(1, 1, 1));
    CHECK((L + B) * (L - B) == L * L - B * B);
    CHECK(GClass::one() * L == L);
    CHECK(L.lshift(3) == GClass::term(4, 0, 1));
    CHECK(L.lshift(-2) == GClass::term(-1, 0, 1));
    CHECK((L - L) == GClass::zero());
    // ring map at (L=q, B=c) is a homomorphism
    GClass x = L * L - B.scaled(3) + GClass::one();
    GClass y = B * L + GClass::term(-2, 0, 5);
    CHECK((x * y).eval(3, 7) == x.eval(3, 7) * y.eval(3, 7));
    CHECK((x + y).eval(3, 7) == x.eval(3, 7) + y.eval(3, 7));
    CHECK(GClass::term(-2, 0, 5).eval(3, 7) == Rat(5, 9));
    // the B-degree cap is a hard error, not silent truncation
    GClass B2 = B * B;
    CHECK_THROWS_AS(B2 * B, InvalidInput);
    CHECK_THROWS_AS(GClass::term(0, 3, 1), InvalidInput);
    // weighted dimension
    CHECK((L * L + B).dim(4) == 3);
    CHECK(GClass::zero().dim(4) == kNegInf);
}

TEST_CASE("first jet space of the plane conic pencil") {
    // n=3, d=2, N=1: class L^2 B + L^3 - L^2, value 99 at (L=3, B=9)
    GClass cls = jet_class(3, 2, 1);
    GClass expect = GClass::term(2, 1, 1) + GClass::term(3, 0, 1) - GClass::term(2, 0, 1);
    CHECK(cls == expect);
    CHECK(cls.eval(3, 9) == Rat(99));
    auto f = HypersurfaceSpec::diagonal(3, 3, 2, {1, 1, 1});
    CHECK(f.count_affine() == 9);
    CHECK(jet_count(f, 1) == 99);
    CHECK(jet_count(f, 0) == 9);
    CHECK(jet_count(f, -1) == 0);
}

TEST_CASE("jet recursion: symbolic class equals enumeration") {
    CHECK(jet_recursion_check(HypersurfaceSpec::diagonal(3, 2, 2, {1, 1}), 3));
    CHECK(jet_recursion_check(HypersurfaceSpec::diagonal(3, 3, 2, {1, 1, 1}), 3));
    CHECK(jet_recursion_check(HypersurfaceSpec::diagonal(5, 2, 3, {1, 1}), 3));
    CHECK_THROWS_AS(jet_class(1, 2, 1), InvalidInput);
}

TEST_CASE("translation bijection between jet sets at different places") {
    auto f3 = HypersurfaceSpec::diagonal(3, 2, 2, {1, 1});
    for (int x = 0; x < 3; ++x)
        for (int N = 1; N <= 3; ++N) CHECK(lambda_jet_bijection_check(f3, N, x));
    auto f5 = HypersurfaceSpec::diagonal(5, 2, 3, {1, 2});
    for (int x = 0; x < 5; ++x) CHECK(lambda_jet_bijection_check(f5, 2, x));
    CHECK_THROWS_AS(lambda_jet_bijection_check(f3, 0, 0), InvalidInput);
}

TEST_CASE("window counts at the infinite place") {
    auto f3 = HypersurfaceSpec::diagonal(3, 2, 2, {1, 1});
    CHECK(count_V(f3, 1, 1) == 9);
    CHECK(count_lambda(f3, 1, std::nullopt) == 1);
    CHECK(V_lambda_check(f3, 1, 1));
    CHECK(V_lambda_check(f3, 2, 1));
    CHECK(V_lambda_check(f3, 2, 2));
    auto f33 = HypersurfaceSpec::diagonal(3, 3, 2, {1, 1, 1});
    CHECK(V_lambda_check(f33, 1, 1));
    CHECK(V_lambda_check(f33, 2, 2));
    CHECK_THROWS_AS(count_V(f3, 1, 3), InvalidInput);  // gamma > e+1
}
