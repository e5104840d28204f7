#include <doctest.h>

#include "hessian/curve.hpp"

using namespace hessian;

TEST_CASE("invariants closed forms") {
    PrimePower q7(7, 1);

    // d = 6: 3 | d
    CurveInvariants c6 = invariants(q7, 6);
    CHECK(c6.disc_degree == 24);
    CHECK(c6.conductor_degree == 7);
    CHECK(c6.height_exponent == 2);
    CHECK(c6.tamagawa == 18);
    CHECK(c6.torsion_order == 3);
    CHECK(c6.reduction_table.back().kodaira == "I_0");

    // d = 7: 7 = 1 = -2 mod 3, so deg Delta = 4(d+2) = 36
    CurveInvariants c7 = invariants(PrimePower(13, 1), 7);
    CHECK(c7.disc_degree == 36);
    CHECK(c7.conductor_degree == 10);
    CHECK(c7.height_exponent == 3);
    CHECK(c7.tamagawa == 63);
    CHECK(c7.reduction_table.back().kodaira == "IV*");

    // d = 5: 5 = -1 mod 3
    CurveInvariants c5 = invariants(q7, 5);
    CHECK(c5.disc_degree == 24);
    CHECK(c5.conductor_degree == 8);
    CHECK(c5.tamagawa == 45);
    CHECK(c5.reduction_table.back().kodaira == "IV");

    CHECK_THROWS_AS(invariants(q7, 14), NotCoprime);
}

TEST_CASE("height exponent law: 12 * floor((d+2)/3) = disc degree") {
    PrimePower q11(11, 1);
    for (u64 d = 1; d <= 200; ++d) {
        if (std::gcd(d, 11ul) != 1) continue;
        CurveInvariants ci = invariants(q11, d);
        CHECK(ci.height_exponent * 12 == ci.disc_degree);
        CHECK(ci.tamagawa == (d % 3 == 0 ? 3 * d : 9 * d));
        CHECK(ci.conductor_degree == (d % 3 == 0 ? d + 1 : d + 3));
    }
}

TEST_CASE("reduction table structure") {
    PrimePower q13(13, 1);
    for (u64 d : {3u, 4u, 5u, 9u, 10u, 11u}) {
        CurveInvariants ci = invariants(q13, d);
        REQUIRE(ci.reduction_table.size() == 3);
        const auto& zero = ci.reduction_table[0];
        CHECK(zero.kodaira == "I_" + std::to_string(3 * d));
        CHECK(zero.ord_disc == 3 * d);
        CHECK(zero.ord_cond == 1);
        CHECK(zero.local_tamagawa == 3 * d);
        const auto& bd = ci.reduction_table[1];
        CHECK(bd.kodaira == "I_1");
        CHECK(bd.deg_total == d);
        u64 cond = 0;
        for (const auto& row : ci.reduction_table) cond += row.ord_cond * row.deg_total;
        CHECK(cond == ci.conductor_degree);
    }
}

TEST_CASE("weierstrass model coefficients") {
    PrimePower q7(7, 1);
    const FieldCtx& F = make_field(q7, 1);

    // tau = 0: f(x) = x^3 + x^2
    auto f0 = weierstrass_rhs(F, 2, F.zero(), false);
    CHECK(f0[0] == F.zero());
    CHECK(f0[1] == F.zero());
    CHECK(f0[2] == F.one());
    CHECK(f0[3] == F.one());

    // generic tau, d = 2: 8 = 1, 16 = 2 mod 7
    FieldElem tau = F.from_int(3);
    auto f = weierstrass_rhs(F, 2, tau, false);
    FieldElem t2 = F.mul(tau, tau);
    CHECK(f[1] == F.mul(F.from_int(-1), t2));        // -8 tau^2 = -tau^2
    CHECK(f[0] == F.mul(F.from_int(2), F.mul(t2, t2)));  // 16 tau^4 = 2 tau^4

    // infinity model at u = 0 for 3 | d: x^3 + 1/4
    auto finf = weierstrass_rhs(F, 6, F.zero(), true);
    CHECK(finf[0] == F.inv(F.from_int(4)));
    CHECK(finf[1] == F.zero());
    CHECK(finf[2] == F.zero());
    CHECK(finf[3] == F.one());

    CHECK_THROWS_AS(weierstrass_rhs(F, 5, F.zero(), true), InfinityModelUnavailable);
}
