#pragma once

#include <array>
#include <string>
#include <vector>

#include "hessian/gf.hpp"

namespace hessian {

// One row of the reduction table: a place class, its Kodaira type, and the
// local data (ord of the minimal discriminant, ord of the conductor, local
// Tamagawa number). deg_total is the summed degree of the places in the class.
struct ReductionRow {
    std::string place;
    std::string kodaira;
    u64 ord_disc = 0;
    u64 ord_cond = 0;
    u64 local_tamagawa = 0;
    u64 deg_total = 1;
};

struct CurveInvariants {
    u64 q = 0;
    u64 d = 0;
    u64 disc_degree = 0;        // deg of the minimal discriminant divisor
    u64 conductor_degree = 0;   // deg N
    u64 height_exponent = 0;    // H = q^{floor((d+2)/3)} = q^{disc_degree/12}
    u64 tamagawa = 0;           // product of the local Tamagawa numbers
    u64 torsion_order = 3;      // Z/3Z, generated by (0, 0)
    std::vector<ReductionRow> reduction_table;
};

// Closed-form invariants of y^2 + xy - t^d y = x^3 over F_q(t).
inline CurveInvariants invariants(const PrimePower& pp, u64 d) {
    if (d < 1) throw input_error("invariants: d >= 1 required");
    if (std::gcd(d, pp.q) != 1) throw NotCoprime("invariants: gcd(d, q) != 1");
    CurveInvariants ci;
    ci.q = pp.q;
    ci.d = d;
    ci.reduction_table.push_back({"0", "I_" + std::to_string(3 * d), 3 * d, 1, 3 * d, 1});
    ci.reduction_table.push_back({"B_d", "I_1", 1, 1, 1, d});
    switch (d % 3) {
        case 0:
            ci.disc_degree = 4 * d;
            ci.conductor_degree = d + 1;
            ci.tamagawa = 3 * d;
            ci.reduction_table.push_back({"inf", "I_0", 0, 0, 1, 1});
            break;
        case 2:  // d = -1 mod 3
            ci.disc_degree = 4 * (d + 1);
            ci.conductor_degree = d + 3;
            ci.tamagawa = 9 * d;
            ci.reduction_table.push_back({"inf", "IV", 4, 2, 3, 1});
            break;
        default:  // d = -2 mod 3
            ci.disc_degree = 4 * (d + 2);
            ci.conductor_degree = d + 3;
            ci.tamagawa = 9 * d;
            ci.reduction_table.push_back({"inf", "IV*", 8, 2, 3, 1});
            break;
    }
    ci.height_exponent = (d + 2) / 3;
    if (ci.height_exponent * 12 != ci.disc_degree) throw internal_error("height/discriminant law violated");
    u64 cond = 0;
    for (const auto& row : ci.reduction_table) cond += row.ord_cond * row.deg_total;
    if (cond != ci.conductor_degree) throw internal_error("conductor degree inconsistent with the table");
    return ci;
}

// Coefficients c0..c3 of the cubic f(x) with y^2 = f(x): the short model
// x^3 + x^2 - 8 t^d x + 16 t^{2d} at a finite place t = tau, or the model at
// infinity (3 | d) in the uniformizer u = 1/t.
inline std::array<FieldElem, 4> weierstrass_rhs(const FieldCtx& F, u64 d, const FieldElem& point,
                                                bool at_infinity) {
    if (!at_infinity) {
        FieldElem td = F.pow(point, mpz_class(static_cast<unsigned long>(d)));
        FieldElem t2d = F.mul(td, td);
        return {F.mul(F.from_int(16), t2d), F.mul(F.from_int(-8), td), F.one(), F.one()};
    }
    if (d % 3 != 0)
        throw InfinityModelUnavailable("additive reduction at infinity for 3 not dividing d");
    FieldElem u3 = F.pow(point, mpz_class(static_cast<unsigned long>(d / 3)));
    FieldElem u23 = F.mul(u3, u3);
    FieldElem quarter = F.inv(F.from_int(4));
    FieldElem half = F.inv(F.from_int(2));
    return {quarter, F.neg(F.mul(half, u3)), F.mul(quarter, u23), F.one()};
}

}  // namespace hessian
