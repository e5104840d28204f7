#pragma once

#include "hessian/curve.hpp"
#include "hessian/lfun.hpp"

namespace hessian {

// ord_{T = 1/q} L, computed two ways: exact division by (1 - qT) while it
// divides, and counting orbits whose normalized Jacobi sum equals q^{|m|}.
inline u64 analytic_rank(const LPolynomial& L) {
    mpz_class q(static_cast<unsigned long>(L.q));
    std::vector<mpz_class> cur = L.coeffs;
    u64 by_division = 0;
    for (;;) {
        // divide by (1 - qT): c_i = a_i + q c_{i-1}; remainder a_deg + q c_{deg-1}
        if (cur.size() == 1) break;
        std::vector<mpz_class> quot(cur.size() - 1);
        mpz_class carry = 0;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            quot[i] = cur[i] + q * carry;
            carry = quot[i];
        }
        if (cur.back() + q * carry != 0) break;
        cur = std::move(quot);
        ++by_division;
    }
    u64 by_factors = 0;
    for (const LFactor& f : L.factors) by_factors += f.v_member ? 1 : 0;
    if (by_division != by_factors)
        throw RankMismatch("division order " + std::to_string(by_division) + " vs V_d count " +
                           std::to_string(by_factors));
    return by_division;
}

namespace bsddetail {

inline std::vector<mpz_class> divide_out_rank(const LPolynomial& L, u64 rank) {
    mpz_class q(static_cast<unsigned long>(L.q));
    std::vector<mpz_class> cur = L.coeffs;
    for (u64 k = 0; k < rank; ++k) {
        std::vector<mpz_class> quot(cur.size() - 1);
        mpz_class carry = 0;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            quot[i] = cur[i] + q * carry;
            carry = quot[i];
        }
        if (cur.back() + q * carry != 0) throw internal_error("special value: division left a remainder");
        cur = std::move(quot);
    }
    return cur;
}

}  // namespace bsddetail

// L*(E_d/K, 1) = [L(T)/(1-qT)^rho] at T = 1/q, an element of Z[1/q].
// Cross-checked against the factored expression
//   prod_{V_d orbits} |m| * prod_{S_d orbits} (1 - c_m q^{-|m|}).
inline mpq_class special_value(const LPolynomial& L) {
    u64 rank = analytic_rank(L);
    std::vector<mpz_class> reduced = bsddetail::divide_out_rank(L, rank);
    mpq_class value(0);
    mpq_class qinv(1, static_cast<unsigned long>(L.q));
    mpq_class power(1);
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        value += mpq_class(reduced[i]) * power;
        power *= qinv;
        power.canonicalize();
    }
    value.canonicalize();

    // factored route, per level so each subproduct is already rational
    mpq_class product(1);
    std::map<u64, std::vector<const LFactor*>> by_level;
    for (const LFactor& f : L.factors) {
        if (f.v_member) {
            product *= static_cast<unsigned long>(f.length);
            continue;
        }
        by_level[f.c.level()].push_back(&f);
    }
    for (const auto& [e, fs] : by_level) {
        CycNumber acc = CycNumber::from_integer(1, e);
        for (const LFactor* f : fs) {
            mpz_class qlen = mpz_pow(mpz_class(static_cast<unsigned long>(L.q)),
                                     static_cast<unsigned long>(f->length));
            CycNumber term = f->c.embedded(e);
            term.scale(mpq_class(-1, qlen));
            term += CycNumber::from_integer(1, e);
            acc *= term;
        }
        auto rational = acc.as_rational();
        if (!rational) throw SpecialValueMismatch("factored special value is not rational at level " + std::to_string(e));
        product *= *rational;
        product.canonicalize();
    }
    if (value != product) throw SpecialValueMismatch("synthetic division and factored forms disagree");
    if (value == 0) throw internal_error("special value vanished");
    return value;
}

struct BsdReport {
    u64 q = 0, d = 0;
    u64 rank = 0;
    mpq_class special;      // L*(E_d/K, 1)
    u64 height_exponent = 0;  // H = q^{height_exponent}
    u64 tamagawa = 0;
    u64 torsion_order = 3;
    mpq_class sha_reg;      // |Sha| Reg = L* H |tors|^2 / (tau q)
    double height_log = 0;  // log H
    double bs_ratio = 0;    // log(sha_reg) / log H
    double spval_ratio = 0; // log(L*) / log H
    int fe_sign = +1;
};

// Full report: rank, exact special value, the BSD-derived |Sha| Reg product,
// and the log ratios. |tors| = 3 throughout the family.
inline BsdReport bsd_product(const PrimePower& pp, u64 d) {
    LPolynomial L = l_function(pp, d);
    CurveInvariants ci = invariants(pp, d);
    BsdReport rep;
    rep.q = pp.q;
    rep.d = d;
    rep.rank = analytic_rank(L);
    rep.special = special_value(L);
    rep.height_exponent = ci.height_exponent;
    rep.tamagawa = ci.tamagawa;
    rep.torsion_order = 3;
    rep.fe_sign = functional_equation_check(L);

    mpz_class H = mpz_pow(mpz_class(static_cast<unsigned long>(pp.q)),
                          static_cast<unsigned long>(ci.height_exponent));
    rep.sha_reg = rep.special * mpq_class(H * 9, ci.tamagawa * pp.q);
    rep.sha_reg.canonicalize();
    if (!(rep.sha_reg > 0)) throw internal_error("sha_reg must be positive");

    rep.height_log = static_cast<double>(ci.height_exponent) * std::log(static_cast<double>(pp.q));
    rep.bs_ratio = log_mpq_abs(rep.sha_reg) / rep.height_log;
    rep.spval_ratio = log_mpq_abs(rep.special) / rep.height_log;

    // rank parity forced by the functional equation sign: eps = (-1)^rank
    int forced = (rep.rank % 2 == 0) ? +1 : -1;
    if (L.degree() > 0 && forced != rep.fe_sign)
        throw internal_error("rank parity contradicts the functional equation sign");
    return rep;
}

}  // namespace hessian
