#pragma once

#include "hessian/curve.hpp"
#include "hessian/jacobi.hpp"

namespace hessian {

struct OracleLimits {
    // default cap on q^{2n} lambda-evaluations per trace_sum call
    static u64& default_budget() {
        static u64 v = 100000000;
        return v;
    }
};

// A_d(tau, q^n) = -sum_x lambda(f_tau(x)), with the short model at finite
// places (valid at bad places too) and the u = 0 model at infinity.
inline i64 trace_at(const FieldCtx& F, u64 d, const FieldElem& tau) {
    auto f = weierstrass_rhs(F, d, tau, false);
    i64 acc = 0;
    for (u64 x = 0; x < F.size(); ++x) {
        FieldElem xe = F.from_code(x);
        // f(x) = ((x + c2) x + c1) x + c0 with c3 = 1
        FieldElem v = F.add(xe, f[2]);
        v = F.add(F.mul(v, xe), f[1]);
        v = F.add(F.mul(v, xe), f[0]);
        acc += F.quadratic_char(v);
    }
    return -acc;
}

inline i64 trace_at_infinity(const FieldCtx& F, u64 d) {
    if (d % 3 != 0) return 0;  // additive reduction, rational fiber
    // good reduction: affine model y^2 = x^3 + 1/4
    FieldElem quarter = F.inv(F.from_int(4));
    i64 acc = 0;
    for (u64 x = 0; x < F.size(); ++x) {
        FieldElem xe = F.from_code(x);
        FieldElem v = F.add(F.mul(F.mul(xe, xe), xe), quarter);
        acc += F.quadratic_char(v);
    }
    return -acc;
}

struct TraceSum {
    u64 q = 0, d = 0, n = 0;
    mpz_class value;  // sum over P^1(F_{q^n}) of A_d(tau, q^n)
};

// S_n = sum_{tau in P^1(F_{q^n})} A_d(tau, q^n); costs about q^{2n}
// quadratic-character evaluations.
inline TraceSum trace_sum(const PrimePower& pp, u64 d, u64 n, u64 budget = 0) {
    if (std::gcd(d, pp.q) != 1) throw NotCoprime("trace_sum: gcd(d, q) != 1");
    if (budget == 0) budget = OracleLimits::default_budget();
    u64 r = 1;
    for (u64 i = 0; i < n * pp.k; ++i) {
        if (r > (u64(1) << 62) / pp.p) throw BudgetExceeded("trace_sum: field too large");
        r *= pp.p;
    }
    if (r > budget / r) throw BudgetExceeded("trace_sum: q^{2n} exceeds the evaluation budget");
    const FieldCtx& F = make_field(pp, n);
    TraceSum ts;
    ts.q = pp.q;
    ts.d = d;
    ts.n = n;
    mpz_class total = trace_at_infinity(F, d);
    for (u64 t = 0; t < F.size(); ++t) total += trace_at(F, d, F.from_code(t));
    ts.value = total;
    return ts;
}

// ---- exhaustive character-sum identity checks ------------------------------

struct IdentityReport {
    u64 checked = 0;
    u64 failures = 0;
    std::vector<std::string> failure_notes;
};

// For every character chi on F_r^x:
//   sum_{z, x} chi(z) lambda(x^3 + x^2 - 8 z x + 16 z^2)
//     = 0 when chi is trivial, chi(-1) j_r(chi, chi, chi) otherwise.
// For every a in F_r^x:
//   sum_x lambda(x^3 + a) = -lambda(a) sum_{xi^3 = 1, xi != 1} xi(4a) j_r(xi, xi, xi).
inline IdentityReport charsum_identity_check(const FieldCtx& F) {
    IdentityReport rep;
    u64 r = F.size();
    u64 n = r - 1;

    // inner sums over x are independent of chi; compute once per z
    std::vector<i64> inner(r, 0);
    for (u64 z = 0; z < r; ++z) {
        FieldElem ze = F.from_code(z);
        FieldElem a1 = F.mul(F.from_int(-8), ze);
        FieldElem a0 = F.mul(F.from_int(16), F.mul(ze, ze));
        i64 acc = 0;
        for (u64 x = 0; x < r; ++x) {
            FieldElem xe = F.from_code(x);
            FieldElem v = F.add(xe, F.one());
            v = F.add(F.mul(v, xe), a1);
            v = F.add(F.mul(v, xe), a0);
            acc += F.quadratic_char(v);
        }
        inner[z] = acc;
    }
    for (u64 c = 0; c < n; ++c) {
        Character chi{&F, n, c};
        CycNumber lhs(n);
        for (u64 z = 0; z < r; ++z) {
            auto iz = chi.exponent_of(F.from_code(z));
            if (!iz || inner[z] == 0) continue;
            CycNumber term = root_of_unity(n, *iz);
            term.scale(mpq_class(inner[z]));
            lhs += term;
        }
        CycNumber rhs(n);
        if (c != 0) {
            JacobiValue j = jacobi_sum3(F, chi, chi, chi);
            rhs = j.value.embedded(n);
            if (chi.value_at_minus_one() < 0) rhs = -rhs;
        }
        ++rep.checked;
        if (!(lhs == rhs)) {
            ++rep.failures;
            rep.failure_notes.push_back("charsum identity failed at chi exponent " + std::to_string(c));
        }
    }

    // second identity, for every a in F_r^x
    bool has_cubics = (n % 3 == 0);
    for (u64 ac = 1; ac < r; ++ac) {
        FieldElem a = F.from_code(ac);
        i64 lhs = 0;
        for (u64 x = 0; x < r; ++x) {
            FieldElem xe = F.from_code(x);
            FieldElem v = F.add(F.mul(F.mul(xe, xe), xe), a);
            lhs += F.quadratic_char(v);
        }
        CycNumber rhs_cyc(has_cubics ? 3 : 1);
        if (has_cubics) {
            FieldElem four_a = F.mul(F.from_int(4), a);
            for (u64 c3 : {1u, 2u}) {
                Character xi{&F, 3, c3};
                JacobiValue jv = jacobi_sum3(F, xi, xi, xi);  // value at level 3
                auto iz = xi.exponent_of(four_a);
                CycNumber term = root_of_unity(3, *iz);
                term *= jv.value;
                rhs_cyc += term;
            }
            rhs_cyc.scale(mpq_class(-F.quadratic_char(a)));
        }
        ++rep.checked;
        bool ok;
        auto as_int = rhs_cyc.as_rational_integer();
        ok = as_int.has_value() && *as_int == lhs;
        if (!ok) {
            ++rep.failures;
            rep.failure_notes.push_back("cubic identity failed at a code " + std::to_string(ac));
        }
    }
    return rep;
}

}  // namespace hessian
