#pragma once

#include <algorithm>
#include <map>

#include "hessian/curve.hpp"
#include "hessian/jacobi.hpp"

namespace hessian {

struct LFactor {
    u64 rep = 0;     // smallest orbit representative in Z_d
    u64 length = 0;  // |m|
    CycNumber c;     // t_m(-1) Ja(m), at level d/gcd(d, rep)
    bool v_member = false;  // c = q^{|m|} exactly
};

struct LPolynomial {
    u64 q = 0;
    u64 d = 0;
    std::vector<mpz_class> coeffs;  // a_0 = 1, ..., a_deg
    std::vector<LFactor> factors;   // ordered by representative

    u64 degree() const { return coeffs.size() - 1; }
};

namespace lfdetail {

// product of (1 - c T^{len}) over same-level factors; the level multiset is
// Galois stable, so the result has integer coefficients.
inline std::vector<mpz_class> level_product(u64 e, const std::vector<const LFactor*>& fs) {
    CycPoly poly(e);
    for (const LFactor* f : fs) poly.mul_factor(f->c, f->length);
    auto out = poly.as_integer_poly();
    if (!out) throw IntegralityFailure("level " + std::to_string(e) + " subproduct has a non-integer coefficient");
    return *out;
}

inline std::vector<mpz_class> int_poly_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

}  // namespace lfdetail

// L(E_d/K, T) = prod over orbits of Z_d of (1 - t_m(-1) Ja(m) T^{|m|}).
inline LPolynomial l_function(const PrimePower& pp, u64 d,
                              jacdetail::J3Method force = jacdetail::J3Method::Auto) {
    if (d < 1) throw input_error("l_function: d >= 1 required");
    if (std::gcd(d, pp.q) != 1) throw NotCoprime("l_function: gcd(d, q) != 1");
    LPolynomial L;
    L.q = pp.q;
    L.d = d;
    if (d == 1) {
        L.coeffs = {mpz_class(1)};
        return L;
    }
    OrbitSet os = decompose(d, pp.q);
    for (const Orbit& orb : os.orbits) {
        u64 g = std::gcd(d, orb.rep);
        u64 e = d / g;
        LFactor f;
        f.rep = orb.rep;
        f.length = orb.length;
        JacobiValue jv = ja(d, pp, orb.rep, force);
        f.c = jv.value;
        if (char_sign_at_minus_one(pp.q, orb.length, e, (orb.rep / g) % e) < 0) f.c = -f.c;
        mpz_class qlen = mpz_pow(mpz_class(static_cast<unsigned long>(pp.q)), static_cast<unsigned long>(orb.length));
        f.v_member = (f.c == CycNumber::from_integer(qlen, f.c.level()));
        L.factors.push_back(std::move(f));
    }

    // assemble per level, then multiply the integer subproducts
    std::map<u64, std::vector<const LFactor*>> by_level;
    for (const LFactor& f : L.factors) by_level[d / std::gcd(d, f.rep)].push_back(&f);
    std::vector<mpz_class> acc{mpz_class(1)};
    for (const auto& [e, fs] : by_level) acc = lfdetail::int_poly_mul(acc, lfdetail::level_product(e, fs));
    L.coeffs = std::move(acc);

    u64 want_deg = (d % 3 == 0) ? d - 3 : d - 1;
    if (L.degree() != want_deg) throw internal_error("L-degree does not match |Z_d|");
    return L;
}

// S_n = -sum of n-th powers of the inverse roots, from the coefficients by
// Newton's identities; these are the sums the point-count oracle reproduces.
inline std::vector<mpz_class> power_sums(const LPolynomial& L, u64 n_max) {
    std::vector<mpz_class> p(n_max + 1, mpz_class(0));  // p[n] = sum alpha_i^n
    for (u64 n = 1; n <= n_max; ++n) {
        mpz_class acc = 0;
        if (n < L.coeffs.size()) acc = mpz_class(static_cast<long>(n)) * L.coeffs[n];
        for (u64 k = 1; k < n; ++k) {
            if (n - k < L.coeffs.size()) acc += p[k] * L.coeffs[n - k];
        }
        p[n] = -acc;
    }
    std::vector<mpz_class> s(n_max + 1, mpz_class(0));
    for (u64 n = 1; n <= n_max; ++n) s[n] = -p[n];
    return s;  // s[0] unused
}

// checks (qT)^deg L(1/(q^2 T)) = eps L(T), i.e. a_{deg-i} = eps q^{deg-2i} a_i.
inline int functional_equation_check(const LPolynomial& L) {
    u64 deg = L.degree();
    if (deg == 0) return +1;
    mpz_class q(static_cast<unsigned long>(L.q));
    for (int eps : {+1, -1}) {
        bool ok = true;
        for (u64 i = 0; 2 * i <= deg && ok; ++i) {
            mpz_class rhs = L.coeffs[i] * mpz_pow(q, static_cast<unsigned long>(deg - 2 * i));
            if (eps < 0) rhs = -rhs;
            if (L.coeffs[deg - i] != rhs) ok = false;
        }
        if (ok) return eps;
    }
    throw FunctionalEquationFailure("no sign satisfies the coefficient symmetry");
}

// ---- the 4-tuple framework polynomial P(Lambda_d, T) -----------------------

struct LambdaOrbit {
    std::array<u64, 4> rep{};  // lexicographically smallest tuple in the orbit
    u64 length = 0;
};

struct LambdaSet {
    u64 d = 0;
    std::vector<std::array<u64, 4>> elements;  // (m, m, m, -3m), m = 1..d-1
    std::vector<LambdaOrbit> orbits;
};

inline LambdaSet lambda_set(u64 d, u64 q) {
    if (std::gcd(d, q) != 1) throw NotCoprime("lambda_set: gcd(d, q) != 1");
    LambdaSet ls;
    ls.d = d;
    std::set<std::array<u64, 4>> seen;
    for (u64 m = 1; m < d; ++m)
        ls.elements.push_back({m % d, m % d, m % d, (d - 3 * m % d) % d});
    for (const auto& a : ls.elements) {
        if (seen.count(a)) continue;
        LambdaOrbit orb;
        orb.rep = a;
        std::array<u64, 4> cur = a;
        do {
            seen.insert(cur);
            orb.rep = std::min(orb.rep, cur);
            ++orb.length;
            for (auto& v : cur) v = v * (q % d) % d;
        } while (cur != a);
        ls.orbits.push_back(orb);
    }
    std::sort(ls.orbits.begin(), ls.orbits.end(),
              [](const LambdaOrbit& x, const LambdaOrbit& y) { return x.rep < y.rep; });
    return ls;
}

// P(Lambda_d, T) = prod over q-orbits of Lambda_d of (1 - Ja'(a) T^{|A|});
// equals L(E_d/K, T) coefficientwise. Kept as an independent assembly path:
// its own orbit bookkeeping on 4-tuples and the Ja' normalization.
inline LPolynomial p_lambda(const PrimePower& pp, u64 d) {
    if (d < 2) throw input_error("p_lambda: d >= 2 required");
    if (std::gcd(d, pp.q) != 1) throw NotCoprime("p_lambda: gcd(d, q) != 1");
    LambdaSet ls = lambda_set(d, pp.q);
    LPolynomial L;
    L.q = pp.q;
    L.d = d;

    for (const LambdaOrbit& orb : ls.orbits) {
        const auto& a = orb.rep;
        int zeros = 0;
        for (auto v : a) zeros += (v == 0);
        if (zeros > 0) continue;  // Ja' = 0, factor 1 (the m = d/3, 2d/3 tuples)
        std::array<i64, 4> ai{static_cast<i64>(a[0]), static_cast<i64>(a[1]), static_cast<i64>(a[2]),
                              static_cast<i64>(a[3])};
        // orbit length law: |A| = |m| since the generator coordinates are
        // pairwise coprime
        if (orb.length != mult_order(pp.q, d / std::gcd(d, a[0])))
            throw internal_error("lambda orbit length mismatch");
        LFactor lf;
        lf.rep = a[0];
        lf.length = orb.length;
        lf.c = jprime(d, pp, ai);
        mpz_class qlen = mpz_pow(mpz_class(static_cast<unsigned long>(pp.q)), static_cast<unsigned long>(orb.length));
        lf.v_member = (lf.c == CycNumber::from_integer(qlen, lf.c.level()));
        L.factors.push_back(std::move(lf));
    }

    std::map<u64, std::vector<const LFactor*>> by_level;
    for (const LFactor& f : L.factors) by_level[f.c.level()].push_back(&f);
    std::vector<mpz_class> acc{mpz_class(1)};
    for (const auto& [e, fsp] : by_level) {
        CycPoly poly(e);
        for (const LFactor* f : fsp) poly.mul_factor(f->c, f->length);
        auto part = poly.as_integer_poly();
        if (!part) throw IntegralityFailure("P(Lambda) subproduct has a non-integer coefficient");
        acc = lfdetail::int_poly_mul(acc, *part);
    }
    L.coeffs = std::move(acc);
    return L;
}

}  // namespace hessian
