#pragma once

#include <array>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "hessian/cyclo.hpp"
#include "hessian/gf.hpp"
#include "hessian/orbits.hpp"

namespace hessian {

// Multiplicative character of F_r^x given by chi(g^j) = zeta_e^{c j}, where g
// is the context generator. Extended by chi(0) = 0 for nontrivial chi and
// 1(0) = 1 for the trivial one.
struct Character {
    const FieldCtx* ctx = nullptr;
    u64 level = 1;     // e | r-1
    u64 exponent = 0;  // c mod e

    u64 order() const { return level / std::gcd(level, exponent % level); }
    bool is_trivial() const { return exponent % level == 0; }

    // exponent of zeta_level; nullopt encodes the value 0
    std::optional<u64> exponent_of(const FieldElem& x) const {
        if (ctx->is_zero(x)) {
            if (is_trivial()) return 0;
            return std::nullopt;
        }
        return exponent * (*ctx->dlog(x) % level) % level;
    }

    CycNumber value(const FieldElem& x) const {
        auto e = exponent_of(x);
        if (!e) return CycNumber(level);
        return root_of_unity(level, *e);
    }

    int value_at_minus_one() const {
        u64 j = (ctx->size() - 1) / 2 % level;
        u64 v = exponent * j % level;
        if (v == 0) return 1;
        if (2 * v % level == 0) return -1;
        throw internal_error("character value at -1 is not a sign");
    }
};

// Teichmuller character: g^j -> zeta_{r-1}^j, exact order r-1.
inline Character teichmuller(const FieldCtx& ctx) { return Character{&ctx, ctx.size() - 1, 1}; }

// t_m^{(s)} as a character on ctx = F_{q^{s|m|}}; order d/gcd(d,m) exactly.
// With tower-compatible generators this is the norm-composed power of the
// Teichmuller lift, and its (level, exponent) pair is s-independent.
inline Character t_m_char(const FieldCtx& ctx, u64 d, u64 m) {
    m %= d;
    if (m == 0) throw BadResidue("t_m: m = 0 mod d");
    if (std::gcd(d, ctx.q()) != 1) throw NotCoprime("t_m: gcd(d, q) != 1");
    u64 g = std::gcd(d, m);
    u64 e = d / g;
    u64 len = mult_order(ctx.q(), e);
    if (ctx.ext_degree() % len != 0)
        throw DegreeMismatch("t_m: field degree is not a multiple of the orbit length");
    if ((ctx.size() - 1) % e != 0) throw internal_error("t_m: level does not divide r-1");
    return Character{&ctx, e, (m / g) % e};
}

struct JacobiValue {
    CycNumber value;
    mpz_class field_size;
};

namespace jacdetail {

struct JacobiLimits {
    // streaming enumeration budget: one byte per field element
    static u64& enum_max_field() {
        static u64 v = 100000000;
        return v;
    }
};

inline mpz_class factorial_mod(u64 n, u64 p) {
    mpz_class r = 1;
    for (u64 i = 2; i <= n; ++i) r = r * i % p;
    return r;
}

// unit class of the Stickelberger congruence: gamma(<3a>) * gamma(a)^{-3} mod p,
// where gamma is the product of factorials of the base-p digits.
// Returns {carries, rho} for a = (q-1) - (q-1)c/e, the exponent of the
// conjugate Teichmuller power.
inline std::pair<u64, u64> stickelberger_unit(u64 p, u64 f, u64 e, u64 c) {
    mpz_class q1 = mpz_pow(mpz_class(static_cast<unsigned long>(p)), static_cast<unsigned long>(f)) - 1;
    mpz_class a = q1 - q1 / static_cast<unsigned long>(e) * static_cast<unsigned long>(c % e);
    mpz_class a3 = a * 3 % q1;
    if (a3 == 0 || a == 0) throw internal_error("stickelberger: degenerate exponent");
    auto da = base_p_digits(a, p, f), da3 = base_p_digits(a3, p, f);
    u64 sa = 0, sa3 = 0;
    for (auto d : da) sa += d;
    for (auto d : da3) sa3 += d;
    u64 carries = (3 * sa - sa3) / (p - 1);
    mpz_class g1 = 1, g3 = 1;
    for (auto d : da) g1 = g1 * factorial_mod(d, p) % p;
    for (auto d : da3) g3 = g3 * factorial_mod(d, p) % p;
    mpz_class g13 = g1 * g1 % p * g1 % p, inv;
    mpz_invert(inv.get_mpz_t(), g13.get_mpz_t(), mpz_class(static_cast<unsigned long>(p)).get_mpz_t());
    return {carries, mpz_class(g3 * inv % p).get_ui()};
}

// ---- streaming enumeration (index table of dlog mod e) --------------------

// Split enumeration over x in [x_begin, x_end): histograms of the index
// classes (i1 + i2) and (2 i1 + i2) for x + y = 1. Chunks merge by addition,
// so a parallel split reproduces the serial result exactly. The histograms do
// not depend on the character exponent, only on its order.
inline std::pair<std::vector<i64>, std::vector<i64>> j3_walk_histograms(u64 p, u64 f, u64 e, u64 x_begin,
                                                                        u64 x_end) {
    gfdetail::PolyModRing R = gfdetail::smallest_primitive_modulus(p, f);
    u64 r = 1;
    for (u64 i = 0; i < f; ++i) r *= p;
    std::vector<u8> ind(r, 0);
    gfdetail::PolyModRing::Elt cur = R.one();
    for (u64 j = 0; j < r - 1; ++j) {
        ind[R.code(cur)] = static_cast<u8>(j % e);
        R.mulx_inplace(cur);
    }
    std::vector<i64> histA(e, 0), histB(e, 0);
    const u64 one_code = R.code(R.one());
    for (u64 x = std::max<u64>(x_begin, 1); x < x_end; ++x) {
        if (x == one_code) continue;
        // code of 1 - x, digit arithmetic base p
        u64 y = 0, pw = 1, xc = x;
        u64 d0 = xc % p;
        xc /= p;
        y += ((1 + p - d0) % p) * pw;
        pw *= p;
        while (pw < r) {
            u64 di = xc % p;
            xc /= p;
            y += ((p - di) % p) * pw;
            pw *= p;
        }
        histA[(ind[x] + ind[y]) % e] += 1;
        histB[(2 * ind[x] + ind[y]) % e] += 1;
    }
    return {histA, histB};
}

inline CycNumber j3_enum_walk(u64 p, u64 f, u64 e, u64 c) {
    if (e > 255) throw FieldTooLarge("enumeration supports character order <= 255");
    // one walk per (p, e) serves every exponent at that level
    static std::map<std::pair<u64, u64>, std::pair<std::vector<i64>, std::vector<i64>>> hist_memo;
    static std::mutex mtx;
    std::pair<std::vector<i64>, std::vector<i64>> hists;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = hist_memo.find({p, e});
        if (it != hist_memo.end()) {
            hists = it->second;
        } else {
            u64 r = 1;
            for (u64 i = 0; i < f; ++i) r *= p;
            hists = j3_walk_histograms(p, f, e, 1, r);
            hist_memo.emplace(std::make_pair(p, e), hists);
        }
    }
    CycNumber j2a(e), j2b(e);
    for (u64 v = 0; v < e; ++v) {
        if (hists.first[v] != 0) {
            CycNumber t = root_of_unity(e, c * v % e);
            t.scale(mpq_class(hists.first[v]));
            j2a += t;
        }
        if (hists.second[v] != 0) {
            CycNumber t = root_of_unity(e, c * v % e);
            t.scale(mpq_class(hists.second[v]));
            j2b += t;
        }
    }
    return j2a * j2b;  // j3 = j2(chi,chi) * j2(chi^2,chi), valid for e >= 4
}

// ---- pure case: p^{f/2} = -1 mod e => J = +-p^f ---------------------------

inline CycNumber j3_pure(u64 p, u64 f, u64 e, u64 c) {
    auto [carries, rho] = stickelberger_unit(p, f, e, c);
    if (carries != f) throw internal_error("pure Jacobi sum: carry count mismatch");
    // sign residue: (-1)^f * rho must be +-1 mod p
    u64 sr = (f % 2 == 0) ? rho : (p - rho) % p;
    mpz_class pf = mpz_pow(mpz_class(static_cast<unsigned long>(p)), static_cast<unsigned long>(f));
    if (sr == 1) return CycNumber::from_integer(pf, e);
    if (sr == p - 1) return CycNumber::from_integer(-pf, e);
    throw internal_error("pure Jacobi sum: unit residue is not a sign");
}

// ---- index-2 case: values live in an imaginary quadratic order ------------

struct QuadOrder {  // Z[theta], theta^2 = B theta + C, disc Delta < 0
    mpz_class Delta, B, C;
    u64 D0 = 0;  // |Delta| = conductor of the quadratic character
    using V = std::pair<mpz_class, mpz_class>;
    V mul(const V& a, const V& b) const {
        return {a.first * b.first + C * a.second * b.second,
                a.first * b.second + a.second * b.first + B * a.second * b.second};
    }
    mpz_class norm(const V& a) const { return a.first * a.first + B * a.first * a.second - C * a.second * a.second; }
    mpz_class bilin(const V& u, const V& v) const {
        V s{u.first + v.first, u.second + v.second};
        return (norm(s) - norm(u) - norm(v)) / 2;
    }
};

struct QuadIdeal {
    QuadOrder::V v1, v2;
};

inline QuadIdeal quad_hnf(std::vector<QuadOrder::V> gens) {
    for (;;) {
        gens.erase(std::remove_if(gens.begin(), gens.end(),
                                  [](const QuadOrder::V& v) { return v.first == 0 && v.second == 0; }),
                   gens.end());
        std::size_t pivot = gens.size();
        mpz_class best = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens[i].second == 0) continue;
            if (pivot == gens.size() || abs(gens[i].second) < best) {
                pivot = i;
                best = abs(gens[i].second);
            }
        }
        if (pivot == gens.size()) throw internal_error("quad ideal: rank deficient");
        bool changed = false;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (i == pivot || gens[i].second == 0) continue;
            mpz_class qq;
            mpz_fdiv_q(qq.get_mpz_t(), gens[i].second.get_mpz_t(), gens[pivot].second.get_mpz_t());
            gens[i].first -= qq * gens[pivot].first;
            gens[i].second -= qq * gens[pivot].second;
            changed = true;
        }
        if (changed) continue;
        mpz_class g = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (i == pivot) continue;
            mpz_class ng;
            mpz_gcd(ng.get_mpz_t(), g.get_mpz_t(), gens[i].first.get_mpz_t());
            g = ng;
        }
        if (g == 0) throw internal_error("quad ideal: rank 1");
        QuadIdeal I;
        I.v1 = {g, 0};
        I.v2 = gens[pivot];
        mpz_class red;
        mpz_fdiv_r(red.get_mpz_t(), I.v2.first.get_mpz_t(), g.get_mpz_t());
        I.v2.first = red;
        return I;
    }
}

inline QuadIdeal quad_mul(const QuadOrder& R, const QuadIdeal& a, const QuadIdeal& b) {
    return quad_hnf({R.mul(a.v1, b.v1), R.mul(a.v1, b.v2), R.mul(a.v2, b.v1), R.mul(a.v2, b.v2)});
}

inline QuadOrder::V quad_shortest(const QuadOrder& R, const QuadIdeal& I) {
    QuadOrder::V b1 = I.v1, b2 = I.v2;
    if (R.norm(b1) > R.norm(b2)) std::swap(b1, b2);
    for (;;) {
        mpz_class num = R.bilin(b1, b2), den = R.norm(b1);
        mpz_class mu, t = 2 * num + den, d2 = 2 * den;
        mpz_fdiv_q(mu.get_mpz_t(), t.get_mpz_t(), d2.get_mpz_t());
        b2.first -= mu * b1.first;
        b2.second -= mu * b1.second;
        if (R.norm(b2) >= R.norm(b1)) return b1;
        std::swap(b1, b2);
    }
}

// square root of Delta in Z[zeta_e] as the quadratic Gauss sum
inline CycNumber quad_sqrt_cyc(u64 e, u64 D0, const std::set<u64>& subgroup_H) {
    CycNumber sq(e);
    for (u64 t = 1; t < D0; ++t) {
        if (std::gcd(t, D0) != 1) continue;
        u64 lift = t;
        while (std::gcd(lift, e) != 1) lift += D0;
        CycNumber term = root_of_unity(e, (e / D0) * t % e);
        term.scale(mpq_class(subgroup_H.count(lift % e) ? 1 : -1));
        sq += term;
    }
    return sq;
}

inline CycNumber j3_quadratic(u64 p, u64 f, u64 e, u64 c) {
    // subgroup <p> in (Z/e)^x
    std::set<u64> H;
    u64 x = 1 % e;
    do {
        H.insert(x);
        x = x * (p % e) % e;
    } while (x != 1 % e);
    if (euler_phi(e) != 2 * H.size() || H.count(e - 1))
        throw internal_error("j3_quadratic: not an imaginary index-2 case");

    // conductor of the quadratic character with kernel H
    u64 D0 = 0;
    for (u64 D : divisors(e)) {
        if (D == 1) continue;
        bool ok = true;
        for (u64 t = 1; t < e && ok; ++t) {
            if (std::gcd(t, e) != 1 || t % D != 1) continue;
            if (!H.count(t)) ok = false;
        }
        if (ok) {
            D0 = D;
            break;
        }
    }
    QuadOrder R;
    R.D0 = D0;
    R.Delta = -mpz_class(static_cast<unsigned long>(D0));
    if (D0 % 4 == 3) {
        R.B = 1;
        R.C = (R.Delta - 1) / 4;
    } else if (D0 % 4 == 0) {
        R.B = 0;
        R.C = R.Delta / 4;
    } else {
        throw internal_error("j3_quadratic: conductor is not a fundamental discriminant");
    }

    auto [alpha, rho] = stickelberger_unit(p, f, e, c);
    u64 beta = 2 * f - alpha;
    u64 g0 = std::min(alpha, beta), h = f - g0;

    u64 prec = std::max(alpha, 2 * h) + 1;
    mpz_class pk = mpz_pow(mpz_class(static_cast<unsigned long>(p)), static_cast<unsigned long>(prec));
    // split root of x^2 - Bx - C mod p, deterministically the smaller lift
    mpz_class t0 = -1;
    for (u64 t = 0; t < p; ++t) {
        mpz_class v = mpz_class(static_cast<unsigned long>(t)) * static_cast<unsigned long>(t) -
                      R.B * static_cast<unsigned long>(t) - R.C;
        if (v % p == 0) {
            t0 = t;
            break;
        }
    }
    if (t0 < 0) throw internal_error("j3_quadratic: p does not split");
    mpz_class th = t0;
    for (int it = 0; it < 80; ++it) {
        mpz_class fx = (th * th - R.B * th - R.C) % pk;
        if (fx == 0) break;
        mpz_class dfx = (2 * th - R.B) % pk, dinv;
        mpz_invert(dinv.get_mpz_t(), dfx.get_mpz_t(), pk.get_mpz_t());
        th = ((th - fx * dinv) % pk + pk) % pk;
    }

    std::vector<QuadOrder::V> units = {{1, 0}, {-1, 0}};
    if (R.Delta == -4) units.insert(units.end(), {{0, 1}, {0, -1}});
    if (R.Delta == -3) {
        units.clear();
        QuadOrder::V u{1, 0};
        for (int i = 0; i < 6; ++i) {
            units.push_back(u);
            u = R.mul(u, {0, 1});
        }
    }

    std::vector<QuadOrder::V> kernels;  // primitive part candidates
    if (alpha == beta) {
        kernels.push_back({1, 0});
    } else {
        mpz_class t_side;
        if (alpha > beta)
            t_side = th % p;
        else
            t_side = ((R.B - th) % p + p) % p;
        QuadIdeal P{{mpz_class(static_cast<unsigned long>(p)), 0}, {-t_side, 1}};
        QuadIdeal I = P;
        for (u64 i = 1; i < 2 * h; ++i) I = quad_mul(R, I, P);
        QuadOrder::V v = quad_shortest(R, I);
        if (R.norm(v) != mpz_pow(mpz_class(static_cast<unsigned long>(p)), static_cast<unsigned long>(2 * h)))
            throw internal_error("j3_quadratic: ideal power is not principal at the expected norm");
        kernels.push_back(v);
    }

    mpz_class pg0 = mpz_pow(mpz_class(static_cast<unsigned long>(p)), static_cast<unsigned long>(g0));
    mpz_class pal = mpz_pow(mpz_class(static_cast<unsigned long>(p)), static_cast<unsigned long>(alpha));
    mpz_class pal1 = pal * static_cast<unsigned long>(p);
    mpz_class target = pal * static_cast<unsigned long>(rho) % pal1;
    if (alpha % 2 == 1) target = (pal1 - target) % pal1;

    std::vector<QuadOrder::V> matched;
    for (const auto& u : units) {
        for (const auto& k : kernels) {
            QuadOrder::V cand = R.mul(u, k);
            cand.first *= pg0;
            cand.second *= pg0;
            mpz_class img = ((cand.first + cand.second * th) % pal1 + pal1) % pal1;
            if (img == target) matched.push_back(cand);
        }
    }
    if (matched.size() != 1) throw internal_error("j3_quadratic: congruence did not pin a unique value");

    CycNumber theta_cyc = quad_sqrt_cyc(e, D0, H);
    if (!((theta_cyc * theta_cyc) == CycNumber::from_integer(R.Delta, e)))
        throw internal_error("j3_quadratic: Gauss sum square check failed");
    if (R.B == 1) {
        theta_cyc += CycNumber::from_integer(1, e);
    }
    theta_cyc.scale(mpq_class(1, 2));

    CycNumber result = CycNumber::from_integer(matched[0].first, e);
    CycNumber yterm = theta_cyc;
    yterm.scale(mpq_class(matched[0].second));
    result += yterm;
    return result;
}

enum class J3Method { Auto, Enum, Pure, Quadratic };

// Dispatch is a function of (p, e) alone so that every orbit at a given level
// is evaluated under one prime convention; per-level Galois coherence of the
// returned values depends on this.
inline J3Method choose_method(u64 p, u64 e) {
    if (e == 2) return J3Method::Pure;  // closed form
    u64 f = mult_order(p, e);
    bool enum_ok = e <= 255;
    if (enum_ok) {
        u64 r = 1;
        for (u64 i = 0; i < f && enum_ok; ++i) {
            if (r > JacobiLimits::enum_max_field() / p) enum_ok = false;
            r *= p;
        }
        if (enum_ok && r > JacobiLimits::enum_max_field()) enum_ok = false;
    }
    if (enum_ok) return J3Method::Enum;
    // -1 in <p> mod e  <=>  f even and p^{f/2} = -1
    bool minus_one_in_h = (f % 2 == 0) && pow_mod(p, f / 2, e) == e - 1;
    if (minus_one_in_h) return J3Method::Pure;
    if (euler_phi(e) == 2 * f) return J3Method::Quadratic;
    throw FieldTooLarge("Jacobi sum over F_{p^" + std::to_string(f) +
                        "} is beyond the enumeration budget and has no closed form here");
}

// j3(chi, chi, chi) over the p-minimal field F_{p^f}, f = ord_e(p), for the
// order-e character with exponent c (gcd(c, e) = 1). Memoized.
inline CycNumber j3_min_field(u64 p, u64 e, u64 c, J3Method force = J3Method::Auto) {
    if (e < 2 || e == 3) throw internal_error("j3: order must be 2 or >= 4");
    c %= e;
    if (std::gcd(c, e) != 1) throw internal_error("j3: exponent not a unit mod the order");

    if (e == 2) {
        // J(lambda, lambda, lambda) = lambda(-1) * p over the prime field
        mpz_class r = static_cast<unsigned long>(p);
        int sign = (p % 4 == 1) ? 1 : -1;  // lambda(-1) = (-1)^{(p-1)/2}
        return CycNumber::from_integer(sign > 0 ? r : -r, 2);
    }

    static std::map<std::tuple<u64, u64, u64, int>, CycNumber> memo;
    static std::mutex mtx;
    auto key = std::make_tuple(p, e, c, static_cast<int>(force));
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    u64 f = mult_order(p, e);
    J3Method m = force == J3Method::Auto ? choose_method(p, e) : force;
    CycNumber v;
    switch (m) {
        case J3Method::Enum:
            v = j3_enum_walk(p, f, e, c);
            break;
        case J3Method::Pure:
            v = j3_pure(p, f, e, c);
            break;
        case J3Method::Quadratic:
            v = j3_quadratic(p, f, e, c);
            break;
        default:
            throw internal_error("j3: bad method");
    }
    std::lock_guard<std::mutex> lock(mtx);
    return memo.emplace(key, std::move(v)).first->second;
}

}  // namespace jacdetail

// sign of the order-e character with exponent c at -1, over F_{q^len}
inline int char_sign_at_minus_one(u64 q, u64 len, u64 e, u64 c) {
    if (e % 2 == 1) return 1;
    // (r-1)/2 mod e with r = q^len
    u64 m2e = (pow_mod(q % (2 * e), len, 2 * e) + 2 * e - 1) % (2 * e);
    u64 half = (m2e / 2) % e;
    return (half * (c % e) % e == 0) ? 1 : -1;
}

// Ja(m) = j_{q^{|m|}}(t_m, t_m, t_m), m in Z_d. Uses the p-minimal field and
// the Hasse-Davenport lift when q is a proper prime power.
inline JacobiValue ja(u64 d, const PrimePower& pp, u64 m, jacdetail::J3Method force = jacdetail::J3Method::Auto) {
    if (std::gcd(d, pp.q) != 1) throw NotCoprime("ja: gcd(d, q) != 1");
    m %= d;
    bool in_zd = m != 0 && !(d % 3 == 0 && (m == d / 3 || m == 2 * d / 3));
    if (!in_zd) throw BadResidue("ja: m is not in Z_d");
    u64 g = std::gcd(d, m);
    u64 e = d / g, c = (m / g) % e;
    u64 len = mult_order(pp.q, e);          // |m|
    u64 fp = mult_order(pp.p, e);           // minimal degree over the prime field
    u64 s = pp.k * len / fp;                // Hasse-Davenport lift exponent
    CycNumber base = jacdetail::j3_min_field(pp.p, e, c, force);
    CycNumber v = CycNumber::from_integer(1, e);
    for (u64 i = 0; i < s; ++i) v *= base;
    mpz_class r = mpz_pow(mpz_class(static_cast<unsigned long>(pp.q)), static_cast<unsigned long>(len));
    return {std::move(v), std::move(r)};
}

// Generic triple Jacobi sum over an explicit field context (histogram over
// the defining double sum). Budgeted; the big-field cases go through ja().
inline JacobiValue jacobi_sum3(const FieldCtx& ctx, const Character& c1, const Character& c2, const Character& c3) {
    if (c1.ctx != &ctx || c2.ctx != &ctx || c3.ctx != &ctx)
        throw input_error("jacobi_sum3: characters must share the field context");
    u64 r = ctx.size();
    if (r > 8192) throw BudgetExceeded("jacobi_sum3: double loop too large, use ja()");
    u64 L = std::lcm(std::lcm(c1.level, c2.level), c3.level);
    std::vector<mpz_class> hist(L, 0);
    for (u64 x1 = 0; x1 < r; ++x1) {
        FieldElem e1 = ctx.from_code(x1);
        auto i1 = c1.exponent_of(e1);
        if (!i1) continue;
        u64 s1 = *i1 * (L / c1.level) % L;
        for (u64 x2 = 0; x2 < r; ++x2) {
            FieldElem e2 = ctx.from_code(x2);
            auto i2 = c2.exponent_of(e2);
            if (!i2) continue;
            FieldElem e3 = ctx.sub(ctx.sub(ctx.one(), e1), e2);
            auto i3 = c3.exponent_of(e3);
            if (!i3) continue;
            hist[(s1 + *i2 * (L / c2.level) + *i3 * (L / c3.level)) % L] += 1;
        }
    }
    CycNumber acc(L);
    for (u64 v = 0; v < L; ++v) {
        if (hist[v] == 0) continue;
        CycNumber t = root_of_unity(L, v);
        t.scale(mpq_class(hist[v]));
        acc += t;
    }
    return {std::move(acc), mpz_class(static_cast<unsigned long>(r))};
}

// Ja'(a0, a1, a2, a3) of the 4-tuple framework: zero when some but not all
// coordinates vanish; otherwise (chi0 chi1 chi2)(-1) * j3(chi0, chi1, chi2).
inline CycNumber jprime(u64 d, const PrimePower& pp, const std::array<i64, 4>& a) {
    u64 sum = 0;
    std::array<u64, 4> am{};
    for (int i = 0; i < 4; ++i) {
        i64 v = ((a[i] % static_cast<i64>(d)) + static_cast<i64>(d)) % static_cast<i64>(d);
        am[i] = static_cast<u64>(v);
        sum = (sum + am[i]) % d;
    }
    if (sum != 0) throw NotInG("jprime: coordinates do not sum to 0 mod d");
    int zeros = 0;
    for (auto v : am) zeros += (v == 0);
    if (zeros == 4) throw input_error("jprime: the zero tuple is excluded");
    if (zeros > 0) return CycNumber(1);  // some but not all zero

    // orbit length |A| = ord of q modulo d/gcd(d, a0..a3)
    u64 g = d;
    for (auto v : am) g = std::gcd(g, v);
    u64 la = d / g;  // lcm of the component character orders
    u64 len = mult_order(pp.q, la);

    // sign (chi0 chi1 chi2)(-1), a character of exponent c0+c1+c2 at level la
    u64 csum = (am[0] / g + am[1] / g + am[2] / g) % la;
    int sign = char_sign_at_minus_one(pp.q, len, la, csum);

    if (am[0] == am[1] && am[1] == am[2]) {
        // equal-character case routes through the big-field engine
        u64 e0 = d / std::gcd(d, am[0]);
        u64 c0 = (am[0] / std::gcd(d, am[0])) % e0;
        u64 fp = mult_order(pp.p, e0);
        u64 s = pp.k * len / fp;
        CycNumber base = jacdetail::j3_min_field(pp.p, e0, c0);
        CycNumber j3 = CycNumber::from_integer(1, e0);
        for (u64 i = 0; i < s; ++i) j3 *= base;
        if (sign < 0) j3 = -j3;
        return j3.embedded(la);
    }

    // general tuples: explicit small-field evaluation
    const FieldCtx& F = make_field(pp, len);
    Character ch0{&F, la, (am[0] / g) % la}, ch1{&F, la, (am[1] / g) % la}, ch2{&F, la, (am[2] / g) % la};
    JacobiValue j = jacobi_sum3(F, ch0, ch1, ch2);
    CycNumber v = j.value.embedded(std::lcm(j.value.level(), la));
    if (sign < 0) v = -v;
    return v;
}

}  // namespace hessian
