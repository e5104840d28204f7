#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hessian/errors.hpp"
#include "hessian/int_util.hpp"

namespace hessian {

struct PrimePower {
    u64 p = 0;
    u64 k = 1;
    u64 q = 0;

    PrimePower() = default;
    PrimePower(u64 p_, u64 k_) : p(p_), k(k_) {
        if (p < 5) throw CharacteristicTooSmall("p = " + std::to_string(p) + ", need p >= 5");
        if (!is_prime_u64(p)) throw NotPrime("p = " + std::to_string(p));
        if (k < 1) throw input_error("PrimePower: k >= 1 required");
        q = pow_u64_checked(p, k);
    }
};

namespace gfdetail {

// Dense F_p[x] arithmetic modulo a monic modulus; no tables. Used for modulus
// search, for building field tables, and for streaming over fields too big to
// table. Elements are coefficient vectors of length deg, least degree first.
struct PolyModRing {
    u64 p = 0;
    std::size_t deg = 0;
    std::vector<u32> modulus;  // length deg+1, monic

    using Elt = std::vector<u32>;

    Elt zero() const { return Elt(deg, 0); }
    Elt one() const {
        Elt e(deg, 0);
        if (deg > 0) e[0] = 1;
        return e;
    }
    Elt x() const {
        Elt e(deg, 0);
        if (deg > 1)
            e[1] = 1;
        else
            e[0] = (modulus[0] ? static_cast<u32>(p - modulus[0]) : 0);  // deg 1: x = -m0
        return e;
    }
    bool is_zero(const Elt& a) const {
        for (u32 c : a)
            if (c) return false;
        return true;
    }

    // multiply by x, reduce
    void mulx_inplace(Elt& a) const {
        u32 carry = a[deg - 1];
        for (std::size_t i = deg - 1; i > 0; --i) a[i] = a[i - 1];
        a[0] = 0;
        if (carry) {
            for (std::size_t i = 0; i < deg; ++i) {
                u64 v = a[i] + static_cast<u64>(p - modulus[i] % p) * carry % p;
                a[i] = static_cast<u32>(v % p);
            }
        }
    }

    Elt mul(const Elt& a, const Elt& b) const {
        std::vector<u64> prod(2 * deg - 1, 0);
        for (std::size_t i = 0; i < deg; ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < deg; ++j) prod[i + j] += static_cast<u64>(a[i]) * b[j];
        }
        // reduce top-down: x^{deg} = -(m_0 + ... + m_{deg-1} x^{deg-1})
        for (std::size_t i = prod.size(); i-- > deg;) {
            u64 lead = prod[i] % p;
            prod[i] = 0;
            if (!lead) continue;
            for (std::size_t j = 0; j < deg; ++j) {
                prod[i - deg + j] += lead * ((p - modulus[j] % p) % p);
            }
        }
        Elt r(deg);
        for (std::size_t i = 0; i < deg; ++i) r[i] = static_cast<u32>(prod[i] % p);
        return r;
    }

    Elt add(const Elt& a, const Elt& b) const {
        Elt r(deg);
        for (std::size_t i = 0; i < deg; ++i) {
            u32 s = a[i] + b[i];
            r[i] = s >= p ? s - static_cast<u32>(p) : s;
        }
        return r;
    }

    Elt pow(Elt base, mpz_class e) const {
        Elt r = one();
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    u64 code(const Elt& a) const {
        u64 c = 0;
        for (std::size_t i = deg; i-- > 0;) c = c * p + a[i];
        return c;
    }
    Elt decode(u64 c) const {
        Elt a(deg);
        for (std::size_t i = 0; i < deg; ++i) {
            a[i] = static_cast<u32>(c % p);
            c /= p;
        }
        return a;
    }
};

inline bool poly_irreducible(const PolyModRing& R) {
    // x^{p^deg} == x, and x^{p^{deg/l}} != x for prime l | deg
    const u64 p = R.p;
    auto frob_iter = [&](PolyModRing::Elt e, u64 times) {
        for (u64 i = 0; i < times; ++i) e = R.pow(e, mpz_class(static_cast<unsigned long>(p)));
        return e;
    };
    PolyModRing::Elt x = R.x();
    if (frob_iter(x, R.deg) != x) return false;
    for (u64 l : prime_factors(R.deg)) {
        if (frob_iter(x, R.deg / l) == x) return false;
    }
    return true;
}

inline bool poly_primitive(const PolyModRing& R, const mpz_class& r_minus_1,
                           const std::vector<mpz_class>& prime_factors_r1) {
    if (R.modulus[0] == 0) return false;  // x | f
    if (!poly_irreducible(R)) return false;
    PolyModRing::Elt x = R.x();
    if (R.pow(x, r_minus_1) != R.one()) return false;
    for (const auto& l : prime_factors_r1) {
        if (R.pow(x, r_minus_1 / l) == R.one()) return false;
    }
    return true;
}

inline std::vector<mpz_class> factor_mpz_trial(mpz_class n) {
    std::vector<mpz_class> fs;
    for (mpz_class d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// Deterministic modulus: smallest monic primitive polynomial of the given
// degree over F_p, coefficient vectors ordered as base-p integers with the
// high-degree coefficient most significant.
inline PolyModRing smallest_primitive_modulus(u64 p, std::size_t deg) {
    PolyModRing R;
    R.p = p;
    R.deg = deg;
    mpz_class r1 = mpz_pow(mpz_class(static_cast<unsigned long>(p)), static_cast<unsigned long>(deg)) - 1;
    auto fs = factor_mpz_trial(r1);
    mpz_class total = mpz_pow(mpz_class(static_cast<unsigned long>(p)), static_cast<unsigned long>(deg));
    for (mpz_class v = 1; v < total; ++v) {
        mpz_class t = v;
        R.modulus.assign(deg + 1, 0);
        R.modulus[deg] = 1;
        for (std::size_t i = 0; i < deg; ++i) {
            mpz_class q, rem;
            mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
            R.modulus[i] = static_cast<u32>(rem.get_ui());
            t = q;
        }
        if (poly_primitive(R, r1, fs)) return R;
    }
    throw internal_error("no primitive polynomial found");  // unreachable
}

}  // namespace gfdetail

class FieldCtx;

struct FieldElem {
    const FieldCtx* ctx = nullptr;
    u64 code = 0;  // base-p packing of the coordinate vector

    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.ctx == b.ctx && a.code == b.code; }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
};

struct FieldLimits {
    // dlog/exp tables are one entry per element; fields beyond this are
    // rejected (FieldTooLarge) per the element-table memory budget.
    static u64& max_elements() {
        static u64 v = 100000000;  // ~1e8 entries
        return v;
    }
};

struct FieldCacheConfig {
    // process-wide default cache directory for dlog tables (set by the CLI)
    static std::string& dir() {
        static std::string d;
        return d;
    }
};

// F_{p^k} and its extension of degree n: r = q^n elements, fixed generator
// (x modulo a primitive modulus), full dlog table. Immutable once built.
class FieldCtx {
  public:
    static const FieldCtx& make(const PrimePower& pp, u64 n, const std::string& cache_dir = "");

    const PrimePower& prime_power() const { return pp_; }
    u64 ext_degree() const { return n_; }
    u64 p() const { return pp_.p; }
    u64 q() const { return pp_.q; }
    u64 size() const { return r_; }
    u64 degree_over_prime() const { return ring_.deg; }
    const std::vector<u32>& modulus() const { return ring_.modulus; }

    FieldElem zero() const { return {this, 0}; }
    FieldElem one() const { return {this, one_code_}; }
    FieldElem generator() const { return {this, gen_code_}; }
    FieldElem from_int(i64 v) const {
        i64 m = static_cast<i64>(pp_.p);
        u64 c = static_cast<u64>(((v % m) + m) % m);
        return {this, c};
    }
    FieldElem from_code(u64 code) const { return {this, code}; }
    FieldElem from_coords(const std::vector<u32>& coords) const { return {this, ring_.code(coords)}; }
    std::vector<u32> coords(const FieldElem& a) const { return ring_.decode(a.code); }

    bool is_zero(const FieldElem& a) const { return a.code == 0; }

    // dlog present exactly for nonzero elements
    std::optional<u64> dlog(const FieldElem& a) const {
        if (a.code == 0) return std::nullopt;
        return dlog_[a.code];
    }
    FieldElem exp(u64 j) const { return {this, exp_[j % (r_ - 1)]}; }

    FieldElem add(const FieldElem& a, const FieldElem& b) const {
        check(a), check(b);
        return {this, add_codes(a.code, b.code)};
    }
    FieldElem neg(const FieldElem& a) const {
        check(a);
        u64 c = 0, pw = 1;
        u64 ac = a.code;
        for (std::size_t i = 0; i < ring_.deg; ++i) {
            u64 d = ac % pp_.p;
            ac /= pp_.p;
            c += (d ? (pp_.p - d) : 0) * pw;
            pw *= pp_.p;
        }
        return {this, c};
    }
    FieldElem sub(const FieldElem& a, const FieldElem& b) const { return add(a, neg(b)); }
    FieldElem mul(const FieldElem& a, const FieldElem& b) const {
        check(a), check(b);
        if (a.code == 0 || b.code == 0) return zero();
        return {this, exp_[(dlog_[a.code] + dlog_[b.code]) % (r_ - 1)]};
    }
    FieldElem inv(const FieldElem& a) const {
        check(a);
        if (a.code == 0) throw internal_error("division by zero field element");
        u64 j = dlog_[a.code];
        return {this, exp_[(r_ - 1 - j) % (r_ - 1)]};
    }
    FieldElem pow(const FieldElem& a, mpz_class e) const {
        check(a);
        if (a.code == 0) return e == 0 ? one() : zero();
        mpz_class m = e % static_cast<unsigned long>(r_ - 1);
        if (m < 0) m += static_cast<unsigned long>(r_ - 1);
        return exp(dlog_[a.code] * m.get_ui() % (r_ - 1));
    }

    // Quadratic character: +1 nonzero square, -1 nonsquare, 0 at zero.
    // Parity of the dlog; r is odd since p >= 5.
    int quadratic_char(const FieldElem& a) const {
        check(a);
        if (a.code == 0) return 0;
        return (dlog_[a.code] & 1) ? -1 : +1;
    }

    // ---- subfields -------------------------------------------------------

    // Derived context for the subfield F_{q^{n'}}, n' | n, generated by
    // N(G) = G^{(r-1)/(r'-1)}; its modulus is the minimal polynomial of that
    // norm, so the generator-power embedding is a ring homomorphism.
    const FieldCtx& subfield(u64 sub_n) const;

    // Embedding F_{q^{n'}} -> F_{q^n} determined by g_sub -> N(G).
    FieldElem embed_from_subfield(u64 sub_n, const FieldElem& x) const;

    // N(x) = x^{(r-1)/(r'-1)} as an element of the derived subfield context.
    FieldElem norm_to_subfield(u64 sub_n, const FieldElem& x) const;

    const gfdetail::PolyModRing& ring() const { return ring_; }

  private:
    friend struct FieldRegistry;
    FieldCtx() = default;
    void build(const PrimePower& pp, u64 n, gfdetail::PolyModRing ring, const std::string& cache_dir);

    u64 add_codes(u64 a, u64 b) const {
        u64 c = 0, pw = 1;
        for (std::size_t i = 0; i < ring_.deg; ++i) {
            u64 s = a % pp_.p + b % pp_.p;
            if (s >= pp_.p) s -= pp_.p;
            c += s * pw;
            pw *= pp_.p;
            a /= pp_.p;
            b /= pp_.p;
        }
        return c;
    }
    void check(const FieldElem& a) const {
        if (a.ctx != this) throw internal_error("field element used with foreign context");
    }

    PrimePower pp_;
    u64 n_ = 1;
    u64 r_ = 0;
    u64 one_code_ = 0, gen_code_ = 0;
    gfdetail::PolyModRing ring_;
    std::vector<u32> exp_;   // j -> code of g^j, j in [0, r-1)
    std::vector<u32> dlog_;  // code -> j (entry for 0 unused)

    struct Subfield {
        std::unique_ptr<FieldCtx> ctx;
        u64 norm_exp = 0;              // (r-1)/(r'-1)
        std::vector<u64> basis_image;  // codes of h^i in the big field
    };
    mutable std::map<u64, Subfield> subfields_;
    mutable std::mutex subfield_mtx_;
};

struct FieldRegistry {
    static const FieldCtx& get(const PrimePower& pp, u64 n, const std::string& cache_dir) {
        static std::map<std::tuple<u64, u64, u64>, std::unique_ptr<FieldCtx>> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_tuple(pp.p, pp.k, n);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
        auto ctx = std::unique_ptr<FieldCtx>(new FieldCtx());
        u64 deg = pp.k * n;
        ctx->build(pp, n, gfdetail::smallest_primitive_modulus(pp.p, deg), cache_dir);
        return *cache.emplace(key, std::move(ctx)).first->second;
    }
};

inline const FieldCtx& FieldCtx::make(const PrimePower& pp, u64 n, const std::string& cache_dir) {
    if (n < 1) throw input_error("make_field: extension degree must be >= 1");
    u64 r = 1;
    for (u64 i = 0; i < pp.k * n; ++i) {
        if (r > FieldLimits::max_elements() / pp.p) throw FieldTooLarge("field would exceed the element-table budget");
        r *= pp.p;
    }
    return FieldRegistry::get(pp, n, cache_dir.empty() ? FieldCacheConfig::dir() : cache_dir);
}

inline const FieldCtx& make_field(const PrimePower& pp, u64 n, const std::string& cache_dir = "") {
    return FieldCtx::make(pp, n, cache_dir);
}

namespace gfdetail {

inline std::string dlog_cache_path(const std::string& dir, u64 p, u64 k, u64 n) {
    return dir + "/dlog-p" + std::to_string(p) + "-k" + std::to_string(k) + "-n" + std::to_string(n) + ".tbl";
}

inline bool load_dlog_cache(const std::string& dir, u64 p, u64 k, u64 n, std::vector<u32>& exp,
                            std::vector<u32>& dlog) {
    std::ifstream f(dlog_cache_path(dir, p, k, n), std::ios::binary);
    if (!f) return false;
    char magic[8] = {};
    u64 sizes[2] = {};
    f.read(magic, 8);
    f.read(reinterpret_cast<char*>(sizes), sizeof(sizes));
    if (!f || std::string(magic, 8) != "HESSDLG1") return false;
    exp.resize(sizes[0]);
    dlog.resize(sizes[1]);
    f.read(reinterpret_cast<char*>(exp.data()), static_cast<std::streamsize>(exp.size() * sizeof(u32)));
    f.read(reinterpret_cast<char*>(dlog.data()), static_cast<std::streamsize>(dlog.size() * sizeof(u32)));
    return static_cast<bool>(f);
}

inline void store_dlog_cache(const std::string& dir, u64 p, u64 k, u64 n, const std::vector<u32>& exp,
                             const std::vector<u32>& dlog) {
    std::ofstream f(dlog_cache_path(dir, p, k, n), std::ios::binary);
    if (!f) return;  // cache is best-effort
    u64 sizes[2] = {exp.size(), dlog.size()};
    f.write("HESSDLG1", 8);
    f.write(reinterpret_cast<const char*>(sizes), sizeof(sizes));
    f.write(reinterpret_cast<const char*>(exp.data()), static_cast<std::streamsize>(exp.size() * sizeof(u32)));
    f.write(reinterpret_cast<const char*>(dlog.data()), static_cast<std::streamsize>(dlog.size() * sizeof(u32)));
}

}  // namespace gfdetail

inline void FieldCtx::build(const PrimePower& pp, u64 n, gfdetail::PolyModRing ring, const std::string& cache_dir) {
    pp_ = pp;
    n_ = n;
    ring_ = std::move(ring);
    r_ = 1;
    for (u64 i = 0; i < ring_.deg; ++i) r_ *= pp_.p;
    one_code_ = ring_.code(ring_.one());
    gen_code_ = ring_.code(ring_.x());

    if (!cache_dir.empty() && gfdetail::load_dlog_cache(cache_dir, pp_.p, pp_.k, n_, exp_, dlog_)) {
        if (exp_.size() == r_ - 1 && dlog_.size() == r_ && exp_[0] == one_code_) return;
    }
    exp_.assign(r_ - 1, 0);
    dlog_.assign(r_, 0);
    gfdetail::PolyModRing::Elt cur = ring_.one();
    for (u64 j = 0; j < r_ - 1; ++j) {
        u64 c = ring_.code(cur);
        exp_[j] = static_cast<u32>(c);
        dlog_[c] = static_cast<u32>(j);
        ring_.mulx_inplace(cur);
    }
    if (cur != ring_.one()) throw internal_error("generator order mismatch while building tables");
    if (!cache_dir.empty()) gfdetail::store_dlog_cache(cache_dir, pp_.p, pp_.k, n_, exp_, dlog_);
}

inline const FieldCtx& FieldCtx::subfield(u64 sub_n) const {
    if (sub_n == 0 || n_ % sub_n != 0) throw DegreeMismatch("subfield degree must divide the extension degree");
    std::lock_guard<std::mutex> lock(subfield_mtx_);
    auto it = subfields_.find(sub_n);
    if (it != subfields_.end()) return *it->second.ctx;

    Subfield sf;
    u64 sub_deg = pp_.k * sub_n;
    u64 r_sub = 1;
    for (u64 i = 0; i < sub_deg; ++i) r_sub *= pp_.p;
    sf.norm_exp = (r_ - 1) / (r_sub - 1);

    // h = G^{(r-1)/(r'-1)} generates the subfield; modulus := minpoly(h).
    gfdetail::PolyModRing::Elt h = ring_.decode(exp_[sf.norm_exp % (r_ - 1)]);
    std::vector<gfdetail::PolyModRing::Elt> conj;
    gfdetail::PolyModRing::Elt c = h;
    do {
        conj.push_back(c);
        c = ring_.pow(c, mpz_class(static_cast<unsigned long>(pp_.p)));
    } while (c != h);
    if (conj.size() != sub_deg) throw internal_error("norm generator has wrong conjugate orbit");

    // minpoly = prod (X - conj_i), computed with coefficients in the big field
    std::vector<gfdetail::PolyModRing::Elt> poly{ring_.one()};
    for (const auto& root : conj) {
        std::vector<gfdetail::PolyModRing::Elt> next(poly.size() + 1, ring_.zero());
        gfdetail::PolyModRing::Elt mroot = root;
        for (auto& v : mroot) v = v ? static_cast<u32>(pp_.p - v) : 0;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = ring_.add(next[i + 1], poly[i]);
            next[i] = ring_.add(next[i], ring_.mul(poly[i], mroot));
        }
        poly = std::move(next);
    }
    gfdetail::PolyModRing subring;
    subring.p = pp_.p;
    subring.deg = sub_deg;
    subring.modulus.assign(sub_deg + 1, 0);
    for (std::size_t i = 0; i <= sub_deg; ++i) {
        const auto& coeff = poly[i];
        for (std::size_t j = 1; j < coeff.size(); ++j)
            if (coeff[j]) throw internal_error("minimal polynomial coefficient not in the prime field");
        subring.modulus[i] = coeff[0];
    }

    sf.ctx = std::unique_ptr<FieldCtx>(new FieldCtx());
    sf.ctx->build(pp_, sub_n, subring, "");

    // basis images h^i, used by the embedding
    sf.basis_image.resize(sub_deg);
    gfdetail::PolyModRing::Elt hp = ring_.one();
    for (std::size_t i = 0; i < sub_deg; ++i) {
        sf.basis_image[i] = ring_.code(hp);
        hp = ring_.mul(hp, h);
    }
    it = subfields_.emplace(sub_n, std::move(sf)).first;
    return *it->second.ctx;
}

inline FieldElem FieldCtx::embed_from_subfield(u64 sub_n, const FieldElem& x) const {
    subfield(sub_n);  // force construction
    const Subfield& sf = subfields_.at(sub_n);
    if (x.ctx != sf.ctx.get()) throw internal_error("embed: element not from the derived subfield");
    auto coords = sf.ctx->coords(x);
    gfdetail::PolyModRing::Elt acc = ring_.zero();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (!coords[i]) continue;
        auto term = ring_.decode(sf.basis_image[i]);
        for (auto& v : term) v = static_cast<u32>(static_cast<u64>(v) * coords[i] % pp_.p);
        acc = ring_.add(acc, term);
    }
    return {this, ring_.code(acc)};
}

inline FieldElem FieldCtx::norm_to_subfield(u64 sub_n, const FieldElem& x) const {
    check(x);
    const FieldCtx& sub = subfield(sub_n);
    const Subfield& sf = subfields_.at(sub_n);
    if (x.code == 0) return sub.zero();
    u64 j = dlog_[x.code] % (r_ - 1);
    // N(g^j) = h^j where h = g^{norm_exp}; dlog base h in the sub context is
    // j mod (r'-1) by the tower generator convention.
    return sub.exp(j % (sub.size() - 1));
}

// Solve for preimage under the subfield embedding (used by tests).
inline std::optional<FieldElem> pullback_to_subfield(const FieldCtx& big, u64 sub_n, const FieldElem& y) {
    const FieldCtx& sub = big.subfield(sub_n);
    if (y.code == 0) return sub.zero();
    auto dl = big.dlog(y);
    u64 norm_exp = (big.size() - 1) / (sub.size() - 1);
    if (*dl % norm_exp != 0) return std::nullopt;  // not in the subfield
    return sub.exp(*dl / norm_exp % (sub.size() - 1));
}

}  // namespace hessian
