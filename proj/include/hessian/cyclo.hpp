#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "hessian/errors.hpp"
#include "hessian/int_util.hpp"

namespace hessian {

// Phi_e as integer coefficients, constant term first.
// Computed by dividing x^e - 1 by Phi_f for all proper divisors f | e.
inline const std::vector<mpz_class>& cyclotomic_polynomial(u64 e) {
    static std::map<u64, std::vector<mpz_class>> cache;
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;

    std::vector<mpz_class> num(e + 1);
    num[0] = -1;
    num[e] = 1;
    for (u64 f : divisors(e)) {
        if (f == e) continue;
        const auto& phi_f = cyclotomic_polynomial(f);
        // exact division num /= phi_f
        std::vector<mpz_class> quot(num.size() - phi_f.size() + 1);
        for (std::size_t i = quot.size(); i-- > 0;) {
            quot[i] = num[i + phi_f.size() - 1];  // phi_f is monic
            for (std::size_t j = 0; j + 1 < phi_f.size(); ++j) num[i + j] -= quot[i] * phi_f[j];
            num[i + phi_f.size() - 1] = 0;
        }
        num = std::move(quot);
    }
    return cache.emplace(e, std::move(num)).first->second;
}

namespace detail {

// Reduce a rational polynomial (constant first) modulo the monic Phi_e.
inline void reduce_mod_phi(std::vector<mpq_class>& poly, u64 e) {
    const auto& phi = cyclotomic_polynomial(e);
    const std::size_t deg_phi = phi.size() - 1;
    while (poly.size() > deg_phi) {
        mpq_class lead = poly.back();
        poly.pop_back();
        if (lead == 0) continue;
        const std::size_t off = poly.size() - deg_phi;
        for (std::size_t j = 0; j < deg_phi; ++j) poly[off + j] -= lead * phi[j];
    }
    poly.resize(deg_phi, mpq_class(0));
    for (auto& c : poly) c.canonicalize();
}

}  // namespace detail

// Exact element of Q(zeta_e) in the power basis 1, zeta, ..., zeta^{phi(e)-1} mod Phi_e.
class CycNumber {
  public:
    CycNumber() : level_(1), coeffs_(1, mpq_class(0)) {}
    explicit CycNumber(u64 level) : level_(level), coeffs_(euler_phi(level), mpq_class(0)) {}
    CycNumber(u64 level, std::vector<mpq_class> coeffs) : level_(level), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != euler_phi(level_)) throw internal_error("CycNumber: bad coefficient count");
    }

    static CycNumber from_integer(const mpz_class& v, u64 level = 1) {
        CycNumber x(level);
        x.coeffs_[0] = v;
        return x;
    }
    static CycNumber from_rational(const mpq_class& v, u64 level = 1) {
        CycNumber x(level);
        x.coeffs_[0] = v;
        return x;
    }

    u64 level() const { return level_; }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    // Lies in Z iff every coefficient past the constant vanishes and the
    // constant is integral. Canonical thanks to the Phi_e basis.
    std::optional<mpz_class> as_rational_integer() const {
        auto r = as_rational();
        if (!r || r->get_den() != 1) return std::nullopt;
        return r->get_num();
    }
    std::optional<mpq_class> as_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return std::nullopt;
        return coeffs_[0];
    }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        if (a.level_ != b.level_) {
            u64 l = std::lcm(a.level_, b.level_);
            return a.embedded(l) == b.embedded(l);
        }
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    CycNumber& operator+=(const CycNumber& o) {
        check_level(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    CycNumber& operator-=(const CycNumber& o) {
        check_level(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
    friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
    CycNumber operator-() const {
        CycNumber r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
        a.check_level(b);
        std::vector<mpq_class> prod(2 * a.coeffs_.size(), mpq_class(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                if (b.coeffs_[j] == 0) continue;
                prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        detail::reduce_mod_phi(prod, a.level_);
        return CycNumber(a.level_, std::move(prod));
    }
    CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }

    CycNumber& scale(const mpq_class& s) {
        for (auto& c : coeffs_) {
            c *= s;
            c.canonicalize();
        }
        return *this;
    }

    // zeta_e -> zeta_e^{-1}
    CycNumber conjugate() const { return galois_twist(level_ - 1); }

    // zeta_e -> zeta_e^t for gcd(t, e) = 1
    CycNumber galois_twist(u64 t) const {
        t %= level_;
        if (level_ > 1 && std::gcd(t, level_) != 1) throw internal_error("galois_twist: exponent not a unit");
        std::vector<mpq_class> poly(level_, mpq_class(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) poly[(i * t) % level_] += coeffs_[i];
        detail::reduce_mod_phi(poly, level_);
        return CycNumber(level_, std::move(poly));
    }

    // Q(zeta_e) -> Q(zeta_E), zeta_e -> zeta_E^{E/e}; injective ring hom.
    CycNumber embedded(u64 new_level) const {
        if (new_level % level_ != 0) throw LevelMismatch("embed: target level not a multiple");
        if (new_level == level_) return *this;
        u64 step = new_level / level_;
        std::vector<mpq_class> poly(coeffs_.size() * step, mpq_class(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) poly[i * step] = coeffs_[i];
        detail::reduce_mod_phi(poly, new_level);
        return CycNumber(new_level, std::move(poly));
    }

    // Floating-point shadow at zeta_e = exp(2*pi*i/e); cross-check only.
    std::complex<double> eval_complex() const {
        std::complex<double> z = std::polar(1.0, 2.0 * 3.14159265358979323846 / static_cast<double>(level_));
        std::complex<double> acc = 0.0, zp = 1.0;
        for (const auto& c : coeffs_) {
            acc += c.get_d() * zp;
            zp *= z;
        }
        return acc;
    }

  private:
    void check_level(const CycNumber& o) const {
        if (level_ != o.level_) throw LevelMismatch("CycNumber: mixed levels in binary operation");
    }

    u64 level_;
    std::vector<mpq_class> coeffs_;
};

inline CycNumber root_of_unity(u64 e, u64 j) {
    std::vector<mpq_class> poly(e, mpq_class(0));
    poly[((j % e) + e) % e] = 1;
    detail::reduce_mod_phi(poly, e);
    return CycNumber(e, std::move(poly));
}

// Polynomial in T with CycNumber coefficients, all at one level. The working
// type for Euler-factor products before integrality reduction.
struct CycPoly {
    u64 level = 1;
    std::vector<CycNumber> coeffs;  // constant term first

    explicit CycPoly(u64 lvl) : level(lvl), coeffs{CycNumber::from_integer(1, lvl)} {}

    // multiply by (1 - c T^len)
    void mul_factor(const CycNumber& c, u64 len) {
        CycNumber ce = c.level() == level ? c : c.embedded(level);
        std::vector<CycNumber> next(coeffs.size() + len, CycNumber(level));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i] += coeffs[i];
            next[i + len] -= coeffs[i] * ce;
        }
        coeffs = std::move(next);
    }

    // every coefficient must reduce to a rational integer
    std::optional<std::vector<mpz_class>> as_integer_poly() const {
        std::vector<mpz_class> out(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            auto v = coeffs[i].as_rational_integer();
            if (!v) return std::nullopt;
            out[i] = *v;
        }
        return out;
    }
};

inline CycNumber root_of_unity_signed(u64 e, i64 j) {
    i64 m = static_cast<i64>(e);
    return root_of_unity(e, static_cast<u64>(((j % m) + m) % m));
}

}  // namespace hessian
