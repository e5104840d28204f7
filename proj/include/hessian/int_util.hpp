#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <gmpxx.h>

#include "hessian/errors.hpp"

namespace hessian {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u8 = std::uint8_t;

inline u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Checked p^k as u64; throws FieldTooLarge past 2^62.
inline u64 pow_u64_checked(u64 base, u64 exp) {
    u64 r = 1;
    for (u64 i = 0; i < exp; ++i) {
        if (r > (u64(1) << 62) / base) throw FieldTooLarge("power exceeds 2^62");
        r *= base;
    }
    return r;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> fs;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            fs.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> ds;
    for (u64 i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            ds.push_back(i);
            if (i != n / i) ds.push_back(n / i);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline u64 euler_phi(u64 n) {
    u64 r = n;
    for (u64 p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

// Multiplicative order of a modulo m, gcd(a,m)=1.
inline u64 mult_order(u64 a, u64 m) {
    if (m == 1) return 1;
    a %= m;
    if (std::gcd(a, m) != 1) throw NotCoprime("mult_order: arguments share a factor");
    u64 order = euler_phi(m);
    for (u64 p : prime_factors(order)) {
        while (order % p == 0 && pow_mod(a, order / p, m) == 1) order /= p;
    }
    return order;
}

inline u64 tau_divisor_count(u64 n) {
    u64 c = 0;
    for (u64 i = 1; i * i <= n; ++i) {
        if (n % i == 0) c += (i == n / i) ? 1 : 2;
    }
    return c;
}

inline mpz_class mpz_pow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Base-p digits of a >= 0, least significant first, padded to at least len.
inline std::vector<u32> base_p_digits(mpz_class a, u64 p, std::size_t len) {
    std::vector<u32> ds;
    while (a > 0) {
        mpz_class q, r;
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(p));
        ds.push_back(static_cast<u32>(r.get_ui()));
        a = q;
    }
    while (ds.size() < len) ds.push_back(0);
    return ds;
}

// log of |num/den| using exponent decomposition; safe for huge rationals.
inline double log_mpq_abs(const mpq_class& x) {
    signed long en, ed;
    double mn = mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
    return std::log(std::abs(mn)) - std::log(std::abs(md)) + (en - ed) * std::log(2.0);
}

}  // namespace hessian
