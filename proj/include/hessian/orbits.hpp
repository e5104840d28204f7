#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "hessian/errors.hpp"
#include "hessian/int_util.hpp"

namespace hessian {

// Residues {1,...,d-1}, minus {d/3, 2d/3} when 3 | d.
inline std::vector<u64> z_d(u64 d) {
    if (d < 2) throw input_error("z_d: d >= 2 required");
    std::vector<u64> zs;
    for (u64 m = 1; m < d; ++m) {
        if (d % 3 == 0 && (m == d / 3 || m == 2 * d / 3)) continue;
        zs.push_back(m);
    }
    return zs;
}

struct Orbit {
    u64 rep = 0;                // smallest lift in {1,...,d-1}
    u64 length = 0;             // = mult. order of q mod d/gcd(d,rep)
    std::vector<u64> members;   // rep, q*rep, q^2*rep, ... mod d
};

struct OrbitSet {
    u64 d = 0;
    u64 q = 0;
    std::vector<Orbit> orbits;  // ordered by smallest representative
};

// Partition of Z_d into orbits under m -> q*m mod d.
inline OrbitSet decompose(u64 d, u64 q) {
    if (std::gcd(d, q) != 1) throw NotCoprime("decompose: gcd(d, q) != 1");
    OrbitSet os;
    os.d = d;
    os.q = q;
    std::vector<char> seen(d, 0);
    for (u64 m : z_d(d)) {
        if (seen[m]) continue;
        Orbit orb;
        orb.rep = m;
        u64 cur = m;
        do {
            orb.members.push_back(cur);
            seen[cur] = 1;
            cur = cur * (q % d) % d;
        } while (cur != m);
        orb.length = orb.members.size();
        os.orbits.push_back(std::move(orb));
    }
    return os;
}

// |{m in Z/dZ \ {0} : gcd(d, m) > d^u / 3}|, compared exactly when u is a
// small rational a/b (via (3 gcd)^b > d^a), which covers every use here.
inline u64 gcd_tail_count(u64 d, double u) {
    if (d < 2) throw input_error("gcd_tail_count: d >= 2 required");
    // recover u as a small fraction; inputs are human-chosen values like 0.3
    u64 best_num = 0, best_den = 1;
    double best_err = 1e300;
    for (u64 den = 1; den <= 64; ++den) {
        u64 num = static_cast<u64>(std::llround(u * static_cast<double>(den)));
        double err = std::abs(u - static_cast<double>(num) / static_cast<double>(den));
        if (err < best_err - 1e-15) {
            best_err = err;
            best_num = num;
            best_den = den;
        }
    }
    mpz_class rhs = mpz_pow(mpz_class(static_cast<unsigned long>(d)), static_cast<unsigned long>(best_num));
    u64 count = 0;
    for (u64 m = 1; m < d; ++m) {
        mpz_class lhs = mpz_pow(mpz_class(static_cast<unsigned long>(3 * std::gcd(d, m))),
                                static_cast<unsigned long>(best_den));
        if (lhs > rhs) ++count;
    }
    return count;
}

}  // namespace hessian
