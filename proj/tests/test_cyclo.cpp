#include <doctest.h>

#include "hessian/cyclo.hpp"

using namespace hessian;

static std::vector<mpz_class> zpoly(std::initializer_list<long> cs) {
    std::vector<mpz_class> v;
    for (long c : cs) v.emplace_back(c);
    return v;
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == zpoly({-1, 1}));
    CHECK(cyclotomic_polynomial(2) == zpoly({1, 1}));
    CHECK(cyclotomic_polynomial(12) == zpoly({1, 0, -1, 0, 1}));  // x^4 - x^2 + 1
    CHECK(cyclotomic_polynomial(3) == zpoly({1, 1, 1}));
    CHECK(cyclotomic_polynomial(8) == zpoly({1, 0, 0, 0, 1}));
}

TEST_CASE("roots of unity") {
    CHECK(root_of_unity(5, 0) == CycNumber::from_integer(1, 5));
    CHECK(root_of_unity(4, 2) == CycNumber::from_integer(-1, 4));
    // zeta_3^2 = -1 - zeta_3
    CycNumber z32 = root_of_unity(3, 2);
    CHECK(z32.coeffs()[0] == -1);
    CHECK(z32.coeffs()[1] == -1);
}

TEST_CASE("ring operations and conjugation") {
    CHECK(root_of_unity(4, 1).conjugate() == -root_of_unity(4, 1));        // conj(i) = -i
    CHECK(root_of_unity(3, 1).embedded(12) == root_of_unity(12, 4));       // zeta_3 -> zeta_12^4
    CHECK(root_of_unity(3, 1) * root_of_unity(3, 2) == CycNumber::from_integer(1, 3));
    CHECK(root_of_unity(3, 1) + root_of_unity(3, 2) == CycNumber::from_integer(-1, 3));
}

TEST_CASE("as_rational_integer") {
    CHECK(*CycNumber::from_integer(5, 6).as_rational_integer() == 5);
    CHECK(!root_of_unity(3, 1).as_rational_integer().has_value());
    CHECK(*(root_of_unity(3, 1) + root_of_unity(3, 2)).as_rational_integer() == -1);
    CycNumber half = CycNumber::from_rational(mpq_class(1, 2), 4);
    CHECK(!half.as_rational_integer().has_value());
    CHECK(*half.as_rational() == mpq_class(1, 2));
}

TEST_CASE("Phi_e(zeta_e) = 0 for e <= 64") {
    for (u64 e = 1; e <= 64; ++e) {
        const auto& phi = cyclotomic_polynomial(e);
        CycNumber acc(e), zp = CycNumber::from_integer(1, e);
        CycNumber z = root_of_unity(e, 1);
        for (const auto& c : phi) {
            CycNumber term = zp;
            term.scale(mpq_class(c));
            acc += term;
            zp *= z;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("embed and conjugate commute; unit modulus") {
    for (u64 e : {3u, 4u, 5u, 6u, 8u, 12u}) {
        u64 target = std::lcm(e, 24ul);
        for (u64 j = 0; j < e; ++j) {
            CycNumber x = root_of_unity(e, j);
            CHECK(x.conjugate().embedded(target) == x.embedded(target).conjugate());
            CHECK(x * x.conjugate() == CycNumber::from_integer(1, e));
        }
    }
}

TEST_CASE("galois twist permutes roots") {
    for (u64 t : {1u, 5u, 7u, 11u}) {
        CHECK(root_of_unity(12, 1).galois_twist(t) == root_of_unity(12, t));
    }
}

TEST_CASE("level mismatch raises") {
    CHECK_THROWS_AS(root_of_unity(3, 1) + root_of_unity(4, 1), LevelMismatch);
    CHECK_THROWS_AS(root_of_unity(8, 1).embedded(12), LevelMismatch);
}

TEST_CASE("large-level arithmetic stays exact") {
    // mimic a coefficient-sized computation at level 512 with big integers
    CycNumber z = root_of_unity(512, 1);
    CycNumber acc = CycNumber::from_integer(mpz_class("28561"), 512);  // 13^4
    for (int i = 0; i < 8; ++i) acc *= acc;  // 13^{4*256}
    mpz_class expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), 13, 1024);
    CHECK(*acc.as_rational_integer() == expect);
    CHECK((z * z.conjugate()) == CycNumber::from_integer(1, 512));
}

TEST_CASE("complex shadow agrees approximately") {
    CycNumber x = root_of_unity(5, 1) + root_of_unity(5, 4);  // 2 cos(2 pi / 5)
    double expect = 2.0 * std::cos(2.0 * 3.14159265358979323846 / 5.0);
    CHECK(std::abs(x.eval_complex().real() - expect) < 1e-12);
    CHECK(std::abs(x.eval_complex().imag()) < 1e-12);
}
