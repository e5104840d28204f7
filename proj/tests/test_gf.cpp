#include <doctest.h>

#include <random>
#include <set>

#include "hessian/gf.hpp"

using namespace hessian;

TEST_CASE("make_field basics") {
    const FieldCtx& f7 = make_field(PrimePower(7, 1), 1);
    CHECK(f7.size() == 7);
    // generator has order q-1
    u64 ord = 1;
    FieldElem g = f7.generator(), cur = g;
    while (cur != f7.one()) {
        cur = f7.mul(cur, g);
        ++ord;
    }
    CHECK(ord == 6);

    const FieldCtx& f25 = make_field(PrimePower(5, 2), 1);
    CHECK(f25.size() == 25);
    u64 ord25 = 1;
    FieldElem g25 = f25.generator(), c25 = g25;
    while (c25 != f25.one()) {
        c25 = f25.mul(c25, g25);
        ++ord25;
    }
    CHECK(ord25 == 24);
}

TEST_CASE("characteristic restrictions") {
    CHECK_THROWS_AS(PrimePower(3, 1), CharacteristicTooSmall);
    CHECK_THROWS_AS(PrimePower(2, 1), CharacteristicTooSmall);
    CHECK_THROWS_AS(PrimePower(4, 1), CharacteristicTooSmall);
    CHECK_THROWS_AS(PrimePower(9, 1), NotPrime);
    CHECK_THROWS_AS(PrimePower(91, 1), NotPrime);
}

TEST_CASE("field axioms, random spot checks") {
    const FieldCtx& f = make_field(PrimePower(7, 1), 2);  // F_49
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<u64> dist(0, f.size() - 1);
    for (int i = 0; i < 1000; ++i) {
        FieldElem a = f.from_code(dist(rng)), b = f.from_code(dist(rng)), c = f.from_code(dist(rng));
        CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
        CHECK(f.add(a, f.add(b, c)) == f.add(f.add(a, b), c));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        if (!f.is_zero(a)) CHECK(f.mul(a, f.inv(a)) == f.one());
        CHECK(f.add(a, f.neg(a)) == f.zero());
    }
}

TEST_CASE("Frobenius and dlog soundness, exhaustive") {
    for (auto [p, k, n] : {std::tuple<u64, u64, u64>{13, 1, 3}, {7, 1, 3}, {5, 2, 1}}) {
        const FieldCtx& f = make_field(PrimePower(p, k), n);
        for (u64 code = 0; code < f.size(); ++code) {
            FieldElem x = f.from_code(code);
            CHECK(f.pow(x, mpz_class(static_cast<unsigned long>(f.size()))) == x);
            if (!f.is_zero(x)) {
                auto dl = f.dlog(x);
                REQUIRE(dl.has_value());
                CHECK(f.exp(*dl) == x);
            } else {
                CHECK(!f.dlog(x).has_value());
            }
        }
    }
}

TEST_CASE("norm to subfield") {
    const FieldCtx& f49 = make_field(PrimePower(7, 1), 2);
    const FieldCtx& f7 = f49.subfield(1);
    CHECK(f7.size() == 7);

    // norm of zero
    CHECK(f49.norm_to_subfield(1, f49.zero()) == f7.zero());

    // N(G) = G^8 generates F_7^x
    FieldElem ng = f49.norm_to_subfield(1, f49.generator());
    CHECK(ng == f7.generator());
    u64 ord = 1;
    FieldElem cur = ng;
    while (cur != f7.one()) {
        cur = f7.mul(cur, ng);
        ++ord;
    }
    CHECK(ord == 6);

    // surjectivity onto the subfield's multiplicative group
    std::set<u64> images;
    for (u64 code = 1; code < f49.size(); ++code) images.insert(f49.norm_to_subfield(1, f49.from_code(code)).code);
    CHECK(images.size() == 6);

    CHECK_THROWS_AS(f49.subfield(3), DegreeMismatch);
}

TEST_CASE("norm multiplicativity and surjectivity, F_{7^4} over F_{7^2}") {
    const FieldCtx& big = make_field(PrimePower(7, 1), 4);
    const FieldCtx& sub = big.subfield(2);
    CHECK(sub.size() == 49);
    std::set<u64> images;
    for (u64 code = 1; code < big.size(); ++code) {
        FieldElem x = big.from_code(code);
        images.insert(big.norm_to_subfield(2, x).code);
    }
    CHECK(images.size() == 48);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<u64> dist(1, big.size() - 1);
    for (int i = 0; i < 300; ++i) {
        FieldElem a = big.from_code(dist(rng)), b = big.from_code(dist(rng));
        CHECK(big.norm_to_subfield(2, big.mul(a, b)) ==
              sub.mul(big.norm_to_subfield(2, a), big.norm_to_subfield(2, b)));
    }
}

TEST_CASE("subfield embedding is a ring homomorphism fixing F_p") {
    const FieldCtx& big = make_field(PrimePower(5, 1), 4);
    const FieldCtx& sub = big.subfield(2);
    for (u64 a = 0; a < sub.size(); ++a) {
        for (u64 b = 0; b < sub.size(); b += 3) {
            FieldElem xa = sub.from_code(a), xb = sub.from_code(b);
            CHECK(big.embed_from_subfield(2, sub.add(xa, xb)) ==
                  big.add(big.embed_from_subfield(2, xa), big.embed_from_subfield(2, xb)));
            CHECK(big.embed_from_subfield(2, sub.mul(xa, xb)) ==
                  big.mul(big.embed_from_subfield(2, xa), big.embed_from_subfield(2, xb)));
        }
    }
    for (i64 c = 0; c < 5; ++c) CHECK(big.embed_from_subfield(2, sub.from_int(c)) == big.from_int(c));
    // injectivity
    std::set<u64> images;
    for (u64 a = 0; a < sub.size(); ++a) images.insert(big.embed_from_subfield(2, sub.from_code(a)).code);
    CHECK(images.size() == sub.size());
}

TEST_CASE("quadratic character") {
    const FieldCtx& f7 = make_field(PrimePower(7, 1), 1);
    CHECK(f7.quadratic_char(f7.from_int(2)) == 1);   // squares mod 7: {1,2,4}
    CHECK(f7.quadratic_char(f7.from_int(-1)) == -1); // 7 = 3 mod 4
    CHECK(f7.quadratic_char(f7.zero()) == 0);

    // 1 + lambda(w) counts square roots of w
    for (auto [p, n] : {std::pair<u64, u64>{7, 2}, {11, 1}, {5, 2}}) {
        const FieldCtx& f = make_field(PrimePower(p, 1), n);
        for (u64 w = 0; w < f.size(); ++w) {
            FieldElem we = f.from_code(w);
            int roots = 0;
            for (u64 t = 0; t < f.size(); ++t) {
                FieldElem te = f.from_code(t);
                if (f.mul(te, te) == we) ++roots;
            }
            CHECK(1 + f.quadratic_char(we) == roots);
        }
    }
}

TEST_CASE("deterministic construction") {
    const FieldCtx& a = make_field(PrimePower(7, 1), 2);
    const FieldCtx& b = make_field(PrimePower(7, 1), 2);
    CHECK(&a == &b);
    CHECK(a.modulus() == std::vector<u32>{3, 1, 1});  // x^2 + x + 3 is the first primitive
}

TEST_CASE("field size budget") {
    u64 saved = FieldLimits::max_elements();
    FieldLimits::max_elements() = 1000;
    CHECK_THROWS_AS(make_field(PrimePower(7, 1), 4), FieldTooLarge);
    FieldLimits::max_elements() = saved;
}
