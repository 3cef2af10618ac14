#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aswt/cyclotomic.hpp"

using namespace aswt;

namespace {
CycInt::Elem random_elem(const CycInt& R, std::mt19937_64& rng) {
    auto e = R.zero();
    for (int i = 0; i < R.phi; ++i) e[i] = static_cast<int64_t>(rng() % 19) - 9;
    return e;
}
}  // namespace

TEST_CASE("pi-adic valuation in Z[zeta_9]") {
    IntCoeffs zz;
    CycInt R(zz, 3, 2);
    REQUIRE(R.phi == 6);
    SECTION("val(p) is phi(p^m); in val_q units with a=1 that is 1") {
        auto v = R.val_pi(R.from_int(3));
        REQUIRE(v);
        CHECK(*v == 6);
        auto q = val_q_of(R, R.from_int(3), 1);
        REQUIRE(q);
        CHECK(*q == BigRat(1));
    }
    SECTION("the uniformizer has val_q 1/6") {
        auto pi = R.sub(R.zeta_pow(1), R.one());
        auto q = val_q_of(R, pi, 1);
        REQUIRE(q);
        CHECK(*q == BigRat(1, 6));
    }
    SECTION("zero maps to the infinity sentinel") {
        CHECK(!R.val_pi(R.zero()).has_value());
        CHECK(!val_q_of(R, R.zero(), 1).has_value());
    }
}

TEST_CASE("exact division by (zeta - 1) succeeds exactly val times") {
    IntCoeffs zz;
    std::mt19937_64 rng(42);
    for (auto [p, m] : {std::pair<int64_t, int>{3, 1}, {3, 2}, {5, 1}, {2, 1}}) {
        CycInt R(zz, p, m);
        auto pi = R.sub(R.zeta_pow(1), R.one());
        for (int t = 0; t < 10; ++t) {
            CycInt::Elem u;
            do {
                u = random_elem(R, rng);
            } while (R.eval_at_one(u) % p == 0);
            int j = static_cast<int>(rng() % 5);
            auto v = u;
            for (int i = 0; i < j; ++i) v = R.mul(v, pi);
            auto val = R.val_pi(v);
            REQUIRE(val);
            CHECK(*val == j);
        }
    }
}

TEST_CASE("(zeta-1)^phi equals p times a unit") {
    IntCoeffs zz;
    for (auto [p, m] : {std::pair<int64_t, int>{3, 2}, {5, 1}, {7, 1}}) {
        CycInt R(zz, p, m);
        auto pi = R.sub(R.zeta_pow(1), R.one());
        auto v = R.pow(pi, static_cast<uint64_t>(R.phi));
        // v / p must be a unit: valuation zero
        CycInt::Elem w = v;
        bool ok = true;
        for (auto& c : w) ok = ok && (c % p == 0);
        REQUIRE(ok);
        for (auto& c : w) c /= p;
        auto val = R.val_pi(w);
        REQUIRE(val);
        CHECK(*val == 0);
    }
}

TEST_CASE("valuation is additive on products") {
    IntCoeffs zz;
    CycInt R(zz, 3, 2);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        auto a = random_elem(R, rng), b = random_elem(R, rng);
        auto va = R.val_pi(a), vb = R.val_pi(b), vab = R.val_pi(R.mul(a, b));
        if (!va || !vb) {
            CHECK(!vab);
        } else {
            REQUIRE(vab);
            CHECK(*vab == *va + *vb);
        }
    }
}

TEST_CASE("Galois conjugation is a ring automorphism") {
    IntCoeffs zz;
    CycInt R(zz, 3, 2);
    std::mt19937_64 rng(11);
    for (int64_t u : {2, 4, 5, 7, 8}) {
        for (int t = 0; t < 10; ++t) {
            auto a = random_elem(R, rng), b = random_elem(R, rng);
            CHECK(R.equal(R.conjugate(R.mul(a, b), u), R.mul(R.conjugate(a, u), R.conjugate(b, u))));
            CHECK(R.equal(R.conjugate(R.add(a, b), u), R.add(R.conjugate(a, u), R.conjugate(b, u))));
        }
        // conjugation preserves valuation
        auto pi = R.sub(R.zeta_pow(1), R.one());
        CHECK(*R.val_pi(R.conjugate(pi, u)) == 1);
    }
}

TEST_CASE("conductor embedding Z[zeta_3] -> Z[zeta_9]") {
    IntCoeffs zz;
    CycInt R3(zz, 3, 1), R9(zz, 3, 2);
    auto z3 = R3.zeta_pow(1);
    auto img = cyc_embed(R3, R9, z3);
    CHECK(R9.equal(img, R9.zeta_pow(3)));
    // val_q of zeta_3 - 1 measured inside Z[zeta_9] is still 1/2 (a = 1)
    auto v = val_q_of(R9, R9.sub(img, R9.one()), 1);
    REQUIRE(v);
    CHECK(*v == BigRat(1, 2));
    // embedding is multiplicative
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        auto a = random_elem(R3, rng), b = random_elem(R3, rng);
        CHECK(R9.equal(cyc_embed(R3, R9, R3.mul(a, b)),
                       R9.mul(cyc_embed(R3, R9, a), cyc_embed(R3, R9, b))));
    }
}
