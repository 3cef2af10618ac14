#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aswt/unramified.hpp"

using namespace aswt;

namespace {
ZqElem random_elem(const ZqRing& R, std::mt19937_64& rng) {
    ZqElem e{};
    for (int i = 0; i < R.n; ++i) e.c[i] = static_cast<int64_t>(rng() % R.pM);
    return e;
}
}  // namespace

TEST_CASE("modulus selection is deterministic and matches frozen choices") {
    ZqRing f9a(3, 2, 1), f9b(3, 2, 4);
    CHECK(f9a.modulus == std::vector<int64_t>{1, 0});  // x^2 + 1
    CHECK(f9b.modulus == f9a.modulus);
    ZqRing f27(3, 3, 1);
    CHECK(f27.modulus == std::vector<int64_t>{1, 2, 0});  // x^3 + 2x + 1
    ZqRing f16(2, 4, 1);
    CHECK(detail::fp_poly_irreducible([&] {
              auto m = f16.modulus;
              m.push_back(1);
              return m;
          }(), 2));
}

TEST_CASE("teichmuller lifts") {
    SECTION("fixed point of x -> x^p on Z/25") {
        ZqRing R(5, 1, 2);
        // independent oracle: iterate z -> z^5 mod 25 until stable
        int64_t z = 2;
        for (int i = 0; i < 6; ++i) z = pow_mod(z, 5, 25);
        REQUIRE(z == 7);
        REQUIRE(pow_mod(7, 4, 25) == 1);
        CHECK(R.teichmuller(R.from_int(2)).c[0] == 7);
    }
    SECTION("omega(1) = 1 and omega(0) = 0") {
        ZqRing R(3, 2, 3);
        CHECK(R.equal(R.teichmuller(R.one()), R.one()));
        CHECK(R.is_zero(R.teichmuller(R.zero())));
    }
    SECTION("full enumeration: omega(x)^{p^n} = omega(x) mod p^M") {
        int assertions = 0;
        for (auto [p, n] : {std::pair<int64_t, int>{2, 4}, {3, 3}, {5, 2}, {7, 2}}) {
            ZqRing R(p, n, 3);
            int64_t q = ipow(p, n);
            for (int64_t u = 0; u < q; ++u) {
                ZqElem x = R.from_counter(u);
                ZqElem w = R.teichmuller(x);
                ZqElem wq = w;
                for (int s = 0; s < n; ++s) wq = R.pow(wq, static_cast<uint64_t>(p));
                REQUIRE(R.equal(wq, w));
                REQUIRE(R.equal(R.reduce_mod(w, p), R.reduce_mod(x, p)));
                ++assertions;
            }
        }
        CHECK(assertions >= 100);
    }
}

TEST_CASE("frobenius is a ring endomorphism with sigma^n = id") {
    ZqRing R(3, 4, 3);
    std::mt19937_64 rng(12345);
    CHECK(R.equal(R.frobenius(R.one()), R.one()));
    for (int t = 0; t < 50; ++t) {
        ZqElem a = random_elem(R, rng), b = random_elem(R, rng);
        CHECK(R.equal(R.frobenius(R.add(a, b)), R.add(R.frobenius(a), R.frobenius(b))));
        CHECK(R.equal(R.frobenius(R.mul(a, b)), R.mul(R.frobenius(a), R.frobenius(b))));
        ZqElem s = a;
        for (int i = 0; i < R.n; ++i) s = R.frobenius(s);
        CHECK(R.equal(s, a));
    }
    SECTION("on teichmuller lifts sigma is x -> x^p") {
        for (int64_t u = 0; u < 20; ++u) {
            ZqElem w = R.teichmuller(R.from_counter(u));
            CHECK(R.equal(R.frobenius(w), R.pow(w, static_cast<uint64_t>(R.p))));
        }
    }
    SECTION("frobenius reduces to x -> x^p mod p") {
        for (int t = 0; t < 20; ++t) {
            ZqElem a = random_elem(R, rng);
            CHECK(R.equal(R.reduce_mod(R.frobenius(a), R.p),
                          R.reduce_mod(R.pow(a, static_cast<uint64_t>(R.p)), R.p)));
        }
    }
}

TEST_CASE("traces") {
    SECTION("trace of 1 from the degree-2 ring is 2") {
        ZqRing R(3, 2, 3);
        CHECK(R.equal(R.trace_to_subring(R.one(), 1), R.from_int(2)));
        CHECK(R.trace_to_scalar(R.one()) == 2);
    }
    SECTION("trace of a subring element is (n/ell) * y") {
        ZqRing R(3, 4, 2);
        // y in the degree-2 subring: built as a trace image, then re-traced
        std::mt19937_64 rng(7);
        for (int t = 0; t < 20; ++t) {
            ZqElem y = R.trace_to_subring(random_elem(R, rng), 2);
            CHECK(R.equal(R.trace_to_subring(y, 2), R.scalar_mul(2, y)));
        }
    }
    SECTION("trace lands in the sigma^ell-fixed subring and is Z_p-linear") {
        ZqRing R(3, 4, 3);
        std::mt19937_64 rng(99);
        for (int t = 0; t < 30; ++t) {
            ZqElem y = random_elem(R, rng), z = random_elem(R, rng);
            ZqElem ty = R.trace_to_subring(y, 2);
            CHECK(R.equal(R.frobenius(ty, 2), ty));
            int64_t s = static_cast<int64_t>(rng() % R.pM);
            ZqElem lhs = R.trace_to_subring(R.add(R.scalar_mul(s, y), z), 2);
            CHECK(R.equal(lhs, R.add(R.scalar_mul(s, ty), R.trace_to_subring(z, 2))));
        }
    }
    SECTION("degree divisibility is enforced") {
        ZqRing R(3, 4, 2);
        CHECK_THROWS_AS(R.trace_to_subring(R.one(), 3), std::invalid_argument);
    }
}

TEST_CASE("inversion of units") {
    ZqRing R(3, 2, 5);
    std::mt19937_64 rng(5);
    int done = 0;
    while (done < 25) {
        ZqElem a = random_elem(R, rng);
        if (!R.nonzero_mod_p(a)) continue;
        CHECK(R.equal(R.mul(a, R.inv(a)), R.one()));
        ++done;
    }
    CHECK_THROWS_AS(R.inv(R.scalar_mul(3, R.one())), std::domain_error);
}

TEST_CASE("dual basis") {
    SECTION("ell = 1, c = (1) gives c* = (1)") {
        ZqRing R(3, 1, 4);
        auto db = dual_basis(R, {R.one()});
        CHECK(R.equal(db.c_star[0], R.one()));
    }
    SECTION("teichmuller power basis, ell = 2, p = 3: Gram identity holds") {
        ZqRing R(3, 2, 4);
        ZqElem c1 = R.one();
        ZqElem c2 = R.teichmuller(R.generator());
        auto db = dual_basis(R, {c1, c2});
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                int64_t tr = subring_trace_scalar(R, R.mul(db.c_star[i], db.c[j]), 2);
                CHECK(tr == (i == j ? 1 : 0));
            }
    }
    SECTION("p-multiple of a basis vector is rejected") {
        ZqRing R(3, 2, 4);
        ZqElem c1 = R.one();
        ZqElem c2 = R.scalar_mul(3, c1);
        CHECK_THROWS_AS(dual_basis(R, {c1, c2}), std::invalid_argument);
    }
}

TEST_CASE("subring embeddings map the modulus to a root") {
    ZqRing small(3, 2, 3), big(3, 4, 3);
    ZqEmbedding emb(small, big);
    // evaluate the small modulus at the generator image inside the big ring
    ZqElem z = emb.generator_image();
    ZqElem acc = big.zero();
    std::vector<int64_t> monic(small.modulus);
    monic.push_back(1);
    for (size_t i = monic.size(); i-- > 0;) {
        acc = big.mul(acc, z);
        acc = big.add(acc, big.from_int(monic[i]));
    }
    CHECK(big.is_zero(acc));
    SECTION("embedding is a ring homomorphism") {
        std::mt19937_64 rng(3);
        for (int t = 0; t < 20; ++t) {
            ZqElem a = random_elem(small, rng), b = random_elem(small, rng);
            CHECK(big.equal(emb.apply(small.mul(a, b)), big.mul(emb.apply(a), emb.apply(b))));
            CHECK(big.equal(emb.apply(small.add(a, b)), big.add(emb.apply(a), emb.apply(b))));
        }
    }
    SECTION("choice of root is deterministic") {
        ZqEmbedding emb2(small, big);
        CHECK(big.equal(emb.generator_image(), emb2.generator_image()));
    }
    SECTION("teichmuller commutes with the embedding") {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 10; ++t) {
            ZqElem x = small.reduce_mod(random_elem(small, rng), 3);
            CHECK(big.equal(emb.apply(small.teichmuller(x)), big.teichmuller(emb.apply(x))));
        }
    }
}
