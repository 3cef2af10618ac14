#pragma once

// Scalar arithmetic helpers shared by the whole library: exact big integers
// and rationals, modular arithmetic on word-sized prime powers, small
// deterministic factorization, and a chunked parallel map.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace aswt {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const BigRat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const BigRat& r) { return boost::multiprecision::denominator(r); }

// ---------------------------------------------------------------------------
// Word-sized modular arithmetic.  Moduli are prime powers p^M < 2^62.

inline int64_t mod_reduce(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>((static_cast<__int128>(a) * b) % m);
}

inline int64_t pow_mod(int64_t base, uint64_t e, int64_t m) {
    int64_t r = 1 % m;
    base = mod_reduce(base, m);
    while (e) {
        if (e & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return r;
}

// Inverse of a unit modulo m (extended Euclid); throws if gcd(a, m) != 1.
inline int64_t inv_mod(int64_t a, int64_t m) {
    int64_t t = 0, newt = 1, r = m, newr = mod_reduce(a, m);
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("inv_mod: element is not a unit");
    return mod_reduce(t, m);
}

inline int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) {
        if (b != 0 && r > INT64_MAX / b) throw std::overflow_error("ipow overflow");
        r *= b;
    }
    return r;
}

// p-adic valuation of a nonzero word; nullopt for 0.
inline std::optional<int> val_p(int64_t v, int64_t p) {
    if (v == 0) return std::nullopt;
    int k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    return k;
}

inline std::optional<long> val_p(BigInt v, int64_t p) {
    if (v == 0) return std::nullopt;
    long k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    return k;
}

// val_p of an exact rational (may be negative); nullopt for 0.
inline std::optional<long> val_p(const BigRat& v, int64_t p) {
    if (v == 0) return std::nullopt;
    return *val_p(rat_num(v), p) - *val_p(rat_den(v), p);
}

// Reduce a p-integral rational modulo p^M.
inline int64_t rat_mod(const BigRat& v, int64_t p, int64_t pM) {
    BigInt num = rat_num(v), den = rat_den(v);
    if (den % p == 0) throw std::domain_error("rat_mod: rational is not p-integral");
    int64_t n = static_cast<int64_t>(num % pM);
    int64_t d = static_cast<int64_t>(den % pM);
    return mul_mod(mod_reduce(n, pM), inv_mod(d, pM), pM);
}

// ---------------------------------------------------------------------------
// Trial-division primality and factorization; inputs stay desk-scale.

inline bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<int64_t> prime_factors(int64_t n) {
    std::vector<int64_t> ps;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// ---------------------------------------------------------------------------
// Exact rationals as (num, den) pairs for emission; never decimals.

inline std::string rat_str(const BigRat& r) {
    return rat_num(r).str() + "/" + rat_den(r).str();
}

// ---------------------------------------------------------------------------
// Chunked parallel loop.  Thread count comes from ASWT_THREADS, defaulting to
// the hardware count.  Work items must be independent; merging is caller-side.

inline unsigned thread_count() {
    if (const char* env = std::getenv("ASWT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

template <class Fn>
void parallel_for(int64_t n, Fn&& fn) {
    unsigned nt = thread_count();
    if (n <= 0) return;
    if (nt <= 1 || n < 2) {
        for (int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (static_cast<int64_t>(nt) > n) nt = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        int64_t lo = n * t / nt, hi = n * (t + 1) / nt;
        pool.emplace_back([lo, hi, &fn] {
            for (int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace aswt
