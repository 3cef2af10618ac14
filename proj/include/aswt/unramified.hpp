#pragma once

// Exact arithmetic in the truncated unramified rings Z_q / p^M (q = p^n) and,
// at precision M = 1, the finite fields F_{p^n}.  A ring is described by a
// deterministic modulus (the monic irreducible polynomial over F_p of degree n
// with the smallest integer encoding sum c_i p^i), so independent runs agree
// bit for bit.  Elements are coordinate vectors in the power basis of the
// generator.  The arithmetic Frobenius lift, Teichmuller lifts, traces, subring
// embeddings and trace-dual bases all live here.

#include <algorithm>
#include <cassert>
#include <sstream>

#include "arith.hpp"

namespace aswt {

inline constexpr int kZqMaxDeg = 16;

struct ZqElem {
    std::array<int64_t, kZqMaxDeg> c{};

    bool operator==(const ZqElem&) const = default;
};

class ZqRing;

namespace detail {
// Dense polynomials over a ZqRing, used for moduli handling and root finding.
using ZqPoly = std::vector<ZqElem>;
}  // namespace detail

class ZqRing {
  public:
    using Elem = ZqElem;

    int64_t p;
    int n;   // degree over Z_p
    int M;   // precision: coordinates live in Z / p^M
    int64_t pM;
    // monic modulus x^n + modulus[n-1] x^{n-1} + ... + modulus[0], lifted from
    // F_p with coefficients in {0, .., p-1}
    std::vector<int64_t> modulus;

    ZqRing(int64_t p_, int n_, int M_) : p(p_), n(n_), M(M_) {
        if (!is_prime(p)) throw std::invalid_argument("ZqRing: p must be prime");
        if (n < 1 || n > kZqMaxDeg) throw std::invalid_argument("ZqRing: degree out of range");
        if (M < 1) throw std::invalid_argument("ZqRing: precision must be >= 1");
        pM = ipow(p, M);
        if (pM > (int64_t(1) << 40)) throw std::invalid_argument("ZqRing: p^M too large");
        modulus = first_irreducible(p, n);
        build_reduction();
        build_frobenius();
        build_trace();
    }

    // --- element basics ------------------------------------------------

    ZqElem zero() const { return ZqElem{}; }

    ZqElem one() const {
        ZqElem e{};
        e.c[0] = 1 % pM;
        return e;
    }

    ZqElem from_int(int64_t v) const {
        ZqElem e{};
        e.c[0] = mod_reduce(v, pM);
        return e;
    }

    ZqElem generator() const {
        ZqElem e{};
        if (n > 1) e.c[1] = 1;
        return e;
    }

    // Deterministic enumeration of residue-level elements by counter digits.
    ZqElem from_counter(int64_t u) const {
        ZqElem e{};
        for (int i = 0; i < n && u > 0; ++i) {
            e.c[i] = u % p;
            u /= p;
        }
        return e;
    }

    bool is_zero(const ZqElem& a) const {
        for (int i = 0; i < n; ++i)
            if (a.c[i] != 0) return false;
        return true;
    }

    bool equal(const ZqElem& a, const ZqElem& b) const {
        for (int i = 0; i < n; ++i)
            if (a.c[i] != b.c[i]) return false;
        return true;
    }

    bool divisible_by_p(const ZqElem& a) const {
        for (int i = 0; i < n; ++i)
            if (a.c[i] % p != 0) return false;
        return true;
    }

    bool nonzero_mod_p(const ZqElem& a) const {
        for (int i = 0; i < n; ++i)
            if (a.c[i] % p != 0) return true;
        return false;
    }

    ZqElem reduce_mod(const ZqElem& a, int64_t modexp) const {
        ZqElem r{};
        for (int i = 0; i < n; ++i) r.c[i] = a.c[i] % modexp;
        return r;
    }

    // Divide every coordinate representative by d when possible.  For d = p
    // the quotient is only meaningful mod p^{M-1}; callers track that.
    bool div_exact(ZqElem& a, int64_t d) const {
        for (int i = 0; i < n; ++i)
            if (a.c[i] % d != 0) return false;
        for (int i = 0; i < n; ++i) a.c[i] /= d;
        return true;
    }

    bool is_scalar(const ZqElem& a) const {
        for (int i = 1; i < n; ++i)
            if (a.c[i] != 0) return false;
        return true;
    }

    int64_t scalar_of(const ZqElem& a) const {
        if (!is_scalar(a)) throw std::domain_error("scalar_of: element is not in Z_p");
        return a.c[0];
    }

    // --- arithmetic ------------------------------------------------------

    ZqElem add(const ZqElem& a, const ZqElem& b) const {
        ZqElem r{};
        for (int i = 0; i < n; ++i) {
            int64_t s = a.c[i] + b.c[i];
            r.c[i] = s >= pM ? s - pM : s;
        }
        return r;
    }

    ZqElem sub(const ZqElem& a, const ZqElem& b) const {
        ZqElem r{};
        for (int i = 0; i < n; ++i) {
            int64_t s = a.c[i] - b.c[i];
            r.c[i] = s < 0 ? s + pM : s;
        }
        return r;
    }

    ZqElem neg(const ZqElem& a) const {
        ZqElem r{};
        for (int i = 0; i < n; ++i) r.c[i] = a.c[i] == 0 ? 0 : pM - a.c[i];
        return r;
    }

    void add_inplace(ZqElem& a, const ZqElem& b) const { a = add(a, b); }

    // scalar (Z/p^M) helpers used by series substitution kernels
    int64_t scalar_add(int64_t x, int64_t y) const { return (x + y) % pM; }
    int64_t scalar_mulmod(int64_t x, int64_t y) const { return mul_mod(x, y, pM); }

    ZqElem scalar_mul(int64_t s, const ZqElem& a) const {
        s = mod_reduce(s, pM);
        ZqElem r{};
        for (int i = 0; i < n; ++i) r.c[i] = mul_mod(s, a.c[i], pM);
        return r;
    }

    ZqElem mul(const ZqElem& a, const ZqElem& b) const {
        ZqElem r{};
        mul_acc(r, a, b);
        return r;
    }

    // r += a * b.  The fast path keeps raw sums below 2^63; with p^M <= 2^40
    // and n <= 16 this always holds for the folded accumulation below.
    void mul_acc(ZqElem& r, const ZqElem& a, const ZqElem& b) const {
        int64_t buf[2 * kZqMaxDeg] = {0};
        for (int i = 0; i < n; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; j < n; ++j) buf[i + j] += mul_mod(a.c[i], b.c[j], pM);
        }
        for (int j = n - 2; j >= 0; --j) {
            int64_t t = buf[n + j] % pM;
            if (t == 0) continue;
            const ZqElem& row = xpow_[j];
            for (int i = 0; i < n; ++i) buf[i] += mul_mod(t, row.c[i], pM);
        }
        for (int i = 0; i < n; ++i) r.c[i] = (r.c[i] + buf[i]) % pM;
    }

    ZqElem pow(ZqElem base, uint64_t e) const {
        ZqElem r = one();
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // Inverse of a unit: polynomial extended Euclid against the modulus mod p,
    // then Hensel iterations v <- v(2 - av) up to p^M.
    ZqElem inv(const ZqElem& a) const {
        if (!nonzero_mod_p(a)) throw std::domain_error("inv: element is not a unit");
        ZqElem v = inv_mod_p(a);
        int prec = 1;
        while (prec < M) {
            ZqElem t = mul(a, v);
            t = sub(from_int(2), t);
            v = mul(v, t);
            prec *= 2;
        }
        return v;
    }

    // --- Frobenius, Teichmuller, traces ---------------------------------

    // sigma^i, the i-th power of the lifted arithmetic p-Frobenius
    ZqElem frobenius(const ZqElem& a, int i = 1) const {
        i = ((i % n) + n) % n;
        if (i == 0) return a;
        const auto& cols = frob_[i];
        ZqElem r{};
        for (int j = 0; j < n; ++j) {
            if (a.c[j] == 0) continue;
            for (int k = 0; k < n; ++k) r.c[k] = (r.c[k] + mul_mod(a.c[j], cols[j].c[k], pM)) % pM;
        }
        return r;
    }

    // Teichmuller lift: the fixed point of z -> z^{p^n} congruent to a mod p.
    // Convergence gains at least one digit per sweep; M + 2 sweeps suffice.
    ZqElem teichmuller(const ZqElem& a) const {
        ZqElem z = reduce_mod(a, p);
        if (is_zero(z)) return z;
        for (int iter = 0; iter < M + 2; ++iter) {
            ZqElem next = z;
            for (int s = 0; s < n; ++s) next = pow(next, static_cast<uint64_t>(p));
            if (equal(next, z)) return z;
            z = next;
        }
        throw std::runtime_error("teichmuller: no convergence within iteration cap");
    }

    // Tr down to Z_p as a scalar mod p^M.
    int64_t trace_to_scalar(const ZqElem& a) const {
        int64_t s = 0;
        for (int i = 0; i < n; ++i) s = (s + mul_mod(a.c[i], trace_pow_[i], pM)) % pM;
        return s;
    }

    // Partial trace onto the subring of degree ell: sum of sigma^{ell*i}.
    ZqElem trace_to_subring(const ZqElem& a, int ell) const {
        if (ell < 1 || n % ell != 0)
            throw std::invalid_argument("trace_to_subring: target degree must divide ring degree");
        ZqElem s{};
        for (int i = 0; i < n / ell; ++i) s = add(s, frobenius(a, ell * i));
        return s;
    }

    std::string to_string(const ZqElem& a) const {
        std::ostringstream os;
        for (int i = 0; i < n; ++i) {
            if (i) os << ' ';
            os << a.c[i];
        }
        return os.str();
    }

    // Deterministic modulus choice shared with callers that only need the
    // residue-level polynomial.
    static std::vector<int64_t> first_irreducible(int64_t p, int n);

  private:
    std::vector<ZqElem> xpow_;                 // x^{n+j} reduced, j = 0..n-2
    std::vector<std::vector<ZqElem>> frob_;    // frob_[i][j] = sigma^i(x^j)
    std::vector<int64_t> trace_pow_;           // Tr(x^j) as scalars

    void build_reduction() {
        xpow_.assign(std::max(0, n - 1), ZqElem{});
        if (n == 1) return;
        // x^n = -modulus[<n]
        ZqElem cur{};
        for (int i = 0; i < n; ++i) cur.c[i] = modulus[i] == 0 ? 0 : pM - (modulus[i] % pM);
        xpow_[0] = cur;
        for (int j = 1; j <= n - 2; ++j) {
            ZqElem nxt{};
            int64_t top = cur.c[n - 1];
            for (int i = n - 1; i >= 1; --i) nxt.c[i] = cur.c[i - 1];
            nxt.c[0] = 0;
            if (top != 0)
                for (int i = 0; i < n; ++i)
                    nxt.c[i] = (nxt.c[i] + mul_mod(top, xpow_[0].c[i], pM)) % pM;
            xpow_[j] = nxt;
            cur = nxt;
        }
    }

    ZqElem inv_mod_p(const ZqElem& a) const;

    ZqElem eval_int_poly(const std::vector<int64_t>& poly, const ZqElem& z) const {
        ZqElem acc{};
        for (size_t i = poly.size(); i-- > 0;) {
            acc = mul(acc, z);
            acc = add(acc, from_int(poly[i]));
        }
        return acc;
    }

    void build_frobenius() {
        frob_.assign(n, {});
        frob_[0].resize(n);
        for (int j = 0; j < n; ++j) {
            ZqElem e{};
            e.c[j] = 1;
            frob_[0][j] = e;
        }
        if (n == 1) {
            trace_pow_ = {1 % pM};
            return;
        }
        // Image of the generator under sigma: the root of the modulus that is
        // congruent to x^p mod p, found by Hensel lifting from that seed.
        std::vector<int64_t> monic(modulus);
        monic.push_back(1);
        std::vector<int64_t> deriv(n);
        for (int i = 1; i <= n; ++i) deriv[i - 1] = mul_mod(i % pM, i == n ? 1 : modulus[i], pM);
        ZqElem z = pow(generator(), static_cast<uint64_t>(p));
        z = reduce_mod(z, p);
        for (int iter = 0, need = 1; need < M * 2; ++iter, need *= 2) {
            ZqElem fz = eval_int_poly(monic, z);
            ZqElem dz = eval_int_poly(deriv, z);
            z = sub(z, mul(fz, inv(dz)));
            if (iter > M + 4) break;
        }
        if (!is_zero(eval_int_poly(monic, z)))
            throw std::runtime_error("frobenius: Hensel lift failed to reach a root");
        // columns sigma(x^j) = z^j, then compose for higher twists
        std::vector<ZqElem> col1(n);
        ZqElem acc = one();
        for (int j = 0; j < n; ++j) {
            col1[j] = acc;
            if (j + 1 < n) acc = mul(acc, z);
        }
        frob_[1] = col1;
        for (int i = 2; i < n; ++i) {
            frob_[i].resize(n);
            for (int j = 0; j < n; ++j) {
                const ZqElem& prev = frob_[i - 1][j];
                ZqElem r{};
                for (int t = 0; t < n; ++t) {
                    if (prev.c[t] == 0) continue;
                    for (int k = 0; k < n; ++k)
                        r.c[k] = (r.c[k] + mul_mod(prev.c[t], col1[t].c[k], pM)) % pM;
                }
                frob_[i][j] = r;
            }
        }
    }

    void build_trace() {
        trace_pow_.assign(n, 0);
        for (int j = 0; j < n; ++j) {
            ZqElem s{};
            for (int i = 0; i < n; ++i) s = add(s, frob_[i][j]);
            if (!is_scalar(s)) throw std::runtime_error("trace table: Tr(x^j) not rational");
            trace_pow_[j] = s.c[0];
        }
    }
};

// ---------------------------------------------------------------------------
// Modulus selection: smallest integer encoding sum c_i p^i over monic
// irreducible degree-n polynomials.  Irreducibility via x^{p^n} = x mod f and
// gcd(x^{p^{n/r}} - x, f) = 1 for primes r | n, all over F_p.

namespace detail {

inline std::vector<int64_t> fp_poly_mulmod(const std::vector<int64_t>& a,
                                           const std::vector<int64_t>& b,
                                           const std::vector<int64_t>& f, int64_t p) {
    int n = static_cast<int>(f.size()) - 1;
    std::vector<int64_t> buf(2 * n - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) buf[i + j] = (buf[i + j] + a[i] * b[j]) % p;
    }
    for (int d = 2 * n - 2; d >= n; --d) {
        int64_t t = buf[d];
        if (t == 0) continue;
        buf[d] = 0;
        for (int i = 0; i < n; ++i) buf[d - n + i] = mod_reduce(buf[d - n + i] - t * f[i], p);
    }
    buf.resize(n);
    return buf;
}

inline std::vector<int64_t> fp_poly_powmod(std::vector<int64_t> base, BigInt e,
                                           const std::vector<int64_t>& f, int64_t p) {
    std::vector<int64_t> r{1};
    while (e > 0) {
        if ((e & 1) != 0) r = fp_poly_mulmod(r, base, f, p);
        base = fp_poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline void fp_poly_trim(std::vector<int64_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<int64_t> fp_poly_mod(std::vector<int64_t> a, const std::vector<int64_t>& b,
                                        int64_t p) {
    int64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        int64_t c = mul_mod(a.back(), lead_inv, p);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = mod_reduce(a[shift + i] - c * b[i], p);
        fp_poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline std::vector<int64_t> fp_poly_gcd(std::vector<int64_t> a, std::vector<int64_t> b, int64_t p) {
    fp_poly_trim(a);
    fp_poly_trim(b);
    while (!b.empty()) {
        auto r = fp_poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        int64_t li = inv_mod(a.back(), p);
        for (auto& c : a) c = mul_mod(c, li, p);
    }
    return a;
}

inline bool fp_poly_irreducible(const std::vector<int64_t>& f, int64_t p) {
    int n = static_cast<int>(f.size()) - 1;
    std::vector<int64_t> x{0, 1};
    if (n == 1) return true;
    BigInt pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    auto xq = fp_poly_powmod(x, pn, f, p);
    // x^{p^n} must equal x
    auto diff = xq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = mod_reduce(diff[1] - 1, p);
    fp_poly_trim(diff);
    if (!diff.empty()) return false;
    for (int64_t r : prime_factors(n)) {
        BigInt e = 1;
        for (int i = 0; i < n / r; ++i) e *= p;
        auto xr = fp_poly_powmod(x, e, f, p);
        xr.resize(std::max<size_t>(xr.size(), 2), 0);
        xr[1] = mod_reduce(xr[1] - 1, p);
        fp_poly_trim(xr);
        auto g = fp_poly_gcd(f, xr, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

inline std::vector<int64_t> ZqRing::first_irreducible(int64_t p, int n) {
    if (n == 1) return {0};  // modulus x: Z_q = Z_p
    int64_t limit = ipow(p, n);
    for (int64_t u = 0; u < limit; ++u) {
        std::vector<int64_t> f(n + 1, 0);
        int64_t v = u;
        for (int i = 0; i < n; ++i) {
            f[i] = v % p;
            v /= p;
        }
        f[n] = 1;
        if (detail::fp_poly_irreducible(f, p)) {
            f.pop_back();
            return f;
        }
    }
    throw std::logic_error("first_irreducible: none found");
}

inline ZqElem ZqRing::inv_mod_p(const ZqElem& a) const {
    // extended Euclid in F_p[x] against the modulus
    std::vector<int64_t> f(modulus);
    f.push_back(1);
    std::vector<int64_t> r0 = f, r1(n, 0);
    for (int i = 0; i < n; ++i) r1[i] = a.c[i] % p;
    detail::fp_poly_trim(r1);
    if (r1.empty()) throw std::domain_error("inv: zero divisor");
    std::vector<int64_t> t0{}, t1{1};
    while (!r1.empty() && r1.size() > 1) {
        // one division step
        std::vector<int64_t> q;
        {
            auto num = r0;
            int64_t li = inv_mod(r1.back(), p);
            q.assign(num.size() >= r1.size() ? num.size() - r1.size() + 1 : 0, 0);
            while (num.size() >= r1.size() && !num.empty()) {
                int64_t c = mul_mod(num.back(), li, p);
                size_t shift = num.size() - r1.size();
                q[shift] = c;
                for (size_t i = 0; i < r1.size(); ++i)
                    num[shift + i] = mod_reduce(num[shift + i] - c * r1[i], p);
                detail::fp_poly_trim(num);
            }
            r0.swap(r1);
            r1 = std::move(num);
        }
        // t update: (t0, t1) <- (t1, t0 - q t1)
        std::vector<int64_t> qt(q.size() + t1.size() - (q.empty() || t1.empty() ? 0 : 1), 0);
        if (!q.empty() && !t1.empty()) {
            qt.assign(q.size() + t1.size() - 1, 0);
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < t1.size(); ++j) qt[i + j] = (qt[i + j] + q[i] * t1[j]) % p;
        }
        std::vector<int64_t> nt(std::max(t0.size(), qt.size()), 0);
        for (size_t i = 0; i < nt.size(); ++i) {
            int64_t v0 = i < t0.size() ? t0[i] : 0;
            int64_t v1 = i < qt.size() ? qt[i] : 0;
            nt[i] = mod_reduce(v0 - v1, p);
        }
        detail::fp_poly_trim(nt);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (r1.empty()) throw std::domain_error("inv: zero divisor");
    int64_t li = inv_mod(r1[0], p);
    ZqElem out{};
    for (size_t i = 0; i < t1.size() && i < static_cast<size_t>(n); ++i)
        out.c[i] = mul_mod(t1[i], li, p);
    return out;
}

// ---------------------------------------------------------------------------
// Polynomials over a ZqRing and deterministic root finding (precision 1).

namespace detail {

inline void zq_poly_trim(const ZqRing& R, ZqPoly& a) {
    while (!a.empty() && R.is_zero(a.back())) a.pop_back();
}

inline ZqPoly zq_poly_mul(const ZqRing& R, const ZqPoly& a, const ZqPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZqPoly r(a.size() + b.size() - 1, R.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) R.mul_acc(r[i + j], a[i], b[j]);
    return r;
}

inline ZqPoly zq_poly_mod(const ZqRing& R, ZqPoly a, const ZqPoly& b) {
    ZqElem li = R.inv(b.back());
    while (a.size() >= b.size()) {
        ZqElem c = R.mul(a.back(), li);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = R.sub(a[shift + i], R.mul(c, b[i]));
        zq_poly_trim(R, a);
        if (a.empty()) break;
    }
    return a;
}

inline ZqPoly zq_poly_mulmod(const ZqRing& R, const ZqPoly& a, const ZqPoly& b, const ZqPoly& f) {
    return zq_poly_mod(R, zq_poly_mul(R, a, b), f);
}

inline ZqPoly zq_poly_powmod(const ZqRing& R, ZqPoly base, int64_t e, const ZqPoly& f) {
    ZqPoly r{R.one()};
    base = zq_poly_mod(R, std::move(base), f);
    while (e > 0) {
        if (e & 1) r = zq_poly_mulmod(R, r, base, f);
        base = zq_poly_mulmod(R, base, base, f);
        e >>= 1;
    }
    return r;
}

inline ZqPoly zq_poly_gcd(const ZqRing& R, ZqPoly a, ZqPoly b) {
    zq_poly_trim(R, a);
    zq_poly_trim(R, b);
    while (!b.empty()) {
        auto r = zq_poly_mod(R, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        ZqElem li = R.inv(a.back());
        for (auto& c : a) c = R.mul(c, li);
    }
    return a;
}

inline bool zq_elem_lex_less(const ZqRing& R, const ZqElem& a, const ZqElem& b) {
    for (int i = 0; i < R.n; ++i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

// All roots in F_{p^n} (the ring must have M = 1) of a polynomial that splits
// into distinct linear factors, sorted lexicographically by coordinates.
// Splitting uses (x + delta)^{(q-1)/2} - 1 with delta walked deterministically.
inline std::vector<ZqElem> zq_field_roots(const ZqRing& R, ZqPoly f) {
    if (R.M != 1) throw std::invalid_argument("zq_field_roots: wants a residue field");
    int64_t q = ipow(R.p, R.n);
    zq_poly_trim(R, f);
    // keep only the part splitting over this field
    {
        ZqPoly x{R.zero(), R.one()};
        ZqPoly xq = zq_poly_powmod(R, x, q, f);
        if (xq.size() < 2) xq.resize(2, R.zero());
        xq[1] = R.sub(xq[1], R.one());
        zq_poly_trim(R, xq);
        f = zq_poly_gcd(R, f, xq);
    }
    std::vector<ZqElem> roots;
    std::vector<ZqPoly> stack{f};
    while (!stack.empty()) {
        ZqPoly g = std::move(stack.back());
        stack.pop_back();
        zq_poly_trim(R, g);
        if (g.size() <= 1) continue;
        if (g.size() == 2) {
            roots.push_back(R.neg(R.mul(g[0], R.inv(g[1]))));
            continue;
        }
        if (R.p == 2) {
            // brute force; fields this code sees at p = 2 are tiny
            for (int64_t u = 0; u < q; ++u) {
                ZqElem z = R.from_counter(u);
                ZqElem acc = R.zero();
                for (size_t i = g.size(); i-- > 0;) acc = R.add(R.mul(acc, z), g[i]);
                if (R.is_zero(acc)) roots.push_back(z);
            }
            continue;
        }
        bool split = false;
        for (int64_t u = 0; u < q && !split; ++u) {
            ZqPoly shifted{R.from_counter(u), R.one()};
            ZqPoly w = zq_poly_powmod(R, shifted, (q - 1) / 2, g);
            if (w.empty()) w.push_back(R.zero());
            w[0] = R.sub(w[0], R.one());
            zq_poly_trim(R, w);
            ZqPoly h = zq_poly_gcd(R, g, w);
            if (h.size() > 1 && h.size() < g.size()) {
                ZqPoly rest = zq_poly_mod(R, g, h);
                // g = h * (g/h); recover quotient by long division
                ZqPoly quot;
                {
                    ZqPoly num = g;
                    ZqElem li = R.inv(h.back());
                    quot.assign(num.size() - h.size() + 1, R.zero());
                    while (num.size() >= h.size() && !num.empty()) {
                        ZqElem c = R.mul(num.back(), li);
                        size_t shift = num.size() - h.size();
                        quot[shift] = c;
                        for (size_t i = 0; i < h.size(); ++i)
                            num[shift + i] = R.sub(num[shift + i], R.mul(c, h[i]));
                        zq_poly_trim(R, num);
                    }
                }
                stack.push_back(std::move(h));
                stack.push_back(std::move(quot));
                split = true;
            }
        }
        if (!split) throw std::runtime_error("zq_field_roots: splitting failed");
    }
    std::sort(roots.begin(), roots.end(),
              [&](const ZqElem& a, const ZqElem& b) { return zq_elem_lex_less(R, a, b); });
    return roots;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Embedding of the degree-ns unramified ring into a degree-nb one (ns | nb):
// the generator of the small ring maps to the lexicographically smallest root
// of its modulus, found at residue level and Hensel-lifted to precision M.

class ZqEmbedding {
  public:
    const ZqRing* sub;
    const ZqRing* big;

    ZqEmbedding(const ZqRing& s, const ZqRing& b) : sub(&s), big(&b) {
        if (s.p != b.p || s.M != b.M || b.n % s.n != 0)
            throw std::invalid_argument("ZqEmbedding: incompatible rings");
        std::vector<int64_t> monic(s.modulus);
        monic.push_back(1);
        ZqElem root0;
        {
            ZqRing res(b.p, b.n, 1);
            detail::ZqPoly f(monic.size());
            for (size_t i = 0; i < monic.size(); ++i) f[i] = res.from_int(monic[i]);
            auto roots = detail::zq_field_roots(res, f);
            if (roots.empty()) throw std::runtime_error("ZqEmbedding: modulus has no root");
            root0 = roots.front();
        }
        // Hensel-lift to p^M in the big ring
        ZqElem z = root0;
        std::vector<int64_t> deriv(s.n);
        for (int i = 1; i <= s.n; ++i)
            deriv[i - 1] = mul_mod(i % b.pM, i == s.n ? 1 : s.modulus[i], b.pM);
        for (int need = 1; need < 2 * b.M; need *= 2) {
            ZqElem fz = eval_int(monic, z);
            ZqElem dz = eval_int(deriv, z);
            z = b.sub(z, b.mul(fz, b.inv(dz)));
        }
        if (!b.is_zero(eval_int(monic, z)))
            throw std::runtime_error("ZqEmbedding: lift failed (modulus image not a root)");
        gen_image_ = z;
        powers_.resize(s.n);
        ZqElem acc = b.one();
        for (int j = 0; j < s.n; ++j) {
            powers_[j] = acc;
            if (j + 1 < s.n) acc = b.mul(acc, z);
        }
    }

    ZqElem apply(const ZqElem& a) const {
        ZqElem r{};
        for (int j = 0; j < sub->n; ++j)
            if (a.c[j] != 0) r = big->add(r, big->scalar_mul(a.c[j], powers_[j]));
        return r;
    }

    const ZqElem& generator_image() const { return gen_image_; }

  private:
    ZqElem gen_image_;
    std::vector<ZqElem> powers_;

    ZqElem eval_int(const std::vector<int64_t>& poly, const ZqElem& z) const {
        ZqElem acc{};
        for (size_t i = poly.size(); i-- > 0;) {
            acc = big->mul(acc, z);
            acc = big->add(acc, big->from_int(poly[i]));
        }
        return acc;
    }
};

// ---------------------------------------------------------------------------
// Trace-dual basis of Z_{p^ell} over Z_p, living inside a degree-a ring.

struct DualBasis {
    std::vector<ZqElem> c;
    std::vector<ZqElem> c_star;
};

// Tr over Gal(Q_{p^ell}/Q_p) of a sigma^ell-fixed element, as a scalar.
inline int64_t subring_trace_scalar(const ZqRing& R, const ZqElem& y, int ell) {
    ZqElem s{};
    for (int i = 0; i < ell; ++i) s = R.add(s, R.frobenius(y, i));
    return R.scalar_of(s);
}

inline DualBasis dual_basis(const ZqRing& R, const std::vector<ZqElem>& c) {
    int ell = static_cast<int>(c.size());
    if (ell < 1 || R.n % ell != 0) throw std::invalid_argument("dual_basis: bad basis size");
    for (const auto& cj : c)
        if (!R.equal(R.frobenius(cj, ell), cj))
            throw std::invalid_argument("dual_basis: element not in the degree-ell subring");
    // Gram matrix of traces, inverted mod p^M by Gauss elimination on unit pivots
    std::vector<std::vector<int64_t>> g(ell, std::vector<int64_t>(2 * ell, 0));
    for (int i = 0; i < ell; ++i) {
        for (int j = 0; j < ell; ++j) g[i][j] = subring_trace_scalar(R, R.mul(c[i], c[j]), ell);
        g[i][ell + i] = 1;
    }
    for (int col = 0; col < ell; ++col) {
        int piv = -1;
        for (int r = col; r < ell; ++r)
            if (g[r][col] % R.p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::invalid_argument("dual_basis: not a basis (Gram singular mod p)");
        std::swap(g[col], g[piv]);
        int64_t pi = inv_mod(g[col][col], R.pM);
        for (int j = 0; j < 2 * ell; ++j) g[col][j] = mul_mod(g[col][j], pi, R.pM);
        for (int r = 0; r < ell; ++r) {
            if (r == col || g[r][col] == 0) continue;
            int64_t f = g[r][col];
            for (int j = 0; j < 2 * ell; ++j)
                g[r][j] = mod_reduce(g[r][j] - mul_mod(f, g[col][j], R.pM), R.pM);
        }
    }
    DualBasis out;
    out.c = c;
    out.c_star.resize(ell);
    for (int i = 0; i < ell; ++i) {
        ZqElem s{};
        for (int t = 0; t < ell; ++t) s = R.add(s, R.scalar_mul(g[i][ell + t], c[t]));
        out.c_star[i] = s;
    }
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) {
            int64_t tr = subring_trace_scalar(R, R.mul(out.c_star[i], c[j]), ell);
            if (tr != (i == j ? 1 % R.pM : 0))
                throw std::runtime_error("dual_basis: Gram identity failed");
        }
    return out;
}

}  // namespace aswt
