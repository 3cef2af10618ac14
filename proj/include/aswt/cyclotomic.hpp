#pragma once

// Arithmetic in Z[zeta_{p^m}] in the power basis of Z[x]/(Phi_{p^m}).  The
// coefficient backend is pluggable: exact big integers for the brute-force
// L-function route, exact rationals while assembling exp of a power series,
// and truncated Z_q coordinates for tensor points of the weight space.
// pi = zeta - 1 is the uniformizer; val_pi counts exact divisions by it.

#include <map>
#include <sstream>

#include "unramified.hpp"

namespace aswt {

struct IntCoeffs {
    using Elem = BigInt;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(int64_t v) const { return v; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }
    bool div_exact(Elem& a, int64_t d) const {
        if (a % d != 0) return false;
        a /= d;
        return true;
    }
};

struct RatCoeffs {
    using Elem = BigRat;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(int64_t v) const { return v; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }
    bool div_exact(Elem& a, int64_t d) const {
        a /= d;
        return true;
    }
};

template <class B>
class CycRing {
  public:
    using Coef = typename B::Elem;
    using Elem = std::vector<Coef>;

    const B* base;
    int64_t p;
    int m;        // conductor exponent, m >= 1
    int64_t pm;   // p^m
    int phi;      // phi(p^m)

    CycRing(const B& base_, int64_t p_, int m_) : base(&base_), p(p_), m(m_) {
        if (!is_prime(p)) throw std::invalid_argument("CycRing: p must be prime");
        if (m < 1) throw std::invalid_argument("CycRing: conductor exponent must be >= 1");
        pm = ipow(p, m);
        int64_t pm1 = pm / p;
        phi = static_cast<int>(pm - pm1);
        build_reduction(pm1);
        build_pi_inverse();
    }

    Elem zero() const { return Elem(phi, base->zero()); }

    Elem one() const {
        Elem e = zero();
        e[0] = base->one();
        return e;
    }

    Elem from_int(int64_t v) const {
        Elem e = zero();
        e[0] = base->from_int(v);
        return e;
    }

    Elem from_coef(const Coef& v) const {
        Elem e = zero();
        e[0] = v;
        return e;
    }

    // zeta^j reduced to the power basis (j taken mod p^m)
    Elem zeta_pow(int64_t j) const {
        j = mod_reduce(j, pm);
        Elem e = zero();
        if (j < phi) {
            e[j] = base->one();
        } else {
            const auto& row = red_[j - phi];
            for (int i = 0; i < phi; ++i)
                if (row[i] != 0) e[i] = base->from_int(row[i]);
        }
        return e;
    }

    bool is_zero(const Elem& a) const {
        for (const auto& c : a)
            if (!base->is_zero(c)) return false;
        return true;
    }

    bool equal(const Elem& a, const Elem& b) const {
        for (int i = 0; i < phi; ++i)
            if (!base->equal(a[i], b[i])) return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = zero();
        for (int i = 0; i < phi; ++i) r[i] = base->add(a[i], b[i]);
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const {
        Elem r = zero();
        for (int i = 0; i < phi; ++i) r[i] = base->sub(a[i], b[i]);
        return r;
    }

    Elem neg(const Elem& a) const {
        Elem r = zero();
        for (int i = 0; i < phi; ++i) r[i] = base->neg(a[i]);
        return r;
    }

    Elem scale(const Coef& s, const Elem& a) const {
        Elem r = zero();
        for (int i = 0; i < phi; ++i) r[i] = base->mul(s, a[i]);
        return r;
    }

    void add_scaled(Elem& acc, const Coef& s, const Elem& a) const {
        for (int i = 0; i < phi; ++i) acc[i] = base->add(acc[i], base->mul(s, a[i]));
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<Coef> buf(2 * phi - 1, base->zero());
        for (int i = 0; i < phi; ++i) {
            if (base->is_zero(a[i])) continue;
            for (int j = 0; j < phi; ++j) buf[i + j] = base->add(buf[i + j], base->mul(a[i], b[j]));
        }
        Elem r = zero();
        for (int i = 0; i < phi; ++i) r[i] = buf[i];
        for (int j = 0; j + phi < static_cast<int>(buf.size()); ++j) {
            const Coef& t = buf[phi + j];
            if (base->is_zero(t)) continue;
            const auto& row = red_[j];
            for (int i = 0; i < phi; ++i)
                if (row[i] != 0) r[i] = base->add(r[i], base->mul(base->from_int(row[i]), t));
        }
        return r;
    }

    Elem pow(Elem a, uint64_t e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // Galois action zeta -> zeta^u for u prime to p.
    Elem conjugate(const Elem& a, int64_t u) const {
        if (mod_reduce(u, p) == 0) throw std::invalid_argument("conjugate: u must be prime to p");
        Elem r = zero();
        for (int i = 0; i < phi; ++i) {
            if (base->is_zero(a[i])) continue;
            add_scaled(r, a[i], zeta_pow(mul_mod(i, mod_reduce(u, pm), pm)));
        }
        return r;
    }

    Coef eval_at_one(const Elem& a) const {
        Coef s = base->zero();
        for (const auto& c : a) s = base->add(s, c);
        return s;
    }

    // Exact division by pi = zeta - 1.  Returns false when not divisible.
    // Uses v = (x-1) q(x) + v(1) and p/(zeta-1) = -h(zeta) where
    // Phi(x) - p = (x-1) h(x).
    bool divide_by_pi(const Elem& v, Elem& out) const {
        Elem q = zero();
        Coef carry = base->zero();
        for (int i = phi - 1; i >= 1; --i) {
            carry = base->add(carry, v[i]);
            q[i - 1] = carry;
        }
        Coef rem = base->add(carry, v[0]);  // v(1)
        if (!base->div_exact(rem, p)) return false;
        out = q;
        for (int i = 0; i < phi; ++i)
            if (pi_inv_[i] != 0)
                out[i] = base->add(out[i], base->mul(rem, base->from_int(pi_inv_[i])));
        return true;
    }

    // pi-adic valuation by repeated exact division; nullopt encodes +infinity
    // (the zero element).  cap bounds the search for truncated backends.
    std::optional<long> val_pi(Elem v, long cap = 1 << 20) const {
        if (is_zero(v)) return std::nullopt;
        long val = 0;
        Elem next;
        while (val < cap && divide_by_pi(v, next)) {
            ++val;
            v = next;
            if (is_zero(v)) return std::nullopt;
        }
        return val;
    }

    std::string to_string(const Elem& a) const {
        std::ostringstream os;
        for (int i = 0; i < phi; ++i) {
            if (i) os << ' ';
            os << a[i];
        }
        return os.str();
    }

  private:
    std::vector<std::vector<int64_t>> red_;   // x^{phi+j} mod Phi, integer rows
    std::vector<int64_t> pi_inv_;             // coefficients of p/(zeta-1)

    void build_reduction(int64_t pm1) {
        // Phi = sum_{i<p} x^{i*pm1}; x^phi = -sum_{i<p-1} x^{i*pm1}
        int64_t emax = std::max<int64_t>(2 * phi - 2, pm - 1);
        int rows = static_cast<int>(emax - phi + 1);
        red_.assign(std::max(rows, 0), std::vector<int64_t>(phi, 0));
        if (rows <= 0) return;
        for (int64_t i = 0; i + 1 < p; ++i) red_[0][i * pm1] = -1;
        for (int j = 1; j < rows; ++j) {
            const auto& prev = red_[j - 1];
            auto& cur = red_[j];
            int64_t top = prev[phi - 1];
            for (int i = phi - 1; i >= 1; --i) cur[i] = prev[i - 1];
            cur[0] = 0;
            if (top != 0)
                for (int i = 0; i < phi; ++i) cur[i] += top * red_[0][i];
        }
    }

    void build_pi_inverse() {
        // synthetic division of Phi(x) - p by (x - 1), then negate
        std::vector<int64_t> full(phi + 1, 0);
        int64_t pm1 = pm / p;
        for (int64_t i = 0; i < p; ++i) full[i * pm1] += 1;
        full[0] -= p;
        std::vector<int64_t> h(phi, 0);
        int64_t carry = 0;
        for (int i = phi; i >= 1; --i) {
            carry += full[i];
            h[i - 1] = carry;
        }
        // remainder carry + full[0] must be Phi(1) - p = 0
        if (carry + full[0] != 0) throw std::logic_error("CycRing: pi inverse remainder nonzero");
        pi_inv_.assign(phi, 0);
        for (int i = 0; i < phi; ++i) pi_inv_[i] = -h[i];
    }
};

using CycInt = CycRing<IntCoeffs>;
using CycRat = CycRing<RatCoeffs>;

// val_q of a cyclotomic integer: val_pi scaled by 1/(a p^{m-1}(p-1)), so that
// val_q(q) = 1 for q = p^a.  nullopt stands for +infinity.
template <class B>
std::optional<BigRat> val_q_of(const CycRing<B>& R, const typename CycRing<B>::Elem& v, int a,
                               long cap = 1 << 20) {
    auto vp = R.val_pi(v, cap);
    if (!vp) return std::nullopt;
    BigRat scale(1, BigInt(a) * (R.pm / R.p) * (R.p - 1));
    return BigRat(*vp) * scale;
}

// Reduce an integer-coefficient element mod p^k.
inline CycInt::Elem cyc_mod(const CycInt& R, const CycInt::Elem& v, const BigInt& modulus) {
    CycInt::Elem r = v;
    for (auto& c : r) {
        c %= modulus;
        if (c < 0) c += modulus;
    }
    return r;
}

// Embed Z[zeta_{p^m}] into Z[zeta_{p^mt}] for mt >= m: zeta_{p^m} = zeta^{p^{mt-m}}.
inline CycInt::Elem cyc_embed(const CycInt& from, const CycInt& to, const CycInt::Elem& v) {
    if (from.p != to.p || to.m < from.m) throw std::invalid_argument("cyc_embed: bad conductors");
    int64_t step = to.pm / from.pm;
    CycInt::Elem r = to.zero();
    for (int i = 0; i < from.phi; ++i) {
        if (v[i] == 0) continue;
        to.add_scaled(r, v[i], to.zeta_pow(i * step));
    }
    return r;
}

}  // namespace aswt
