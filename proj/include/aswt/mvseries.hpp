#pragma once

// Truncated multivariate power series in pi_1..pi_ell over a coefficient ring,
// cut off by total degree.  Storage is dense and graded: one contiguous block
// of coefficients per homogeneous degree, monomials ordered lexicographically
// by exponent vector inside each block.  Multiplication walks precomputed
// product-index tables, so the hot loop is pure coefficient arithmetic.
//
// Also here: the Artin-Hasse exponential table (exact rationals, reduced mod
// p^M), series reversion, and substitution of a univariate scalar series for
// every variable (the T <-> pi change of coordinates).

#include <unordered_map>

#include "cyclotomic.hpp"

namespace aswt {

inline constexpr int kMaxVars = 4;

using Expo = std::array<int, kMaxVars>;

class MonomialBasis {
  public:
    int nvars;
    int maxdeg;

    MonomialBasis(int nvars_, int maxdeg_) : nvars(nvars_), maxdeg(maxdeg_) {
        if (nvars < 1 || nvars > kMaxVars) throw std::invalid_argument("MonomialBasis: nvars");
        if (maxdeg < 0) throw std::invalid_argument("MonomialBasis: maxdeg");
        expv_.resize(maxdeg + 1);
        offset_.resize(maxdeg + 2, 0);
        Expo e{};
        for (int d = 0; d <= maxdeg; ++d) {
            gen_degree(d, 0, d, e);
            offset_[d + 1] = offset_[d] + static_cast<int>(expv_[d].size());
        }
        for (int d = 0; d <= maxdeg; ++d)
            for (size_t i = 0; i < expv_[d].size(); ++i)
                rank_[pack(expv_[d][i])] = offset_[d] + static_cast<int>(i);
        build_products();
    }

    int total() const { return offset_[maxdeg + 1]; }
    int block_size(int d) const { return static_cast<int>(expv_[d].size()); }
    int block_offset(int d) const { return offset_[d]; }
    const Expo& exponent(int d, int i) const { return expv_[d][i]; }

    const Expo& exponent_global(int g) const {
        int d = degree_of_index(g);
        return expv_[d][g - offset_[d]];
    }

    int degree_of_index(int g) const {
        int d = 0;
        while (offset_[d + 1] <= g) ++d;
        return d;
    }

    // global index of an exponent vector, or -1 when the degree exceeds maxdeg
    int index_of(const Expo& e) const {
        int d = 0;
        for (int j = 0; j < nvars; ++j) d += e[j];
        if (d > maxdeg) return -1;
        auto it = rank_.find(pack(e));
        if (it == rank_.end()) throw std::logic_error("MonomialBasis: unranked exponent");
        return it->second;
    }

    // product table for blocks (d1, d2): flat [i1 * n2 + i2] -> global index
    const std::vector<int32_t>& product_table(int d1, int d2) const {
        return prod_[d1][d2];
    }

  private:
    std::vector<std::vector<Expo>> expv_;
    std::vector<int> offset_;
    std::unordered_map<uint64_t, int> rank_;
    std::vector<std::vector<std::vector<int32_t>>> prod_;

    uint64_t pack(const Expo& e) const {
        uint64_t k = 0;
        for (int j = 0; j < nvars; ++j) k = k * (maxdeg + 1) + e[j];
        return k;
    }

    void gen_degree(int d, int var, int rem, Expo& e) {
        if (var == nvars - 1) {
            e[var] = rem;
            expv_[d].push_back(e);
            e[var] = 0;
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            e[var] = v;
            gen_degree(d, var + 1, rem - v, e);
        }
        e[var] = 0;
    }

    void build_products() {
        prod_.resize(maxdeg + 1);
        for (int d1 = 0; d1 <= maxdeg; ++d1) {
            prod_[d1].resize(maxdeg - d1 + 1);
            for (int d2 = 0; d2 + d1 <= maxdeg; ++d2) {
                auto& tab = prod_[d1][d2];
                tab.resize(expv_[d1].size() * expv_[d2].size());
                for (size_t i1 = 0; i1 < expv_[d1].size(); ++i1)
                    for (size_t i2 = 0; i2 < expv_[d2].size(); ++i2) {
                        Expo e{};
                        for (int j = 0; j < nvars; ++j) e[j] = expv_[d1][i1][j] + expv_[d2][i2][j];
                        tab[i1 * expv_[d2].size() + i2] = index_of(e);
                    }
            }
        }
    }
};

// Rational coefficients with a distinguished prime, for the truncation-free
// determinant oracle.
struct RatRing {
    using Elem = BigRat;
    int64_t p;

    explicit RatRing(int64_t p_) : p(p_) {}

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(int64_t v) const { return v; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    void mul_acc(Elem& acc, const Elem& a, const Elem& b) const { acc += a * b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }

    bool nonzero_mod_p(const Elem& a) const {
        auto v = val_p(a, p);
        if (!v) return false;
        if (*v < 0) throw std::domain_error("RatRing: element is not p-integral");
        return *v == 0;
    }
};

template <class R>
struct SeriesSpace {
    const R* ring;
    MonomialBasis basis;

    SeriesSpace(const R& r, int nvars, int maxdeg) : ring(&r), basis(nvars, maxdeg) {}
};

template <class R>
class MvSeries {
  public:
    using Elem = typename R::Elem;

    const SeriesSpace<R>* sp = nullptr;
    std::vector<Elem> a;

    MvSeries() = default;

    explicit MvSeries(const SeriesSpace<R>& space)
        : sp(&space), a(space.basis.total(), space.ring->zero()) {}

    static MvSeries constant(const SeriesSpace<R>& space, const Elem& v) {
        MvSeries s(space);
        s.a[0] = v;
        return s;
    }

    static MvSeries one(const SeriesSpace<R>& space) {
        return constant(space, space.ring->one());
    }

    static MvSeries monomial(const SeriesSpace<R>& space, const Expo& e, const Elem& v) {
        MvSeries s(space);
        int idx = space.basis.index_of(e);
        if (idx < 0) throw std::invalid_argument("MvSeries::monomial: degree beyond truncation");
        s.a[idx] = v;
        return s;
    }

    const R& ring() const { return *sp->ring; }
    const MonomialBasis& basis() const { return sp->basis; }

    bool is_zero() const {
        for (const auto& c : a)
            if (!ring().is_zero(c)) return false;
        return true;
    }

    bool operator==(const MvSeries& o) const {
        if (sp != o.sp) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!ring().equal(a[i], o.a[i])) return false;
        return true;
    }

    MvSeries& operator+=(const MvSeries& o) {
        check_space(o);
        for (size_t i = 0; i < a.size(); ++i) a[i] = ring().add(a[i], o.a[i]);
        return *this;
    }

    MvSeries& operator-=(const MvSeries& o) {
        check_space(o);
        for (size_t i = 0; i < a.size(); ++i) a[i] = ring().sub(a[i], o.a[i]);
        return *this;
    }

    friend MvSeries operator+(MvSeries x, const MvSeries& y) { return x += y; }
    friend MvSeries operator-(MvSeries x, const MvSeries& y) { return x -= y; }

    MvSeries operator-() const {
        MvSeries r(*sp);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = ring().neg(a[i]);
        return r;
    }

    MvSeries scaled(const Elem& s) const {
        MvSeries r(*sp);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = ring().mul(s, a[i]);
        return r;
    }

    // this += s * monomial(shift) * src, dropping anything past the truncation
    void add_shifted(const MvSeries& src, const Expo& shift, const Elem& s) {
        check_space(src);
        const auto& B = basis();
        int sd = 0;
        for (int j = 0; j < B.nvars; ++j) sd += shift[j];
        for (int d = 0; d + sd <= B.maxdeg; ++d) {
            int off = B.block_offset(d);
            for (int i = 0; i < B.block_size(d); ++i) {
                if (ring().is_zero(src.a[off + i])) continue;
                Expo e = B.exponent(d, i);
                for (int j = 0; j < B.nvars; ++j) e[j] += shift[j];
                int idx = B.index_of(e);
                ring().mul_acc(a[idx], s, src.a[off + i]);
            }
        }
    }

    friend MvSeries operator*(const MvSeries& x, const MvSeries& y) {
        x.check_space(y);
        const auto& B = x.basis();
        const R& ring = x.ring();
        MvSeries r(*x.sp);
        for (int d1 = 0; d1 <= B.maxdeg; ++d1) {
            int off1 = B.block_offset(d1), n1 = B.block_size(d1);
            for (int i1 = 0; i1 < n1; ++i1) {
                const Elem& xa = x.a[off1 + i1];
                if (ring.is_zero(xa)) continue;
                for (int d2 = 0; d1 + d2 <= B.maxdeg; ++d2) {
                    int off2 = B.block_offset(d2), n2 = B.block_size(d2);
                    const auto& tab = B.product_table(d1, d2);
                    const int32_t* row = tab.data() + static_cast<size_t>(i1) * n2;
                    for (int i2 = 0; i2 < n2; ++i2)
                        ring.mul_acc(r.a[row[i2]], xa, y.a[off2 + i2]);
                }
            }
        }
        return r;
    }

    MvSeries pow(uint64_t e) const {
        MvSeries r = one(*sp), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    template <class Fn>
    MvSeries mapped(Fn&& fn) const {
        MvSeries r(*sp);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = fn(a[i]);
        return r;
    }

    // Least total degree carrying a coefficient that is nonzero mod p;
    // nullopt encodes +infinity (the series vanishes mod p).
    std::optional<int> val_I() const {
        const auto& B = basis();
        for (int d = 0; d <= B.maxdeg; ++d) {
            int off = B.block_offset(d);
            for (int i = 0; i < B.block_size(d); ++i)
                if (ring().nonzero_mod_p(a[off + i])) return d;
        }
        return std::nullopt;
    }

    const Elem& coef(const Expo& e) const {
        int idx = basis().index_of(e);
        if (idx < 0) throw std::invalid_argument("coef: degree beyond truncation");
        return a[idx];
    }

  private:
    void check_space(const MvSeries& o) const {
        if (sp != o.sp) throw std::invalid_argument("MvSeries: mixed series spaces");
    }
};

// ---------------------------------------------------------------------------
// Artin-Hasse exponential E(pi) = exp(sum_i pi^{p^i} / p^i).  Matching E' =
// E * (d/dpi sum pi^{p^i}/p^i) coefficientwise gives the clean recurrence
// n E_n = sum_{p^i <= n} E_{n - p^i} over exact rationals.  Every coefficient
// must come out p-integral; that is asserted, never assumed.

struct ArtinHasseTable {
    int64_t p;
    int maxdeg;
    std::vector<BigRat> exact;     // E_0 .. E_maxdeg
    std::vector<int64_t> reduced;  // the same mod p^M
    int64_t pM;
};

inline ArtinHasseTable artin_hasse(int64_t p, int maxdeg, int M) {
    if (maxdeg < 0 || M < 1) throw std::invalid_argument("artin_hasse: bad arguments");
    ArtinHasseTable t;
    t.p = p;
    t.maxdeg = maxdeg;
    t.pM = ipow(p, M);
    t.exact.resize(maxdeg + 1);
    t.exact[0] = 1;
    for (int n = 1; n <= maxdeg; ++n) {
        BigRat s = 0;
        for (int64_t q = 1; q <= n; q *= p) s += t.exact[n - q];
        t.exact[n] = s / n;
        if (rat_den(t.exact[n]) % p == 0)
            throw std::logic_error("artin_hasse: coefficient fails p-integrality");
    }
    t.reduced.resize(maxdeg + 1);
    for (int n = 0; n <= maxdeg; ++n) t.reduced[n] = rat_mod(t.exact[n], p, t.pM);
    return t;
}

// Compositional inverse of T = E(pi) - 1: the scalar series rev with
// E(rev(T)) - 1 = T through degree maxdeg, coefficients mod p^M.  Solved
// triangularly; no divisions occur because the linear coefficient is 1.
inline std::vector<int64_t> artin_hasse_reversion(const ArtinHasseTable& t) {
    int D = t.maxdeg;
    int64_t pM = t.pM;
    std::vector<int64_t> rev(D + 1, 0);
    if (D >= 1) rev[1] = 1;
    for (int n = 2; n <= D; ++n) {
        // coefficient of T^n in (E - 1)(rev) with rev_n still zero
        std::vector<int64_t> pw(rev.begin(), rev.end());  // rev^1
        std::vector<int64_t> acc(D + 1, 0);
        for (int i = 0; i <= n; ++i) acc[i] = pw[i];  // k = 1 term has E_1 = 1
        for (int k = 2; k <= n; ++k) {
            // pw <- pw * rev, truncated at degree n
            std::vector<int64_t> nx(n + 1, 0);
            for (int i = 1; i <= n; ++i) {
                if (pw[i] == 0) continue;
                for (int j = 1; i + j <= n; ++j)
                    nx[i + j] = (nx[i + j] + mul_mod(pw[i], rev[j], pM)) % pM;
            }
            pw.assign(D + 1, 0);
            for (int i = 0; i <= n; ++i) pw[i] = nx[i];
            if (t.reduced[k] != 0)
                for (int i = 0; i <= n; ++i)
                    acc[i] = (acc[i] + mul_mod(t.reduced[k], pw[i], pM)) % pM;
        }
        rev[n] = mod_reduce(-acc[n], pM);
    }
    return rev;
}

// ---------------------------------------------------------------------------
// Substitute a univariate scalar series u (with u_0 = 0) for every variable:
// s(x_1, .., x_ell) -> s(u(x_1), .., u(x_ell)), truncated at the space degree.

template <class R>
MvSeries<R> substitute_each_var(const MvSeries<R>& s, const std::vector<int64_t>& u) {
    const auto& B = s.basis();
    const R& ring = s.ring();
    int D = B.maxdeg;
    if (static_cast<int>(u.size()) < D + 1) throw std::invalid_argument("substitute: short series");
    if (u[0] != 0) throw std::invalid_argument("substitute: series must have zero constant term");
    // powers u^r as univariate scalar tables, r = 0..D
    std::vector<std::vector<int64_t>> upow(D + 1, std::vector<int64_t>(D + 1, 0));
    upow[0][0] = 1;
    for (int r = 1; r <= D; ++r)
        for (int i = r - 1; i <= D; ++i) {
            if (upow[r - 1][i] == 0) continue;
            for (int j = 1; i + j <= D; ++j)
                upow[r][i + j] =
                    ring.scalar_add(upow[r][i + j], ring.scalar_mulmod(upow[r - 1][i], u[j]));
        }
    MvSeries<R> out(*s.sp);
    std::vector<std::pair<Expo, int64_t>> terms, next;
    for (int g = 0; g < B.total(); ++g) {
        if (ring.is_zero(s.a[g])) continue;
        const Expo& e = B.exponent_global(g);
        terms.clear();
        terms.push_back({Expo{}, 1});
        for (int j = 0; j < B.nvars; ++j) {
            next.clear();
            for (const auto& [pe, pc] : terms) {
                int used = 0;
                for (int v = 0; v < B.nvars; ++v) used += pe[v];
                for (int i = e[j]; used + i <= D; ++i) {
                    int64_t c = upow[e[j]][i];
                    if (c == 0) continue;
                    Expo ne = pe;
                    ne[j] += i;
                    next.push_back({ne, ring.scalar_mulmod(pc, c)});
                }
            }
            terms.swap(next);
        }
        for (const auto& [te, tc] : terms) {
            int idx = B.index_of(te);
            out.a[idx] = ring.add(out.a[idx], ring.scalar_mul(tc, s.a[g]));
        }
    }
    return out;
}

// pi -> T coordinates: substitute pi_j = rev(T_j).
template <class R>
MvSeries<R> to_T_coordinates(const MvSeries<R>& s, const ArtinHasseTable& ah) {
    return substitute_each_var(s, artin_hasse_reversion(ah));
}

// T -> pi coordinates: substitute T_j = E(pi_j) - 1.
template <class R>
MvSeries<R> to_pi_coordinates(const MvSeries<R>& s, const ArtinHasseTable& ah) {
    std::vector<int64_t> f(ah.reduced);
    f[0] = 0;
    return substitute_each_var(s, f);
}

// ---------------------------------------------------------------------------
// Specialization at a tuple of points in a target ring.  The series must have
// Z_p-rational coefficients (scalars); each t_j must have positive valuation,
// which the caller guarantees.  The dropped tail consists of terms of total
// degree > maxdeg, so its valuation is at least (maxdeg+1) * min val(t_j).

template <class R, class TR>
typename TR::Elem specialize_scalar(const MvSeries<R>& s, const TR& target,
                                    const std::vector<typename TR::Elem>& t) {
    const auto& B = s.basis();
    if (static_cast<int>(t.size()) != B.nvars)
        throw std::invalid_argument("specialize: wrong point arity");
    int D = B.maxdeg;
    std::vector<std::vector<typename TR::Elem>> tpow(B.nvars);
    for (int j = 0; j < B.nvars; ++j) {
        tpow[j].resize(D + 1, target.one());
        for (int r = 1; r <= D; ++r) tpow[j][r] = target.mul(tpow[j][r - 1], t[j]);
    }
    typename TR::Elem acc = target.zero();
    for (int g = 0; g < B.total(); ++g) {
        if (s.ring().is_zero(s.a[g])) continue;
        int64_t c = s.ring().scalar_of(s.a[g]);
        const Expo& e = B.exponent_global(g);
        typename TR::Elem term = target.from_int(c);
        for (int j = 0; j < B.nvars; ++j)
            if (e[j] > 0) term = target.mul(term, tpow[j][e[j]]);
        acc = target.add(acc, term);
    }
    return acc;
}

}  // namespace aswt
