#pragma once

// The operator side of the computation: coefficients e_n(pi) of the twisted
// Artin-Hasse product, the matrix (e_{mp-n}) and its Frobenius twists, the
// characteristic power series of the a-fold twisted product via a
// division-free Berkowitz sweep, the polynomial S(T) governing leading terms,
// the exponents lambda_k, and the mod-p minor determinants rewritten in the
// single variable Tbar = sum cbar_j pi_j.

#include "mvseries.hpp"

namespace aswt {

struct TowerSpec {
    int64_t p = 0;
    int a = 0;
    int ell = 0;
    int d = 0;
    // coefficients abar_0 .. abar_d of the defining polynomial, each a
    // coordinate vector over F_q (length a, entries mod p); abar_d must be 1
    std::vector<std::vector<int64_t>> fbar;
    // optional residue basis of F_{p^ell} inside F_q; empty selects the
    // Teichmuller lifts of the power basis of F_{p^ell}
    std::vector<std::vector<int64_t>> basis;
};

inline std::vector<std::string> validate(const TowerSpec& s) {
    std::vector<std::string> bad;
    if (!is_prime(s.p)) bad.push_back("p must be prime");
    if (s.a < 1 || s.a > kZqMaxDeg) bad.push_back("a must be in [1, 16]");
    if (s.ell < 1) bad.push_back("ell must be positive");
    else if (s.a >= 1 && s.a % s.ell != 0) bad.push_back("ell must divide a");
    if (s.d < 1) bad.push_back("d must be positive");
    else if (s.p >= 2 && s.d % s.p == 0) bad.push_back("d must be prime to p");
    if (static_cast<int>(s.fbar.size()) != s.d + 1)
        bad.push_back("fbar must list d+1 coefficients");
    else {
        for (const auto& c : s.fbar)
            if (static_cast<int>(c.size()) > s.a) bad.push_back("fbar coefficient too long");
        const auto& lead = s.fbar.back();
        bool monic = !lead.empty() && lead[0] == 1;
        for (size_t i = 1; i < lead.size(); ++i) monic = monic && lead[i] == 0;
        if (!monic) bad.push_back("fbar must be monic");
    }
    if (!s.basis.empty() && static_cast<int>(s.basis.size()) != s.ell)
        bad.push_back("basis must have ell entries");
    return bad;
}

// Rings and lifted data for one tower at one precision.
class TowerContext {
  public:
    TowerSpec spec;
    int M;
    ZqRing zq;                 // Z_q / p^M, q = p^a
    std::vector<ZqElem> f;     // Teichmuller lifts of the fbar coefficients
    std::vector<ZqElem> c;     // Z_p-basis of Z_{p^ell}, sigma^ell-fixed
    DualBasis dual;

    TowerContext(const TowerSpec& s, int precision)
        : spec(s), M(precision), zq(s.p, s.a, precision) {
        auto bad = validate(s);
        if (!bad.empty()) throw std::invalid_argument("TowerSpec: " + bad.front());
        f.resize(s.d + 1);
        for (int i = 0; i <= s.d; ++i) {
            ZqElem res{};
            for (size_t j = 0; j < s.fbar[i].size(); ++j)
                res.c[j] = mod_reduce(s.fbar[i][j], s.p);
            f[i] = zq.teichmuller(res);
        }
        std::vector<std::vector<int64_t>> residues = s.basis;
        if (residues.empty()) {
            residues.resize(s.ell);
            if (s.ell == 1) {
                residues[0] = {1};
            } else {
                ZqRing sub(s.p, s.ell, 1);
                ZqRing res(s.p, s.a, 1);
                ZqEmbedding emb(sub, res);
                ZqElem g = emb.generator_image();
                ZqElem acc = res.one();
                for (int j = 0; j < s.ell; ++j) {
                    residues[j].assign(acc.c.begin(), acc.c.begin() + s.a);
                    if (j + 1 < s.ell) acc = res.mul(acc, g);
                }
            }
        }
        c.resize(s.ell);
        for (int j = 0; j < s.ell; ++j) {
            ZqElem res{};
            for (size_t t = 0; t < residues[j].size(); ++t)
                res.c[t] = mod_reduce(residues[j][t], s.p);
            c[j] = zq.teichmuller(res);
            if (!zq.equal(zq.frobenius(c[j], s.ell), c[j]))
                throw std::invalid_argument("TowerSpec: basis element not in Z_{p^ell}");
        }
        dual = dual_basis(zq, c);  // also certifies that c is a Z_p-basis
    }
};

// lambda_k = a k (k-1)(p-1) / (2d)
inline BigRat lambda_k(const TowerSpec& s, long k) {
    if (k < 0) throw std::invalid_argument("lambda_k: k must be nonnegative");
    return BigRat(BigInt(s.a) * k * (k - 1) * (s.p - 1), BigInt(2) * s.d);
}

inline BigInt ceil_rat(const BigRat& r) {
    BigInt num = rat_num(r), den = rat_den(r);
    if (num >= 0) return (num + den - 1) / den;
    return num / den;
}

// lambda_k / ell at k = nd or nd+1 is an integer; asserted here.
inline BigInt lambda_over_ell(const TowerSpec& s, long k) {
    BigRat v = lambda_k(s, k) / s.ell;
    if (rat_den(v) != 1) throw std::logic_error("lambda_k/ell is not an integer at k=nd, nd+1");
    return rat_num(v);
}

// D large enough to examine the leading term at index kmax, one full
// homogeneous degree to spare.
inline int min_degree_for(const TowerSpec& s, long kmax) {
    return static_cast<int>(ceil_rat(lambda_k(s, kmax))) + s.ell + 1;
}

// Matrix truncation policy for the characteristic series.
inline int policy_K(const TowerSpec& s, int D, int kmax) {
    int64_t num = static_cast<int64_t>(s.d) * D;
    int64_t den = static_cast<int64_t>(s.a) * (s.p - 1);
    return static_cast<int>((num + den - 1) / den) + kmax + 1;
}

// ---------------------------------------------------------------------------
// Expansion coefficients e_n: prod_{j<=ell} prod_{i<=d} E(c_j a_i pi_j x^i)
// as a power series in x.  Multiplying one factor in shifts by x^{ir} and by
// the monomial pi_j^r, scaled by AH_r (c_j a_i)^r, so the whole build is
// shift-accumulate.  e_n lands in I^{ceil(n/d)} exactly; that is asserted.

using ZqSeries = MvSeries<ZqRing>;

namespace detail {

inline std::vector<ZqSeries> expansion_core(const TowerContext& ctx, const ArtinHasseTable& ah,
                                            const SeriesSpace<ZqRing>& sp, int nmax) {
    const ZqRing& R = ctx.zq;
    const int D = sp.basis.maxdeg;
    if (ah.maxdeg < D || ah.pM % R.pM != 0)
        throw std::invalid_argument("expansion: Artin-Hasse table too short or too coarse");
    const int ell = ctx.spec.ell, d = ctx.spec.d;
    std::vector<ZqSeries> e(nmax + 1, ZqSeries(sp));
    e[0] = ZqSeries::one(sp);
    std::vector<ZqSeries> nxt(nmax + 1, ZqSeries(sp));
    for (int j = 0; j < ell; ++j)
        for (int i = 0; i <= d; ++i) {
            if (R.is_zero(ctx.f[i])) continue;
            ZqElem g = R.mul(ctx.c[j], ctx.f[i]);
            // gpow[r] = AH_r * g^r
            int rmax = i == 0 ? D : std::min<int>(D, nmax / i);
            std::vector<ZqElem> gpow(rmax + 1);
            gpow[0] = R.one();
            for (int r = 1; r <= rmax; ++r) gpow[r] = R.mul(gpow[r - 1], g);
            for (int r = 0; r <= rmax; ++r)
                gpow[r] = R.scalar_mul(ah.reduced[r], gpow[r]);
            for (auto& s : nxt) s = ZqSeries(sp);
            for (int n = 0; n <= nmax; ++n) {
                for (int r = 0; r <= rmax && i * r <= n && r <= D; ++r) {
                    const ZqSeries& src = e[n - i * r];
                    if (R.is_zero(gpow[r])) continue;
                    Expo shift{};
                    shift[j] = r;
                    nxt[n].add_shifted(src, shift, gpow[r]);
                }
            }
            e.swap(nxt);
        }
    return e;
}

}  // namespace detail

// Public operation: refuses when the truncation degree cannot represent the
// forced leading term of e_nmax.
inline std::vector<ZqSeries> expansion_coefficients(const TowerContext& ctx,
                                                    const ArtinHasseTable& ah,
                                                    const SeriesSpace<ZqRing>& sp, int nmax) {
    int D = sp.basis.maxdeg;
    int need = (nmax + ctx.spec.d - 1) / ctx.spec.d;
    if (need > D)
        throw std::invalid_argument("expansion_coefficients: D too small, need D >= " +
                                    std::to_string(need));
    auto e = detail::expansion_core(ctx, ah, sp, nmax);
    // Lemma-level integrality: every monomial of e_n below degree ceil(n/d)
    // vanishes to full precision.
    const auto& B = sp.basis;
    for (int n = 0; n <= nmax; ++n) {
        int bound = std::min((n + ctx.spec.d - 1) / ctx.spec.d, D + 1);
        for (int deg = 0; deg < bound; ++deg) {
            int off = B.block_offset(deg);
            for (int i = 0; i < B.block_size(deg); ++i)
                if (!ctx.zq.is_zero(e[n].a[off + i]))
                    throw std::logic_error("expansion_coefficients: e_n escapes I^{ceil(n/d)}");
        }
    }
    return e;
}

// Internal variant used by the matrix pipeline: indices whose forced
// valuation exceeds D are exactly zero after truncation, so they are filled
// with zero series rather than refused.
inline std::vector<ZqSeries> expansion_coefficients_extended(const TowerContext& ctx,
                                                             const ArtinHasseTable& ah,
                                                             const SeriesSpace<ZqRing>& sp,
                                                             int nmax) {
    int D = sp.basis.maxdeg;
    int reachable = std::min(nmax, ctx.spec.d * D);
    auto e = detail::expansion_core(ctx, ah, sp, reachable);
    e.resize(nmax + 1, ZqSeries(sp));
    return e;
}

// ---------------------------------------------------------------------------
// Coefficient recurrence: n e_n = sum_{i=1}^{d} sum_{r>=0} i e_{n-ip^r}
// a_i^{p^r} (sum_j (c_j pi_j)^{p^r}), an exact identity of truncated series.

struct RecurrenceReport {
    bool pass = true;
    int first_fail = -1;
    std::string witness;
};

inline RecurrenceReport verify_recurrence(const TowerContext& ctx,
                                          const std::vector<ZqSeries>& e) {
    RecurrenceReport rep;
    const ZqRing& R = ctx.zq;
    const auto& sp = *e[0].sp;
    const int D = sp.basis.maxdeg;
    for (size_t n = 0; n < e.size(); ++n) {
        ZqSeries lhs =
            e[n].mapped([&](const ZqElem& x) { return R.scalar_mul(static_cast<int64_t>(n), x); });
        ZqSeries rhs(sp);
        for (int i = 1; i <= ctx.spec.d; ++i) {
            for (int64_t pr = 1; static_cast<int64_t>(i) * pr <= static_cast<int64_t>(n);
                 pr *= ctx.spec.p) {
                if (pr > D) break;  // the pi^{p^r} factor escapes the truncation
                ZqElem apow = R.pow(ctx.f[i], static_cast<uint64_t>(pr));
                for (int j = 0; j < ctx.spec.ell; ++j) {
                    ZqElem coef =
                        R.scalar_mul(i, R.mul(apow, R.pow(ctx.c[j], static_cast<uint64_t>(pr))));
                    Expo shift{};
                    shift[j] = static_cast<int>(pr);
                    rhs.add_shifted(e[n - i * pr], shift, coef);
                }
            }
        }
        if (!(lhs == rhs)) {
            rep.pass = false;
            rep.first_fail = static_cast<int>(n);
            ZqSeries diff = lhs - rhs;
            for (int g = 0; g < sp.basis.total(); ++g)
                if (!R.is_zero(diff.a[g])) {
                    const Expo& ex = sp.basis.exponent_global(g);
                    std::ostringstream os;
                    os << "monomial";
                    for (int v = 0; v < sp.basis.nvars; ++v) os << ' ' << ex[v];
                    rep.witness = os.str();
                    break;
                }
            return rep;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The Dwork matrix and its characteristic series.

struct SeriesMat {
    int K = 0;
    std::vector<ZqSeries> e;  // row-major K*K

    ZqSeries& at(int m, int n) { return e[static_cast<size_t>(m) * K + n]; }
    const ZqSeries& at(int m, int n) const { return e[static_cast<size_t>(m) * K + n]; }
};

// entry (m, n) = sigma^twist(e_{mp-n}); zero when mp < n
inline SeriesMat build_matrix(const TowerContext& ctx, const std::vector<ZqSeries>& elist, int K,
                              int twist) {
    if (static_cast<int64_t>(elist.size()) <= static_cast<int64_t>(K - 1) * ctx.spec.p)
        throw std::invalid_argument("build_matrix: e-list too short for K");
    const ZqRing& R = ctx.zq;
    const auto& sp = *elist[0].sp;
    SeriesMat N;
    N.K = K;
    N.e.assign(static_cast<size_t>(K) * K, ZqSeries(sp));
    int tw = ((twist % ctx.spec.a) + ctx.spec.a) % ctx.spec.a;
    for (int m = 0; m < K; ++m)
        for (int n = 0; n < K; ++n) {
            int64_t idx = static_cast<int64_t>(m) * ctx.spec.p - n;
            if (idx < 0) continue;
            N.at(m, n) =
                tw == 0 ? elist[idx]
                        : elist[idx].mapped([&](const ZqElem& x) { return R.frobenius(x, tw); });
        }
    // twisted incremental bound, entrywise
    for (int m = 0; m < K; ++m)
        for (int n = 0; n < K; ++n) {
            int64_t num = static_cast<int64_t>(m) * ctx.spec.p - n;
            int64_t bound = num <= 0 ? 0 : (num + ctx.spec.d - 1) / ctx.spec.d;
            auto v = N.at(m, n).val_I();
            if (v && *v < bound) throw std::logic_error("build_matrix: entry violates val bound");
        }
    return N;
}

inline SeriesMat mat_mul(const SeriesMat& A, const SeriesMat& B) {
    if (A.K != B.K) throw std::invalid_argument("mat_mul: size mismatch");
    const auto& sp = *A.e[0].sp;
    SeriesMat C;
    C.K = A.K;
    C.e.assign(A.e.size(), ZqSeries(sp));
    parallel_for(A.K, [&](int64_t m) {
        for (int t = 0; t < A.K; ++t) {
            const ZqSeries& a = A.at(static_cast<int>(m), t);
            if (a.is_zero()) continue;
            for (int n = 0; n < A.K; ++n) {
                const ZqSeries& b = B.at(t, n);
                if (b.is_zero()) continue;
                C.at(static_cast<int>(m), n) += a * b;
            }
        }
    });
    return C;
}

// Division-free characteristic series prefix: coefficients c_0..c_kmax of
// det(1 - s A), by the Berkowitz recurrence on leading principal blocks.
// c^{(r)}_k = c^{(r-1)}_k - a_rr c^{(r-1)}_{k-1}
//            - sum_j (Row A^j Col) c^{(r-1)}_{k-2-j}.
inline std::vector<ZqSeries> char_series_prefix(const SeriesMat& A, int kmax) {
    const auto& sp = *A.e[0].sp;
    std::vector<ZqSeries> c{ZqSeries::one(sp)};
    std::vector<ZqSeries> v, nv, dots;
    for (int r = 1; r <= A.K; ++r) {
        int rm = r - 1;
        int jmax = std::min(rm - 1, kmax - 2);
        dots.clear();
        if (jmax >= 0) {
            v.assign(rm, ZqSeries(sp));
            for (int i = 0; i < rm; ++i) v[i] = A.at(i, rm);
            for (int j = 0; j <= jmax; ++j) {
                if (j > 0) {
                    nv.assign(rm, ZqSeries(sp));
                    parallel_for(rm, [&](int64_t i) {
                        for (int t = 0; t < rm; ++t) {
                            if (A.at(static_cast<int>(i), t).is_zero() || v[t].is_zero()) continue;
                            nv[i] += A.at(static_cast<int>(i), t) * v[t];
                        }
                    });
                    v.swap(nv);
                }
                ZqSeries dot(sp);
                for (int t = 0; t < rm; ++t) {
                    if (A.at(rm, t).is_zero() || v[t].is_zero()) continue;
                    dot += A.at(rm, t) * v[t];
                }
                dots.push_back(std::move(dot));
            }
        }
        int len = std::min(r, kmax);
        std::vector<ZqSeries> nc(len + 1, ZqSeries(sp));
        for (int k = 0; k <= len; ++k) {
            if (k < static_cast<int>(c.size())) nc[k] = c[k];
            if (k >= 1 && k - 1 < static_cast<int>(c.size()) && !A.at(rm, rm).is_zero())
                nc[k] -= A.at(rm, rm) * c[k - 1];
            for (int j = 0; j <= jmax && k - 2 - j >= 0; ++j) {
                if (k - 2 - j >= static_cast<int>(c.size())) continue;
                if (dots[j].is_zero()) continue;
                nc[k] -= dots[j] * c[k - 2 - j];
            }
        }
        c.swap(nc);
    }
    c.resize(kmax + 1, ZqSeries(sp));
    return c;
}

// ---------------------------------------------------------------------------
// Characteristic power series of the tower.

enum class Coord { Pi, T };

struct CharSeries {
    std::vector<ZqSeries> w;  // w_0 .. w_kmax
    Coord coord = Coord::Pi;
    int K = 0;
    int D = 0;
    int kmax = 0;
};

inline CharSeries char_series_with_K(const TowerContext& ctx, const ArtinHasseTable& ah,
                                     const SeriesSpace<ZqRing>& sp, int kmax, int K,
                                     int64_t size_guard = 40'000'000) {
    const TowerSpec& s = ctx.spec;
    int64_t cells = static_cast<int64_t>(K) * K * sp.basis.total();
    if (cells > size_guard)
        throw std::invalid_argument(
            "char_series: K x K truncation exceeds the configured size guard (K = " +
            std::to_string(K) + ")");
    auto elist =
        expansion_coefficients_extended(ctx, ah, sp, static_cast<int>(K - 1) * s.p);
    SeriesMat prod = build_matrix(ctx, elist, K, s.a - 1);
    for (int i = s.a - 2; i >= 0; --i) prod = mat_mul(prod, build_matrix(ctx, elist, K, i));
    CharSeries cs;
    cs.coord = Coord::Pi;
    cs.K = K;
    cs.D = sp.basis.maxdeg;
    cs.kmax = kmax;
    cs.w = char_series_prefix(prod, kmax);
    // structural invariants: w_0 = 1 and Z_p-rationality of every coefficient
    if (!(cs.w[0] == ZqSeries::one(sp))) throw std::logic_error("char_series: w_0 != 1");
    for (const auto& wk : cs.w)
        for (const auto& coef : wk.a)
            if (!ctx.zq.is_scalar(coef))
                throw std::logic_error("char_series: coefficient escapes Z_p");
    return cs;
}

inline CharSeries char_series(const TowerContext& ctx, const ArtinHasseTable& ah,
                              const SeriesSpace<ZqRing>& sp, int kmax,
                              int64_t size_guard = 40'000'000) {
    return char_series_with_K(ctx, ah, sp, kmax, policy_K(ctx.spec, sp.basis.maxdeg, kmax),
                              size_guard);
}

inline CharSeries to_T_coordinates(const CharSeries& cs, const ArtinHasseTable& ah) {
    if (cs.coord == Coord::T) return cs;
    CharSeries out = cs;
    auto rev = artin_hasse_reversion(ah);
    for (auto& wk : out.w) wk = substitute_each_var(wk, rev);
    out.coord = Coord::T;
    return out;
}

// ---------------------------------------------------------------------------
// S(T) = prod_{i=1}^{ell} (sum_j sigma^i(c_j) T_j): homogeneous of degree ell
// with Z_p coefficients (asserted).

inline ZqSeries goth_S(const TowerContext& ctx, const SeriesSpace<ZqRing>& sp) {
    const ZqRing& R = ctx.zq;
    if (sp.basis.nvars != ctx.spec.ell || sp.basis.maxdeg < ctx.spec.ell)
        throw std::invalid_argument("goth_S: space too small");
    ZqSeries acc = ZqSeries::one(sp);
    for (int i = 1; i <= ctx.spec.ell; ++i) {
        ZqSeries factor(sp);
        for (int j = 0; j < ctx.spec.ell; ++j) {
            Expo e{};
            e[j] = 1;
            factor += ZqSeries::monomial(sp, e, R.frobenius(ctx.c[j], i));
        }
        acc = acc * factor;
    }
    for (const auto& coef : acc.a)
        if (!R.is_scalar(coef)) throw std::logic_error("goth_S: coefficient escapes Z_p");
    return acc;
}

// ---------------------------------------------------------------------------
// Leading-term membership: w == u * S^(lambda/ell) mod (p I^lambda +
// I^{lambda+1}) for a single unit scalar u.  All coefficients below degree
// lambda must vanish to full precision; the degree-lambda parts must agree
// mod p up to one scalar, found by division at the reference monomial
// (lambda, 0, .., 0) and verified everywhere else.

struct LeadingTermReport {
    bool pass = true;
    int64_t unit = 0;
    std::string witness;
};

inline LeadingTermReport leading_term_congruence(const TowerContext& ctx, const ZqSeries& w,
                                                 const ZqSeries& spow, long lambda) {
    LeadingTermReport rep;
    const ZqRing& R = ctx.zq;
    const auto& B = w.basis();
    if (lambda > B.maxdeg) throw std::invalid_argument("leading_term: lambda beyond truncation");
    for (int deg = 0; deg < lambda; ++deg) {
        int off = B.block_offset(deg);
        for (int i = 0; i < B.block_size(deg); ++i)
            if (!R.is_zero(w.a[off + i])) {
                rep.pass = false;
                rep.witness = "nonzero coefficient below degree lambda at degree " +
                              std::to_string(deg);
                return rep;
            }
    }
    Expo ref{};
    ref[0] = static_cast<int>(lambda);
    int64_t sref = mod_reduce(R.scalar_of(spow.coef(ref)), ctx.spec.p);
    if (sref == 0) throw std::logic_error("leading_term: reference coefficient of S^e vanishes");
    int64_t wref = mod_reduce(R.scalar_of(w.coef(ref)), ctx.spec.p);
    if (wref == 0) {
        rep.pass = false;
        rep.witness = "degree-lambda part vanishes mod p at the reference monomial";
        return rep;
    }
    int64_t u = mul_mod(wref, inv_mod(sref, ctx.spec.p), ctx.spec.p);
    rep.unit = u;
    int off = B.block_offset(static_cast<int>(lambda));
    for (int i = 0; i < B.block_size(static_cast<int>(lambda)); ++i) {
        int64_t lhs = mod_reduce(R.scalar_of(w.a[off + i]), ctx.spec.p);
        int64_t rhs = mul_mod(u, mod_reduce(R.scalar_of(spow.a[off + i]), ctx.spec.p), ctx.spec.p);
        if (lhs != rhs) {
            rep.pass = false;
            std::ostringstream os;
            os << "degree-lambda mismatch at monomial";
            const Expo& e = B.exponent(static_cast<int>(lambda), i);
            for (int v = 0; v < B.nvars; ++v) os << ' ' << e[v];
            rep.witness = os.str();
            return rep;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Mod-p minor determinants as series in Tbar = sum cbar_j pi_j.  The
// determinant of the top-left k x k block of N, reduced mod p, must lie in
// F_q[[Tbar]]; its coefficient list is what rank-independence compares.

struct MinorTbar {
    bool in_tbar = true;
    std::string witness;
    std::vector<ZqElem> coeffs;  // F_q coefficients of Tbar^t, t = 0..D
};

inline MinorTbar minor_mod_p(const TowerContext& ctx1, const ArtinHasseTable& ah,
                             const SeriesSpace<ZqRing>& sp, int k) {
    if (ctx1.M != 1) throw std::invalid_argument("minor_mod_p: needs a precision-1 context");
    if (k < 1) throw std::invalid_argument("minor_mod_p: k must be >= 1");
    const ZqRing& R = ctx1.zq;
    auto elist = expansion_coefficients_extended(ctx1, ah, sp, (k - 1) * static_cast<int>(ctx1.spec.p));
    SeriesMat N = build_matrix(ctx1, elist, k, 0);
    auto cvec = char_series_prefix(N, k);
    ZqSeries det = cvec[k];
    if (k % 2 == 1) det = -det;
    // rewrite as a series in Tbar
    ZqSeries tbar(sp);
    for (int j = 0; j < ctx1.spec.ell; ++j) {
        Expo e{};
        e[j] = 1;
        tbar += ZqSeries::monomial(sp, e, ctx1.c[j]);
    }
    const auto& B = sp.basis;
    MinorTbar out;
    out.coeffs.assign(B.maxdeg + 1, R.zero());
    ZqSeries tpow = ZqSeries::one(sp);
    for (int t = 0; t <= B.maxdeg; ++t) {
        if (t > 0) tpow = tpow * tbar;
        Expo ref{};
        ref[0] = t;
        ZqElem denom = tpow.coef(ref);  // cbar_1^t, a unit
        ZqElem num = det.coef(ref);
        ZqElem bt = R.mul(num, R.inv(denom));
        out.coeffs[t] = bt;
        // verify the whole homogeneous part matches bt * Tbar^t
        int off = B.block_offset(t);
        for (int i = 0; i < B.block_size(t); ++i) {
            ZqElem want = R.mul(bt, tpow.a[off + i]);
            if (!R.equal(det.a[off + i], want)) {
                out.in_tbar = false;
                std::ostringstream os;
                os << "monomial outside F_q[[Tbar]] at degree " << t << ", exponent";
                const Expo& e = B.exponent(t, i);
                for (int v = 0; v < B.nvars; ++v) os << ' ' << e[v];
                out.witness = os.str();
                return out;
            }
        }
    }
    return out;
}

}  // namespace aswt
