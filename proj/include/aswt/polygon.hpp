#pragma once

// Newton polygons: lower convex hulls of (index, valuation) points with exact
// rational heights.  Slopes come out as (slope, multiplicity) pairs in
// nondecreasing order.  Points of infinite height (zero coefficients) are
// skipped; a trailing run of them truncates the polygon and is reported.

#include "cyclotomic.hpp"

namespace aswt {

struct NewtonPolygon {
    std::vector<std::pair<long, BigRat>> vertices;   // strictly increasing x
    std::vector<std::pair<BigRat, long>> slopes;     // nondecreasing, with multiplicity
    long truncated_at = -1;                          // first index of a trailing infinite run

    // flat slope list, one entry per unit of multiplicity
    std::vector<BigRat> slope_list() const {
        std::vector<BigRat> out;
        for (const auto& [s, m] : slopes)
            for (long i = 0; i < m; ++i) out.push_back(s);
        return out;
    }
};

inline NewtonPolygon lower_hull(const std::vector<std::pair<long, std::optional<BigRat>>>& pts) {
    if (pts.empty()) throw std::invalid_argument("lower_hull: empty input");
    std::vector<std::pair<long, BigRat>> fin;
    long last_finite = -1;
    for (const auto& [x, h] : pts)
        if (h) {
            fin.push_back({x, *h});
            last_finite = std::max(last_finite, x);
        }
    std::sort(fin.begin(), fin.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (fin.empty() || fin.front().first != 0)
        throw std::invalid_argument("lower_hull: needs a finite point at index 0");
    NewtonPolygon np;
    long maxx = 0;
    for (const auto& [x, h] : pts) maxx = std::max(maxx, x);
    if (last_finite < maxx) np.truncated_at = last_finite + 1;
    // monotone chain, popping collinear interior points
    std::vector<std::pair<long, BigRat>> hull;
    for (const auto& pt : fin) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // keep b only if (a, b, pt) turns strictly left (convex from below)
            BigRat cross = BigRat(b.first - a.first) * (pt.second - a.second) -
                           BigRat(pt.first - a.first) * (b.second - a.second);
            if (cross > 0) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    np.vertices = hull;
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        long dx = hull[i + 1].first - hull[i].first;
        BigRat sl = (hull[i + 1].second - hull[i].second) / dx;
        if (!np.slopes.empty() && sl < np.slopes.back().first)
            throw std::logic_error("lower_hull: slopes not nondecreasing");
        np.slopes.push_back({sl, dx});
    }
    return np;
}

// hull of (k, val_q(c_k)) for cyclotomic coefficients; a is the residue degree
// of q = p^a entering the valuation normalization
inline NewtonPolygon q_adic_polygon(const CycInt& R, const std::vector<CycInt::Elem>& coeffs,
                                    int a) {
    std::vector<std::pair<long, std::optional<BigRat>>> pts;
    for (size_t k = 0; k < coeffs.size(); ++k)
        pts.push_back({static_cast<long>(k), val_q_of(R, coeffs[k], a)});
    return lower_hull(pts);
}

// ---------------------------------------------------------------------------
// Slope-pattern check: with the slope-zero factor reinserted, the dp^{m-1}
// slopes split into p^{m-1} consecutive blocks of size d; block i must start
// at exactly (i-1)/p^{m-1} and stay strictly below i/p^{m-1}.

struct SlopePatternReport {
    bool pass = true;
    int block = -1;
    BigRat offending_slope;
    std::string message;
};

inline SlopePatternReport slope_pattern_check(const NewtonPolygon& poly, int64_t p, int d, int m,
                                              bool reinsert_zero = true) {
    SlopePatternReport rep;
    std::vector<BigRat> slopes = poly.slope_list();
    if (reinsert_zero) slopes.insert(slopes.begin(), BigRat(0));
    std::sort(slopes.begin(), slopes.end());
    int64_t pm1 = ipow(p, m - 1);
    if (slopes.size() != static_cast<size_t>(d) * pm1) {
        rep.pass = false;
        rep.message = "slope count is not d*p^{m-1}";
        return rep;
    }
    for (int64_t i = 1; i <= pm1; ++i) {
        BigRat lo(i - 1, pm1), hi(i, pm1);
        for (int j = 1; j <= d; ++j) {
            const BigRat& s = slopes[(i - 1) * d + (j - 1)];
            bool ok = (j == 1) ? (s == lo) : (s > lo && s < hi);
            if (!ok) {
                rep.pass = false;
                rep.block = static_cast<int>(i);
                rep.offending_slope = s;
                rep.message = "slope outside its block window";
                return rep;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Hodge-bound comparison for coefficient valuations of the characteristic
// series: val_k >= k(k-1)/(2 d p^{m-1}), with equality forced at k = nd and
// k = nd + 1.  The same shape serves the I-adic variant via an explicit
// lower-bound sequence.

struct HodgeReport {
    bool pass = true;
    long violation_at = -1;
    std::string message;
    std::vector<long> touch_points;
};

inline HodgeReport hodge_comparison_q(const std::vector<std::optional<BigRat>>& vals, int d,
                                      int64_t pm1) {
    HodgeReport rep;
    for (size_t k = 0; k < vals.size(); ++k) {
        BigRat bound(BigInt(k) * (BigInt(k) - 1), BigInt(2) * d * pm1);
        bool touch = (k % d == 0) || (k % d == 1);
        if (!vals[k]) {
            if (touch) {
                rep.pass = false;
                rep.violation_at = static_cast<long>(k);
                rep.message = "coefficient vanishes at a forced touch point";
                return rep;
            }
            continue;
        }
        if (*vals[k] < bound) {
            rep.pass = false;
            rep.violation_at = static_cast<long>(k);
            rep.message = "valuation below the lower-bound polygon";
            return rep;
        }
        if (touch) {
            if (*vals[k] != bound) {
                rep.pass = false;
                rep.violation_at = static_cast<long>(k);
                rep.message = "no equality at a forced touch point";
                return rep;
            }
            rep.touch_points.push_back(static_cast<long>(k));
        }
    }
    return rep;
}

inline HodgeReport hodge_comparison_I(const std::vector<std::optional<int>>& vals,
                                      const std::vector<BigRat>& lambda, int d) {
    HodgeReport rep;
    for (size_t k = 0; k < vals.size() && k < lambda.size(); ++k) {
        BigInt num = rat_num(lambda[k]), den = rat_den(lambda[k]);
        BigInt ceil_l = (num + den - 1) / den;
        bool touch = k > 0 && ((k % d == 0) || (k % d == 1));
        if (!vals[k]) {
            if (touch) {
                rep.pass = false;
                rep.violation_at = static_cast<long>(k);
                rep.message = "series vanishes mod p at a forced touch point";
                return rep;
            }
            continue;
        }
        if (BigInt(*vals[k]) < ceil_l) {
            rep.pass = false;
            rep.violation_at = static_cast<long>(k);
            rep.message = "I-adic valuation below ceil(lambda_k)";
            return rep;
        }
        if (touch) {
            if (BigRat(*vals[k]) != lambda[k]) {
                rep.pass = false;
                rep.violation_at = static_cast<long>(k);
                rep.message = "no I-adic equality at a forced touch point";
                return rep;
            }
            rep.touch_points.push_back(static_cast<long>(k));
        }
    }
    return rep;
}

}  // namespace aswt
