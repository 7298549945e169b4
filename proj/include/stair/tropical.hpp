#pragma once

#include "polygon.hpp"

#include <cmath>
#include <complex>
#include <functional>

namespace stair {

// per-edge multisets of contact orders, indexed like edges(Q)
using Tangencies = std::vector<std::vector<Int>>;

struct BalanceReport {
    bool balanced = false;       // residual zero and gcd 1
    bool residual_zero = false;  // the vector condition alone
    Vec residual{0, 0};
    Int gcd = 0;
    std::vector<Int> totals;
};

inline BalanceReport check_balanced(const Polygon& Q, const Tangencies& t) {
    if (t.size() != Q.size())
        throw error("InvalidArgument", "need one tangency list per edge (" + std::to_string(Q.size()) + ")", "tangencies");
    auto es = edges(Q);
    BalanceReport rep;
    for (std::size_t i = 0; i < t.size(); ++i) {
        Int d = 0;
        for (auto& k : t[i]) {
            if (k <= 0)
                throw error("InvalidArgument", "contact orders must be positive", "tangencies[" + std::to_string(i) + "]");
            d += k;
        }
        rep.totals.push_back(d);
        rep.residual = rep.residual + d * es[i].inward_normal;
        rep.gcd = gcd_pair(rep.gcd, d);
    }
    rep.residual_zero = rep.residual == Vec{0, 0};
    rep.balanced = rep.residual_zero && rep.gcd == 1;
    return rep;
}

namespace detail {
inline void partitions(const Int& n, const Int& maxpart, std::vector<Int>& cur, std::vector<std::vector<Int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (Int k = std::min(n, maxpart); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

// all balanced assignments with sum of totals <= bound; multisets listed in decreasing order
inline std::vector<Tangencies> enumerate_degrees(const Polygon& Q, const Int& total_bound) {
    std::vector<Tangencies> out;
    if (total_bound < 1) return out;
    auto es = edges(Q);
    std::size_t n = es.size();
    std::vector<Int> d(n, 0);
    std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int left) {
        if (i == n) {
            Vec res{0, 0};
            Int g = 0;
            for (std::size_t j = 0; j < n; ++j) {
                res = res + d[j] * es[j].inward_normal;
                g = gcd_pair(g, d[j]);
            }
            if (res != Vec{0, 0} || g != 1) return;
            // expand every total into its partitions
            std::vector<Tangencies> acc{Tangencies{}};
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<std::vector<Int>> parts;
                std::vector<Int> cur;
                detail::partitions(d[j], d[j], cur, parts);
                std::vector<Tangencies> nxt;
                for (auto& a : acc)
                    for (auto& p : parts) {
                        auto b = a;
                        b.push_back(p);
                        nxt.push_back(std::move(b));
                    }
                acc = std::move(nxt);
            }
            for (auto& a : acc) out.push_back(std::move(a));
            return;
        }
        for (Int k = 0; k <= left; ++k) {
            d[i] = k;
            rec(i + 1, left - k);
        }
        d[i] = 0;
    };
    rec(0, total_bound);
    return out;
}

struct ChopResult {
    Polygon polygon;
    Tangencies tangencies;   // indexed like edges(polygon)
    std::size_t slant_edge;
    Int p, q;
};

// Replace Delzant vertex i by the segment joining the midpoints of its two edges.
inline ChopResult chop_vertex(const Polygon& Q, std::size_t i, const Int& k) {
    std::size_t n = Q.size();
    if (i >= n) throw error("InvalidIndex", "vertex index out of range");
    if (k <= 0) throw error("InvalidArgument", "k must be positive");
    if (!classify_vertex(Q, i).is_delzant) throw error("NotDelzant", "vertex " + std::to_string(i) + " is not Delzant");
    Rat l_next = primitive_dir(Q.next(i) - Q[i]).second;
    Rat l_prev = primitive_dir(Q.prev(i) - Q[i]).second;
    if (!is_integer(l_next / Rat(k)) || !is_integer(l_prev / Rat(k)))
        throw error("BadRatio", "adjacent edge lengths are not multiples of k");
    Int p = num(l_next / Rat(k)), q = num(l_prev / Rat(k));
    if (gcd_pair(p, q) != 1) throw error("BadRatio", "adjacent edge lengths are not of the form (kp, kq) with p, q coprime");
    Pt a = Rat(1, 2) * (Q[i] + Q.next(i));
    Pt b = Rat(1, 2) * (Q.prev(i) + Q[i]);
    // new order: a, v_{i+1}, ..., v_{i-1}, b  (slant edge b -> a closes it)
    std::vector<Pt> pts{a};
    for (std::size_t s = 1; s < n; ++s) pts.push_back(Q[i + s]);
    pts.push_back(b);
    ChopResult res;
    res.polygon = make_polygon(std::move(pts));
    std::size_t m = res.polygon.size();
    res.tangencies.assign(m, {});
    auto es = edges(res.polygon);
    // edges 1 .. m-3 are the untouched edges of Q; edge 0 and m-2 are the halves
    for (std::size_t j = 1; j + 2 < m; ++j) {
        if (!is_integer(es[j].affine_length))
            throw error("BadRatio", "template needs integral edge lengths away from the chopped vertex");
        res.tangencies[j] = {num(es[j].affine_length)};
    }
    res.slant_edge = m - 1;
    res.tangencies[m - 1] = {k};
    res.p = p;
    res.q = q;
    // the totals need not be coprime (k = 2 on {(0,0),(4,0),(0,2)} gives (2,2)),
    // only the vector condition is guaranteed
    if (!check_balanced(res.polygon, res.tangencies).residual_zero) throw error("InternalInconsistency", "chopped template does not balance");
    return res;
}

// ---- numeric sanity check of the monomial parametrization -------------------

struct Puncture {
    std::complex<double> w;
    Vec v;
};

struct VanishingFit {
    std::complex<double> w;
    double order_x, order_y;  // fitted exponents of each coordinate at w
    double contact_order;     // fitted multiple of the primitive direction of v
};

struct VanishingReport {
    std::vector<VanishingFit> fits;
    double slope_at_infinity_x, slope_at_infinity_y;
};

// f(z) = prod (z - w_i)^{v_i}, coordinatewise.  Orders fitted by least squares
// on log|f| against log|z - w| at geometrically shrinking radii, starting
// well inside the nearest-neighbour distance so the fit is not biased.
inline VanishingReport numeric_vanishing_orders(const std::vector<Puncture>& ps, int samples) {
    if (samples < 2) throw error("NumericFailure", "need at least two samples");
    if (ps.empty()) throw error("NumericFailure", "no punctures");
    Vec total{0, 0};
    for (auto& p : ps) total = total + p.v;
    if (total != Vec{0, 0}) throw error("InvalidArgument", "exponent vectors must sum to zero");
    double sep = 1.0;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) sep = std::min(sep, std::abs(ps[i].w - ps[j].w));
    if (!(sep > 1e-9)) throw error("NumericFailure", "punctures coincide; no usable sample radius");
    auto eval = [&](std::complex<double> z) {
        double lx = 0, ly = 0;
        for (auto& p : ps) {
            double l = std::log(std::abs(z - p.w));
            lx += p.v.x.convert_to<double>() * l;
            ly += p.v.y.convert_to<double>() * l;
        }
        return std::pair{lx, ly};
    };
    auto fit = [&](auto radius_of, std::complex<double> center, bool at_infinity) {
        double sx = 0, sy = 0, st = 0, stt = 0, stx = 0, sty = 0;
        const std::complex<double> dir = std::polar(1.0, 0.7);
        for (int s = 0; s < samples; ++s) {
            double rad = radius_of(s);
            std::complex<double> z = at_infinity ? rad * dir : center + rad * dir;
            auto [lx, ly] = eval(z);
            double t = std::log(rad);
            sx += lx; sy += ly; st += t; stt += t * t; stx += t * lx; sty += t * ly;
        }
        double N = samples, denom = N * stt - st * st;
        if (std::abs(denom) < 1e-15) throw error("NumericFailure", "degenerate sample radii");
        return std::pair{(N * stx - st * sx) / denom, (N * sty - st * sy) / denom};
    };
    VanishingReport rep;
    for (auto& p : ps) {
        double r0 = 1e-4 * sep;
        auto [ox, oy] = fit([&](int s) { return r0 * std::pow(0.5, s); }, p.w, false);
        if (!std::isfinite(ox) || !std::isfinite(oy)) throw error("NumericFailure", "non-finite fit");
        auto [dirv, k] = primitive(p.v);
        double nx = dirv.x.convert_to<double>(), ny = dirv.y.convert_to<double>();
        double c = (ox * nx + oy * ny) / (nx * nx + ny * ny);
        rep.fits.push_back({p.w, ox, oy, c});
    }
    // far enough that the other punctures bias the slope by under 1e-4
    double far = 1e4;
    for (auto& p : ps) far = std::max(far, 1e4 * std::abs(p.w));
    auto [ix, iy] = fit([&](int s) { return far * std::pow(2.0, s); }, 0.0, true);
    rep.slope_at_infinity_x = ix;
    rep.slope_at_infinity_y = iy;
    return rep;
}

}  // namespace stair
