#pragma once

#include "exact.hpp"

#include <cmath>

namespace stair {

// (u + v sqrt(D)) / w with w > 0, D > 1 squarefree
struct QuadSurd {
    Int u, v, D, w;

    static QuadSurd make(Int u, Int v, Int D, Int w) {
        if (w == 0 || D < 0) throw error("InvalidArgument", "bad surd");
        if (w < 0) { u = -u; v = -v; w = -w; }
        // pull square factors out of D
        for (Int f = 2; f * f <= D; ++f)
            while (D % (f * f) == 0) { D /= f * f; v *= f; }
        if (D == 1 || D == 0) { u += D == 1 ? v : Int(0); v = 0; D = 0; }
        Int g = gcd_pair(gcd_pair(u, v), w);
        if (g > 1) { u /= g; v /= g; w /= g; }
        return {u, v, D, w};
    }

    double to_double() const {
        return (u.convert_to<double>() + v.convert_to<double>() * std::sqrt(D.convert_to<double>())) / w.convert_to<double>();
    }

    // sign of (this - r)
    int compare(const Rat& r) const {
        Rat A = Rat(u) - r * Rat(w);  // compare A + v sqrt(D) with 0
        Rat B = Rat(v);
        if (D == 0 || B == 0) return A > 0 ? 1 : (A < 0 ? -1 : 0);
        int sa = A > 0 ? 1 : (A < 0 ? -1 : 0);
        int sb = B > 0 ? 1 : -1;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        Rat lhs = A * A, rhs = B * B * Rat(D);
        if (lhs > rhs) return sa;
        if (lhs < rhs) return sb;
        return 0;
    }
    bool operator==(const QuadSurd&) const = default;
};

inline std::string to_string(const QuadSurd& s) {
    std::string body;
    std::string rad = s.D == 0 ? "" : "sqrt(" + to_string(s.D) + ")";
    std::string vpart = s.v == 1 ? rad : (s.v == -1 ? "-" + rad : to_string(s.v) + "*" + rad);
    if (s.v == 0) body = to_string(s.u);
    else if (s.u == 0) body = vpart;
    else body = to_string(s.u) + (s.v > 0 ? "+" : "") + vpart;
    if (s.w == 1) return body;
    return "(" + body + ")/" + to_string(s.w);
}

// ---- staircase specifications ----------------------------------------------

struct StaircaseSpec {
    std::string key;    // cli name
    std::string name;   // display name
    Int K;
    int J;
    std::vector<Int> seeds;  // g_0 .. g_{2J-1}
    QuadSurd acc;
};

inline const std::vector<StaircaseSpec>& builtin_specs() {
    static const std::vector<StaircaseSpec> specs = {
        {"cp2", "CP2(3)", 7, 2, {2, 1, 1, 2}, QuadSurd::make(7, 3, 5, 2)},
        {"cp1xcp1", "CP1(2)xCP1(2)", 6, 2, {1, 1, 1, 3}, QuadSurd::make(3, 2, 2, 1)},
        {"cp2#1", "CP2(3)#CP2bar(1)", 6, 3, {1, 1, 1, 1, 2, 4}, QuadSurd::make(3, 2, 2, 1)},
        {"cp2#2", "CP2(3)#2CP2bar(1)", 5, 3, {1, 1, 1, 1, 2, 3}, QuadSurd::make(5, 1, 21, 2)},
        {"cp2#3", "CP2(3)#3CP2bar(1)", 4, 2, {1, 1, 1, 2}, QuadSurd::make(2, 1, 3, 1)},
        {"cp2#4", "CP2(3)#4CP2bar(1)", 3, 2, {1, 2, 1, 3}, QuadSurd::make(3, 1, 5, 2)},
    };
    return specs;
}

inline const StaircaseSpec& find_spec(const std::string& key) {
    for (auto& s : builtin_specs())
        if (s.key == key) return s;
    if (key == "f1") return builtin_specs()[2];
    throw error("UnknownTarget", "unknown staircase target '" + key + "'", "target");
}

inline std::vector<Int> sequence(const StaircaseSpec& s, std::size_t n) {
    std::vector<Int> g(s.seeds);
    std::size_t twoJ = 2 * static_cast<std::size_t>(s.J);
    while (g.size() <= n) {
        std::size_t k = g.size() - twoJ;
        g.push_back(s.K * g[k + s.J] - g[k]);
    }
    g.resize(n + 1);
    return g;
}

enum class CornerKind { inner, outer };

struct CornerPoint {
    CornerKind kind;
    std::size_t k;
    Rat x, y;
    Int p, q;  // outer: x = p/q in lowest terms
};

inline CornerPoint outer_corner(const std::vector<Int>& g, int J, std::size_t k) {
    CornerPoint c;
    c.kind = CornerKind::outer;
    c.k = k;
    c.x = Rat(g[k + J], g[k]);
    c.y = Rat(g[k + J], g[k] + g[k + J]);
    c.p = num(c.x);
    c.q = den(c.x);
    return c;
}

inline CornerPoint inner_corner(const std::vector<Int>& g, int J, std::size_t k) {
    CornerPoint c;
    c.kind = CornerKind::inner;
    c.k = k;
    c.x = Rat(g[k + J] * (g[k + 1] + g[k + 1 + J]), g[k + 1] * (g[k] + g[k + J]));
    c.y = Rat(g[k + J], g[k] + g[k + J]);
    c.p = num(c.x);
    c.q = den(c.x);
    return c;
}

namespace detail {
template <class F>
std::vector<CornerPoint> corners_from(const StaircaseSpec& s, std::size_t count, const Rat& threshold, bool strict, F make,
                                      std::size_t extra) {
    std::vector<CornerPoint> out;
    std::size_t n = 4 * s.J + count + 8;
    auto g = sequence(s, n);
    for (std::size_t k = 0; out.size() < count; ++k) {
        if (k + s.J + extra >= g.size()) g = sequence(s, 2 * g.size());
        auto c = make(g, s.J, k);
        if (strict ? c.x > threshold : c.x >= threshold) out.push_back(c);
    }
    return out;
}
}  // namespace detail

inline std::vector<CornerPoint> outer_corners(const StaircaseSpec& s, std::size_t count, bool include_x_equal_one = false) {
    return detail::corners_from(s, count, Rat(1), !include_x_equal_one, outer_corner, 0);
}

inline std::vector<CornerPoint> inner_corners(const StaircaseSpec& s, std::size_t count) {
    return detail::corners_from(s, count, Rat(1), true, inner_corner, 1);
}

// ---- twists -----------------------------------------------------------------

// (p,q) -> (Kp - q, p) with no domain restriction beyond positivity
inline std::pair<Int, Int> orevkov_step(const Int& K, const Int& p, const Int& q) {
    if (p <= 0 || q <= 0) throw error("InvalidArgument", "twist needs positive p, q");
    return {K * p - q, p};
}

inline std::pair<Int, Int> twist_phi(const Int& K, const Int& p, const Int& q) {
    require_coprime_positive(p, q);
    if (p <= q) throw error("RequiresPGreater", "twist_phi needs p > q");
    return orevkov_step(K, p, q);
}

inline std::pair<Int, Int> twist_psi(const Int& K, const Int& p, const Int& q) {
    require_coprime_positive(p, q);
    if (p <= K * q) throw error("RequiresSlopeAboveK", "twist_psi needs p/q > K");
    Int s = p - K * q;
    return {q + K * s, s};
}

// slope map induced by twist_psi: R(x) = (1 + K(x-K)) / (x-K)
inline Rat twist_psi_slope(const Int& K, const Rat& x) {
    if (x <= Rat(K)) throw error("RequiresSlopeAboveK", "slope must exceed K");
    return (1 + Rat(K) * (x - Rat(K))) / (x - Rat(K));
}

// ---- ghost stairs -----------------------------------------------------------

inline Int fibonacci(std::size_t n) {
    Int a = 0, b = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int c = a + b;
        a = b;
        b = c;
    }
    return a;
}

struct GhostMember {
    Int p, q, d;
};

inline std::vector<GhostMember> ghost_family(std::size_t count) {
    std::vector<GhostMember> out;
    for (std::size_t k = 1; k <= count; ++k) out.push_back({fibonacci(4 * k + 2), fibonacci(4 * k - 2), fibonacci(4 * k)});
    return out;
}

// ---- the embedding function on the staircase range --------------------------

inline Rat evaluate_staircase(const StaircaseSpec& s, const Rat& x) {
    if (x < 1) throw error("OutOfDomain", "x must be at least 1", "x");
    if (s.acc.compare(x) <= 0) throw error("BeyondAccumulation", "x = " + to_string(x) + " is not below the accumulation point", "x");
    auto g = sequence(s, 4 * s.J + 8);
    Rat best = 0;
    for (std::size_t k = 0;; ++k) {
        if (k + s.J >= g.size()) g = sequence(s, 2 * g.size());
        auto c = outer_corner(g, s.J, k);
        if (c.x < 1) continue;
        Rat v = c.x <= x ? c.y : c.y * x / c.x;
        best = std::max(best, v);
        // corner x-values increase, and beyond x the contributions x/(x_k+1) only shrink
        if (c.x > x) break;
    }
    return best;
}

inline Rat folding_value(const Rat& x, bool ball_normalized = false) {
    if (x <= 0) throw error("OutOfDomain", "x must be positive", "x");
    Rat v = x / (x + 1);
    return ball_normalized ? 3 * v : v;
}

}  // namespace stair
