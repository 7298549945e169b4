#pragma once

#include "exact.hpp"

#include <variant>

namespace stair {

// (m; b1, ..., bg).  m = 1 with a single entry t encodes a smooth branch with
// contact order t to the last exceptional curve (what is left after the
// minimal resolution).
struct PuiseuxChar {
    Int m;
    std::vector<Int> betas;
    bool operator==(const PuiseuxChar&) const = default;
    bool tangential() const { return m == 1; }
};

struct Smooth {
    bool operator==(const Smooth&) const = default;
};

using PuiseuxPair = std::pair<Int, Int>;  // (n_i, d_i)

inline std::string to_string(const PuiseuxChar& c) {
    std::string s = "(" + to_string(c.m) + ";";
    for (std::size_t i = 0; i < c.betas.size(); ++i) s += (i ? "," : "") + to_string(c.betas[i]);
    return s + ")";
}

inline void validate_char(const PuiseuxChar& c) {
    if (c.m < 1) throw error("InvalidChar", "multiplicity must be positive");
    if (c.m == 1) {
        if (c.betas.size() != 1 || c.betas[0] < 1)
            throw error("InvalidChar", "multiplicity-one data must be a single contact order (1;t)");
        return;
    }
    if (c.betas.empty()) throw error("InvalidChar", "characteristic needs at least one exponent");
    if (c.betas[0] <= c.m) throw error("InvalidChar", "need b1 > m");
    Int e = c.m;
    for (std::size_t i = 0; i < c.betas.size(); ++i) {
        if (i > 0 && c.betas[i] <= c.betas[i - 1]) throw error("InvalidChar", "exponents must increase");
        if (c.betas[i] % e == 0) throw error("InvalidChar", "exponent " + to_string(c.betas[i]) + " divisible by the current gcd");
        e = gcd_pair(e, c.betas[i]);
    }
    if (e != 1) throw error("InvalidChar", "gcd chain does not reach 1");
}

inline PuiseuxChar make_char(Int m, std::vector<Int> betas) {
    PuiseuxChar c{std::move(m), std::move(betas)};
    validate_char(c);
    return c;
}

// m = d1...dg, b_i = n_i d_{i+1}...d_g
inline PuiseuxChar pairs_to_char(const std::vector<PuiseuxPair>& pairs) {
    if (pairs.empty()) throw error("InvalidPairs", "no Puiseux pairs");
    Int m = 1;
    for (auto& [n, d] : pairs) {
        if (d < 2 || n < 1) throw error("InvalidPairs", "pairs need n >= 1 and d >= 2");
        if (gcd_pair(n, d) != 1) throw error("InvalidPairs", "pair (" + to_string(n) + "," + to_string(d) + ") not coprime");
        m *= d;
    }
    std::vector<Int> betas;
    Int tail = m;
    for (auto& [n, d] : pairs) {
        tail /= d;
        betas.push_back(n * tail);
    }
    PuiseuxChar c{m, betas};
    try {
        validate_char(c);
    } catch (const error& e) {
        throw error("InvalidPairs", std::string("pairs give an invalid characteristic: ") + e.what());
    }
    return c;
}

inline std::vector<PuiseuxPair> char_to_pairs(const PuiseuxChar& c) {
    validate_char(c);
    if (c.tangential()) throw error("InvalidChar", "a smooth branch has no Puiseux pairs");
    std::vector<PuiseuxPair> out;
    Int e_prev = c.m;
    for (auto& b : c.betas) {
        Int e = gcd_pair(e_prev, b);
        out.push_back({b / e, e_prev / e});
        e_prev = e;
    }
    return out;
}

using BlowupResult = std::variant<PuiseuxChar, Smooth>;

inline BlowupResult blowup_char(const PuiseuxChar& c) {
    validate_char(c);
    if (c.tangential()) {
        if (c.betas[0] == 1) return Smooth{};
        return PuiseuxChar{1, {c.betas[0] - 1}};
    }
    const Int& m = c.m;
    const Int& b1 = c.betas[0];
    if (b1 == 2 * m) throw error("InvalidChar", "b1 = 2m cannot occur");
    PuiseuxChar out;
    if (b1 > 2 * m) {
        out.m = m;
        for (auto& b : c.betas) out.betas.push_back(b - m);
    } else {
        Int mp = b1 - m;
        out.m = mp;
        if (m % mp != 0) out.betas.push_back(m);
        for (std::size_t i = 1; i < c.betas.size(); ++i) out.betas.push_back(c.betas[i] - b1 + m);
        if (mp == 1) {
            // smooth branch; it stays tangent to the new exceptional curve to order m
            out.betas = {m};
        }
    }
    validate_char(out);
    return out;
}

struct MinimalResolution {
    std::vector<PuiseuxChar> chars;     // starting char through the final (1;t)
    std::vector<Int> multiplicities;    // multiplicity at each blowup center
};

inline MinimalResolution minimal_resolution(const PuiseuxChar& c) {
    validate_char(c);
    MinimalResolution res;
    res.chars.push_back(c);
    PuiseuxChar cur = c;
    while (!cur.tangential()) {
        res.multiplicities.push_back(cur.m);
        cur = std::get<PuiseuxChar>(blowup_char(cur));
        res.chars.push_back(cur);
    }
    return res;
}

// ---- normal crossing resolution of a (p,q) cusp -----------------------------

struct ResolutionChain {
    std::size_t length = 0;
    std::vector<Vec> rays;                  // in blowup order
    std::vector<Int> self_intersections;    // same order as rays
    std::vector<Int> multiplicity_sequence;
};

// a1 copies of q, a2 copies of r1, ... from p = a1 q + r1, q = a2 r1 + r2, ...
inline std::vector<Int> euclid_multiplicities(const Int& p, const Int& q) {
    std::vector<Int> out;
    Int a = p, b = q;
    while (b != 0) {
        Int k = a / b;
        for (Int j = 0; j < k; ++j) out.push_back(b);
        Int r = a % b;
        a = b;
        b = r;
    }
    return out;
}

inline ResolutionChain ncr_chain(const Int& p, const Int& q) {
    require_coprime_positive(p, q);
    if (p <= q) throw error("InvalidArgument", "ncr_chain needs p > q");
    ResolutionChain ch;
    ch.rays = stern_brocot_path(p, q);
    ch.length = ch.rays.size();
    // angular order of the whole fan, from (1,0) to (0,1)
    std::vector<Vec> fan = ch.rays;
    fan.push_back({1, 0});
    fan.push_back({0, 1});
    std::sort(fan.begin(), fan.end(), [](const Vec& a, const Vec& b) { return det(a, b) > 0; });
    for (auto& v : ch.rays) {
        auto it = std::find(fan.begin(), fan.end(), v);
        const Vec& lo = *(it - 1);
        const Vec& hi = *(it + 1);
        Vec s = lo + hi;
        // s = b v
        Int b = v.x != 0 ? s.x / v.x : s.y / v.y;
        if (Vec{b * v.x, b * v.y} != s) throw error("InternalInconsistency", "fan neighbors do not sum to a multiple");
        ch.self_intersections.push_back(-b);
    }
    ch.multiplicity_sequence = euclid_multiplicities(p, q);
    return ch;
}

// Sum of squared multiplicities subtracted from C^2 by resolving the cusp.
// One Puiseux pair: the normal crossing sequence (sum m^2 = pq).  Two or more:
// the minimal resolution.
inline Int multiplicity_square_sum(const PuiseuxChar& c) {
    validate_char(c);
    if (c.tangential()) return 0;
    Int s = 0;
    if (c.betas.size() == 1) {
        for (auto& m : euclid_multiplicities(c.betas[0], c.m)) s += m * m;
    } else {
        for (auto& m : minimal_resolution(c).multiplicities) s += m * m;
    }
    return s;
}

inline Int self_intersection_drop(const PuiseuxChar& c, const Int& c_squared) {
    return c_squared - multiplicity_square_sum(c);
}

inline Int curve_index(const Int& p, const Int& q, const Int& c1) { return 2 * c1 - 2 * p - 2 * q; }

inline Int double_point_count(const Int& d, const Int& p, const Int& q) {
    if (d <= 0 || p <= 0 || q <= 0) throw error("InvalidArgument", "degree and cusp data must be positive");
    Int v = (d - 1) * (d - 2) / 2 - (p - 1) * (q - 1) / 2;
    if (v < 0) throw error("Inconsistent", "negative double point count: no such curve");
    return v;
}

}  // namespace stair
