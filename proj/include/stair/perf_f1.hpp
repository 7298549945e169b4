#pragma once

#include "staircase.hpp"

#include <set>

namespace stair {

struct PerfQuadruple {
    Int p, q, d, m;
    int epsilon = 1;
    auto operator<=>(const PerfQuadruple& o) const {
        if (auto c = cmp3(p, o.p); c != 0) return c;
        return cmp3(q, o.q);
    }
    bool operator==(const PerfQuadruple& o) const { return p == o.p && q == o.q && d == o.d && m == o.m && epsilon == o.epsilon; }
};

// t^2 = p^2 - 6pq + q^2 + 8, d = (3p + 3q + eps t)/8, m = (p + q + 3 eps t)/8
inline std::optional<PerfQuadruple> perf_candidate(const Int& p, const Int& q) {
    require_coprime_positive(p, q);
    if (p <= q) throw error("RequiresPGreater", "perf_candidate needs p > q");
    Int t2 = p * p - 6 * p * q + q * q + 8;
    Int t;
    if (!is_square(t2, &t)) return std::nullopt;
    std::vector<PerfQuadruple> found;
    for (int eps : {1, -1}) {
        Int dn = 3 * p + 3 * q + eps * t, mn = p + q + 3 * eps * t;
        if (dn % 8 != 0 || mn % 8 != 0) continue;
        Int d = dn / 8, m = mn / 8;
        if (d < 0 || m < 0) continue;
        if (d * d - m * m != p * q - 1 || 3 * d - m != p + q)
            throw error("InternalInconsistency", "perfect class identities fail");
        found.push_back({p, q, d, m, eps});
    }
    if (found.empty()) return std::nullopt;
    if (found.size() == 2 && !(found[0].d == found[1].d && found[0].m == found[1].m))
        throw error("InternalInconsistency", "both signs give distinct classes for (" + to_string(p) + "," + to_string(q) + ")");
    return found[0];
}

inline Rat f1_shift(const Rat& x) {
    if (x <= 1) throw error("OutOfDomain", "shift needs x > 1", "x");
    return (6 * x - 1) / x;
}
inline std::pair<Int, Int> f1_shift_pq(const Int& p, const Int& q) {
    if (q <= 0 || p <= q) throw error("OutOfDomain", "shift needs p/q > 1");
    return {6 * p - q, p};
}

inline Rat f1_reflect(const Rat& x) {
    if (x <= 6) throw error("OutOfDomain", "reflection needs x > 6", "x");
    return (6 * x - 35) / (x - 6);
}
inline std::pair<Int, Int> f1_reflect_pq(const Int& p, const Int& q) {
    if (q <= 0 || p <= 6 * q) throw error("OutOfDomain", "reflection needs p/q > 6");
    return {6 * p - 35 * q, p - 6 * q};
}

inline const StaircaseSpec& f1_spec() { return find_spec("cp2#1"); }

inline std::vector<PerfQuadruple> monotone_strand(std::size_t count) {
    std::vector<PerfQuadruple> out;
    for (auto& c : outer_corners(f1_spec(), count)) {
        auto pc = perf_candidate(c.p, c.q);
        if (!pc) throw error("InternalInconsistency", "monotone strand member (" + to_string(c.p) + "," + to_string(c.q) + ") fails the test");
        out.push_back(*pc);
    }
    return out;
}

// Integrality scan over q <= depth, q < p <= x_max q, closed under the shift and
// the reflection.  Closure is breadth-first for `depth` rounds so that the
// result stays finite (shift orbits never terminate).
inline std::set<PerfQuadruple> generate_perf_region(const Rat& x_max, std::size_t depth, std::optional<std::size_t> rounds = {}) {
    std::set<PerfQuadruple> out;
    std::vector<PerfQuadruple> layer;
    for (Int q = 1; q <= depth; ++q) {
        Int pmax = floor_rat(x_max * Rat(q));
        for (Int p = q + 1; p <= pmax; ++p) {
            if (gcd_pair(p, q) != 1) continue;
            if (auto c = perf_candidate(p, q); c && out.insert(*c).second) layer.push_back(*c);
        }
    }
    std::size_t R = rounds ? *rounds : depth;
    for (std::size_t round = 0; round < R && !layer.empty(); ++round) {
        std::vector<PerfQuadruple> next;
        for (auto& c : layer) {
            std::vector<std::pair<Int, Int>> imgs{f1_shift_pq(c.p, c.q)};
            if (c.p > 6 * c.q) imgs.push_back(f1_reflect_pq(c.p, c.q));
            for (auto& [p, q] : imgs) {
                auto pc = perf_candidate(p, q);
                if (pc && out.insert(*pc).second) next.push_back(*pc);
            }
        }
        layer = std::move(next);
    }
    return out;
}

}  // namespace stair
