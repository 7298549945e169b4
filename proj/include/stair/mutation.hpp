#pragma once

#include "polygon.hpp"

#include <array>
#include <deque>
#include <map>

namespace stair {

inline Pt primitive_shear(const Vec& v, const Pt& u) {
    if (!is_primitive(v)) throw error("NotPrimitive", "shear vector " + to_string(v) + " is not primitive");
    return u + det(Pt(v), u) * Pt(v);
}

enum class FSign { positive, negative };

struct MutationSetup {
    std::size_t vertex = 0;
    TData t;
    Vec v_prim;  // from the eigenray toward the vertex
    Vec f;       // covector vanishing on v_prim
};

inline MutationSetup mutation_setup(const Polygon& Q, std::size_t i, FSign sign = FSign::positive) {
    auto rep = classify_vertex(Q, i);
    if (!rep.t_data) throw error("NotTVertex", "vertex " + std::to_string(i) + " is not a T-singularity");
    MutationSetup s;
    s.vertex = i;
    s.t = *rep.t_data;
    s.v_prim = -*rep.eigenray;
    // (f, v_prim) positively oriented
    s.f = Vec{s.v_prim.y, -s.v_prim.x};
    if (sign == FSign::negative) s.f = -s.f;
    return s;
}

// psi^k about the line through the (translated) vertex
inline Pt apply_psi(const MutationSetup& s, const Int& k, const Pt& w, const Pt& u) {
    Pt d = u - w;
    Rat fu = dot(s.f, d);
    if (fu >= 0) return u;
    return u + (Rat(-k) * fu) * Pt(s.v_prim);
}

// count = 0 means full (count = m)
inline Polygon mutate(const Polygon& Q, std::size_t i, const Int& count = 0, FSign sign = FSign::positive) {
    if (i >= Q.size()) throw error("InvalidIndex", "vertex index " + std::to_string(i) + " out of range");
    auto s = mutation_setup(Q, i, sign);
    Int k = count == 0 ? s.t.m : count;
    if (k < 0) throw error("InvalidArgument", "mutation count must be positive");
    if (k > s.t.m)
        throw error("MutationOverrun", "count " + to_string(k) + " exceeds m = " + to_string(s.t.m) + " at vertex " + std::to_string(i));
    const Pt w = Q[i];
    std::vector<Pt> pts;
    for (std::size_t j = 0; j < Q.size(); ++j) {
        pts.push_back(apply_psi(s, k, w, Q[j]));
        // crossings of edge [Q_j, Q_{j+1}] with the line <f, u - w> = 0 are fixed points
        Rat a = dot(s.f, Q[j] - w), b = dot(s.f, Q.next(j) - w);
        if ((a < 0 && b > 0) || (a > 0 && b < 0)) {
            Rat t = a / (a - b);
            pts.push_back(Q[j] + t * (Q.next(j) - Q[j]));
        }
    }
    auto hull = convex_hull(std::move(pts));
    // start the list near the original base vertex for readability
    auto it = std::find(hull.begin(), hull.end(), w);
    if (it != hull.end()) std::rotate(hull.begin(), it, hull.end());
    return make_polygon(std::move(hull));
}

// ---- invariants -------------------------------------------------------------

struct MutationInvariantReport {
    bool area = false;
    bool dual_fano = false;
    std::optional<bool> markov;  // only when both are T-triangles
    bool euler = false;
    bool all() const { return area && dual_fano && markov.value_or(true) && euler; }
};

inline MutationInvariantReport mutation_invariants_check(const Polygon& Q, const Polygon& Qp) {
    MutationInvariantReport rep;
    rep.area = area(Q) == area(Qp);
    rep.dual_fano = !is_dual_fano(Q) || is_dual_fano(Qp);
    bool tq = is_t_polygon(Q), tqp = is_t_polygon(Qp);
    rep.euler = tq == tqp && (!tq || euler_and_degree(Q) == euler_and_degree(Qp));
    if (Q.size() == 3 && Qp.size() == 3 && tq && tqp) {
        auto a = markov_data(Q), b = markov_data(Qp);
        rep.markov = a.c_squared() == b.c_squared() && a.m_sorted() == b.m_sorted();
    }
    return rep;
}

// ---- mutation graph ---------------------------------------------------------

struct MutationNode {
    Polygon canonical;
    std::vector<Int> m_multiset;
    std::optional<std::vector<Int>> r_triple;  // sorted, for triangles
};

struct MutationEdge {
    std::size_t from, to;
    VertexType vertex_type;
};

struct MutationGraph {
    std::vector<MutationNode> nodes;
    std::vector<MutationEdge> edges;
    bool truncated = false;
};

inline Rat max_abs_coord(const Polygon& Q) {
    Rat m = 0;
    for (auto& p : Q.v) m = std::max({m, abs_rat(p.x), abs_rat(p.y)});
    return m;
}

inline MutationNode make_node(const Polygon& canon) {
    MutationNode n;
    n.canonical = canon;
    for (std::size_t i = 0; i < canon.size(); ++i) n.m_multiset.push_back(classify_vertex(canon, i).t_data->m);
    std::sort(n.m_multiset.begin(), n.m_multiset.end());
    if (canon.size() == 3) n.r_triple = markov_data(canon).r_sorted();
    return n;
}

inline MutationGraph explore_mutation_graph(const Polygon& Q, std::size_t max_nodes, const Rat& max_coord) {
    if (!is_t_polygon(Q)) throw error("NotTPolygon", "mutation graph needs a T-polygon");
    MutationGraph g;
    std::map<std::vector<Pt>, std::size_t, decltype([](const std::vector<Pt>& a, const std::vector<Pt>& b) {
                 return lex_less(a, b);
             })> index;
    std::deque<std::size_t> frontier;
    auto root = canonical_form(Q);
    g.nodes.push_back(make_node(root));
    index[root.v] = 0;
    frontier.push_back(0);
    std::set<std::pair<std::size_t, std::size_t>> seen_edges;
    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop_front();
        Polygon P = g.nodes[cur].canonical;
        for (std::size_t i = 0; i < P.size(); ++i) {
            auto rep = classify_vertex(P, i);
            Polygon M = mutate(P, i);
            Polygon c = canonical_form(M);
            std::size_t to;
            auto it = index.find(c.v);
            if (it != index.end()) {
                to = it->second;
            } else {
                if (g.nodes.size() >= max_nodes || max_abs_coord(c) > max_coord) {
                    g.truncated = true;
                    continue;
                }
                to = g.nodes.size();
                g.nodes.push_back(make_node(c));
                index[c.v] = to;
                frontier.push_back(to);
            }
            if (to != cur && seen_edges.insert({cur, to}).second)
                g.edges.push_back({cur, to, rep.vertex_type});
        }
    }
    return g;
}

// ---- Markov recursion -------------------------------------------------------

inline Rat markov_c_squared(const std::array<Int, 3>& r, const std::array<Int, 3>& m) {
    Int s = 0, mm = 1, rr = 1;
    for (int j = 0; j < 3; ++j) {
        s += m[j] * r[j] * r[j];
        mm *= m[j];
        rr *= r[j];
    }
    return Rat(s * s, mm * rr * rr);
}

// Vieta jump in r_i for sum m_j r_j^2 = C sqrt(m1 m2 m3) r1 r2 r3 with the given C^2.
inline std::array<Int, 3> markov_mutate(const std::array<Int, 3>& r, const std::array<Int, 3>& m, std::size_t i,
                                        const Rat& c_squared) {
    if (i > 2) throw error("InvalidIndex", "Markov index must be 0, 1 or 2");
    for (int j = 0; j < 3; ++j)
        if (r[j] <= 0 || m[j] <= 0) throw error("InvalidArgument", "Markov data must be positive");
    if (markov_c_squared(r, m) != c_squared) throw error("NotMarkov", "triple does not satisfy the Markov equation");
    Int s = 0;
    for (int j = 0; j < 3; ++j) s += m[j] * r[j] * r[j];
    // C sqrt(m1m2m3) = s / (r1 r2 r3), so the other root is s/(m_i r_i) - r_i
    if (s % (m[i] * r[i]) != 0) throw error("NotMarkov", "Vieta partner is not an integer");
    auto out = r;
    out[i] = s / (m[i] * r[i]) - r[i];
    if (out[i] <= 0) throw error("NotMarkov", "Vieta partner is not positive");
    return out;
}

inline std::array<Int, 3> markov_mutate(const std::array<Int, 3>& r, const std::array<Int, 3>& m, std::size_t i) {
    return markov_mutate(r, m, i, markov_c_squared(r, m));
}

// weights (1, mra-1, r, a) on (x, y, z, w); returns the common degree of xy, w^{mr}, z^{ma}
inline Int pencil_weight_check(const Int& m, const Int& r, const Int& a) {
    if (m <= 0 || r <= 0 || a <= 0) throw error("InvalidArgument", "pencil data must be positive");
    if (gcd_pair(r, a) != 1) throw error("NotCoprime", "r and a must be coprime");
    Int wx = 1, wy = m * r * a - 1, wz = r, ww = a;
    Int d_xy = wx + wy, d_w = ww * m * r, d_z = wz * m * a;
    if (d_xy != d_w || d_w != d_z) throw error("InternalInconsistency", "pencil monomials have different weights");
    return d_xy;
}

}  // namespace stair
