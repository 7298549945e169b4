#pragma once

#include "exact.hpp"

#include <map>
#include <optional>
#include <set>

namespace stair {

struct Polygon {
    std::vector<Pt> v;  // counterclockwise, strictly convex
    std::size_t size() const { return v.size(); }
    const Pt& operator[](std::size_t i) const { return v[i % v.size()]; }
    const Pt& next(std::size_t i) const { return v[(i + 1) % v.size()]; }
    const Pt& prev(std::size_t i) const { return v[(i + v.size() - 1) % v.size()]; }
    bool operator==(const Polygon&) const = default;
};

inline Rat twice_area(const std::vector<Pt>& v) {
    Rat s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += det(v[i], v[(i + 1) % v.size()]);
    return s;
}
inline Rat area(const Polygon& Q) { return twice_area(Q.v) / 2; }

inline Polygon make_polygon(std::vector<Pt> pts) {
    std::size_t n = pts.size();
    if (n < 3) throw error("InvalidPolygon", "a polygon needs at least 3 vertices", "vertices");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (pts[i] == pts[j])
                throw error("InvalidPolygon", "repeated vertex " + to_string(pts[i]), "vertices[" + std::to_string(j) + "]");
    for (std::size_t i = 0; i < n; ++i) {
        Pt a = pts[(i + n - 1) % n], b = pts[i], c = pts[(i + 1) % n];
        Rat t = det(b - a, c - b);
        if (t == 0)
            throw error("InvalidPolygon", "three consecutive collinear vertices at " + to_string(b), "vertices[" + std::to_string(i) + "]");
        if (t < 0)
            throw error("InvalidPolygon", "vertices must be counterclockwise and convex (turn at " + to_string(b) + ")",
                        "vertices[" + std::to_string(i) + "]");
    }
    // all left turns, but the boundary could still wind more than once
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (det(pts[i] - pts[0], pts[i + 1] - pts[0]) <= 0)
            throw error("InvalidPolygon", "vertex list is not a simple convex polygon", "vertices");
    return Polygon{std::move(pts)};
}

inline Polygon polygon_from_ints(std::initializer_list<std::pair<long, long>> xs) {
    std::vector<Pt> v;
    for (auto [a, b] : xs) v.emplace_back(Rat(a), Rat(b));
    return make_polygon(std::move(v));
}

inline Polygon transform(const Polygon& Q, const Affine& g) {
    std::vector<Pt> w;
    for (auto& p : Q.v) w.push_back(g(p));
    if (g.det() < 0) std::reverse(w.begin(), w.end());
    return Polygon{std::move(w)};
}

// ---- edges ------------------------------------------------------------------

struct EdgeData {
    std::size_t start_index = 0;
    Vec direction;        // primitive, from v_i to v_{i+1}
    Rat affine_length;
    Vec inward_normal;    // primitive
    std::optional<Rat> height;  // present when the origin is interior
};

inline Vec inward_normal_of(const Vec& dir) { return {-dir.y, dir.x}; }

inline bool is_centered(const Polygon& Q) {
    for (std::size_t i = 0; i < Q.size(); ++i) {
        auto [d, len] = primitive_dir(Q.next(i) - Q[i]);
        if (dot(inward_normal_of(d), Q[i]) >= 0) return false;
    }
    return true;
}

inline std::vector<EdgeData> edges(const Polygon& Q) {
    bool centered = is_centered(Q);
    std::vector<EdgeData> out;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        EdgeData e;
        e.start_index = i;
        std::tie(e.direction, e.affine_length) = primitive_dir(Q.next(i) - Q[i]);
        e.inward_normal = inward_normal_of(e.direction);
        if (centered) e.height = -dot(e.inward_normal, Q[i]);
        out.push_back(std::move(e));
    }
    return out;
}

// ---- vertex singularities ---------------------------------------------------

struct VertexType {
    Int n = 1;
    Int q = 0;
    bool operator==(const VertexType&) const = default;
};

inline VertexType canonical_type(const Int& n, const Int& q) {
    if (n == 1) return {1, 0};
    Int a = mod_pos(q, n);
    if (gcd_pair(a, n) != 1) throw error("InvalidType", "q not a unit mod n");
    Int b = inv_mod(a, n);
    return {n, std::min(a, b)};
}

inline std::string to_string(const VertexType& t) {
    return "1/" + to_string(t.n) + "(1," + to_string(t.n == 1 ? Int(1) : t.q) + ")";
}

struct TData {
    Int m = 1, r = 1, a_residue = 1;
    bool operator==(const TData&) const = default;
};

// T-data (m, r, a mod r) of the singularity 1/n(1,q), if it is of class T:
// n = m r^2 and q = m r a - 1 (mod n).  Then gcd(n, q+1) = m r gcd(r, a) = m r,
// which pins down m = g^2 / n and r = g / m without any search.
inline std::optional<TData> t_data_of(const VertexType& t) {
    if (t.n == 1) return TData{1, 1, 1};
    Int qp1 = t.q + 1;
    Int g = gcd_pair(t.n, qp1);
    Int g2 = g * g;
    if (g2 % t.n != 0) return std::nullopt;
    Int m = g2 / t.n;
    if (g % m != 0) return std::nullopt;
    Int r = g / m;
    if (m * r * r != t.n) return std::nullopt;
    Int a = mod_pos(qp1 / g, r);
    if (a == 0) a = r;
    if (gcd_pair(a, r) != 1) return std::nullopt;
    return TData{m, r, a};
}

struct VertexReport {
    std::size_t index = 0;
    VertexType vertex_type;
    std::optional<TData> t_data;
    std::optional<Vec> eigenray;
    bool is_delzant = false;
    Vec dir_next, dir_prev;   // primitive edge directions at the vertex
};

namespace detail {

// Lattice frame at a vertex with primitive edge directions e1 (to the next
// vertex) and e2 (to the previous one): a det-1 map A with A e1 = (0,-1),
// A e2 = (n, y).
struct VertexFrame {
    Affine A;
    Int n, y;
};

inline VertexFrame vertex_frame(const Vec& e1, const Vec& e2) {
    VertexFrame f;
    f.A = frame_sending_to_down(e1);
    Vec img = f.A.linear(e2);
    f.n = img.x;
    f.y = img.y;
    return f;
}

}  // namespace detail

inline VertexReport classify_vertex(const Polygon& Q, std::size_t i) {
    if (i >= Q.size()) throw error("InvalidIndex", "vertex index " + std::to_string(i) + " out of range");
    VertexReport rep;
    rep.index = i;
    rep.dir_next = primitive_dir(Q.next(i) - Q[i]).first;
    rep.dir_prev = primitive_dir(Q.prev(i) - Q[i]).first;
    auto fr = detail::vertex_frame(rep.dir_next, rep.dir_prev);
    Int n = fr.n;  // = det(e1, e2) > 0 for a counterclockwise polygon
    // Type from the normal cone: standardizing the cone of inward normals to
    // <(0,1),(n,-q)> gives q = -y mod n.  Reading q off the edge directions
    // instead would give the inverse of -q, which mislabels the CP(1,1,4)
    // vertex as 1/4(1,3).
    rep.vertex_type = canonical_type(n, n == 1 ? Int(0) : Int(-fr.y));
    rep.is_delzant = (n == 1);
    rep.t_data = t_data_of(rep.vertex_type);
    if (rep.t_data) {
        const Int& m = rep.t_data->m;
        const Int& r = rep.t_data->r;
        Int one_minus_y = 1 - fr.y;
        if (one_minus_y % (m * r) != 0)
            throw error("InternalInconsistency", "eigenray frame does not match T-data at vertex " + std::to_string(i));
        Int a = one_minus_y / (m * r);
        Affine Ainv = fr.A.inverse();
        rep.eigenray = Ainv.linear(Vec{r, -a});
    }
    return rep;
}

inline std::vector<VertexReport> classify_all(const Polygon& Q) {
    std::vector<VertexReport> out;
    for (std::size_t i = 0; i < Q.size(); ++i) out.push_back(classify_vertex(Q, i));
    return out;
}

inline bool is_t_polygon(const Polygon& Q) {
    for (std::size_t i = 0; i < Q.size(); ++i)
        if (!classify_vertex(Q, i).t_data) return false;
    return true;
}

inline bool is_dual_fano(const Polygon& Q) {
    if (!is_centered(Q)) return false;
    for (auto& e : edges(Q))
        if (*e.height != 1) return false;
    return true;
}

inline Polygon dual_polygon(const Polygon& Q) {
    if (!is_centered(Q)) throw error("NotCentered", "origin is not in the interior of the polygon");
    std::vector<Pt> w;
    for (auto& e : edges(Q)) w.push_back((Rat(1) / *e.height) * Pt(e.inward_normal));
    return make_polygon(std::move(w));
}

// (c1, self-intersection) of the toric divisor over edge i of a centered polygon
inline std::pair<Rat, Rat> toric_divisor_c1_and_selfint(const Polygon& Q, std::size_t i) {
    std::size_t n = Q.size();
    if (i >= n) throw error("InvalidIndex", "edge index out of range");
    if (!is_centered(Q)) throw error("NotCentered", "origin is not in the interior of the polygon");
    if (!classify_vertex(Q, i).is_delzant || !classify_vertex(Q, (i + 1) % n).is_delzant)
        throw error("NotDelzant", "edge " + std::to_string(i) + " has a non-Delzant endpoint");
    auto es = edges(Q);
    const auto& e = es[i];
    const auto& ep = es[(i + n - 1) % n];
    const auto& en = es[(i + 1) % n];
    Rat self = (-*en.height - *ep.height + e.affine_length) / *e.height;
    return {2 + self, self};
}

inline std::pair<Int, Int> euler_and_degree(const Polygon& Q) {
    Int e = 0;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        auto rep = classify_vertex(Q, i);
        if (!rep.t_data) throw error("NotTPolygon", "vertex " + std::to_string(i) + " is not a T-singularity");
        e += rep.t_data->m;
    }
    return {e, 12 - e};
}

// ---- canonical form ---------------------------------------------------------

inline bool lex_less(const std::vector<Pt>& a, const std::vector<Pt>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// the normalizing map for base vertex i (see canonical_form)
inline Affine base_frame(const Polygon& Q, std::size_t i) {
    Vec e1 = primitive_dir(Q.next(i) - Q[i]).first;
    Vec e2 = primitive_dir(Q.prev(i) - Q[i]).first;
    auto fr = detail::vertex_frame(e1, e2);
    // shear fixing (0,-1): (x,y) -> (x, y + t x), brings y into [0,n)
    Int t = -floor_div(fr.y, fr.n);
    Affine shear = Affine::linear_map(1, 0, t, 1);
    Affine lin = shear.after(fr.A);
    return lin.after(Affine::translation(-Q[i]));
}

inline Polygon canonical_form(const Polygon& Q) {
    std::optional<std::vector<Pt>> best;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        Affine g = base_frame(Q, i);
        std::vector<Pt> w;
        for (std::size_t k = 0; k < Q.size(); ++k) w.push_back(g(Q[i + k]));
        if (!best || lex_less(w, *best)) best = std::move(w);
    }
    return Polygon{std::move(*best)};
}

// ---- generalized Markov data ------------------------------------------------

struct MarkovData {
    std::vector<Int> m;        // per vertex, in vertex order
    std::vector<Int> r;        // per vertex
    Int sum;                   // sum m_i r_i^2
    Int prod;                  // m1 m2 m3 (r1 r2 r3)^2
    // C^2 = sum^2 / prod; C itself is generally a surd
    Rat c_squared() const { return Rat(sum * sum, prod); }
    std::vector<Int> m_sorted() const { auto s = m; std::sort(s.begin(), s.end()); return s; }
    std::vector<Int> r_sorted() const { auto s = r; std::sort(s.begin(), s.end()); return s; }
};

inline MarkovData markov_data(const Polygon& Q) {
    if (Q.size() != 3) throw error("NotTTriangle", "polygon is not a triangle");
    MarkovData d;
    Int mm = 1, rr = 1;
    d.sum = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        auto rep = classify_vertex(Q, i);
        if (!rep.t_data) throw error("NotTTriangle", "vertex " + std::to_string(i) + " is not a T-singularity");
        d.m.push_back(rep.t_data->m);
        d.r.push_back(rep.t_data->r);
        d.sum += rep.t_data->m * rep.t_data->r * rep.t_data->r;
        mm *= rep.t_data->m;
        rr *= rep.t_data->r;
    }
    d.prod = mm * rr * rr;
    return d;
}

// ---- small geometric helpers used elsewhere ---------------------------------

// exact convex hull (counterclockwise, no collinear points)
inline std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Pt> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && det(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && det(h[k - 1] - h[k - 2], pts[i - 1] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

inline bool contains(const Polygon& Q, const Pt& p) {
    for (std::size_t i = 0; i < Q.size(); ++i)
        if (det(Q.next(i) - Q[i], p - Q[i]) < 0) return false;
    return true;
}

// rotate the vertex list so that index i comes first
inline Polygon rotate_to(const Polygon& Q, std::size_t i) {
    std::vector<Pt> w;
    for (std::size_t k = 0; k < Q.size(); ++k) w.push_back(Q[i + k]);
    return Polygon{std::move(w)};
}

}  // namespace stair
