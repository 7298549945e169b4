#pragma once

#include "mutation.hpp"
#include "polygon.hpp"

namespace stair {

// Frame at a Delzant vertex: the vertex goes to the origin, the edge toward
// the neighbor w onto the positive y-axis and the other edge onto the
// positive x-axis.  When w follows the vertex in counterclockwise order the
// frame is orientation reversing.
struct CornerFrame {
    Affine g;                 // ambient -> framed
    Polygon framed;           // counterclockwise, framed[0] = origin, framed.back() = w
    std::vector<std::size_t> source;  // framed index -> ambient index
    bool mirrored = false;
};

inline CornerFrame corner_frame(const Polygon& Q, std::size_t v, bool w_is_prev = true) {
    if (!classify_vertex(Q, v).is_delzant) throw error("NotDelzant", "vertex " + std::to_string(v) + " is not Delzant");
    std::size_t n = Q.size();
    Vec e_next = primitive_dir(Q.next(v) - Q[v]).first;
    Vec e_prev = primitive_dir(Q.prev(v) - Q[v]).first;
    // columns of the inverse: image of (1,0) and of (0,1)
    Vec ex = w_is_prev ? e_next : e_prev;
    Vec ey = w_is_prev ? e_prev : e_next;
    Affine M = Affine::linear_map(ex.x, ey.x, ex.y, ey.y).inverse();
    CornerFrame cf;
    cf.mirrored = !w_is_prev;
    cf.g = M.after(Affine::translation(-Q[v]));
    std::vector<Pt> pts;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t j = w_is_prev ? (v + k) % n : (v + n - k) % n;
        pts.push_back(cf.g(Q[j]));
        cf.source.push_back(j);
    }
    cf.framed = Polygon{std::move(pts)};
    return cf;
}

struct ObstructionCert {
    std::size_t delzant_vertex = 0;
    std::size_t t_vertex = 0;
    Int r, a;
    Rat ell1, ell2, ell3;
    Pt hit_point;     // ambient coordinates
    Rat area;         // r ell1 = a ell2
    Vec eigenray;     // ambient direction at the T-vertex
    bool mirrored = false;
    TData t_data;
    Rat x() const { return Rat(a, r); }
    Rat y() const { return 1 / ell2; }
};

// certificate for the framed configuration (origin = Delzant vertex, last vertex on the y-axis)
inline std::optional<ObstructionCert> framed_certificate(const CornerFrame& cf) {
    const Polygon& P = cf.framed;
    std::size_t wi = P.size() - 1;
    auto rep = classify_vertex(P, wi);
    if (!rep.t_data) return std::nullopt;
    Vec e = *rep.eigenray;
    Int r = e.x, a = -e.y;
    if (r <= 0 || a <= 0) return std::nullopt;
    Rat ell1 = P[wi].y;
    Rat L = P[1].x;
    Pt hit{Rat(r) * ell1 / Rat(a), 0};
    if (hit.x > L) return std::nullopt;
    ObstructionCert c;
    c.delzant_vertex = cf.source[0];
    c.t_vertex = cf.source[wi];
    c.r = r;
    c.a = a;
    c.ell1 = ell1;
    c.ell2 = hit.x;
    c.ell3 = L - hit.x;
    c.hit_point = cf.g.inverse()(hit);
    c.area = Rat(r) * ell1;
    Vec amb = cf.g.inverse().linear(e);
    c.eigenray = amb;
    c.mirrored = cf.mirrored;
    c.t_data = *rep.t_data;
    return c;
}

inline std::vector<ObstructionCert> find_obstructions(const Polygon& Q) {
    std::vector<ObstructionCert> out;
    for (std::size_t v = 0; v < Q.size(); ++v) {
        if (!classify_vertex(Q, v).is_delzant) continue;
        for (bool prev : {true, false}) {
            auto cert = framed_certificate(corner_frame(Q, v, prev));
            if (cert) out.push_back(*cert);
        }
    }
    return out;
}

// ---- constraints on the embedding function ----------------------------------

enum class ConstraintCase { sloped, flat, not_applicable };

struct Constraint {
    ConstraintCase kind = ConstraintCase::not_applicable;
    Rat lo, hi;
    // sloped: c(x) = x / ell1; flat: c(x) = ell1
    Rat ell1;
    Rat value_at(const Rat& x) const { return kind == ConstraintCase::sloped ? x / ell1 : ell1; }
};

inline Constraint cert_to_constraints(const ObstructionCert& c) {
    Constraint k;
    k.ell1 = c.ell1;
    if (c.ell1 > c.ell2 + c.ell3) {
        k.kind = ConstraintCase::sloped;
        k.lo = c.ell1 / (c.ell2 + c.ell3);
        k.hi = c.ell1 / c.ell2;
    } else if (c.ell1 < c.ell2) {
        k.kind = ConstraintCase::flat;
        k.lo = c.ell2 / c.ell1;
        k.hi = (c.ell2 + c.ell3) / c.ell1;
    }
    return k;
}

// consecutive edges with directions (-m r^2, m r a - 1), (0,-1), (1,0) after some det-1 map
inline bool check_twist_hypothesis(const Polygon& Q, const Int& m, const Int& r, const Int& a) {
    if (m <= 0 || r <= 0 || a <= 0) throw error("InvalidArgument", "m, r, a must be positive");
    if (gcd_pair(r, a) != 1) throw error("NotCoprime", "r and a must be coprime");
    Vec target{-m * r * r, m * r * a - 1};
    target = primitive(target).first;
    std::size_t n = Q.size();
    auto dir = [&](std::size_t i) { return primitive_dir(Q.next(i) - Q[i]).first; };
    for (std::size_t j = 0; j < n; ++j) {
        Vec d1 = dir(j), d2 = dir((j + 1) % n), d3 = dir((j + 2) % n);
        if (det(d2, d3) != 1) continue;
        // A d3 = (1,0), A d2 = (0,-1):  A^{-1} = [d3 | -d2]
        Affine A = Affine::linear_map(d3.x, -d2.x, d3.y, -d2.y).inverse();
        if (A.linear(d1) == target) return true;
    }
    return false;
}

// ---- staircases from iterated mutation --------------------------------------

struct MutationStep {
    Polygon polygon;         // corner frame: origin first, top-left vertex last
    ObstructionCert cert;    // indices refer to `polygon`
    TData top_left;
};

inline std::size_t default_delzant_vertex(const Polygon& Q) {
    for (std::size_t v = 0; v < Q.size(); ++v)
        if (classify_vertex(Q, v).is_delzant && framed_certificate(corner_frame(Q, v, true))) return v;
    for (std::size_t v = 0; v < Q.size(); ++v)
        if (classify_vertex(Q, v).is_delzant) return v;
    throw error("NotDelzant", "polygon has no Delzant vertex");
}

inline std::vector<MutationStep> staircase_by_mutation(const Polygon& Q0, std::size_t steps,
                                                       std::optional<std::size_t> delzant = std::nullopt) {
    if (!is_t_polygon(Q0)) throw error("NotTPolygon", "staircase driver needs a T-polygon");
    std::size_t v = delzant ? *delzant : default_delzant_vertex(Q0);
    Polygon P = corner_frame(Q0, v, true).framed;
    std::vector<MutationStep> out;
    for (std::size_t s = 0; s < steps; ++s) {
        CornerFrame cf = corner_frame(P, 0, true);
        auto cert = framed_certificate(cf);
        if (!cert)
            throw error("EigenrayEscapes", "eigenray of the top-left vertex misses the bottom edge at step " + std::to_string(s),
                        "steps[" + std::to_string(s) + "]");
        std::size_t w = P.size() - 1;
        out.push_back({P, *cert, *classify_vertex(P, w).t_data});
        // shear the side away from the Delzant vertex
        auto setup = mutation_setup(P, w);
        FSign sign = dot(setup.f, P[0] - P[w]) > 0 ? FSign::positive : FSign::negative;
        Polygon M = mutate(P, w, 0, sign);
        auto it = std::find(M.v.begin(), M.v.end(), Pt{0, 0});
        if (it == M.v.end()) throw error("InternalInconsistency", "mutation moved the Delzant vertex");
        P = corner_frame(M, static_cast<std::size_t>(it - M.v.begin()), true).framed;
    }
    return out;
}

}  // namespace stair
