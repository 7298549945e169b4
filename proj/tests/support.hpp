#pragma once

#include <stair/json_api.hpp>

#include <fstream>
#include <random>
#include <sstream>

namespace stair::testing {

inline std::string fixture_path(const std::string& name) { return std::string(STAIR_FIXTURES) + "/" + name; }

inline api::json load_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return api::parse_body(ss.str());
}

inline Polygon fixture_polygon(const std::string& name) { return api::dec_polygon(load_fixture(name), name); }

// small hand-rolled generators; fixed seeds so failures reproduce
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    Int big(int digits) {
        std::string s(1, char('1' + uniform(0, 8)));
        for (int i = 1; i < digits; ++i) s += char('0' + uniform(0, 9));
        return uniform(0, 1) ? Int(s) : Int(-Int(s));
    }
    Rat rat(long range, long dmax) { return Rat(uniform(-range, range), uniform(1, dmax)); }
    std::pair<Int, Int> coprime(long lo, long hi) {
        for (;;) {
            long a = uniform(lo, hi), b = uniform(lo, hi);
            if (std::gcd(a, b) == 1) return {a, b};
        }
    }
    Vec primitive_vec(long range) {
        for (;;) {
            long a = uniform(-range, range), b = uniform(-range, range);
            if ((a || b) && std::gcd(a, b) == 1) return {a, b};
        }
    }
    // random element of SL2(Z) as a product of elementary matrices
    Affine unimodular(int len, long shift_range) {
        Affine g;
        for (int i = 0; i < len; ++i) {
            long k = uniform(-2, 2);
            Affine e = uniform(0, 1) ? Affine::linear_map(1, k, 0, 1) : Affine::linear_map(1, 0, k, 1);
            g = e.after(g);
        }
        g.shift = Pt{Rat(uniform(-shift_range, shift_range)), Rat(uniform(-shift_range, shift_range))};
        return g;
    }
};

}  // namespace stair::testing

namespace stair::testing {

// Breakpoints of a piecewise linear function on [lo, hi], found only from
// function values.  Cells are split until linear at their eighth points; a
// cell that stays nonlinear at min_width holds one kink, found by
// intersecting its two end lines.  Kinks on a cell boundary show up as a
// slope jump between neighbouring cells.
inline std::vector<Rat> breakpoints(const std::function<Rat(const Rat&)>& f, const Rat& lo, const Rat& hi, const Rat& min_width) {
    struct Cell {
        Rat a, b, sl, sr;
    };
    std::vector<Cell> cells;
    std::vector<Rat> out;
    std::function<void(const Rat&, const Rat&)> rec = [&](const Rat& a, const Rat& b) {
        Rat fa = f(a), fb = f(b);
        Rat slope = (fb - fa) / (b - a);
        bool linear = true;
        for (int k = 1; k <= 7 && linear; ++k) {
            Rat x = a + (b - a) * Rat(k, 8);
            linear = f(x) == fa + slope * (x - a);
        }
        if (linear) {
            cells.push_back({a, b, slope, slope});
            return;
        }
        if (b - a > min_width) {
            Rat m = (a + b) / 2;
            rec(a, m);
            rec(m, b);
            return;
        }
        Rat h = (b - a) / 4096;
        Rat sl = (f(a + h) - fa) / h, sr = (fb - f(b - h)) / h;
        if (sl == sr) throw std::runtime_error("cell has more than one kink");
        out.push_back((fb - fa + sl * a - sr * b) / (sl - sr));
        cells.push_back({a, b, sl, sr});
    };
    rec(lo, hi);
    for (std::size_t i = 0; i + 1 < cells.size(); ++i)
        if (cells[i].sr != cells[i + 1].sl) out.push_back(cells[i].b);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace stair::testing

namespace stair::testing {

// brute-force GL2(Z) + translation equivalence for small polygons: try every
// vertex correspondence that respects the cyclic order (either direction)
// and solve for the linear map from two edge vectors
inline bool affinely_equivalent(const Polygon& A, const Polygon& B) {
    if (A.size() != B.size()) return false;
    std::size_t n = A.size();
    for (int dir : {1, -1})
        for (std::size_t s = 0; s < n; ++s) {
            auto bj = [&](std::size_t i) { return B[std::size_t((long(s) + dir * long(i) + 2 * long(n)) % long(n))]; };
            Pt u1 = A[1] - A[0], u2 = A[2] - A[0];
            Pt w1 = bj(1) - bj(0), w2 = bj(2) - bj(0);
            Rat D = det(u1, u2);
            // M = [w1 w2] [u1 u2]^-1
            Rat a = (w1.x * u2.y - w2.x * u1.y) / D, b = (w2.x * u1.x - w1.x * u2.x) / D;
            Rat c = (w1.y * u2.y - w2.y * u1.y) / D, d = (w2.y * u1.x - w1.y * u2.x) / D;
            if (!is_integer(a) || !is_integer(b) || !is_integer(c) || !is_integer(d)) continue;
            Rat dd = a * d - b * c;
            if (dd != 1 && dd != -1) continue;
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                Pt u = A[i] - A[0];
                Pt img{a * u.x + b * u.y + bj(0).x, c * u.x + d * u.y + bj(0).y};
                ok = img == bj(i);
            }
            if (ok) return true;
        }
    return false;
}

}  // namespace stair::testing

namespace stair::testing {

// Linear part of the best base frame: keeps the origin (so dual-Fano-ness is
// still meaningful) while undoing the coordinate growth of repeated shears.
inline Polygon linear_reduce(const Polygon& Q) {
    std::optional<Polygon> best;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        Affine g = base_frame(Q, i);
        g.shift = Pt{0, 0};
        Polygon P = transform(Q, g);
        if (!best || max_abs_coord(P) < max_abs_coord(*best)) best = std::move(P);
    }
    return *best;
}

// largest numerator or denominator among the vertex coordinates
inline Int rational_height(const Polygon& Q) {
    Int h = 0;
    for (auto& p : Q.v)
        for (const Rat* c : {&p.x, &p.y}) h = std::max({h, abs_int(num(*c)), den(*c)});
    return h;
}

// One step of a random mutation walk whose canonical forms stay below a
// rational height: a uniformly chosen (vertex, sign) among the moves that stay
// below it.  Unconstrained walks reach doubly exponential Markov numbers (the
// vertex denominators grow like r^2 even when the coordinates stay small);
// stepping back to the previous polygon always stays below the bound.
inline Polygon bounded_mutation_step(Gen& g, const Polygon& Q, const Int& bound) {
    std::vector<Polygon> options;
    for (std::size_t i = 0; i < Q.size(); ++i)
        for (FSign sg : {FSign::positive, FSign::negative}) {
            if (!classify_vertex(Q, i).t_data) continue;
            Polygon M = mutate(Q, i, 0, sg);
            if (rational_height(canonical_form(M)) <= bound) options.push_back(linear_reduce(M));
        }
    if (options.empty()) throw std::runtime_error("no mutation stays inside the bound");
    return options[std::size_t(g.uniform(0, long(options.size()) - 1))];
}

}  // namespace stair::testing
