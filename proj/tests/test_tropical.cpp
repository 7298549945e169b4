#include "support.hpp"

#include <gtest/gtest.h>

using namespace stair;
using stair::testing::Gen;
using stair::testing::fixture_polygon;

namespace {

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const error& e) {
        return e.code;
    }
    return "";
}

// sum of d_i times the primitive edge vector, straight from the vertices
bool oracle_closes(const Polygon& Q, const std::vector<Int>& totals) {
    Vec s{0, 0};
    for (std::size_t i = 0; i < Q.size(); ++i) s = s + totals[i] * primitive_dir(Q.next(i) - Q[i]).first;
    return s == Vec{0, 0};
}

Int partition_count(long n) {
    std::vector<Int> p(n + 1, 0);
    p[0] = 1;
    for (long k = 1; k <= n; ++k)
        for (long j = k; j <= n; ++j) p[j] += p[j - k];
    return p[n];
}

// number of balanced assignments: coprime closing totals, each expanded into partitions
Int oracle_assignment_count(const Polygon& Q, long bound) {
    std::size_t n = Q.size();
    std::vector<Int> d(n, 0);
    Int count = 0;
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i == n) {
            Int g = 0;
            for (auto& x : d) g = gcd_pair(g, x);
            if (g != 1 || !oracle_closes(Q, d)) return;
            Int c = 1;
            for (auto& x : d) c *= partition_count(static_cast<long>(x));
            count += c;
            return;
        }
        for (long k = 0; k <= left; ++k) {
            d[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, bound);
    return count;
}

Polygon lattice_polygon(Gen& g) {
    for (;;) {
        std::vector<Pt> pts;
        int k = int(g.uniform(3, 7));
        for (int i = 0; i < k; ++i) pts.push_back({Rat(g.uniform(-4, 4)), Rat(g.uniform(-4, 4))});
        auto h = convex_hull(pts);
        if (h.size() >= 3) return make_polygon(h);
    }
}

}  // namespace

TEST(Tropical, CP1xCP1TriangleBalances) {
    auto rep = check_balanced(fixture_polygon("cp1xcp1.json"), {{2}, {1}, {1}});
    EXPECT_TRUE(rep.balanced);
    EXPECT_TRUE(rep.residual_zero);
    EXPECT_EQ(rep.gcd, 1);
    EXPECT_EQ(rep.totals, (std::vector<Int>{2, 1, 1}));
    auto bad = check_balanced(fixture_polygon("cp1xcp1.json"), {{1}, {1}, {1}});
    EXPECT_FALSE(bad.residual_zero);
    EXPECT_EQ(bad.residual, (Vec{0, -1}));
    EXPECT_EQ(code_of([] { check_balanced(fixture_polygon("cp2.json"), {{1}, {1}}); }), "InvalidArgument");
    EXPECT_EQ(code_of([] { check_balanced(fixture_polygon("cp2.json"), {{1}, {0}, {1}}); }), "InvalidArgument");
}

TEST(Tropical, ResidualMatchesEdgeVectorOracle) {
    Gen g(91);
    for (int it = 0; it < 300; ++it) {
        Polygon Q = lattice_polygon(g);
        Tangencies t(Q.size());
        std::vector<Int> totals;
        for (auto& e : t) {
            int parts = int(g.uniform(0, 2));
            Int d = 0;
            for (int j = 0; j < parts; ++j) {
                e.push_back(g.uniform(1, 3));
                d += e.back();
            }
            totals.push_back(d);
        }
        auto rep = check_balanced(Q, t);
        EXPECT_EQ(rep.residual_zero, oracle_closes(Q, totals));
        EXPECT_EQ(rep.totals, totals);
        // affine lengths always close up
        Tangencies lens;
        for (auto& e : edges(Q)) lens.push_back({num(e.affine_length)});
        EXPECT_TRUE(check_balanced(Q, lens).residual_zero);
    }
}

TEST(Tropical, EnumerationMatchesBruteForce) {
    for (auto f : {"cp2.json", "cp1xcp1.json", "square.json", "cp2_1.json", "pentagon.json"}) {
        Polygon Q = fixture_polygon(f);
        for (long bound = 0; bound <= 6; ++bound) {
            auto all = enumerate_degrees(Q, bound);
            EXPECT_EQ(Int(all.size()), oracle_assignment_count(Q, bound)) << f << " bound " << bound;
            for (auto& t : all) {
                auto rep = check_balanced(Q, t);
                EXPECT_TRUE(rep.balanced);
                Int s = 0;
                for (auto& d : rep.totals) s += d;
                EXPECT_LE(s, bound);
                for (auto& e : t) EXPECT_TRUE(std::is_sorted(e.rbegin(), e.rend()));
            }
        }
    }
    // the smallest CP2 curve is the line
    auto lines = enumerate_degrees(fixture_polygon("cp2.json"), 3);
    ASSERT_EQ(lines.size(), 1u);
    EXPECT_EQ(lines[0], (Tangencies{{1}, {1}, {1}}));
}

TEST(Tropical, ChopTemplate) {
    auto r = chop_vertex(make_polygon({{0, 0}, {4, 0}, {0, 2}}), 0, 2);
    EXPECT_EQ(r.tangencies, (Tangencies{{}, {2}, {}, {2}}));
    EXPECT_EQ(r.slant_edge, 3u);
    EXPECT_EQ(r.p, 2);
    EXPECT_EQ(r.q, 1);
    auto rep = check_balanced(r.polygon, r.tangencies);
    EXPECT_TRUE(rep.residual_zero);
    EXPECT_FALSE(rep.balanced);
    EXPECT_EQ(rep.gcd, 2);
}

TEST(Tropical, ChopOutputsAlwaysCloseUp) {
    Gen g(17);
    for (int it = 0; it < 200; ++it) {
        auto [p, q] = g.coprime(1, 6);
        Int k = g.uniform(1, 4);
        // a lattice quadrilateral with a (kp, kq) Delzant corner at the origin
        Int X = k * p, Y = k * q;
        Int ex = g.uniform(0, 3), ey = g.uniform(0, 3);
        std::vector<Pt> pts{{0, 0}, {Rat(X), 0}};
        if (ex + ey > 0) pts.push_back({Rat(X + ex), Rat(Y + ey)});
        pts.push_back({0, Rat(Y)});
        auto h = convex_hull(pts);
        Polygon Q = make_polygon(h);
        auto it0 = std::find(Q.v.begin(), Q.v.end(), Pt{0, 0});
        std::size_t v = static_cast<std::size_t>(it0 - Q.v.begin());
        if (!classify_vertex(Q, v).is_delzant) continue;
        if (primitive_dir(Q.next(v) - Q[v]).second != Rat(X) || primitive_dir(Q.prev(v) - Q[v]).second != Rat(Y)) continue;
        ChopResult r;
        try {
            r = chop_vertex(Q, v, k);
        } catch (const error& e) {
            // untouched edges must be integral, which this construction guarantees
            FAIL() << e.code << ": " << e.what();
        }
        EXPECT_TRUE(check_balanced(r.polygon, r.tangencies).residual_zero);
        EXPECT_EQ(r.tangencies[r.slant_edge], (std::vector<Int>{k}));
        EXPECT_EQ(area(r.polygon), area(Q) - Rat(X * Y, 8));
    }
}

TEST(Tropical, ChopErrors) {
    Polygon T = make_polygon({{0, 0}, {4, 0}, {0, 2}});
    EXPECT_EQ(code_of([&] { chop_vertex(T, 0, 3); }), "BadRatio");
    EXPECT_EQ(code_of([&] { chop_vertex(T, 0, 0); }), "InvalidArgument");
    EXPECT_EQ(code_of([&] { chop_vertex(T, 5, 1); }), "InvalidIndex");
    EXPECT_EQ(code_of([&] { chop_vertex(make_polygon({{0, 0}, {4, 0}, {0, 4}}), 0, 2); }), "BadRatio");
    EXPECT_EQ(code_of([] { chop_vertex(fixture_polygon("cp1xcp1.json"), 2, 1); }), "NotDelzant");
}

TEST(Tropical, NumericVanishingOrders) {
    std::vector<Puncture> ps{{{0, 0}, {1, 0}}, {{1, 0}, {0, 2}}, {{0, 2}, {-1, -2}}};
    auto rep = numeric_vanishing_orders(ps, 12);
    ASSERT_EQ(rep.fits.size(), 3u);
    double want[3][3] = {{1, 0, 1}, {0, 2, 2}, {-1, -2, 1}};
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(rep.fits[i].order_x, want[i][0], 1e-3);
        EXPECT_NEAR(rep.fits[i].order_y, want[i][1], 1e-3);
        EXPECT_NEAR(rep.fits[i].contact_order, want[i][2], 1e-3);
    }
    EXPECT_NEAR(rep.slope_at_infinity_x, 0, 1e-3);
    EXPECT_NEAR(rep.slope_at_infinity_y, 0, 1e-3);

    EXPECT_EQ(code_of([&] { numeric_vanishing_orders(ps, 1); }), "NumericFailure");
    EXPECT_EQ(code_of([] { numeric_vanishing_orders({}, 5); }), "NumericFailure");
    EXPECT_EQ(code_of([] { numeric_vanishing_orders({{{0, 0}, {1, 0}}, {{0, 0}, {-1, 0}}}, 5); }), "NumericFailure");
    EXPECT_EQ(code_of([] { numeric_vanishing_orders({{{0, 0}, {1, 0}}, {{1, 0}, {0, 1}}}, 5); }), "InvalidArgument");
}
