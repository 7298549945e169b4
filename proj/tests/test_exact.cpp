#include "support.hpp"

#include <gtest/gtest.h>

using namespace stair;
using stair::testing::Gen;

namespace {

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const error& e) {
        return e.code;
    }
    return "";
}

// value of [a0; a1, ..., an] computed front to back via convergents
Rat eval_ordinary(const std::vector<Int>& a) {
    Int h0 = 1, h1 = a[0], k0 = 0, k1 = 1;
    for (std::size_t i = 1; i < a.size(); ++i) {
        Int h2 = a[i] * h1 + h0, k2 = a[i] * k1 + k0;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    }
    return Rat(h1, k1);
}

}  // namespace

TEST(Rational, PrintsLowestTerms) {
    EXPECT_EQ(to_string(Rat(6, 4)), "3/2");
    EXPECT_EQ(to_string(Rat(-6, 3)), "-2");
    EXPECT_EQ(to_string(Rat(0)), "0");
    EXPECT_EQ(to_string(make_rat(5, -10)), "-1/2");
    EXPECT_EQ(to_string(make_rat(-4, -6)), "2/3");
    EXPECT_EQ(code_of([] { make_rat(1, 0); }), "InvalidNumber");
}

TEST(Rational, ParseRejectsMalformed) {
    EXPECT_EQ(code_of([] { parse_rat("2/4"); }), "NotLowestTerms");
    EXPECT_EQ(code_of([] { parse_rat("1/0"); }), "InvalidNumber");
    EXPECT_EQ(code_of([] { parse_rat("1/-2"); }), "InvalidNumber");
    EXPECT_EQ(code_of([] { parse_rat("abc"); }), "InvalidNumber");
    EXPECT_EQ(code_of([] { parse_rat(""); }), "InvalidNumber");
    EXPECT_EQ(code_of([] { parse_rat("1.5"); }), "InvalidNumber");
    EXPECT_EQ(parse_rat("-7/3"), Rat(-7, 3));
    EXPECT_EQ(parse_rat("+4"), Rat(4));
}

TEST(Rational, RoundTripProperty) {
    Gen g(11);
    for (int i = 0; i < 500; ++i) {
        Rat r(g.big(1 + int(g.uniform(0, 30))), abs_int(g.big(1 + int(g.uniform(0, 30)))));
        EXPECT_EQ(parse_rat(to_string(r)), r);
        // printed form is in lowest terms, so parsing it never trips the check
        EXPECT_EQ(to_string(parse_rat(to_string(r))), to_string(r));
    }
}

TEST(Rational, FloorAndCeil) {
    EXPECT_EQ(floor_rat(Rat(-7, 2)), -4);
    EXPECT_EQ(ceil_rat(Rat(-7, 2)), -3);
    EXPECT_EQ(floor_rat(Rat(7, 2)), 3);
    EXPECT_EQ(ceil_rat(Rat(6, 2)), 3);
    EXPECT_EQ(mod_pos(-3, 5), 2);
    Gen g(3);
    for (int i = 0; i < 300; ++i) {
        Rat r = g.rat(1000, 50);
        Int f = floor_rat(r), c = ceil_rat(r);
        EXPECT_LE(Rat(f), r);
        EXPECT_LT(r, Rat(f + 1));
        EXPECT_GE(Rat(c), r);
        EXPECT_GT(r, Rat(c - 1));
    }
}

TEST(NumberTheory, ExtendedGcdBezout) {
    Gen g(5);
    for (int i = 0; i < 400; ++i) {
        Int a = g.big(int(g.uniform(1, 25))), b = g.big(int(g.uniform(1, 25)));
        auto [d, s, t] = ext_gcd(a, b);
        EXPECT_EQ(s * a + t * b, d);
        EXPECT_EQ(d, gcd_pair(a, b));
        EXPECT_EQ(a % d, 0);
        EXPECT_EQ(b % d, 0);
    }
}

TEST(NumberTheory, InverseModProperty) {
    Gen g(6);
    for (int i = 0; i < 300; ++i) {
        long n = g.uniform(2, 500), a = g.uniform(-1000, 1000);
        if (std::gcd(a, n) != 1) {
            EXPECT_EQ(code_of([&] { inv_mod(a, n); }), "NotCoprime");
            continue;
        }
        Int x = inv_mod(a, n);
        EXPECT_EQ(mod_pos(x * a, n), 1);
        EXPECT_GE(x, 0);
        EXPECT_LT(x, n);
    }
}

TEST(NumberTheory, PrimitiveDirection) {
    auto [v, c] = primitive_dir(Pt{Rat(-3, 2), Rat(9, 4)});
    EXPECT_EQ(v, (Vec{-2, 3}));
    EXPECT_EQ(c, Rat(3, 4));
    EXPECT_EQ(code_of([] { primitive(Vec{0, 0}); }), "ZeroVector");
    Gen g(7);
    for (int i = 0; i < 300; ++i) {
        Pt d{g.rat(50, 12), g.rat(50, 12)};
        if (d == Pt{0, 0}) continue;
        auto [p, k] = primitive_dir(d);
        EXPECT_TRUE(is_primitive(p));
        EXPECT_GT(k, 0);
        EXPECT_EQ(k * Pt(p), d);
    }
}

TEST(NumberTheory, IntegerSquareRoot) {
    Int r;
    EXPECT_TRUE(is_square(Int(144), &r));
    EXPECT_EQ(r, 12);
    EXPECT_FALSE(is_square(Int(145)));
    EXPECT_FALSE(is_square(Int(-4)));
    Int big = Int("123456789012345678901234567890");
    EXPECT_TRUE(is_square(big * big, &r));
    EXPECT_EQ(r, big);
    EXPECT_FALSE(is_square(big * big + 1));
}

TEST(ContinuedFraction, OrdinaryEvaluatesBack) {
    EXPECT_EQ(cf_ordinary(13, 5), (std::vector<Int>{2, 1, 1, 2}));
    Gen g(8);
    for (int i = 0; i < 300; ++i) {
        auto [p, q] = g.coprime(1, 5000);
        EXPECT_EQ(eval_ordinary(cf_ordinary(p, q)), Rat(p, q));
    }
    EXPECT_EQ(code_of([] { cf_ordinary(4, 6); }), "NotCoprime");
}

TEST(ContinuedFraction, HirzebruchJung) {
    EXPECT_EQ(cf_hirzebruch_jung(5, 2), (std::vector<Int>{3, 2}));
    EXPECT_EQ(cf_hirzebruch_jung(7, 3), (std::vector<Int>{3, 2, 2}));
    EXPECT_EQ(cf_hirzebruch_jung(4, 3), (std::vector<Int>{2, 2, 2}));
    EXPECT_EQ(cf_hirzebruch_jung(4, 1), (std::vector<Int>{4}));
    EXPECT_EQ(code_of([] { cf_hirzebruch_jung(4, 2); }), "InvalidType");
    EXPECT_EQ(code_of([] { cf_hirzebruch_jung(4, 4); }), "InvalidType");
    Gen g(9);
    for (int i = 0; i < 300; ++i) {
        long n = g.uniform(2, 400), q = g.uniform(1, n - 1);
        if (std::gcd(n, q) != 1) continue;
        auto b = cf_hirzebruch_jung(n, q);
        for (auto& x : b) EXPECT_GE(x, 2);
        EXPECT_EQ(eval_hirzebruch_jung(b), Rat(n, q));
    }
}

TEST(ContinuedFraction, SternBrocotPath) {
    EXPECT_EQ(stern_brocot_path(3, 2), (std::vector<Vec>{{1, 1}, {2, 1}, {3, 2}}));
    Gen g(10);
    for (int i = 0; i < 200; ++i) {
        auto [p, q] = g.coprime(1, 300);
        auto path = stern_brocot_path(p, q);
        EXPECT_EQ(path.back(), (Vec{p, q}));
        Int total = 0;
        for (auto& a : cf_ordinary(p, q)) total += a;
        EXPECT_EQ(Int(path.size()), total);
        // each inserted ray is the sum of two rays already present that span a unimodular cone
        std::vector<Vec> have{{1, 0}, {0, 1}};
        for (auto& v : path) {
            bool found = false;
            for (auto& a : have)
                for (auto& b : have)
                    if (a + b == v && det(a, b) == 1) found = true;
            EXPECT_TRUE(found) << to_string(v);
            have.push_back(v);
        }
    }
}

TEST(Affine, InverseAndComposition) {
    Gen g(12);
    for (int i = 0; i < 200; ++i) {
        Affine A = g.unimodular(6, 5), B = g.unimodular(6, 5);
        Pt p{g.rat(30, 7), g.rat(30, 7)};
        EXPECT_EQ(A.inverse()(A(p)), p);
        EXPECT_EQ(A.after(B)(p), A(B(p)));
        EXPECT_EQ(A.det(), 1);
    }
    EXPECT_EQ(code_of([] { Affine::linear_map(2, 0, 0, 1); }), "NotUnimodular");
}

TEST(Affine, FrameSendsToDown) {
    Gen g(13);
    for (int i = 0; i < 300; ++i) {
        Vec e = g.primitive_vec(200);
        Affine M = frame_sending_to_down(e);
        EXPECT_EQ(M.det(), 1);
        EXPECT_EQ(M.linear(e), (Vec{0, -1}));
    }
    EXPECT_EQ(code_of([] { frame_sending_to_down(Vec{2, 4}); }), "NotPrimitive");
}
