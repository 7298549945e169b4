#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace stair {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Every failure the library reports carries a stable code (used by the CLI
// and the HTTP envelope), a message, and an optional location string.
struct error : std::runtime_error {
    std::string code;
    std::string location;
    error(std::string c, const std::string& msg, std::string loc = {})
        : std::runtime_error(msg), code(std::move(c)), location(std::move(loc)) {}
};

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }
inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }
inline Rat abs_rat(const Rat& a) { return a < 0 ? Rat(-a) : a; }

// floor division / nonnegative remainder (cpp_int truncates toward zero)
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline Int mod_pos(const Int& a, const Int& n) {
    Int r = a % n;
    if (r < 0) r += abs_int(n);
    return r;
}
// the two-argument cpp_rational constructor rejects negative denominators
inline Rat make_rat(const Int& n, const Int& d) {
    if (d == 0) throw error("InvalidNumber", "zero denominator");
    return d < 0 ? Rat(Int(-n), Int(-d)) : Rat(n, d);
}

inline Int floor_rat(const Rat& r) { return floor_div(num(r), den(r)); }
inline Int ceil_rat(const Rat& r) { return -floor_div(-num(r), den(r)); }

inline std::string to_string(const Int& a) { return a.str(); }
inline std::string to_string(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline Int parse_int(const std::string& s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw error("InvalidNumber", "not an integer: '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') throw error("InvalidNumber", "not an integer: '" + s + "'");
    Int v(s.substr(i));
    return s[0] == '-' ? Int(-v) : v;
}

// Accepts "a" or "a/b"; the fraction must already be in lowest terms with b > 0.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int n = parse_int(s.substr(0, slash));
    std::string ds = s.substr(slash + 1);
    if (!ds.empty() && (ds[0] == '-' || ds[0] == '+'))
        throw error("InvalidNumber", "denominator must be positive: '" + s + "'");
    Int d = parse_int(ds);
    if (d == 0) throw error("InvalidNumber", "zero denominator: '" + s + "'");
    if (boost::multiprecision::gcd(n, d) != 1)
        throw error("NotLowestTerms", "rational not in lowest terms: '" + s + "'");
    return Rat(n, d);
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// ---- lattice and rational vectors -------------------------------------------

template <class T>
std::strong_ordering cmp3(const T& a, const T& b) {
    return a < b ? std::strong_ordering::less : (b < a ? std::strong_ordering::greater : std::strong_ordering::equal);
}

struct Vec {
    Int x, y;
    bool operator==(const Vec&) const = default;
    auto operator<=>(const Vec& o) const {
        if (auto c = cmp3(x, o.x); c != 0) return c;
        return cmp3(y, o.y);
    }
};

struct Pt {
    Rat x, y;
    Pt() = default;
    Pt(Rat a, Rat b) : x(std::move(a)), y(std::move(b)) {}
    explicit Pt(const Vec& v) : x(v.x), y(v.y) {}
    bool operator==(const Pt&) const = default;
    bool operator<(const Pt& o) const { return x != o.x ? x < o.x : y < o.y; }
};

inline Vec operator+(const Vec& a, const Vec& b) { return {a.x + b.x, a.y + b.y}; }
inline Vec operator-(const Vec& a, const Vec& b) { return {a.x - b.x, a.y - b.y}; }
inline Vec operator-(const Vec& a) { return {-a.x, -a.y}; }
inline Vec operator*(const Int& k, const Vec& a) { return {k * a.x, k * a.y}; }

inline Pt operator+(const Pt& a, const Pt& b) { return {a.x + b.x, a.y + b.y}; }
inline Pt operator-(const Pt& a, const Pt& b) { return {a.x - b.x, a.y - b.y}; }
inline Pt operator-(const Pt& a) { return {-a.x, -a.y}; }
inline Pt operator*(const Rat& k, const Pt& a) { return {k * a.x, k * a.y}; }

inline Int det(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline Rat det(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }
inline Int dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }
inline Rat dot(const Vec& a, const Pt& b) { return Rat(a.x) * b.x + Rat(a.y) * b.y; }

inline std::string to_string(const Vec& v) { return "(" + to_string(v.x) + "," + to_string(v.y) + ")"; }
inline std::string to_string(const Pt& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

// ---- number theory ----------------------------------------------------------

inline Int gcd_pair(const Int& a, const Int& b) { return boost::multiprecision::gcd(abs_int(a), abs_int(b)); }

inline Int lcm_pair(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a) / gcd_pair(a, b) * abs_int(b);
}

// returns (g, s, t) with s*a + t*b = g = gcd(a,b) >= 0
inline std::tuple<Int, Int, Int> ext_gcd(const Int& a, const Int& b) {
    Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = floor_div(r0, r1);
        Int r2 = r0 - q * r1; r0 = r1; r1 = r2;
        Int s2 = s0 - q * s1; s0 = s1; s1 = s2;
        Int t2 = t0 - q * t1; t0 = t1; t1 = t2;
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    return {r0, s0, t0};
}

// inverse of a modulo n (n >= 1), assumes gcd(a,n) = 1
inline Int inv_mod(const Int& a, const Int& n) {
    if (n == 1) return 0;
    auto [g, s, t] = ext_gcd(mod_pos(a, n), n);
    if (g != 1) throw error("NotCoprime", "no inverse of " + to_string(a) + " mod " + to_string(n));
    return mod_pos(s, n);
}

inline std::pair<Vec, Int> primitive(const Vec& v) {
    if (v.x == 0 && v.y == 0) throw error("ZeroVector", "primitive of the zero vector");
    Int g = gcd_pair(v.x, v.y);
    return {Vec{v.x / g, v.y / g}, g};
}

inline bool is_primitive(const Vec& v) { return gcd_pair(v.x, v.y) == 1; }

// a rational direction d = c * p with p primitive integral and c > 0 rational
inline std::pair<Vec, Rat> primitive_dir(const Pt& d) {
    Int L = lcm_pair(den(d.x), den(d.y));
    Vec v{num(d.x * L), num(d.y * L)};
    auto [p, g] = primitive(v);
    return {p, Rat(g, L)};
}

inline Int isqrt(const Int& n) {
    if (n < 0) throw error("InvalidArgument", "square root of a negative integer");
    return boost::multiprecision::sqrt(n);
}
inline bool is_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int s = isqrt(n);
    if (root) *root = s;
    return s * s == n;
}

// ---- continued fractions ----------------------------------------------------

inline void require_coprime_positive(const Int& p, const Int& q) {
    if (p <= 0 || q <= 0) throw error("InvalidArgument", "expected positive integers");
    if (gcd_pair(p, q) != 1)
        throw error("NotCoprime", to_string(p) + " and " + to_string(q) + " are not coprime");
}

// regular continued fraction; Euclid already ends on a coefficient >= 2 unless p/q is an integer
inline std::vector<Int> cf_ordinary(const Int& p, const Int& q) {
    require_coprime_positive(p, q);
    std::vector<Int> out;
    Int a = p, b = q;
    while (b != 0) {
        out.push_back(a / b);
        Int r = a % b;
        a = b;
        b = r;
    }
    return out;
}

// n/q = b1 - 1/(b2 - 1/(...)), all b_i >= 2
inline std::vector<Int> cf_hirzebruch_jung(const Int& n, const Int& q) {
    if (!(q > 0 && q < n) || gcd_pair(n, q) != 1)
        throw error("InvalidType", "need 0 < q < n with gcd(n,q)=1, got n=" + to_string(n) + " q=" + to_string(q));
    std::vector<Int> out;
    Int a = n, b = q;
    while (b != 0) {
        Int c = -floor_div(-a, b);  // ceil(a/b)
        out.push_back(c);
        Int r = c * b - a;
        a = b;
        b = r;
    }
    return out;
}

inline Rat eval_hirzebruch_jung(const std::vector<Int>& bs) {
    Rat v = bs.back();
    for (auto it = bs.rbegin() + 1; it != bs.rend(); ++it) v = Rat(*it) - 1 / v;
    return v;
}

// Mediant insertion from the cone <(1,0),(0,1)> toward the ray (p,q).  Each step
// inserts the mediant of the two rays bounding the cone that contains (p,q).
inline std::vector<Vec> stern_brocot_path(const Int& p, const Int& q) {
    require_coprime_positive(p, q);
    Vec lo{1, 0}, hi{0, 1}, target{p, q};
    std::vector<Vec> out;
    for (;;) {
        Vec m = lo + hi;
        out.push_back(m);
        if (m == target) break;
        // target is clockwise of m  <=>  det(m, target) < 0
        if (det(m, target) < 0) hi = m; else lo = m;
    }
    return out;
}

// ---- integral affine maps ---------------------------------------------------

struct Affine {
    Int a = 1, b = 0, c = 0, d = 1;  // linear part [[a,b],[c,d]]
    Pt shift{0, 0};

    Int det() const { return a * d - b * c; }
    Pt linear(const Pt& p) const { return {Rat(a) * p.x + Rat(b) * p.y, Rat(c) * p.x + Rat(d) * p.y}; }
    Vec linear(const Vec& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Pt operator()(const Pt& p) const { return linear(p) + shift; }

    // (*this) after o
    Affine after(const Affine& o) const {
        Affine r;
        r.a = a * o.a + b * o.c;
        r.b = a * o.b + b * o.d;
        r.c = c * o.a + d * o.c;
        r.d = c * o.b + d * o.d;
        r.shift = linear(o.shift) + shift;
        return r;
    }
    Affine inverse() const {
        Int D = det();
        if (D != 1 && D != -1) throw error("NotUnimodular", "linear part has determinant " + to_string(D));
        Affine r;
        r.a = d * D;
        r.b = -b * D;
        r.c = -c * D;
        r.d = a * D;
        r.shift = -r.linear(shift);
        return r;
    }
    static Affine translation(const Pt& t) {
        Affine r;
        r.shift = t;
        return r;
    }
    static Affine linear_map(Int a, Int b, Int c, Int d) {
        Affine r;
        r.a = std::move(a); r.b = std::move(b); r.c = std::move(c); r.d = std::move(d);
        if (r.det() != 1 && r.det() != -1) throw error("NotUnimodular", "linear part has determinant " + to_string(r.det()));
        return r;
    }
};

// det-1 matrix M with M*e = (0,-1) for primitive e
inline Affine frame_sending_to_down(const Vec& e) {
    // M^{-1} = [w | -e] with det(e, w) = 1
    auto [g, s, t] = ext_gcd(e.x, e.y);
    if (g != 1) throw error("NotPrimitive", "vector " + to_string(e) + " is not primitive");
    // det(e,w) = e.x*w.y - e.y*w.x = 1 with w = (-t, s)
    Vec w{-t, s};
    // inverse of [[w.x, -e.x],[w.y, -e.y]] (det 1)
    return Affine::linear_map(-e.y, e.x, -w.y, w.x);
}

}  // namespace stair
