#pragma once

// JSON wire format shared by the CLI and the HTTP server.  Each command takes
// a request object and returns a result object; both front ends call
// handle() so their payloads are identical by construction.

#include "cusp.hpp"
#include "mutation.hpp"
#include "obstruction.hpp"
#include "perf_f1.hpp"
#include "polygon.hpp"
#include "staircase.hpp"
#include "tropical.hpp"

#include <json.hpp>

#include <functional>
#include <limits>
#include <map>

namespace stair::api {

using json = nlohmann::ordered_json;

// ---- encoding ---------------------------------------------------------------

inline json enc(const Int& a) {
    if (a >= std::numeric_limits<long long>::min() && a <= std::numeric_limits<long long>::max())
        return a.convert_to<long long>();
    return a.str();
}
inline json enc(const Rat& r) { return to_string(r); }
inline json enc(const Vec& v) { return json::array({enc(v.x), enc(v.y)}); }
inline json enc(const Pt& p) { return json::array({enc(p.x), enc(p.y)}); }
inline json enc(const std::vector<Int>& xs) {
    json a = json::array();
    for (auto& x : xs) a.push_back(enc(x));
    return a;
}
inline json enc(const Polygon& Q) {
    json vs = json::array();
    for (auto& p : Q.v) vs.push_back(enc(p));
    return json{{"vertices", vs}};
}
inline json enc(const VertexType& t) { return json{{"n", enc(t.n)}, {"q", enc(t.q)}, {"label", to_string(t)}}; }
inline json enc(const TData& t) { return json{{"m", enc(t.m)}, {"r", enc(t.r)}, {"a", enc(t.a_residue)}}; }
inline json enc(const PuiseuxChar& c) { return json::array({enc(c.m), enc(c.betas)}); }
inline json enc(const QuadSurd& s) { return json{{"surd", to_string(s)}, {"float", s.to_double()}}; }

inline json enc(const VertexReport& r, const Polygon& Q) {
    json j{{"index", r.index}, {"vertex", enc(Q[r.index])}, {"type", enc(r.vertex_type)}, {"is_delzant", r.is_delzant}};
    j["t_data"] = r.t_data ? enc(*r.t_data) : json(nullptr);
    j["eigenray"] = r.eigenray ? enc(*r.eigenray) : json(nullptr);
    return j;
}

inline json enc(const CornerPoint& c) {
    return json{{"kind", c.kind == CornerKind::outer ? "outer" : "inner"},
                {"k", c.k},
                {"x", enc(c.x)},
                {"y", enc(c.y)},
                {"p", enc(c.p)},
                {"q", enc(c.q)}};
}

inline json enc(const Constraint& k) {
    switch (k.kind) {
        case ConstraintCase::sloped:
            return json{{"case", "A"}, {"formula", "x/ell1"}, {"ell1", enc(k.ell1)}, {"lo", enc(k.lo)}, {"hi", enc(k.hi)}};
        case ConstraintCase::flat:
            return json{{"case", "B"}, {"formula", "ell1"}, {"ell1", enc(k.ell1)}, {"lo", enc(k.lo)}, {"hi", enc(k.hi)}};
        default:
            return json{{"case", "NotApplicable"}};
    }
}

inline json enc(const ObstructionCert& c) {
    return json{{"delzant_vertex", c.delzant_vertex},
                {"t_vertex", c.t_vertex},
                {"r", enc(c.r)},
                {"a", enc(c.a)},
                {"ell1", enc(c.ell1)},
                {"ell2", enc(c.ell2)},
                {"ell3", enc(c.ell3)},
                {"hit_point", enc(c.hit_point)},
                {"area", enc(c.area)},
                {"x", enc(c.x())},
                {"y", enc(c.y())},
                {"eigenray", enc(c.eigenray)},
                {"mirrored", c.mirrored},
                {"t_data", enc(c.t_data)},
                {"constraint", enc(cert_to_constraints(c))}};
}

inline json enc(const PerfQuadruple& q) {
    return json{{"p", enc(q.p)}, {"q", enc(q.q)}, {"d", enc(q.d)}, {"m", enc(q.m)}, {"epsilon", q.epsilon}};
}

// ---- decoding ---------------------------------------------------------------

inline const json& field(const json& j, const std::string& key, const std::string& loc) {
    if (!j.is_object()) throw error("InvalidRequest", "expected an object", loc);
    auto it = j.find(key);
    if (it == j.end()) throw error("MissingField", "missing field '" + key + "'", loc.empty() ? key : loc + "." + key);
    return *it;
}

inline Int dec_int(const json& j, const std::string& loc) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        try {
            return parse_int(j.get<std::string>());
        } catch (const error& e) {
            throw error(e.code, e.what(), loc);
        }
    }
    throw error("InvalidNumber", "expected an integer", loc);
}

inline Rat dec_rat(const json& j, const std::string& loc) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Rat(dec_int(j, loc));
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const error& e) {
            throw error(e.code, e.what(), loc);
        }
    }
    throw error("InvalidNumber", "expected a rational string such as \"3/2\"", loc);
}

inline std::size_t dec_index(const json& j, const std::string& loc) {
    Int v = dec_int(j, loc);
    if (v < 0 || v > 1000000) throw error("InvalidIndex", "index out of range", loc);
    return v.convert_to<std::size_t>();
}

inline Polygon dec_polygon(const json& j, const std::string& loc) {
    const json& vs = field(j, "vertices", loc);
    std::string vloc = loc.empty() ? "vertices" : loc + ".vertices";
    if (!vs.is_array()) throw error("InvalidPolygon", "vertices must be an array", vloc);
    std::vector<Pt> pts;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string l = vloc + "[" + std::to_string(i) + "]";
        if (!vs[i].is_array() || vs[i].size() != 2) throw error("InvalidPolygon", "each vertex must be a pair", l);
        pts.emplace_back(dec_rat(vs[i][0], l + "[0]"), dec_rat(vs[i][1], l + "[1]"));
    }
    try {
        return make_polygon(std::move(pts));
    } catch (const error& e) {
        throw error(e.code, e.what(), loc.empty() ? e.location : loc + "." + e.location);
    }
}

inline PuiseuxChar dec_char(const json& j, const std::string& loc) {
    if (!j.is_array() || j.size() != 2 || !j[1].is_array()) throw error("InvalidChar", "char must look like [9,[15,16]]", loc);
    std::vector<Int> betas;
    for (std::size_t i = 0; i < j[1].size(); ++i) betas.push_back(dec_int(j[1][i], loc + "[1][" + std::to_string(i) + "]"));
    PuiseuxChar c{dec_int(j[0], loc + "[0]"), betas};
    try {
        validate_char(c);
    } catch (const error& e) {
        throw error(e.code, e.what(), loc);
    }
    return c;
}

inline std::vector<PuiseuxPair> dec_pairs(const json& j, const std::string& loc) {
    if (!j.is_array()) throw error("InvalidPairs", "pairs must be an array of [n,d]", loc);
    std::vector<PuiseuxPair> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string l = loc + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2) throw error("InvalidPairs", "each pair must be [n,d]", l);
        out.push_back({dec_int(j[i][0], l + "[0]"), dec_int(j[i][1], l + "[1]")});
    }
    return out;
}

template <class T, class F>
T get_or(const json& j, const std::string& key, T dflt, F dec) {
    if (!j.is_object()) throw error("InvalidRequest", "request body must be a JSON object");
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return dflt;
    return dec(*it, key);
}

inline bool dec_bool(const json& j, const std::string& loc) {
    if (!j.is_boolean()) throw error("InvalidRequest", "expected true or false", loc);
    return j.get<bool>();
}

// ---- commands ---------------------------------------------------------------

inline json cmd_classify(const json& req) {
    Polygon Q = dec_polygon(field(req, "polygon", ""), "polygon");
    json vs = json::array();
    for (auto& r : classify_all(Q)) vs.push_back(enc(r, Q));
    json es = json::array();
    for (auto& e : edges(Q)) {
        json je{{"start_index", e.start_index},
                {"direction", enc(e.direction)},
                {"affine_length", enc(e.affine_length)},
                {"inward_normal", enc(e.inward_normal)}};
        je["height"] = e.height ? enc(*e.height) : json(nullptr);
        es.push_back(je);
    }
    json out{{"polygon", enc(Q)}, {"vertices", vs}, {"edges", es}, {"area", enc(area(Q))}};
    out["centered"] = is_centered(Q);
    out["dual_fano"] = is_dual_fano(Q);
    bool t = is_t_polygon(Q);
    out["t_polygon"] = t;
    if (t) {
        auto [e, deg] = euler_and_degree(Q);
        out["euler"] = enc(e);
        out["degree"] = enc(deg);
        if (Q.size() == 3) {
            auto md = markov_data(Q);
            out["markov"] = json{{"m", enc(md.m)}, {"r", enc(md.r)}, {"sum", enc(md.sum)}, {"prod", enc(md.prod)},
                                 {"c_squared", enc(md.c_squared())}};
        }
    }
    out["canonical"] = enc(canonical_form(Q));
    return out;
}

inline json cmd_mutate(const json& req) {
    Polygon Q = dec_polygon(field(req, "polygon", ""), "polygon");
    std::size_t i = dec_index(field(req, "vertex", ""), "vertex");
    if (i >= Q.size()) throw error("InvalidIndex", "vertex index out of range", "vertex");
    bool full = get_or(req, "full", false, dec_bool);
    Int count = get_or(req, "count", Int(0), dec_int);
    if (full && count != 0) throw error("InvalidRequest", "give either count or full", "count");
    if (!full && count == 0) full = true;
    if (count < 0) throw error("InvalidArgument", "count must be positive", "count");
    std::string sign = get_or(req, "sign", std::string("+"), [](const json& j, const std::string& l) {
        if (!j.is_string() || (j != "+" && j != "-")) throw error("InvalidRequest", "sign must be \"+\" or \"-\"", l);
        return j.get<std::string>();
    });
    auto rep = classify_vertex(Q, i);
    Polygon M = mutate(Q, i, count, sign == "-" ? FSign::negative : FSign::positive);
    auto inv = mutation_invariants_check(Q, M);
    json ij{{"area", inv.area}, {"dual_fano", inv.dual_fano}, {"euler", inv.euler}};
    ij["markov"] = inv.markov ? json(*inv.markov) : json(nullptr);
    json out{{"polygon", enc(M)}, {"canonical", enc(canonical_form(M))}, {"vertex_type", enc(rep.vertex_type)}};
    out["t_data"] = rep.t_data ? enc(*rep.t_data) : json(nullptr);
    out["count"] = enc(count == 0 ? rep.t_data->m : count);
    out["invariants"] = ij;
    return out;
}

inline json cmd_mutation_graph(const json& req) {
    Polygon Q = dec_polygon(field(req, "polygon", ""), "polygon");
    std::size_t max_nodes = get_or(req, "max_nodes", std::size_t(10), dec_index);
    Rat max_coord = get_or(req, "max_coord", Rat(1000), dec_rat);
    auto g = explore_mutation_graph(Q, max_nodes, max_coord);
    json nodes = json::array();
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        auto& n = g.nodes[k];
        json jn{{"id", k}, {"polygon", enc(n.canonical)}, {"m_multiset", enc(n.m_multiset)}};
        jn["r_triple"] = n.r_triple ? enc(*n.r_triple) : json(nullptr);
        nodes.push_back(jn);
    }
    json es = json::array();
    for (auto& e : g.edges) es.push_back(json{{"from", e.from}, {"to", e.to}, {"vertex_type", enc(e.vertex_type)}});
    return json{{"nodes", nodes}, {"edges", es}, {"truncated", g.truncated}};
}

inline json cmd_resolve_cusp(const json& req) {
    bool has_pairs = req.is_object() && req.contains("pairs");
    bool has_char = req.is_object() && req.contains("char");
    if (has_pairs == has_char) throw error("InvalidRequest", "give exactly one of 'pairs' or 'char'");
    PuiseuxChar c = has_pairs ? pairs_to_char(dec_pairs(req["pairs"], "pairs")) : dec_char(req["char"], "char");
    auto res = minimal_resolution(c);
    json chars = json::array(), chain = json::array();
    for (auto& x : res.chars) {
        chars.push_back(enc(x));
        chain.push_back(to_string(x));
    }
    json pairs = json::array();
    if (!c.tangential())
        for (auto& [n, d] : char_to_pairs(c)) pairs.push_back(json::array({enc(n), enc(d)}));
    json out{{"char", enc(c)}, {"pairs", pairs}, {"chain", chain}, {"chars", chars}, {"multiplicities", enc(res.multiplicities)}};
    out["square_sum"] = enc(multiplicity_square_sum(c));
    if (c.betas.size() == 1 && !c.tangential()) out["normal_crossing_multiplicities"] = enc(euclid_multiplicities(c.betas[0], c.m));
    return out;
}

inline json cmd_ncr(const json& req) {
    Int p = dec_int(field(req, "p", ""), "p"), q = dec_int(field(req, "q", ""), "q");
    auto ch = ncr_chain(p, q);
    json rays = json::array();
    for (auto& v : ch.rays) rays.push_back(enc(v));
    Int s = 0;
    for (auto& m : ch.multiplicity_sequence) s += m * m;
    return json{{"length", ch.length},
                {"rays", rays},
                {"self_intersections", enc(ch.self_intersections)},
                {"multiplicities", enc(ch.multiplicity_sequence)},
                {"square_sum", enc(s)}};
}

inline const StaircaseSpec& dec_target(const json& req) {
    const json& t = field(req, "target", "");
    if (!t.is_string()) throw error("InvalidRequest", "target must be a string", "target");
    return find_spec(t.get<std::string>());
}

inline json cmd_staircase(const json& req) {
    const StaircaseSpec& s = dec_target(req);
    std::size_t steps = get_or(req, "steps", std::size_t(5), dec_index);
    bool inner = get_or(req, "include_inner", false, dec_bool);
    auto outer = outer_corners(s, steps, true);
    std::vector<CornerPoint> all = outer;
    if (inner) {
        for (auto& c : inner_corners(s, steps))
            if (c.x <= outer.back().x) all.push_back(c);
        std::stable_sort(all.begin(), all.end(), [](const CornerPoint& a, const CornerPoint& b) { return a.x < b.x; });
    }
    json cs = json::array();
    for (auto& c : all) cs.push_back(enc(c));
    return json{{"target", s.key}, {"name", s.name}, {"K", enc(s.K)}, {"J", s.J}, {"seeds", enc(s.seeds)},
                {"corners", cs}, {"acc", enc(s.acc)}};
}

inline json cmd_twist(const json& req) {
    Int K = dec_int(field(req, "K", ""), "K");
    Int p = dec_int(field(req, "p", ""), "p"), q = dec_int(field(req, "q", ""), "q");
    bool psi = get_or(req, "psi", false, dec_bool);
    auto [a, b] = psi ? twist_psi(K, p, q) : twist_phi(K, p, q);
    return json{{"p", enc(a)}, {"q", enc(b)}};
}

inline json cmd_ghost(const json& req) {
    std::size_t count = get_or(req, "count", std::size_t(3), dec_index);
    if (count < 1) throw error("InvalidArgument", "count must be at least 1", "count");
    json ms = json::array();
    for (auto& g : ghost_family(count)) {
        Rat x(g.p, g.q);
        ms.push_back(json{{"p", enc(g.p)}, {"q", enc(g.q)}, {"d", enc(g.d)}, {"x", enc(x)},
                          {"level", enc(folding_value(x))}, {"ball_level", enc(folding_value(x, true))},
                          {"double_points", enc(double_point_count(g.d, g.p, g.q))}});
    }
    return json{{"members", ms}};
}

inline json cmd_eval_c(const json& req) {
    const StaircaseSpec& s = dec_target(req);
    Rat x = dec_rat(field(req, "x", ""), "x");
    return json{{"target", s.key}, {"x", enc(x)}, {"c", enc(evaluate_staircase(s, x))}};
}

inline json cmd_obstructions(const json& req) {
    Polygon Q = dec_polygon(field(req, "polygon", ""), "polygon");
    json cs = json::array();
    for (auto& c : find_obstructions(Q)) cs.push_back(enc(c));
    return json{{"certificates", cs}};
}

inline json cmd_staircase_mutate(const json& req) {
    Polygon Q = dec_polygon(field(req, "polygon", ""), "polygon");
    std::size_t steps = get_or(req, "steps", std::size_t(3), dec_index);
    std::optional<std::size_t> dv;
    if (req.contains("delzant_vertex")) dv = dec_index(req["delzant_vertex"], "delzant_vertex");
    json out = json::array();
    auto run = staircase_by_mutation(Q, steps, dv);
    for (std::size_t k = 0; k < run.size(); ++k)
        out.push_back(json{{"step", k}, {"polygon", enc(run[k].polygon)}, {"certificate", enc(run[k].cert)},
                           {"top_left", enc(run[k].top_left)}});
    json res{{"steps", out}};
    if (!run.empty()) res["final_polygon"] = enc(run.back().polygon);
    return res;
}

inline json cmd_perf_f1(const json& req) {
    if (get_or(req, "scan", false, dec_bool)) {
        std::size_t qmax = get_or(req, "qmax", std::size_t(8), dec_index);
        Rat xmax = get_or(req, "xmax", Rat(10), dec_rat);
        std::optional<std::size_t> rounds;
        if (req.contains("rounds")) rounds = dec_index(req["rounds"], "rounds");
        json qs = json::array();
        for (auto& q : generate_perf_region(xmax, qmax, rounds)) qs.push_back(enc(q));
        return json{{"quadruples", qs}};
    }
    if (req.is_object() && req.contains("strand")) {
        json qs = json::array();
        for (auto& q : monotone_strand(dec_index(req["strand"], "strand"))) qs.push_back(enc(q));
        return json{{"strand", qs}};
    }
    Int p = dec_int(field(req, "p", ""), "p"), q = dec_int(field(req, "q", ""), "q");
    auto c = perf_candidate(p, q);
    return json{{"candidate", c ? enc(*c) : json("none")}};
}

inline Tangencies dec_tangencies(const json& j, const std::string& loc) {
    if (!j.is_array()) throw error("InvalidRequest", "tangencies must be an array of arrays", loc);
    Tangencies t;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string l = loc + "[" + std::to_string(i) + "]";
        if (!j[i].is_array()) throw error("InvalidRequest", "each edge needs an array of contact orders", l);
        std::vector<Int> ks;
        for (std::size_t k = 0; k < j[i].size(); ++k) ks.push_back(dec_int(j[i][k], l + "[" + std::to_string(k) + "]"));
        t.push_back(ks);
    }
    return t;
}

inline json enc_tangencies(const Tangencies& t) {
    json a = json::array();
    for (auto& e : t) a.push_back(enc(e));
    return a;
}

inline json cmd_balance(const json& req) {
    Polygon Q = dec_polygon(field(req, "polygon", ""), "polygon");
    if (req.contains("enumerate")) {
        json out = json::array();
        for (auto& t : enumerate_degrees(Q, dec_int(req["enumerate"], "enumerate"))) out.push_back(enc_tangencies(t));
        return json{{"assignments", out}};
    }
    if (req.contains("chop_vertex")) {
        auto res = chop_vertex(Q, dec_index(req["chop_vertex"], "chop_vertex"), dec_int(field(req, "k", ""), "k"));
        auto bal = check_balanced(res.polygon, res.tangencies);
        return json{{"polygon", enc(res.polygon)}, {"tangencies", enc_tangencies(res.tangencies)},
                    {"slant_edge", res.slant_edge}, {"p", enc(res.p)}, {"q", enc(res.q)},
                    {"balanced", bal.balanced}, {"residual_zero", bal.residual_zero}, {"gcd", enc(bal.gcd)}};
    }
    auto t = dec_tangencies(field(req, "tangencies", ""), "tangencies");
    auto rep = check_balanced(Q, t);
    return json{{"balanced", rep.balanced}, {"residual_zero", rep.residual_zero}, {"residual", enc(rep.residual)},
                {"gcd", enc(rep.gcd)}, {"totals", enc(rep.totals)}};
}

inline json cmd_canonical(const json& req) {
    Polygon Q = dec_polygon(field(req, "polygon", ""), "polygon");
    return json{{"polygon", enc(canonical_form(Q))}};
}

inline json cmd_dual(const json& req) {
    Polygon Q = dec_polygon(field(req, "polygon", ""), "polygon");
    return json{{"polygon", enc(dual_polygon(Q))}};
}

using Handler = std::function<json(const json&)>;

inline const std::map<std::string, Handler>& commands() {
    static const std::map<std::string, Handler> m = {
        {"classify", cmd_classify},
        {"mutate", cmd_mutate},
        {"mutation-graph", cmd_mutation_graph},
        {"resolve-cusp", cmd_resolve_cusp},
        {"ncr", cmd_ncr},
        {"staircase", cmd_staircase},
        {"twist", cmd_twist},
        {"ghost", cmd_ghost},
        {"eval-c", cmd_eval_c},
        {"obstructions", cmd_obstructions},
        {"staircase-mutate", cmd_staircase_mutate},
        {"perf-f1", cmd_perf_f1},
        {"balance", cmd_balance},
        {"canonical", cmd_canonical},
        {"dual", cmd_dual},
    };
    return m;
}

inline json handle(const std::string& command, const json& req) {
    auto it = commands().find(command);
    if (it == commands().end()) throw error("UnknownCommand", "unknown command '" + command + "'");
    if (!req.is_object()) throw error("InvalidRequest", "request body must be a JSON object");
    try {
        return it->second(req);
    } catch (const json::exception& e) {
        throw error("InvalidRequest", e.what());
    }
}

inline json error_json(const error& e) {
    json j{{"code", e.code}, {"message", e.what()}};
    j["location"] = e.location.empty() ? json(nullptr) : json(e.location);
    return j;
}

// parse with a byte-offset location on failure
inline json parse_body(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw error("MalformedJson", e.what(), "byte " + std::to_string(e.byte));
    }
}

}  // namespace stair::api
