#include <stair/json_api.hpp>
#include <stair/server.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using stair::api::json;

namespace {

// a polygon/body argument is a file path, "-" for stdin, or inline JSON
json load_json(const std::string& arg) {
    std::string text;
    if (arg == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw stair::error("FileNotFound", "cannot open '" + arg + "'", arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return stair::api::parse_body(text);
}

// accepts either a bare polygon {"vertices": ...} or an object holding one
json polygon_of(const json& j) {
    if (j.is_object() && j.contains("polygon")) return j["polygon"];
    return j;
}

// "5,3;16,3" -> [[5,3],[16,3]]
json parse_pairs(const std::string& s) {
    json out = json::array();
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto comma = item.find(',');
        if (comma == std::string::npos) throw stair::error("InvalidPairs", "pairs look like \"5,3;16,3\"", "--pairs");
        out.push_back(json::array({item.substr(0, comma), item.substr(comma + 1)}));
    }
    return out;
}

// "9;15,16" -> [9,[15,16]]
json parse_char(const std::string& s) {
    auto semi = s.find(';');
    if (semi == std::string::npos) throw stair::error("InvalidChar", "char looks like \"9;15,16\"", "--char");
    json betas = json::array();
    std::stringstream ss(s.substr(semi + 1));
    std::string item;
    while (std::getline(ss, item, ',')) betas.push_back(item);
    return json::array({s.substr(0, semi), betas});
}

void emit(const json& j, bool compact) { std::cout << (compact ? j.dump() : j.dump(2)) << "\n"; }

int fail(const stair::error& e) {
    std::cerr << json{{"ok", false}, {"error", stair::api::error_json(e)}}.dump() << "\n";
    return stair::api::is_internal(e) ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorics for ellipsoid-embedding staircases"};
    app.require_subcommand(1);
    app.fallthrough();
    bool compact = false;
    app.add_flag("--json", compact, "compact machine-readable output");

    std::string command;

    auto sub = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        s->callback([&command, name] { command = name; });
        return s;
    };

    std::string poly, target, body, sign = "+", tangencies, x, pairs, chr, max_coord = "1000", xmax = "10";
    std::string K, p, q;
    std::size_t vertex = 0, max_nodes = 10, steps = 5, count = 3, qmax = 8;
    std::optional<std::size_t> mcount, delzant, rounds, strand, enumerate, chop, chop_k;
    bool full = false, psi = false, scan = false, inner = false;
    int port = 8080;
    std::string host = "127.0.0.1";

    auto* c_classify = sub("classify", "vertex types, T-data and eigenrays");
    c_classify->add_option("polygon", poly, "polygon JSON file")->required();

    auto* c_mutate = sub("mutate", "mutate at a T-vertex");
    c_mutate->add_option("polygon", poly)->required();
    c_mutate->add_option("--vertex", vertex)->required();
    auto* o_count = c_mutate->add_option("--count", mcount);
    c_mutate->add_flag("--full", full)->excludes(o_count);
    c_mutate->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));

    auto* c_graph = sub("mutation-graph", "breadth-first mutation graph");
    c_graph->add_option("polygon", poly)->required();
    c_graph->add_option("--max-nodes", max_nodes);
    c_graph->add_option("--max-coord", max_coord);

    auto* c_cusp = sub("resolve-cusp", "minimal resolution of a Puiseux characteristic");
    auto* o_pairs = c_cusp->add_option("--pairs", pairs);
    c_cusp->add_option("--char", chr)->excludes(o_pairs);

    auto* c_ncr = sub("ncr", "normal crossing resolution of x^p = y^q");
    c_ncr->add_option("--p", p)->required();
    c_ncr->add_option("--q", q)->required();

    auto* c_stair = sub("staircase", "corners of a built-in staircase");
    c_stair->add_option("target", target)->required();
    c_stair->add_option("--steps", steps);
    c_stair->add_flag("--inner", inner, "interleave inner corners");

    auto* c_twist = sub("twist", "apply one twist");
    c_twist->add_option("--K", K)->required();
    c_twist->add_option("--p", p)->required();
    c_twist->add_option("--q", q)->required();
    c_twist->add_flag("--psi", psi);

    auto* c_ghost = sub("ghost", "ghost stair family");
    c_ghost->add_option("--count", count);

    auto* c_eval = sub("eval-c", "evaluate the staircase function");
    c_eval->add_option("--target", target)->required();
    c_eval->add_option("--x", x)->required();

    auto* c_obs = sub("obstructions", "obstruction certificates");
    c_obs->add_option("polygon", poly)->required();

    auto* c_sm = sub("staircase-mutate", "staircase by iterated mutation");
    c_sm->add_option("polygon", poly, "polygon or exported session")->required();
    auto* o_steps = c_sm->add_option("--steps", steps);
    c_sm->add_option("--delzant-vertex", delzant);

    auto* c_perf = sub("perf-f1", "perfect exceptional classes on the one-point blowup");
    c_perf->add_option("--p", p);
    c_perf->add_option("--q", q);
    c_perf->add_flag("--scan", scan);
    c_perf->add_option("--qmax", qmax);
    c_perf->add_option("--xmax", xmax);
    c_perf->add_option("--rounds", rounds);
    c_perf->add_option("--strand", strand);

    auto* c_bal = sub("balance", "tropical balancing");
    c_bal->add_option("polygon", poly)->required();
    c_bal->add_option("--tangencies", tangencies, "JSON array of per-edge contact orders");
    c_bal->add_option("--enumerate", enumerate, "list balanced assignments up to this total");
    c_bal->add_option("--chop-vertex", chop);
    c_bal->add_option("--k", chop_k);

    auto* c_req = sub("request", "run a command on a raw JSON request body");
    c_req->add_option("command", target)->required();
    c_req->add_option("body", body, "file, - or inline JSON")->required();

    auto* c_serve = sub("serve", "local HTTP server for /api/v1");
    c_serve->add_option("--port", port);
    c_serve->add_option("--host", host);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(stair::error("UsageError", e.what()));
    }

    try {
        if (command == "serve") {
            httplib::Server srv;
            stair::api::install_routes(srv);
            std::cerr << "listening on http://" << host << ":" << port << "/api/v1\n";
            if (!srv.listen(host, port)) throw stair::error("PortUnavailable", "cannot bind " + host + ":" + std::to_string(port));
            return 0;
        }

        json req = json::object();
        std::string cmd = command;
        if (command == "classify" || command == "obstructions" || command == "mutation-graph") {
            req["polygon"] = polygon_of(load_json(poly));
            if (command == "mutation-graph") {
                req["max_nodes"] = max_nodes;
                req["max_coord"] = max_coord;
            }
        } else if (command == "mutate") {
            req["polygon"] = polygon_of(load_json(poly));
            req["vertex"] = vertex;
            if (mcount) req["count"] = *mcount;
            else req["full"] = true;
            req["sign"] = sign;
        } else if (command == "resolve-cusp") {
            if (!pairs.empty()) req["pairs"] = parse_pairs(pairs);
            else if (!chr.empty()) req["char"] = parse_char(chr);
            else throw stair::error("InvalidRequest", "give --pairs or --char");
        } else if (command == "ncr") {
            req = {{"p", p}, {"q", q}};
        } else if (command == "staircase") {
            req = {{"target", target}, {"steps", steps}};
            if (inner) req["include_inner"] = true;
        } else if (command == "twist") {
            req = {{"K", K}, {"p", p}, {"q", q}};
            if (psi) req["psi"] = true;
        } else if (command == "ghost") {
            req = {{"count", count}};
        } else if (command == "eval-c") {
            req = {{"target", target}, {"x", x}};
        } else if (command == "staircase-mutate") {
            json j = load_json(poly);
            if (j.is_object() && j.contains("polygon")) {
                req = j;
                if (o_steps->count() > 0 || !req.contains("steps")) req["steps"] = steps;
            } else {
                req = {{"polygon", j}, {"steps", steps}};
            }
            if (delzant) req["delzant_vertex"] = *delzant;
        } else if (command == "perf-f1") {
            if (scan) {
                req = {{"scan", true}, {"qmax", qmax}, {"xmax", xmax}};
                if (rounds) req["rounds"] = *rounds;
            } else if (strand) {
                req = {{"strand", *strand}};
            } else {
                if (p.empty() || q.empty()) throw stair::error("InvalidRequest", "give --p and --q, --scan or --strand");
                req = {{"p", p}, {"q", q}};
            }
        } else if (command == "balance") {
            req["polygon"] = polygon_of(load_json(poly));
            if (enumerate) req["enumerate"] = *enumerate;
            else if (chop) {
                req["chop_vertex"] = *chop;
                if (!chop_k) throw stair::error("MissingField", "--chop-vertex needs --k", "--k");
                req["k"] = *chop_k;
            } else {
                if (tangencies.empty()) throw stair::error("MissingField", "give --tangencies, --enumerate or --chop-vertex", "--tangencies");
                req["tangencies"] = load_json(tangencies);
            }
        } else if (command == "request") {
            cmd = target;
            req = load_json(body);
        }
        emit(stair::api::handle(cmd, req), compact);
        return 0;
    } catch (const stair::error& e) {
        return fail(e);
    } catch (const std::exception& e) {
        std::cerr << json{{"ok", false}, {"error", {{"code", "InternalError"}, {"message", e.what()}, {"location", nullptr}}}}.dump()
                  << "\n";
        return 1;
    }
}
