#pragma once

// HTTP transport for the JSON api: POST /api/v1/<command>, GET /api/v1/health.

#include "json_api.hpp"

#include <httplib.h>

namespace stair::api {

inline bool is_internal(const error& e) { return e.code == "InternalInconsistency"; }

inline void set_cors(httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
}

inline void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    set_cors(res);
    res.set_content(body.dump(), "application/json");
}

inline void install_routes(httplib::Server& srv) {
    srv.Get("/api/v1/health", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, json{{"ok", true}}); });
    srv.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
        set_cors(res);
        res.status = 204;
    });
    srv.Post(R"(/api/v1/([A-Za-z0-9_\-]+))", [](const httplib::Request& req, httplib::Response& res) {
        std::string cmd = req.matches[1];
        if (!commands().count(cmd)) {
            reply(res, 404, json{{"ok", false}, {"error", error_json(error("UnknownCommand", "unknown command '" + cmd + "'"))}});
            return;
        }
        try {
            json body = parse_body(req.body.empty() ? "{}" : req.body);
            reply(res, 200, json{{"ok", true}, {"result", handle(cmd, body)}});
        } catch (const error& e) {
            reply(res, is_internal(e) ? 500 : 400, json{{"ok", false}, {"error", error_json(e)}});
        } catch (const std::exception& e) {
            reply(res, 500, json{{"ok", false}, {"error", error_json(error("InternalError", e.what()))}});
        }
    });
    srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (!res.body.empty()) return;
        reply(res, res.status, json{{"ok", false}, {"error", {{"code", res.status == 404 ? "NotFound" : "HttpError"},
                                                               {"message", httplib::status_message(res.status)},
                                                               {"location", nullptr}}}});
    });
}

}  // namespace stair::api
