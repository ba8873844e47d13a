#include "bipromethee/http.hpp"

#include <httplib.h>

namespace bipromethee::service {

namespace {

void send(httplib::Response& res, const Response& r) {
    res.status = r.status;
    if (r.status == 202 && r.body.contains("location"))
        res.set_header("Location", r.body["location"].get<std::string>());
    res.set_content(r.body.dump(), "application/json");
}

template <class F>
void guarded(httplib::Response& res, F&& f) {
    try {
        send(res, f());
    } catch (const std::exception& e) {
        send(res, error_response(500, "internal_error", {{"message", e.what()}}));
    }
}

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
    try {
        return json::parse(req.body);
    } catch (const json::parse_error& e) {
        send(res, error_response(400, "invalid_json", {{"message", e.what()}}));
        return std::nullopt;
    }
}

}  // namespace

void mount_routes(httplib::Server& server, SessionService& service) {
    server.Get("/healthz", [&](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] { return service.health(); });
    });
    server.Post("/sessions", [&](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req, res);
        if (body) guarded(res, [&] { return service.create_session(*body); });
    });
    server.Post(R"(/sessions/([^/]+)/statements)", [&](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req, res);
        if (body) guarded(res, [&] { return service.add_statements(req.matches[1], *body); });
    });
    server.Delete(R"(/sessions/([^/]+)/statements/last)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return service.retract_last(req.matches[1]); });
    });
    server.Get(R"(/sessions/([^/]+)/snapshots/(\d{1,9}))", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return service.get_snapshot(req.matches[1], std::stoul(req.matches[2])); });
    });
    server.Get(R"(/sessions/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return service.get_session(req.matches[1]); });
    });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            const auto r = error_response(res.status, res.status == 404 ? "not_found" : "http_error");
            res.set_content(r.body.dump(), "application/json");
        }
    });
}

bool run_server(SessionService& service, const ServerConfig& config) {
    httplib::Server server;
    mount_routes(server, service);
    if (!config.static_dir.empty() && !server.set_mount_point("/", config.static_dir)) return false;
    return server.listen(config.host, config.port);
}

}  // namespace bipromethee::service
