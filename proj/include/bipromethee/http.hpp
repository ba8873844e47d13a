#pragma once

#include <string>

#include "bipromethee/service.hpp"

namespace httplib {
class Server;
}

namespace bipromethee::service {

/// Registers the JSON routes of `service` on `server`.
void mount_routes(httplib::Server& server, SessionService& service);

struct ServerConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    /// Served at "/" when non-empty.
    std::string static_dir;
};

/// Blocks serving requests until the server stops. Returns false if binding fails.
bool run_server(SessionService& service, const ServerConfig& config);

}  // namespace bipromethee::service
