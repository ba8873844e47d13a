#pragma once

#include <chrono>
#include <condition_variable>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bipromethee/lp.hpp"

namespace bipromethee::service {

using nlohmann::json;

/// Key-value persistence of session documents.
class SessionStore {
public:
    virtual ~SessionStore() = default;
    virtual std::optional<json> load(const std::string& id) const = 0;
    virtual void save(const std::string& id, const json& doc) = 0;
    virtual std::vector<std::string> list() const = 0;
};

class MemoryStore final : public SessionStore {
public:
    std::optional<json> load(const std::string& id) const override;
    void save(const std::string& id, const json& doc) override;
    std::vector<std::string> list() const override;

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::string> docs_;
};

/// One `<id>.json` file per session, replaced atomically on save.
class DirectoryStore final : public SessionStore {
public:
    explicit DirectoryStore(std::string directory);
    std::optional<json> load(const std::string& id) const override;
    void save(const std::string& id, const json& doc) override;
    std::vector<std::string> list() const override;

private:
    std::string directory_;
    mutable std::mutex mutex_;
};

struct Response {
    int status = 200;
    json body;
};

struct ServiceOptions {
    double eps_threshold = kDefaultEpsThreshold;
    /// Computations still running after this reply 202 and finish in the background.
    std::chrono::milliseconds async_after{2000};
    unsigned threads = 0;
};

/// Transport-independent session logic behind the HTTP API.
class SessionService {
public:
    explicit SessionService(std::unique_ptr<SessionStore> store, ServiceOptions options = {});
    ~SessionService();

    SessionService(const SessionService&) = delete;
    SessionService& operator=(const SessionService&) = delete;

    Response create_session(const json& problem);
    Response add_statements(const std::string& id, const json& statements);
    Response retract_last(const std::string& id);
    Response get_snapshot(const std::string& id, std::size_t iteration);
    Response get_session(const std::string& id);
    Response health() const;

    /// Blocks until no background computation is running.
    void wait_idle();

private:
    struct Session;

    std::unique_ptr<SessionStore> store_;
    ServiceOptions options_;
    std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::mutex tasks_mutex_;
    std::vector<std::shared_future<void>> tasks_;

    std::shared_ptr<Session> find(const std::string& id);
    Response start_iteration(const std::shared_ptr<Session>& s, const std::string& action,
                             std::vector<json> batches);
    void run_iteration(Session& s, std::size_t k);
    void ensure_base(Session& s);
    Response iteration_response(Session& s, std::size_t k);
};

Response error_response(int status, const std::string& error, json detail = json::object());

}  // namespace bipromethee::service
