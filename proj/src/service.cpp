#include "bipromethee/service.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "bipromethee/errors.hpp"
#include "bipromethee/io.hpp"
#include "bipromethee/ror.hpp"

namespace bipromethee::service {

namespace fs = std::filesystem;

namespace {

bool valid_id(const std::string& id) {
    if (id.empty() || id.size() > 64) return false;
    for (char c : id)
        if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string new_id() {
    static std::mutex mutex;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(mutex);
    std::ostringstream os;
    os << std::hex;
    for (int i = 0; i < 2; ++i) {
        os.width(16);
        os.fill('0');
        os << rng();
    }
    return os.str();
}

std::string now_utc() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json flatten(const json& batches) {
    json out = json::array();
    for (const auto& b : batches)
        for (const auto& s : b) out.push_back(s);
    return out;
}

}  // namespace

std::optional<json> MemoryStore::load(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = docs_.find(id);
    if (it == docs_.end()) return std::nullopt;
    return json::parse(it->second);
}

void MemoryStore::save(const std::string& id, const json& doc) {
    std::lock_guard lock(mutex_);
    docs_[id] = doc.dump();
}

std::vector<std::string> MemoryStore::list() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> ids;
    for (const auto& [id, _] : docs_) ids.push_back(id);
    return ids;
}

DirectoryStore::DirectoryStore(std::string directory) : directory_(std::move(directory)) {
    std::error_code ec;
    fs::create_directories(directory_, ec);
    if (ec || !fs::is_directory(directory_))
        throw ConfigError("cannot use session directory '" + directory_ + "'");
}

std::optional<json> DirectoryStore::load(const std::string& id) const {
    if (!valid_id(id)) return std::nullopt;
    std::lock_guard lock(mutex_);
    std::ifstream in(fs::path(directory_) / (id + ".json"));
    if (!in) return std::nullopt;
    try {
        return json::parse(in);
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

void DirectoryStore::save(const std::string& id, const json& doc) {
    if (!valid_id(id)) throw ValidationError("invalid session id");
    std::lock_guard lock(mutex_);
    const auto target = fs::path(directory_) / (id + ".json");
    const auto tmp = fs::path(directory_) / (id + ".json.tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << doc.dump();
        if (!out) throw Error("failed to write session file");
    }
    fs::rename(tmp, target);
}

std::vector<std::string> DirectoryStore::list() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> ids;
    for (const auto& e : fs::directory_iterator(directory_))
        if (e.path().extension() == ".json") ids.push_back(e.path().stem().string());
    std::sort(ids.begin(), ids.end());
    return ids;
}

Response error_response(int status, const std::string& error, json detail) {
    return {status, {{"error", error}, {"detail", std::move(detail)}}};
}

struct SessionService::Session {
    Session(std::string id_, DecisionProblem problem_, json doc_)
        : id(std::move(id_)), problem(std::move(problem_)), pb(problem), doc(std::move(doc_)) {}

    std::string id;
    DecisionProblem problem;
    BipolarPreferenceMatrix pb;

    std::mutex state;  // guards doc and snapshots
    json doc;
    std::map<std::size_t, RorSnapshot> snapshots;

    // One writer at a time; held across threads while a computation runs.
    std::mutex busy_mutex;
    std::condition_variable busy_cv;
    bool busy = false;

    void acquire() {
        std::unique_lock lock(busy_mutex);
        busy_cv.wait(lock, [&] { return !busy; });
        busy = true;
    }
    void release() {
        {
            std::lock_guard lock(busy_mutex);
            busy = false;
        }
        busy_cv.notify_all();
    }
};

SessionService::SessionService(std::unique_ptr<SessionStore> store, ServiceOptions options)
    : store_(std::move(store)), options_(options) {
    if (!store_) throw ConfigError("session store required");
}

SessionService::~SessionService() { wait_idle(); }

void SessionService::wait_idle() {
    std::vector<std::shared_future<void>> tasks;
    {
        std::lock_guard lock(tasks_mutex_);
        tasks.swap(tasks_);
    }
    for (auto& t : tasks) t.wait();
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) {
    if (!valid_id(id)) return nullptr;
    std::lock_guard lock(sessions_mutex_);
    if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;
    auto doc = store_->load(id);
    if (!doc) return nullptr;
    try {
        auto problem = io::problem_from_json(doc->at("problem"));
        for (auto& it : (*doc)["iterations"])
            if (it["status"] == "pending") {
                it["status"] = "error";
                it["error"] = "computation interrupted";
            }
        auto s = std::make_shared<Session>(id, std::move(problem), std::move(*doc));
        sessions_[id] = s;
        return s;
    } catch (const std::exception&) {
        return nullptr;
    }
}

Response SessionService::health() const { return {200, {{"status", "ok"}}}; }

Response SessionService::create_session(const json& body) {
    std::optional<DecisionProblem> problem;
    try {
        problem.emplace(io::problem_from_json(body));
    } catch (const Error& e) {
        return error_response(400, "invalid_problem", {{"message", e.what()}});
    } catch (const json::exception& e) {
        return error_response(400, "invalid_problem", {{"message", e.what()}});
    }
    const auto id = new_id();
    const auto ts = now_utc();
    json doc{{"id", id},
             {"created", ts},
             {"updated", ts},
             {"problem", io::problem_to_json(*problem)},
             {"iterations", json::array({json{{"iteration", 0},
                                              {"action", "create"},
                                              {"batches", json::array()},
                                              {"status", "lazy"},
                                              {"elicitation", nullptr},
                                              {"snapshot", nullptr}}})}};
    store_->save(id, doc);
    {
        std::lock_guard lock(sessions_mutex_);
        sessions_[id] = std::make_shared<Session>(id, std::move(*problem), std::move(doc));
    }
    return {201, {{"id", id}, {"location", "/sessions/" + id}}};
}

Response SessionService::add_statements(const std::string& id, const json& body) {
    auto s = find(id);
    if (!s) return error_response(404, "unknown_session", {{"id", id}});
    json batch;
    try {
        const auto parsed = io::statements_from_json(body, s->problem);
        if (parsed.empty()) return error_response(400, "invalid_statements", {{"message", "no statements given"}});
        const auto signs_ok = [&] {
            // magnitude comparisons need declared signs among all statements in force
            std::lock_guard lock(s->state);
            auto all = io::statements_from_json(flatten(s->doc["iterations"].back()["batches"]), s->problem);
            all.insert(all.end(), parsed.begin(), parsed.end());
            return all;
        }();
        const auto signs = declared_interaction_signs(signs_ok);
        for (const auto& st : parsed) statement_to_constraints(st, s->pb, signs);
        batch = io::statements_to_json(parsed, s->problem);
    } catch (const Error& e) {
        return error_response(400, "invalid_statements", {{"message", e.what()}});
    } catch (const json::exception& e) {
        return error_response(400, "invalid_statements", {{"message", e.what()}});
    }
    return start_iteration(s, "add", {batch});
}

Response SessionService::retract_last(const std::string& id) {
    auto s = find(id);
    if (!s) return error_response(404, "unknown_session", {{"id", id}});
    return start_iteration(s, "retract", {});
}

Response SessionService::start_iteration(const std::shared_ptr<Session>& s, const std::string& action,
                                         std::vector<json> new_batch) {
    s->acquire();
    std::size_t k = 0;
    try {
        std::lock_guard lock(s->state);
        auto& iterations = s->doc["iterations"];
        json batches = iterations.back()["batches"];
        if (new_batch.empty()) {
            if (batches.empty()) {
                s->release();
                return error_response(409, "nothing_to_retract", {{"id", s->id}});
            }
            batches.erase(batches.size() - 1);
        } else {
            batches.push_back(new_batch.front());
        }
        k = iterations.size();
        iterations.push_back({{"iteration", k},
                              {"action", action},
                              {"batches", batches},
                              {"status", "pending"},
                              {"elicitation", nullptr},
                              {"snapshot", nullptr}});
        s->doc["updated"] = now_utc();
        store_->save(s->id, s->doc);
    } catch (...) {
        s->release();
        throw;
    }

    auto task = std::async(std::launch::async, [this, s, k] {
        run_iteration(*s, k);
        s->release();
    }).share();
    {
        std::lock_guard lock(tasks_mutex_);
        std::erase_if(tasks_, [](const std::shared_future<void>& f) {
            return f.wait_for(std::chrono::seconds(0)) == std::future_status::ready;
        });
    }
    if (task.wait_for(options_.async_after) == std::future_status::ready) return iteration_response(*s, k);
    {
        std::lock_guard lock(tasks_mutex_);
        tasks_.push_back(task);
    }
    const auto location = "/sessions/" + s->id + "/snapshots/" + std::to_string(k);
    return {202, {{"id", s->id}, {"iteration", k}, {"status", "pending"}, {"location", location}}};
}

void SessionService::ensure_base(Session& s) {
    {
        std::lock_guard lock(s.state);
        if (s.doc["iterations"][0]["status"] != "lazy") return;
    }
    json elicitation, snapshot;
    std::string status = "consistent";
    std::optional<RorSnapshot> snap;
    try {
        const auto result = constructive_elicitation({}, s.pb, {options_.eps_threshold});
        elicitation = io::elicitation_to_json(result, {}, s.problem);
        snap = ror_snapshot({}, s.pb, nullptr, {options_.eps_threshold, options_.threads});
        snapshot = io::snapshot_to_json(*snap, s.problem);
    } catch (const std::exception& e) {
        status = "error";
        elicitation = {{"message", e.what()}};
    }
    std::lock_guard lock(s.state);
    auto& it = s.doc["iterations"][0];
    it["status"] = status;
    it["elicitation"] = elicitation;
    it["snapshot"] = snapshot;
    if (snap) s.snapshots[0] = std::move(*snap);
    store_->save(s.id, s.doc);
}

void SessionService::run_iteration(Session& s, std::size_t k) {
    json update = json::object();
    try {
        ensure_base(s);
        json batches;
        std::optional<RorSnapshot> previous;
        {
            std::lock_guard lock(s.state);
            const auto& iterations = s.doc["iterations"];
            batches = iterations[k]["batches"];
            for (std::size_t p = k; p-- > 0;) {
                if (iterations[p]["status"] != "consistent") continue;
                if (auto c = s.snapshots.find(p); c != s.snapshots.end())
                    previous = c->second;
                else
                    previous = io::snapshot_from_json(iterations[p]["snapshot"], s.problem);
                break;
            }
        }
        const auto statements = io::statements_from_json(flatten(batches), s.problem);
        const auto result = constructive_elicitation(statements, s.pb, {options_.eps_threshold});
        update["elicitation"] = io::elicitation_to_json(result, statements, s.problem);
        if (result.level == ModelLevel::Inconsistent) {
            update["status"] = "inconsistent";
        } else {
            auto snap = ror_snapshot(statements, s.pb, previous ? &*previous : nullptr,
                                     {options_.eps_threshold, options_.threads});
            snap.iteration = k;
            update["snapshot"] = io::snapshot_to_json(snap, s.problem);
            update["status"] = "consistent";
            std::lock_guard lock(s.state);
            s.snapshots[k] = std::move(snap);
        }
    } catch (const LinearizationError& e) {
        update["status"] = "untranslatable";
        update["error"] = e.what();
    } catch (const std::exception& e) {
        update["status"] = "error";
        update["error"] = e.what();
    }
    std::lock_guard lock(s.state);
    auto& it = s.doc["iterations"][k];
    for (auto& [key, value] : update.items()) it[key] = value;
    s.doc["updated"] = now_utc();
    try {
        store_->save(s.id, s.doc);
    } catch (const std::exception&) {
        // the in-memory copy stays authoritative
    }
}

Response SessionService::iteration_response(Session& s, std::size_t k) {
    std::lock_guard lock(s.state);
    const auto& it = s.doc["iterations"][k];
    const std::string status = it["status"];
    if (status == "consistent")
        return {200, {{"id", s.id}, {"iteration", k}, {"action", it["action"]},
                      {"elicitation", it["elicitation"]}, {"snapshot", it["snapshot"]}}};
    if (status == "inconsistent")
        return error_response(409, "inconsistent_statements",
                              {{"iteration", k},
                               {"elicitation", it["elicitation"]},
                               {"infeasibility_hint", it["elicitation"]["infeasibility_hint"]}});
    if (status == "untranslatable")
        return error_response(409, "untranslatable_statements", {{"iteration", k}, {"message", it["error"]}});
    if (status == "pending")
        return {202, {{"id", s.id}, {"iteration", k}, {"status", "pending"},
                      {"location", "/sessions/" + s.id + "/snapshots/" + std::to_string(k)}}};
    return error_response(500, "computation_failed", {{"iteration", k}, {"message", it.value("error", json(""))}});
}

Response SessionService::get_snapshot(const std::string& id, std::size_t k) {
    auto s = find(id);
    if (!s) return error_response(404, "unknown_session", {{"id", id}});
    bool lazy = false;
    {
        std::lock_guard lock(s->state);
        const auto& iterations = s->doc["iterations"];
        if (k >= iterations.size())
            return error_response(404, "unknown_iteration", {{"iteration", k}, {"count", iterations.size()}});
        lazy = iterations[k]["status"] == "lazy";
    }
    if (lazy) {
        s->acquire();
        try {
            ensure_base(*s);
        } catch (...) {
            s->release();
            throw;
        }
        s->release();
    }
    std::lock_guard lock(s->state);
    const auto& it = s->doc["iterations"][k];
    const std::string status = it["status"];
    if (status == "consistent") return {200, it["snapshot"]};
    if (status == "pending")
        return {202, {{"id", s->id}, {"iteration", k}, {"status", "pending"},
                      {"location", "/sessions/" + s->id + "/snapshots/" + std::to_string(k)}}};
    if (status == "untranslatable")
        return error_response(409, "untranslatable_statements", {{"iteration", k}, {"message", it["error"]}});
    if (status == "inconsistent")
        return error_response(409, "inconsistent_statements",
                              {{"iteration", k}, {"infeasibility_hint", it["elicitation"]["infeasibility_hint"]}});
    return error_response(500, "computation_failed", {{"iteration", k}, {"message", it.value("error", json(""))}});
}

Response SessionService::get_session(const std::string& id) {
    auto s = find(id);
    if (!s) return error_response(404, "unknown_session", {{"id", id}});
    std::lock_guard lock(s->state);
    json iterations = json::array();
    for (const auto& it : s->doc["iterations"]) {
        json summary{{"iteration", it["iteration"]},
                     {"action", it["action"]},
                     {"status", it["status"]},
                     {"statements", flatten(it["batches"])},
                     {"batch_count", it["batches"].size()}};
        if (it["elicitation"].is_object() && it["elicitation"].contains("level")) {
            summary["level"] = it["elicitation"]["level"];
            summary["epsilon"] = it["elicitation"]["epsilon"];
        }
        iterations.push_back(summary);
    }
    return {200, {{"id", s->id},
                  {"created", s->doc["created"]},
                  {"updated", s->doc["updated"]},
                  {"problem", s->doc["problem"]},
                  {"iterations", iterations}}};
}

}  // namespace bipromethee::service
