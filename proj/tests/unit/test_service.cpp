#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <thread>

#include "bipromethee/http.hpp"
#include "bipromethee/io.hpp"
#include "bipromethee/service.hpp"

using namespace bipromethee;
using namespace bipromethee::service;

namespace {

const std::string kData = BIPROMETHEE_DATA_DIR;

json students() { return io::read_json_file(kData + "/students.json"); }
json batch1() { return io::read_json_file(kData + "/statements_iter1.json"); }
json batch2() { return io::read_json_file(kData + "/statements_iter2.json"); }

json contradiction() {
    return json::array({{{"type", "local_preference"}, {"a", "s2"}, {"b", "s3"}},
                        {{"type", "local_indifference"}, {"a", "s2"}, {"b", "s3"}}});
}

std::unique_ptr<SessionService> memory_service() {
    return std::make_unique<SessionService>(std::make_unique<MemoryStore>());
}

std::string create(SessionService& svc) {
    const auto r = svc.create_session(students());
    REQUIRE(r.status == 201);
    return r.body["id"];
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("bipromethee-test-" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "-" +
                std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("session lifecycle") {
    auto svc = memory_service();
    CHECK(svc->health().status == 200);
    const auto id = create(*svc);

    const auto base = svc->get_snapshot(id, 0);
    CHECK(base.status == 200);
    CHECK(base.body["iteration"] == 0);

    const auto r1 = svc->add_statements(id, batch1());
    REQUIRE(r1.status == 200);
    CHECK(r1.body["iteration"] == 1);
    CHECK(r1.body["elicitation"]["level"] == "bipolar");
    CHECK(r1.body["snapshot"]["matrices"]["necessary_local"][6][0] == 1);

    const auto r2 = svc->add_statements(id, batch2());
    REQUIRE(r2.status == 200);
    CHECK(r2.body["iteration"] == 2);
    CHECK(r2.body["snapshot"]["matrices"]["possible_local"][0][3] == 0);
    const auto& lost = r2.body["snapshot"]["diff"]["lost_possible"]["local"];
    CHECK(std::find(lost.begin(), lost.end(), json::array({"s1", "s4"})) != lost.end());

    const auto session = svc->get_session(id);
    REQUIRE(session.status == 200);
    CHECK(session.body["iterations"].size() == 3);
    CHECK(session.body["iterations"][2]["statements"].size() == 4);
}

TEST_CASE("error statuses") {
    auto svc = memory_service();
    CHECK(svc->create_session(json{{"alternatives", json::array()}}).status == 400);
    CHECK(svc->add_statements("abc123", batch1()).status == 404);
    CHECK(svc->add_statements("../etc", batch1()).status == 404);
    const auto id = create(*svc);
    CHECK(svc->get_snapshot(id, 7).status == 404);
    CHECK(svc->get_snapshot(id, 7).body["error"] == "unknown_iteration");
    CHECK(svc->retract_last(id).status == 409);
    CHECK(svc->add_statements(id, json::array({{{"type", "local_preference"}, {"a", "s1"}, {"b", "zz"}}})).status == 400);
    CHECK(svc->add_statements(id, json::array()).status == 400);
    const auto untranslatable =
        svc->add_statements(id, json::array({{{"type", "interaction_stronger"}, {"pair1", {"M", "Ph"}}, {"pair2", {"Ph", "L"}}}}));
    CHECK(untranslatable.status == 400);
}

TEST_CASE("conflict then retract restores the previous matrices byte for byte") {
    auto svc = memory_service();
    const auto id = create(*svc);
    REQUIRE(svc->add_statements(id, batch1()).status == 200);
    const auto before = svc->get_snapshot(id, 1);
    REQUIRE(before.status == 200);

    const auto bad = svc->add_statements(id, contradiction());
    CHECK(bad.status == 409);
    CHECK(bad.body["error"] == "inconsistent_statements");
    const auto& hint = bad.body["detail"]["infeasibility_hint"];
    REQUIRE(hint.size() == 1);
    CHECK(hint[0]["conflict"] == json::array({2, 3}));
    CHECK(svc->get_snapshot(id, 2).status == 409);

    const auto restored = svc->retract_last(id);
    REQUIRE(restored.status == 200);
    CHECK(restored.body["iteration"] == 3);
    CHECK(restored.body["snapshot"]["matrices"].dump() == before.body["matrices"].dump());
    CHECK(restored.body["snapshot"]["statements"].dump() == before.body["statements"].dump());

    const auto a = svc->get_snapshot(id, 3).body.dump();
    const auto b = svc->get_snapshot(id, 3).body.dump();
    CHECK(a == b);
}

TEST_CASE("directory store survives a restart") {
    TempDir dir;
    std::string id;
    std::string snapshot;
    {
        SessionService svc(std::make_unique<DirectoryStore>(dir.path.string()));
        id = create(svc);
        REQUIRE(svc.add_statements(id, batch1()).status == 200);
        snapshot = svc.get_snapshot(id, 1).body.dump();
    }
    CHECK(std::filesystem::exists(dir.path / (id + ".json")));
    SessionService again(std::make_unique<DirectoryStore>(dir.path.string()));
    const auto r = again.get_snapshot(id, 1);
    REQUIRE(r.status == 200);
    CHECK(r.body.dump() == snapshot);
    CHECK(again.add_statements(id, batch2()).status == 200);
    CHECK(again.get_session(id).body["iterations"].size() == 3);
}

TEST_CASE("slow computations answer 202 and can be polled") {
    ServiceOptions opt;
    opt.async_after = std::chrono::milliseconds(0);
    SessionService svc(std::make_unique<MemoryStore>(), opt);
    const auto id = create(svc);
    const auto r = svc.add_statements(id, batch1());
    if (r.status == 202) {
        CHECK(r.body["location"] == "/sessions/" + id + "/snapshots/1");
        svc.wait_idle();
    }
    CHECK(svc.get_snapshot(id, 1).status == 200);
}

TEST_CASE("http routes") {
    SessionService svc(std::make_unique<MemoryStore>());
    httplib::Server server;
    mount_routes(server, svc);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto health = client.Get("/healthz");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(health->get_header_value("Content-Type") == "application/json");

    auto created = client.Post("/sessions", students().dump(), "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    const std::string id = json::parse(created->body)["id"];

    auto garbage = client.Post("/sessions", "{not json", "application/json");
    REQUIRE(garbage);
    CHECK(garbage->status == 400);
    CHECK(json::parse(garbage->body)["error"] == "invalid_json");

    auto added = client.Post("/sessions/" + id + "/statements", batch1().dump(), "application/json");
    REQUIRE(added);
    CHECK(added->status == 200);

    auto conflict = client.Post("/sessions/" + id + "/statements", contradiction().dump(), "application/json");
    REQUIRE(conflict);
    CHECK(conflict->status == 409);
    CHECK(json::parse(conflict->body).contains("detail"));

    auto retracted = client.Delete("/sessions/" + id + "/statements/last");
    REQUIRE(retracted);
    CHECK(retracted->status == 200);

    auto snap1 = client.Get("/sessions/" + id + "/snapshots/1");
    auto snap1again = client.Get("/sessions/" + id + "/snapshots/1");
    REQUIRE(snap1);
    REQUIRE(snap1again);
    CHECK(snap1->status == 200);
    CHECK(snap1->body == snap1again->body);

    auto missing = client.Get("/sessions/ffff/snapshots/0");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    CHECK(json::parse(missing->body)["error"] == "unknown_session");

    auto nowhere = client.Get("/nowhere");
    REQUIRE(nowhere);
    CHECK(nowhere->status == 404);
    CHECK(json::parse(nowhere->body).contains("error"));

    auto session = client.Get("/sessions/" + id);
    REQUIRE(session);
    CHECK(json::parse(session->body)["iterations"].size() == 4);

    server.stop();
    worker.join();
}
