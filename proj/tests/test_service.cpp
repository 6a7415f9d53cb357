#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "normdyn/engine.hpp"
#include "normdyn/report.hpp"
#include "normdyn/service.hpp"

#include <thread>

using namespace normdyn;
using nlohmann::json;

TEST_CASE("analyze with default params") {
  Service svc;
  const auto reply = svc.analyze(R"({"params": {}})");
  REQUIRE(reply.status == 200);
  const auto body = json::parse(reply.body);
  CHECK(body["gradient"].size() == 101);
  CHECK(body["sigma"].size() == 101);
  CHECK(body["regime"].is_string());
  CHECK(body["interior_roots"].is_array());
  CHECK(body["params"]["Z"] == 100);
  CHECK(body["params"]["mu"] == 0.1);
}

TEST_CASE("service and engine agree numerically") {
  Service svc;
  Params p;
  p.N = 7;
  p.c = 0.02;
  const auto reply = svc.analyze(json{{"params", {{"N", 7}, {"c", 0.02}}}}.dump());
  REQUIRE(reply.status == 200);
  const auto body = json::parse(reply.body);
  const auto direct = result_to_json(analyze(p));
  CHECK(body["gradient"] == direct["gradient"]);
  CHECK(body["sigma"] == direct["sigma"]);
  CHECK(body["regime"] == direct["regime"]);
}

TEST_CASE("extremal settings through the service") {
  Service svc;
  CHECK(json::parse(svc.analyze(R"({"params": {"c": 1, "r": 0.8, "m": 0.8}})").body)["regime"] == "ALL_DEFECT");
  CHECK(json::parse(svc.analyze(R"({"params": {"c": 0, "r": 0.7, "m": 0.7}})").body)["regime"] == "ALL_COOPERATE");
  CHECK(json::parse(svc.analyze(R"({"params": {"c": 0.2, "r": 0}})").body)["regime"] == "ALL_DEFECT");
}

TEST_CASE("malformed payloads yield field errors") {
  Service svc;
  auto reply = svc.analyze("{nope");
  CHECK(reply.status == 400);
  CHECK(json::parse(reply.body)["error"].is_array());

  reply = svc.analyze(R"({"params": {"mu": 2}})");
  CHECK(reply.status == 400);
  const auto err = json::parse(reply.body)["error"][0];
  CHECK(err["field"] == "params.mu");
  CHECK(err["message"].get<std::string>().find("[0,1]") != std::string::npos);

  reply = svc.analyze(R"({"params": {"N": 1.5}})");
  CHECK(reply.status == 400);
  reply = svc.analyze(R"({"parameters": {}})");
  CHECK(reply.status == 400);
  CHECK(json::parse(reply.body)["error"][0]["field"] == "parameters");
}

TEST_CASE("sweep endpoint and cell budget") {
  Service svc(ServiceOptions{100, 1'000'000});
  auto reply = svc.sweep(R"({"params": {"Z": 20, "c": 0.01, "p_star": 0.5},
                             "x_axis": {"axis": "r"}, "y_axis": {"axis": "m"}, "resolution": 5})");
  REQUIRE(reply.status == 200);
  const auto body = json::parse(reply.body);
  CHECK(body["cells"].size() == 5);
  CHECK(body["cells"][0].size() == 5);
  CHECK(body["x_axis"]["axis"] == "r");

  reply = svc.sweep(R"({"resolution": 11})");
  CHECK(reply.status == 400);
  CHECK(json::parse(reply.body)["error"][0]["field"] == "resolution");

  reply = svc.sweep(R"({"x_axis": {"axis": "c"}, "y_axis": {"axis": "c"}, "resolution": 3})");
  CHECK(reply.status == 400);
}

TEST_CASE("simulate endpoint") {
  Service svc(ServiceOptions{10'000, 100'000});
  auto reply = svc.simulate(R"({"params": {"Z": 20}, "steps": 20000, "seed": 3})");
  REQUIRE(reply.status == 200);
  const auto body = json::parse(reply.body);
  CHECK(body["occupancy"].size() == 21);
  CHECK(body["meta"]["rng"] == "mt19937_64");
  CHECK(svc.simulate(R"({"params": {"Z": 20}, "steps": 20000, "seed": 3})").body == reply.body);

  CHECK(svc.simulate(R"({"steps": 1000000})").status == 400);
  CHECK(svc.simulate(R"({"mode": "wright_fisher"})").status == 400);
}

TEST_CASE("health") {
  Service svc;
  const auto body = json::parse(svc.health().body);
  CHECK(body["status"] == "ok");
  CHECK(body["version"].is_string());
}

TEST_CASE("routes over HTTP") {
  Service svc;
  const int port = svc.bind_ephemeral("127.0.0.1");
  REQUIRE(port > 0);
  std::thread server([&] { svc.listen_after_bind(); });
  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(30, 0);

  auto health = client.Get("/api/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(json::parse(health->body)["status"] == "ok");

  auto analyze = client.Post("/api/analyze", R"({"params": {"Z": 30}})", "application/json");
  REQUIRE(analyze);
  CHECK(analyze->status == 200);
  CHECK(json::parse(analyze->body)["sigma"].size() == 31);

  auto bad = client.Post("/api/analyze", R"({"params": {"mu": -1}})", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  auto sweep = client.Post("/api/sweep", R"({"params": {"Z": 20}, "resolution": 3})", "application/json");
  REQUIRE(sweep);
  CHECK(sweep->status == 200);

  auto sim = client.Post("/api/simulate", R"({"params": {"Z": 20}, "steps": 1000})", "application/json");
  REQUIRE(sim);
  CHECK(sim->status == 200);

  svc.stop();
  server.join();
}
