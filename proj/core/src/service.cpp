#include "normdyn/service.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>

#include "httplib.h"
#include "normdyn/config.hpp"
#include "normdyn/engine.hpp"
#include "normdyn/errors.hpp"
#include "normdyn/report.hpp"
#include "normdyn/version.hpp"

namespace normdyn {

using nlohmann::json;

namespace {

HttpReply bad_request(const std::vector<FieldError>& errors) {
  json list = json::array();
  for (const auto& e : errors) list.push_back({{"field", e.field}, {"message", e.message}});
  return {400, json{{"error", list}}.dump()};
}

json parse_body(const std::string& body) {
  json doc;
  try {
    doc = json::parse(body.empty() ? std::string("{}") : body);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::vector<FieldError>{{"$", std::string("malformed JSON: ") + e.what()}});
  }
  if (!doc.is_object()) throw ConfigError(std::vector<FieldError>{{"$", "expected a JSON object"}});
  return doc;
}

void reject_unknown(const json& doc, std::initializer_list<const char*> allowed, std::vector<FieldError>& errors) {
  for (const auto& [key, _] : doc.items())
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end())
      errors.push_back({key, "unknown key"});
}

Params request_params(const json& doc, std::vector<FieldError>& errors) {
  Params p = params_from_json(doc.value("params", json()), "params", errors);
  if (errors.empty()) {
    try {
      validate(p);
    } catch (const ValidationError& e) {
      errors.push_back({e.field(), e.reason()});
    }
  }
  return p;
}

}  // namespace

Service::Service(ServiceOptions options) : options_(options) {}
Service::~Service() = default;

HttpReply Service::internal_error(const char* where, const std::exception& e) const {
  char ref[32];
  const auto now = std::chrono::system_clock::now().time_since_epoch().count();
  std::snprintf(ref, sizeof ref, "%08lx-%04lx", static_cast<unsigned long>(now) & 0xffffffffUL,
                ++error_seq_ & 0xffffUL);
  std::cerr << "normdyn service: " << where << " failed [" << ref << "]: " << e.what() << '\n';
  return {500, json{{"error", json::array({{{"field", nullptr}, {"message", "internal error"}, {"reference", ref}}})}}
                   .dump()};
}

HttpReply Service::analyze(const std::string& body) const {
  try {
    const json doc = parse_body(body);
    std::vector<FieldError> errors;
    reject_unknown(doc, {"params"}, errors);
    const Params p = request_params(doc, errors);
    if (errors.empty() && p.mu <= 0.0) errors.push_back({"params.mu", "must be > 0 for a unique stationary distribution"});
    if (!errors.empty()) return bad_request(errors);
    json out = result_to_json(normdyn::analyze(p));
    out["params"] = params_to_json(p);
    out["meta"] = {{"engine", "normdyn"}, {"version", kVersion}};
    return {200, out.dump()};
  } catch (const ConfigError& e) {
    return bad_request(e.errors());
  } catch (const std::exception& e) {
    return internal_error("analyze", e);
  }
}

HttpReply Service::sweep(const std::string& body) const {
  try {
    const json doc = parse_body(body);
    std::vector<FieldError> errors;
    reject_unknown(doc, {"params", "x_axis", "y_axis", "resolution"}, errors);
    const Params p = request_params(doc, errors);
    AxisSpec x{Axis::r, 0.0, 1.0}, y{Axis::m, 0.0, 1.0};
    if (doc.contains("x_axis")) x = axis_from_json(doc["x_axis"], "x_axis", x, errors);
    if (doc.contains("y_axis")) y = axis_from_json(doc["y_axis"], "y_axis", y, errors);
    int resolution = kDefaultSweepResolution;
    if (doc.contains("resolution")) {
      if (doc["resolution"].is_number_integer())
        resolution = doc["resolution"].get<int>();
      else
        errors.push_back({"resolution", "expected an integer"});
    }
    if (errors.empty() && resolution >= 2 &&
        static_cast<std::size_t>(resolution) * resolution > options_.max_sweep_cells)
      errors.push_back({"resolution", "grid of " + std::to_string(resolution) + "x" + std::to_string(resolution) +
                                          " cells exceeds the budget of " +
                                          std::to_string(options_.max_sweep_cells)});
    if (errors.empty() && p.mu <= 0.0) errors.push_back({"params.mu", "must be > 0 for regime classification"});
    if (!errors.empty()) return bad_request(errors);
    SweepGrid grid;
    try {
      grid = normdyn::sweep(p, x, y, resolution);
    } catch (const ValidationError& e) {
      return bad_request({{e.field(), e.reason()}});
    }
    json out = result_to_json(grid);
    out["params"] = params_to_json(p);
    out["meta"] = {{"engine", "normdyn"}, {"version", kVersion}};
    return {200, out.dump()};
  } catch (const ConfigError& e) {
    return bad_request(e.errors());
  } catch (const std::exception& e) {
    return internal_error("sweep", e);
  }
}

HttpReply Service::simulate(const std::string& body) const {
  try {
    const json doc = parse_body(body);
    std::vector<FieldError> errors;
    reject_unknown(doc,
                   {"params", "steps", "burn_in", "seed", "mode", "mutation", "initial_cooperators", "group_draws",
                    "thresholds"},
                   errors);
    // Reuse the configuration reader for the simulate section.
    json cfg_doc = {{"command", "simulate"}, {"params", doc.value("params", json::object())}};
    json section = json::object();
    for (const char* key : {"steps", "burn_in", "seed", "mode", "mutation", "initial_cooperators", "group_draws",
                            "thresholds"})
      if (doc.contains(key)) section[key] = doc[key];
    cfg_doc["simulate"] = section;
    if (!errors.empty()) return bad_request(errors);
    const RunSpec spec = parse_config(cfg_doc.dump());
    if (spec.sim.steps > options_.max_sim_steps)
      return bad_request({{"steps", "exceeds the budget of " + std::to_string(options_.max_sim_steps) + " events"}});
    SimulateResult r;
    r.sim = run_simulation(spec.sim);
    json out = result_to_json(r, spec.sim);
    out["params"] = params_to_json(spec.params);
    out["meta"] = run_meta(spec);
    return {200, out.dump()};
  } catch (const ConfigError& e) {
    return bad_request(e.errors());
  } catch (const std::exception& e) {
    return internal_error("simulate", e);
  }
}

HttpReply Service::health() const {
  return {200, json{{"status", "ok"}, {"engine", "normdyn"}, {"version", kVersion}}.dump()};
}

void Service::install_routes() {
  server_ = std::make_unique<httplib::Server>();
  const auto reply = [](httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server_->Post("/api/analyze",
                [this, reply](const httplib::Request& req, httplib::Response& res) { reply(res, analyze(req.body)); });
  server_->Post("/api/sweep",
                [this, reply](const httplib::Request& req, httplib::Response& res) { reply(res, sweep(req.body)); });
  server_->Post("/api/simulate",
                [this, reply](const httplib::Request& req, httplib::Response& res) { reply(res, simulate(req.body)); });
  server_->Get("/api/health", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, health()); });
  // The explorer UI is served from another origin during development.
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server_->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

bool Service::listen(const std::string& host, int port) {
  install_routes();
  return server_->listen(host, port);
}

int Service::bind_ephemeral(const std::string& host) {
  install_routes();
  return server_->bind_to_any_port(host);
}

bool Service::listen_after_bind() { return server_->listen_after_bind(); }

void Service::stop() {
  if (server_) server_->stop();
}

}  // namespace normdyn
