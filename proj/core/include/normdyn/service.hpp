#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <string>

namespace httplib {
class Server;
}

namespace normdyn {

struct ServiceOptions {
  std::size_t max_sweep_cells = 10'000;
  long max_sim_steps = 50'000'000;
};

struct HttpReply {
  int status = 200;
  std::string body;  // JSON
};

/// Stateless request handlers for the compute service. Each call parses its
/// own payload; nothing is shared between requests besides the options.
///
///   POST /api/analyze   {"params": {...}}
///   POST /api/sweep     {"params": {...}, "x_axis": {"axis","min","max"}, "y_axis": {...}, "resolution": 21}
///   POST /api/simulate  {"params": {...}, "steps", "burn_in", "seed", "mode", "mutation",
///                        "initial_cooperators", "group_draws", "thresholds"}
///   GET  /api/health
///
/// Malformed payloads get 400 with {"error": [{"field", "message"}, ...]};
/// unexpected failures get 500 with an opaque reference id.
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();

  HttpReply analyze(const std::string& body) const;
  HttpReply sweep(const std::string& body) const;
  HttpReply simulate(const std::string& body) const;
  HttpReply health() const;

  /// Blocks serving on host:port until stop() is called. Returns false if the
  /// address cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds to an ephemeral port and returns it (or -1); call listen_after_bind().
  int bind_ephemeral(const std::string& host);
  bool listen_after_bind();
  void stop();

 private:
  HttpReply internal_error(const char* where, const std::exception& e) const;
  void install_routes();

  ServiceOptions options_;
  std::unique_ptr<httplib::Server> server_;
  mutable std::atomic<unsigned long> error_seq_{0};
};

}  // namespace normdyn
