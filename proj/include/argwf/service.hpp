#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "argwf/model.hpp"

namespace httplib {
class Server;
}

namespace argwf::service {

struct ServiceOptions {
  std::optional<std::filesystem::path> snapshot_dir;
  std::chrono::milliseconds optimize_budget{10'000};
};

struct Reply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
  std::uint64_t revision = 0;  // 0 when no problem is involved
};

/// The HTTP API as plain functions over an in-memory store. Every reply is a
/// function of the stored state and the request; only create_problem,
/// put_schedule and apply_move change state.
class Service {
 public:
  explicit Service(ServiceOptions options = {});

  Reply create_problem(const std::string& body);
  Reply get_problem(const std::string& id) const;
  Reply put_schedule(const std::string& id, const std::string& body);
  Reply validate(const std::string& id) const;
  Reply optimize(const std::string& id, const std::string& mode) const;
  Reply apply_move(const std::string& id, const std::string& body);
  Reply af(const std::string& id, const std::string& kind, const std::string& format) const;
  Reply cost(const std::string& id) const;
  static Reply openapi();

  /// Registers every route, CORS headers and the OPTIONS preflight.
  void mount(httplib::Server& server);

 private:
  struct Entry {
    ProblemInstance problem;
    Schedule schedule;
    std::uint64_t revision = 1;
  };

  std::optional<Entry> lookup(const std::string& id) const;
  void store(const std::string& id, const Entry& entry);
  void load_snapshots();

  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, Entry> entries_;
  std::uint64_t next_id_ = 1;
};

/// Blocks serving on host:port until the process is stopped.
int serve(const std::string& host, int port, ServiceOptions options = {});

}  // namespace argwf::service
