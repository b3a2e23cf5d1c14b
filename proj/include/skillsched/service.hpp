#pragma once

#include <cstddef>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "skillsched/exact.hpp"
#include "skillsched/model.hpp"

namespace skillsched {

struct HttpReply {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

struct ServiceOptions {
  /// Cached /api/solve payloads.
  std::size_t cache_capacity = 128;
  /// /api/exact refuses instances whose unpruned tree exceeds 10^this leaves.
  double max_log10_search_space = 12.0;
  SearchLimits exact_limits{2'000'000, std::chrono::milliseconds{10'000}, SearchMode::ProveOptimal};
};

/// JSON API over one loaded instance. Requests may run concurrently; a
/// request works on the instance current when it began, and the reply carries
/// that instance's checksum in X-Instance-Checksum.
///
///   PUT  /api/instance   instance document           -> 200 | 400 | 422
///   GET  /api/instance                               -> 200 | 404
///   POST /api/solve      {workforce?, ordering?, capacity_mode?, allow_overflow?}
///   POST /api/exact      {workforce?, max_nodes?}
///   POST /api/sweep      {alphas?, exact?, ordering?, capacity_mode?}
///   GET  /api/health
///
/// A request carrying X-Instance-Checksum that no longer matches the loaded
/// instance gets 409.
class WhatIfService {
 public:
  explicit WhatIfService(ServiceOptions options = {});
  ~WhatIfService();
  WhatIfService(const WhatIfService&) = delete;
  WhatIfService& operator=(const WhatIfService&) = delete;

  /// Throws ModelError on an invalid instance.
  void load(const InstanceSpec& spec);

  HttpReply handle(const std::string& method, const std::string& path, const std::string& body,
                   const std::map<std::string, std::string>& headers = {});

  /// Binds the HTTP listener; port 0 picks a free port. Returns the port, or
  /// -1 when binding failed.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Call after bind().
  void listen();
  void stop();

  std::size_t cache_hits() const;

 private:
  struct Session;
  struct Server;

  std::shared_ptr<const Session> session() const;
  HttpReply put_instance(const std::string& body);
  HttpReply get_instance(const Session& s) const;
  HttpReply solve(const Session& s, const std::string& body);
  HttpReply exact(const Session& s, const std::string& body) const;
  HttpReply sweep_levels(const Session& s, const std::string& body) const;

  std::string cached(const std::string& key) const;
  void remember(const std::string& key, const std::string& payload);

  ServiceOptions options_;
  mutable std::mutex session_mutex_;
  std::shared_ptr<const Session> session_;

  mutable std::mutex cache_mutex_;
  mutable std::list<std::pair<std::string, std::string>> lru_;
  mutable std::unordered_map<std::string, std::list<std::pair<std::string, std::string>>::iterator> index_;
  mutable std::size_t hits_ = 0;

  std::unique_ptr<Server> server_;
};

}  // namespace skillsched
