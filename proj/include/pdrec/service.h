/*
 * Copyright 2026 The pdrec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// The HTTP/JSON service. Handlers are transport-independent (`Handle*`
// methods) and bound to routes by HttpServer.

#ifndef PDREC_SERVICE_H_
#define PDREC_SERVICE_H_

#include <cstddef>
#include <filesystem>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "pdrec/bundle.h"
#include "pdrec/error.h"
#include "pdrec/event_log.h"
#include "pdrec/store.h"

namespace pdrec {

inline constexpr std::size_t kDefaultUploadCap = 256u << 20;

struct ServiceConfig {
  std::filesystem::path data_dir = "pdrec-data";
  std::optional<std::filesystem::path> static_dir;
  std::size_t upload_cap = kDefaultUploadCap;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// HTTP status used for an error code (400, 404, 413, 422, ...).
int HttpStatusFor(ErrorCode code);
// {"error": {"code": ..., "message": ...}}
HttpResponse ErrorResponse(ErrorCode code, const std::string& message);

// Id of an uploaded log: a prefix of the SHA-256 of its bytes.
std::string LogIdFor(std::string_view bytes);

class Service {
 public:
  // `bundle` may be null; endpoints needing models then answer 503.
  Service(ServiceConfig config, std::shared_ptr<const ModelBundle> bundle);

  const ServiceConfig& config() const { return config_; }

  HttpResponse HandleUploadLog(std::string_view bytes,
                               const std::string& filename);
  HttpResponse HandleGetLog(const std::string& log_id);
  HttpResponse HandleGetLogXes(const std::string& log_id);
  HttpResponse HandleCreateRecommendation(std::string_view body);
  HttpResponse HandleGetRecommendation(const std::string& rec_id);
  HttpResponse HandleDiscover(std::string_view body);
  HttpResponse HandleExplain(const std::string& rec_id,
                             const std::string& algorithm,
                             const std::string& measure);
  HttpResponse HandleFeatures(const std::string& log_id);
  HttpResponse HandleCatalog();
  HttpResponse HandleHealth();

 private:
  StoredLog RequireLog(const std::string& log_id);
  std::shared_ptr<const EventLog> LoadEventLog(const std::string& log_id);
  const ModelBundle& RequireBundle() const;

  ServiceConfig config_;
  std::shared_ptr<const ModelBundle> bundle_;
  Store store_;
  std::mutex cache_mutex_;
  std::list<std::pair<std::string, std::shared_ptr<const EventLog>>> cache_;
};

// Binds a Service to HTTP routes on a background thread.
class HttpServer {
 public:
  explicit HttpServer(Service* service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws kIoError.
  int Start(const std::string& host, int port);
  // Blocks until Stop() is called from another thread or a signal.
  void Wait();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pdrec

#endif  // PDREC_SERVICE_H_
