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

#include "pdrec/service.h"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "pdrec/discovery.h"
#include "pdrec/explainer.h"
#include "pdrec/hashing.h"
#include "pdrec/petri_net.h"
#include "pdrec/recommender.h"
#include "pdrec/xes.h"

namespace pdrec {
namespace {

constexpr std::size_t kLogCacheSize = 8;

HttpResponse Json(int status, const nlohmann::json& body) {
  return HttpResponse{status, body.dump(), "application/json"};
}

nlohmann::json ParseBody(std::string_view body) {
  nlohmann::json json = nlohmann::json::parse(body, nullptr, false);
  if (json.is_discarded() || !json.is_object()) {
    throw Error(ErrorCode::kBadRequest, "request body must be a JSON object");
  }
  return json;
}

std::string RequireString(const nlohmann::json& body, const char* key) {
  if (!body.contains(key) || !body.at(key).is_string()) {
    throw Error(ErrorCode::kBadRequest,
                std::string("missing string field '") + key + "'");
  }
  return body.at(key).get<std::string>();
}

std::string NowIso() {
  return FormatIsoTimestamp(std::chrono::time_point_cast<std::chrono::milliseconds>(
      std::chrono::system_clock::now()));
}

template <typename F>
HttpResponse Guard(F&& handler) {
  try {
    return handler();
  } catch (const Error& e) {
    return ErrorResponse(e.code(), e.what());
  } catch (const std::exception& e) {
    HttpResponse r = ErrorResponse(ErrorCode::kIoError, e.what());
    r.status = 500;
    return r;
  }
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedXml:
    case ErrorCode::kMissingActivity:
    case ErrorCode::kMissingTimestamp:
    case ErrorCode::kInvalidTimestamp:
    case ErrorCode::kEmptyLog:
    case ErrorCode::kInvalidLog:
    case ErrorCode::kBadRequest:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kSchemaMismatch:
      return 409;
    case ErrorCode::kPayloadTooLarge:
      return 413;
    case ErrorCode::kUnsupportedAlgorithm:
    case ErrorCode::kInvalidParameter:
    case ErrorCode::kAllZeroWeights:
    case ErrorCode::kInvalidWeights:
    case ErrorCode::kInvalidMeasure:
      return 422;
    case ErrorCode::kUnfittedModel:
      return 503;
    default:
      return 500;
  }
}

HttpResponse ErrorResponse(ErrorCode code, const std::string& message) {
  return Json(HttpStatusFor(code),
              {{"error",
                {{"code", ErrorCodeName(code)}, {"message", message}}}});
}

std::string LogIdFor(std::string_view bytes) { return ContentId(bytes); }

Service::Service(ServiceConfig config, std::shared_ptr<const ModelBundle> bundle)
    : config_(std::move(config)),
      bundle_(std::move(bundle)),
      store_(config_.data_dir) {
  if (bundle_) bundle_->CheckCatalog();
}

const ModelBundle& Service::RequireBundle() const {
  if (!bundle_) {
    throw Error(ErrorCode::kUnfittedModel, "no model bundle is loaded");
  }
  return *bundle_;
}

StoredLog Service::RequireLog(const std::string& log_id) {
  std::optional<StoredLog> log = store_.GetLog(log_id);
  if (!log) throw Error(ErrorCode::kNotFound, "unknown log '" + log_id + "'");
  if (log->catalog_version != kFeatureCatalogVersion) {
    log->features = ExtractFeatures(*LoadEventLog(log_id), log_id);
    log->catalog_version = std::string(kFeatureCatalogVersion);
  }
  return *log;
}

std::shared_ptr<const EventLog> Service::LoadEventLog(
    const std::string& log_id) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    for (auto it = cache_.begin(); it != cache_.end(); ++it) {
      if (it->first == log_id) {
        cache_.splice(cache_.begin(), cache_, it);
        return it->second;
      }
    }
  }
  auto log = std::make_shared<const EventLog>(ParseXes(store_.LogBytes(log_id)));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.emplace_front(log_id, log);
  if (cache_.size() > kLogCacheSize) cache_.pop_back();
  return log;
}

HttpResponse Service::HandleUploadLog(std::string_view bytes,
                                      const std::string& filename) {
  return Guard([&]() {
    if (bytes.size() > config_.upload_cap) {
      throw Error(ErrorCode::kPayloadTooLarge,
                  "upload exceeds " + std::to_string(config_.upload_cap) +
                      " bytes");
    }
    const std::string log_id = LogIdFor(bytes);
    if (auto existing = store_.GetLog(log_id)) {
      nlohmann::json body = existing->MetaJson();
      body["created"] = false;
      return Json(200, body);
    }
    EventLog log = ParseXes(bytes);
    StoredLog stored;
    stored.log_id = log_id;
    stored.filename = filename.empty() ? log_id + ".xes" : filename;
    stored.uploaded_at = NowIso();
    stored.num_traces = log.num_traces();
    stored.num_events = log.num_events();
    stored.catalog_version = std::string(kFeatureCatalogVersion);
    stored.features = ExtractFeatures(log, log_id);
    const bool created = store_.PutLog(stored, bytes);
    nlohmann::json body =
        created ? stored.MetaJson() : store_.GetLog(log_id)->MetaJson();
    body["created"] = created;
    return Json(created ? 201 : 200, body);
  });
}

HttpResponse Service::HandleGetLog(const std::string& log_id) {
  return Guard([&]() { return Json(200, RequireLog(log_id).MetaJson()); });
}

HttpResponse Service::HandleGetLogXes(const std::string& log_id) {
  return Guard([&]() {
    std::string bytes = store_.LogBytes(log_id);
    if (IsGzip(bytes)) bytes = GzipDecompress(bytes);
    return HttpResponse{200, std::move(bytes), "application/xml"};
  });
}

HttpResponse Service::HandleCreateRecommendation(std::string_view body) {
  return Guard([&]() {
    const nlohmann::json request = ParseBody(body);
    const std::string log_id = RequireString(request, "log_id");
    const StoredLog log = RequireLog(log_id);
    if (!request.contains("weights")) {
      throw Error(ErrorCode::kInvalidWeights, "missing weights");
    }
    const WeightVector weights = WeightVector::FromJson(request.at("weights"));
    const ModelBundle& bundle = RequireBundle();
    const Recommendation rec = Recommend(log.features, weights, bundle);

    StoredRecommendation stored;
    stored.log_id = log_id;
    stored.weights = weights.ToJson();
    stored.bundle_version = bundle.version;
    stored.rec_id = ContentId(log_id + "\n" + stored.weights.dump() + "\n" +
                              bundle.version);
    stored.created_at = NowIso();
    stored.recommendation = RecommendationToJson(rec);
    if (store_.PutRecommendation(stored)) return Json(201, stored.ToJson());
    return Json(200, store_.GetRecommendation(stored.rec_id)->ToJson());
  });
}

HttpResponse Service::HandleGetRecommendation(const std::string& rec_id) {
  return Guard([&]() {
    auto rec = store_.GetRecommendation(rec_id);
    if (!rec) {
      throw Error(ErrorCode::kNotFound,
                  "unknown recommendation '" + rec_id + "'");
    }
    return Json(200, rec->ToJson());
  });
}

HttpResponse Service::HandleDiscover(std::string_view body) {
  return Guard([&]() {
    const nlohmann::json request = ParseBody(body);
    const std::string log_id = RequireString(request, "log_id");
    RequireLog(log_id);
    const AlgorithmId algorithm =
        ParseAlgorithm(RequireString(request, "algorithm"));
    DiscoveryParams params;
    if (request.contains("params") && !request.at("params").is_null()) {
      const nlohmann::json& p = request.at("params");
      if (!p.is_object()) {
        throw Error(ErrorCode::kInvalidParameter, "params must be an object");
      }
      for (const auto& [key, value] : p.items()) {
        if (!value.is_number()) {
          throw Error(ErrorCode::kInvalidParameter,
                      "parameter '" + key + "' must be a number");
        }
        params[key] = value.get<double>();
      }
    }
    const std::shared_ptr<const EventLog> log = LoadEventLog(log_id);
    const PetriNet net = Discover(algorithm, *log, params);
    return Json(200, {{"log_id", log_id},
                      {"algorithm", AlgorithmName(algorithm)},
                      {"params", params},
                      {"net", NetToJson(net)},
                      {"dot", ToDot(net)}});
  });
}

HttpResponse Service::HandleExplain(const std::string& rec_id,
                                    const std::string& algorithm,
                                    const std::string& measure) {
  return Guard([&]() {
    auto rec = store_.GetRecommendation(rec_id);
    if (!rec) {
      throw Error(ErrorCode::kNotFound,
                  "unknown recommendation '" + rec_id + "'");
    }
    const AlgorithmId alg = ParseAlgorithm(algorithm);
    const MeasureId mea = ParseMeasure(measure);
    const ModelBundle& bundle = RequireBundle();
    if (rec->bundle_version != bundle.version) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "recommendation was made with bundle " +
                      rec->bundle_version);
    }
    const StoredLog log = RequireLog(rec->log_id);
    const GradientBoostedEnsemble& model = bundle.Model(alg, mea);
    const std::vector<double> x = model.Project(log.features.values);
    nlohmann::json body = AttributionToJson(ShapValues(model, x));
    body["rec_id"] = rec_id;
    body["log_id"] = rec->log_id;
    body["algorithm"] = AlgorithmName(alg);
    body["measure"] = MeasureName(mea);
    body["predicted"] = model.Predict(x);
    body["bundle_version"] = bundle.version;
    return Json(200, body);
  });
}

HttpResponse Service::HandleFeatures(const std::string& log_id) {
  return Guard([&]() {
    return Json(200, FeatureVectorToJson(RequireLog(log_id).features));
  });
}

HttpResponse Service::HandleCatalog() {
  return Guard([&]() {
    const ModelBundle& bundle = RequireBundle();
    return Json(200,
                {{"catalog_version", kFeatureCatalogVersion},
                 {"bundle_version", bundle.version},
                 {"feature_schema", bundle.feature_schema},
                 {"features", FeatureInsightsToJson(FeaturerInsights(bundle))}});
  });
}

HttpResponse Service::HandleHealth() {
  nlohmann::json algorithms = nlohmann::json::array();
  for (AlgorithmId id : kPortfolio) algorithms.push_back(AlgorithmName(id));
  nlohmann::json measures = nlohmann::json::array();
  for (MeasureId id : kMeasures) measures.push_back(MeasureName(id));
  return Json(200, {{"status", "ok"},
                    {"bundle_version",
                     bundle_ ? nlohmann::json(bundle_->version)
                             : nlohmann::json(nullptr)},
                    {"catalog_version", kFeatureCatalogVersion},
                    {"algorithms", algorithms},
                    {"measures", measures}});
}

struct HttpServer::Impl {
  Service* service;
  httplib::Server server;
  std::thread thread;
};

namespace {

void Reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

}  // namespace

HttpServer::HttpServer(Service* service) : impl_(std::make_unique<Impl>()) {
  impl_->service = service;
  httplib::Server& s = impl_->server;
  // Requests over the cap are answered by httplib itself with 413; the
  // error handler below adds the JSON body.
  s.set_payload_max_length(service->config().upload_cap);

  s.Post("/logs", [service](const httplib::Request& req,
                            httplib::Response& res) {
    std::string filename = req.get_param_value("filename");
    if (req.is_multipart_form_data()) {
      if (req.files.empty()) {
        Reply(res, ErrorResponse(ErrorCode::kBadRequest, "no file part"));
        return;
      }
      const auto& file = req.files.begin()->second;
      Reply(res, service->HandleUploadLog(
                     file.content, filename.empty() ? file.filename : filename));
      return;
    }
    Reply(res, service->HandleUploadLog(req.body, filename));
  });
  s.Get("/logs/:id", [service](const httplib::Request& req,
                               httplib::Response& res) {
    Reply(res, service->HandleGetLog(req.path_params.at("id")));
  });
  s.Get("/logs/:id/xes", [service](const httplib::Request& req,
                                   httplib::Response& res) {
    Reply(res, service->HandleGetLogXes(req.path_params.at("id")));
  });
  s.Post("/recommendations", [service](const httplib::Request& req,
                                       httplib::Response& res) {
    Reply(res, service->HandleCreateRecommendation(req.body));
  });
  s.Get("/recommendations/:id", [service](const httplib::Request& req,
                                          httplib::Response& res) {
    Reply(res, service->HandleGetRecommendation(req.path_params.at("id")));
  });
  s.Get("/recommendations/:id/explanations/:algorithm/:measure",
        [service](const httplib::Request& req, httplib::Response& res) {
          Reply(res, service->HandleExplain(req.path_params.at("id"),
                                            req.path_params.at("algorithm"),
                                            req.path_params.at("measure")));
        });
  s.Post("/discover", [service](const httplib::Request& req,
                                httplib::Response& res) {
    Reply(res, service->HandleDiscover(req.body));
  });
  s.Get("/features/:id", [service](const httplib::Request& req,
                                   httplib::Response& res) {
    Reply(res, service->HandleFeatures(req.path_params.at("id")));
  });
  s.Get("/catalog/features", [service](const httplib::Request&,
                                       httplib::Response& res) {
    Reply(res, service->HandleCatalog());
  });
  s.Get("/healthz", [service](const httplib::Request&, httplib::Response& res) {
    Reply(res, service->HandleHealth());
  });
  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    ErrorCode code = ErrorCode::kBadRequest;
    if (res.status == 404) code = ErrorCode::kNotFound;
    if (res.status == 413) code = ErrorCode::kPayloadTooLarge;
    const int status = res.status;
    Reply(res, ErrorResponse(code, httplib::status_message(status)));
    res.status = status;
  });
  if (service->config().static_dir) {
    s.set_mount_point("/", service->config().static_dir->string());
  }
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Start(const std::string& host, int port) {
  httplib::Server& s = impl_->server;
  int bound = port;
  if (port == 0) {
    bound = s.bind_to_any_port(host);
  } else if (!s.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    throw Error(ErrorCode::kIoError,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([&s]() { s.listen_after_bind(); });
  s.wait_until_ready();
  return bound;
}

void HttpServer::Wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

void HttpServer::Stop() {
  impl_->server.stop();
  Wait();
}

}  // namespace pdrec
