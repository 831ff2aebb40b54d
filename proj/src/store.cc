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

#include "pdrec/store.h"

#include <fstream>
#include <sstream>

#include "pdrec/error.h"
#include "pdrec/xes.h"

namespace pdrec {
namespace {

// Write-then-rename so readers never observe partial files.
void WriteAtomically(const std::filesystem::path& path, std::string_view data) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json ReadJson(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(ReadFileBytes(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIoError,
                "corrupt store file " + path.string() + ": " + e.what());
  }
}

}  // namespace

bool IsValidId(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    const bool hex = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    if (!hex) return false;
  }
  return true;
}

nlohmann::json StoredLog::MetaJson() const {
  return {{"log_id", log_id},
          {"filename", filename},
          {"uploaded_at", uploaded_at},
          {"num_traces", num_traces},
          {"num_events", num_events},
          {"catalog_version", catalog_version}};
}

nlohmann::json StoredRecommendation::ToJson() const {
  return {{"rec_id", rec_id},
          {"log_id", log_id},
          {"created_at", created_at},
          {"bundle_version", bundle_version},
          {"weights", weights},
          {"recommendation", recommendation}};
}

StoredRecommendation StoredRecommendation::FromJson(
    const nlohmann::json& json) {
  StoredRecommendation rec;
  rec.rec_id = json.at("rec_id").get<std::string>();
  rec.log_id = json.at("log_id").get<std::string>();
  rec.created_at = json.at("created_at").get<std::string>();
  rec.bundle_version = json.at("bundle_version").get<std::string>();
  rec.weights = json.at("weights");
  rec.recommendation = json.at("recommendation");
  return rec;
}

Store::Store(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_ / "logs");
  std::filesystem::create_directories(root_ / "recommendations");
}

std::filesystem::path Store::LogDir(const std::string& log_id) const {
  return root_ / "logs" / log_id;
}

std::filesystem::path Store::RecPath(const std::string& rec_id) const {
  return root_ / "recommendations" / (rec_id + ".json");
}

bool Store::PutLog(const StoredLog& log, std::string_view bytes) {
  std::lock_guard<std::mutex> lock(write_mutex_);
  const std::filesystem::path dir = LogDir(log.log_id);
  if (std::filesystem::exists(dir / "meta.json")) return false;
  std::filesystem::create_directories(dir);
  WriteAtomically(dir / "log.xes", bytes);
  nlohmann::json features = nlohmann::json::array();
  for (double v : log.features.values) features.push_back(v);
  WriteAtomically(dir / "features.json", features.dump());
  // meta.json last: its presence marks a complete entry.
  WriteAtomically(dir / "meta.json", log.MetaJson().dump(2));
  return true;
}

std::optional<StoredLog> Store::GetLog(const std::string& log_id) const {
  if (!IsValidId(log_id)) return std::nullopt;
  const std::filesystem::path dir = LogDir(log_id);
  if (!std::filesystem::exists(dir / "meta.json")) return std::nullopt;
  const nlohmann::json meta = ReadJson(dir / "meta.json");
  StoredLog log;
  log.log_id = meta.at("log_id").get<std::string>();
  log.filename = meta.at("filename").get<std::string>();
  log.uploaded_at = meta.at("uploaded_at").get<std::string>();
  log.num_traces = meta.at("num_traces").get<std::size_t>();
  log.num_events = meta.at("num_events").get<std::size_t>();
  log.catalog_version = meta.at("catalog_version").get<std::string>();
  log.features.log_id = log.log_id;
  log.features.values =
      ReadJson(dir / "features.json").get<std::vector<double>>();
  return log;
}

std::string Store::LogBytes(const std::string& log_id) const {
  if (!GetLog(log_id)) {
    throw Error(ErrorCode::kNotFound, "unknown log '" + log_id + "'");
  }
  return ReadFileBytes(LogDir(log_id) / "log.xes");
}

bool Store::PutRecommendation(const StoredRecommendation& rec) {
  std::lock_guard<std::mutex> lock(write_mutex_);
  const std::filesystem::path path = RecPath(rec.rec_id);
  if (std::filesystem::exists(path)) return false;
  WriteAtomically(path, rec.ToJson().dump(2));
  return true;
}

std::optional<StoredRecommendation> Store::GetRecommendation(
    const std::string& rec_id) const {
  if (!IsValidId(rec_id)) return std::nullopt;
  const std::filesystem::path path = RecPath(rec_id);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    return StoredRecommendation::FromJson(ReadJson(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIoError,
                "corrupt recommendation " + rec_id + ": " + e.what());
  }
}

}  // namespace pdrec
