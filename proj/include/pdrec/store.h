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

// On-disk persistence for uploaded logs and recommendations under a data
// directory. Logs are content-addressed; writes are serialized.

#ifndef PDREC_STORE_H_
#define PDREC_STORE_H_

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pdrec/features.h"

namespace pdrec {

struct StoredLog {
  std::string log_id;
  std::string filename;
  std::string uploaded_at;
  std::size_t num_traces = 0;
  std::size_t num_events = 0;
  std::string catalog_version;
  FeatureVector features;

  nlohmann::json MetaJson() const;  // everything except the features
};

struct StoredRecommendation {
  std::string rec_id;
  std::string log_id;
  std::string created_at;
  std::string bundle_version;
  nlohmann::json weights;
  nlohmann::json recommendation;

  nlohmann::json ToJson() const;
  static StoredRecommendation FromJson(const nlohmann::json& json);
};

class Store {
 public:
  // Creates the directory layout when missing.
  explicit Store(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  // Returns false (and leaves the store untouched) when the log exists.
  bool PutLog(const StoredLog& log, std::string_view bytes);
  std::optional<StoredLog> GetLog(const std::string& log_id) const;
  // Raw uploaded bytes. Throws Error(kNotFound).
  std::string LogBytes(const std::string& log_id) const;

  // Returns false when a recommendation with that id exists.
  bool PutRecommendation(const StoredRecommendation& rec);
  std::optional<StoredRecommendation> GetRecommendation(
      const std::string& rec_id) const;

 private:
  std::filesystem::path LogDir(const std::string& log_id) const;
  std::filesystem::path RecPath(const std::string& rec_id) const;

  std::filesystem::path root_;
  std::mutex write_mutex_;
};

// Ids are hex strings; anything else is rejected before touching disk.
bool IsValidId(std::string_view id);

}  // namespace pdrec

#endif  // PDREC_STORE_H_
