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

// IEEE XES reading and writing, plus a line-delimited JSON trace dump.

#ifndef PDREC_XES_H_
#define PDREC_XES_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pdrec/event_log.h"

namespace pdrec {

// Parses an XES document. Gzip-compressed input is detected by its magic
// bytes and inflated transparently.
//
// Errors: kMalformedXml, kMissingActivity, kMissingTimestamp,
// kInvalidTimestamp, kEmptyLog.
EventLog ParseXes(std::string_view bytes);
EventLog ReadXesFile(const std::filesystem::path& path);

// Serializes to XES. The output is deterministic for a given log.
std::string WriteXes(const EventLog& log);
// Writes gzip-compressed output when the path ends in ".gz".
void WriteXesFile(const EventLog& log, const std::filesystem::path& path);

// One JSON object per trace: {"case_id": ..., "events": [{"activity": ...,
// "timestamp": ...}]}.
std::string ToJsonLines(const EventLog& log);

// ISO-8601 parsing ("2020-01-01T10:00:00.123+01:00", "Z" or no zone = UTC).
std::optional<Timestamp> ParseIsoTimestamp(std::string_view text);
// Always "YYYY-MM-DDTHH:MM:SS.mmm+00:00".
std::string FormatIsoTimestamp(Timestamp ts);

std::string ReadFileBytes(const std::filesystem::path& path);
std::string GzipCompress(std::string_view bytes);
std::string GzipDecompress(std::string_view bytes);
bool IsGzip(std::string_view bytes);

}  // namespace pdrec

#endif  // PDREC_XES_H_
