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

#include "pdrec/xes.h"

#include <expat.h>
#include <zlib.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pdrec/error.h"

namespace pdrec {
namespace {

constexpr std::string_view kActivityKey = "concept:name";
constexpr std::string_view kTimestampKey = "time:timestamp";

bool ParseDigits(std::string_view text, std::size_t pos, std::size_t count,
                 int* out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
    value = value * 10 + (text[i] - '0');
  }
  *out = value;
  return true;
}

// Parser context for each open element.
enum class Context { kLog, kTrace, kEvent, kAttribute, kIgnored };

struct PendingEvent {
  std::optional<std::string> activity;
  std::optional<std::string> raw_timestamp;
  AttributeMap attributes;
};

struct PendingTrace {
  std::optional<std::string> case_id;
  std::vector<PendingEvent> events;
};

struct ParseState {
  XML_Parser parser = nullptr;
  std::vector<Context> stack;
  bool saw_root = false;
  AttributeMap log_attributes;
  std::vector<PendingTrace> traces;
  std::optional<Error> error;

  void Fail(ErrorCode code, const std::string& message) {
    if (!error) error.emplace(code, message);
    XML_StopParser(parser, XML_FALSE);
  }
};

std::string_view LocalName(const XML_Char* name) {
  std::string_view view(name);
  const auto colon = view.rfind(':');
  return colon == std::string_view::npos ? view : view.substr(colon + 1);
}

bool IsScalarAttributeTag(std::string_view tag) {
  return tag == "string" || tag == "date" || tag == "int" ||
         tag == "float" || tag == "boolean" || tag == "id";
}

bool IsContainerAttributeTag(std::string_view tag) {
  return tag == "list" || tag == "container";
}

AttributeValue ConvertAttribute(std::string_view tag, const std::string& raw) {
  if (tag == "int") {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec == std::errc() && ptr == raw.data() + raw.size()) return value;
  } else if (tag == "float") {
    double value = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec == std::errc() && ptr == raw.data() + raw.size()) return value;
  } else if (tag == "boolean") {
    if (raw == "true") return true;
    if (raw == "false") return false;
  } else if (tag == "date") {
    if (auto ts = ParseIsoTimestamp(raw)) return *ts;
  }
  return raw;
}

void XMLCALL OnStart(void* user_data, const XML_Char* name,
                     const XML_Char** atts) {
  auto* state = static_cast<ParseState*>(user_data);
  const std::string_view tag = LocalName(name);

  if (!state->saw_root) {
    state->saw_root = true;
    if (tag != "log") {
      state->Fail(ErrorCode::kMalformedXml,
                  "root element is <" + std::string(tag) + ">, expected <log>");
      return;
    }
    state->stack.push_back(Context::kLog);
    return;
  }

  const Context parent = state->stack.back();
  Context self = Context::kIgnored;
  if (parent == Context::kLog && tag == "trace") {
    state->traces.emplace_back();
    self = Context::kTrace;
  } else if (parent == Context::kTrace && tag == "event") {
    state->traces.back().events.emplace_back();
    self = Context::kEvent;
  } else if ((parent == Context::kLog || parent == Context::kTrace ||
              parent == Context::kEvent) &&
             IsScalarAttributeTag(tag)) {
    const XML_Char* key = nullptr;
    const XML_Char* value = nullptr;
    for (int i = 0; atts[i] != nullptr; i += 2) {
      const std::string_view att(atts[i]);
      if (att == "key") key = atts[i + 1];
      if (att == "value") value = atts[i + 1];
    }
    self = Context::kAttribute;
    if (key != nullptr && value != nullptr) {
      const std::string k(key);
      const std::string v(value);
      if (parent == Context::kLog) {
        state->log_attributes[k] = ConvertAttribute(tag, v);
      } else if (parent == Context::kTrace) {
        if (k == kActivityKey) state->traces.back().case_id = v;
      } else {
        PendingEvent& event = state->traces.back().events.back();
        if (k == kActivityKey) {
          event.activity = v;
        } else if (k == kTimestampKey) {
          event.raw_timestamp = v;
        } else {
          event.attributes[k] = ConvertAttribute(tag, v);
        }
      }
    }
  } else if (IsContainerAttributeTag(tag)) {
    self = Context::kIgnored;
  }
  state->stack.push_back(self);
}

void XMLCALL OnEnd(void* user_data, const XML_Char* /*name*/) {
  auto* state = static_cast<ParseState*>(user_data);
  if (!state->stack.empty()) state->stack.pop_back();
}

EventLog BuildLog(ParseState& state) {
  std::vector<Trace> traces;
  traces.reserve(state.traces.size());
  std::set<std::string> used_ids;
  for (std::size_t t = 0; t < state.traces.size(); ++t) {
    PendingTrace& pending = state.traces[t];
    if (pending.events.empty()) continue;
    Trace trace;
    std::string base_id =
        pending.case_id ? *pending.case_id : "case_" + std::to_string(t);
    std::string case_id = base_id;
    for (int k = 2; used_ids.count(case_id) > 0; ++k) {
      case_id = base_id + "#" + std::to_string(k);
    }
    used_ids.insert(case_id);
    trace.case_id = case_id;
    trace.events.reserve(pending.events.size());
    for (std::size_t e = 0; e < pending.events.size(); ++e) {
      PendingEvent& p = pending.events[e];
      const std::string where = "event " + std::to_string(e) + " of trace '" +
                                trace.case_id + "'";
      if (!p.activity || p.activity->empty()) {
        throw Error(ErrorCode::kMissingActivity, where + " lacks concept:name");
      }
      if (!p.raw_timestamp) {
        throw Error(ErrorCode::kMissingTimestamp,
                    where + " lacks time:timestamp");
      }
      auto ts = ParseIsoTimestamp(*p.raw_timestamp);
      if (!ts) {
        throw Error(ErrorCode::kInvalidTimestamp,
                    where + " has unparseable timestamp '" + *p.raw_timestamp +
                        "'");
      }
      trace.events.push_back(
          Event{std::move(*p.activity), *ts, std::move(p.attributes)});
    }
    traces.push_back(std::move(trace));
  }
  if (traces.empty()) {
    throw Error(ErrorCode::kEmptyLog, "XES document contains no traces");
  }
  return EventLog(std::move(traces), std::move(state.log_attributes));
}

class ExpatParser {
 public:
  explicit ExpatParser(ParseState* state) : parser_(XML_ParserCreate(nullptr)) {
    state->parser = parser_;
    XML_SetUserData(parser_, state);
    XML_SetElementHandler(parser_, OnStart, OnEnd);
  }
  ~ExpatParser() { XML_ParserFree(parser_); }
  ExpatParser(const ExpatParser&) = delete;
  ExpatParser& operator=(const ExpatParser&) = delete;

  // Returns false when parsing stopped (syntax error or semantic failure).
  bool Feed(ParseState& state, std::string_view chunk, bool final) {
    if (XML_Parse(parser_, chunk.data(), static_cast<int>(chunk.size()),
                  final ? 1 : 0) == XML_STATUS_ERROR) {
      if (!state.error) {
        state.error.emplace(
            ErrorCode::kMalformedXml,
            std::string("XML error at line ") +
                std::to_string(XML_GetCurrentLineNumber(parser_)) + ": " +
                XML_ErrorString(XML_GetErrorCode(parser_)));
      }
      return false;
    }
    return true;
  }

 private:
  XML_Parser parser_;
};

void FeedAll(ExpatParser& parser, ParseState& state, std::string_view bytes) {
  constexpr std::size_t kChunk = 1 << 20;
  std::size_t offset = 0;
  do {
    const std::size_t n = std::min(kChunk, bytes.size() - offset);
    const bool final = offset + n == bytes.size();
    if (!parser.Feed(state, bytes.substr(offset, n), final)) return;
    offset += n;
  } while (offset < bytes.size());
}

void AppendEscaped(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out += c;
    }
  }
}

void AppendAttribute(std::string& out, std::string_view indent,
                     const std::string& key, const AttributeValue& value) {
  std::string tag;
  std::string text;
  if (const auto* s = std::get_if<std::string>(&value)) {
    tag = "string";
    text = *s;
  } else if (const auto* i = std::get_if<std::int64_t>(&value)) {
    tag = "int";
    text = std::to_string(*i);
  } else if (const auto* d = std::get_if<double>(&value)) {
    tag = "float";
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", *d);
    text = buffer;
  } else if (const auto* b = std::get_if<bool>(&value)) {
    tag = "boolean";
    text = *b ? "true" : "false";
  } else {
    tag = "date";
    text = FormatIsoTimestamp(std::get<Timestamp>(value));
  }
  out += indent;
  out += "<" + tag + " key=\"";
  AppendEscaped(out, key);
  out += "\" value=\"";
  AppendEscaped(out, text);
  out += "\"/>\n";
}

}  // namespace

std::optional<Timestamp> ParseIsoTimestamp(std::string_view text) {
  using namespace std::chrono;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!ParseDigits(text, 0, 4, &y) || text.size() < 10 || text[4] != '-' ||
      !ParseDigits(text, 5, 2, &mo) || text[7] != '-' ||
      !ParseDigits(text, 8, 2, &d)) {
    return std::nullopt;
  }
  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)},
                            day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  std::size_t pos = 10;
  std::int64_t millis = 0;
  if (pos < text.size() && (text[pos] == 'T' || text[pos] == ' ')) {
    if (!ParseDigits(text, pos + 1, 2, &h) || text.size() < pos + 6 ||
        text[pos + 3] != ':' || !ParseDigits(text, pos + 4, 2, &mi)) {
      return std::nullopt;
    }
    pos += 6;
    if (pos < text.size() && text[pos] == ':') {
      if (!ParseDigits(text, pos + 1, 2, &s)) return std::nullopt;
      pos += 3;
      if (pos < text.size() && text[pos] == '.') {
        ++pos;
        int digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
          if (digits < 3) millis = millis * 10 + (text[pos] - '0');
          ++digits;
          ++pos;
        }
        if (digits == 0) return std::nullopt;
        for (; digits < 3; ++digits) millis *= 10;
      }
    }
    if (h > 23 || mi > 59 || s > 60) return std::nullopt;
  }
  int offset_minutes = 0;
  if (pos < text.size()) {
    if (text[pos] == 'Z' && pos + 1 == text.size()) {
      pos += 1;
    } else if (text[pos] == '+' || text[pos] == '-') {
      const int sign = text[pos] == '-' ? -1 : 1;
      int oh = 0, om = 0;
      if (!ParseDigits(text, pos + 1, 2, &oh)) return std::nullopt;
      std::size_t next = pos + 3;
      if (next < text.size() && text[next] == ':') ++next;
      if (next < text.size()) {
        if (!ParseDigits(text, next, 2, &om)) return std::nullopt;
        next += 2;
      }
      if (next != text.size()) return std::nullopt;
      offset_minutes = sign * (oh * 60 + om);
      pos = next;
    } else {
      return std::nullopt;
    }
  }
  const sys_days days{date};
  return time_point_cast<milliseconds>(days) + hours{h} + minutes{mi} +
         seconds{s} + milliseconds{millis} - minutes{offset_minutes};
}

std::string FormatIsoTimestamp(Timestamp ts) {
  using namespace std::chrono;
  const sys_days day_start = floor<std::chrono::days>(ts);
  const year_month_day date{day_start};
  const auto in_day = ts - day_start;
  const auto h = duration_cast<hours>(in_day);
  const auto mi = duration_cast<minutes>(in_day - h);
  const auto s = duration_cast<seconds>(in_day - h - mi);
  const auto ms = in_day - h - mi - s;
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer),
                "%04d-%02u-%02uT%02d:%02d:%02d.%03d+00:00",
                static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()), static_cast<int>(h.count()),
                static_cast<int>(mi.count()), static_cast<int>(s.count()),
                static_cast<int>(ms.count()));
  return buffer;
}

bool IsGzip(std::string_view bytes) {
  return bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
         static_cast<unsigned char>(bytes[1]) == 0x8b;
}

std::string GzipDecompress(std::string_view bytes) {
  z_stream stream{};
  if (inflateInit2(&stream, 16 + MAX_WBITS) != Z_OK) {
    throw Error(ErrorCode::kIoError, "inflateInit2 failed");
  }
  std::string out;
  char buffer[1 << 16];
  stream.next_in =
      reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  stream.avail_in = static_cast<uInt>(bytes.size());
  int rc = Z_OK;
  while (true) {
    stream.next_out = reinterpret_cast<Bytef*>(buffer);
    stream.avail_out = sizeof(buffer);
    rc = inflate(&stream, Z_NO_FLUSH);
    out.append(buffer, sizeof(buffer) - stream.avail_out);
    if (rc == Z_STREAM_END) {
      // Concatenated gzip members.
      if (stream.avail_in > 0 && inflateReset(&stream) == Z_OK) continue;
      break;
    }
    if (rc != Z_OK) break;
    if (stream.avail_in == 0 && stream.avail_out != 0) break;
  }
  inflateEnd(&stream);
  if (rc != Z_STREAM_END) {
    throw Error(ErrorCode::kMalformedXml, "corrupt or truncated gzip stream");
  }
  return out;
}

std::string GzipCompress(std::string_view bytes) {
  z_stream stream{};
  if (deflateInit2(&stream, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS,
                   8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(ErrorCode::kIoError, "deflateInit2 failed");
  }
  std::string out;
  char buffer[1 << 16];
  stream.next_in =
      reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  stream.avail_in = static_cast<uInt>(bytes.size());
  int rc = Z_OK;
  do {
    stream.next_out = reinterpret_cast<Bytef*>(buffer);
    stream.avail_out = sizeof(buffer);
    rc = deflate(&stream, Z_FINISH);
    out.append(buffer, sizeof(buffer) - stream.avail_out);
  } while (rc == Z_OK);
  deflateEnd(&stream);
  if (rc != Z_STREAM_END) {
    throw Error(ErrorCode::kIoError, "gzip compression failed");
  }
  return out;
}

EventLog ParseXes(std::string_view bytes) {
  std::string inflated;
  if (IsGzip(bytes)) {
    inflated = GzipDecompress(bytes);
    bytes = inflated;
  }
  ParseState state;
  {
    ExpatParser parser(&state);
    FeedAll(parser, state, bytes);
  }
  if (state.error) throw *state.error;
  if (!state.saw_root) {
    throw Error(ErrorCode::kMalformedXml, "document has no root element");
  }
  return BuildLog(state);
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

EventLog ReadXesFile(const std::filesystem::path& path) {
  return ParseXes(ReadFileBytes(path));
}

std::string WriteXes(const EventLog& log) {
  std::string out;
  out +=
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<log xes.version=\"1.0\" xes.features=\"nested-attributes\" "
      "xmlns=\"http://www.xes-standard.org/\">\n"
      "  <extension name=\"Concept\" prefix=\"concept\" "
      "uri=\"http://www.xes-standard.org/concept.xesext\"/>\n"
      "  <extension name=\"Time\" prefix=\"time\" "
      "uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
  for (const auto& [key, value] : log.attributes()) {
    AppendAttribute(out, "  ", key, value);
  }
  for (const Trace& trace : log.traces()) {
    out += "  <trace>\n";
    AppendAttribute(out, "    ", std::string(kActivityKey), trace.case_id);
    for (const Event& event : trace.events) {
      out += "    <event>\n";
      AppendAttribute(out, "      ", std::string(kActivityKey), event.activity);
      AppendAttribute(out, "      ", std::string(kTimestampKey),
                      event.timestamp);
      for (const auto& [key, value] : event.attributes) {
        AppendAttribute(out, "      ", key, value);
      }
      out += "    </event>\n";
    }
    out += "  </trace>\n";
  }
  out += "</log>\n";
  return out;
}

void WriteXesFile(const EventLog& log, const std::filesystem::path& path) {
  std::string bytes = WriteXes(log);
  if (path.extension() == ".gz") bytes = GzipCompress(bytes);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

std::string ToJsonLines(const EventLog& log) {
  std::string out;
  for (const Trace& trace : log.traces()) {
    nlohmann::json line;
    line["case_id"] = trace.case_id;
    nlohmann::json events = nlohmann::json::array();
    for (const Event& event : trace.events) {
      events.push_back({{"activity", event.activity},
                        {"timestamp", FormatIsoTimestamp(event.timestamp)}});
    }
    line["events"] = std::move(events);
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace pdrec
