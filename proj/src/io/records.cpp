// Copyright 2026 The Artifact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "io/records.hpp"

#include <cmath>
#include <cstdio>

#include "common/error.hpp"

namespace arw {
namespace {

bool csv_needs_quoting(const std::string& s) {
  for (char c : s)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') return true;
  return false;
}

void append_csv(std::string& out, const std::string& s) {
  if (!csv_needs_quoting(s)) {
    out += s;
    return;
  }
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void check_uniform(const std::vector<Record>& records) {
  if (records.empty()) return;
  const auto& head = records.front().fields();
  for (const Record& r : records) {
    const auto& f = r.fields();
    if (f.size() != head.size())
      fail(Errc::kInternal, "ragged record batch");
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f[i].key != head[i].key)
        fail(Errc::kInternal, "ragged record batch: key '" + f[i].key +
                                  "' vs '" + head[i].key + "'");
  }
}

}  // namespace

std::string format_real(double v) {
  if (!std::isfinite(v)) fail(Errc::kDomain, "non-finite value in record");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void Record::add(const std::string& key, std::int64_t v) {
  fields_.push_back({key, Kind::kNumber, std::to_string(v)});
}

void Record::add(const std::string& key, std::uint64_t v) {
  fields_.push_back({key, Kind::kNumber, std::to_string(v)});
}

void Record::add(const std::string& key, double v) {
  fields_.push_back({key, Kind::kNumber, format_real(v)});
}

void Record::add(const std::string& key, bool v) {
  fields_.push_back({key, Kind::kBool, v ? "true" : "false"});
}

void Record::add_text(const std::string& key, const std::string& v) {
  fields_.push_back({key, Kind::kText, v});
}

void Record::add_big(const std::string& key, const BigInt& v) {
  fields_.push_back({key, Kind::kBigText, to_decimal(v)});
}

std::string to_csv(const std::vector<Record>& records) {
  check_uniform(records);
  std::string out;
  if (records.empty()) return out;
  const auto& head = records.front().fields();
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (i) out += ',';
    append_csv(out, head[i].key);
  }
  out += '\n';
  for (const Record& r : records) {
    const auto& f = r.fields();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out += ',';
      append_csv(out, f[i].literal);
    }
    out += '\n';
  }
  return out;
}

std::string to_jsonl(const std::vector<Record>& records) {
  check_uniform(records);
  std::string out;
  for (const Record& r : records) {
    out += '{';
    const auto& f = r.fields();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out += ',';
      append_json_string(out, f[i].key);
      out += ':';
      switch (f[i].kind) {
        case Record::Kind::kNumber:
        case Record::Kind::kBool:
          out += f[i].literal;
          break;
        case Record::Kind::kText:
        case Record::Kind::kBigText:
          append_json_string(out, f[i].literal);
          break;
      }
    }
    out += "}\n";
  }
  return out;
}

}  // namespace arw
