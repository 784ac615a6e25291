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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "common/bigint.hpp"

namespace arw {

// One result row.  Every value is formatted exactly once at add() time; the
// CSV and JSONL writers reuse the same literal, so the two formats agree
// field for field.  Reals use %.12g.  Arbitrary-precision integers are kept
// as decimal strings and written as JSON strings so no reader truncates them.
class Record {
 public:
  enum class Kind { kNumber, kBool, kText, kBigText };

  void add(const std::string& key, std::int64_t v);
  void add(const std::string& key, std::uint64_t v);
  void add(const std::string& key, int v) { add(key, std::int64_t{v}); }
  void add(const std::string& key, double v);
  void add(const std::string& key, bool v);
  void add_text(const std::string& key, const std::string& v);
  void add_big(const std::string& key, const BigInt& v);

  struct Field {
    std::string key;
    Kind kind;
    std::string literal;
  };
  const std::vector<Field>& fields() const { return fields_; }

 private:
  std::vector<Field> fields_;
};

std::string format_real(double v);

// All records in one table must share an identical key sequence; the writers
// check and reject ragged batches.
std::string to_csv(const std::vector<Record>& records);
std::string to_jsonl(const std::vector<Record>& records);

}  // namespace arw

