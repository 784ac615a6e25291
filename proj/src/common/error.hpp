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
#include <stdexcept>
#include <string>

namespace arw {

enum class Errc : int {
  kDomain = 1,          // argument outside its documented range
  kParse = 2,           // malformed input text
  kUnknownKey = 3,      // unrecognized key in a run spec
  kDuplicateKey = 4,    // repeated key in a run spec
  kOutOfRegion = 5,     // site outside a configuration's region
  kIllegalTopple = 6,   // toppling attempted at a stable site
  kOdometerOverflow = 7,
  kNoActiveParticles = 8,
  kStateSpaceTooLarge = 9,
  kWindowExcludesOrigin = 10,
  kIo = 11,
  kInternal = 12,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace arw
