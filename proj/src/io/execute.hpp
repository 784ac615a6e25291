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

#include <string>
#include <vector>

#include "io/records.hpp"
#include "io/runspec.hpp"

namespace arw {

// Runs a spec and returns the result rows without touching the filesystem.
// ok is false only when a verify run had failing suites.
struct RunOutput {
  std::vector<Record> records;
  std::vector<std::string> summary;  // headline lines for the terminal
  bool ok = true;
};

RunOutput run_spec(const RunSpec& spec, unsigned threads);

// Runs a spec and writes results.<ext> plus manifest.json into out_dir
// (created if missing). format is "csv" or "json-lines". Two runs of the
// same spec produce byte-identical results files; manifests differ only in
// their timestamps.
struct ExecutionResult {
  bool ok = true;
  std::string results_path;
  std::string manifest_path;
  std::vector<std::string> summary;
};

ExecutionResult execute_run(const RunSpec& spec, const std::string& out_dir,
                            const std::string& format, unsigned threads);

}  // namespace arw
