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

// Exercises the shared library exclusively through the C header; nothing
// here may include an internal header.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "arw/arw.h"
#include "doctest.h"

namespace {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("arw_capi_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("version string") {
  REQUIRE(arw_version() != nullptr);
  CHECK(std::string(arw_version()) == "0.1.0");
}

TEST_CASE("lower bound closed form") {
  CHECK(arw_lower_bound(1.0) == doctest::Approx(0.5));
  CHECK(arw_lower_bound(3.0) == doctest::Approx(0.75));
}

TEST_CASE("spec parse, canonical text, and errors") {
  arw_spec* spec = nullptr;
  REQUIRE(arw_spec_parse("command = simulate\nlambda = 1\nrho = 0.5\n",
                         &spec) == ARW_OK);
  REQUIRE(spec != nullptr);

  char* canon = nullptr;
  REQUIRE(arw_spec_canonical(spec, &canon) == ARW_OK);
  REQUIRE(canon != nullptr);
  std::string text(canon);
  arw_free(canon);
  CHECK(text.find("command = simulate") != std::string::npos);

  // Canonical text reparses to the same canonical text.
  arw_spec* again = nullptr;
  REQUIRE(arw_spec_parse(text.c_str(), &again) == ARW_OK);
  char* canon2 = nullptr;
  REQUIRE(arw_spec_canonical(again, &canon2) == ARW_OK);
  CHECK(text == canon2);
  arw_free(canon2);
  arw_spec_free(again);
  arw_spec_free(spec);

  arw_spec* bad = nullptr;
  CHECK(arw_spec_parse("command = simulate\nwidgets = 1\n", &bad) ==
        ARW_E_UNKNOWN_KEY);
  CHECK(bad == nullptr);
  CHECK(std::strlen(arw_last_error()) > 0);
  CHECK(arw_spec_parse("command = simulate\nlambda = 1\nlambda = 2\n", &bad) ==
        ARW_E_DUPLICATE_KEY);
  CHECK(arw_spec_parse(nullptr, &bad) == ARW_E_DOMAIN);
  CHECK(arw_spec_parse("command = verify\n", nullptr) == ARW_E_DOMAIN);
}

TEST_CASE("spec file reading") {
  TempDir tmp("spec");
  std::filesystem::create_directories(tmp.path);
  auto p = tmp.path / "run.spec";
  {
    std::ofstream out(p);
    out << "command = rhoc\nlambda = 1\nn = 30\ntrials = 2\nseed = 3\n";
  }
  arw_spec* spec = nullptr;
  REQUIRE(arw_spec_read(p.string().c_str(), &spec) == ARW_OK);
  arw_spec_free(spec);
  CHECK(arw_spec_read((tmp.path / "absent.spec").string().c_str(), &spec) ==
        ARW_E_IO);
}

TEST_CASE("configuration handles round trip") {
  arw_config* c = nullptr;
  REQUIRE(arw_config_parse("0 2 | 0 2 s | 1 0", &c) == ARW_OK);
  char* text = nullptr;
  REQUIRE(arw_config_text(c, &text) == ARW_OK);
  CHECK(std::string(text) == "0 2 | 0 2 s | 1 0");
  arw_free(text);
  arw_config_free(c);

  arw_config* bad = nullptr;
  CHECK(arw_config_parse("0 2 | 0 2", &bad) == ARW_E_PARSE);
  CHECK(bad == nullptr);
}

TEST_CASE("stabilization through the c api") {
  arw_config* c = nullptr;
  REQUIRE(arw_config_parse("-2 2 | 0 1 3 0 0 | 0 0", &c) == ARW_OK);

  arw_config* final_cfg = nullptr;
  char* topplings = nullptr;
  int exhausted = -1;
  REQUIRE(arw_stabilize(c, 42, 1.0, "kill", "lifo", 0, 0, &final_cfg,
                        &topplings, &exhausted) == ARW_OK);
  REQUIRE(final_cfg != nullptr);
  REQUIRE(topplings != nullptr);
  CHECK(exhausted == 0);
  CHECK(std::strtoull(topplings, nullptr, 10) > 0);

  // Policy independence shows through the boundary: same final text.
  arw_config* final2 = nullptr;
  REQUIRE(arw_stabilize(c, 42, 1.0, "kill", "leftmost", 0, 0, &final2, nullptr,
                        nullptr) == ARW_OK);
  char *t1 = nullptr, *t2 = nullptr;
  REQUIRE(arw_config_text(final_cfg, &t1) == ARW_OK);
  REQUIRE(arw_config_text(final2, &t2) == ARW_OK);
  CHECK(std::string(t1) == std::string(t2));
  arw_free(t1);
  arw_free(t2);
  arw_config_free(final2);
  arw_config_free(final_cfg);
  arw_free(topplings);

  CHECK(arw_stabilize(c, 42, 1.0, "evaporate", "lifo", 0, 0, &final_cfg,
                      nullptr, nullptr) == ARW_E_DOMAIN);
  CHECK(arw_stabilize(c, 42, -1.0, "kill", "lifo", 0, 0, &final_cfg, nullptr,
                      nullptr) == ARW_E_DOMAIN);
  CHECK(arw_stabilize(nullptr, 42, 1.0, "kill", "lifo", 0, 0, &final_cfg,
                      nullptr, nullptr) == ARW_E_DOMAIN);
  arw_config_free(c);
}

TEST_CASE("stabilization budget exhaustion is reported") {
  arw_config* c = nullptr;
  REQUIRE(arw_config_parse("0 4 | 2 2 2 2 2 | 0 0", &c) == ARW_OK);
  arw_config* final_cfg = nullptr;
  int exhausted = 0;
  REQUIRE(arw_stabilize(c, 1, 1.0, "kill", "lifo", 0, 2, &final_cfg, nullptr,
                        &exhausted) == ARW_OK);
  CHECK(exhausted == 1);
  arw_config_free(final_cfg);
  arw_config_free(c);
}

TEST_CASE("fixation estimate through the c api") {
  double point = -1, lo = -1, hi = -1;
  REQUIRE(arw_fixation(1.0, 0.5, 400, 200, 77, 1, &point, &lo, &hi) == ARW_OK);
  CHECK(point >= 0.0);
  CHECK(point <= 1.0);
  CHECK(lo <= point);
  CHECK(point <= hi);
  CHECK(arw_fixation(1.0, 1.5, 400, 200, 77, 1, &point, &lo, &hi) ==
        ARW_E_DOMAIN);
}

TEST_CASE("execute writes files from a c caller") {
  TempDir tmp("exec");
  arw_spec* spec = nullptr;
  REQUIRE(arw_spec_parse(
              "command = stabilize\nlambda = 1\nn = 30\ntrials = 2\nseed = 8\n",
              &spec) == ARW_OK);
  char* summary = nullptr;
  REQUIRE(arw_execute(spec, (tmp.path / "out").string().c_str(), "csv", 1,
                      &summary) == ARW_OK);
  REQUIRE(summary != nullptr);
  CHECK(std::strlen(summary) > 0);
  arw_free(summary);
  CHECK(std::filesystem::exists(tmp.path / "out" / "results.csv"));
  CHECK(std::filesystem::exists(tmp.path / "out" / "manifest.json"));
  CHECK(arw_execute(spec, (tmp.path / "out2").string().c_str(), "parquet", 1,
                    nullptr) == ARW_E_DOMAIN);
  arw_spec_free(spec);
}

TEST_CASE("error text resets per call") {
  arw_spec* bad = nullptr;
  CHECK(arw_spec_parse("command = warp\n", &bad) == ARW_E_PARSE);
  std::string first = arw_last_error();
  CHECK(first.find("warp") != std::string::npos);
  arw_spec* good = nullptr;
  REQUIRE(arw_spec_parse("command = verify\n", &good) == ARW_OK);
  arw_spec_free(good);
}
