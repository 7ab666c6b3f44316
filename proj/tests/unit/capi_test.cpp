/*
  Copyright 2026 The darcy-dd Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include "darcy_dd.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

class CapiTest : public ::testing::Test {
 protected:
  void SetUp() override { ASSERT_EQ(darcy_config_create(&config_), DARCY_OK); }
  void TearDown() override {
    darcy_result_destroy(result_);
    darcy_config_destroy(config_);
  }
  void set(const char* key, const char* value) {
    ASSERT_EQ(darcy_config_set(config_, key, value), DARCY_OK) << darcy_last_error();
  }

  darcy_config* config_ = nullptr;
  darcy_result* result_ = nullptr;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CapiBasics, StatusNames) {
  EXPECT_STREQ(darcy_status_name(DARCY_OK), "ok");
  EXPECT_STREQ(darcy_status_name(DARCY_CONFIG), "config");
  EXPECT_STREQ(darcy_status_name(DARCY_OUT_OF_MEMORY), "out-of-memory");
  EXPECT_STREQ(darcy_status_name(static_cast<darcy_status>(42)), "unknown");
  EXPECT_GT(std::strlen(darcy_version()), 0u);
}

TEST(CapiBasics, NullArguments) {
  EXPECT_EQ(darcy_config_create(nullptr), DARCY_INVALID_ARGUMENT);
  EXPECT_GT(std::strlen(darcy_last_error()), 0u);
  EXPECT_EQ(darcy_config_set(nullptr, "N", "1"), DARCY_INVALID_ARGUMENT);
  EXPECT_EQ(darcy_run(nullptr, nullptr), DARCY_INVALID_ARGUMENT);
  EXPECT_EQ(darcy_result_count(nullptr, DARCY_TABLE_ERRORS), 0u);
  darcy_config_destroy(nullptr);
  darcy_result_destroy(nullptr);
}

TEST_F(CapiTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_EQ(darcy_config_set(config_, "colour", "blue"), DARCY_CONFIG);
  EXPECT_NE(std::string(darcy_last_error()).find("colour"), std::string::npos);
  EXPECT_EQ(darcy_config_set(config_, "N", "two"), DARCY_CONFIG);
  EXPECT_EQ(darcy_config_set(config_, "K1", "1,2"), DARCY_CONFIG);
  EXPECT_EQ(darcy_config_set(config_, "cond", "maybe"), DARCY_CONFIG);
  EXPECT_EQ(darcy_config_set(config_, "formulation", "hybrid"), DARCY_CONFIG);
}

TEST_F(CapiTest, MissingMeshSizeFailsAtRun) {
  EXPECT_EQ(darcy_run(config_, &result_), DARCY_CONFIG);
  EXPECT_EQ(result_, nullptr);
}

TEST_F(CapiTest, RunBothAndReadRows) {
  set("formulation", "both");
  set("N", "1");
  set("K", "4");
  set("cond", "1");
  ASSERT_EQ(darcy_run(config_, &result_), DARCY_OK) << darcy_last_error();
  EXPECT_EQ(darcy_result_count(result_, DARCY_TABLE_ERRORS), 2u);
  EXPECT_EQ(darcy_result_count(result_, DARCY_TABLE_TIMINGS), 2u);
  EXPECT_EQ(darcy_result_count(result_, DARCY_TABLE_SPEEDUP), 1u);
  EXPECT_EQ(darcy_result_count(result_, DARCY_TABLE_EQUIVALENCE), 1u);
  EXPECT_EQ(darcy_result_count(result_, DARCY_TABLE_SAMPLES), 2u * 64u * 8u);

  darcy_error_row e;
  ASSERT_EQ(darcy_result_error(result_, 1, &e), DARCY_OK);
  EXPECT_EQ(e.formulation, DARCY_DOMAIN_DECOMPOSITION);
  EXPECT_EQ(e.k[0], 4);
  EXPECT_EQ(e.has_exact, 1);
  EXPECT_GT(e.hdiv_error, 0.0);
  EXPECT_LT(e.conservation, 1e-9);

  darcy_timing_row t;
  ASSERT_EQ(darcy_result_timing(result_, 0, &t), DARCY_OK);
  EXPECT_EQ(t.formulation, DARCY_CONTINUOUS);
  EXPECT_EQ(t.dof_p, 64);
  EXPECT_EQ(t.out_of_memory, 0);

  darcy_cond_row c;
  ASSERT_EQ(darcy_result_cond(result_, 1, &c), DARCY_OK);
  EXPECT_GT(c.cond_lambda, 1.0);
  EXPECT_TRUE(std::isnan(c.cond_pressure));

  darcy_equivalence_row q;
  ASSERT_EQ(darcy_result_equivalence(result_, 0, &q), DARCY_OK);
  EXPECT_LT(q.flux, 1e-10);
  EXPECT_LT(q.pressure, 1e-10);

  darcy_sample_row s;
  EXPECT_EQ(darcy_result_sample(result_, 0, &s), DARCY_OK);
  EXPECT_EQ(darcy_result_sample(result_, 1u << 20, &s), DARCY_INVALID_ARGUMENT);
  EXPECT_EQ(darcy_result_error(result_, 0, nullptr), DARCY_INVALID_ARGUMENT);

  const fs::path dir = fs::path(::testing::TempDir()) / "darcy_capi_out";
  fs::remove_all(dir);
  ASSERT_EQ(darcy_result_write(result_, dir.string().c_str()), DARCY_OK);
  // Timing reports echo the full configuration, runtime settings included.
  const std::string timings = read_file(dir / "timings.csv");
  EXPECT_EQ(timings.rfind(std::string("# ") + darcy_config_echo(config_) + "\n", 0), 0u);
  EXPECT_EQ(read_file(dir / "errors.csv").find("threads="), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "speedup.csv"));
}

TEST_F(CapiTest, OutOfMemoryStatus) {
  set("formulation", "dd");
  set("K", "4");
  set("mem-budget", "10");
  EXPECT_EQ(darcy_run(config_, &result_), DARCY_OUT_OF_MEMORY);
  EXPECT_NE(std::string(darcy_last_error()).find("budget"), std::string::npos);
}

TEST_F(CapiTest, SweepRates) {
  set("sweep", "K=2,4");
  ASSERT_EQ(darcy_run(config_, &result_), DARCY_OK) << darcy_last_error();
  ASSERT_GT(darcy_result_count(result_, DARCY_TABLE_RATES), 0u);
  darcy_rate_row r;
  ASSERT_EQ(darcy_result_rate(result_, 0, &r), DARCY_OK);
  EXPECT_NE(r.metric, nullptr);
  EXPECT_GT(r.least_squares, 0.0);
}

TEST(CapiTools, DumpIncidence) {
  const fs::path path = fs::path(::testing::TempDir()) / "darcy_capi_incidence.mtx";
  ASSERT_EQ(darcy_dump_incidence(3, 3, 0, 1, path.string().c_str()), DARCY_OK);
  std::istringstream in(read_file(path));
  std::string banner;
  std::getline(in, banner);
  EXPECT_EQ(banner.rfind("%%MatrixMarket", 0), 0u);
  long rows, cols, nnz;
  in >> rows >> cols >> nnz;
  EXPECT_EQ(rows, 9);
  EXPECT_EQ(cols, 24);
  EXPECT_EQ(nnz, 36);
  EXPECT_EQ(darcy_dump_incidence(0, 3, 0, 1, path.string().c_str()), DARCY_INVALID_ARGUMENT);
  EXPECT_EQ(darcy_dump_incidence(2, 2, 2, 1, "/nonexistent/dir/x.mtx"), DARCY_IO);
}

TEST(CapiTools, ChecksumErrors) {
  uint64_t sum = 0;
  EXPECT_EQ(darcy_spe10_checksum("/nonexistent/perm.dat", 0, &sum), DARCY_IO);
  const fs::path path = fs::path(::testing::TempDir()) / "darcy_capi_short.dat";
  {
    std::ofstream out(path);
    out << "1 2 3\n";
  }
  EXPECT_EQ(darcy_spe10_checksum(path.string().c_str(), 0, &sum), DARCY_DATA);
}

TEST(CapiTools, SpeedupFiles) {
  const fs::path dir = fs::path(::testing::TempDir()) / "darcy_capi_speedup";
  fs::remove_all(dir);
  darcy_config* config = nullptr;
  ASSERT_EQ(darcy_config_create(&config), DARCY_OK);
  ASSERT_EQ(darcy_config_set(config, "K", "2"), DARCY_OK);
  for (const char* f : {"continuous", "dd"}) {
    ASSERT_EQ(darcy_config_set(config, "formulation", f), DARCY_OK);
    darcy_result* r = nullptr;
    ASSERT_EQ(darcy_run(config, &r), DARCY_OK) << darcy_last_error();
    ASSERT_EQ(darcy_result_write(r, (dir / f).string().c_str()), DARCY_OK);
    darcy_result_destroy(r);
  }
  darcy_config_destroy(config);
  const fs::path out = dir / "speedup.csv";
  ASSERT_EQ(darcy_speedup_files((dir / "continuous" / "timings.csv").string().c_str(),
                                (dir / "dd" / "timings.csv").string().c_str(),
                                out.string().c_str()),
            DARCY_OK)
      << darcy_last_error();
  EXPECT_FALSE(read_file(out).empty());
  // Swapped inputs have no continuous rows to compare with.
  EXPECT_EQ(darcy_speedup_files((dir / "dd" / "timings.csv").string().c_str(),
                                (dir / "dd" / "timings.csv").string().c_str(),
                                out.string().c_str()),
            DARCY_INVALID_ARGUMENT);
}

}  // namespace
