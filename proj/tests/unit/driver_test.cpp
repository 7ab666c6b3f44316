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

#include "darcy/driver.hpp"
#include "darcy/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace darcy {
namespace {

namespace fs = std::filesystem;

ErrorCategory category_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.category();
  }
  return ErrorCategory::kInternal;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / name;
  fs::remove_all(dir);
  return dir;
}

TimingRow timing(Formulation f, int k, double total, Index dof_p) {
  TimingRow t;
  t.case_id = "manufactured";
  t.formulation = f;
  t.order = 1;
  t.k = Int3::uniform(k);
  t.total_s = total;
  t.dof_p = dof_p;
  t.repeats = 1;
  return t;
}

TEST(ParseTest, Triples) {
  EXPECT_EQ(parse_triple("4"), Int3::uniform(4));
  EXPECT_EQ(parse_triple("15,55,2"), (Int3{15, 55, 2}));
  for (const char* bad : {"", "1,2", "a", "1,2,3,4", "2,x,3"})
    EXPECT_EQ(category_of([&] { parse_triple(bad); }), ErrorCategory::kConfig) << bad;
}

TEST(ParseTest, Sweeps) {
  EXPECT_EQ(parse_sweep("K=4,8,16"), (std::vector<int>{4, 8, 16}));
  EXPECT_EQ(parse_sweep("3,6"), (std::vector<int>{3, 6}));
  for (const char* bad : {"", "K=", "K=4,,8", "N=4"})
    EXPECT_EQ(category_of([&] { parse_sweep(bad); }), ErrorCategory::kConfig) << bad;
}

TEST(ParseTest, NamesRoundTrip) {
  for (CaseKind c : {CaseKind::kManufactured, CaseKind::kSpe10, CaseKind::kSpe10Crop})
    EXPECT_EQ(parse_case(case_name(c)), c);
  for (FormulationChoice f : {FormulationChoice::kContinuous,
                              FormulationChoice::kDomainDecomposition, FormulationChoice::kBoth})
    EXPECT_EQ(parse_formulation(formulation_name(f)), f);
  EXPECT_EQ(category_of([] { parse_case("spe11"); }), ErrorCategory::kConfig);
  EXPECT_EQ(category_of([] { parse_formulation("hybrid"); }), ErrorCategory::kConfig);
}

TEST(RunConfigTest, DefaultDecompositionPattern) {
  RunConfig c;
  c.order = 1;
  EXPECT_EQ(c.decomposition_for(8).first, Int3::uniform(4));
  EXPECT_EQ(c.decomposition_for(8).second, Int3::uniform(2));
  EXPECT_EQ(c.decomposition_for(3).first, Int3::uniform(3));
  c.order = 3;
  EXPECT_EQ(c.decomposition_for(12).first, Int3::uniform(12));
  EXPECT_EQ(c.decomposition_for(12).second, Int3::uniform(1));
  c.k1 = Int3{2, 2, 1};
  EXPECT_EQ(c.decomposition_for(4).second, (Int3{2, 2, 4}));
  EXPECT_EQ(category_of([&] { c.decomposition_for(3); }), ErrorCategory::kConfig);
}

TEST(RunConfigTest, Validation) {
  RunConfig c;
  EXPECT_EQ(category_of([&] { c.validate(); }), ErrorCategory::kConfig);
  c.k = 4;
  EXPECT_TRUE(c.validate().empty());
  c.order = 4;
  EXPECT_EQ(c.validate().size(), 1u);
  c.order = 1;
  c.repeat = 0;
  EXPECT_EQ(category_of([&] { c.validate(); }), ErrorCategory::kConfig);
  c.repeat = 1;
  c.case_kind = CaseKind::kSpe10Crop;
  c.sweep = {4, 8};
  EXPECT_EQ(category_of([&] { c.validate(); }), ErrorCategory::kConfig);
  c.sweep.clear();
  c.decomposition = "case3";
  EXPECT_NO_THROW(c.validate());
  c.case_kind = CaseKind::kSpe10;
  EXPECT_EQ(category_of([&] { c.validate(); }), ErrorCategory::kConfig);
}

TEST(RunConfigTest, EchoSeparatesRuntimeSettings) {
  RunConfig a, b;
  a.k = b.k = 4;
  b.threads = 8;
  b.repeat = 3;
  b.out_dir = "elsewhere";
  EXPECT_EQ(a.echo(false), b.echo(false));
  EXPECT_NE(a.echo(true), b.echo(true));
  EXPECT_NE(b.echo(true).find("threads=8"), std::string::npos);
}

TEST(SpeedupTest, RatioAndMissingContinuous) {
  std::vector<TimingRow> cont{timing(Formulation::kContinuous, 4, 10.0, 64),
                              timing(Formulation::kContinuous, 8, 0.0, 512)};
  cont[1].out_of_memory = true;
  const std::vector<TimingRow> dd{timing(Formulation::kDomainDecomposition, 4, 2.0, 64),
                                  timing(Formulation::kDomainDecomposition, 8, 3.0, 512)};
  const std::vector<SpeedupRow> rows = speedup_report(cont, dd);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[0].ratio, 5.0);
  EXPECT_TRUE(std::isnan(rows[1].continuous_s));
  EXPECT_TRUE(std::isnan(rows[1].ratio));
  EXPECT_EQ(format_double(rows[1].ratio), "-");

  const std::vector<TimingRow> other_mesh{timing(Formulation::kDomainDecomposition, 4, 2.0, 65)};
  EXPECT_EQ(category_of([&] { speedup_report(cont, other_mesh); }),
            ErrorCategory::kInvalidArgument);
  const std::vector<TimingRow> unmatched{timing(Formulation::kDomainDecomposition, 16, 2.0, 1)};
  EXPECT_EQ(category_of([&] { speedup_report(cont, unmatched); }),
            ErrorCategory::kInvalidArgument);
}

TEST(FormatTest, Doubles) {
  EXPECT_EQ(format_double(std::nan("")), "-");
  EXPECT_EQ(format_double(0.5), "5.0000000000000000e-01");
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
}

TEST(CampaignTest, SweepProducesRowsRatesAndReports) {
  RunConfig c;
  c.order = 1;
  c.sweep = {2, 4};
  const RunResult r = run_campaign(c);
  ASSERT_EQ(r.errors.size(), 2u);
  ASSERT_EQ(r.timings.size(), 2u);
  EXPECT_TRUE(r.errors[0].has_exact);
  EXPECT_GT(r.errors[0].errors.hdiv_error, r.errors[1].errors.hdiv_error);
  EXPECT_EQ(r.samples.size(), (8u + 64u) * 8u);
  std::vector<std::string> metrics;
  for (const RateRow& row : r.rates) metrics.push_back(row.metric);
  EXPECT_NE(std::find(metrics.begin(), metrics.end(), "hdiv"), metrics.end());
  EXPECT_NE(std::find(metrics.begin(), metrics.end(), "h1"), metrics.end());
  EXPECT_TRUE(r.equivalence.empty());
  EXPECT_TRUE(r.speedup.empty());

  const fs::path dir = fresh_dir("darcy_driver_reports");
  write_reports(r, dir.string());
  for (const char* name : {"errors.csv", "timings.csv", "cond.csv", "samples.csv", "rates.csv"}) {
    const std::string text = read_file(dir / name);
    ASSERT_FALSE(text.empty()) << name;
    EXPECT_EQ(text.rfind("# ", 0), 0u) << name;
    EXPECT_NE(text.find(c.echo(false)), std::string::npos) << name;
  }
  EXPECT_FALSE(fs::exists(dir / "speedup.csv"));

  const std::vector<TimingRow> back = read_timings((dir / "timings.csv").string());
  ASSERT_EQ(back.size(), r.timings.size());
  for (size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].k, r.timings[i].k);
    EXPECT_EQ(back[i].dof_p, r.timings[i].dof_p);
    EXPECT_EQ(back[i].total_s, r.timings[i].total_s);
    EXPECT_EQ(back[i].formulation, r.timings[i].formulation);
  }
}

TEST(CampaignTest, ContinuousOverBudgetIsRecorded) {
  RunConfig c;
  c.order = 1;
  c.k = 8;
  c.formulation = FormulationChoice::kBoth;
  const MeshSpec spec = make_problem(c, 8).problem.spec;
  const double dd = estimate_dd_entries(spec);
  const double cont = estimate_continuous_entries(spec);
  if (!(dd < cont)) GTEST_SKIP() << "continuous estimate not above the DD estimate";
  c.memory_budget = 0.5 * (dd + cont);
  const RunResult r = run_campaign(c);
  ASSERT_EQ(r.timings.size(), 2u);
  EXPECT_TRUE(r.timings[0].out_of_memory);
  EXPECT_FALSE(r.timings[1].out_of_memory);
  ASSERT_EQ(r.speedup.size(), 1u);
  EXPECT_TRUE(std::isnan(r.speedup[0].continuous_s));

  const fs::path dir = fresh_dir("darcy_driver_oom");
  write_reports(r, dir.string());
  const std::string speedup = read_file(dir / "speedup.csv");
  EXPECT_NE(speedup.find(",-,"), std::string::npos);

  c.formulation = FormulationChoice::kContinuous;
  EXPECT_EQ(category_of([&] { run_campaign(c); }), ErrorCategory::kOutOfMemory);
}

TEST(CampaignTest, ReadTimingsErrors) {
  EXPECT_EQ(category_of([] { read_timings("/nonexistent/timings.csv"); }), ErrorCategory::kIo);
  const fs::path dir = fresh_dir("darcy_driver_bad");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "timings.csv");
    out << "# echo\nheader\nmanufactured,dd,1,4\n";
  }
  EXPECT_EQ(category_of([&] { read_timings((dir / "timings.csv").string()); }),
            ErrorCategory::kData);
}

}  // namespace
}  // namespace darcy
