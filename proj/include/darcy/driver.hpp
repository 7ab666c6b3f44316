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

#ifndef DARCY_DRIVER_HPP
#define DARCY_DRIVER_HPP

#include "darcy/cases.hpp"
#include "darcy/postproc.hpp"
#include "darcy/solver.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace darcy {

enum class CaseKind { kManufactured, kSpe10, kSpe10Crop };
enum class FormulationChoice { kContinuous, kDomainDecomposition, kBoth };

CaseKind parse_case(const std::string& s);
std::string case_name(CaseKind c);
FormulationChoice parse_formulation(const std::string& s);
std::string formulation_name(FormulationChoice f);
std::string formulation_name(Formulation f);

/// "4" -> (4,4,4), "15,55,2" -> (15,55,2). Throws kConfig otherwise.
Int3 parse_triple(const std::string& s);
/// "K=4,8,16" or "4,8,16". Throws kConfig otherwise.
std::vector<int> parse_sweep(const std::string& s);

struct RunConfig {
  CaseKind case_kind = CaseKind::kManufactured;
  FormulationChoice formulation = FormulationChoice::kDomainDecomposition;
  int order = 1;
  int k = 0;                 // uniform K; 0 = K1 * K2
  std::optional<Int3> k1;
  std::optional<Int3> k2;
  std::string decomposition = "case1";  // SPE10 only
  std::string perm_file;                 // SPE10; empty = synthetic field
  bool anisotropic = false;
  std::vector<int> sweep;    // K values (manufactured)
  int repeat = 1;
  int threads = 1;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  double memory_budget = 3e8;
  int quadrature_bump = 2;
  bool condition = false;
  int sample_resolution = 0;  // 0 = 2 for manufactured, 1 for SPE10

  /// Throws kConfig on inconsistent settings. Returns warnings.
  std::vector<std::string> validate() const;
  /// Resolved (K1, K2) for one uniform K of the manufactured case.
  std::pair<Int3, Int3> decomposition_for(int k) const;
  /// One-line `key=value` echo. Runtime-only settings (threads, repeat,
  /// output directory) are included only when `runtime` is set.
  std::string echo(bool runtime) const;
};

struct ErrorRow {
  std::string case_id;
  Formulation formulation = Formulation::kDomainDecomposition;
  int order = 1;
  Int3 k, k1, k2;
  ErrorSummary errors;
  bool has_exact = false;
  double conservation = 0.0;
  double mass_balance = 0.0;
  std::uint64_t checksum = 0;
};

struct TimingRow {
  std::string case_id;
  Formulation formulation = Formulation::kDomainDecomposition;
  int order = 1;
  Int3 k, k1, k2;
  bool out_of_memory = false;
  int repeats = 0;
  double setup_s = 0.0;     // medians
  double solve_s = 0.0;
  double recover_s = 0.0;
  double total_s = 0.0;
  double total_mean_s = 0.0;
  Index dof_u = 0, dof_p = 0, dof_lambda = 0;
  double stored_entries = 0.0;
};

struct CondRow {
  std::string case_id;
  Formulation formulation = Formulation::kDomainDecomposition;
  int order = 1;
  Int3 k;
  double cond_pressure = std::numeric_limits<double>::quiet_NaN();
  double cond_pressure_eliminated = std::numeric_limits<double>::quiet_NaN();
  double cond_lambda = std::numeric_limits<double>::quiet_NaN();
};

struct SampleRow {
  std::string case_id;
  Formulation formulation = Formulation::kDomainDecomposition;
  int order = 1;
  Int3 k;
  Index index = 0;
  Sample sample;
};

struct SpeedupRow {
  int order = 1;
  Int3 k;
  double continuous_s = std::numeric_limits<double>::quiet_NaN();  // NaN when out of budget
  double dd_s = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();
};

struct RateRow {
  Formulation formulation = Formulation::kDomainDecomposition;
  int order = 1;
  std::string metric;
  RateSummary rates;
};

struct EquivalenceRow {
  int order = 1;
  Int3 k;
  double flux = 0.0;      // max |u_c - u_dd| over global faces
  double pressure = 0.0;  // max |p_c - p_dd| over fine cells
  double samples = 0.0;   // max over sampled p and u components
};

struct RunResult {
  RunConfig config;
  std::vector<std::string> warnings;
  std::vector<ErrorRow> errors;
  std::vector<TimingRow> timings;
  std::vector<CondRow> cond;
  std::vector<SampleRow> samples;
  std::vector<SpeedupRow> speedup;
  std::vector<RateRow> rates;
  std::vector<EquivalenceRow> equivalence;
};

/// Builds the problem of one run point (manufactured K, or the SPE10 case).
ProblemDefinition make_problem(const RunConfig& config, int k);

/// Runs every solve requested by the configuration. A continuous solve that
/// exceeds the budget is recorded (and reported as "-") when the formulation
/// is `both`; otherwise the kOutOfMemory error propagates.
RunResult run_campaign(const RunConfig& config);

/// Continuous / DD speed-up per matching (order, K). Throws kInvalidArgument
/// when a DD row has no continuous counterpart with the same topology.
std::vector<SpeedupRow> speedup_report(const std::vector<TimingRow>& continuous,
                                       const std::vector<TimingRow>& dd);

/// Reads the rows of a timings.csv written by write_reports. Throws kIo when
/// unreadable and kData on malformed rows.
std::vector<TimingRow> read_timings(const std::string& path);

/// Writes errors.csv, timings.csv, cond.csv, samples.csv and, when present,
/// speedup.csv, rates.csv, equivalence.csv into `dir` (created if needed).
void write_reports(const RunResult& result, const std::string& dir);

/// Writes one speedup.csv with the given echo line.
void write_speedup(const std::vector<SpeedupRow>& rows, const std::string& path,
                   const std::string& echo);

/// "%.16e", or "-" for NaN.
std::string format_double(double v);

}  // namespace darcy

#endif  // DARCY_DRIVER_HPP
