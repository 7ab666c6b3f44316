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

// darcy-dd command line: runs solve campaigns and writes CSV reports.

#include "darcy_dd.h"

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace {

int report(darcy_status status) {
  std::fprintf(stderr, "error: %s: %s\n", darcy_status_name(status), darcy_last_error());
  return static_cast<int>(status);
}

struct ConfigDeleter {
  void operator()(darcy_config* c) const { darcy_config_destroy(c); }
};
struct ResultDeleter {
  void operator()(darcy_result* r) const { darcy_result_destroy(r); }
};

int run(const std::vector<std::pair<std::string, std::string>>& settings, std::string out_dir) {
  darcy_config* raw = nullptr;
  if (darcy_status s = darcy_config_create(&raw); s != DARCY_OK) return report(s);
  std::unique_ptr<darcy_config, ConfigDeleter> config(raw);
  if (const char* env = std::getenv("DARCY_DD_OUT"); env && *env) out_dir = env;
  for (const auto& [key, value] : settings)
    if (darcy_status s = darcy_config_set(config.get(), key.c_str(), value.c_str()); s != DARCY_OK)
      return report(s);
  if (darcy_status s = darcy_config_set(config.get(), "out", out_dir.c_str()); s != DARCY_OK)
    return report(s);

  darcy_result* raw_result = nullptr;
  if (darcy_status s = darcy_run(config.get(), &raw_result); s != DARCY_OK) return report(s);
  std::unique_ptr<darcy_result, ResultDeleter> result(raw_result);

  for (size_t i = 0; i < darcy_result_count(result.get(), DARCY_TABLE_WARNINGS); ++i) {
    const char* w = nullptr;
    if (darcy_result_warning(result.get(), i, &w) == DARCY_OK) std::fprintf(stderr, "warning: %s\n", w);
  }
  for (size_t i = 0; i < darcy_result_count(result.get(), DARCY_TABLE_ERRORS); ++i) {
    darcy_error_row e;
    if (darcy_result_error(result.get(), i, &e) != DARCY_OK) continue;
    if (e.checksum) std::fprintf(stderr, "permeability checksum %016" PRIx64 "\n", e.checksum);
    break;
  }
  if (darcy_status s = darcy_result_write(result.get(), out_dir.c_str()); s != DARCY_OK)
    return report(s);

  for (size_t i = 0; i < darcy_result_count(result.get(), DARCY_TABLE_TIMINGS); ++i) {
    darcy_timing_row t;
    if (darcy_result_timing(result.get(), i, &t) != DARCY_OK) continue;
    const char* name = t.formulation == DARCY_CONTINUOUS ? "continuous" : "dd";
    if (t.out_of_memory) {
      std::printf("%-10s N=%d K=%d,%d,%d  out of memory budget\n", name, t.order, t.k[0], t.k[1],
                  t.k[2]);
    } else {
      std::printf("%-10s N=%d K=%d,%d,%d  total %.3fs  dofs u=%" PRId64 " p=%" PRId64
                  " lambda=%" PRId64 "\n",
                  name, t.order, t.k[0], t.k[1], t.k[2], t.total_s, t.dof_u, t.dof_p,
                  t.dof_lambda);
    }
  }
  for (size_t i = 0; i < darcy_result_count(result.get(), DARCY_TABLE_RATES); ++i) {
    darcy_rate_row r;
    if (darcy_result_rate(result.get(), i, &r) == DARCY_OK)
      std::printf("rate %-10s %-12s %.3f\n", r.formulation == DARCY_CONTINUOUS ? "continuous" : "dd",
                  r.metric, r.least_squares);
  }
  for (size_t i = 0; i < darcy_result_count(result.get(), DARCY_TABLE_EQUIVALENCE); ++i) {
    darcy_equivalence_row r;
    if (darcy_result_equivalence(result.get(), i, &r) == DARCY_OK)
      std::printf("equivalence N=%d K=%d: flux %.3e pressure %.3e samples %.3e\n", r.order,
                  r.k[0], r.flux, r.pressure, r.samples);
  }
  std::printf("reports written to %s\n", out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed spectral element Darcy solver with domain decomposition"};
  app.set_version_flag("--version", std::string(darcy_version()));
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "solve a case and write CSV reports");
  std::map<std::string, std::string> opts;
  std::string out_dir = ".";
  const unsigned hw = std::thread::hardware_concurrency();
  int threads = hw == 0 ? 1 : static_cast<int>(hw);
  bool anisotropic = false, cond = false;
  auto add = [&](const char* flag, const char* key, const char* help) {
    run_cmd->add_option_function<std::string>(flag, [&opts, key](const std::string& v) { opts[key] = v; },
                                              help);
  };
  add("--case", "case", "manufactured | spe10 | spe10-crop (default manufactured)");
  add("--formulation", "formulation", "continuous | dd | both (default dd)");
  add("--N", "N", "spectral order (default 1)");
  add("--K", "K", "elements per axis");
  add("--K1", "K1", "subdomains per axis: n or nx,ny,nz");
  add("--K2", "K2", "elements per subdomain and axis: n or nx,ny,nz");
  add("--decomp", "decomp", "SPE10 decomposition: case1 | case2 | case3 (crop only)");
  add("--perm-file", "perm-file", "SPE10 permeability file (default: synthetic field)");
  add("--sweep", "sweep", "K values, e.g. K=4,8,16");
  add("--repeat", "repeat", "timing repetitions (median and mean reported)");
  add("--seed", "seed", "seed for synthetic data");
  add("--mem-budget", "mem-budget", "stored matrix entry budget (default 3e8)");
  add("--quad-bump", "quad-bump", "extra GLL points for mass matrices (default 2)");
  add("--sample-resolution", "sample-resolution", "sample points per element and axis");
  run_cmd->add_option("--threads", threads, "worker threads (default: all cores)");
  run_cmd->add_option("--out", out_dir, "output directory (DARCY_DD_OUT overrides)");
  run_cmd->add_flag("--anisotropic", anisotropic, "read kx, ky, kz from the permeability file");
  run_cmd->add_flag("--cond", cond, "estimate condition numbers");

  // dump-incidence
  auto* dump_cmd = app.add_subcommand("dump-incidence", "write a divergence incidence matrix");
  std::vector<int> counts;
  int order = 1;
  std::string dump_path;
  dump_cmd->add_option("--counts", counts, "nx ny [nz]")->required()->expected(2, 3);
  dump_cmd->add_option("--N", order, "spectral order (3D only)");
  dump_cmd->add_option("--output", dump_path, "Matrix Market file")->required();

  // speedup
  auto* speedup_cmd = app.add_subcommand("speedup", "speed-up table from two timings.csv files");
  std::string cont_csv, dd_csv, speedup_out = "speedup.csv";
  speedup_cmd->add_option("--continuous", cont_csv, "continuous timings.csv")->required();
  speedup_cmd->add_option("--dd", dd_csv, "DD timings.csv")->required();
  speedup_cmd->add_option("--output", speedup_out, "output CSV");

  // checksum
  auto* sum_cmd = app.add_subcommand("checksum", "validate a permeability file and print its checksum");
  std::string sum_path;
  bool sum_aniso = false;
  sum_cmd->add_option("file", sum_path, "permeability file")->required();
  sum_cmd->add_flag("--anisotropic", sum_aniso, "file holds kx, ky, kz");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(DARCY_CONFIG);
  }

  if (*run_cmd) {
    std::vector<std::pair<std::string, std::string>> settings(opts.begin(), opts.end());
    settings.emplace_back("threads", std::to_string(threads));
    if (anisotropic) settings.emplace_back("anisotropic", "1");
    if (cond) settings.emplace_back("cond", "1");
    return run(settings, out_dir);
  }
  if (*dump_cmd) {
    const int nz = counts.size() == 3 ? counts[2] : 0;
    if (darcy_status s = darcy_dump_incidence(counts[0], counts[1], nz, order, dump_path.c_str());
        s != DARCY_OK)
      return report(s);
    return 0;
  }
  if (*speedup_cmd) {
    if (darcy_status s = darcy_speedup_files(cont_csv.c_str(), dd_csv.c_str(), speedup_out.c_str());
        s != DARCY_OK)
      return report(s);
    return 0;
  }
  if (*sum_cmd) {
    uint64_t sum = 0;
    if (darcy_status s = darcy_spe10_checksum(sum_path.c_str(), sum_aniso ? 1 : 0, &sum); s != DARCY_OK)
      return report(s);
    std::printf("%016" PRIx64 "\n", sum);
    return 0;
  }
  return 0;
}
