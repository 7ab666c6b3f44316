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

#include "darcy/cases.hpp"
#include "darcy/driver.hpp"
#include "darcy/error.hpp"
#include "darcy/topology.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <new>
#include <string>

struct darcy_config {
  darcy::RunConfig config;
  mutable std::string echo;
};

struct darcy_result {
  darcy::RunResult result;
};

namespace {

thread_local std::string g_last_error;

darcy_status set_error(darcy_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
darcy_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DARCY_OK;
  } catch (const darcy::Error& e) {
    return set_error(static_cast<darcy_status>(e.category()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(DARCY_OUT_OF_MEMORY, "allocation failed");
  } catch (const std::exception& e) {
    return set_error(DARCY_INTERNAL, e.what());
  } catch (...) {
    return set_error(DARCY_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* message) {
  if (!ok) darcy::fail(darcy::ErrorCategory::kInvalidArgument, message);
}

bool parse_flag(const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  darcy::fail(darcy::ErrorCategory::kConfig, "invalid boolean '" + v + "'");
}

double parse_double(const std::string& v, const char* key) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0')
    darcy::fail(darcy::ErrorCategory::kConfig, std::string("invalid value for ") + key + ": '" + v + "'");
  return d;
}

int parse_int(const std::string& v, const char* key) {
  char* end = nullptr;
  const long d = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || d < -2147483647L || d > 2147483647L)
    darcy::fail(darcy::ErrorCategory::kConfig, std::string("invalid value for ") + key + ": '" + v + "'");
  return static_cast<int>(d);
}

void set_key(darcy::RunConfig& c, const std::string& key, const std::string& v) {
  using namespace darcy;
  if (key == "case") c.case_kind = parse_case(v);
  else if (key == "formulation") c.formulation = parse_formulation(v);
  else if (key == "N") c.order = parse_int(v, "N");
  else if (key == "K") c.k = parse_int(v, "K");
  else if (key == "K1") c.k1 = parse_triple(v);
  else if (key == "K2") c.k2 = parse_triple(v);
  else if (key == "decomp") c.decomposition = v;
  else if (key == "perm-file") c.perm_file = v;
  else if (key == "anisotropic") c.anisotropic = parse_flag(v);
  else if (key == "sweep") c.sweep = parse_sweep(v);
  else if (key == "repeat") c.repeat = parse_int(v, "repeat");
  else if (key == "threads") c.threads = parse_int(v, "threads");
  else if (key == "out") c.out_dir = v;
  else if (key == "seed") {
    char* end = nullptr;
    const unsigned long long s = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0') fail(ErrorCategory::kConfig, "invalid seed '" + v + "'");
    c.seed = s;
  } else if (key == "mem-budget") c.memory_budget = parse_double(v, "mem-budget");
  else if (key == "quad-bump") c.quadrature_bump = parse_int(v, "quad-bump");
  else if (key == "cond") c.condition = parse_flag(v);
  else if (key == "sample-resolution") c.sample_resolution = parse_int(v, "sample-resolution");
  else fail(ErrorCategory::kConfig, "unknown configuration key '" + key + "'");
}

template <typename Row>
darcy_status row(const darcy_result* r, size_t i, Row* out, size_t count) {
  if (!r || !out) return set_error(DARCY_INVALID_ARGUMENT, "null argument");
  if (i >= count) return set_error(DARCY_INVALID_ARGUMENT, "row index out of range");
  g_last_error.clear();
  return DARCY_OK;
}

void copy3(darcy::Int3 v, int* out) {
  out[0] = v.x;
  out[1] = v.y;
  out[2] = v.z;
}

}  // namespace

extern "C" {

const char* darcy_version(void) { return "0.1.0"; }

const char* darcy_status_name(darcy_status status) {
  if (status == DARCY_OK) return "ok";
  if (status < DARCY_INVALID_ARGUMENT || status > DARCY_INTERNAL) return "unknown";
  return darcy::category_name(static_cast<darcy::ErrorCategory>(status));
}

const char* darcy_last_error(void) { return g_last_error.c_str(); }

darcy_status darcy_config_create(darcy_config** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new darcy_config;
  });
}

void darcy_config_destroy(darcy_config* config) { delete config; }

darcy_status darcy_config_set(darcy_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config && key && value, "null argument");
    set_key(config->config, key, value);
  });
}

const char* darcy_config_echo(const darcy_config* config) {
  if (!config) return "";
  config->echo = config->config.echo(true);
  return config->echo.c_str();
}

darcy_status darcy_run(const darcy_config* config, darcy_result** out) {
  return guarded([&] {
    require(config && out, "null argument");
    *out = nullptr;
    auto result = std::make_unique<darcy_result>();
    result->result = darcy::run_campaign(config->config);
    *out = result.release();
  });
}

void darcy_result_destroy(darcy_result* result) { delete result; }

darcy_status darcy_result_write(const darcy_result* result, const char* out_dir) {
  return guarded([&] {
    require(result && out_dir, "null argument");
    darcy::write_reports(result->result, out_dir);
  });
}

size_t darcy_result_count(const darcy_result* result, darcy_table table) {
  if (!result) return 0;
  const darcy::RunResult& r = result->result;
  switch (table) {
    case DARCY_TABLE_ERRORS: return r.errors.size();
    case DARCY_TABLE_TIMINGS: return r.timings.size();
    case DARCY_TABLE_COND: return r.cond.size();
    case DARCY_TABLE_SAMPLES: return r.samples.size();
    case DARCY_TABLE_SPEEDUP: return r.speedup.size();
    case DARCY_TABLE_RATES: return r.rates.size();
    case DARCY_TABLE_EQUIVALENCE: return r.equivalence.size();
    case DARCY_TABLE_WARNINGS: return r.warnings.size();
  }
  return 0;
}

darcy_status darcy_result_error(const darcy_result* r, size_t i, darcy_error_row* out) {
  const darcy_status s = row(r, i, out, r ? r->result.errors.size() : 0);
  if (s != DARCY_OK) return s;
  const darcy::ErrorRow& e = r->result.errors[i];
  out->formulation = static_cast<int>(e.formulation);
  out->order = e.order;
  copy3(e.k, out->k);
  out->has_exact = e.has_exact ? 1 : 0;
  out->h = e.errors.h;
  out->l2_div_residual = e.errors.l2_div_residual;
  out->hdiv_error = e.errors.hdiv_error;
  out->h1_error = e.errors.h1_error;
  out->l2_pressure = e.errors.l2_pressure;
  out->l2_velocity = e.errors.l2_velocity;
  out->conservation = e.conservation;
  out->mass_balance = e.mass_balance;
  out->checksum = e.checksum;
  return DARCY_OK;
}

darcy_status darcy_result_timing(const darcy_result* r, size_t i, darcy_timing_row* out) {
  const darcy_status s = row(r, i, out, r ? r->result.timings.size() : 0);
  if (s != DARCY_OK) return s;
  const darcy::TimingRow& t = r->result.timings[i];
  out->formulation = static_cast<int>(t.formulation);
  out->order = t.order;
  copy3(t.k, out->k);
  out->out_of_memory = t.out_of_memory ? 1 : 0;
  out->repeats = t.repeats;
  out->setup_s = t.setup_s;
  out->solve_s = t.solve_s;
  out->recover_s = t.recover_s;
  out->total_s = t.total_s;
  out->total_mean_s = t.total_mean_s;
  out->dof_u = t.dof_u;
  out->dof_p = t.dof_p;
  out->dof_lambda = t.dof_lambda;
  out->stored_entries = t.stored_entries;
  return DARCY_OK;
}

darcy_status darcy_result_cond(const darcy_result* r, size_t i, darcy_cond_row* out) {
  const darcy_status s = row(r, i, out, r ? r->result.cond.size() : 0);
  if (s != DARCY_OK) return s;
  const darcy::CondRow& c = r->result.cond[i];
  out->formulation = static_cast<int>(c.formulation);
  out->order = c.order;
  copy3(c.k, out->k);
  out->cond_pressure = c.cond_pressure;
  out->cond_pressure_eliminated = c.cond_pressure_eliminated;
  out->cond_lambda = c.cond_lambda;
  return DARCY_OK;
}

darcy_status darcy_result_sample(const darcy_result* r, size_t i, darcy_sample_row* out) {
  const darcy_status s = row(r, i, out, r ? r->result.samples.size() : 0);
  if (s != DARCY_OK) return s;
  const darcy::SampleRow& x = r->result.samples[i];
  out->formulation = static_cast<int>(x.formulation);
  out->order = x.order;
  copy3(x.k, out->k);
  out->index = x.index;
  for (int a = 0; a < 3; ++a) {
    out->x[a] = x.sample.x[a];
    out->u[a] = x.sample.u[a];
  }
  out->p = x.sample.p;
  return DARCY_OK;
}

darcy_status darcy_result_speedup(const darcy_result* r, size_t i, darcy_speedup_row* out) {
  const darcy_status s = row(r, i, out, r ? r->result.speedup.size() : 0);
  if (s != DARCY_OK) return s;
  const darcy::SpeedupRow& x = r->result.speedup[i];
  out->order = x.order;
  copy3(x.k, out->k);
  out->continuous_s = x.continuous_s;
  out->dd_s = x.dd_s;
  out->ratio = x.ratio;
  return DARCY_OK;
}

darcy_status darcy_result_rate(const darcy_result* r, size_t i, darcy_rate_row* out) {
  const darcy_status s = row(r, i, out, r ? r->result.rates.size() : 0);
  if (s != DARCY_OK) return s;
  const darcy::RateRow& x = r->result.rates[i];
  out->formulation = static_cast<int>(x.formulation);
  out->order = x.order;
  out->metric = x.metric.c_str();
  out->least_squares = x.rates.least_squares;
  return DARCY_OK;
}

darcy_status darcy_result_equivalence(const darcy_result* r, size_t i,
                                      darcy_equivalence_row* out) {
  const darcy_status s = row(r, i, out, r ? r->result.equivalence.size() : 0);
  if (s != DARCY_OK) return s;
  const darcy::EquivalenceRow& x = r->result.equivalence[i];
  out->order = x.order;
  copy3(x.k, out->k);
  out->flux = x.flux;
  out->pressure = x.pressure;
  out->samples = x.samples;
  return DARCY_OK;
}

darcy_status darcy_result_warning(const darcy_result* r, size_t i, const char** out) {
  const darcy_status s = row(r, i, out, r ? r->result.warnings.size() : 0);
  if (s != DARCY_OK) return s;
  *out = r->result.warnings[i].c_str();
  return DARCY_OK;
}

darcy_status darcy_dump_incidence(int nx, int ny, int nz, int order, const char* path) {
  return guarded([&] {
    require(path != nullptr, "null path");
    require(nx > 0 && ny > 0 && nz >= 0 && order > 0, "counts must be positive");
    darcy::IncidenceMatrix m;
    if (nz == 0) {
      require(order == 1, "the 2D incidence is lowest order");
      m = darcy::build_divergence_2d(nx, ny);
    } else {
      m = darcy::build_divergence(order, darcy::Int3{nx, ny, nz});
    }
    std::ofstream out(path);
    if (!out) darcy::fail(darcy::ErrorCategory::kIo, std::string("cannot write '") + path + "'");
    darcy::write_matrix_market(out, m);
    out.flush();
    if (!out) darcy::fail(darcy::ErrorCategory::kIo, std::string("write failed for '") + path + "'");
  });
}

darcy_status darcy_spe10_checksum(const char* path, int anisotropic, uint64_t* out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = darcy::spe10_load(path, anisotropic != 0).checksum;
  });
}

darcy_status darcy_speedup_files(const char* continuous_csv, const char* dd_csv,
                                 const char* out_csv) {
  return guarded([&] {
    require(continuous_csv && dd_csv && out_csv, "null argument");
    std::vector<darcy::TimingRow> c_rows, dd_rows;
    for (const auto& t : darcy::read_timings(continuous_csv))
      if (t.formulation == darcy::Formulation::kContinuous) c_rows.push_back(t);
    for (const auto& t : darcy::read_timings(dd_csv))
      if (t.formulation == darcy::Formulation::kDomainDecomposition) dd_rows.push_back(t);
    const auto rows = darcy::speedup_report(c_rows, dd_rows);
    darcy::write_speedup(rows, out_csv,
                         std::string("continuous=") + continuous_csv + " dd=" + dd_csv);
  });
}

}  // extern "C"
