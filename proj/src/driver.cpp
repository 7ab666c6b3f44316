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

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <numeric>
#include <sstream>

namespace darcy {

namespace {

int parse_int(const std::string& s, const char* what) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    fail(ErrorCategory::kConfig, std::string("invalid ") + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::string triple(Int3 v) {
  return std::to_string(v.x) + "," + std::to_string(v.y) + "," + std::to_string(v.z);
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& echo, const std::string& header)
      : path_(path.string()), f_(std::fopen(path_.c_str(), "w")) {
    if (!f_) fail(ErrorCategory::kIo, "cannot write '" + path_ + "'");
    line("# " + echo);
    line(header);
  }
  ~CsvFile() {
    if (f_) std::fclose(f_);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  void line(const std::string& s) {
    if (std::fputs(s.c_str(), f_) < 0 || std::fputc('\n', f_) == EOF)
      fail(ErrorCategory::kIo, "write failed for '" + path_ + "'");
  }
  void close() {
    const int rc = std::fclose(f_);
    f_ = nullptr;
    if (rc != 0) fail(ErrorCategory::kIo, "close failed for '" + path_ + "'");
  }

 private:
  std::string path_;
  std::FILE* f_;
};

DarcySolution solve(Formulation f, const DarcyProblem& problem, const SolverOptions& opt) {
  return f == Formulation::kContinuous ? solve_continuous(problem, opt) : solve_dd(problem, opt);
}

}  // namespace

CaseKind parse_case(const std::string& s) {
  if (s == "manufactured") return CaseKind::kManufactured;
  if (s == "spe10") return CaseKind::kSpe10;
  if (s == "spe10-crop") return CaseKind::kSpe10Crop;
  fail(ErrorCategory::kConfig, "unknown case '" + s + "' (manufactured, spe10, spe10-crop)");
}

std::string case_name(CaseKind c) {
  switch (c) {
    case CaseKind::kManufactured: return "manufactured";
    case CaseKind::kSpe10: return "spe10";
    case CaseKind::kSpe10Crop: return "spe10-crop";
  }
  return "?";
}

FormulationChoice parse_formulation(const std::string& s) {
  if (s == "continuous") return FormulationChoice::kContinuous;
  if (s == "dd") return FormulationChoice::kDomainDecomposition;
  if (s == "both") return FormulationChoice::kBoth;
  fail(ErrorCategory::kConfig, "unknown formulation '" + s + "' (continuous, dd, both)");
}

std::string formulation_name(FormulationChoice f) {
  switch (f) {
    case FormulationChoice::kContinuous: return "continuous";
    case FormulationChoice::kDomainDecomposition: return "dd";
    case FormulationChoice::kBoth: return "both";
  }
  return "?";
}

std::string formulation_name(Formulation f) {
  return f == Formulation::kContinuous ? "continuous" : "dd";
}

Int3 parse_triple(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) return Int3::uniform(parse_int(parts[0], "count"));
  if (parts.size() == 3)
    return {parse_int(parts[0], "count"), parse_int(parts[1], "count"),
            parse_int(parts[2], "count")};
  fail(ErrorCategory::kConfig, "expected 'n' or 'nx,ny,nz', got '" + s + "'");
}

std::vector<int> parse_sweep(const std::string& s) {
  std::string body = s;
  if (body.rfind("K=", 0) == 0) body = body.substr(2);
  std::vector<int> out;
  for (const auto& p : split(body, ',')) out.push_back(parse_int(p, "sweep value"));
  if (out.empty()) fail(ErrorCategory::kConfig, "empty sweep");
  return out;
}

std::vector<std::string> RunConfig::validate() const {
  std::vector<std::string> warnings;
  if (order < 1 || order > 15) fail(ErrorCategory::kConfig, "order N must be in 1..15");
  if (repeat < 1) fail(ErrorCategory::kConfig, "repeat must be >= 1");
  if (threads < 1) fail(ErrorCategory::kConfig, "threads must be >= 1");
  if (!(memory_budget > 0.0)) fail(ErrorCategory::kConfig, "memory budget must be positive");
  if (quadrature_bump < 0) fail(ErrorCategory::kConfig, "quadrature bump must be >= 0");
  if (sample_resolution < 0) fail(ErrorCategory::kConfig, "sample resolution must be >= 0");
  auto positive = [](const std::optional<Int3>& v) {
    return !v || (v->x > 0 && v->y > 0 && v->z > 0);
  };
  if (!positive(k1) || !positive(k2)) fail(ErrorCategory::kConfig, "K1 and K2 must be positive");
  if (k < 0) fail(ErrorCategory::kConfig, "K must be positive");
  if (case_kind == CaseKind::kManufactured) {
    if (order > 3) warnings.push_back("order N = " + std::to_string(order) +
                                      " outside the reference range 1..3");
    if (!sweep.empty()) {
      for (int v : sweep)
        if (v < 1) fail(ErrorCategory::kConfig, "sweep values must be positive");
    } else if (k == 0 && !(k1 && k2)) {
      fail(ErrorCategory::kConfig, "manufactured case needs --K, --sweep or --K1 with --K2");
    }
    for (int v : sweep.empty() ? std::vector<int>{k} : sweep) decomposition_for(v);
  } else {
    if (!sweep.empty()) fail(ErrorCategory::kConfig, "--sweep applies to the manufactured case");
    if (order != 1) fail(ErrorCategory::kConfig, "SPE10 uses lowest-order elements (N = 1)");
    if (k1.has_value() != k2.has_value())
      fail(ErrorCategory::kConfig, "SPE10 needs both K1 and K2, or --decomp");
    if (!k1) spe10_decomposition(decomposition, case_kind == CaseKind::kSpe10Crop);
  }
  return warnings;
}

std::pair<Int3, Int3> RunConfig::decomposition_for(int kk) const {
  if (kk == 0) {
    if (!(k1 && k2)) fail(ErrorCategory::kConfig, "K is not set");
    return {*k1, *k2};
  }
  const Int3 total = Int3::uniform(kk);
  auto divide = [&](Int3 part, const char* name) {
    Int3 other;
    for (int a = 0; a < 3; ++a) {
      if (part[a] <= 0 || total[a] % part[a] != 0)
        fail(ErrorCategory::kConfig, std::string(name) + " = " + to_string(part) +
                                         " does not divide K = " + std::to_string(kk));
      other[a] = total[a] / part[a];
    }
    return other;
  };
  if (k1 && k2) {
    if (!(*k1 * *k2 == total))
      fail(ErrorCategory::kConfig, "K1 * K2 = " + to_string(*k1 * *k2) +
                                       " does not match K = " + std::to_string(kk));
    return {*k1, *k2};
  }
  if (k1) return {*k1, divide(*k1, "K1")};
  if (k2) return {divide(*k2, "K2"), *k2};
  // Default pattern: two elements per subdomain and axis for N = 1, 2, one for N >= 3.
  const int per = (order >= 3 || kk % 2 != 0) ? 1 : 2;
  return {Int3::uniform(kk / per), Int3::uniform(per)};
}

std::string RunConfig::echo(bool runtime) const {
  std::ostringstream s;
  s << "case=" << case_name(case_kind) << " formulation=" << formulation_name(formulation)
    << " N=" << order;
  if (k > 0) s << " K=" << k;
  if (k1) s << " K1=" << triple(*k1);
  if (k2) s << " K2=" << triple(*k2);
  if (!sweep.empty()) {
    s << " sweep=K=";
    for (size_t i = 0; i < sweep.size(); ++i) s << (i ? "," : "") << sweep[i];
  }
  if (case_kind != CaseKind::kManufactured) {
    if (!k1) s << " decomp=" << decomposition;
    s << " perm=" << (perm_file.empty() ? std::string("synthetic") : perm_file)
      << " anisotropic=" << (anisotropic ? 1 : 0);
  }
  s << " seed=" << seed << " mem_budget=" << format_double(memory_budget)
    << " quad_bump=" << quadrature_bump << " cond=" << (condition ? 1 : 0)
    << " sample_resolution=" << sample_resolution;
  if (runtime) s << " threads=" << threads << " repeat=" << repeat << " out=" << out_dir;
  return s.str();
}

ProblemDefinition make_problem(const RunConfig& config, int k) {
  if (config.case_kind == CaseKind::kManufactured) {
    const auto [k1, k2] = config.decomposition_for(k);
    ProblemDefinition def = wheeler_case(config.order, k1, k2);
    def.problem.assembly.quadrature_bump = config.quadrature_bump;
    return def;
  }
  const bool crop = config.case_kind == CaseKind::kSpe10Crop;
  PermeabilityField field = config.perm_file.empty()
                                ? spe10_synthetic(config.seed)
                                : spe10_load(config.perm_file, config.anisotropic);
  if (crop) field = spe10_crop(field, 10);
  Decomposition d;
  if (config.k1 && config.k2) d = {*config.k1, *config.k2};
  else d = spe10_decomposition(config.decomposition, crop);
  ProblemDefinition def = spe10_case(field, d.subdomains, d.per_subdomain, config.order);
  def.problem.assembly.quadrature_bump = config.quadrature_bump;
  return def;
}

std::vector<SpeedupRow> speedup_report(const std::vector<TimingRow>& continuous,
                                       const std::vector<TimingRow>& dd) {
  std::vector<SpeedupRow> out;
  for (const TimingRow& d : dd) {
    const auto it = std::find_if(continuous.begin(), continuous.end(), [&](const TimingRow& c) {
      return c.case_id == d.case_id && c.order == d.order && c.k == d.k;
    });
    if (it == continuous.end()) {
      fail(ErrorCategory::kInvalidArgument, "no continuous run on the mesh N = " +
                                                std::to_string(d.order) + ", K = " +
                                                to_string(d.k) + " to compare with");
    }
    if (!it->out_of_memory && it->dof_p != d.dof_p) {
      fail(ErrorCategory::kInvalidArgument, "continuous and DD runs at K = " + to_string(d.k) +
                                                " have different topologies");
    }
    SpeedupRow r;
    r.order = d.order;
    r.k = d.k;
    r.dd_s = d.total_s;
    if (!it->out_of_memory) {
      r.continuous_s = it->total_s;
      r.ratio = d.total_s > 0.0 ? it->total_s / d.total_s
                                : std::numeric_limits<double>::infinity();
    }
    out.push_back(r);
  }
  return out;
}

RunResult run_campaign(const RunConfig& config) {
  RunResult result;
  result.config = config;
  result.warnings = config.validate();

  std::vector<Formulation> formulations;
  if (config.formulation != FormulationChoice::kDomainDecomposition)
    formulations.push_back(Formulation::kContinuous);
  if (config.formulation != FormulationChoice::kContinuous)
    formulations.push_back(Formulation::kDomainDecomposition);
  const bool both = config.formulation == FormulationChoice::kBoth;
  const bool manufactured = config.case_kind == CaseKind::kManufactured;
  const int resolution =
      config.sample_resolution > 0 ? config.sample_resolution : (manufactured ? 2 : 1);

  SolverOptions sopt;
  sopt.threads = config.threads;
  sopt.memory_budget = config.memory_budget;
  sopt.condition = config.condition;
  PostprocOptions popt;
  popt.threads = config.threads;
  popt.quadrature_bump = config.quadrature_bump;

  const std::vector<int> ks =
      config.sweep.empty() ? std::vector<int>{manufactured ? config.k : 0} : config.sweep;
  for (int k : ks) {
    const ProblemDefinition def = make_problem(config, k);
    const MeshSpec& spec = def.problem.spec;
    std::optional<DarcySolution> solved[2];
    std::vector<Sample> samples[2];
    for (Formulation f : formulations) {
      TimingRow t;
      t.case_id = def.id;
      t.formulation = f;
      t.order = spec.order;
      t.k = spec.elements;
      t.k1 = spec.subdomains;
      t.k2 = spec.per_subdomain;
      std::vector<double> setup, solve_t, recover, total;
      std::optional<DarcySolution> sol;
      try {
        for (int r = 0; r < config.repeat; ++r) {
          sol = solve(f, def.problem, sopt);
          setup.push_back(sol->report.setup_s);
          solve_t.push_back(sol->report.lambda_s);
          recover.push_back(sol->report.recover_s);
          total.push_back(sol->report.total_s);
        }
      } catch (const Error& e) {
        if (!(both && f == Formulation::kContinuous &&
              e.category() == ErrorCategory::kOutOfMemory))
          throw;
        result.warnings.push_back(std::string("continuous solve skipped: ") + e.what());
        t.out_of_memory = true;
        result.timings.push_back(t);
        continue;
      }
      const SolveReport& rep = sol->report;
      t.repeats = config.repeat;
      t.setup_s = median(setup);
      t.solve_s = median(solve_t);
      t.recover_s = median(recover);
      t.total_s = median(total);
      t.total_mean_s = mean(total);
      t.dof_u = rep.dof_u;
      t.dof_p = rep.dof_p;
      t.dof_lambda = rep.dof_lambda;
      t.stored_entries = rep.stored_entries;
      result.timings.push_back(t);

      ErrorRow er;
      er.case_id = def.id;
      er.formulation = f;
      er.order = spec.order;
      er.k = spec.elements;
      er.k1 = spec.subdomains;
      er.k2 = spec.per_subdomain;
      er.checksum = def.checksum;
      er.conservation = rep.conservation;
      er.mass_balance = mass_balance(*sol);
      if (def.exact) {
        er.has_exact = true;
        er.errors = compute_errors(*sol, *def.exact, popt);
      } else {
        er.errors.h = 2.0 / spec.elements.x;
        er.errors.l2_div_residual = l2_div_residual(spec, sol->blocks, popt);
      }
      result.errors.push_back(er);

      if (config.condition) {
        CondRow c;
        c.case_id = def.id;
        c.formulation = f;
        c.order = spec.order;
        c.k = spec.elements;
        c.cond_pressure = rep.cond_pressure;
        c.cond_pressure_eliminated = rep.cond_pressure_eliminated;
        c.cond_lambda = rep.cond_lambda;
        result.cond.push_back(c);
      }

      const int slot = f == Formulation::kContinuous ? 0 : 1;
      samples[slot] = sample_fields(*sol, resolution, popt);
      for (size_t i = 0; i < samples[slot].size(); ++i) {
        SampleRow s;
        s.case_id = def.id;
        s.formulation = f;
        s.order = spec.order;
        s.k = spec.elements;
        s.index = static_cast<Index>(i);
        s.sample = samples[slot][i];
        result.samples.push_back(s);
      }
      if (both) solved[slot] = std::move(sol);
    }
    if (solved[0] && solved[1]) {
      EquivalenceRow eq;
      eq.order = spec.order;
      eq.k = spec.elements;
      eq.flux = (global_flux(*solved[0]) - global_flux(*solved[1])).lpNorm<Eigen::Infinity>();
      eq.pressure =
          (global_pressure(*solved[0]) - global_pressure(*solved[1])).lpNorm<Eigen::Infinity>();
      for (size_t i = 0; i < samples[0].size(); ++i) {
        eq.samples = std::max(eq.samples, std::abs(samples[0][i].p - samples[1][i].p));
        eq.samples = std::max(eq.samples, (samples[0][i].u - samples[1][i].u).lpNorm<Eigen::Infinity>());
      }
      result.equivalence.push_back(eq);
    }
  }

  if (both) {
    std::vector<TimingRow> c, d;
    for (const auto& t : result.timings)
      (t.formulation == Formulation::kContinuous ? c : d).push_back(t);
    result.speedup = speedup_report(c, d);
  }

  if (ks.size() >= 2) {
    for (Formulation f : formulations) {
      std::vector<const ErrorRow*> rows;
      for (const auto& e : result.errors)
        if (e.formulation == f && e.has_exact) rows.push_back(&e);
      if (rows.size() < 2) continue;
      const std::pair<const char*, double ErrorSummary::*> metrics[] = {
          {"hdiv", &ErrorSummary::hdiv_error},
          {"h1", &ErrorSummary::h1_error},
          {"l2_pressure", &ErrorSummary::l2_pressure},
          {"l2_velocity", &ErrorSummary::l2_velocity}};
      for (const auto& [name, member] : metrics) {
        std::vector<double> h, err;
        for (const ErrorRow* r : rows) {
          h.push_back(r->errors.h);
          err.push_back(r->errors.*member);
        }
        if (std::any_of(err.begin(), err.end(), [](double v) { return !(v > 0.0); })) {
          result.warnings.push_back(std::string("no rate for ") + name + ": zero error");
          continue;
        }
        RateRow rr;
        rr.formulation = f;
        rr.order = config.order;
        rr.metric = name;
        rr.rates = convergence_rates(h, err);
        result.rates.push_back(rr);
      }
    }
  }
  return result;
}

std::vector<TimingRow> read_timings(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "r");
  if (!f) fail(ErrorCategory::kIo, "cannot open '" + path + "'");
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> guard(f, std::fclose);
  std::vector<TimingRow> rows;
  std::string line;
  bool header = false;
  int number = 0;
  for (int c = std::fgetc(f);; c = std::fgetc(f)) {
    if (c != EOF && c != '\n') {
      line.push_back(static_cast<char>(c));
      continue;
    }
    ++number;
    if (!line.empty() && line[0] != '#') {
      if (!header) {
        header = true;
      } else {
        const auto v = split(line, ',');
        auto bad = [&] {
          fail(ErrorCategory::kData, path + ":" + std::to_string(number) + ": malformed row");
        };
        if (v.size() != 23) bad();
        try {
          TimingRow r;
          r.case_id = v[0];
          if (v[1] != "continuous" && v[1] != "dd") bad();
          r.formulation = v[1] == "continuous" ? Formulation::kContinuous
                                               : Formulation::kDomainDecomposition;
          r.order = std::stoi(v[2]);
          r.k = {std::stoi(v[3]), std::stoi(v[4]), std::stoi(v[5])};
          r.k1 = {std::stoi(v[6]), std::stoi(v[7]), std::stoi(v[8])};
          r.k2 = {std::stoi(v[9]), std::stoi(v[10]), std::stoi(v[11])};
          r.out_of_memory = v[12] == "out_of_memory";
          if (!r.out_of_memory) {
            if (v[12] != "ok") bad();
            r.repeats = std::stoi(v[13]);
            r.setup_s = std::stod(v[14]);
            r.solve_s = std::stod(v[15]);
            r.recover_s = std::stod(v[16]);
            r.total_s = std::stod(v[17]);
            r.total_mean_s = std::stod(v[18]);
            r.dof_u = std::stoll(v[19]);
            r.dof_p = std::stoll(v[20]);
            r.dof_lambda = std::stoll(v[21]);
            r.stored_entries = std::stod(v[22]);
          }
          rows.push_back(r);
        } catch (const std::logic_error&) {
          bad();
        }
      }
    }
    line.clear();
    if (c == EOF) break;
  }
  if (std::ferror(f)) fail(ErrorCategory::kIo, "error reading '" + path + "'");
  return rows;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "-";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_speedup(const std::vector<SpeedupRow>& rows, const std::string& path,
                   const std::string& echo) {
  CsvFile f(path, echo, "N,Kx,Ky,Kz,continuous_s,dd_s,speedup");
  for (const auto& r : rows)
    f.line(std::to_string(r.order) + "," + triple(r.k) + "," + format_double(r.continuous_s) +
           "," + format_double(r.dd_s) + "," + format_double(r.ratio));
  f.close();
}

void write_reports(const RunResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCategory::kIo, "cannot create output directory '" + dir + "': " + ec.message());
  const fs::path root(dir);
  const std::string echo = result.config.echo(false);
  const std::string echo_runtime = result.config.echo(true);
  const auto d = format_double;
  auto mesh_cols = [](int order, Int3 k) {
    return std::to_string(order) + "," + triple(k);
  };

  {
    CsvFile f(root / "errors.csv", echo,
              "case,formulation,N,Kx,Ky,Kz,K1x,K1y,K1z,K2x,K2y,K2z,h,l2_div_residual,"
              "hdiv_error,h1_error,l2_pressure,l2_velocity,conservation,mass_balance,checksum");
    for (const auto& r : result.errors) {
      const ErrorSummary& e = r.errors;
      const auto x = [&](double v) { return r.has_exact ? d(v) : std::string("-"); };
      f.line(r.case_id + "," + formulation_name(r.formulation) + "," + mesh_cols(r.order, r.k) +
             "," + triple(r.k1) + "," + triple(r.k2) + "," + d(e.h) + "," +
             d(e.l2_div_residual) + "," + x(e.hdiv_error) + "," + x(e.h1_error) + "," +
             x(e.l2_pressure) + "," + x(e.l2_velocity) + "," + d(r.conservation) + "," +
             d(r.mass_balance) + "," + (r.checksum ? hex64(r.checksum) : std::string("-")));
    }
    f.close();
  }
  {
    CsvFile f(root / "timings.csv", echo_runtime,
              "case,formulation,N,Kx,Ky,Kz,K1x,K1y,K1z,K2x,K2y,K2z,status,repeats,setup_s,"
              "solve_s,recover_s,total_s,total_mean_s,dof_u,dof_p,dof_lambda,stored_entries");
    for (const auto& r : result.timings) {
      std::string line = r.case_id + "," + formulation_name(r.formulation) + "," +
                         mesh_cols(r.order, r.k) + "," + triple(r.k1) + "," + triple(r.k2) + ",";
      if (r.out_of_memory) {
        line += "out_of_memory,0,-,-,-,-,-,-,-,-,-";
      } else {
        line += "ok," + std::to_string(r.repeats) + "," + d(r.setup_s) + "," + d(r.solve_s) +
                "," + d(r.recover_s) + "," + d(r.total_s) + "," + d(r.total_mean_s) + "," +
                std::to_string(r.dof_u) + "," + std::to_string(r.dof_p) + "," +
                std::to_string(r.dof_lambda) + "," + d(r.stored_entries);
      }
      f.line(line);
    }
    f.close();
  }
  {
    CsvFile f(root / "cond.csv", echo, "case,formulation,N,Kx,Ky,Kz,cond_pressure,cond_pressure_eliminated,cond_lambda");
    for (const auto& r : result.cond)
      f.line(r.case_id + "," + formulation_name(r.formulation) + "," + mesh_cols(r.order, r.k) +
             "," + d(r.cond_pressure) + "," + d(r.cond_pressure_eliminated) + "," +
             d(r.cond_lambda));
    f.close();
  }
  {
    CsvFile f(root / "samples.csv", echo, "case,formulation,N,Kx,Ky,Kz,index,x,y,z,p,ux,uy,uz");
    for (const auto& r : result.samples) {
      const Sample& s = r.sample;
      f.line(r.case_id + "," + formulation_name(r.formulation) + "," + mesh_cols(r.order, r.k) +
             "," + std::to_string(r.index) + "," + d(s.x.x()) + "," + d(s.x.y()) + "," +
             d(s.x.z()) + "," + d(s.p) + "," + d(s.u.x()) + "," + d(s.u.y()) + "," + d(s.u.z()));
    }
    f.close();
  }
  if (!result.speedup.empty())
    write_speedup(result.speedup, (root / "speedup.csv").string(), echo_runtime);
  if (!result.rates.empty()) {
    CsvFile f(root / "rates.csv", echo, "formulation,N,metric,least_squares,pairwise");
    for (const auto& r : result.rates) {
      std::string pairwise;
      for (size_t i = 0; i < r.rates.pairwise.size(); ++i)
        pairwise += (i ? ";" : "") + d(r.rates.pairwise[i]);
      f.line(formulation_name(r.formulation) + "," + std::to_string(r.order) + "," + r.metric +
             "," + d(r.rates.least_squares) + "," + pairwise);
    }
    f.close();
  }
  if (!result.equivalence.empty()) {
    CsvFile f(root / "equivalence.csv", echo,
              "N,Kx,Ky,Kz,max_flux_diff,max_pressure_diff,max_sample_diff");
    for (const auto& r : result.equivalence)
      f.line(mesh_cols(r.order, r.k) + "," + d(r.flux) + "," + d(r.pressure) + "," +
             d(r.samples));
    f.close();
  }
}

}  // namespace darcy
