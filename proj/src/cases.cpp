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

#include "darcy/cases.hpp"

#include "darcy/error.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace darcy {

Mat3 wheeler_permeability(const Vec3& p) {
  const double x = p.x(), y = p.y(), z = p.z();
  const double s = std::sin(x * y);
  Mat3 k;
  k << x * x + y * y + 1.0, 0.0, 0.0,
       0.0, z * z + 1.0, s,
       0.0, s, x * x * y * y + 1.0;
  return k;
}

ExactSolution wheeler_exact() {
  ExactSolution e;
  e.pressure = [](const Vec3& x) { return x.x() + x.y() + x.z() - 1.5; };
  e.gradient = [](const Vec3&) { return Vec3(1.0, 1.0, 1.0); };
  e.velocity = [](const Vec3& x) { return Vec3(-wheeler_permeability(x) * Vec3::Ones()); };
  e.source = [](const Vec3& p) {
    const double x = p.x(), y = p.y();
    return -(2.0 * x + x * std::cos(x * y));
  };
  return e;
}

double exact_solution_self_check(const ExactSolution& exact,
                                 const std::function<Mat3(const Vec3&)>& permeability,
                                 int samples, double step, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec3 x(uniform(), uniform(), uniform());
    double div = 0.0;
    for (int a = 0; a < 3; ++a) {
      Vec3 hi = x, lo = x;
      hi[a] += step;
      lo[a] -= step;
      const double dp = (exact.pressure(hi) - exact.pressure(lo)) / (2 * step);
      worst = std::max(worst, std::abs(dp - exact.gradient(x)[a]));
      const Vec3 uh = -permeability(hi) * exact.gradient(hi);
      const Vec3 ul = -permeability(lo) * exact.gradient(lo);
      div += (uh[a] - ul[a]) / (2 * step);
    }
    worst = std::max(worst, std::abs(div - exact.source(x)));
    const Vec3 u = -permeability(x) * exact.gradient(x);
    worst = std::max(worst, (u - exact.velocity(x)).norm());
  }
  return worst;
}

ProblemDefinition wheeler_case(int order, Int3 k1, Int3 k2) {
  ProblemDefinition def;
  def.id = "manufactured";
  DarcyProblem& p = def.problem;
  p.spec.elements = k1 * k2;
  p.spec.subdomains = k1;
  p.spec.per_subdomain = k2;
  p.spec.order = order;
  p.spec.mapping.kind = MappingKind::kWheelerDeformed;
  p.spec.validate();
  p.bc.sides = {BcType::kDirichlet, BcType::kDirichlet, BcType::kNeumann,
                BcType::kNeumann,   BcType::kNeumann,   BcType::kNeumann};
  p.permeability = std::make_shared<FunctionPermeability>(wheeler_permeability);
  const ExactSolution exact = wheeler_exact();
  p.source = exact.source;
  p.pressure = exact.pressure;
  const VectorField velocity = exact.velocity;
  p.flux = [velocity](const Vec3& x, const Vec3& n) { return velocity(x).dot(n); };
  def.exact = exact;
  return def;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

PermeabilityField spe10_parse(const std::string& text, bool anisotropic,
                              const std::string& source) {
  const Index n = PermeabilityField::kBlocks;
  const Index needed = anisotropic ? 3 * n : n;
  std::vector<double> values;
  values.reserve(needed);
  const char* p = text.c_str();
  const char* end = p + text.size();
  while (static_cast<Index>(values.size()) < needed) {
    while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (p >= end) break;
    char* next = nullptr;
    errno = 0;
    const double v = std::strtod(p, &next);
    const Index index = static_cast<Index>(values.size());
    if (next == p) {
      fail(ErrorCategory::kData, "permeability value " + std::to_string(index) +
                                     " is not a number");
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorCategory::kData, "permeability value " + std::to_string(index) +
                                     " is nonpositive or not finite");
    }
    values.push_back(v);
    p = next;
  }
  if (static_cast<Index>(values.size()) < needed) {
    fail(ErrorCategory::kData, "short permeability file: expected " + std::to_string(needed) +
                                   " values (1,122,000 blocks), found " +
                                   std::to_string(values.size()));
  }
  PermeabilityField f;
  f.source = source;
  f.checksum = fnv1a64(text);
  f.k.resize(n);
  for (Index i = 0; i < n; ++i) {
    f.k[i] = anisotropic ? Vec3(values[i], values[n + i], values[2 * n + i])
                         : Vec3::Constant(values[i]);
  }
  return f;
}

PermeabilityField spe10_load(const std::string& path, bool anisotropic) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::kIo, "cannot open permeability file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCategory::kIo, "error reading permeability file '" + path + "'");
  return spe10_parse(buf.str(), anisotropic, path);
}

PermeabilityField spe10_synthetic(std::uint64_t seed) {
  PermeabilityField f;
  f.source = "synthetic";
  const Int3 d = f.dims;
  f.k.resize(d.product());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int z = 0; z < d.z; ++z) {
    // Smooth layers on top, rougher channel-like contrast below.
    const bool upper = z < 35;
    const double mean = upper ? 2.0 + 0.5 * std::sin(0.4 * z) : 1.0 + 0.8 * std::cos(0.3 * z);
    const double sigma = upper ? 1.0 : 2.2;
    for (int y = 0; y < d.y; ++y)
      for (int x = 0; x < d.x; ++x) {
        const double channel = upper ? 0.0 : 1.5 * std::sin(0.15 * x + 0.05 * y + 0.7 * z);
        const double logk = mean + channel + sigma * normal(rng);
        f.k[x + Index{d.x} * (y + Index{d.y} * z)] = Vec3::Constant(std::exp(logk));
      }
  }
  return f;
}

PermeabilityField spe10_crop(const PermeabilityField& field, int layers) {
  if (layers < 1 || layers > field.dims.z)
    fail(ErrorCategory::kConfig, "crop layer count out of range");
  PermeabilityField c = field;
  c.dims.z = layers;
  c.k.assign(field.k.begin(), field.k.begin() + Index{field.dims.x} * field.dims.y * layers);
  return c;
}

Decomposition spe10_decomposition(const std::string& name, bool crop) {
  if (name == "case1") return {Int3{15, 55, crop ? 2 : 17}, Int3{4, 4, 5}};
  if (name == "case2") return {Int3{12, 44, crop ? 2 : 17}, Int3{5, 5, 5}};
  if (name == "case3" && crop) return {Int3{6, 22, 2}, Int3{10, 10, 5}};
  fail(ErrorCategory::kConfig, "unknown decomposition '" + name + "'" +
                                   (crop ? "" : " for the full model"));
}

ProblemDefinition spe10_case(const PermeabilityField& field, Int3 k1, Int3 k2, int order) {
  if (order != 1) fail(ErrorCategory::kSpec, "SPE10 uses lowest-order elements (N = 1)");
  if (!(k1 * k2 == field.dims)) {
    fail(ErrorCategory::kSpec, "decomposition " + to_string(k1) + " * " + to_string(k2) +
                                   " does not match the field " + to_string(field.dims));
  }
  ProblemDefinition def;
  def.id = field.dims.z == PermeabilityField::kDims.z ? "spe10" : "spe10-crop";
  def.checksum = field.checksum;
  DarcyProblem& p = def.problem;
  p.spec.elements = field.dims;
  p.spec.subdomains = k1;
  p.spec.per_subdomain = k2;
  p.spec.order = order;
  p.spec.mapping.kind = MappingKind::kSpe10Box;
  p.spec.mapping.extent = field.extent();
  p.bc.sides = {BcType::kDirichlet, BcType::kDirichlet, BcType::kNeumann,
                BcType::kNeumann,   BcType::kNeumann,   BcType::kNeumann};
  p.permeability =
      std::make_shared<CellPermeability>(std::make_shared<const std::vector<Vec3>>(field.k));
  const double mid = 0.5 * field.extent().x();
  p.pressure = [mid](const Vec3& x) { return x.x() < mid ? 1.0 : 0.0; };
  return def;
}

}  // namespace darcy
