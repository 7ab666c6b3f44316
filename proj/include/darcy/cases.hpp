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

#ifndef DARCY_CASES_HPP
#define DARCY_CASES_HPP

#include "darcy/postproc.hpp"
#include "darcy/solver.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace darcy {

struct ProblemDefinition {
  std::string id;
  DarcyProblem problem;
  std::optional<ExactSolution> exact;
  std::uint64_t checksum = 0;  // permeability input checksum, 0 when synthetic
};

// Manufactured problem on the deformed unit cube.
Mat3 wheeler_permeability(const Vec3& x);
ExactSolution wheeler_exact();

/// Largest deviation between the analytic gradient / source and central
/// differences (step `step`) at `samples` seeded random points of the unit box.
double exact_solution_self_check(const ExactSolution& exact,
                                 const std::function<Mat3(const Vec3&)>& permeability,
                                 int samples = 100, double step = 1e-5,
                                 std::uint64_t seed = 7);

/// The manufactured case: wheeler mapping, Dirichlet on x^ = 0, 1 and Neumann
/// on the y and z sides. K = K1 * K2 per axis.
ProblemDefinition wheeler_case(int order, Int3 k1, Int3 k2);

// SPE10 permeability blocks.
struct PermeabilityField {
  static constexpr Int3 kDims{60, 220, 85};
  static constexpr Index kBlocks = 1122000;

  Int3 dims = kDims;
  Vec3 block_size{20.0, 10.0, 2.0};  // ft
  std::vector<Vec3> k;               // diagonal per block, x fastest then y then z
  std::uint64_t checksum = 0;        // FNV-1a 64 of the raw file bytes
  std::string source;                // file path or "synthetic"

  Vec3 extent() const { return block_size.cwiseProduct(Vec3(dims.x, dims.y, dims.z)); }
};

std::uint64_t fnv1a64(const std::string& bytes);

/// Reads whitespace-separated scalars. Isotropic: first 1,122,000 values.
/// Anisotropic: 3 x 1,122,000 values (all kx, then ky, then kz).
/// Throws kIo if unreadable, kData on short files or nonpositive/NaN values.
PermeabilityField spe10_load(const std::string& path, bool anisotropic = false);
/// Parses already-loaded text (same rules as spe10_load).
PermeabilityField spe10_parse(const std::string& text, bool anisotropic, const std::string& source);

/// Deterministic layered log-normal field with the SPE10 dimensions.
PermeabilityField spe10_synthetic(std::uint64_t seed);

/// Keeps the top `layers` layers.
PermeabilityField spe10_crop(const PermeabilityField& field, int layers = 10);

// Named decompositions (K1, K2) for the full model and for the crop.
struct Decomposition {
  Int3 subdomains;
  Int3 per_subdomain;
};
Decomposition spe10_decomposition(const std::string& name, bool crop);

/// SPE10 problem: f = 0, p^ = 1 on x^ = 0 and 0 on x^ = 1, no flow on the other
/// sides, one lowest-order element per block.
ProblemDefinition spe10_case(const PermeabilityField& field, Int3 k1, Int3 k2, int order = 1);

}  // namespace darcy

#endif  // DARCY_CASES_HPP
