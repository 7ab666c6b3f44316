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

#ifndef DARCY_TYPES_HPP
#define DARCY_TYPES_HPP

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string>

namespace darcy {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Index = std::int64_t;

// Integer triple used for per-axis counts and structured coordinates.
struct Int3 {
  int x = 0;
  int y = 0;
  int z = 0;

  constexpr int operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  constexpr int& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
  constexpr Index product() const { return Index{x} * y * z; }
  constexpr bool operator==(const Int3&) const = default;

  static constexpr Int3 uniform(int v) { return {v, v, v}; }
};

constexpr Int3 operator*(Int3 a, Int3 b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }
constexpr Int3 operator*(Int3 a, int s) { return {a.x * s, a.y * s, a.z * s}; }
constexpr Int3 operator+(Int3 a, Int3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }

std::string to_string(Int3 v);

// Sides of a box, in the order used for every boundary enumeration:
// x-, x+, y-, y+, z-, z+.
enum class Side : int { kXMinus = 0, kXPlus, kYMinus, kYPlus, kZMinus, kZPlus };

constexpr int side_axis(int side) { return side / 2; }
constexpr bool side_is_plus(int side) { return side % 2 == 1; }

}  // namespace darcy

#endif  // DARCY_TYPES_HPP
