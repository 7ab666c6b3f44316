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

#include "darcy/error.hpp"
#include "darcy/grid.hpp"
#include "darcy/types.hpp"

namespace darcy {

const char* category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kInvalidArgument: return "invalid-argument";
    case ErrorCategory::kConfig: return "config";
    case ErrorCategory::kSpec: return "spec";
    case ErrorCategory::kTopology: return "topology";
    case ErrorCategory::kData: return "data";
    case ErrorCategory::kSolver: return "solver";
    case ErrorCategory::kOutOfMemory: return "out-of-memory";
    case ErrorCategory::kIo: return "io";
    case ErrorCategory::kInternal: return "internal";
  }
  return "unknown";
}

std::string to_string(Int3 v) {
  if (v.x == v.y && v.y == v.z) return std::to_string(v.x);
  return std::to_string(v.x) + "x" + std::to_string(v.y) + "x" + std::to_string(v.z);
}

void StructuredGrid::face_coords(Index f, int& axis, Int3& c) const {
  axis = 0;
  while (axis < 2 && f >= face_offset(axis) + num_faces(axis)) ++axis;
  f -= face_offset(axis);
  const Int3 e = face_extent(axis);
  int t0, t1;
  tangential_axes(axis, t0, t1);
  c[t0] = static_cast<int>(f % e[t0]);
  f /= e[t0];
  c[t1] = static_cast<int>(f % e[t1]);
  c[axis] = static_cast<int>(f / e[t1]);
}

Index StructuredGrid::side_face(int side, Index k) const {
  const int axis = side_axis(side);
  int t0, t1;
  tangential_axes(axis, t0, t1);
  Int3 c;
  c[t0] = static_cast<int>(k % cells_[t0]);
  c[t1] = static_cast<int>(k / cells_[t0]);
  c[axis] = side_is_plus(side) ? cells_[axis] : 0;
  return face_index(axis, c);
}

}  // namespace darcy
