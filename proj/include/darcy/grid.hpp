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

#ifndef DARCY_GRID_HPP
#define DARCY_GRID_HPP

#include "darcy/types.hpp"

namespace darcy {

// Tangential axes of a face family, lower axis first.
inline void tangential_axes(int axis, int& t0, int& t1) {
  t0 = axis == 0 ? 1 : 0;
  t1 = axis == 2 ? 1 : 2;
}

// Numbering of the cells and faces of a structured box of cells.
//
// Cells are lexicographic, x fastest. Faces come in three families (normal
// along x, y, z) stored one after another. Inside a family the two
// tangential coordinates are lexicographic (lower axis fastest) and the
// normal coordinate is slowest; for z-faces this coincides with plain
// lexicographic order. Every element, every subdomain and the whole fine
// mesh use this rule, so identical boxes produce identical operators.
class StructuredGrid {
 public:
  StructuredGrid() = default;
  explicit StructuredGrid(Int3 cells) : cells_(cells) {}

  Int3 cells() const { return cells_; }
  Index num_cells() const { return cells_.product(); }

  // Face counts of the family whose normal is `axis`.
  Int3 face_extent(int axis) const {
    Int3 e = cells_;
    e[axis] += 1;
    return e;
  }
  Index num_faces(int axis) const { return face_extent(axis).product(); }
  Index num_faces() const { return num_faces(0) + num_faces(1) + num_faces(2); }
  Index face_offset(int axis) const {
    Index off = 0;
    for (int a = 0; a < axis; ++a) off += num_faces(a);
    return off;
  }

  Index cell_index(Int3 c) const {
    return c.x + Index{cells_.x} * (c.y + Index{cells_.y} * c.z);
  }

  Index face_index(int axis, Int3 c) const {
    const Int3 e = face_extent(axis);
    int t0, t1;
    tangential_axes(axis, t0, t1);
    return face_offset(axis) + c[t0] + Index{e[t0]} * (c[t1] + Index{e[t1]} * c[axis]);
  }

  // Inverse of face_index: family axis and coordinates.
  void face_coords(Index f, int& axis, Int3& c) const;

  Int3 cell_coords(Index i) const {
    Int3 c;
    c.x = static_cast<int>(i % cells_.x);
    i /= cells_.x;
    c.y = static_cast<int>(i % cells_.y);
    c.z = static_cast<int>(i / cells_.y);
    return c;
  }

  // Faces on the outer boundary of the box, ordered by side (x-, x+, y-,
  // y+, z-, z+) and, within a side, by the two tangential coordinates
  // (lower axis fastest).
  Index num_boundary_faces() const {
    Index n = 0;
    for (int s = 0; s < 6; ++s) n += num_side_faces(s);
    return n;
  }
  Index num_side_faces(int side) const {
    const int axis = side_axis(side);
    return cells_.product() / cells_[axis];
  }
  Index side_offset(int side) const {
    Index off = 0;
    for (int s = 0; s < side; ++s) off += num_side_faces(s);
    return off;
  }
  // Face index of the k-th boundary face of `side`.
  Index side_face(int side, Index k) const;

 private:
  Int3 cells_{};
};

}  // namespace darcy

#endif  // DARCY_GRID_HPP
