// Copyright 2026 The AOGrasp Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AOGRASP_GEOM_NORMALS_HPP_
#define AOGRASP_GEOM_NORMALS_HPP_

#include <cstddef>

#include "aograsp/geom/point_cloud.hpp"

namespace aograsp::geom {

inline constexpr std::size_t kDefaultNormalNeighbors = 20;

struct NormalEstimate {
  PointCloud cloud;
  // Points whose neighborhood collapsed to a single location.
  std::size_t degenerate_count = 0;
};

// Local PCA over the k_nbrs nearest neighbors of every point (the point
// itself included). The normal is the smallest-eigenvalue eigenvector,
// flipped to face `viewpoint`; curvature is the surface variation
// l0 / (l0 + l1 + l2). Degenerate neighborhoods get the normalized direction
// to the viewpoint and zero curvature.
NormalEstimate estimate_normals_curvature(const PointCloud& cloud, std::size_t k_nbrs,
                                          const Point3& viewpoint);

}  // namespace aograsp::geom

#endif  // AOGRASP_GEOM_NORMALS_HPP_
