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

#include "aograsp/geom/normals.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "aograsp/common/error.hpp"
#include "aograsp/geom/neighbors.hpp"

namespace aograsp::geom {

namespace {

Vector3 direction_to(const Point3& from, const Point3& to) {
  const Vector3 d = to - from;
  const double len = d.norm();
  return len > 0.0 ? Vector3(d / len) : Vector3(0.0, 0.0, 1.0);
}

}  // namespace

NormalEstimate estimate_normals_curvature(const PointCloud& cloud, std::size_t k_nbrs,
                                          const Point3& viewpoint) {
  if (k_nbrs < 3) throw Error("normal estimation requires k_nbrs >= 3");
  if (cloud.empty()) throw Error("empty input");

  NormalEstimate result;
  result.cloud = cloud;
  result.cloud.normals.assign(cloud.size(), Vector3::UnitZ());
  result.cloud.curvature.assign(cloud.size(), 0.0);

  const NeighborIndex index(cloud.points);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point3& p = cloud.points[i];
    const NeighborList nbrs = index.knn(p, k_nbrs);

    Point3 mean = Point3::Zero();
    for (std::size_t j : nbrs.indices) mean += cloud.points[j];
    mean /= static_cast<double>(nbrs.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (std::size_t j : nbrs.indices) {
      const Vector3 d = cloud.points[j] - mean;
      cov.noalias() += d * d.transpose();
    }
    cov /= static_cast<double>(nbrs.size());

    const double scale = 1e-12 * (1.0 + p.cwiseAbs().maxCoeff());
    if (cov.trace() <= scale * scale) {
      result.cloud.normals[i] = direction_to(p, viewpoint);
      result.cloud.curvature[i] = 0.0;
      ++result.degenerate_count;
      continue;
    }

    solver.compute(cov);
    const Eigen::Vector3d lambda = solver.eigenvalues().cwiseMax(0.0);
    Vector3 normal = solver.eigenvectors().col(0).normalized();
    if (normal.dot(viewpoint - p) < 0.0) normal = -normal;
    result.cloud.normals[i] = normal;
    const double total = lambda.sum();
    result.cloud.curvature[i] = total > 0.0 ? std::clamp(lambda[0] / total, 0.0, 1.0) : 0.0;
  }
  return result;
}

}  // namespace aograsp::geom
