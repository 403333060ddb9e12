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

#include "aograsp/sampler/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include "aograsp/common/error.hpp"
#include "aograsp/common/rng.hpp"

namespace aograsp::sampler {

using geom::Point3;
using geom::Vector3;

namespace {

constexpr double kMaxExponent = 30.0;

// Two unit vectors completing z to a right-handed orthonormal frame.
std::pair<Vector3, Vector3> perpendicular_basis(const Vector3& z) {
  const Vector3 ref = std::abs(z.x()) < 0.9 ? Vector3::UnitX() : Vector3::UnitY();
  const Vector3 e1 = (ref - ref.dot(z) * z).normalized();
  return {e1, z.cross(e1)};
}

Eigen::Matrix3d frame_from(const Vector3& x, const Vector3& z) {
  Eigen::Matrix3d R;
  R.col(0) = x;
  R.col(1) = z.cross(x);
  R.col(2) = z;
  return R;
}

// Cumulative weights; draws pick the first entry whose cumulative sum exceeds
// u * total.
class Categorical {
 public:
  Categorical(std::span<const double> scores, std::vector<std::size_t> support) : support_(std::move(support)) {
    cdf_.reserve(support_.size());
    double total = 0.0;
    for (auto i : support_) {
      const double s = scores[i];
      if (!(s >= 0.0) || !std::isfinite(s)) throw Error("sample_grasp_points: scores must be finite and >= 0");
      total += s;
      cdf_.push_back(total);
    }
    uniform_ = !(total > 0.0);
  }

  bool uniform() const { return uniform_; }

  std::size_t draw(Rng& rng) const {
    if (uniform_) return support_[rng.index(support_.size())];
    const double u = rng.uniform() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    // u can round up to the total; the first entry reaching it has weight.
    if (it == cdf_.end()) it = std::lower_bound(cdf_.begin(), cdf_.end(), cdf_.back());
    return support_[static_cast<std::size_t>(it - cdf_.begin())];
  }

 private:
  std::vector<std::size_t> support_;
  std::vector<double> cdf_;
  bool uniform_ = false;
};

}  // namespace

void SamplingConfig::validate() const {
  if (!(tau > 0.0)) throw Error("sampling config: tau must be positive");
  if (!std::isfinite(omega)) throw Error("sampling config: omega must be finite");
  if (!(semantic_fraction >= 0.0 && semantic_fraction <= 1.0)) {
    throw Error("sampling config: semantic_fraction outside [0, 1]");
  }
  if (!(cone_half_angle >= 0.0 && cone_half_angle < 0.5 * std::numbers::pi)) {
    throw Error("sampling config: cone half-angle outside [0, pi/2)");
  }
  if (!(standoff_min >= 0.0 && standoff_max >= standoff_min)) throw Error("sampling config: invalid standoff range");
  if (!(semantic_perturbation >= 0.0)) throw Error("sampling config: negative perturbation");
}

std::vector<double> score_points(const geom::PointCloud& cloud, const artobj::Joint& joint,
                                 const SamplingConfig& cfg) {
  cfg.validate();
  if (!cloud.has_curvature()) throw Error("score_points: cloud has no curvature");
  std::vector<double> e(cloud.size());
  double max_e = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double d = artobj::distance_to_joint_axis(cloud.points[i], joint);
    e[i] = (d + cloud.curvature[i] * cfg.omega) / cfg.tau;
    max_e = std::max(max_e, e[i]);
  }
  const double shift = max_e > kMaxExponent ? max_e : 0.0;
  for (auto& v : e) v = std::exp(v - shift);
  return e;
}

std::vector<std::size_t> sample_grasp_points(std::span<const double> scores, const std::vector<bool>& actionable,
                                             std::size_t n, const SamplingConfig& cfg, std::uint64_t seed,
                                             std::vector<std::string>* warnings) {
  cfg.validate();
  if (scores.empty()) throw Error("sample_grasp_points: empty score vector");
  if (!actionable.empty() && actionable.size() != scores.size()) {
    throw Error("sample_grasp_points: actionable mask length mismatch");
  }
  std::vector<std::size_t> all(scores.size()), tagged;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    all[i] = i;
    if (!actionable.empty() && actionable[i]) tagged.push_back(i);
  }
  const Categorical whole(scores, all);
  if (whole.uniform() && warnings) warnings->push_back("all grasp-point scores are zero; sampling uniformly");

  std::size_t n_sem = 0;
  if (!tagged.empty()) {
    n_sem = std::min(n, static_cast<std::size_t>(std::ceil(cfg.semantic_fraction * static_cast<double>(n))));
  }
  Rng rng(seed);
  std::vector<std::size_t> out;
  out.reserve(n);
  if (n_sem > 0) {
    const Categorical sem(scores, tagged);
    if (sem.uniform() && !whole.uniform() && warnings) {
      warnings->push_back("all actionable-point scores are zero; sampling them uniformly");
    }
    for (std::size_t i = 0; i < n_sem; ++i) out.push_back(sem.draw(rng));
  }
  while (out.size() < n) out.push_back(whole.draw(rng));
  return out;
}

Eigen::Matrix3d sample_orientation(const Vector3& normal, const SamplingConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  const Vector3 axis = -normal.normalized();
  // Uniform over the spherical cap: cos(theta) ~ U[cos(alpha), 1].
  const double cos_a = std::cos(cfg.cone_half_angle);
  const double cos_t = 1.0 - rng.uniform() * (1.0 - cos_a);
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const auto [a1, a2] = perpendicular_basis(axis);
  Vector3 z = axis;
  if (sin_t > 0.0) z = (cos_t * axis + sin_t * (std::cos(phi) * a1 + std::sin(phi) * a2)).normalized();
  const double roll = 2.0 * std::numbers::pi * rng.uniform();
  const auto [e1, e2] = perpendicular_basis(z);
  return frame_from(std::cos(roll) * e1 + std::sin(roll) * e2, z);
}

Eigen::Matrix3d semantic_orientation(const Vector3& normal, std::span<const Point3> part_points, double max_angle,
                                     std::uint64_t seed) {
  const Vector3 z = -normal.normalized();
  const auto [e1, e2] = perpendicular_basis(z);
  Vector3 x = e1;
  if (part_points.size() >= 2) {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (const auto& p : part_points) mean += Eigen::Vector2d(p.dot(e1), p.dot(e2));
    mean /= static_cast<double>(part_points.size());
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    for (const auto& p : part_points) {
      const Eigen::Vector2d q = Eigen::Vector2d(p.dot(e1), p.dot(e2)) - mean;
      cov += q * q.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov);
    const auto& ev = eig.eigenvalues();
    // An isotropic footprint has no preferred closing direction.
    if (ev(1) > 0.0 && ev(0) < 0.999 * ev(1)) {
      const Eigen::Vector2d minor = eig.eigenvectors().col(0);
      x = (minor.x() * e1 + minor.y() * e2).normalized();
    }
  }
  Rng rng(seed);
  const double angle = max_angle * rng.uniform();
  const Vector3 axis = rng.unit_vector();
  const Eigen::Matrix3d R = Eigen::AngleAxisd(angle, axis).toRotationMatrix() * frame_from(x, z);
  // Re-orthonormalize to keep the rotation exact to rounding.
  const Vector3 rz = R.col(2).normalized();
  const Vector3 rx = (R.col(0) - R.col(0).dot(rz) * rz).normalized();
  return frame_from(rx, rz);
}

std::vector<Grasp> compose_candidates(const geom::PointCloud& cloud, const artobj::ArticulatedObject& obj,
                                      const artobj::JointState& state, std::size_t joint, std::size_t n,
                                      const SamplingConfig& cfg, std::uint64_t seed,
                                      std::vector<std::string>* warnings) {
  cfg.validate();
  if (n == 0) return {};
  if (!cloud.has_normals() || !cloud.has_curvature() || !cloud.has_link_id()) {
    throw Error("compose_candidates: cloud needs normals, curvature and link ids");
  }
  if (joint >= obj.joints().size()) throw Error("compose_candidates: joint index out of range");
  const auto transforms = artobj::forward_kinematics(obj, state);
  const artobj::Joint posed = artobj::posed_joint(obj, transforms, joint);
  const auto scores = score_points(cloud, posed, cfg);

  std::vector<bool> actionable(cloud.size());
  std::vector<std::vector<Point3>> link_points(obj.links().size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto id = cloud.link_id[i];
    if (id < 0 || static_cast<std::size_t>(id) >= obj.links().size()) {
      throw Error("compose_candidates: link id out of range");
    }
    actionable[i] = obj.links()[static_cast<std::size_t>(id)].tag == artobj::SemanticTag::actionable;
    link_points[static_cast<std::size_t>(id)].push_back(cloud.points[i]);
  }
  const bool any_actionable = std::find(actionable.begin(), actionable.end(), true) != actionable.end();
  const auto idx = sample_grasp_points(scores, actionable, n, cfg, derive_seed(seed, 0), warnings);
  const std::size_t n_sem =
      any_actionable ? std::min(n, static_cast<std::size_t>(std::ceil(cfg.semantic_fraction * static_cast<double>(n))))
                     : 0;

  std::vector<Grasp> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = idx[k];
    Rng rng(derive_seed(seed, 1 + 2 * k));
    Grasp g;
    g.contact_index = static_cast<std::uint32_t>(i);
    if (k < n_sem) {
      g.provenance = Provenance::semantic;
      g.R = semantic_orientation(cloud.normals[i], link_points[static_cast<std::size_t>(cloud.link_id[i])],
                                 cfg.semantic_perturbation, derive_seed(seed, 2 + 2 * k));
    } else {
      g.provenance = Provenance::geometric;
      g.R = sample_orientation(cloud.normals[i], cfg, derive_seed(seed, 2 + 2 * k));
    }
    const double standoff = rng.uniform(cfg.standoff_min, cfg.standoff_max);
    g.t = cloud.points[i] - standoff * g.R.col(2);
    out.push_back(g);
  }
  return out;
}

}  // namespace aograsp::sampler
