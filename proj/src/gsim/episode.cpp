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

#include "aograsp/gsim/episode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aograsp/common/error.hpp"

namespace aograsp::gsim {

namespace {

double angle_between(const Vector3& a, const Vector3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

// Antipodal friction-cone test: each contact normal must lie within the
// friction half-angle of the direction its finger pushes back from.
bool holds(const ContactReport& c, const Vector3& closing, double half_angle) {
  return angle_between(c.fingers[0]->normal, closing) <= half_angle &&
         angle_between(c.fingers[1]->normal, -closing) <= half_angle;
}

std::optional<FingerContact> close_finger(const CollisionScene& scene, const sampler::Grasp& g,
                                          const GripperModel& gm, double side) {
  const double open = 0.5 * gm.max_opening;
  auto box_at = [&](double h) { return gm.finger(g.t, g.R, side, h); };
  double free_h = open;
  double hit_h = -1.0;
  for (int k = 1;; ++k) {
    const double h = std::max(0.0, open - k * gm.stroke_resolution);
    if (!scene.intersecting(box_at(h)).empty()) {
      hit_h = h;
      break;
    }
    free_h = h;
    if (h == 0.0) return std::nullopt;
  }
  while (free_h - hit_h > gm.bisection_tolerance) {
    const double mid = 0.5 * (free_h + hit_h);
    if (scene.intersecting(box_at(mid)).empty()) {
      free_h = mid;
    } else {
      hit_h = mid;
    }
  }
  const OrientedBox box = box_at(hit_h);
  const auto hits = scene.intersecting(box);
  // Overlaps within the SAT tolerance can clip to nothing; a slightly grown
  // box recovers them.
  for (double grow : {0.0, 1e-6}) {
    const OrientedBox clip_box = box.inflated(grow);
    double best_area = -1.0;
    FingerContact best;
    for (auto i : hits) {
      const auto& t = scene.triangles()[i];
      const auto poly = clip_triangle_to_box(clip_box, t.a, t.b, t.c);
      if (poly.empty()) continue;
      const double area = polygon_area(poly);
      if (area <= best_area) continue;
      best_area = area;
      Point3 centroid = Point3::Zero();
      for (const auto& p : poly) centroid += p;
      best.point = centroid / static_cast<double>(poly.size());
      best.link = t.link;
      best.triangle = t.triangle;
      Vector3 n = (t.b - t.a).cross(t.c - t.a).normalized();
      if (n.dot(side * g.R.col(0)) < 0.0) n = -n;
      best.normal = n;
      best.inner_offset = hit_h;
    }
    if (best_area >= 0.0) return best;
  }
  return std::nullopt;
}

EpisodeResult fail(EpisodeResult r, FailureReason reason) {
  r.label = sampler::GraspLabel::failure;
  r.failure_reason = reason;
  return r;
}

}  // namespace

void GripperModel::validate() const {
  if (!(max_opening > 0.0)) throw Error("gripper: opening width must be positive");
  if (!(finger_thickness > 0.0 && finger_width > 0.0 && finger_z_max > finger_z_min && palm_depth > 0.0)) {
    throw Error("gripper: box extents must be positive");
  }
  if (!(stroke_resolution > 0.0 && bisection_tolerance > 0.0)) throw Error("gripper: resolutions must be positive");
  if (!(friction_half_angle >= 0.0 && friction_half_angle < 0.5 * std::numbers::pi)) {
    throw Error("gripper: friction half-angle outside [0, pi/2)");
  }
}

OrientedBox GripperModel::palm(const Point3& t, const Eigen::Matrix3d& R) const {
  OrientedBox b;
  b.axes = R;
  b.center = t + R * Vector3(0.0, 0.0, finger_z_min - 0.5 * palm_depth);
  b.half = {0.5 * max_opening + finger_thickness, 0.5 * finger_width, 0.5 * palm_depth};
  return b;
}

OrientedBox GripperModel::finger(const Point3& t, const Eigen::Matrix3d& R, double side, double inner_offset) const {
  OrientedBox b;
  b.axes = R;
  b.center = t + R * Vector3(side * (inner_offset + 0.5 * finger_thickness), 0.0, 0.5 * (finger_z_min + finger_z_max));
  b.half = {0.5 * finger_thickness, 0.5 * finger_width, 0.5 * (finger_z_max - finger_z_min)};
  return b;
}

void EpisodeConfig::validate() const {
  if (steps <= 0 || !(revolute_step > 0.0) || !(prismatic_step > 0.0) || !(revolute_success > 0.0) ||
      !(prismatic_success > 0.0) || !(contact_tolerance > 0.0)) {
    throw Error("episode config: all values must be positive");
  }
}

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::spawn_collision: return "spawn_collision";
    case FailureReason::no_contact_on_close: return "no_contact_on_close";
    case FailureReason::wrong_link: return "wrong_link";
    case FailureReason::slip_during_motion: return "slip_during_motion";
    case FailureReason::insufficient_displacement: return "insufficient_displacement";
  }
  return "spawn_collision";
}

std::optional<FailureReason> parse_failure_reason(std::string_view text) {
  for (auto r : {FailureReason::spawn_collision, FailureReason::no_contact_on_close, FailureReason::wrong_link,
                 FailureReason::slip_during_motion, FailureReason::insufficient_displacement}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

bool check_spawn_collision(const CollisionScene& scene, const sampler::Grasp& g, const GripperModel& gm) {
  const double open = 0.5 * gm.max_opening;
  return scene.collides(gm.palm(g.t, g.R)) || scene.collides(gm.finger(g.t, g.R, 1.0, open)) ||
         scene.collides(gm.finger(g.t, g.R, -1.0, open));
}

bool check_spawn_collision(const artobj::ArticulatedObject& obj, const artobj::JointState& state,
                           const sampler::Grasp& grasp, const GripperModel& gripper) {
  return check_spawn_collision(CollisionScene(obj, state), grasp, gripper);
}

ContactReport close_gripper(const CollisionScene& scene, const sampler::Grasp& grasp, const GripperModel& gripper) {
  ContactReport report;
  report.fingers[0] = close_finger(scene, grasp, gripper, 1.0);
  report.fingers[1] = close_finger(scene, grasp, gripper, -1.0);
  return report;
}

ContactReport close_gripper(const artobj::ArticulatedObject& obj, const artobj::JointState& state,
                            const sampler::Grasp& grasp, const GripperModel& gripper) {
  return close_gripper(CollisionScene(obj, state), grasp, gripper);
}

Vector3 optimal_direction(const artobj::Joint& joint, const Point3& centroid) {
  switch (joint.type) {
    case artobj::JointType::prismatic:
      return joint.open_sign() * joint.axis.normalized();
    case artobj::JointType::revolute: {
      const Vector3 axis = joint.axis.normalized();
      Vector3 radius = centroid - joint.origin;
      radius -= radius.dot(axis) * axis;
      if (radius.norm() < 1e-9) throw Error("zero moment arm");
      return joint.open_sign() * axis.cross(radius).normalized();
    }
    case artobj::JointType::fixed:
      break;
  }
  throw Error("optimal_direction: joint is not actuated");
}

std::optional<std::size_t> actuating_joint(const artobj::ArticulatedObject& obj, std::size_t link) {
  auto j = obj.parent_joint(link);
  while (j) {
    const auto& joint = obj.joints()[*j];
    if (joint.actuated()) return j;
    j = obj.parent_joint(*obj.link_index(joint.parent));
  }
  return std::nullopt;
}

EpisodeResult run_episode(const artobj::ArticulatedObject& obj, const artobj::JointState& state,
                          const sampler::Grasp& grasp, const GripperModel& gripper, const EpisodeConfig& cfg) {
  gripper.validate();
  cfg.validate();
  EpisodeResult r;
  const CollisionScene scene(obj, state);
  if (check_spawn_collision(scene, grasp, gripper)) return fail(r, FailureReason::spawn_collision);

  r.contacts = close_gripper(scene, grasp, gripper);
  if (!r.contacts.both()) return fail(r, FailureReason::no_contact_on_close);

  const auto& c0 = *r.contacts.fingers[0];
  const auto& c1 = *r.contacts.fingers[1];
  const auto j0 = actuating_joint(obj, static_cast<std::size_t>(c0.link));
  const auto j1 = actuating_joint(obj, static_cast<std::size_t>(c1.link));
  if (!j0 || !j1 || *j0 != *j1) return fail(r, FailureReason::wrong_link);
  const std::size_t ji = *j0;
  r.joint = ji;

  if (!holds(r.contacts, grasp.R.col(0), gripper.friction_half_angle)) {
    return fail(r, FailureReason::slip_during_motion);
  }

  const auto t0 = artobj::forward_kinematics(obj, state);
  const artobj::Joint joint = artobj::posed_joint(obj, t0, ji);
  try {
    optimal_direction(joint, 0.5 * (c0.point + c1.point));
  } catch (const Error&) {
    // Pulling through the axis cannot open a revolute part.
    return fail(r, FailureReason::slip_during_motion);
  }

  const auto moved = obj.moved_by(ji);
  std::vector<bool> fixed_links(moved.size());
  for (std::size_t l = 0; l < moved.size(); ++l) fixed_links[l] = !moved[l];
  const auto link = static_cast<std::size_t>(c0.link);
  const artobj::Transform inv0 = t0[link].inverse();

  const double q0 = state.at(joint.name);
  const double step = joint.type == artobj::JointType::revolute ? cfg.revolute_step : cfg.prismatic_step;
  const double sign = joint.open_sign();
  artobj::JointState current = state;
  double q_prev = q0;
  for (int k = 1; k <= cfg.steps; ++k) {
    const double q = std::clamp(q0 + sign * k * step, joint.lower, joint.upper);
    if (q == q_prev) break;  // reached the open limit
    current[joint.name] = q;
    const artobj::Transform delta = artobj::forward_kinematics(obj, current)[link] * inv0;
    const Point3 t = delta * grasp.t;
    const Eigen::Matrix3d R = delta.linear() * grasp.R;

    const OrientedBox boxes[3] = {gripper.palm(t, R), gripper.finger(t, R, 1.0, c0.inner_offset),
                                  gripper.finger(t, R, -1.0, c1.inner_offset)};
    bool hit = false;
    for (const auto& b : boxes) hit = hit || scene.collides(b.inflated(-cfg.contact_tolerance), fixed_links);
    ContactReport moved_contacts = r.contacts;
    for (auto& f : moved_contacts.fingers) {
      f->point = delta * f->point;
      f->normal = delta.linear() * f->normal;
    }
    if (hit || !holds(moved_contacts, R.col(0), gripper.friction_half_angle)) {
      r.displacement = std::abs(q_prev - q0);
      return fail(r, FailureReason::slip_during_motion);
    }
    q_prev = q;
    r.steps_completed = k;
  }
  r.displacement = std::abs(q_prev - q0);
  const double threshold =
      joint.type == artobj::JointType::revolute ? cfg.revolute_success : cfg.prismatic_success;
  // Relative slack absorbs rounding in q0 + k * step.
  if (r.displacement < threshold * (1.0 - 1e-12)) return fail(r, FailureReason::insufficient_displacement);
  r.label = sampler::GraspLabel::success;
  return r;
}

}  // namespace aograsp::gsim
