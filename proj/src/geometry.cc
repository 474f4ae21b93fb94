/*
 * Copyright 2026 The pfslam Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pfslam/geometry.h"

#include <cmath>
#include <stdexcept>

namespace pfslam {

double NormalizeAngle(double theta) {
  constexpr double kTwoPi = 2. * kPi;
  // std::remainder lands in [-pi, pi]; fold the lower end onto +pi.
  double wrapped = std::remainder(theta, kTwoPi);
  if (wrapped <= -kPi) wrapped += kTwoPi;
  return wrapped;
}

RigidTransform2D::RigidTransform2D(double rotation, Point2D translation)
    : rotation_(NormalizeAngle(rotation)), translation_(translation) {}

RigidTransform2D RigidTransform2D::FromPose(const Pose2D& pose) {
  return RigidTransform2D(pose.theta, {pose.x, pose.y});
}

RigidTransform2D RigidTransform2D::Inverse() const {
  const double c = std::cos(rotation_);
  const double s = std::sin(rotation_);
  // -R^T * t
  return RigidTransform2D(
      -rotation_, {-(c * translation_.x + s * translation_.y),
                   -(-s * translation_.x + c * translation_.y)});
}

RigidTransform2D Compose(const RigidTransform2D& a,
                         const RigidTransform2D& b) {
  const Point2D t = Apply(a, b.translation());
  return RigidTransform2D(a.rotation() + b.rotation(), t);
}

Point2D Apply(const RigidTransform2D& transform, const Point2D& point) {
  const double c = std::cos(transform.rotation());
  const double s = std::sin(transform.rotation());
  return {c * point.x - s * point.y + transform.translation().x,
          s * point.x + c * point.y + transform.translation().y};
}

Point2D PolarToCartesian(double range, double angle) {
  if (!(range >= 0.) || !std::isfinite(range) || !std::isfinite(angle)) {
    throw std::invalid_argument("PolarToCartesian: range must be finite and "
                                "non-negative");
  }
  return {range * std::cos(angle), range * std::sin(angle)};
}

Pose2D LidarPoseInWorld(const Pose2D& vehicle_pose,
                        const RigidTransform2D& vehicle_to_lidar) {
  return Compose(RigidTransform2D::FromPose(vehicle_pose), vehicle_to_lidar)
      .ToPose();
}

}  // namespace pfslam
