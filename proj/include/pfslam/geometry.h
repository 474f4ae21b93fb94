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

#ifndef PFSLAM_GEOMETRY_H_
#define PFSLAM_GEOMETRY_H_

namespace pfslam {

inline constexpr double kPi = 3.14159265358979323846;

// Wraps an angle into (-pi, pi].
double NormalizeAngle(double theta);

struct Point2D {
  double x = 0.;
  double y = 0.;
};

// Planar pose of a body in the world frame. theta is kept in (-pi, pi] by
// every function in this library that produces a Pose2D.
struct Pose2D {
  double x = 0.;
  double y = 0.;
  double theta = 0.;
};

// SE(2) transform stored as a heading angle plus a translation. The 2x2
// rotation matrix only exists transiently inside Apply().
//
// Maps points from a child frame into the parent frame:
//   p_parent = R(rotation) * p_child + translation
class RigidTransform2D {
 public:
  RigidTransform2D() = default;
  RigidTransform2D(double rotation, Point2D translation);

  static RigidTransform2D Identity() { return {}; }
  static RigidTransform2D FromPose(const Pose2D& pose);

  double rotation() const { return rotation_; }
  const Point2D& translation() const { return translation_; }

  Pose2D ToPose() const { return {translation_.x, translation_.y, rotation_}; }
  RigidTransform2D Inverse() const;

 private:
  double rotation_ = 0.;
  Point2D translation_;
};

// Applying Compose(a, b) equals applying b, then a.
RigidTransform2D Compose(const RigidTransform2D& a, const RigidTransform2D& b);

Point2D Apply(const RigidTransform2D& transform, const Point2D& point);

// Throws std::invalid_argument for negative or non-finite range.
Point2D PolarToCartesian(double range, double angle);

// World pose of the lidar given the vehicle pose and the lidar mount
// (vehicle -> lidar) extrinsics.
Pose2D LidarPoseInWorld(const Pose2D& vehicle_pose,
                        const RigidTransform2D& vehicle_to_lidar);

}  // namespace pfslam

#endif  // PFSLAM_GEOMETRY_H_
