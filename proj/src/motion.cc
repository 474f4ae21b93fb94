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

#include "pfslam/motion.h"

#include <cmath>
#include <stdexcept>

namespace pfslam {

VelocityEstimate EncoderVelocity(const EncoderRecord& prev,
                                 const EncoderRecord& curr, double delta_yaw,
                                 const CalibrationConfig& calib) {
  if (curr.timestamp_us <= prev.timestamp_us) {
    throw std::invalid_argument("EncoderVelocity: non-positive dt");
  }
  const double dt =
      static_cast<double>(curr.timestamp_us - prev.timestamp_us) * 1e-6;
  const double left_rev_per_s =
      (curr.left_ticks - prev.left_ticks) / (dt * calib.encoder_resolution);
  const double right_rev_per_s =
      (curr.right_ticks - prev.right_ticks) / (dt * calib.encoder_resolution);
  const double left_speed = left_rev_per_s * kPi * calib.wheel_diameter_left;
  const double right_speed = right_rev_per_s * kPi * calib.wheel_diameter_right;
  return {0.5 * (left_speed + right_speed), delta_yaw / dt, dt};
}

Pose2D Propagate(const Pose2D& pose, const VelocityEstimate& u) {
  const double distance = u.v * u.dt;
  return {pose.x + distance * std::cos(pose.theta),
          pose.y + distance * std::sin(pose.theta),
          NormalizeAngle(pose.theta + u.omega * u.dt)};
}

Pose2D PropagateNoisy(const Pose2D& pose, const VelocityEstimate& u,
                      const MotionNoiseParams& noise, std::mt19937_64& rng) {
  VelocityEstimate noisy = u;
  if (noise.sigma_v > 0.) {
    noisy.v += std::normal_distribution<double>(0., noise.sigma_v)(rng);
  }
  if (noise.sigma_omega > 0.) {
    noisy.omega += std::normal_distribution<double>(0., noise.sigma_omega)(rng);
  }
  return Propagate(pose, noisy);
}

}  // namespace pfslam
