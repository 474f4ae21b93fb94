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

#ifndef PFSLAM_MOTION_H_
#define PFSLAM_MOTION_H_

#include <random>

#include "pfslam/geometry.h"
#include "pfslam/sensor_io.h"

namespace pfslam {

// Control input for one integration step.
struct VelocityEstimate {
  double v = 0.;      // m/s
  double omega = 0.;  // rad/s
  double dt = 0.;     // s
};

// Zero-mean Gaussian perturbations applied to (v, omega).
struct MotionNoiseParams {
  double sigma_v = 0.;
  double sigma_omega = 0.;
};

// Differential-drive velocity from two encoder samples and the gyro yaw change
// over the same interval. Each wheel turns delta_ticks / (dt * resolution)
// revolutions per second and advances pi * diameter per revolution; v is the
// mean of the two wheel speeds, omega = delta_yaw / dt.
//
// Throws std::invalid_argument unless curr is strictly later than prev.
VelocityEstimate EncoderVelocity(const EncoderRecord& prev,
                                 const EncoderRecord& curr, double delta_yaw,
                                 const CalibrationConfig& calib);

// One explicit Euler step: translate along the current heading by v * dt,
// then turn by omega * dt.
Pose2D Propagate(const Pose2D& pose, const VelocityEstimate& u);

// Propagate() with one draw of (v, omega) noise per call. With zero sigmas no
// random numbers are consumed and the result equals Propagate() exactly.
Pose2D PropagateNoisy(const Pose2D& pose, const VelocityEstimate& u,
                      const MotionNoiseParams& noise, std::mt19937_64& rng);

}  // namespace pfslam

#endif  // PFSLAM_MOTION_H_
