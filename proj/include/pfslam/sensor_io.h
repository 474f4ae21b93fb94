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

#ifndef PFSLAM_SENSOR_IO_H_
#define PFSLAM_SENSOR_IO_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pfslam/geometry.h"

namespace pfslam {

using TimestampUs = std::int64_t;

inline constexpr std::size_t kBeamCount = 286;

// Beam bearings in the lidar frame: kBeamCount evenly spaced angles from -5
// to 180 degrees, both endpoints included.
const std::array<double, kBeamCount>& ScanAngles();

// Wheel encoder sample. Tick counts are cumulative and may be fractional
// (the simulator emits exact, unrounded counts).
struct EncoderRecord {
  TimestampUs timestamp_us = 0;
  double left_ticks = 0.;
  double right_ticks = 0.;
};

// Fiber optic gyro sample: attitude increments since the previous sample.
// Roll and pitch are carried through parsing but unused by the planar models.
struct FogRecord {
  TimestampUs timestamp_us = 0;
  double delta_roll = 0.;
  double delta_pitch = 0.;
  double delta_yaw = 0.;
};

// One lidar sweep. A missing return is stored as quiet NaN; readings outside
// [range_min, range_max] are kept as-is and rejected by IsValidRange().
struct LidarScan {
  TimestampUs timestamp_us = 0;
  std::vector<double> ranges;
};

struct CalibrationConfig {
  double encoder_resolution = 4096.;  // ticks per wheel revolution
  double wheel_diameter_left = 0.62;
  double wheel_diameter_right = 0.62;
  RigidTransform2D vehicle_to_lidar;
  double range_min = 0.1;
  double range_max = 30.;

  // Throws ConfigError on violated invariants.
  void Validate() const;

  bool IsValidRange(double range) const {
    return range >= range_min && range <= range_max;
  }
};

CalibrationConfig LoadCalibration(const std::string& path);
void WriteCalibration(const CalibrationConfig& calib, const std::string& path);

// Loaders accept an optional header row. Errors carry the offending 1-based
// file line.
std::vector<EncoderRecord> LoadEncoderCsv(const std::string& path);
std::vector<FogRecord> LoadFogCsv(const std::string& path);
std::vector<LidarScan> LoadLidarCsv(const std::string& path);

void WriteEncoderCsv(std::span<const EncoderRecord> records,
                     const std::string& path);
void WriteFogCsv(std::span<const FogRecord> records, const std::string& path);
void WriteLidarCsv(std::span<const LidarScan> scans, const std::string& path);

// A pose tagged with the time it refers to. Shared row type of
// ground_truth.csv and trajectory.csv (`timestamp_us,x,y,theta`).
struct StampedPose {
  TimestampUs timestamp_us = 0;
  Pose2D pose;
};

std::vector<StampedPose> LoadPosesCsv(const std::string& path);
void WritePosesCsv(std::span<const StampedPose> poses, const std::string& path);

// Consecutive encoder samples plus the yaw change the gyro reported over the
// same interval.
struct OdometryStep {
  EncoderRecord previous;
  EncoderRecord current;
  double delta_yaw = 0.;
};

struct SensorEvent {
  TimestampUs timestamp_us = 0;
  std::variant<OdometryStep, LidarScan> payload;

  bool is_scan() const { return std::holds_alternative<LidarScan>(payload); }
};

enum class FogPairing {
  // Sum every gyro increment stamped in (previous.t, current.t].
  kAccumulate,
  // Integrate gyro increments as a piecewise-linear yaw curve and sample it at
  // encoder timestamps. Useful when the two clocks are not aligned.
  kInterpolate,
};

// Merges the three streams into one timestamp-ordered sequence with one
// odometry event per consecutive encoder pair. On equal timestamps odometry
// precedes scans. Throws DataError if any input is not strictly increasing.
std::vector<SensorEvent> MergeStreams(std::span<const EncoderRecord> encoders,
                                      std::span<const FogRecord> fogs,
                                      std::span<const LidarScan> scans,
                                      FogPairing pairing = FogPairing::kAccumulate);

}  // namespace pfslam

#endif  // PFSLAM_SENSOR_IO_H_
