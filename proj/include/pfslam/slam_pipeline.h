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

#ifndef PFSLAM_SLAM_PIPELINE_H_
#define PFSLAM_SLAM_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfslam/grid_map.h"
#include "pfslam/motion.h"
#include "pfslam/particle_filter.h"
#include "pfslam/sensor_io.h"
#include "pfslam/texture_map.h"

namespace pfslam {

// Every tunable of a run. Read from a flat key=value file; see
// LoadSlamConfig() for the key names.
struct SlamConfig {
  std::size_t n_particles = 100;
  MotionNoiseParams motion_noise{0.05, 0.01};
  GridGeometry grid{400, 400, 0.1, {-20., -20.}};
  LogOddsParams log_odds;
  CorrelationMode correlation_mode = CorrelationMode::kCount;
  double temperature = 1.;
  // Resample when N_eff < resample_threshold * N.
  double resample_threshold = 0.5;
  ZBand z_band;
  Pose2D start_pose;
  std::uint64_t seed = 0;
  // Empty means `<logs dir>/calib.cfg`.
  std::string calibration_path;
  FogPairing fog_pairing = FogPairing::kAccumulate;
  // When false, scans only extend the map: no reweighting, no resampling.
  bool filter_update = true;
  int threads = 1;

  void Validate() const;
};

// Keys: n_particles, sigma_v, sigma_omega, grid_width, grid_height,
// grid_resolution, grid_origin_x, grid_origin_y, delta_occ, delta_free,
// lambda_min, lambda_max, correlation (count|sum), temperature,
// resample_threshold, z_min, z_max, start_x, start_y, start_theta, seed,
// calib, fog_pairing (accumulate|interpolate), filter_update, threads.
// Missing keys keep their defaults; unknown keys are an error.
SlamConfig LoadSlamConfig(const std::string& path);
void WriteSlamConfig(const SlamConfig& config, const std::string& path);

struct SensorLogs {
  CalibrationConfig calib;
  std::vector<EncoderRecord> encoders;
  std::vector<FogRecord> fogs;
  std::vector<LidarScan> scans;
  std::optional<std::vector<ColoredPoint>> colored_points;
};

// Reads encoder.csv, fog.csv and lidar.csv (all required) and points.csv
// (optional) from `dir`, plus the calibration file. A missing file raises
// DataError naming it.
SensorLogs LoadSensorLogs(const std::string& dir,
                          const std::string& calibration_path = "");

struct RunMetrics {
  std::vector<double> neff_trace;  // one per processed scan
  std::size_t resample_count = 0;
  double wall_time_s = 0.;
  std::vector<StampedPose> mean_pose_trace;
};

struct SlamOutput {
  std::vector<StampedPose> trajectory;  // best particle, one per scan
  OccupancyGrid grid;
  std::optional<ColorGrid> texture;
  RunMetrics metrics;
};

// Replays the merged event stream: odometry events predict, scans update the
// weights, extend the map at the best particle and resample when N_eff drops
// below the threshold. The first scan only seeds the map. Throws DataError if
// there are no scans.
SlamOutput RunSlam(const SensorLogs& logs, const SlamConfig& config);

// Builds a map by integrating each scan at the trajectory pose with the same
// timestamp. Scans without a matching pose are skipped.
OccupancyGrid MapFromTrajectory(const SensorLogs& logs,
                                std::span<const StampedPose> trajectory,
                                const SlamConfig& config);

void WriteMetricsJson(const RunMetrics& metrics, const std::string& path);

// map.pgm, trajectory.csv, metrics.json and, if painted, texture.ppm.
void WriteSlamOutputs(const SlamOutput& output, const std::string& dir);

}  // namespace pfslam

#endif  // PFSLAM_SLAM_PIPELINE_H_
