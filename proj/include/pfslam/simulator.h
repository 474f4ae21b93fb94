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

#ifndef PFSLAM_SIMULATOR_H_
#define PFSLAM_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfslam/geometry.h"
#include "pfslam/grid_map.h"
#include "pfslam/sensor_io.h"
#include "pfslam/texture_map.h"

namespace pfslam::sim {

struct Segment {
  Point2D a;
  Point2D b;
};

// Static planar environment made of wall segments. The bounds are the
// axis-aligned box spanned by the walls.
struct WorldModel {
  std::vector<Segment> walls;
  Point2D bounds_min;
  Point2D bounds_max;

  // Computes the bounds; throws ConfigError on zero-length or non-finite
  // segments.
  static WorldModel FromWalls(std::vector<Segment> walls);
};

// Axis-aligned rectangular room with four walls.
WorldModel RectangularRoom(const Point2D& min_corner, const Point2D& max_corner);

// One `x1 y1 x2 y2` segment per line; '#' starts a comment.
WorldModel LoadWorld(const std::string& path);
void WriteWorld(const WorldModel& world, const std::string& path);

// Cells crossed by the walls, rasterized by sampling each segment at a
// quarter of the grid resolution. Used for map quality scoring.
std::vector<GridIndex> RasterizeWalls(const WorldModel& world,
                                      const GridGeometry& geometry);

struct ScriptSegment {
  double duration = 0.;  // s, > 0
  double v = 0.;         // m/s
  double omega = 0.;     // rad/s
};

// Piecewise-constant (v, omega) commands from a start pose.
struct TrajectoryScript {
  Pose2D start_pose;
  std::vector<ScriptSegment> segments;

  void Validate() const;
  double TotalDuration() const;
};

// Text format: an optional `start x y theta` line followed by one
// `duration v omega` line per segment; '#' starts a comment.
TrajectoryScript LoadScript(const std::string& path);
void WriteScript(const TrajectoryScript& script, const std::string& path);

// Exact unicycle state at time t (clamped to the script's span). `heading`
// is not wrapped and `distance` is the signed path length, which is what the
// gyro and encoders integrate.
struct ExactState {
  Pose2D pose;
  double heading = 0.;
  double distance = 0.;
};
ExactState StateAt(const TrajectoryScript& script, double t);

struct RayHit {
  double range = 0.;
  std::size_t wall = 0;
};

// Nearest wall intersection along the ray within max_range. Equal distances
// resolve to the earlier wall in the list.
std::optional<RayHit> CastRay(const WorldModel& world, const Point2D& origin,
                              double angle, double max_range);

inline std::optional<double> Raycast(const WorldModel& world,
                                     const Point2D& origin, double angle,
                                     double max_range) {
  const auto hit = CastRay(world, origin, angle, max_range);
  return hit ? std::optional<double>(hit->range) : std::nullopt;
}

struct NoiseSpec {
  double sigma_range = 0.;   // m, additive Gaussian per beam
  double dropout = 0.;       // probability a beam returns nothing
  double sigma_v = 0.;       // m/s, per encoder interval
  double sigma_omega = 0.;   // rad/s, per gyro sample
  std::uint64_t seed = 0;

  void Validate() const;
};

struct SensorRates {
  double encoder_hz = 100.;
  double fog_hz = 200.;
  double lidar_hz = 10.;

  void Validate() const;
};

struct TextureOptions {
  // Emit colored points for every stride-th beam of each scan; 0 disables.
  int beam_stride = 8;
};

struct SimulatedLogs {
  CalibrationConfig calib;
  std::vector<EncoderRecord> encoders;
  std::vector<FogRecord> fogs;
  std::vector<LidarScan> scans;
  std::vector<StampedPose> ground_truth;  // one per scan
  std::vector<ColoredPoint> colored_points;
};

// Drives the script with exact arc integration and synthesizes the logs.
// Encoder ticks invert the differential-drive velocity formula; gyro samples
// carry the exact yaw change over their interval; scans ray-cast the world
// from the lidar mount pose. All streams start at t = 0 and include the
// script end time if it falls on a sample.
SimulatedLogs Simulate(const WorldModel& world, const TrajectoryScript& script,
                       const CalibrationConfig& calib, const NoiseSpec& noise,
                       const SensorRates& rates,
                       const TextureOptions& texture = {});

// Writes encoder.csv, fog.csv, lidar.csv, ground_truth.csv, points.csv and
// calib.cfg into an existing directory.
void WriteSimulatedLogs(const SimulatedLogs& logs, const std::string& dir);

}  // namespace pfslam::sim

#endif  // PFSLAM_SIMULATOR_H_
