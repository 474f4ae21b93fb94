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

#include "pfslam/slam_pipeline.h"

#include <chrono>
#include <filesystem>
#include <map>

#include <nlohmann/json.hpp>

#include "pfslam/error.h"
#include "pfslam/key_value.h"
#include "text_format.h"

namespace pfslam {
namespace {

std::string RequireFile(const std::string& dir, const std::string& name) {
  const auto path = (std::filesystem::path(dir) / name).string();
  if (!std::filesystem::is_regular_file(path)) {
    throw DataError("missing input file: " + path);
  }
  return path;
}

}  // namespace

void SlamConfig::Validate() const {
  if (n_particles < 1) throw ConfigError("n_particles must be at least 1");
  if (!(motion_noise.sigma_v >= 0.) || !(motion_noise.sigma_omega >= 0.)) {
    throw ConfigError("motion noise sigmas must be non-negative");
  }
  grid.Validate();
  log_odds.Validate();
  if (!(temperature > 0.)) throw ConfigError("temperature must be positive");
  if (!(resample_threshold > 0. && resample_threshold <= 1.)) {
    throw ConfigError("resample_threshold must be in (0, 1]");
  }
  if (!(z_band.z_min < z_band.z_max)) throw ConfigError("require z_min < z_max");
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

SlamConfig LoadSlamConfig(const std::string& path) {
  auto file = KeyValueFile::Load(path);
  SlamConfig c;
  const auto n = file.GetInt("n_particles", static_cast<std::int64_t>(c.n_particles));
  if (n < 1) throw ConfigError("n_particles must be at least 1");
  c.n_particles = static_cast<std::size_t>(n);
  c.motion_noise.sigma_v = file.GetDouble("sigma_v", c.motion_noise.sigma_v);
  c.motion_noise.sigma_omega =
      file.GetDouble("sigma_omega", c.motion_noise.sigma_omega);
  c.grid.width = static_cast<int>(file.GetInt("grid_width", c.grid.width));
  c.grid.height = static_cast<int>(file.GetInt("grid_height", c.grid.height));
  c.grid.resolution = file.GetDouble("grid_resolution", c.grid.resolution);
  c.grid.origin.x = file.GetDouble("grid_origin_x", c.grid.origin.x);
  c.grid.origin.y = file.GetDouble("grid_origin_y", c.grid.origin.y);
  c.log_odds.delta_occ = file.GetDouble("delta_occ", c.log_odds.delta_occ);
  c.log_odds.delta_free = file.GetDouble("delta_free", c.log_odds.delta_free);
  c.log_odds.lambda_min = file.GetDouble("lambda_min", c.log_odds.lambda_min);
  c.log_odds.lambda_max = file.GetDouble("lambda_max", c.log_odds.lambda_max);
  const auto mode = file.GetString("correlation", "count");
  if (mode == "count") {
    c.correlation_mode = CorrelationMode::kCount;
  } else if (mode == "sum") {
    c.correlation_mode = CorrelationMode::kSum;
  } else {
    throw ConfigError("correlation must be 'count' or 'sum', got '" + mode + "'");
  }
  c.temperature = file.GetDouble("temperature", c.temperature);
  c.resample_threshold =
      file.GetDouble("resample_threshold", c.resample_threshold);
  c.z_band.z_min = file.GetDouble("z_min", c.z_band.z_min);
  c.z_band.z_max = file.GetDouble("z_max", c.z_band.z_max);
  c.start_pose.x = file.GetDouble("start_x", c.start_pose.x);
  c.start_pose.y = file.GetDouble("start_y", c.start_pose.y);
  c.start_pose.theta =
      NormalizeAngle(file.GetDouble("start_theta", c.start_pose.theta));
  const auto seed = file.GetInt("seed", 0);
  c.seed = static_cast<std::uint64_t>(seed);
  c.calibration_path = file.GetString("calib", "");
  const auto pairing = file.GetString("fog_pairing", "accumulate");
  if (pairing == "accumulate") {
    c.fog_pairing = FogPairing::kAccumulate;
  } else if (pairing == "interpolate") {
    c.fog_pairing = FogPairing::kInterpolate;
  } else {
    throw ConfigError("fog_pairing must be 'accumulate' or 'interpolate'");
  }
  c.filter_update = file.GetBool("filter_update", c.filter_update);
  c.threads = static_cast<int>(file.GetInt("threads", c.threads));
  file.RejectUnusedKeys();
  c.Validate();
  return c;
}

void WriteSlamConfig(const SlamConfig& c, const std::string& path) {
  using internal::FormatDouble;
  auto out = internal::OpenForWrite(path);
  out << "n_particles=" << c.n_particles << '\n'
      << "sigma_v=" << FormatDouble(c.motion_noise.sigma_v) << '\n'
      << "sigma_omega=" << FormatDouble(c.motion_noise.sigma_omega) << '\n'
      << "grid_width=" << c.grid.width << '\n'
      << "grid_height=" << c.grid.height << '\n'
      << "grid_resolution=" << FormatDouble(c.grid.resolution) << '\n'
      << "grid_origin_x=" << FormatDouble(c.grid.origin.x) << '\n'
      << "grid_origin_y=" << FormatDouble(c.grid.origin.y) << '\n'
      << "delta_occ=" << FormatDouble(c.log_odds.delta_occ) << '\n'
      << "delta_free=" << FormatDouble(c.log_odds.delta_free) << '\n'
      << "lambda_min=" << FormatDouble(c.log_odds.lambda_min) << '\n'
      << "lambda_max=" << FormatDouble(c.log_odds.lambda_max) << '\n'
      << "correlation="
      << (c.correlation_mode == CorrelationMode::kCount ? "count" : "sum")
      << '\n'
      << "temperature=" << FormatDouble(c.temperature) << '\n'
      << "resample_threshold=" << FormatDouble(c.resample_threshold) << '\n'
      << "z_min=" << FormatDouble(c.z_band.z_min) << '\n'
      << "z_max=" << FormatDouble(c.z_band.z_max) << '\n'
      << "start_x=" << FormatDouble(c.start_pose.x) << '\n'
      << "start_y=" << FormatDouble(c.start_pose.y) << '\n'
      << "start_theta=" << FormatDouble(c.start_pose.theta) << '\n'
      << "seed=" << c.seed << '\n'
      << "fog_pairing="
      << (c.fog_pairing == FogPairing::kAccumulate ? "accumulate"
                                                   : "interpolate")
      << '\n'
      << "filter_update=" << (c.filter_update ? "true" : "false") << '\n'
      << "threads=" << c.threads << '\n';
  if (!c.calibration_path.empty()) out << "calib=" << c.calibration_path << '\n';
  internal::FinishWrite(out, path);
}

SensorLogs LoadSensorLogs(const std::string& dir,
                          const std::string& calibration_path) {
  SensorLogs logs;
  const std::string calib_path = calibration_path.empty()
                                     ? RequireFile(dir, "calib.cfg")
                                     : calibration_path;
  if (!std::filesystem::is_regular_file(calib_path)) {
    throw DataError("missing input file: " + calib_path);
  }
  logs.calib = LoadCalibration(calib_path);
  logs.encoders = LoadEncoderCsv(RequireFile(dir, "encoder.csv"));
  logs.fogs = LoadFogCsv(RequireFile(dir, "fog.csv"));
  logs.scans = LoadLidarCsv(RequireFile(dir, "lidar.csv"));
  const auto points = std::filesystem::path(dir) / "points.csv";
  if (std::filesystem::is_regular_file(points)) {
    logs.colored_points = LoadColoredPointsCsv(points.string());
  }
  return logs;
}

SlamOutput RunSlam(const SensorLogs& logs, const SlamConfig& config) {
  config.Validate();
  logs.calib.Validate();
  if (logs.scans.empty()) throw DataError("lidar stream is empty");
  const auto started = std::chrono::steady_clock::now();

  const auto events = MergeStreams(logs.encoders, logs.fogs, logs.scans,
                                   config.fog_pairing);
  const auto& angles = ScanAngles();
  const std::size_t n = config.n_particles;

  SlamOutput output{{},
                    OccupancyGrid(config.grid, config.log_odds.lambda_min,
                                  config.log_odds.lambda_max),
                    std::nullopt,
                    {}};
  ParticleSet particles(n, config.start_pose, config.seed);
  const UpdateOptions update_options{config.correlation_mode,
                                     config.temperature, config.threads};

  bool map_seeded = false;
  for (const auto& event : events) {
    if (const auto* step = std::get_if<OdometryStep>(&event.payload)) {
      const auto u = EncoderVelocity(step->previous, step->current,
                                     step->delta_yaw, logs.calib);
      particles.Predict(u, config.motion_noise, config.threads);
      continue;
    }
    const auto& scan = std::get<LidarScan>(event.payload);
    if (map_seeded && config.filter_update) {
      particles.Update(output.grid, scan, angles, logs.calib, update_options);
    }
    const Pose2D best = particles.Best().pose;
    IntegrateScan(output.grid,
                  LidarPoseInWorld(best, logs.calib.vehicle_to_lidar), scan,
                  angles, logs.calib, config.log_odds);
    output.trajectory.push_back({scan.timestamp_us, best});
    output.metrics.mean_pose_trace.push_back(
        {scan.timestamp_us, particles.MeanPose()});
    const double neff = particles.EffectiveCount();
    output.metrics.neff_trace.push_back(neff);
    if (map_seeded && config.filter_update &&
        neff < config.resample_threshold * static_cast<double>(n)) {
      particles.Resample();
      ++output.metrics.resample_count;
    }
    map_seeded = true;
  }

  if (logs.colored_points) {
    output.texture.emplace(config.grid);
    output.texture->Paint(*logs.colored_points, config.z_band);
  }
  output.metrics.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return output;
}

OccupancyGrid MapFromTrajectory(const SensorLogs& logs,
                                std::span<const StampedPose> trajectory,
                                const SlamConfig& config) {
  config.Validate();
  std::map<TimestampUs, Pose2D> poses;
  for (const auto& entry : trajectory) poses[entry.timestamp_us] = entry.pose;
  OccupancyGrid grid(config.grid, config.log_odds.lambda_min,
                     config.log_odds.lambda_max);
  for (const auto& scan : logs.scans) {
    const auto it = poses.find(scan.timestamp_us);
    if (it == poses.end()) continue;
    IntegrateScan(grid, LidarPoseInWorld(it->second, logs.calib.vehicle_to_lidar),
                  scan, ScanAngles(), logs.calib, config.log_odds);
  }
  return grid;
}

void WriteMetricsJson(const RunMetrics& metrics, const std::string& path) {
  nlohmann::json mean_poses = nlohmann::json::array();
  for (const auto& entry : metrics.mean_pose_trace) {
    mean_poses.push_back({{"timestamp_us", entry.timestamp_us},
                          {"x", entry.pose.x},
                          {"y", entry.pose.y},
                          {"theta", entry.pose.theta}});
  }
  const nlohmann::json doc = {
      {"neff_trace", metrics.neff_trace},
      {"resample_count", metrics.resample_count},
      {"wall_time_s", metrics.wall_time_s},
      {"mean_pose_trace", std::move(mean_poses)},
  };
  auto out = internal::OpenForWrite(path);
  out << doc.dump(2) << '\n';
  internal::FinishWrite(out, path);
}

void WriteSlamOutputs(const SlamOutput& output, const std::string& dir) {
  const std::filesystem::path root(dir);
  ExportPgm(output.grid, (root / "map.pgm").string());
  WritePosesCsv(output.trajectory, (root / "trajectory.csv").string());
  WriteMetricsJson(output.metrics, (root / "metrics.json").string());
  if (output.texture) ExportPpm(*output.texture, (root / "texture.ppm").string());
}

}  // namespace pfslam
