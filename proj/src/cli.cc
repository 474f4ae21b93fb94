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

#include "pfslam/cli.h"

#include <filesystem>

#include "CLI11.hpp"
#include "pfslam/error.h"
#include "pfslam/simulator.h"
#include "pfslam/slam_pipeline.h"

namespace pfslam {
namespace {

struct SlamRunArgs {
  std::string config;
  std::string logs;
  std::string out;
};

struct SimulateArgs {
  std::string world;
  std::string script;
  std::string out;
  std::string calib;
  sim::NoiseSpec noise;
  sim::SensorRates rates;
  sim::TextureOptions texture;
};

struct MapExportArgs {
  std::string config;
  std::string logs;
  std::string trajectory;
  std::string out;
};

struct TexturePaintArgs {
  std::string config;
  std::string points;
  std::string out;
};

void RunSlamCommand(const SlamRunArgs& args, std::ostream& out) {
  const SlamConfig config = LoadSlamConfig(args.config);
  const SensorLogs logs = LoadSensorLogs(args.logs, config.calibration_path);
  const SlamOutput result = RunSlam(logs, config);
  std::filesystem::create_directories(args.out);
  WriteSlamOutputs(result, args.out);
  out << "processed " << result.trajectory.size() << " scans, "
      << result.metrics.resample_count << " resamples, "
      << result.metrics.wall_time_s << " s\n";
}

void SimulateCommand(const SimulateArgs& args, std::ostream& out) {
  const auto world = sim::LoadWorld(args.world);
  const auto script = sim::LoadScript(args.script);
  const CalibrationConfig calib =
      args.calib.empty() ? CalibrationConfig{} : LoadCalibration(args.calib);
  const auto logs =
      sim::Simulate(world, script, calib, args.noise, args.rates, args.texture);
  std::filesystem::create_directories(args.out);
  sim::WriteSimulatedLogs(logs, args.out);
  out << "wrote " << logs.encoders.size() << " encoder, " << logs.fogs.size()
      << " fog, " << logs.scans.size() << " lidar records to " << args.out
      << "\n";
}

void MapExportCommand(const MapExportArgs& args, std::ostream& out) {
  const SlamConfig config = LoadSlamConfig(args.config);
  const SensorLogs logs = LoadSensorLogs(args.logs, config.calibration_path);
  if (!std::filesystem::is_regular_file(args.trajectory)) {
    throw DataError("missing input file: " + args.trajectory);
  }
  const auto trajectory = LoadPosesCsv(args.trajectory);
  ExportPgm(MapFromTrajectory(logs, trajectory, config), args.out);
  out << "wrote " << args.out << "\n";
}

void TexturePaintCommand(const TexturePaintArgs& args, std::ostream& out) {
  const SlamConfig config = LoadSlamConfig(args.config);
  if (!std::filesystem::is_regular_file(args.points)) {
    throw DataError("missing input file: " + args.points);
  }
  ColorGrid texture(config.grid);
  texture.Paint(LoadColoredPointsCsv(args.points), config.z_band);
  ExportPpm(texture, args.out);
  out << "painted " << texture.PaintedCellCount() << " cells into " << args.out
      << "\n";
}

}  // namespace

int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Particle filter SLAM over encoder, gyro and lidar logs",
               "pfslam"};
  app.require_subcommand(1);

  SlamRunArgs slam_args;
  auto* slam = app.add_subcommand("slam", "Run the SLAM pipeline");
  slam->require_subcommand(1);
  auto* slam_run = slam->add_subcommand("run", "Process a log directory");
  slam_run->add_option("--config", slam_args.config, "SLAM config file")
      ->required();
  slam_run->add_option("--logs", slam_args.logs, "Log directory")->required();
  slam_run->add_option("--out", slam_args.out, "Output directory")->required();

  SimulateArgs sim_args;
  auto* simulate =
      app.add_subcommand("simulate", "Generate synthetic sensor logs");
  simulate->add_option("--world", sim_args.world, "Wall segment file")
      ->required();
  simulate->add_option("--script", sim_args.script, "Trajectory script")
      ->required();
  simulate->add_option("--out", sim_args.out, "Output directory")->required();
  simulate->add_option("--calib", sim_args.calib,
                       "Calibration file (defaults built in)");
  simulate->add_option("--seed", sim_args.noise.seed, "Noise seed");
  simulate->add_option("--sigma-range", sim_args.noise.sigma_range,
                       "Range noise std [m]");
  simulate->add_option("--dropout", sim_args.noise.dropout,
                       "Beam dropout probability");
  simulate->add_option("--sigma-v", sim_args.noise.sigma_v,
                       "Speed noise std [m/s]");
  simulate->add_option("--sigma-omega", sim_args.noise.sigma_omega,
                       "Yaw rate noise std [rad/s]");
  simulate->add_option("--encoder-hz", sim_args.rates.encoder_hz,
                       "Encoder rate");
  simulate->add_option("--fog-hz", sim_args.rates.fog_hz, "Gyro rate");
  simulate->add_option("--lidar-hz", sim_args.rates.lidar_hz, "Lidar rate");
  simulate->add_option("--texture-stride", sim_args.texture.beam_stride,
                       "Colored point every N beams (0 = none)");

  MapExportArgs map_args;
  auto* map = app.add_subcommand("map", "Occupancy map tools");
  map->require_subcommand(1);
  auto* map_export = map->add_subcommand(
      "export", "Rebuild map.pgm from logs and a trajectory");
  map_export->add_option("--config", map_args.config, "SLAM config file")
      ->required();
  map_export->add_option("--logs", map_args.logs, "Log directory")->required();
  map_export->add_option("--trajectory", map_args.trajectory,
                         "trajectory.csv")
      ->required();
  map_export->add_option("--out", map_args.out, "Output PGM")->required();

  TexturePaintArgs texture_args;
  auto* texture = app.add_subcommand("texture", "Texture map tools");
  texture->require_subcommand(1);
  auto* texture_paint =
      texture->add_subcommand("paint", "Paint colored points into a PPM");
  texture_paint->add_option("--config", texture_args.config, "SLAM config file")
      ->required();
  texture_paint->add_option("--points", texture_args.points, "points.csv")
      ->required();
  texture_paint->add_option("--out", texture_args.out, "Output PPM")
      ->required();

  if (args.empty()) {
    err << app.help();
    return kExitUsage;
  }

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("pfslam");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (slam_run->parsed()) {
      RunSlamCommand(slam_args, out);
    } else if (simulate->parsed()) {
      SimulateCommand(sim_args, out);
    } else if (map_export->parsed()) {
      MapExportCommand(map_args, out);
    } else if (texture_paint->parsed()) {
      TexturePaintCommand(texture_args, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace pfslam
