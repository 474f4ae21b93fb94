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

#include <cmath>
#include <filesystem>
#include <limits>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"
#include "pfslam/error.h"
#include "test_support.h"

namespace pfslam {
namespace {

using testing::DeadReckon;
using testing::LoopConfig;
using testing::LoopNoise;
using testing::LoopScript;
using testing::ReadFile;
using testing::ScanTimes;
using testing::SquareRoom;
using testing::TempDir;
using testing::ToSensorLogs;
using testing::WriteFile;

SensorLogs NoiselessLoopLogs() {
  return ToSensorLogs(
      sim::Simulate(SquareRoom(), LoopScript(), {}, {}, {}, {0}));
}

TEST(SlamConfigTest, RoundTrip) {
  SlamConfig config;
  config.n_particles = 7;
  config.motion_noise = {0.125, 0.03};
  config.grid = {50, 60, 0.2, {-5., -6.}};
  config.correlation_mode = CorrelationMode::kSum;
  config.temperature = 4.;
  config.resample_threshold = 0.25;
  config.z_band = {-0.2, 0.3};
  config.start_pose = {1., 2., -0.5};
  config.seed = 99;
  config.calibration_path = "/tmp/other.cfg";
  config.fog_pairing = FogPairing::kInterpolate;
  config.filter_update = false;
  config.threads = 3;
  TempDir dir;
  WriteSlamConfig(config, dir.file("slam.cfg"));
  const auto loaded = LoadSlamConfig(dir.file("slam.cfg"));
  EXPECT_EQ(loaded.n_particles, 7u);
  EXPECT_EQ(loaded.motion_noise.sigma_v, 0.125);
  EXPECT_EQ(loaded.grid, config.grid);
  EXPECT_EQ(loaded.log_odds.delta_occ, std::log(4.));
  EXPECT_EQ(loaded.correlation_mode, CorrelationMode::kSum);
  EXPECT_EQ(loaded.temperature, 4.);
  EXPECT_EQ(loaded.resample_threshold, 0.25);
  EXPECT_EQ(loaded.z_band.z_max, 0.3);
  EXPECT_EQ(loaded.start_pose.theta, -0.5);
  EXPECT_EQ(loaded.seed, 99u);
  EXPECT_EQ(loaded.calibration_path, "/tmp/other.cfg");
  EXPECT_EQ(loaded.fog_pairing, FogPairing::kInterpolate);
  EXPECT_FALSE(loaded.filter_update);
  EXPECT_EQ(loaded.threads, 3);
}

TEST(SlamConfigTest, RejectsBadValues) {
  TempDir dir;
  WriteFile(dir.file("a.cfg"), "n_particles=10\nparticles=5\n");
  EXPECT_THROW(LoadSlamConfig(dir.file("a.cfg")), ParseError);
  WriteFile(dir.file("b.cfg"), "correlation=max\n");
  EXPECT_THROW(LoadSlamConfig(dir.file("b.cfg")), ConfigError);
  WriteFile(dir.file("c.cfg"), "resample_threshold=1.5\n");
  EXPECT_THROW(LoadSlamConfig(dir.file("c.cfg")), ConfigError);
  WriteFile(dir.file("d.cfg"), "n_particles=0\n");
  EXPECT_THROW(LoadSlamConfig(dir.file("d.cfg")), ConfigError);
  WriteFile(dir.file("e.cfg"), "grid_resolution=-1\n");
  EXPECT_THROW(LoadSlamConfig(dir.file("e.cfg")), ConfigError);
  WriteFile(dir.file("f.cfg"), "# defaults only\n");
  EXPECT_EQ(LoadSlamConfig(dir.file("f.cfg")).n_particles, 100u);
}

TEST(LoadSensorLogsTest, MissingFilesAreNamed) {
  const auto simulated =
      sim::Simulate(SquareRoom(), testing::StraightScript(), {}, {}, {}, {0});
  TempDir dir;
  sim::WriteSimulatedLogs(simulated, dir.path());
  std::filesystem::remove(dir.file("points.csv"));
  const auto logs = LoadSensorLogs(dir.path());
  EXPECT_EQ(logs.scans.size(), simulated.scans.size());
  EXPECT_FALSE(logs.colored_points.has_value());

  for (const char* name : {"lidar.csv", "encoder.csv", "calib.cfg"}) {
    TempDir partial;
    sim::WriteSimulatedLogs(simulated, partial.path());
    std::filesystem::remove(partial.file(name));
    try {
      LoadSensorLogs(partial.path());
      FAIL() << "expected DataError for " << name;
    } catch (const DataError& e) {
      EXPECT_NE(std::string(e.what()).find(name), std::string::npos);
    }
  }
}

TEST(RunSlamTest, SingleNoiselessParticleIsDeadReckoning) {
  const auto logs = NoiselessLoopLogs();
  SlamConfig config = LoopConfig(1);
  config.n_particles = 1;
  config.motion_noise = {0., 0.};
  const auto output = RunSlam(logs, config);
  const auto reckoned = DeadReckon(logs.encoders, logs.fogs, logs.calib,
                                   config.start_pose, ScanTimes(logs.scans));
  ASSERT_EQ(output.trajectory.size(), reckoned.size());
  for (std::size_t i = 0; i < reckoned.size(); ++i) {
    EXPECT_EQ(output.trajectory[i].timestamp_us, reckoned[i].timestamp_us);
    EXPECT_EQ(output.trajectory[i].pose.x, reckoned[i].pose.x);
    EXPECT_EQ(output.trajectory[i].pose.y, reckoned[i].pose.y);
    EXPECT_EQ(output.trajectory[i].pose.theta, reckoned[i].pose.theta);
  }
  EXPECT_EQ(output.metrics.resample_count, 0u);
}

TEST(RunSlamTest, OneScanSeedsTheMap) {
  SensorLogs logs;
  logs.scans = {{0, std::vector<double>(kBeamCount, 5.)}};
  SlamConfig config;
  config.grid = testing::RoomGrid();
  config.start_pose = {1., -1., 0.5};
  const auto output = RunSlam(logs, config);
  ASSERT_EQ(output.trajectory.size(), 1u);
  EXPECT_EQ(output.trajectory[0].pose.x, 1.);
  EXPECT_EQ(output.trajectory[0].pose.y, -1.);
  EXPECT_EQ(output.trajectory[0].pose.theta, 0.5);
  OccupancyGrid expected(config.grid, config.log_odds.lambda_min,
                         config.log_odds.lambda_max);
  IntegrateScan(expected, config.start_pose, logs.scans[0], ScanAngles(),
                logs.calib, config.log_odds);
  ASSERT_EQ(output.grid.values().size(), expected.values().size());
  EXPECT_TRUE(std::equal(output.grid.values().begin(),
                         output.grid.values().end(),
                         expected.values().begin()));
  EXPECT_FALSE(output.texture.has_value());
}

TEST(RunSlamTest, NoScansIsDataError) {
  SensorLogs logs;
  logs.encoders = {{0, 0., 0.}, {10000, 1., 1.}};
  EXPECT_THROW(RunSlam(logs, SlamConfig{}), DataError);
}

TEST(RunSlamTest, NoisyLoopTracksGroundTruth) {
  const auto simulated =
      sim::Simulate(SquareRoom(), LoopScript(), {}, LoopNoise(3), {});
  const auto output = RunSlam(ToSensorLogs(simulated), LoopConfig(3));
  ASSERT_EQ(output.trajectory.size(), simulated.scans.size());
  EXPECT_LT(testing::PositionRmse(output.trajectory, simulated.ground_truth),
            0.3);
  EXPECT_GE(testing::WallIou(output.grid, SquareRoom()), 0.7);

  // Resampling happens exactly when N_eff fell below the threshold.
  const auto& trace = output.metrics.neff_trace;
  ASSERT_EQ(trace.size(), output.trajectory.size());
  std::size_t dips = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    EXPECT_GE(trace[i], 1.);
    EXPECT_LE(trace[i], 100.);
    if (trace[i] < 0.5 * 100.) ++dips;
  }
  EXPECT_EQ(output.metrics.resample_count, dips);
  EXPECT_GT(dips, 0u);

  // Replaying the reported trajectory rebuilds the same map.
  const auto rebuilt = MapFromTrajectory(ToSensorLogs(simulated),
                                         output.trajectory, LoopConfig(3));
  EXPECT_TRUE(std::equal(rebuilt.values().begin(), rebuilt.values().end(),
                         output.grid.values().begin()));

  ASSERT_TRUE(output.texture.has_value());
  EXPECT_GT(output.texture->PaintedCellCount(), 0u);
  EXPECT_EQ(output.texture->geometry(), output.grid.geometry());
}

TEST(RunSlamTest, ThreadCountDoesNotChangeTheRun) {
  const auto logs = ToSensorLogs(
      sim::Simulate(SquareRoom(), LoopScript(), {}, LoopNoise(4), {}));
  auto config = LoopConfig(4);
  const auto serial = RunSlam(logs, config);
  config.threads = 4;
  const auto parallel = RunSlam(logs, config);
  ASSERT_EQ(serial.trajectory.size(), parallel.trajectory.size());
  for (std::size_t i = 0; i < serial.trajectory.size(); ++i) {
    EXPECT_EQ(serial.trajectory[i].pose.x, parallel.trajectory[i].pose.x);
    EXPECT_EQ(serial.trajectory[i].pose.y, parallel.trajectory[i].pose.y);
  }
  EXPECT_EQ(serial.metrics.resample_count, parallel.metrics.resample_count);
}

TEST(RunSlamTest, DisabledUpdateNeverResamples) {
  const auto logs = ToSensorLogs(
      sim::Simulate(SquareRoom(), LoopScript(), {}, LoopNoise(5), {}));
  auto config = LoopConfig(5);
  config.filter_update = false;
  const auto output = RunSlam(logs, config);
  EXPECT_EQ(output.metrics.resample_count, 0u);
  for (const double neff : output.metrics.neff_trace) EXPECT_EQ(neff, 100.);
}

TEST(WriteSlamOutputsTest, WritesAllFiles) {
  const auto simulated =
      sim::Simulate(SquareRoom(), testing::StraightScript(), {}, {}, {});
  SlamConfig config;
  config.grid = testing::RoomGrid();
  config.n_particles = 5;
  const auto output = RunSlam(ToSensorLogs(simulated), config);
  TempDir dir;
  WriteSlamOutputs(output, dir.path());
  for (const char* name :
       {"map.pgm", "trajectory.csv", "metrics.json", "texture.ppm"}) {
    EXPECT_TRUE(std::filesystem::exists(dir.file(name))) << name;
  }
  const auto trajectory = LoadPosesCsv(dir.file("trajectory.csv"));
  ASSERT_EQ(trajectory.size(), output.trajectory.size());
  EXPECT_EQ(trajectory.back().pose.x, output.trajectory.back().pose.x);

  const auto metrics = nlohmann::json::parse(ReadFile(dir.file("metrics.json")));
  EXPECT_EQ(metrics.at("neff_trace").size(), output.trajectory.size());
  EXPECT_EQ(metrics.at("resample_count").get<std::size_t>(),
            output.metrics.resample_count);
  EXPECT_GE(metrics.at("wall_time_s").get<double>(), 0.);
  EXPECT_EQ(metrics.at("mean_pose_trace").size(), output.trajectory.size());
}

}  // namespace
}  // namespace pfslam
