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

#include "pfslam/simulator.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "pfslam/error.h"
#include "text_format.h"

namespace pfslam::sim {
namespace {

// Independent random streams so that, e.g., changing the lidar noise does not
// perturb the odometry noise sequence.
enum class Stream : std::uint32_t { kEncoder = 1, kFog, kLidar, kTexture };

std::mt19937_64 MakeStream(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

double Cross(double ax, double ay, double bx, double by) {
  return ax * by - ay * bx;
}

std::vector<TimestampUs> SampleTimes(double hz, TimestampUs end_us) {
  const auto period = static_cast<TimestampUs>(std::llround(1e6 / hz));
  if (period <= 0) throw ConfigError("sensor rate too high");
  std::vector<TimestampUs> times;
  for (TimestampUs t = 0; t <= end_us; t += period) times.push_back(t);
  return times;
}

double Seconds(TimestampUs t) { return static_cast<double>(t) * 1e-6; }

std::vector<std::vector<double>> ParseNumberLines(const std::string& path,
                                                  std::size_t fields_per_line,
                                                  const std::string& keyword,
                                                  std::vector<double>* keyword_values) {
  internal::LineReader reader(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (reader.Next(line)) {
    auto content = std::string_view(line);
    content = content.substr(0, content.find('#'));
    content = internal::Trim(content);
    if (content.empty()) continue;
    std::vector<std::string_view> tokens;
    for (const auto token : internal::SplitFields(content, ' ')) {
      for (const auto part : internal::SplitFields(token, '\t')) {
        if (!internal::Trim(part).empty()) tokens.push_back(internal::Trim(part));
      }
    }
    const bool is_keyword = !keyword.empty() && tokens.front() == keyword;
    if (is_keyword) tokens.erase(tokens.begin());
    const std::size_t expected = is_keyword ? keyword_values->size() : fields_per_line;
    if (tokens.size() != expected) {
      throw ParseError(path, reader.line_number(),
                       "expected " + std::to_string(expected) + " numbers");
    }
    std::vector<double> values;
    for (const auto token : tokens) {
      const auto value = internal::ParseDouble(token);
      if (!value || !std::isfinite(*value)) {
        throw ParseError(path, reader.line_number(),
                         "bad number '" + std::string(token) + "'");
      }
      values.push_back(*value);
    }
    if (is_keyword) {
      *keyword_values = std::move(values);
    } else {
      rows.push_back(std::move(values));
    }
  }
  return rows;
}

std::array<std::uint8_t, 3> FloorColor(const Point2D& p) {
  const auto parity =
      static_cast<long>(std::floor(p.x)) + static_cast<long>(std::floor(p.y));
  if (parity % 2 == 0) return {200, 180, 140};
  return {90, 110, 60};
}

std::array<std::uint8_t, 3> WallColor(std::size_t wall) {
  static constexpr std::array<std::array<std::uint8_t, 3>, 6> kPalette = {{
      {200, 40, 40}, {40, 160, 60}, {40, 80, 200},
      {220, 180, 30}, {150, 60, 170}, {30, 170, 170},
  }};
  return kPalette[wall % kPalette.size()];
}

}  // namespace

WorldModel WorldModel::FromWalls(std::vector<Segment> walls) {
  WorldModel world;
  world.walls = std::move(walls);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  world.bounds_min = {kInf, kInf};
  world.bounds_max = {-kInf, -kInf};
  for (const auto& wall : world.walls) {
    for (const Point2D& p : {wall.a, wall.b}) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw ConfigError("wall endpoints must be finite");
      }
      world.bounds_min = {std::min(world.bounds_min.x, p.x),
                          std::min(world.bounds_min.y, p.y)};
      world.bounds_max = {std::max(world.bounds_max.x, p.x),
                          std::max(world.bounds_max.y, p.y)};
    }
    if (wall.a.x == wall.b.x && wall.a.y == wall.b.y) {
      throw ConfigError("wall segments must have nonzero length");
    }
  }
  if (world.walls.empty()) world.bounds_min = world.bounds_max = {0., 0.};
  return world;
}

WorldModel RectangularRoom(const Point2D& lo, const Point2D& hi) {
  return WorldModel::FromWalls({
      {{lo.x, lo.y}, {hi.x, lo.y}},
      {{hi.x, lo.y}, {hi.x, hi.y}},
      {{hi.x, hi.y}, {lo.x, hi.y}},
      {{lo.x, hi.y}, {lo.x, lo.y}},
  });
}

WorldModel LoadWorld(const std::string& path) {
  std::vector<Segment> walls;
  for (const auto& row : ParseNumberLines(path, 4, "", nullptr)) {
    walls.push_back({{row[0], row[1]}, {row[2], row[3]}});
  }
  return WorldModel::FromWalls(std::move(walls));
}

void WriteWorld(const WorldModel& world, const std::string& path) {
  using internal::FormatDouble;
  auto out = internal::OpenForWrite(path);
  for (const auto& w : world.walls) {
    out << FormatDouble(w.a.x) << ' ' << FormatDouble(w.a.y) << ' '
        << FormatDouble(w.b.x) << ' ' << FormatDouble(w.b.y) << '\n';
  }
  internal::FinishWrite(out, path);
}

std::vector<GridIndex> RasterizeWalls(const WorldModel& world,
                                      const GridGeometry& geometry) {
  std::set<GridIndex> cells;
  for (const auto& wall : world.walls) {
    const double length = std::hypot(wall.b.x - wall.a.x, wall.b.y - wall.a.y);
    const auto samples =
        static_cast<int>(std::ceil(length / (0.25 * geometry.resolution)));
    for (int i = 0; i <= samples; ++i) {
      const double f = static_cast<double>(i) / samples;
      const GridIndex cell =
          WorldToGrid(geometry, {std::lerp(wall.a.x, wall.b.x, f),
                                 std::lerp(wall.a.y, wall.b.y, f)});
      if (geometry.Contains(cell)) cells.insert(cell);
    }
  }
  return {cells.begin(), cells.end()};
}

void TrajectoryScript::Validate() const {
  if (!std::isfinite(start_pose.x) || !std::isfinite(start_pose.y) ||
      !std::isfinite(start_pose.theta)) {
    throw ConfigError("script start pose must be finite");
  }
  for (const auto& s : segments) {
    if (!(s.duration > 0.) || !std::isfinite(s.duration)) {
      throw ConfigError("script segment durations must be positive");
    }
    if (!std::isfinite(s.v) || !std::isfinite(s.omega)) {
      throw ConfigError("script velocities must be finite");
    }
  }
}

double TrajectoryScript::TotalDuration() const {
  double total = 0.;
  for (const auto& s : segments) total += s.duration;
  return total;
}

TrajectoryScript LoadScript(const std::string& path) {
  TrajectoryScript script;
  std::vector<double> start(3, 0.);
  for (const auto& row : ParseNumberLines(path, 3, "start", &start)) {
    script.segments.push_back({row[0], row[1], row[2]});
  }
  script.start_pose = {start[0], start[1], NormalizeAngle(start[2])};
  script.Validate();
  return script;
}

void WriteScript(const TrajectoryScript& script, const std::string& path) {
  using internal::FormatDouble;
  auto out = internal::OpenForWrite(path);
  out << "start " << FormatDouble(script.start_pose.x) << ' '
      << FormatDouble(script.start_pose.y) << ' '
      << FormatDouble(script.start_pose.theta) << '\n';
  for (const auto& s : script.segments) {
    out << FormatDouble(s.duration) << ' ' << FormatDouble(s.v) << ' '
        << FormatDouble(s.omega) << '\n';
  }
  internal::FinishWrite(out, path);
}

ExactState StateAt(const TrajectoryScript& script, double t) {
  double x = script.start_pose.x;
  double y = script.start_pose.y;
  double heading = script.start_pose.theta;
  double distance = 0.;
  double remaining = std::max(t, 0.);
  for (const auto& s : script.segments) {
    if (remaining <= 0.) break;
    const double tau = std::min(remaining, s.duration);
    remaining -= tau;
    if (std::abs(s.omega) < 1e-12) {
      x += s.v * tau * std::cos(heading);
      y += s.v * tau * std::sin(heading);
    } else {
      const double radius = s.v / s.omega;
      const double next = heading + s.omega * tau;
      x += radius * (std::sin(next) - std::sin(heading));
      y += radius * (std::cos(heading) - std::cos(next));
    }
    heading += s.omega * tau;
    distance += s.v * tau;
  }
  return {{x, y, NormalizeAngle(heading)}, heading, distance};
}

std::optional<RayHit> CastRay(const WorldModel& world, const Point2D& origin,
                              double angle, double max_range) {
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  std::optional<RayHit> best;
  for (std::size_t i = 0; i < world.walls.size(); ++i) {
    const auto& wall = world.walls[i];
    const double ex = wall.b.x - wall.a.x;
    const double ey = wall.b.y - wall.a.y;
    const double denom = Cross(dx, dy, ex, ey);
    // Parallel (including collinear) walls are treated as invisible.
    if (std::abs(denom) < 1e-12) continue;
    const double ox = wall.a.x - origin.x;
    const double oy = wall.a.y - origin.y;
    const double t = Cross(ox, oy, ex, ey) / denom;
    const double u = Cross(ox, oy, dx, dy) / denom;
    if (t < 0. || t > max_range || u < 0. || u > 1.) continue;
    if (!best || t < best->range) best = RayHit{t, i};
  }
  return best;
}

void NoiseSpec::Validate() const {
  if (!(sigma_range >= 0.) || !(sigma_v >= 0.) || !(sigma_omega >= 0.)) {
    throw ConfigError("noise sigmas must be non-negative");
  }
  if (!(dropout >= 0. && dropout <= 1.)) {
    throw ConfigError("dropout probability must be in [0, 1]");
  }
}

void SensorRates::Validate() const {
  if (!(encoder_hz > 0.) || !(fog_hz > 0.) || !(lidar_hz > 0.)) {
    throw ConfigError("sensor rates must be positive");
  }
}

SimulatedLogs Simulate(const WorldModel& world, const TrajectoryScript& script,
                       const CalibrationConfig& calib, const NoiseSpec& noise,
                       const SensorRates& rates,
                       const TextureOptions& texture) {
  script.Validate();
  calib.Validate();
  noise.Validate();
  rates.Validate();

  SimulatedLogs logs;
  logs.calib = calib;
  const auto end_us =
      static_cast<TimestampUs>(std::llround(script.TotalDuration() * 1e6));

  {
    auto rng = MakeStream(noise.seed, Stream::kEncoder);
    std::normal_distribution<double> gauss(0., 1.);
    const double ticks_per_meter_left =
        calib.encoder_resolution / (kPi * calib.wheel_diameter_left);
    const double ticks_per_meter_right =
        calib.encoder_resolution / (kPi * calib.wheel_diameter_right);
    double measured_distance = 0.;
    double previous_true = 0.;
    TimestampUs previous_t = 0;
    for (const TimestampUs t : SampleTimes(rates.encoder_hz, end_us)) {
      const double true_distance = StateAt(script, Seconds(t)).distance;
      if (t > 0) {
        double step = true_distance - previous_true;
        if (noise.sigma_v > 0.) {
          step += noise.sigma_v * gauss(rng) * Seconds(t - previous_t);
        }
        measured_distance += step;
      }
      previous_true = true_distance;
      previous_t = t;
      logs.encoders.push_back({t, measured_distance * ticks_per_meter_left,
                               measured_distance * ticks_per_meter_right});
    }
  }

  {
    auto rng = MakeStream(noise.seed, Stream::kFog);
    std::normal_distribution<double> gauss(0., 1.);
    const auto times = SampleTimes(rates.fog_hz, end_us);
    for (std::size_t k = 1; k < times.size(); ++k) {
      double delta = StateAt(script, Seconds(times[k])).heading -
                     StateAt(script, Seconds(times[k - 1])).heading;
      if (noise.sigma_omega > 0.) {
        delta += noise.sigma_omega * gauss(rng) * Seconds(times[k] - times[k - 1]);
      }
      logs.fogs.push_back({times[k], 0., 0., delta});
    }
  }

  {
    auto rng = MakeStream(noise.seed, Stream::kLidar);
    auto texture_rng = MakeStream(noise.seed, Stream::kTexture);
    std::normal_distribution<double> gauss(0., 1.);
    std::uniform_real_distribution<double> uniform(0., 1.);
    std::uniform_real_distribution<double> wall_height(-0.3, 2.0);
    const auto& angles = ScanAngles();
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    for (const TimestampUs t : SampleTimes(rates.lidar_hz, end_us)) {
      const Pose2D vehicle = StateAt(script, Seconds(t)).pose;
      const Pose2D lidar = LidarPoseInWorld(vehicle, calib.vehicle_to_lidar);
      LidarScan scan{t, std::vector<double>(kBeamCount, kNaN)};
      for (std::size_t i = 0; i < kBeamCount; ++i) {
        const double bearing = lidar.theta + angles[i];
        const auto hit = CastRay(world, {lidar.x, lidar.y}, bearing,
                                 calib.range_max);
        const double range_noise = gauss(rng);
        const double drop = uniform(rng);
        if (!hit) continue;
        if (drop >= noise.dropout) {
          scan.ranges[i] = hit->range + noise.sigma_range * range_noise;
        }
        if (texture.beam_stride > 0 &&
            i % static_cast<std::size_t>(texture.beam_stride) == 0) {
          const double c = std::cos(bearing);
          const double s = std::sin(bearing);
          const Point2D floor{lidar.x + 0.5 * hit->range * c,
                              lidar.y + 0.5 * hit->range * s};
          const auto floor_color = FloorColor(floor);
          logs.colored_points.push_back({floor.x, floor.y, 0., floor_color[0],
                                         floor_color[1], floor_color[2]});
          const auto wall_color = WallColor(hit->wall);
          logs.colored_points.push_back(
              {lidar.x + hit->range * c, lidar.y + hit->range * s,
               wall_height(texture_rng), wall_color[0], wall_color[1],
               wall_color[2]});
        }
      }
      logs.scans.push_back(std::move(scan));
      logs.ground_truth.push_back({t, vehicle});
    }
  }
  return logs;
}

void WriteSimulatedLogs(const SimulatedLogs& logs, const std::string& dir) {
  WriteEncoderCsv(logs.encoders, dir + "/encoder.csv");
  WriteFogCsv(logs.fogs, dir + "/fog.csv");
  WriteLidarCsv(logs.scans, dir + "/lidar.csv");
  WritePosesCsv(logs.ground_truth, dir + "/ground_truth.csv");
  WriteColoredPointsCsv(logs.colored_points, dir + "/points.csv");
  WriteCalibration(logs.calib, dir + "/calib.cfg");
}

}  // namespace pfslam::sim
