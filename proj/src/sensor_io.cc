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

#include "pfslam/sensor_io.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pfslam/error.h"
#include "pfslam/key_value.h"
#include "text_format.h"

namespace pfslam {
namespace {

constexpr char kEncoderHeader[] = "timestamp_us,left_ticks,right_ticks";
constexpr char kFogHeader[] = "timestamp_us,delta_roll,delta_pitch,delta_yaw";

bool IsHeader(std::size_t line_number, std::string_view line) {
  return line_number == 1 &&
         internal::Trim(internal::SplitFields(line, ',').front()) ==
             "timestamp_us";
}

// Visits each data row of a CSV log as a field list, checking the column
// count and timestamp monotonicity.
template <typename RowFn>
void ForEachRow(const std::string& path, std::size_t expected_fields,
                RowFn&& row_fn) {
  internal::LineReader reader(path);
  std::string line;
  bool have_previous = false;
  TimestampUs previous = 0;
  while (reader.Next(line)) {
    if (internal::Trim(line).empty() || IsHeader(reader.line_number(), line)) {
      continue;
    }
    const auto fields = internal::SplitFields(line, ',');
    if (fields.size() != expected_fields) {
      throw ParseError(path, reader.line_number(),
                       "expected " + std::to_string(expected_fields) +
                           " fields, got " + std::to_string(fields.size()));
    }
    const auto timestamp = internal::ParseInt(fields[0]);
    if (!timestamp) {
      throw ParseError(path, reader.line_number(),
                       "bad timestamp '" + std::string(fields[0]) + "'");
    }
    if (have_previous && *timestamp <= previous) {
      throw ParseError(path, reader.line_number(),
                       "timestamp not strictly increasing");
    }
    have_previous = true;
    previous = *timestamp;
    row_fn(*timestamp, fields, reader.line_number());
  }
}

double RequireNumber(const std::string& path, std::size_t line,
                     std::string_view field, const char* what) {
  const auto value = internal::ParseDouble(field);
  if (!value) {
    throw ParseError(path, line,
                     std::string("bad ") + what + " '" + std::string(field) +
                         "'");
  }
  return *value;
}

template <typename Record>
void CheckStrictlyIncreasing(std::span<const Record> records,
                             const char* stream) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].timestamp_us <= records[i - 1].timestamp_us) {
      throw DataError(std::string(stream) +
                      " stream is not strictly increasing at index " +
                      std::to_string(i));
    }
  }
}

std::vector<double> AccumulatedYaw(std::span<const EncoderRecord> encoders,
                                   std::span<const FogRecord> fogs) {
  std::vector<double> yaw(encoders.size() > 0 ? encoders.size() - 1 : 0, 0.);
  std::size_t f = 0;
  for (std::size_t k = 1; k < encoders.size(); ++k) {
    while (f < fogs.size() &&
           fogs[f].timestamp_us <= encoders[k - 1].timestamp_us) {
      ++f;
    }
    while (f < fogs.size() && fogs[f].timestamp_us <= encoders[k].timestamp_us) {
      yaw[k - 1] += fogs[f].delta_yaw;
      ++f;
    }
  }
  return yaw;
}

// Cumulative yaw of a piecewise-linear curve through the gyro samples,
// evaluated at time t. Sample i spreads its increment uniformly over
// (t[i-1], t[i]]; the first sample is assumed to span one nominal period.
class YawCurve {
 public:
  explicit YawCurve(std::span<const FogRecord> fogs) {
    if (fogs.empty()) return;
    const double first_period =
        fogs.size() > 1 ? static_cast<double>(fogs[1].timestamp_us -
                                              fogs[0].timestamp_us)
                        : 0.;
    times_.push_back(static_cast<double>(fogs[0].timestamp_us) - first_period);
    values_.push_back(0.);
    for (const auto& fog : fogs) {
      times_.push_back(static_cast<double>(fog.timestamp_us));
      values_.push_back(values_.back() + fog.delta_yaw);
    }
  }

  double At(TimestampUs timestamp) const {
    if (times_.empty()) return 0.;
    const double t = static_cast<double>(timestamp);
    if (t <= times_.front()) return values_.front();
    if (t >= times_.back()) return values_.back();
    const auto upper = std::upper_bound(times_.begin(), times_.end(), t);
    const auto i = static_cast<std::size_t>(upper - times_.begin());
    const double span = times_[i] - times_[i - 1];
    const double fraction = span > 0. ? (t - times_[i - 1]) / span : 1.;
    return values_[i - 1] + fraction * (values_[i] - values_[i - 1]);
  }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

}  // namespace

const std::array<double, kBeamCount>& ScanAngles() {
  static const std::array<double, kBeamCount> angles = [] {
    constexpr double kFirst = -5. * kPi / 180.;
    constexpr double kLast = kPi;
    std::array<double, kBeamCount> result{};
    for (std::size_t i = 0; i < kBeamCount; ++i) {
      // std::lerp is exact at both ends and monotone in between.
      result[i] = std::lerp(kFirst, kLast,
                            static_cast<double>(i) /
                                static_cast<double>(kBeamCount - 1));
    }
    return result;
  }();
  return angles;
}

void CalibrationConfig::Validate() const {
  if (!(encoder_resolution > 0.)) {
    throw ConfigError("encoder_resolution must be positive");
  }
  if (!(wheel_diameter_left > 0.) || !(wheel_diameter_right > 0.)) {
    throw ConfigError("wheel diameters must be positive");
  }
  if (!(range_min >= 0.) || !(range_min < range_max)) {
    throw ConfigError("require 0 <= range_min < range_max");
  }
}

CalibrationConfig LoadCalibration(const std::string& path) {
  auto file = KeyValueFile::Load(path);
  CalibrationConfig calib;
  calib.encoder_resolution = file.RequireDouble("encoder_resolution");
  calib.wheel_diameter_left = file.RequireDouble("wheel_diameter_left");
  calib.wheel_diameter_right = file.RequireDouble("wheel_diameter_right");
  const double dx = file.GetDouble("lidar_dx", 0.);
  const double dy = file.GetDouble("lidar_dy", 0.);
  const double dtheta = file.GetDouble("lidar_dtheta", 0.);
  calib.vehicle_to_lidar = RigidTransform2D(dtheta, {dx, dy});
  calib.range_min = file.RequireDouble("range_min");
  calib.range_max = file.RequireDouble("range_max");
  file.RejectUnusedKeys();
  calib.Validate();
  return calib;
}

void WriteCalibration(const CalibrationConfig& calib, const std::string& path) {
  using internal::FormatDouble;
  auto out = internal::OpenForWrite(path);
  out << "encoder_resolution=" << FormatDouble(calib.encoder_resolution)
      << "\nwheel_diameter_left=" << FormatDouble(calib.wheel_diameter_left)
      << "\nwheel_diameter_right=" << FormatDouble(calib.wheel_diameter_right)
      << "\nlidar_dx=" << FormatDouble(calib.vehicle_to_lidar.translation().x)
      << "\nlidar_dy=" << FormatDouble(calib.vehicle_to_lidar.translation().y)
      << "\nlidar_dtheta=" << FormatDouble(calib.vehicle_to_lidar.rotation())
      << "\nrange_min=" << FormatDouble(calib.range_min)
      << "\nrange_max=" << FormatDouble(calib.range_max) << "\n";
  internal::FinishWrite(out, path);
}

std::vector<EncoderRecord> LoadEncoderCsv(const std::string& path) {
  std::vector<EncoderRecord> records;
  ForEachRow(path, 3, [&](TimestampUs t, const auto& fields, std::size_t line) {
    records.push_back({t, RequireNumber(path, line, fields[1], "left_ticks"),
                       RequireNumber(path, line, fields[2], "right_ticks")});
  });
  return records;
}

std::vector<FogRecord> LoadFogCsv(const std::string& path) {
  std::vector<FogRecord> records;
  ForEachRow(path, 4, [&](TimestampUs t, const auto& fields, std::size_t line) {
    records.push_back({t, RequireNumber(path, line, fields[1], "delta_roll"),
                       RequireNumber(path, line, fields[2], "delta_pitch"),
                       RequireNumber(path, line, fields[3], "delta_yaw")});
  });
  return records;
}

std::vector<LidarScan> LoadLidarCsv(const std::string& path) {
  std::vector<LidarScan> scans;
  ForEachRow(path, kBeamCount + 1,
             [&](TimestampUs t, const auto& fields, std::size_t line) {
               LidarScan scan{t, std::vector<double>(kBeamCount)};
               for (std::size_t i = 0; i < kBeamCount; ++i) {
                 const auto field = internal::Trim(fields[i + 1]);
                 scan.ranges[i] =
                     field.empty() ? std::numeric_limits<double>::quiet_NaN()
                                   : RequireNumber(path, line, field, "range");
               }
               scans.push_back(std::move(scan));
             });
  return scans;
}

void WriteEncoderCsv(std::span<const EncoderRecord> records,
                     const std::string& path) {
  auto out = internal::OpenForWrite(path);
  out << kEncoderHeader << '\n';
  for (const auto& r : records) {
    out << r.timestamp_us << ',' << internal::FormatDouble(r.left_ticks) << ','
        << internal::FormatDouble(r.right_ticks) << '\n';
  }
  internal::FinishWrite(out, path);
}

void WriteFogCsv(std::span<const FogRecord> records, const std::string& path) {
  auto out = internal::OpenForWrite(path);
  out << kFogHeader << '\n';
  for (const auto& r : records) {
    out << r.timestamp_us << ',' << internal::FormatDouble(r.delta_roll) << ','
        << internal::FormatDouble(r.delta_pitch) << ','
        << internal::FormatDouble(r.delta_yaw) << '\n';
  }
  internal::FinishWrite(out, path);
}

void WriteLidarCsv(std::span<const LidarScan> scans, const std::string& path) {
  auto out = internal::OpenForWrite(path);
  out << "timestamp_us";
  for (std::size_t i = 0; i < kBeamCount; ++i) out << ",r" << i;
  out << '\n';
  for (const auto& scan : scans) {
    if (scan.ranges.size() != kBeamCount) {
      throw DataError("scan at " + std::to_string(scan.timestamp_us) + " has " +
                      std::to_string(scan.ranges.size()) + " ranges");
    }
    out << scan.timestamp_us;
    for (const double r : scan.ranges) {
      out << ',';
      if (!std::isnan(r)) out << internal::FormatDouble(r);
    }
    out << '\n';
  }
  internal::FinishWrite(out, path);
}

std::vector<StampedPose> LoadPosesCsv(const std::string& path) {
  std::vector<StampedPose> poses;
  ForEachRow(path, 4, [&](TimestampUs t, const auto& fields, std::size_t line) {
    poses.push_back({t, Pose2D{RequireNumber(path, line, fields[1], "x"),
                               RequireNumber(path, line, fields[2], "y"),
                               RequireNumber(path, line, fields[3], "theta")}});
  });
  return poses;
}

void WritePosesCsv(std::span<const StampedPose> poses, const std::string& path) {
  auto out = internal::OpenForWrite(path);
  out << "timestamp_us,x,y,theta\n";
  for (const auto& p : poses) {
    out << p.timestamp_us << ',' << internal::FormatDouble(p.pose.x) << ','
        << internal::FormatDouble(p.pose.y) << ','
        << internal::FormatDouble(p.pose.theta) << '\n';
  }
  internal::FinishWrite(out, path);
}

std::vector<SensorEvent> MergeStreams(std::span<const EncoderRecord> encoders,
                                      std::span<const FogRecord> fogs,
                                      std::span<const LidarScan> scans,
                                      FogPairing pairing) {
  CheckStrictlyIncreasing(encoders, "encoder");
  CheckStrictlyIncreasing(fogs, "fog");
  CheckStrictlyIncreasing(scans, "lidar");

  std::vector<double> yaw;
  if (pairing == FogPairing::kAccumulate) {
    yaw = AccumulatedYaw(encoders, fogs);
  } else {
    const YawCurve curve(fogs);
    for (std::size_t k = 1; k < encoders.size(); ++k) {
      yaw.push_back(curve.At(encoders[k].timestamp_us) -
                    curve.At(encoders[k - 1].timestamp_us));
    }
  }

  const std::size_t steps = yaw.size();
  std::vector<SensorEvent> events;
  events.reserve(steps + scans.size());
  std::size_t k = 0;
  std::size_t s = 0;
  while (k < steps || s < scans.size()) {
    const bool take_odometry =
        k < steps && (s == scans.size() ||
                      encoders[k + 1].timestamp_us <= scans[s].timestamp_us);
    if (take_odometry) {
      events.push_back({encoders[k + 1].timestamp_us,
                        OdometryStep{encoders[k], encoders[k + 1], yaw[k]}});
      ++k;
    } else {
      events.push_back({scans[s].timestamp_us, scans[s]});
      ++s;
    }
  }
  return events;
}

}  // namespace pfslam
