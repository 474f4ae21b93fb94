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

#include "pfslam/grid_map.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>

#include "pfslam/error.h"
#include "text_format.h"

namespace pfslam {
namespace {

// Visits the cells of the line from start to end in order. Along the major
// axis step k the minor coordinate is
//   start.minor + floor((2 k d_minor + n) / (2 n)),  n = |d_major|,
// i.e. the ideal line rounded half up. The floor is tracked incrementally as
// a quotient/remainder pair, which is the Bresenham error term.
template <typename Visit>
void TraceLine(const GridIndex& start, const GridIndex& end, Visit&& visit) {
  const int d_col = end.col - start.col;
  const int d_row = end.row - start.row;
  const bool col_major = std::abs(d_col) >= std::abs(d_row);
  const int d_major = col_major ? d_col : d_row;
  const int d_minor = col_major ? d_row : d_col;
  const std::int64_t n = std::abs(d_major);
  const int major_step = d_major >= 0 ? 1 : -1;

  if (n == 0) {
    visit(start);
    return;
  }

  const std::int64_t two_n = 2 * n;
  const std::int64_t minor_increment = 2 * static_cast<std::int64_t>(d_minor);
  // remainder of (2 k d_minor + n) modulo 2n, kept in [0, 2n).
  std::int64_t remainder = n;
  int major = col_major ? start.col : start.row;
  int minor = col_major ? start.row : start.col;
  for (std::int64_t k = 0; k <= n; ++k) {
    visit(col_major ? GridIndex{major, minor} : GridIndex{minor, major});
    major += major_step;
    remainder += minor_increment;
    if (remainder >= two_n) {
      remainder -= two_n;
      ++minor;
    } else if (remainder < 0) {
      remainder += two_n;
      --minor;
    }
  }
}

}  // namespace

void GridGeometry::Validate() const {
  if (width <= 0 || height <= 0) {
    throw ConfigError("grid width and height must be positive");
  }
  if (!(resolution > 0.) || !std::isfinite(resolution)) {
    throw ConfigError("grid resolution must be positive");
  }
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw ConfigError("grid origin must be finite");
  }
}

GridIndex WorldToGrid(const GridGeometry& geometry, const Point2D& point) {
  return {static_cast<int>(
              std::floor((point.x - geometry.origin.x) / geometry.resolution)),
          static_cast<int>(
              std::floor((point.y - geometry.origin.y) / geometry.resolution))};
}

void LogOddsParams::Validate() const {
  if (!(lambda_min < 0.) || !(lambda_max > 0.)) {
    throw ConfigError("log-odds clamp must satisfy lambda_min < 0 < lambda_max");
  }
  if (!(delta_occ > 0.) || !(delta_free < 0.)) {
    throw ConfigError("require delta_occ > 0 and delta_free < 0");
  }
}

OccupancyGrid::OccupancyGrid(const GridGeometry& geometry, double lambda_min,
                             double lambda_max)
    : geometry_(geometry),
      lambda_min_(lambda_min),
      lambda_max_(lambda_max),
      log_odds_((geometry.Validate(), geometry.CellCount()), 0.) {
  if (!(lambda_min <= 0. && 0. <= lambda_max)) {
    throw ConfigError("log-odds clamp must contain 0");
  }
}

void OccupancyGrid::Update(const GridIndex& index, double delta) {
  if (!geometry_.Contains(index)) return;
  double& cell = log_odds_[geometry_.Offset(index)];
  cell = std::clamp(cell + delta, lambda_min_, lambda_max_);
}

std::vector<GridIndex> Bresenham2D(const GridIndex& start,
                                   const GridIndex& end) {
  std::vector<GridIndex> cells;
  cells.reserve(static_cast<std::size_t>(std::max(std::abs(end.col - start.col),
                                                  std::abs(end.row - start.row))) +
                1);
  TraceLine(start, end, [&](const GridIndex& cell) { cells.push_back(cell); });
  return cells;
}

std::vector<Point2D> ScanToLidarPoints(const LidarScan& scan,
                                       std::span<const double> angles,
                                       const CalibrationConfig& calib) {
  std::vector<Point2D> points;
  const std::size_t beams = std::min(scan.ranges.size(), angles.size());
  points.reserve(beams);
  for (std::size_t i = 0; i < beams; ++i) {
    if (!calib.IsValidRange(scan.ranges[i])) continue;
    points.push_back(PolarToCartesian(scan.ranges[i], angles[i]));
  }
  return points;
}

std::vector<Point2D> ScanToWorldPoints(const Pose2D& lidar_pose_world,
                                       const LidarScan& scan,
                                       std::span<const double> angles,
                                       const CalibrationConfig& calib) {
  const auto transform = RigidTransform2D::FromPose(lidar_pose_world);
  auto points = ScanToLidarPoints(scan, angles, calib);
  for (auto& p : points) p = Apply(transform, p);
  return points;
}

void IntegrateScan(OccupancyGrid& grid, const Pose2D& lidar_pose_world,
                   const LidarScan& scan, std::span<const double> angles,
                   const CalibrationConfig& calib,
                   const LogOddsParams& params) {
  const GridGeometry& geometry = grid.geometry();
  const GridIndex sensor_cell =
      WorldToGrid(geometry, {lidar_pose_world.x, lidar_pose_world.y});
  for (const Point2D& endpoint :
       ScanToWorldPoints(lidar_pose_world, scan, angles, calib)) {
    const GridIndex end_cell = WorldToGrid(geometry, endpoint);
    if (end_cell == sensor_cell) continue;
    TraceLine(sensor_cell, end_cell, [&](const GridIndex& cell) {
      if (cell == sensor_cell) return;
      grid.Update(cell, cell == end_cell ? params.delta_occ : params.delta_free);
    });
  }
}

double Correlation(const OccupancyGrid& grid,
                   std::span<const Point2D> world_points,
                   CorrelationMode mode) {
  const GridGeometry& geometry = grid.geometry();
  double score = 0.;
  for (const Point2D& p : world_points) {
    const GridIndex cell = WorldToGrid(geometry, p);
    if (!geometry.Contains(cell)) continue;
    const double value = grid.LogOdds(cell);
    if (mode == CorrelationMode::kCount) {
      score += value > 0. ? 1. : 0.;
    } else {
      score += value;
    }
  }
  return score;
}

void ExportPgm(const OccupancyGrid& grid, const std::string& path) {
  const GridGeometry& geometry = grid.geometry();
  auto out = internal::OpenForWrite(path, /*binary=*/true);
  out << "P5\n" << geometry.width << ' ' << geometry.height << "\n255\n";
  std::vector<unsigned char> row_bytes(static_cast<std::size_t>(geometry.width));
  for (int row = geometry.height - 1; row >= 0; --row) {
    for (int col = 0; col < geometry.width; ++col) {
      const double p = OccupancyProbability(grid.LogOdds({col, row}));
      row_bytes[static_cast<std::size_t>(col)] =
          static_cast<unsigned char>(std::lround(255. * (1. - p)));
    }
    out.write(reinterpret_cast<const char*>(row_bytes.data()),
              static_cast<std::streamsize>(row_bytes.size()));
  }
  internal::FinishWrite(out, path);
}

}  // namespace pfslam
