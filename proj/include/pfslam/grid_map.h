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

#ifndef PFSLAM_GRID_MAP_H_
#define PFSLAM_GRID_MAP_H_

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "pfslam/geometry.h"
#include "pfslam/sensor_io.h"

namespace pfslam {

struct GridIndex {
  int col = 0;
  int row = 0;

  friend bool operator==(const GridIndex&, const GridIndex&) = default;
  friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

// Placement of a dense raster in the world. Cell (c, r) covers
// [origin.x + c * resolution, origin.x + (c + 1) * resolution) and likewise
// in y.
struct GridGeometry {
  int width = 0;
  int height = 0;
  double resolution = 0.;
  Point2D origin;

  void Validate() const;

  bool Contains(const GridIndex& index) const {
    return index.col >= 0 && index.col < width && index.row >= 0 &&
           index.row < height;
  }
  std::size_t CellCount() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::size_t Offset(const GridIndex& index) const {
    return static_cast<std::size_t>(index.row) * width + index.col;
  }
  Point2D CellCenter(const GridIndex& index) const {
    return {origin.x + (index.col + 0.5) * resolution,
            origin.y + (index.row + 0.5) * resolution};
  }

  friend bool operator==(const GridGeometry& a, const GridGeometry& b) {
    return a.width == b.width && a.height == b.height &&
           a.resolution == b.resolution && a.origin.x == b.origin.x &&
           a.origin.y == b.origin.y;
  }
};

// Floor binning; the result may lie outside the grid.
GridIndex WorldToGrid(const GridGeometry& geometry, const Point2D& point);

// Log-odds evidence per beam. The 4:1 trust ratio and a clamp of ten
// increments are defaults.
struct LogOddsParams {
  double delta_occ = std::log(4.);
  double delta_free = -std::log(4.);
  double lambda_min = -10. * std::log(4.);
  double lambda_max = 10. * std::log(4.);

  void Validate() const;
};

enum class CorrelationMode {
  kCount,  // number of points on cells with log-odds > 0
  kSum,    // sum of log-odds under the points
};

// Dense log-odds occupancy raster. A fresh grid is all zeros (p = 0.5) and
// every stored value stays inside [lambda_min, lambda_max].
class OccupancyGrid {
 public:
  OccupancyGrid(const GridGeometry& geometry, double lambda_min,
                double lambda_max);

  const GridGeometry& geometry() const { return geometry_; }
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }

  // Caller guarantees geometry().Contains(index).
  double LogOdds(const GridIndex& index) const {
    return log_odds_[geometry_.Offset(index)];
  }
  std::span<const double> values() const { return log_odds_; }

  // Adds delta to an in-bounds cell and clamps. Out-of-bounds is a no-op.
  void Update(const GridIndex& index, double delta);

 private:
  GridGeometry geometry_;
  double lambda_min_;
  double lambda_max_;
  std::vector<double> log_odds_;
};

// Integer line raster from start to end, both endpoints included, each step
// moving one cell along the major axis. Where the ideal line crosses the
// midpoint between two minor-axis cells the larger index is taken, so the
// cell set does not depend on the direction of traversal.
std::vector<GridIndex> Bresenham2D(const GridIndex& start,
                                   const GridIndex& end);

// Beam endpoints in the lidar frame for every reading that passes
// calib.IsValidRange().
std::vector<Point2D> ScanToLidarPoints(const LidarScan& scan,
                                       std::span<const double> angles,
                                       const CalibrationConfig& calib);

std::vector<Point2D> ScanToWorldPoints(const Pose2D& lidar_pose_world,
                                       const LidarScan& scan,
                                       std::span<const double> angles,
                                       const CalibrationConfig& calib);

// Carves every valid beam into the grid: endpoint cell += delta_occ, cells
// strictly between the sensor cell and the endpoint += delta_free. The sensor
// cell itself is never marked occupied.
void IntegrateScan(OccupancyGrid& grid, const Pose2D& lidar_pose_world,
                   const LidarScan& scan, std::span<const double> angles,
                   const CalibrationConfig& calib, const LogOddsParams& params);

// Scan-to-map agreement of world-frame points. Points off the grid score 0.
double Correlation(const OccupancyGrid& grid,
                   std::span<const Point2D> world_points,
                   CorrelationMode mode = CorrelationMode::kCount);

inline double OccupancyProbability(double log_odds) {
  return 1. / (1. + std::exp(-log_odds));
}

// Binary PGM (P5), 255 = free, 0 = occupied, first image row = top of map.
void ExportPgm(const OccupancyGrid& grid, const std::string& path);

}  // namespace pfslam

#endif  // PFSLAM_GRID_MAP_H_
