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

#ifndef PFSLAM_TEXTURE_MAP_H_
#define PFSLAM_TEXTURE_MAP_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pfslam/grid_map.h"

namespace pfslam {

// World-frame point with an 8-bit RGB color.
struct ColoredPoint {
  double x = 0.;
  double y = 0.;
  double z = 0.;
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
};

struct ZBand {
  double z_min = -0.5;
  double z_max = 0.5;
};

// RGB layer with the same geometry as an occupancy grid. Each cell keeps the
// running mean of every color painted into it.
class ColorGrid {
 public:
  struct Cell {
    double r = 0.;
    double g = 0.;
    double b = 0.;
    std::uint32_t hits = 0;
  };

  explicit ColorGrid(const GridGeometry& geometry);

  const GridGeometry& geometry() const { return geometry_; }
  const Cell& at(const GridIndex& index) const {
    return cells_[geometry_.Offset(index)];
  }
  std::size_t PaintedCellCount() const;

  // Points with z in [z_min, z_max] landing on the grid update their cell's
  // running mean. Throws std::invalid_argument unless z_min < z_max.
  void Paint(std::span<const ColoredPoint> points, const ZBand& band);

 private:
  GridGeometry geometry_;
  std::vector<Cell> cells_;
};

// Binary PPM (P6). Unpainted cells are (128, 128, 128); rows are flipped like
// ExportPgm so the image is world-up.
void ExportPpm(const ColorGrid& grid, const std::string& path);

// Reads `x,y,z,r,g,b` rows (header optional). Channels must be integers in
// [0, 255].
std::vector<ColoredPoint> LoadColoredPointsCsv(const std::string& path);
void WriteColoredPointsCsv(std::span<const ColoredPoint> points,
                           const std::string& path);

}  // namespace pfslam

#endif  // PFSLAM_TEXTURE_MAP_H_
