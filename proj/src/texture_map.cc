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

#include "pfslam/texture_map.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pfslam/error.h"
#include "text_format.h"

namespace pfslam {

ColorGrid::ColorGrid(const GridGeometry& geometry)
    : geometry_(geometry), cells_((geometry.Validate(), geometry.CellCount())) {}

std::size_t ColorGrid::PaintedCellCount() const {
  return static_cast<std::size_t>(std::count_if(
      cells_.begin(), cells_.end(), [](const Cell& c) { return c.hits > 0; }));
}

void ColorGrid::Paint(std::span<const ColoredPoint> points, const ZBand& band) {
  if (!(band.z_min < band.z_max)) {
    throw std::invalid_argument("Paint: z_min must be below z_max");
  }
  for (const auto& point : points) {
    if (!(point.z >= band.z_min && point.z <= band.z_max)) continue;
    const GridIndex index = WorldToGrid(geometry_, {point.x, point.y});
    if (!geometry_.Contains(index)) continue;
    Cell& cell = cells_[geometry_.Offset(index)];
    ++cell.hits;
    const double inv = 1. / static_cast<double>(cell.hits);
    cell.r += (point.r - cell.r) * inv;
    cell.g += (point.g - cell.g) * inv;
    cell.b += (point.b - cell.b) * inv;
  }
}

void ExportPpm(const ColorGrid& grid, const std::string& path) {
  const GridGeometry& geometry = grid.geometry();
  auto out = internal::OpenForWrite(path, /*binary=*/true);
  out << "P6\n" << geometry.width << ' ' << geometry.height << "\n255\n";
  std::vector<unsigned char> row_bytes(3 * static_cast<std::size_t>(geometry.width));
  const auto to_byte = [](double channel) {
    return static_cast<unsigned char>(
        std::clamp<long>(std::lround(channel), 0, 255));
  };
  for (int row = geometry.height - 1; row >= 0; --row) {
    for (int col = 0; col < geometry.width; ++col) {
      const auto& cell = grid.at({col, row});
      unsigned char* pixel = &row_bytes[3 * static_cast<std::size_t>(col)];
      if (cell.hits == 0) {
        pixel[0] = pixel[1] = pixel[2] = 128;
      } else {
        pixel[0] = to_byte(cell.r);
        pixel[1] = to_byte(cell.g);
        pixel[2] = to_byte(cell.b);
      }
    }
    out.write(reinterpret_cast<const char*>(row_bytes.data()),
              static_cast<std::streamsize>(row_bytes.size()));
  }
  internal::FinishWrite(out, path);
}

std::vector<ColoredPoint> LoadColoredPointsCsv(const std::string& path) {
  internal::LineReader reader(path);
  std::vector<ColoredPoint> points;
  std::string line;
  while (reader.Next(line)) {
    const std::size_t n = reader.line_number();
    if (internal::Trim(line).empty()) continue;
    const auto fields = internal::SplitFields(line, ',');
    if (n == 1 && internal::Trim(fields.front()) == "x") continue;
    if (fields.size() != 6) {
      throw ParseError(path, n,
                       "expected 6 fields, got " + std::to_string(fields.size()));
    }
    ColoredPoint point;
    double* coords[] = {&point.x, &point.y, &point.z};
    for (int i = 0; i < 3; ++i) {
      const auto value = internal::ParseDouble(fields[i]);
      if (!value || !std::isfinite(*value)) {
        throw ParseError(path, n,
                         "bad coordinate '" + std::string(fields[i]) + "'");
      }
      *coords[i] = *value;
    }
    std::uint8_t* channels[] = {&point.r, &point.g, &point.b};
    for (int i = 0; i < 3; ++i) {
      const auto value = internal::ParseInt(fields[3 + i]);
      if (!value) {
        throw ParseError(path, n,
                         "bad color channel '" + std::string(fields[3 + i]) +
                             "'");
      }
      if (*value < 0 || *value > 255) {
        throw ParseError(path, n,
                         "color channel out of range [0, 255]: " +
                             std::to_string(*value));
      }
      *channels[i] = static_cast<std::uint8_t>(*value);
    }
    points.push_back(point);
  }
  return points;
}

void WriteColoredPointsCsv(std::span<const ColoredPoint> points,
                           const std::string& path) {
  using internal::FormatDouble;
  auto out = internal::OpenForWrite(path);
  out << "x,y,z,r,g,b\n";
  for (const auto& p : points) {
    out << FormatDouble(p.x) << ',' << FormatDouble(p.y) << ','
        << FormatDouble(p.z) << ',' << static_cast<int>(p.r) << ','
        << static_cast<int>(p.g) << ',' << static_cast<int>(p.b) << '\n';
  }
  internal::FinishWrite(out, path);
}

}  // namespace pfslam
