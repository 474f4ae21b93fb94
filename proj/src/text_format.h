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

// Internal helpers shared by the text log readers and writers.

#ifndef PFSLAM_SRC_TEXT_FORMAT_H_
#define PFSLAM_SRC_TEXT_FORMAT_H_

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pfslam::internal {

std::string_view Trim(std::string_view text);

std::vector<std::string_view> SplitFields(std::string_view line, char sep);

// Strict full-field numeric parsing; surrounding whitespace allowed.
std::optional<double> ParseDouble(std::string_view field);
std::optional<std::int64_t> ParseInt(std::string_view field);

// Shortest representation that parses back to the identical double.
std::string FormatDouble(double value);

// Line-oriented reader that tracks 1-based line numbers and strips a
// trailing '\r'.
class LineReader {
 public:
  explicit LineReader(const std::string& path);

  bool Next(std::string& line);
  std::size_t line_number() const { return line_number_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_number_ = 0;
};

// Opens `path` for writing or throws DataError naming it.
std::ofstream OpenForWrite(const std::string& path, bool binary = false);

// Flushes and throws DataError naming `path` if any write failed.
void FinishWrite(std::ofstream& out, const std::string& path);

}  // namespace pfslam::internal

#endif  // PFSLAM_SRC_TEXT_FORMAT_H_
