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

#ifndef PFSLAM_ERROR_H_
#define PFSLAM_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfslam {

// Bad input data: malformed logs, unreadable files, failed writes.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A malformed row in a text log. what() carries "<path>:<line>: <message>".
class ParseError : public DataError {
 public:
  ParseError(const std::string& path, std::size_t line,
             const std::string& message)
      : DataError(path + ":" + std::to_string(line) + ": " + message),
        path_(path),
        line_(line) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

// Invalid parameter values (calibration, SLAM configuration, simulator
// settings).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// All particle weights vanished during a measurement update.
class DegenerateBeliefError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pfslam

#endif  // PFSLAM_ERROR_H_
