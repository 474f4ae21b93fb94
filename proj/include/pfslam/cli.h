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

#ifndef PFSLAM_CLI_H_
#define PFSLAM_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace pfslam {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Entry point of the `pfslam` tool. `args` excludes the program name.
//
//   pfslam slam run --config <file> --logs <dir> --out <dir>
//   pfslam simulate --world <file> --script <file> --out <dir> [options]
//   pfslam map export --config <file> --logs <dir> --trajectory <csv> --out <pgm>
//   pfslam texture paint --config <file> --points <csv> --out <ppm>
int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace pfslam

#endif  // PFSLAM_CLI_H_
