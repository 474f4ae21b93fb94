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

#ifndef PFSLAM_KEY_VALUE_H_
#define PFSLAM_KEY_VALUE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace pfslam {

// Flat `key = value` text files used for calib.cfg and the SLAM config.
// Blank lines and lines starting with '#' are ignored. Duplicate keys are a
// parse error.
class KeyValueFile {
 public:
  static KeyValueFile Load(const std::string& path);
  static KeyValueFile Parse(std::string_view text,
                            const std::string& source_name);

  bool Has(const std::string& key) const;

  // Typed lookups. A missing key yields `fallback`; an unparsable value throws
  // ParseError pointing at the line that defined the key.
  double GetDouble(const std::string& key, double fallback);
  std::int64_t GetInt(const std::string& key, std::int64_t fallback);
  bool GetBool(const std::string& key, bool fallback);
  std::string GetString(const std::string& key, const std::string& fallback);

  double RequireDouble(const std::string& key);

  // Throws ParseError naming the first key that no Get* call consumed.
  void RejectUnusedKeys() const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };

  const Entry* Find(const std::string& key);

  std::string source_name_;
  std::map<std::string, Entry> entries_;
  std::set<std::string> consumed_;
};

}  // namespace pfslam

#endif  // PFSLAM_KEY_VALUE_H_
