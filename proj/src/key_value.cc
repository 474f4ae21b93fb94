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

#include "pfslam/key_value.h"

#include <fstream>
#include <sstream>

#include "pfslam/error.h"
#include "text_format.h"

namespace pfslam {

KeyValueFile KeyValueFile::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path);
}

KeyValueFile KeyValueFile::Parse(std::string_view text,
                                 const std::string& source_name) {
  KeyValueFile file;
  file.source_name_ = source_name;
  std::size_t line_number = 0;
  for (const auto raw_line : internal::SplitFields(text, '\n')) {
    ++line_number;
    const auto line = internal::Trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(source_name, line_number, "expected key=value");
    }
    const std::string key(internal::Trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(source_name, line_number, "empty key");
    Entry entry{std::string(internal::Trim(line.substr(eq + 1))), line_number};
    if (!file.entries_.emplace(key, std::move(entry)).second) {
      throw ParseError(source_name, line_number, "duplicate key '" + key + "'");
    }
  }
  return file;
}

bool KeyValueFile::Has(const std::string& key) const {
  return entries_.count(key) > 0;
}

const KeyValueFile::Entry* KeyValueFile::Find(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  consumed_.insert(key);
  return &it->second;
}

double KeyValueFile::GetDouble(const std::string& key, double fallback) {
  const Entry* entry = Find(key);
  if (entry == nullptr) return fallback;
  const auto value = internal::ParseDouble(entry->value);
  if (!value) {
    throw ParseError(source_name_, entry->line,
                     "'" + key + "' is not a number: " + entry->value);
  }
  return *value;
}

std::int64_t KeyValueFile::GetInt(const std::string& key,
                                  std::int64_t fallback) {
  const Entry* entry = Find(key);
  if (entry == nullptr) return fallback;
  const auto value = internal::ParseInt(entry->value);
  if (!value) {
    throw ParseError(source_name_, entry->line,
                     "'" + key + "' is not an integer: " + entry->value);
  }
  return *value;
}

bool KeyValueFile::GetBool(const std::string& key, bool fallback) {
  const Entry* entry = Find(key);
  if (entry == nullptr) return fallback;
  if (entry->value == "true" || entry->value == "1") return true;
  if (entry->value == "false" || entry->value == "0") return false;
  throw ParseError(source_name_, entry->line,
                   "'" + key + "' is not a boolean: " + entry->value);
}

std::string KeyValueFile::GetString(const std::string& key,
                                    const std::string& fallback) {
  const Entry* entry = Find(key);
  return entry == nullptr ? fallback : entry->value;
}

double KeyValueFile::RequireDouble(const std::string& key) {
  if (!Has(key)) {
    throw ParseError(source_name_, 0, "missing required key '" + key + "'");
  }
  return GetDouble(key, 0.);
}

void KeyValueFile::RejectUnusedKeys() const {
  for (const auto& [key, entry] : entries_) {
    if (consumed_.count(key) == 0) {
      throw ParseError(source_name_, entry.line, "unknown key '" + key + "'");
    }
  }
}

}  // namespace pfslam
