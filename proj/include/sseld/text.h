/*
Copyright 2026 The Stereo SELD Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Small helpers shared by the CSV and key-value readers.

#ifndef SSELD_TEXT_H_
#define SSELD_TEXT_H_

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "sseld/error.h"

namespace sseld {

inline std::string_view Trim(std::string_view text) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

inline std::vector<std::string_view> SplitFields(std::string_view line,
                                                 char separator = ',') {
  std::vector<std::string_view> fields;
  size_t begin = 0;
  while (true) {
    const size_t end = line.find(separator, begin);
    if (end == std::string_view::npos) {
      fields.push_back(Trim(line.substr(begin)));
      break;
    }
    fields.push_back(Trim(line.substr(begin, end - begin)));
    begin = end + 1;
  }
  return fields;
}

inline std::optional<double> ParseDouble(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

inline std::optional<long long> ParseInteger(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc() && ptr == text.data() + text.size() && !text.empty()) {
    return value;
  }
  // Some exporters write integral columns as "12.0".
  const auto real = ParseDouble(text);
  if (real && *real == std::floor(*real) && std::abs(*real) < 9.0e15) {
    return static_cast<long long>(*real);
  }
  return std::nullopt;
}

// Shortest round-trippable decimal representation; byte-stable across runs.
inline std::string FormatNumber(double value) {
  if (value == 0.0) value = 0.0;  // drops the sign of -0
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ec == std::errc() ? ptr : buffer);
}

inline std::string FormatFixed(double value, int digits) {
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::fixed, digits);
  return std::string(buffer, ec == std::errc() ? ptr : buffer);
}

// Calls `visit(line_number, line)` for every non-blank, non-comment line.
template <typename Visitor>
void ForEachDataLine(std::string_view text, Visitor&& visit) {
  int line_number = 0;
  size_t begin = 0;
  while (begin <= text.size()) {
    size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    ++line_number;
    const std::string_view line = Trim(text.substr(begin, end - begin));
    if (!line.empty() && line.front() != '#') visit(line_number, line);
    begin = end + 1;
  }
}

inline std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error(ErrorKind::kIo, "cannot open " + path.string());
  }
  std::ostringstream contents;
  contents << stream.rdbuf();
  return contents.str();
}

inline void WriteTextFile(const std::filesystem::path& path,
                          std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream) {
    throw Error(ErrorKind::kIo, "cannot write " + path.string());
  }
  stream.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!stream) {
    throw Error(ErrorKind::kIo, "short write to " + path.string());
  }
}

}  // namespace sseld

#endif  // SSELD_TEXT_H_
