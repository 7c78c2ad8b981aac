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

// Event metadata: the 13-class taxonomy, source/stereo CSV schemas, and the
// label transforms applied when a viewing direction is chosen (rotation,
// onscreen flagging, front-back folding, elevation dropping).

#ifndef SSELD_LABELS_H_
#define SSELD_LABELS_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "sseld/angles.h"
#include "sseld/error.h"
#include "sseld/text.h"

namespace sseld {

inline constexpr int kNumClasses = 13;
inline constexpr double kLabelFrameS = 0.1;

inline constexpr std::array<std::string_view, kNumClasses> kClassNames = {
    "Female speech, woman speaking",
    "Male speech, man speaking",
    "Clapping",
    "Telephone",
    "Laughter",
    "Domestic sounds",
    "Walk, footsteps",
    "Door, open or close",
    "Music",
    "Musical instrument",
    "Water tap, faucet",
    "Bell",
    "Knock",
};

inline bool IsValidClassId(int id) { return id >= 0 && id < kNumClasses; }

inline std::string_view ClassName(int id) {
  if (!IsValidClassId(id)) {
    throw Error(ErrorKind::kValidation, "class id out of range: " + std::to_string(id));
  }
  return kClassNames[id];
}

inline std::optional<int> ClassIdFromName(std::string_view name) {
  for (int i = 0; i < kNumClasses; ++i) {
    if (kClassNames[i] == name) return i;
  }
  return std::nullopt;
}

// kSource: frame,class,source,azimuth,elevation,distance (360-degree data)
// kStereo: frame,class,source,azimuth,distance[,onscreen] (folded, no elevation)
enum class LabelSchema { kSource, kStereo };

struct EventRecord {
  int frame = 0;
  int class_id = 0;
  int source_id = 0;
  double azimuth_deg = 0.0;
  std::optional<double> elevation_deg;
  double distance = 1.0;
  std::optional<bool> onscreen;

  auto SortKey() const { return std::tie(frame, class_id, source_id); }
  bool operator==(const EventRecord&) const = default;
};

struct FovConfig {
  double horizontal_fov_deg = 100.0;
  // Optional vertical gate; off by default (azimuth-only onscreen test).
  bool use_vertical_fov = false;
  double vertical_fov_deg = 67.67;  // implied by 100 deg at 16:9

  void Validate() const {
    if (!(horizontal_fov_deg > 0.0 && horizontal_fov_deg < 360.0)) {
      throw Error(ErrorKind::kConfiguration,
                  "horizontal FOV must lie in (0, 360) degrees");
    }
    if (use_vertical_fov && !(vertical_fov_deg > 0.0 && vertical_fov_deg <= 180.0)) {
      throw Error(ErrorKind::kConfiguration,
                  "vertical FOV must lie in (0, 180] degrees");
    }
  }
};

// Throws a validation error if the record breaks its schema's invariants.
inline void ValidateRecord(const EventRecord& r, LabelSchema schema) {
  const auto fail = [&](const std::string& what) {
    return Error(ErrorKind::kValidation,
                 "frame " + std::to_string(r.frame) + ": " + what);
  };
  if (r.frame < 0) throw fail("negative frame index");
  if (!IsValidClassId(r.class_id)) {
    throw fail("class " + std::to_string(r.class_id) + " out of range [0, 12]");
  }
  if (r.source_id < 0) throw fail("negative source id");
  if (!(r.distance > 0.0) || !std::isfinite(r.distance)) {
    throw fail("distance must be positive");
  }
  if (schema == LabelSchema::kSource) {
    if (!(r.azimuth_deg >= -180.0 && r.azimuth_deg < 180.0)) {
      // Exactly +180 is common in exported metadata; callers wrap it first.
      throw fail("azimuth " + FormatNumber(r.azimuth_deg) +
                 " outside [-180, 180)");
    }
    if (!r.elevation_deg || !(*r.elevation_deg >= -90.0 && *r.elevation_deg <= 90.0)) {
      throw fail("elevation missing or outside [-90, 90]");
    }
  } else {
    if (!(r.azimuth_deg >= -90.0 && r.azimuth_deg <= 90.0)) {
      throw fail("azimuth " + FormatNumber(r.azimuth_deg) +
                 " outside folded range [-90, 90]");
    }
    if (r.elevation_deg) throw fail("stereo records carry no elevation");
  }
}

inline void SortRecords(std::vector<EventRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const EventRecord& a, const EventRecord& b) {
                     return a.SortKey() < b.SortKey();
                   });
}

// Parses metadata CSV text (no header row). Stereo rows may omit the
// onscreen column, as audio-only predictions do. Source azimuths of exactly
// +180 are wrapped to -180.
inline std::vector<EventRecord> ParseMetadata(std::string_view text,
                                              LabelSchema schema) {
  std::vector<EventRecord> records;
  ForEachDataLine(text, [&](int line, std::string_view row) {
    const auto fields = SplitFields(row);
    const bool source = schema == LabelSchema::kSource;
    if (source ? fields.size() != 6 : (fields.size() != 5 && fields.size() != 6)) {
      throw ParseError(line, "expected " + std::string(source ? "6" : "5 or 6") +
                                 " columns, found " + std::to_string(fields.size()));
    }
    const auto integer = [&](size_t i, const char* what) {
      const auto v = ParseInteger(fields[i]);
      if (!v) throw ParseError(line, std::string("bad ") + what + " '" +
                                         std::string(fields[i]) + "'");
      return static_cast<int>(*v);
    };
    const auto real = [&](size_t i, const char* what) {
      const auto v = ParseDouble(fields[i]);
      if (!v) throw ParseError(line, std::string("bad ") + what + " '" +
                                         std::string(fields[i]) + "'");
      return *v;
    };
    EventRecord r;
    r.frame = integer(0, "frame");
    r.class_id = integer(1, "class");
    r.source_id = integer(2, "source");
    r.azimuth_deg = real(3, "azimuth");
    if (source) {
      if (r.azimuth_deg == 180.0) r.azimuth_deg = -180.0;
      r.elevation_deg = real(4, "elevation");
      r.distance = real(5, "distance");
    } else {
      r.distance = real(4, "distance");
      if (fields.size() == 6) {
        const int flag = integer(5, "onscreen flag");
        if (flag != 0 && flag != 1) throw ParseError(line, "onscreen flag must be 0 or 1");
        r.onscreen = flag == 1;
      }
    }
    try {
      ValidateRecord(r, schema);
    } catch (const Error& e) {
      throw Error(ErrorKind::kValidation,
                  "line " + std::to_string(line) + ": " + e.what());
    }
    records.push_back(r);
  });
  SortRecords(records);
  return records;
}

inline std::string SerializeMetadata(const std::vector<EventRecord>& records,
                                     LabelSchema schema) {
  std::string out;
  for (const auto& r : records) {
    out += std::to_string(r.frame) + ',' + std::to_string(r.class_id) + ',' +
           std::to_string(r.source_id) + ',' + FormatNumber(r.azimuth_deg) + ',';
    if (schema == LabelSchema::kSource) {
      out += FormatNumber(r.elevation_deg.value_or(0.0)) + ',' +
             FormatNumber(r.distance);
    } else {
      out += FormatNumber(r.distance);
      if (r.onscreen) out += *r.onscreen ? ",1" : ",0";
    }
    out += '\n';
  }
  return out;
}

// Azimuth relative to a viewing direction, wrapped to [-180, 180).
inline double RotateAzimuth(double azimuth_deg, double yaw_deg) {
  return WrapAzimuth(azimuth_deg - yaw_deg);
}

// Reflects rear azimuths across the left-right axis; sin(az) is preserved.
inline double FoldFrontBack(double azimuth_deg) {
  if (azimuth_deg > 90.0) return 180.0 - azimuth_deg;
  if (azimuth_deg < -90.0) return -180.0 - azimuth_deg;
  return azimuth_deg;
}

// Interval test on the rotated azimuth before folding; boundary inclusive.
inline bool OnscreenFlag(double rotated_azimuth_deg, const FovConfig& fov,
                         std::optional<double> elevation_deg = std::nullopt) {
  const double half = fov.horizontal_fov_deg / 2.0;
  bool inside = rotated_azimuth_deg >= -half && rotated_azimuth_deg <= half;
  if (inside && fov.use_vertical_fov && elevation_deg) {
    inside = std::abs(*elevation_deg) <= fov.vertical_fov_deg / 2.0;
  }
  return inside;
}

// Source-schema records to stereo-schema records for a view at `yaw_deg`.
inline std::vector<EventRecord> TransformClipLabels(
    const std::vector<EventRecord>& records, double yaw_deg,
    const FovConfig& fov = {}) {
  fov.Validate();
  std::vector<EventRecord> out;
  out.reserve(records.size());
  for (const auto& source : records) {
    ValidateRecord(source, LabelSchema::kSource);
    EventRecord r = source;
    const double rotated = RotateAzimuth(source.azimuth_deg, yaw_deg);
    r.onscreen = OnscreenFlag(rotated, fov, source.elevation_deg);
    r.azimuth_deg = FoldFrontBack(rotated);
    r.elevation_deg.reset();
    ValidateRecord(r, LabelSchema::kStereo);
    out.push_back(r);
  }
  SortRecords(out);
  return out;
}

// Keeps frames in [first_frame, first_frame + num_frames) and rebases them
// to start at 0.
inline std::vector<EventRecord> SliceFrames(const std::vector<EventRecord>& records,
                                            int first_frame, int num_frames) {
  std::vector<EventRecord> out;
  for (const auto& r : records) {
    if (r.frame >= first_frame && r.frame < first_frame + num_frames) {
      EventRecord copy = r;
      copy.frame -= first_frame;
      out.push_back(copy);
    }
  }
  return out;
}

}  // namespace sseld

#endif  // SSELD_LABELS_H_
