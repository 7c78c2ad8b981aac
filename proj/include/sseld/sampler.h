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

// Clip sampling over a recording index: recordings are drawn with
// probability proportional to duration, the start uniformly on the label
// grid, and the viewing yaw uniformly over the full circle.

#ifndef SSELD_SAMPLER_H_
#define SSELD_SAMPLER_H_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "sseld/error.h"
#include "sseld/labels.h"
#include "sseld/text.h"

namespace sseld {

// Portable random stream. std::mt19937_64's output sequence is fixed by the
// standard; the std distributions are not, so the conversions live here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer on [0, n), unbiased via rejection.
  uint64_t Index(uint64_t n) {
    if (n == 0) throw Error(ErrorKind::kInvalidInput, "Index(0)");
    const uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return draw % n;
  }

  // Standard normal via Box-Muller (one value per call).
  double Gaussian() {
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Independent stream for sub-task `index` of a seeded job.
  static Rng Derive(uint64_t seed, uint64_t index) {
    // splitmix64 finalizer over the pair.
    uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::mt19937_64 engine_;
};

struct RecordingEntry {
  std::string recording_id;
  double duration_s = 0.0;
  std::string audio_path;
  std::string frames_dir;
  std::string metadata_path;

  bool operator==(const RecordingEntry&) const = default;
};

struct RecordingIndex {
  std::vector<RecordingEntry> entries;

  const RecordingEntry* Find(std::string_view id) const {
    for (const auto& e : entries) {
      if (e.recording_id == id) return &e;
    }
    return nullptr;
  }
};

struct ClipSpec {
  std::string clip_id;
  std::string recording_id;
  double start_s = 0.0;
  double yaw_deg = 0.0;  // [0, 360)
  double clip_len_s = 5.0;
  uint64_t seed = 0;

  bool operator==(const ClipSpec&) const = default;
};

struct SamplerOptions {
  double clip_len_s = 5.0;
  // Start times are multiples of this step so clip labels align with the
  // source label frames.
  double start_step_s = kLabelFrameS;
  // Yaw quantized to whole degrees unless continuous.
  bool continuous_yaw = false;
};

inline void ValidateIndex(const RecordingIndex& index, double clip_len_s) {
  if (index.entries.empty()) {
    throw Error(ErrorKind::kConfiguration, "recording index is empty");
  }
  std::set<std::string> ids;
  std::string too_short;
  for (const auto& e : index.entries) {
    if (!ids.insert(e.recording_id).second) {
      throw Error(ErrorKind::kConfiguration,
                  "duplicate recording id '" + e.recording_id + "'");
    }
    if (!(e.duration_s >= clip_len_s)) {
      too_short += (too_short.empty() ? "" : ", ") + e.recording_id;
    }
  }
  if (!too_short.empty()) {
    throw Error(ErrorKind::kConfiguration,
                "recordings shorter than the clip length (" +
                    FormatNumber(clip_len_s) + " s): " + too_short);
  }
}

// Number of admissible start positions on the start grid.
inline uint64_t NumStartPositions(double duration_s, double clip_len_s,
                                  double step_s) {
  // The epsilon absorbs decimal durations such as 60.0 - 5.0 = 54.999...
  const double slots = std::floor((duration_s - clip_len_s) / step_s + 1e-9);
  return static_cast<uint64_t>(std::max(0.0, slots)) + 1;
}

inline std::vector<ClipSpec> SampleClips(const RecordingIndex& index, size_t count,
                                         uint64_t seed,
                                         const SamplerOptions& options = {}) {
  if (!(options.clip_len_s > 0.0) || !(options.start_step_s > 0.0)) {
    throw Error(ErrorKind::kConfiguration,
                "clip length and start step must be positive");
  }
  ValidateIndex(index, options.clip_len_s);

  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& e : index.entries) {
    total += e.duration_s;
    cumulative.push_back(total);
  }

  Rng rng(seed);
  std::vector<ClipSpec> clips;
  clips.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    const double target = rng.Uniform() * total;
    const size_t pick = std::min<size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), target) -
            cumulative.begin(),
        cumulative.size() - 1);
    const RecordingEntry& entry = index.entries[pick];

    const uint64_t slots =
        NumStartPositions(entry.duration_s, options.clip_len_s, options.start_step_s);
    const uint64_t slot = rng.Index(slots);
    // Round to a decimal grid value so manifests read back bit-identically.
    const double start_s =
        std::round(static_cast<double>(slot) * options.start_step_s * 1e6) / 1e6;

    double yaw = options.continuous_yaw ? rng.Uniform(0.0, 360.0)
                                        : static_cast<double>(rng.Index(360));
    if (yaw >= 360.0) yaw = 0.0;

    char id[32];
    std::snprintf(id, sizeof(id), "clip%06zu", i);
    clips.push_back(ClipSpec{id, entry.recording_id, start_s, yaw,
                             options.clip_len_s, seed});
  }
  return clips;
}

// --- index / manifest files ----------------------------------------------

// recording_id,duration_s,audio_path,frames_dir,metadata_path
inline RecordingIndex ParseIndex(std::string_view text) {
  RecordingIndex index;
  ForEachDataLine(text, [&](int line, std::string_view row) {
    const auto fields = SplitFields(row);
    if (fields.size() != 5) {
      throw ParseError(line, "expected 5 columns, found " +
                                 std::to_string(fields.size()));
    }
    const auto duration = ParseDouble(fields[1]);
    if (!duration || *duration <= 0.0) {
      throw ParseError(line, "bad duration '" + std::string(fields[1]) + "'");
    }
    if (fields[0].empty()) throw ParseError(line, "empty recording id");
    index.entries.push_back(RecordingEntry{std::string(fields[0]), *duration,
                                           std::string(fields[2]),
                                           std::string(fields[3]),
                                           std::string(fields[4])});
  });
  return index;
}

inline std::string SerializeIndex(const RecordingIndex& index) {
  std::string out;
  for (const auto& e : index.entries) {
    out += e.recording_id + ',' + FormatNumber(e.duration_s) + ',' +
           e.audio_path + ',' + e.frames_dir + ',' + e.metadata_path + '\n';
  }
  return out;
}

// clip_id,recording_id,start_s,yaw_deg,seed
inline std::vector<ClipSpec> ParseManifest(std::string_view text,
                                           double clip_len_s = 5.0) {
  std::vector<ClipSpec> clips;
  std::set<std::string> ids;
  ForEachDataLine(text, [&](int line, std::string_view row) {
    const auto fields = SplitFields(row);
    if (fields.size() != 5) {
      throw ParseError(line, "expected 5 columns, found " +
                                 std::to_string(fields.size()));
    }
    const auto start = ParseDouble(fields[2]);
    const auto yaw = ParseDouble(fields[3]);
    uint64_t seed = 0;
    const auto seed_text = Trim(fields[4]);
    const auto [end, ec] =
        std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
    const bool seed_ok = ec == std::errc() && end == seed_text.data() + seed_text.size() &&
                         !seed_text.empty();
    if (!start || *start < 0.0) throw ParseError(line, "bad start time");
    if (!yaw || *yaw < 0.0 || *yaw >= 360.0) {
      throw ParseError(line, "yaw must lie in [0, 360)");
    }
    if (!seed_ok) throw ParseError(line, "bad seed");
    if (!ids.insert(std::string(fields[0])).second) {
      throw ParseError(line, "duplicate clip id '" + std::string(fields[0]) + "'");
    }
    clips.push_back(ClipSpec{std::string(fields[0]), std::string(fields[1]),
                             *start, *yaw, clip_len_s,
                             seed});
  });
  return clips;
}

inline std::string SerializeManifest(const std::vector<ClipSpec>& clips) {
  std::string out;
  for (const auto& c : clips) {
    out += c.clip_id + ',' + c.recording_id + ',' + FormatNumber(c.start_s) + ',' +
           FormatNumber(c.yaw_deg) + ',' + std::to_string(c.seed) + '\n';
  }
  return out;
}

}  // namespace sseld

#endif  // SSELD_SAMPLER_H_
