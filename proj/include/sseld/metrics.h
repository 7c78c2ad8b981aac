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

// Frame-level SELD scoring for folded-azimuth stereo labels:
//
//  * per (frame, class), predictions and references are paired by a
//    minimum total |azimuth difference| assignment;
//  * a pair is a true positive when |d_az| <= 20 deg and
//    |d_pred - d_ref| / d_ref <= 1 (and, for the audiovisual score, the
//    onscreen flags agree); a pair failing a gate is one FP plus one FN;
//    unpaired predictions are FP, unpaired references FN;
//  * F = 2TP / (2TP + FP + FN) per class over all frames, macro-averaged
//    over the classes that occur in either set;
//  * DOAE_CD and RDE_CD average over every class-matched pair regardless
//    of the gates; onscreen accuracy is the fraction of class-matched pairs
//    whose flags agree.
//
// Also: multi-ACCDOA decoding, and the class-mean-distance bias baseline.

#ifndef SSELD_METRICS_H_
#define SSELD_METRICS_H_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sseld/angles.h"
#include "sseld/error.h"
#include "sseld/hungarian.h"
#include "sseld/labels.h"
#include "sseld/text.h"

namespace sseld {

inline constexpr int kMaxPolyphony = 3;

struct Detection {
  double azimuth_deg = 0.0;  // folded, [-90, 90]
  double distance = 1.0;
  std::optional<bool> onscreen;
  int track_id = 0;

  bool operator==(const Detection&) const = default;
};

struct FrameClass {
  int frame = 0;
  int class_id = 0;

  auto operator<=>(const FrameClass&) const = default;
};

class LabelSet {
 public:
  explicit LabelSet(int max_polyphony = kMaxPolyphony, int class_count = kNumClasses)
      : max_polyphony_(max_polyphony), class_count_(class_count) {}

  void Add(int frame, int class_id, const Detection& d) {
    if (frame < 0) throw Error(ErrorKind::kValidation, "negative frame index");
    if (class_id < 0 || class_id >= class_count_) {
      throw Error(ErrorKind::kValidation,
                  "class " + std::to_string(class_id) + " out of range");
    }
    if (!(d.azimuth_deg >= -90.0 && d.azimuth_deg <= 90.0)) {
      throw Error(ErrorKind::kValidation,
                  "frame " + std::to_string(frame) + ": azimuth " +
                      FormatNumber(d.azimuth_deg) + " outside [-90, 90]");
    }
    if (!(d.distance >= 0.0) || !std::isfinite(d.distance)) {
      throw Error(ErrorKind::kValidation,
                  "frame " + std::to_string(frame) + ": bad distance");
    }
    auto& list = entries_[{frame, class_id}];
    if (static_cast<int>(list.size()) >= max_polyphony_) {
      throw Error(ErrorKind::kValidation,
                  "frame " + std::to_string(frame) + ", class " +
                      std::to_string(class_id) + ": more than " +
                      std::to_string(max_polyphony_) + " simultaneous events");
    }
    list.push_back(d);
  }

  const std::vector<Detection>* Find(int frame, int class_id) const {
    const auto it = entries_.find({frame, class_id});
    return it == entries_.end() ? nullptr : &it->second;
  }

  const std::map<FrameClass, std::vector<Detection>>& entries() const {
    return entries_;
  }
  std::map<FrameClass, std::vector<Detection>>& mutable_entries() { return entries_; }

  bool empty() const { return entries_.empty(); }
  int max_polyphony() const { return max_polyphony_; }
  int class_count() const { return class_count_; }

  size_t num_detections() const {
    size_t n = 0;
    for (const auto& [key, list] : entries_) n += list.size();
    return n;
  }

  // One past the highest frame index present (0 when empty).
  int frame_span() const {
    return entries_.empty() ? 0 : entries_.rbegin()->first.frame + 1;
  }

  // Adds every detection of `other` with its frames shifted by `offset`.
  void Append(const LabelSet& other, int offset) {
    for (const auto& [key, list] : other.entries_) {
      for (const auto& d : list) Add(key.frame + offset, key.class_id, d);
    }
  }

  static LabelSet FromRecords(const std::vector<EventRecord>& records,
                              int frame_offset = 0,
                              int max_polyphony = kMaxPolyphony) {
    LabelSet set(max_polyphony);
    for (const auto& r : records) {
      set.Add(r.frame + frame_offset, r.class_id,
              Detection{r.azimuth_deg, r.distance, r.onscreen, r.source_id});
    }
    return set;
  }

  std::vector<EventRecord> ToRecords() const {
    std::vector<EventRecord> records;
    for (const auto& [key, list] : entries_) {
      for (const auto& d : list) {
        EventRecord r;
        r.frame = key.frame;
        r.class_id = key.class_id;
        r.source_id = d.track_id;
        r.azimuth_deg = d.azimuth_deg;
        r.distance = d.distance;
        r.onscreen = d.onscreen;
        records.push_back(r);
      }
    }
    return records;
  }

  bool operator==(const LabelSet& other) const { return entries_ == other.entries_; }

 private:
  std::map<FrameClass, std::vector<Detection>> entries_;
  int max_polyphony_;
  int class_count_;
};

struct MetricsConfig {
  double doa_threshold_deg = 20.0;
  double rde_threshold = 1.0;
  bool require_onscreen_match = false;
  int class_count = kNumClasses;

  void Validate() const {
    if (!(doa_threshold_deg > 0.0) || !(rde_threshold > 0.0)) {
      throw Error(ErrorKind::kConfiguration, "thresholds must be positive");
    }
    if (class_count <= 0) {
      throw Error(ErrorKind::kConfiguration, "class count must be positive");
    }
  }
};

struct ClassCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  bool active() const { return tp + fp + fn > 0; }
  double F() const {
    return active() ? 2.0 * tp / static_cast<double>(2 * tp + fp + fn) : 0.0;
  }
  bool operator==(const ClassCounts&) const = default;
};

// Fields are empty when undefined (no active class, no matched pair, ...).
struct MetricsReport {
  std::optional<double> f_macro;
  std::optional<double> f_onoff_macro;  // only with require_onscreen_match
  std::optional<double> doae_cd_deg;
  std::optional<double> rde_cd;
  std::optional<double> onscreen_accuracy;
  long matched_pairs = 0;
  long onscreen_pairs = 0;  // matched pairs carrying flags on both sides
  std::vector<ClassCounts> per_class;
  std::vector<ClassCounts> per_class_onoff;

  // Systems are ranked on the localization-dependent F-score alone; the
  // audiovisual variant takes precedence when it was computed.
  std::optional<double> ranking_f() const {
    return f_onoff_macro ? f_onoff_macro : f_macro;
  }
};

// Assignment minimizing total |az_pred - az_ref|. Pairs are (pred, ref),
// sorted by prediction index.
//
// On a line, crossing and non-crossing pairings of the same detections often
// have equal total cost. The matched detections are therefore re-paired in
// azimuth order, which keeps the cost minimal and makes the result unique
// (it is the least-squares pairing among the tied ones).
inline std::vector<std::pair<size_t, size_t>> MatchFrame(
    const std::vector<Detection>& preds, const std::vector<Detection>& refs) {
  if (preds.empty() || refs.empty()) return {};
  std::vector<std::vector<double>> cost(preds.size(), std::vector<double>(refs.size()));
  for (size_t i = 0; i < preds.size(); ++i) {
    for (size_t j = 0; j < refs.size(); ++j) {
      cost[i][j] = std::abs(preds[i].azimuth_deg - refs[j].azimuth_deg);
    }
  }
  auto pairs = MinCostAssignment(cost);
  std::vector<size_t> p, r;
  for (const auto& [i, j] : pairs) {
    p.push_back(i);
    r.push_back(j);
  }
  const auto by_azimuth = [](const std::vector<Detection>& list) {
    return [&list](size_t a, size_t b) {
      return std::pair(list[a].azimuth_deg, a) < std::pair(list[b].azimuth_deg, b);
    };
  };
  std::sort(p.begin(), p.end(), by_azimuth(preds));
  std::sort(r.begin(), r.end(), by_azimuth(refs));
  for (size_t k = 0; k < pairs.size(); ++k) pairs[k] = {p[k], r[k]};
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

namespace metrics_internal {

inline std::optional<double> MacroF(const std::vector<ClassCounts>& counts) {
  double sum = 0.0;
  int active = 0;
  for (const auto& c : counts) {
    if (!c.active()) continue;
    sum += c.F();
    ++active;
  }
  if (active == 0) return std::nullopt;
  return sum / active;
}

inline void RequireFlags(const LabelSet& set, const char* which) {
  for (const auto& [key, list] : set.entries()) {
    for (const auto& d : list) {
      if (!d.onscreen) {
        throw Error(ErrorKind::kConfiguration,
                    std::string(which) + " frame " + std::to_string(key.frame) +
                        " lacks an onscreen flag, required for the onscreen-gated score");
      }
    }
  }
}

}  // namespace metrics_internal

inline MetricsReport Score(const LabelSet& preds, const LabelSet& refs,
                           const MetricsConfig& cfg = {}) {
  cfg.Validate();
  if (cfg.require_onscreen_match) {
    metrics_internal::RequireFlags(preds, "prediction");
    metrics_internal::RequireFlags(refs, "reference");
  }
  MetricsReport report;
  report.per_class.assign(cfg.class_count, {});
  report.per_class_onoff.assign(cfg.class_count, {});

  // Union of (frame, class) keys, in ascending order.
  std::vector<FrameClass> keys;
  for (const auto& [key, list] : preds.entries()) keys.push_back(key);
  for (const auto& [key, list] : refs.entries()) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  const std::vector<Detection> kNone;
  double doa_sum = 0.0;
  double rde_sum = 0.0;
  long onscreen_correct = 0;
  for (const FrameClass& key : keys) {
    if (key.class_id >= cfg.class_count) {
      throw Error(ErrorKind::kValidation, "class id beyond configured class count");
    }
    const auto* p = preds.Find(key.frame, key.class_id);
    const auto* r = refs.Find(key.frame, key.class_id);
    const auto& pl = p ? *p : kNone;
    const auto& rl = r ? *r : kNone;
    ClassCounts& spatial = report.per_class[key.class_id];
    ClassCounts& onoff = report.per_class_onoff[key.class_id];

    const auto pairs = MatchFrame(pl, rl);
    for (const auto& [pi, ri] : pairs) {
      const Detection& pd = pl[pi];
      const Detection& rd = rl[ri];
      if (!(rd.distance > 0.0)) {
        throw Error(ErrorKind::kValidation,
                    "reference distance must be positive (frame " +
                        std::to_string(key.frame) + ")");
      }
      const double doa_err = std::abs(pd.azimuth_deg - rd.azimuth_deg);
      const double rel_dist_err = std::abs(pd.distance - rd.distance) / rd.distance;
      doa_sum += doa_err;
      rde_sum += rel_dist_err;
      ++report.matched_pairs;

      const bool have_flags = pd.onscreen.has_value() && rd.onscreen.has_value();
      const bool flags_agree = have_flags && *pd.onscreen == *rd.onscreen;
      if (have_flags) {
        ++report.onscreen_pairs;
        onscreen_correct += flags_agree ? 1 : 0;
      }

      const bool spatial_ok =
          doa_err <= cfg.doa_threshold_deg && rel_dist_err <= cfg.rde_threshold;
      if (spatial_ok) {
        ++spatial.tp;
      } else {
        ++spatial.fp;
        ++spatial.fn;
      }
      if (spatial_ok && flags_agree) {
        ++onoff.tp;
      } else {
        ++onoff.fp;
        ++onoff.fn;
      }
    }
    const long unmatched_preds = static_cast<long>(pl.size() - pairs.size());
    const long unmatched_refs = static_cast<long>(rl.size() - pairs.size());
    spatial.fp += unmatched_preds;
    spatial.fn += unmatched_refs;
    onoff.fp += unmatched_preds;
    onoff.fn += unmatched_refs;
  }

  report.f_macro = metrics_internal::MacroF(report.per_class);
  if (cfg.require_onscreen_match) {
    report.f_onoff_macro = metrics_internal::MacroF(report.per_class_onoff);
  } else {
    report.per_class_onoff.clear();
  }
  if (report.matched_pairs > 0) {
    report.doae_cd_deg = doa_sum / static_cast<double>(report.matched_pairs);
    report.rde_cd = rde_sum / static_cast<double>(report.matched_pairs);
  }
  if (report.onscreen_pairs > 0) {
    report.onscreen_accuracy =
        static_cast<double>(onscreen_correct) / static_cast<double>(report.onscreen_pairs);
  }
  return report;
}

// --- multi-ACCDOA ----------------------------------------------------------

struct AccdoaTrack {
  double x = 0.0;
  double y = 0.0;
  double distance = 0.0;
  double onscreen_score = 0.0;
};

// One output frame: num_tracks x num_classes slots.
struct AccdoaFrame {
  int frame = 0;
  int num_tracks = kMaxPolyphony;
  int num_classes = kNumClasses;
  std::vector<AccdoaTrack> slots;

  AccdoaFrame() : slots(static_cast<size_t>(num_tracks) * num_classes) {}
  AccdoaFrame(int frame_index, int tracks, int classes)
      : frame(frame_index), num_tracks(tracks), num_classes(classes),
        slots(static_cast<size_t>(tracks) * classes) {}

  AccdoaTrack& at(int track, int class_id) {
    return slots.at(static_cast<size_t>(track) * num_classes + class_id);
  }
  const AccdoaTrack& at(int track, int class_id) const {
    return slots.at(static_cast<size_t>(track) * num_classes + class_id);
  }
};

struct AccdoaDecodeOptions {
  double activity_threshold = 0.5;
  double onscreen_threshold = 0.5;
  // Same-class tracks closer than this are treated as one detection.
  double merge_threshold_deg = 15.0;
  // Audio-only models have no onscreen output.
  bool has_onscreen = true;
};

inline LabelSet DecodeMultiAccdoa(const std::vector<AccdoaFrame>& frames,
                                  const AccdoaDecodeOptions& options = {}) {
  if (!(options.activity_threshold > 0.0 && options.activity_threshold < 1.0)) {
    throw Error(ErrorKind::kConfiguration, "activity threshold must lie in (0, 1)");
  }
  LabelSet out;
  for (const AccdoaFrame& frame : frames) {
    for (const AccdoaTrack& t : frame.slots) {
      if (!std::isfinite(t.x) || !std::isfinite(t.y) || !std::isfinite(t.distance) ||
          !std::isfinite(t.onscreen_score)) {
        throw Error(ErrorKind::kDecode,
                    "non-finite output at frame " + std::to_string(frame.frame));
      }
    }
    for (int c = 0; c < frame.num_classes; ++c) {
      struct Candidate {
        double magnitude;
        int track;
      };
      std::vector<Candidate> active;
      for (int k = 0; k < frame.num_tracks; ++k) {
        const AccdoaTrack& t = frame.at(k, c);
        const double magnitude = std::hypot(t.x, t.y);
        if (magnitude > options.activity_threshold) active.push_back({magnitude, k});
      }
      std::stable_sort(active.begin(), active.end(),
                       [](const Candidate& a, const Candidate& b) {
                         return a.magnitude > b.magnitude;
                       });
      std::vector<Detection> kept;
      for (const Candidate& cand : active) {
        const AccdoaTrack& t = frame.at(cand.track, c);
        Detection d;
        d.azimuth_deg = FoldFrontBack(std::atan2(t.y, t.x) * kRadToDeg);
        d.distance = std::max(0.0, t.distance);
        if (options.has_onscreen) d.onscreen = t.onscreen_score > options.onscreen_threshold;
        d.track_id = cand.track;
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const Detection& k) {
          return std::abs(k.azimuth_deg - d.azimuth_deg) < options.merge_threshold_deg;
        });
        if (!duplicate) kept.push_back(d);
      }
      std::sort(kept.begin(), kept.end(), [](const Detection& a, const Detection& b) {
        return a.track_id < b.track_id;
      });
      for (const Detection& d : kept) out.Add(frame.frame, c, d);
    }
  }
  return out;
}

// Inverse of the decoder for unit-magnitude targets: detection i of a
// (frame, class) goes to track i.
inline std::vector<AccdoaFrame> EncodeMultiAccdoa(const LabelSet& labels, int num_frames) {
  std::vector<AccdoaFrame> frames;
  for (int f = 0; f < num_frames; ++f) {
    frames.emplace_back(f, labels.max_polyphony(), labels.class_count());
  }
  for (const auto& [key, list] : labels.entries()) {
    if (key.frame >= num_frames) {
      throw Error(ErrorKind::kInvalidInput, "label frame beyond encoded range");
    }
    for (size_t i = 0; i < list.size(); ++i) {
      AccdoaTrack& t = frames[key.frame].at(static_cast<int>(i), key.class_id);
      t.x = CosDeg(list[i].azimuth_deg);
      t.y = SinDeg(list[i].azimuth_deg);
      t.distance = list[i].distance;
      t.onscreen_score = list[i].onscreen.value_or(false) ? 1.0 : 0.0;
    }
  }
  return frames;
}

// --- class-mean-distance bias baseline --------------------------------------

// Mean reference distance per class over every labelled detection; classes
// that never occur stay empty.
inline std::vector<std::optional<double>> ClassMeanDistance(
    const LabelSet& train_refs, int class_count = kNumClasses) {
  std::vector<double> sum(class_count, 0.0);
  std::vector<long> count(class_count, 0);
  for (const auto& [key, list] : train_refs.entries()) {
    if (key.class_id >= class_count) continue;
    for (const auto& d : list) {
      sum[key.class_id] += d.distance;
      ++count[key.class_id];
    }
  }
  std::vector<std::optional<double>> means(class_count);
  for (int c = 0; c < class_count; ++c) {
    if (count[c] > 0) means[c] = sum[c] / static_cast<double>(count[c]);
  }
  return means;
}

// Replaces every predicted distance with its class mean.
inline LabelSet ApplyDistanceBias(const LabelSet& preds,
                                  const std::vector<std::optional<double>>& means) {
  std::vector<int> missing;
  for (const auto& [key, list] : preds.entries()) {
    if (key.class_id >= static_cast<int>(means.size()) || !means[key.class_id]) {
      if (std::find(missing.begin(), missing.end(), key.class_id) == missing.end()) {
        missing.push_back(key.class_id);
      }
    }
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    std::string ids;
    for (int c : missing) ids += (ids.empty() ? "" : ", ") + std::to_string(c);
    throw Error(ErrorKind::kInvalidInput, "no class-mean distance for classes: " + ids);
  }
  LabelSet out = preds;
  for (auto& [key, list] : out.mutable_entries()) {
    for (auto& d : list) d.distance = *means[key.class_id];
  }
  return out;
}

// --- report files -------------------------------------------------------------

namespace metrics_internal {

inline std::string Optional(const std::optional<double>& v) {
  return v ? FormatNumber(*v) : std::string("n/a");
}

inline std::string Percent(const std::optional<double>& v, int digits = 1) {
  return v ? FormatFixed(*v * 100.0, digits) : std::string("N/A");
}

}  // namespace metrics_internal

// Machine-readable `key = value` form.
inline std::string SerializeReport(const MetricsReport& r) {
  using metrics_internal::Optional;
  std::string out;
  out += "f_macro = " + Optional(r.f_macro) + "\n";
  out += "f_onoff_macro = " + Optional(r.f_onoff_macro) + "\n";
  out += "doae_cd_deg = " + Optional(r.doae_cd_deg) + "\n";
  out += "rde_cd = " + Optional(r.rde_cd) + "\n";
  out += "onscreen_accuracy = " + Optional(r.onscreen_accuracy) + "\n";
  out += "matched_pairs = " + std::to_string(r.matched_pairs) + "\n";
  out += "onscreen_pairs = " + std::to_string(r.onscreen_pairs) + "\n";
  out += "macro_average = classes_active_in_either_set\n";
  out += "onscreen_accuracy_denominator = class_matched_pairs\n";
  const auto rows = [&](const std::vector<ClassCounts>& counts, const std::string& prefix) {
    for (size_t c = 0; c < counts.size(); ++c) {
      const std::string key = prefix + std::to_string(c);
      out += key + ".tp = " + std::to_string(counts[c].tp) + "\n";
      out += key + ".fp = " + std::to_string(counts[c].fp) + "\n";
      out += key + ".fn = " + std::to_string(counts[c].fn) + "\n";
    }
  };
  rows(r.per_class, "class.");
  rows(r.per_class_onoff, "class_onoff.");
  return out;
}

inline MetricsReport ParseReport(std::string_view text) {
  MetricsReport r;
  std::map<std::string, std::string> kv;
  ForEachDataLine(text, [&](int line, std::string_view row) {
    const size_t eq = row.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected key = value");
    kv[std::string(Trim(row.substr(0, eq)))] = std::string(Trim(row.substr(eq + 1)));
  });
  const auto optional = [&](const std::string& key) -> std::optional<double> {
    const auto it = kv.find(key);
    if (it == kv.end() || it->second == "n/a") return std::nullopt;
    const auto v = ParseDouble(it->second);
    if (!v) throw Error(ErrorKind::kParse, "bad value for '" + key + "'");
    return v;
  };
  const auto integer = [&](const std::string& key) -> long {
    const auto it = kv.find(key);
    if (it == kv.end()) return 0;
    const auto v = ParseInteger(it->second);
    if (!v) throw Error(ErrorKind::kParse, "bad value for '" + key + "'");
    return static_cast<long>(*v);
  };
  if (!kv.count("f_macro")) throw Error(ErrorKind::kParse, "report lacks f_macro");
  r.f_macro = optional("f_macro");
  r.f_onoff_macro = optional("f_onoff_macro");
  r.doae_cd_deg = optional("doae_cd_deg");
  r.rde_cd = optional("rde_cd");
  r.onscreen_accuracy = optional("onscreen_accuracy");
  r.matched_pairs = integer("matched_pairs");
  r.onscreen_pairs = integer("onscreen_pairs");
  const auto read_rows = [&](const std::string& prefix, std::vector<ClassCounts>& rows) {
    for (int c = 0;; ++c) {
      const std::string key = prefix + std::to_string(c);
      if (!kv.count(key + ".tp")) break;
      rows.push_back({integer(key + ".tp"), integer(key + ".fp"), integer(key + ".fn")});
    }
  };
  read_rows("class.", r.per_class);
  read_rows("class_onoff.", r.per_class_onoff);
  return r;
}

// Human-readable summary in percent / degrees.
inline std::string FormatReportTable(const MetricsReport& r) {
  using metrics_internal::Percent;
  std::string out;
  out += "Macro F20/1          : " + Percent(r.f_macro) + " %\n";
  out += "Macro F20/1/onoff    : " + Percent(r.f_onoff_macro) + " %\n";
  out += "DOAE_CD              : " +
         (r.doae_cd_deg ? FormatFixed(*r.doae_cd_deg, 1) : std::string("N/A")) + " deg\n";
  out += "RDE_CD               : " + Percent(r.rde_cd) + " %\n";
  out += "Onscreen accuracy    : " + Percent(r.onscreen_accuracy) + " %\n";
  out += "Matched pairs        : " + std::to_string(r.matched_pairs) + "\n\n";
  out += "class                              TP      FP      FN   F(%)\n";
  for (size_t c = 0; c < r.per_class.size(); ++c) {
    const ClassCounts& k = r.per_class[c];
    std::string name(c < kClassNames.size() ? kClassNames[c] : std::string_view("?"));
    name.resize(32, ' ');
    char row[128];
    std::snprintf(row, sizeof(row), "%2zu %s %7ld %7ld %7ld %6s\n", c, name.c_str(), k.tp,
                  k.fp, k.fn, k.active() ? FormatFixed(k.F() * 100.0, 1).c_str() : "-");
    out += row;
  }
  return out;
}

struct RankedSystem {
  std::string name;
  MetricsReport report;
};

// Orders systems by ranking F (descending); undefined scores sort last and
// ties keep their input order.
inline std::vector<RankedSystem> RankSystems(std::vector<RankedSystem> systems) {
  std::stable_sort(systems.begin(), systems.end(),
                   [](const RankedSystem& a, const RankedSystem& b) {
                     const auto fa = a.report.ranking_f();
                     const auto fb = b.report.ranking_f();
                     if (!fb) return fa.has_value();
                     if (!fa) return false;
                     return *fa > *fb;
                   });
  return systems;
}

}  // namespace sseld

#endif  // SSELD_METRICS_H_
