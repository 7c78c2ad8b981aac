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

// Synthetic FOA scene rendering. Dry mono samples are placed along
// keyframed trajectories with direct-path SN3D encoding and an inverse
// distance gain, optionally followed by an exponentially decaying diffuse
// tail and a diffuse ambience bed. Ground-truth labels come out at the
// 100 ms label rate in the source (360-degree) schema.

#ifndef SSELD_SPATIALIZER_H_
#define SSELD_SPATIALIZER_H_

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sseld/angles.h"
#include "sseld/core_audio.h"
#include "sseld/error.h"
#include "sseld/labels.h"
#include "sseld/sampler.h"
#include "sseld/text.h"
#include "sseld/wav_io.h"

namespace sseld {

inline constexpr double kMinSourceDistanceM = 0.1;

struct Keyframe {
  double time_s = 0.0;
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;
  double distance_m = 1.0;

  bool operator==(const Keyframe&) const = default;
};

struct SceneEvent {
  int class_id = 0;
  int source_id = 0;
  double onset_s = 0.0;
  std::string sample;  // sample-bank key
  std::vector<Keyframe> trajectory;

  bool operator==(const SceneEvent&) const = default;
};

struct ReverbParams {
  bool enabled = false;
  double decay_time_s = 0.5;            // T60 of the diffuse tail
  double direct_to_reverb_ratio = 4.0;  // energy ratio, linear

  bool operator==(const ReverbParams&) const = default;
};

struct SceneSpec {
  double duration_s = 5.0;
  int sample_rate = kDefaultSampleRate;
  std::vector<SceneEvent> events;
  double ambient_noise_level = 0.0;
  ReverbParams reverb;
  uint64_t seed = 0;
  // Keyframe distances are metres; labels are written as metres times this
  // factor (100 gives centimetres, the unit of the recorded corpus).
  double label_distance_scale = 100.0;

  bool operator==(const SceneSpec&) const = default;
};

struct RenderedScene {
  FoaClip foa;
  std::vector<EventRecord> labels;  // source schema
};

// Mono dry samples keyed by name, each tagged with its class.
class SampleBank {
 public:
  struct Entry {
    int class_id = 0;
    std::vector<float> samples;
  };

  void Add(std::string key, int class_id, std::vector<float> samples) {
    if (!IsValidClassId(class_id)) {
      throw Error(ErrorKind::kValidation, "sample '" + key + "' has bad class id");
    }
    if (samples.empty()) {
      throw Error(ErrorKind::kInvalidInput, "sample '" + key + "' is empty");
    }
    entries_[std::move(key)] = Entry{class_id, std::move(samples)};
  }

  const Entry* Find(std::string_view key) const {
    const auto it = entries_.find(std::string(key));
    return it == entries_.end() ? nullptr : &it->second;
  }

  const std::map<std::string, Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Manifest rows: class_id,wav_path (paths relative to the manifest).
  static SampleBank Load(const std::filesystem::path& manifest,
                         int sample_rate = kDefaultSampleRate) {
    SampleBank bank;
    const std::string text = ReadTextFile(manifest);
    ForEachDataLine(text, [&](int line, std::string_view row) {
      const auto fields = SplitFields(row);
      if (fields.size() != 2) {
        throw ParseError(line, "expected class_id,wav_path");
      }
      const auto class_id = ParseInteger(fields[0]);
      if (!class_id || !IsValidClassId(static_cast<int>(*class_id))) {
        throw ParseError(line, "bad class id '" + std::string(fields[0]) + "'");
      }
      const std::string key(fields[1]);
      WavAudio audio = ReadWav(manifest.parent_path() / key);
      if (audio.channels.size() != 1 || audio.sample_rate != sample_rate) {
        throw Error(ErrorKind::kInvalidInput,
                    key + ": samples must be mono at " +
                        std::to_string(sample_rate) + " Hz");
      }
      bank.Add(key, static_cast<int>(*class_id), std::move(audio.channels[0]));
    });
    return bank;
  }

 private:
  std::map<std::string, Entry> entries_;
};

// Linear interpolation over keyframes, holding the end values outside the
// keyframed span. Azimuth is interpolated on the raw keyframe values and then
// wrapped, so 170 -> 190 crosses the back rather than sweeping the front.
inline Keyframe InterpolateTrajectory(const std::vector<Keyframe>& keys, double t) {
  if (keys.empty()) throw Error(ErrorKind::kInvalidInput, "empty trajectory");
  Keyframe out;
  if (t <= keys.front().time_s) {
    out = keys.front();
  } else if (t >= keys.back().time_s) {
    out = keys.back();
  } else {
    const auto next = std::upper_bound(
        keys.begin(), keys.end(), t,
        [](double value, const Keyframe& k) { return value < k.time_s; });
    const Keyframe& b = *next;
    const Keyframe& a = *(next - 1);
    const double alpha = (t - a.time_s) / (b.time_s - a.time_s);
    out.azimuth_deg = a.azimuth_deg + alpha * (b.azimuth_deg - a.azimuth_deg);
    out.elevation_deg = a.elevation_deg + alpha * (b.elevation_deg - a.elevation_deg);
    out.distance_m = a.distance_m + alpha * (b.distance_m - a.distance_m);
  }
  out.time_s = t;
  out.azimuth_deg = WrapAzimuth(out.azimuth_deg);
  return out;
}

inline void ValidateSceneSpec(const SceneSpec& spec) {
  if (!(spec.duration_s > 0.0)) {
    throw Error(ErrorKind::kValidation, "scene duration must be positive");
  }
  if (spec.sample_rate <= 0) {
    throw Error(ErrorKind::kValidation, "sample rate must be positive");
  }
  if (!(spec.ambient_noise_level >= 0.0)) {
    throw Error(ErrorKind::kValidation, "ambient noise level must be >= 0");
  }
  if (spec.reverb.enabled &&
      (!(spec.reverb.decay_time_s > 0.0) || !(spec.reverb.direct_to_reverb_ratio > 0.0))) {
    throw Error(ErrorKind::kValidation,
                "reverb decay time and direct-to-reverb ratio must be positive");
  }
  if (!(spec.label_distance_scale > 0.0)) {
    throw Error(ErrorKind::kValidation, "label distance scale must be positive");
  }
  for (size_t i = 0; i < spec.events.size(); ++i) {
    const SceneEvent& e = spec.events[i];
    const std::string where = "event " + std::to_string(i) + ": ";
    if (!IsValidClassId(e.class_id)) throw Error(ErrorKind::kValidation, where + "bad class");
    if (e.source_id < 0) throw Error(ErrorKind::kValidation, where + "negative source id");
    if (!(e.onset_s >= 0.0) || e.onset_s >= spec.duration_s) {
      throw Error(ErrorKind::kValidation, where + "onset outside the scene");
    }
    if (e.trajectory.empty()) throw Error(ErrorKind::kValidation, where + "no keyframes");
    for (size_t k = 0; k < e.trajectory.size(); ++k) {
      const Keyframe& key = e.trajectory[k];
      if (k > 0 && !(key.time_s > e.trajectory[k - 1].time_s)) {
        throw Error(ErrorKind::kValidation,
                    where + "keyframe times must be strictly increasing");
      }
      if (key.time_s < 0.0 || key.time_s > spec.duration_s) {
        throw Error(ErrorKind::kValidation, where + "keyframe outside the scene");
      }
      if (!(key.distance_m > 0.0)) {
        throw Error(ErrorKind::kValidation, where + "distance must be positive");
      }
      if (!(key.elevation_deg >= -90.0 && key.elevation_deg <= 90.0) ||
          !std::isfinite(key.azimuth_deg)) {
        throw Error(ErrorKind::kValidation, where + "direction out of range");
      }
    }
  }
}

namespace spatializer_internal {

inline int SamplesPerLabelFrame(int sample_rate) {
  return static_cast<int>(std::lround(sample_rate * kLabelFrameS));
}

struct EventSpan {
  size_t begin = 0;  // first sample
  size_t end = 0;    // one past the last sample
};

inline EventSpan SpanOf(const SceneEvent& e, size_t sample_count, size_t scene_samples,
                        int sample_rate) {
  EventSpan span;
  span.begin = static_cast<size_t>(std::llround(e.onset_s * sample_rate));
  span.end = std::min(scene_samples, span.begin + sample_count);
  return span;
}

// Linear convolution via FFTW; plan creation is not thread-safe.
inline std::vector<double> Convolve(const std::vector<double>& x,
                                    const std::vector<double>& h) {
  static std::mutex planner_mutex;
  const size_t full = x.size() + h.size() - 1;
  size_t n = 1;
  while (n < full) n <<= 1;
  const size_t bins = n / 2 + 1;
  std::vector<double> xa(n, 0.0), ha(n, 0.0), out(n, 0.0);
  std::copy(x.begin(), x.end(), xa.begin());
  std::copy(h.begin(), h.end(), ha.begin());
  std::vector<std::complex<double>> xf(bins), hf(bins);
  fftw_plan px, ph, pinv;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    px = fftw_plan_dft_r2c_1d(static_cast<int>(n), xa.data(),
                              reinterpret_cast<fftw_complex*>(xf.data()),
                              FFTW_ESTIMATE);
    ph = fftw_plan_dft_r2c_1d(static_cast<int>(n), ha.data(),
                              reinterpret_cast<fftw_complex*>(hf.data()),
                              FFTW_ESTIMATE);
    pinv = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(xf.data()),
                                out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(px);
  fftw_execute(ph);
  for (size_t k = 0; k < bins; ++k) xf[k] *= hf[k] / static_cast<double>(n);
  fftw_execute(pinv);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(px);
    fftw_destroy_plan(ph);
    fftw_destroy_plan(pinv);
  }
  out.resize(full);
  return out;
}

}  // namespace spatializer_internal

// Renders one event's direct path (and tail, if enabled) into a full-length
// scene buffer and appends its labels.
inline FoaClip RenderEvent(const SceneSpec& spec, size_t event_index,
                           const SampleBank& bank, std::vector<EventRecord>* labels) {
  using namespace spatializer_internal;
  const SceneEvent& event = spec.events.at(event_index);
  const SampleBank::Entry* entry = bank.Find(event.sample);
  if (!entry) {
    throw Error(ErrorKind::kInvalidInput, "missing sample '" + event.sample + "'");
  }
  const size_t scene_samples =
      static_cast<size_t>(std::llround(spec.duration_s * spec.sample_rate));
  const int block = SamplesPerLabelFrame(spec.sample_rate);
  const EventSpan span =
      SpanOf(event, entry->samples.size(), scene_samples, spec.sample_rate);
  FoaClip out(scene_samples, spec.sample_rate);
  if (span.end <= span.begin) return out;

  // One parameter set per label frame, read at the frame centre.
  const size_t first_frame = span.begin / block;
  const size_t last_frame = (span.end - 1) / block;
  std::vector<std::array<double, kNumFoaChannels>> gains;
  for (size_t k = first_frame; k <= last_frame; ++k) {
    const double centre = (static_cast<double>(k) + 0.5) * kLabelFrameS;
    const Keyframe p = InterpolateTrajectory(event.trajectory, centre);
    const double gain = 1.0 / std::max(p.distance_m, kMinSourceDistanceM);
    gains.push_back(Sn3dGains({p.azimuth_deg, p.elevation_deg}, gain));
    if (labels) {
      EventRecord r;
      r.frame = static_cast<int>(k);
      r.class_id = event.class_id;
      r.source_id = event.source_id;
      r.azimuth_deg = p.azimuth_deg;
      r.elevation_deg = p.elevation_deg;
      r.distance = p.distance_m * spec.label_distance_scale;
      labels->push_back(r);
    }
  }

  // Per-sample crossfade between neighbouring frame-centre gain sets.
  const auto centre_sample = [&](size_t k) {
    return static_cast<double>(k * block) + block / 2.0;
  };
  for (size_t n = span.begin; n < span.end; ++n) {
    const double s = entry->samples[n - span.begin];
    const double pos = static_cast<double>(n);
    std::array<double, kNumFoaChannels> g;
    if (pos <= centre_sample(first_frame)) {
      g = gains.front();
    } else if (pos >= centre_sample(last_frame)) {
      g = gains.back();
    } else {
      const size_t k = static_cast<size_t>((pos - block / 2.0) / block);
      const size_t i = k - first_frame;
      const double alpha = (pos - centre_sample(k)) / block;
      for (int c = 0; c < kNumFoaChannels; ++c) {
        g[c] = gains[i][c] + alpha * (gains[i + 1][c] - gains[i][c]);
      }
    }
    for (int c = 0; c < kNumFoaChannels; ++c) {
      out.channel(c)[n] = static_cast<float>(s * g[c]);
    }
  }

  if (spec.reverb.enabled) {
    Rng rng = Rng::Derive(spec.seed, event_index);
    const size_t tail_len = std::max<size_t>(
        1, static_cast<size_t>(spec.reverb.decay_time_s * spec.sample_rate));
    std::vector<double> direct_w(span.end - span.begin);
    for (size_t n = span.begin; n < span.end; ++n) {
      direct_w[n - span.begin] = out.channel(kW)[n];
    }
    // Diffuse-field SN3D: first-order channels carry 1/3 of W's energy.
    constexpr double kChannelScale[kNumFoaChannels] = {1.0, 0.5773502691896258,
                                                       0.5773502691896258,
                                                       0.5773502691896258};
    const double decay = 6.907755278982137 / spec.reverb.decay_time_s;  // ln(1000)
    for (int c = 0; c < kNumFoaChannels; ++c) {
      std::vector<double> ir(tail_len);
      double energy = 0.0;
      for (size_t n = 0; n < tail_len; ++n) {
        ir[n] = rng.Gaussian() * std::exp(-decay * n / spec.sample_rate);
        energy += ir[n] * ir[n];
      }
      const double norm = kChannelScale[c] /
                          std::sqrt(energy * spec.reverb.direct_to_reverb_ratio);
      for (double& v : ir) v *= norm;
      const std::vector<double> tail = Convolve(direct_w, ir);
      auto dst = out.channel(c);
      for (size_t n = 0; n < tail.size() && span.begin + n < scene_samples; ++n) {
        dst[span.begin + n] += static_cast<float>(tail[n]);
      }
    }
  }
  return out;
}

// Eight uncorrelated Gaussian plane waves on the horizon (every 45 degrees),
// each at level / sqrt(8) so the omni channel has RMS close to `level`.
inline FoaClip MakeAmbient(double duration_s, double level, uint64_t seed,
                           int sample_rate = kDefaultSampleRate) {
  if (!(level >= 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "ambient level must be >= 0");
  }
  const size_t samples = static_cast<size_t>(std::llround(duration_s * sample_rate));
  FoaClip out(samples, sample_rate);
  if (level == 0.0 || samples == 0) return out;
  const double sigma = level / std::sqrt(8.0);
  std::vector<std::array<double, kNumFoaChannels>> gains;
  for (int i = 0; i < 8; ++i) gains.push_back(Sn3dGains({i * 45.0 - (i >= 4 ? 360.0 : 0.0), 0.0}));
  std::vector<Rng> streams;
  for (int i = 0; i < 8; ++i) streams.push_back(Rng::Derive(seed, 0x100000000ull + i));
  for (size_t n = 0; n < samples; ++n) {
    std::array<double, kNumFoaChannels> acc{};
    for (int i = 0; i < 8; ++i) {
      const double s = sigma * streams[i].Gaussian();
      for (int c = 0; c < kNumFoaChannels; ++c) acc[c] += s * gains[i][c];
    }
    for (int c = 0; c < kNumFoaChannels; ++c) out.channel(c)[n] = static_cast<float>(acc[c]);
  }
  return out;
}

inline RenderedScene RenderScene(const SceneSpec& spec, const SampleBank& bank) {
  using namespace spatializer_internal;
  ValidateSceneSpec(spec);
  const size_t scene_samples =
      static_cast<size_t>(std::llround(spec.duration_s * spec.sample_rate));

  // Two events may not share (class, source) while both are sounding.
  std::vector<EventSpan> spans;
  for (const auto& e : spec.events) {
    const SampleBank::Entry* entry = bank.Find(e.sample);
    if (!entry) throw Error(ErrorKind::kInvalidInput, "missing sample '" + e.sample + "'");
    spans.push_back(SpanOf(e, entry->samples.size(), scene_samples, spec.sample_rate));
  }
  for (size_t i = 0; i < spec.events.size(); ++i) {
    for (size_t j = i + 1; j < spec.events.size(); ++j) {
      const auto& a = spec.events[i];
      const auto& b = spec.events[j];
      if (a.class_id == b.class_id && a.source_id == b.source_id &&
          spans[i].begin < spans[j].end && spans[j].begin < spans[i].end) {
        throw Error(ErrorKind::kValidation,
                    "events " + std::to_string(i) + " and " + std::to_string(j) +
                        " overlap with the same class and source id");
      }
    }
  }

  RenderedScene scene{FoaClip(scene_samples, spec.sample_rate), {}};
  for (size_t i = 0; i < spec.events.size(); ++i) {
    scene.foa += RenderEvent(spec, i, bank, &scene.labels);
  }
  if (spec.ambient_noise_level > 0.0) {
    scene.foa += MakeAmbient(spec.duration_s, spec.ambient_noise_level, spec.seed,
                             spec.sample_rate);
  }
  SortRecords(scene.labels);
  return scene;
}

// --- random scenes ---------------------------------------------------------

struct RandomSceneOptions {
  double duration_s = 5.0;
  int max_events = 4;
  int max_polyphony = 3;       // simultaneous events of one class
  double moving_fraction = 0.5;
  double max_sweep_deg = 90.0;
  double min_distance_m = 0.5;
  double max_distance_m = 4.0;
  double max_abs_elevation_deg = 30.0;
  double ambient_noise_level = 0.0;
  ReverbParams reverb;
};

inline SceneSpec RandomScene(const SampleBank& bank, uint64_t seed,
                             const RandomSceneOptions& options = {}) {
  if (bank.empty()) throw Error(ErrorKind::kInvalidInput, "sample bank is empty");
  Rng rng(seed);
  SceneSpec spec;
  spec.duration_s = options.duration_s;
  spec.seed = seed;
  spec.ambient_noise_level = options.ambient_noise_level;
  spec.reverb = options.reverb;

  std::vector<const std::string*> keys;
  for (const auto& [key, entry] : bank.entries()) keys.push_back(&key);
  const int frames = static_cast<int>(std::floor(options.duration_s / kLabelFrameS + 1e-9));
  const int count = 1 + static_cast<int>(rng.Index(options.max_events));
  struct Placed {
    int class_id;
    int source_id;
    double begin;
    double end;
  };
  std::vector<Placed> placed;
  for (int i = 0; i < count; ++i) {
    const std::string& key = *keys[rng.Index(keys.size())];
    const SampleBank::Entry& entry = *bank.Find(key);
    const double onset = static_cast<double>(rng.Index(std::max(1, frames - 1))) * kLabelFrameS;
    const double length = static_cast<double>(entry.samples.size()) / spec.sample_rate;
    const double end = std::min(options.duration_s, onset + length);

    int source_id = 0;
    for (;; ++source_id) {
      const bool taken = std::any_of(placed.begin(), placed.end(), [&](const Placed& p) {
        return p.class_id == entry.class_id && p.source_id == source_id &&
               p.begin < end && onset < p.end;
      });
      if (!taken) break;
    }
    if (source_id >= options.max_polyphony) continue;
    placed.push_back({entry.class_id, source_id, onset, end});

    const double az0 = rng.Uniform(-180.0, 180.0);
    const double el = rng.Uniform(-options.max_abs_elevation_deg, options.max_abs_elevation_deg);
    const double dist0 = rng.Uniform(options.min_distance_m, options.max_distance_m);
    SceneEvent event{entry.class_id, source_id, onset, key, {}};
    event.trajectory.push_back({onset, az0, el, dist0});
    if (rng.Uniform() < options.moving_fraction && end - onset > kLabelFrameS) {
      const double sweep = rng.Uniform(-options.max_sweep_deg, options.max_sweep_deg);
      const double dist1 = rng.Uniform(options.min_distance_m, options.max_distance_m);
      event.trajectory.push_back({end, az0 + sweep, el, dist1});
    }
    spec.events.push_back(std::move(event));
  }
  return spec;
}

// --- scene files -------------------------------------------------------------
//
//   duration_s = 5
//   ambient_noise_level = 0.01
//   reverb_enabled = 1
//   [events]
//   # class, source, onset_s, sample, time:azimuth:elevation:distance; ...
//   3, 0, 0.5, phone.wav, 0.5:30:0:1.5; 2.0:60:0:1.5

inline SceneSpec ParseSceneSpec(std::string_view text) {
  SceneSpec spec;
  bool in_events = false;
  ForEachDataLine(text, [&](int line, std::string_view row) {
    if (row == "[events]") {
      in_events = true;
      return;
    }
    if (!in_events) {
      const size_t eq = row.find('=');
      if (eq == std::string_view::npos) throw ParseError(line, "expected key = value");
      const std::string key(Trim(row.substr(0, eq)));
      const std::string_view value = Trim(row.substr(eq + 1));
      const auto number = ParseDouble(value);
      if (!number) throw ParseError(line, "bad value for '" + key + "'");
      if (key == "duration_s") {
        spec.duration_s = *number;
      } else if (key == "sample_rate") {
        spec.sample_rate = static_cast<int>(*number);
      } else if (key == "ambient_noise_level") {
        spec.ambient_noise_level = *number;
      } else if (key == "reverb_enabled") {
        spec.reverb.enabled = *number != 0.0;
      } else if (key == "reverb_decay_time_s") {
        spec.reverb.decay_time_s = *number;
      } else if (key == "reverb_direct_to_reverb_ratio") {
        spec.reverb.direct_to_reverb_ratio = *number;
      } else if (key == "label_distance_scale") {
        spec.label_distance_scale = *number;
      } else if (key == "seed") {
        const auto seed = ParseInteger(value);
        if (!seed || *seed < 0) throw ParseError(line, "bad seed");
        spec.seed = static_cast<uint64_t>(*seed);
      } else {
        throw ParseError(line, "unknown key '" + key + "'");
      }
      return;
    }
    const auto fields = SplitFields(row);
    if (fields.size() != 5) {
      throw ParseError(line, "event rows need 5 columns, found " +
                                 std::to_string(fields.size()));
    }
    SceneEvent event;
    const auto class_id = ParseInteger(fields[0]);
    const auto source_id = ParseInteger(fields[1]);
    const auto onset = ParseDouble(fields[2]);
    if (!class_id || !source_id || !onset) throw ParseError(line, "bad event header");
    event.class_id = static_cast<int>(*class_id);
    event.source_id = static_cast<int>(*source_id);
    event.onset_s = *onset;
    event.sample = std::string(fields[3]);
    for (const auto key : SplitFields(fields[4], ';')) {
      if (key.empty()) continue;
      const auto parts = SplitFields(key, ':');
      if (parts.size() != 4) {
        throw ParseError(line, "keyframes are time:azimuth:elevation:distance");
      }
      Keyframe k;
      const auto t = ParseDouble(parts[0]);
      const auto az = ParseDouble(parts[1]);
      const auto el = ParseDouble(parts[2]);
      const auto d = ParseDouble(parts[3]);
      if (!t || !az || !el || !d) throw ParseError(line, "bad keyframe '" + std::string(key) + "'");
      event.trajectory.push_back({*t, *az, *el, *d});
    }
    spec.events.push_back(std::move(event));
  });
  ValidateSceneSpec(spec);
  return spec;
}

inline std::string SerializeSceneSpec(const SceneSpec& spec) {
  std::string out;
  out += "duration_s = " + FormatNumber(spec.duration_s) + "\n";
  out += "sample_rate = " + std::to_string(spec.sample_rate) + "\n";
  out += "ambient_noise_level = " + FormatNumber(spec.ambient_noise_level) + "\n";
  out += "reverb_enabled = " + std::string(spec.reverb.enabled ? "1" : "0") + "\n";
  out += "reverb_decay_time_s = " + FormatNumber(spec.reverb.decay_time_s) + "\n";
  out += "reverb_direct_to_reverb_ratio = " +
         FormatNumber(spec.reverb.direct_to_reverb_ratio) + "\n";
  out += "label_distance_scale = " + FormatNumber(spec.label_distance_scale) + "\n";
  out += "seed = " + std::to_string(spec.seed) + "\n";
  out += "[events]\n";
  for (const auto& e : spec.events) {
    out += std::to_string(e.class_id) + ", " + std::to_string(e.source_id) + ", " +
           FormatNumber(e.onset_s) + ", " + e.sample + ", ";
    for (size_t k = 0; k < e.trajectory.size(); ++k) {
      const Keyframe& key = e.trajectory[k];
      if (k) out += "; ";
      out += FormatNumber(key.time_s) + ":" + FormatNumber(key.azimuth_deg) + ":" +
             FormatNumber(key.elevation_deg) + ":" + FormatNumber(key.distance_m);
    }
    out += "\n";
  }
  return out;
}

}  // namespace sseld

#endif  // SSELD_SPATIALIZER_H_
