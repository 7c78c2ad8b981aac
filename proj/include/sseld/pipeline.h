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

// Directory-level batch operations behind the command-line tool: indexing
// recordings, converting sampled clips, synthesizing scenes and scoring
// prediction directories.

#ifndef SSELD_PIPELINE_H_
#define SSELD_PIPELINE_H_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sseld/core_audio.h"
#include "sseld/error.h"
#include "sseld/image.h"
#include "sseld/labels.h"
#include "sseld/metrics.h"
#include "sseld/projection.h"
#include "sseld/sampler.h"
#include "sseld/spatializer.h"
#include "sseld/text.h"
#include "sseld/wav_io.h"

namespace sseld {

namespace fs = std::filesystem;

struct PipelineConfig {
  int sample_rate = kDefaultSampleRate;
  double clip_len_s = 5.0;
  double label_frame_s = kLabelFrameS;
  double hfov_deg = kDefaultHfovDeg;
  int out_width = kDefaultOutWidth;
  int out_height = kDefaultOutHeight;
  double fps = kVideoFps;
  double doa_threshold_deg = 20.0;
  double rde_threshold = 1.0;
  uint64_t seed = 0;
  int jobs = 0;  // 0: hardware concurrency
  bool video = true;
  WavSampleFormat output_format = WavSampleFormat::kPcm16;
  Interpolation interpolation = Interpolation::kBilinear;

  void Validate() const {
    if (sample_rate <= 0) throw Error(ErrorKind::kConfiguration, "sample_rate must be positive");
    if (!(clip_len_s > 0.0)) throw Error(ErrorKind::kConfiguration, "clip_len_s must be positive");
    if (label_frame_s != kLabelFrameS) {
      throw Error(ErrorKind::kConfiguration, "label_frame_s is fixed at 0.1 s");
    }
    if (!(hfov_deg > 0.0 && hfov_deg < 180.0)) {
      throw Error(ErrorKind::kConfiguration, "hfov_deg must lie in (0, 180)");
    }
    if (out_width <= 0 || out_height <= 0) {
      throw Error(ErrorKind::kConfiguration, "output video size must be positive");
    }
    if (!(fps > 0.0)) throw Error(ErrorKind::kConfiguration, "fps must be positive");
    if (!(doa_threshold_deg > 0.0) || !(rde_threshold > 0.0)) {
      throw Error(ErrorKind::kConfiguration, "thresholds must be positive");
    }
  }

  int label_frames_per_clip() const {
    return static_cast<int>(std::lround(clip_len_s / label_frame_s));
  }
  MetricsConfig metrics() const {
    MetricsConfig m;
    m.doa_threshold_deg = doa_threshold_deg;
    m.rde_threshold = rde_threshold;
    return m;
  }
  FovConfig fov() const {
    FovConfig f;
    f.horizontal_fov_deg = hfov_deg;
    f.vertical_fov_deg = ImpliedVerticalFov(hfov_deg, out_width, out_height);
    return f;
  }
};

inline int ResolveJobs(int jobs) {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Exceptions are
// caught per item and returned (empty string = success).
inline std::vector<std::string> ParallelFor(size_t count, int jobs,
                                            const std::function<void(size_t)>& fn) {
  std::vector<std::string> errors(count);
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        if (errors[i].empty()) errors[i] = "unknown error";
      }
    }
  };
  const size_t threads = std::min<size_t>(count, static_cast<size_t>(ResolveJobs(jobs)));
  std::vector<std::thread> pool;
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return errors;
}

// Files under `dir` (recursive) with the given extension, keyed by stem.
inline std::map<std::string, fs::path> FilesByStem(const fs::path& dir,
                                                   const std::string& extension) {
  std::map<std::string, fs::path> files;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorKind::kIo, "not a directory: " + dir.string());
  }
  std::vector<fs::path> found;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension) {
      found.push_back(entry.path());
    }
  }
  std::sort(found.begin(), found.end());
  for (const auto& path : found) {
    const std::string stem = path.stem().string();
    if (!files.emplace(stem, path).second) {
      throw Error(ErrorKind::kValidation,
                  "duplicate id '" + stem + "' under " + dir.string());
    }
  }
  return files;
}

// Pairs FOA recordings with metadata (and optional frame directories) by
// file stem.
inline RecordingIndex BuildIndex(const fs::path& audio_dir, const fs::path& metadata_dir,
                                 const std::optional<fs::path>& frames_dir = std::nullopt) {
  const auto audio = FilesByStem(audio_dir, ".wav");
  const auto metadata = FilesByStem(metadata_dir, ".csv");
  std::map<std::string, fs::path> frames;
  if (frames_dir) {
    for (const auto& entry : fs::recursive_directory_iterator(*frames_dir)) {
      if (entry.is_directory() && fs::exists(entry.path() / FrameFileName(0))) {
        frames.emplace(entry.path().filename().string(), entry.path());
      }
    }
  }
  RecordingIndex index;
  for (const auto& [id, wav] : audio) {
    const auto meta = metadata.find(id);
    if (meta == metadata.end()) continue;
    const WavInfo info = ReadWavInfo(wav);
    if (info.num_channels != kNumFoaChannels) continue;
    const auto frame_dir = frames.find(id);
    index.entries.push_back(RecordingEntry{
        id, info.duration_s(), wav.string(),
        frame_dir == frames.end() ? std::string() : frame_dir->second.string(),
        meta->second.string()});
  }
  return index;
}

struct ClipFailure {
  std::string clip_id;
  std::string message;
};

struct ConvertSummary {
  size_t converted = 0;
  size_t clipped_samples = 0;
  std::vector<ClipFailure> failures;
};

struct ClipOutput {
  StereoClip audio;
  std::vector<EventRecord> labels;
};

// Audio and labels for one clip, without touching the filesystem for output.
inline ClipOutput ConvertClipAudioLabels(const FoaClip& recording_slice,
                                         const std::vector<EventRecord>& recording_labels,
                                         const ClipSpec& clip, const PipelineConfig& config) {
  const int first_frame = static_cast<int>(std::lround(clip.start_s / config.label_frame_s));
  const auto sliced =
      SliceFrames(recording_labels, first_frame, config.label_frames_per_clip());
  return ClipOutput{FoaToStereo(RotateYaw(recording_slice, clip.yaw_deg)),
                    TransformClipLabels(sliced, clip.yaw_deg, config.fov())};
}

inline void ConvertClip(const RecordingEntry& entry, const ClipSpec& clip,
                        const PipelineConfig& config, const fs::path& out_dir,
                        size_t* clipped_samples = nullptr) {
  const WavInfo info = ReadWavInfo(entry.audio_path);
  if (info.sample_rate != config.sample_rate) {
    throw Error(ErrorKind::kInvalidInput,
                entry.audio_path + ": sample rate " + std::to_string(info.sample_rate) +
                    " Hz, expected " + std::to_string(config.sample_rate));
  }
  const size_t begin = static_cast<size_t>(std::llround(clip.start_s * config.sample_rate));
  const size_t count = static_cast<size_t>(std::llround(config.clip_len_s * config.sample_rate));
  const FoaClip slice =
      ToFoaClip(ReadWavFrames(entry.audio_path, begin, count), entry.audio_path);
  const auto labels =
      ParseMetadata(ReadTextFile(entry.metadata_path), LabelSchema::kSource);
  const ClipOutput out = ConvertClipAudioLabels(slice, labels, clip, config);

  const size_t clipped = WriteWav(out_dir / "stereo" / (clip.clip_id + ".wav"),
                                  ToWavAudio(out.audio), config.output_format);
  if (clipped_samples) *clipped_samples = clipped;
  WriteTextFile(out_dir / "metadata" / (clip.clip_id + ".csv"),
                SerializeMetadata(out.labels, LabelSchema::kStereo));

  if (!config.video) return;
  if (entry.frames_dir.empty()) {
    throw Error(ErrorKind::kInvalidInput,
                "recording '" + entry.recording_id + "' has no frames directory");
  }
  const fs::path video_dir = out_dir / "video" / clip.clip_id;
  fs::create_directories(video_dir);
  std::optional<ProjectionMap> map;
  const int frames = FramesPerClip(config.clip_len_s, config.fps);
  for (int k = 0; k < frames; ++k) {
    const fs::path source =
        fs::path(entry.frames_dir) / FrameFileName(SourceFrameIndex(clip.start_s, k, config.fps));
    const RgbImage panorama = ReadPng(source);
    if (!map || map->eq_width() != panorama.width || map->eq_height() != panorama.height) {
      map.emplace(clip.yaw_deg, panorama.width, panorama.height, config.hfov_deg,
                  config.out_width, config.out_height);
    }
    WritePng(video_dir / FrameFileName(k), Project(panorama, *map, config.interpolation));
  }
}

// Converts every clip of the manifest; per-clip failures are collected and
// written to out_dir/failures.csv rather than aborting the batch.
inline ConvertSummary ConvertClips(const RecordingIndex& index,
                                   const std::vector<ClipSpec>& clips,
                                   const PipelineConfig& config, const fs::path& out_dir) {
  config.Validate();
  ConvertSummary summary;
  std::vector<size_t> clipped(clips.size(), 0);
  const auto errors = ParallelFor(clips.size(), config.jobs, [&](size_t i) {
    const ClipSpec& clip = clips[i];
    const RecordingEntry* entry = index.Find(clip.recording_id);
    if (!entry) {
      throw Error(ErrorKind::kInvalidInput,
                  "unknown recording '" + clip.recording_id + "'");
    }
    if (clip.start_s + config.clip_len_s > entry->duration_s + 1e-9) {
      throw Error(ErrorKind::kInvalidInput, "clip window exceeds the recording");
    }
    ConvertClip(*entry, clip, config, out_dir, &clipped[i]);
  });
  std::string report;
  for (size_t i = 0; i < clips.size(); ++i) {
    summary.clipped_samples += clipped[i];
    if (errors[i].empty()) {
      ++summary.converted;
    } else {
      summary.failures.push_back({clips[i].clip_id, errors[i]});
      std::string message = errors[i];
      std::replace(message.begin(), message.end(), '\n', ' ');
      report += clips[i].clip_id + ",\"" + message + "\"\n";
    }
  }
  const fs::path failures = out_dir / "failures.csv";
  if (!report.empty()) {
    WriteTextFile(failures, report);
  } else if (fs::exists(failures)) {
    fs::remove(failures);
  }
  return summary;
}

// --- synthesis ------------------------------------------------------------------

struct SynthSummary {
  std::vector<std::string> scene_ids;
  size_t clipped_samples = 0;
};

// Renders scenes to out_dir/foa/<id>.wav (source-schema labels in
// out_dir/metadata/<id>.csv, the scene description in out_dir/scenes/).
inline SynthSummary WriteScenes(const std::vector<std::pair<std::string, SceneSpec>>& scenes,
                                const SampleBank& bank, const fs::path& out_dir,
                                WavSampleFormat format, int jobs) {
  SynthSummary summary;
  std::vector<size_t> clipped(scenes.size(), 0);
  const auto errors = ParallelFor(scenes.size(), jobs, [&](size_t i) {
    const auto& [id, spec] = scenes[i];
    const RenderedScene scene = RenderScene(spec, bank);
    clipped[i] = WriteWav(out_dir / "foa" / (id + ".wav"), ToWavAudio(scene.foa), format);
    WriteTextFile(out_dir / "metadata" / (id + ".csv"),
                  SerializeMetadata(scene.labels, LabelSchema::kSource));
    WriteTextFile(out_dir / "scenes" / (id + ".txt"), SerializeSceneSpec(spec));
  });
  for (size_t i = 0; i < scenes.size(); ++i) {
    if (!errors[i].empty()) {
      throw Error(ErrorKind::kInvalidInput, scenes[i].first + ": " + errors[i]);
    }
    summary.scene_ids.push_back(scenes[i].first);
    summary.clipped_samples += clipped[i];
  }
  return summary;
}

// --- evaluation -------------------------------------------------------------

struct EvalOptions {
  MetricsConfig metrics;
  bool allow_missing = false;
  int label_frames_per_clip = 50;
};

inline std::map<std::string, std::vector<EventRecord>> LoadLabelDir(const fs::path& dir) {
  std::map<std::string, std::vector<EventRecord>> clips;
  for (const auto& [id, path] : FilesByStem(dir, ".csv")) {
    try {
      clips[id] = ParseMetadata(ReadTextFile(path), LabelSchema::kStereo);
    } catch (const Error& e) {
      throw Error(e.kind(), path.string() + ": " + e.what());
    }
  }
  return clips;
}

// Concatenates per-clip label lists into frame-disjoint label sets so the
// whole corpus is scored as one sequence.
inline std::pair<LabelSet, LabelSet> AlignClipSets(
    const std::map<std::string, std::vector<EventRecord>>& preds,
    const std::map<std::string, std::vector<EventRecord>>& refs, const EvalOptions& options) {
  std::string missing;
  for (const auto& [id, records] : refs) {
    if (!preds.count(id)) missing += (missing.empty() ? "" : ", ") + id;
  }
  if (!missing.empty() && !options.allow_missing) {
    throw Error(ErrorKind::kValidation, "predictions missing for clips: " + missing);
  }
  std::string extra;
  for (const auto& [id, records] : preds) {
    if (!refs.count(id)) extra += (extra.empty() ? "" : ", ") + id;
  }
  if (!extra.empty()) {
    throw Error(ErrorKind::kValidation, "predictions for unknown clips: " + extra);
  }
  LabelSet all_preds;
  LabelSet all_refs;
  int offset = 0;
  const std::vector<EventRecord> kNone;
  for (const auto& [id, ref_records] : refs) {
    const auto it = preds.find(id);
    const auto& pred_records = it == preds.end() ? kNone : it->second;
    try {
      const LabelSet p = LabelSet::FromRecords(pred_records);
      const LabelSet r = LabelSet::FromRecords(ref_records);
      all_preds.Append(p, offset);
      all_refs.Append(r, offset);
      offset += std::max({options.label_frames_per_clip, p.frame_span(), r.frame_span()});
    } catch (const Error& e) {
      throw Error(e.kind(), "clip " + id + ": " + e.what());
    }
  }
  return {std::move(all_preds), std::move(all_refs)};
}

inline MetricsReport EvaluateDirs(const fs::path& pred_dir, const fs::path& ref_dir,
                                  const EvalOptions& options) {
  const auto [preds, refs] = AlignClipSets(LoadLabelDir(pred_dir), LoadLabelDir(ref_dir), options);
  return Score(preds, refs, options.metrics);
}

struct BiasBaselineResult {
  std::vector<std::optional<double>> class_means;
  MetricsReport original;
  MetricsReport substituted;
  std::map<std::string, std::vector<EventRecord>> substituted_preds;
};

// Replaces predicted distances by the training-set class means and scores
// both the original and the substituted predictions.
inline BiasBaselineResult RunBiasBaseline(const fs::path& train_ref_dir,
                                          const fs::path& pred_dir, const fs::path& ref_dir,
                                          const EvalOptions& options) {
  BiasBaselineResult result;
  LabelSet train;
  int offset = 0;
  for (const auto& [id, records] : LoadLabelDir(train_ref_dir)) {
    const LabelSet clip = LabelSet::FromRecords(records);
    train.Append(clip, offset);
    offset += std::max(options.label_frames_per_clip, clip.frame_span());
  }
  result.class_means = ClassMeanDistance(train, options.metrics.class_count);

  const auto preds = LoadLabelDir(pred_dir);
  const auto refs = LoadLabelDir(ref_dir);
  for (const auto& [id, records] : preds) {
    const LabelSet substituted =
        ApplyDistanceBias(LabelSet::FromRecords(records), result.class_means);
    result.substituted_preds[id] = substituted.ToRecords();
  }
  {
    const auto [p, r] = AlignClipSets(preds, refs, options);
    result.original = Score(p, r, options.metrics);
  }
  {
    const auto [p, r] = AlignClipSets(result.substituted_preds, refs, options);
    result.substituted = Score(p, r, options.metrics);
  }
  return result;
}

}  // namespace sseld

#endif  // SSELD_PIPELINE_H_
