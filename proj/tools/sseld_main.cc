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

// sseld: build stereo SELD clips from FOA recordings and 360-degree frames,
// synthesize scenes, and score predictions.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sseld/sseld.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct IndexArgs {
  std::string audio_dir;
  std::string metadata_dir;
  std::string frames_dir;
  std::string out;
};

struct SampleArgs {
  std::string index;
  size_t count = 0;
  std::string out;
  bool continuous_yaw = false;
};

struct ConvertArgs {
  std::string index;
  std::string manifest;
  std::string out_dir;
  bool no_video = false;
  bool float32 = false;
  bool nearest = false;
};

struct SynthArgs {
  std::string bank;
  std::vector<std::string> scenes;
  size_t count = 0;
  std::string out_dir;
  std::string prefix = "synth";
  bool pcm16 = false;
  sseld::RandomSceneOptions random;
};

struct EvalArgs {
  std::string pred_dir;
  std::string ref_dir;
  std::string train_ref_dir;
  std::string report;
  std::string write_preds;
  std::vector<std::string> rank;
  bool onoff = false;
  bool allow_missing = false;
};

struct InspectArgs {
  std::vector<std::string> paths;
  std::string schema = "auto";
};

sseld::EvalOptions MakeEvalOptions(const sseld::PipelineConfig& config,
                                   const EvalArgs& args) {
  sseld::EvalOptions options;
  options.metrics = config.metrics();
  options.metrics.require_onscreen_match = args.onoff;
  options.allow_missing = args.allow_missing;
  options.label_frames_per_clip = config.label_frames_per_clip();
  return options;
}

void PrintReport(const sseld::MetricsReport& report, const std::string& path) {
  std::cout << sseld::FormatReportTable(report);
  if (!path.empty()) {
    sseld::WriteTextFile(path, sseld::SerializeReport(report));
    std::cout << "\nreport written to " << path << "\n";
  }
}

int RunIndex(const IndexArgs& args) {
  std::optional<fs::path> frames;
  if (!args.frames_dir.empty()) frames = args.frames_dir;
  const auto index = sseld::BuildIndex(args.audio_dir, args.metadata_dir, frames);
  sseld::WriteTextFile(args.out, sseld::SerializeIndex(index));
  std::cout << "indexed " << index.entries.size() << " recordings -> " << args.out << "\n";
  return kExitOk;
}

int RunSample(const sseld::PipelineConfig& config, const SampleArgs& args) {
  const auto index = sseld::ParseIndex(sseld::ReadTextFile(args.index));
  sseld::SamplerOptions options;
  options.clip_len_s = config.clip_len_s;
  options.continuous_yaw = args.continuous_yaw;
  const auto clips = sseld::SampleClips(index, args.count, config.seed, options);
  sseld::WriteTextFile(args.out, sseld::SerializeManifest(clips));
  std::cout << "sampled " << clips.size() << " clips (seed " << config.seed << ") -> "
            << args.out << "\n";
  return kExitOk;
}

int RunConvert(sseld::PipelineConfig config, const ConvertArgs& args) {
  config.video = !args.no_video;
  if (args.float32) config.output_format = sseld::WavSampleFormat::kFloat32;
  if (args.nearest) config.interpolation = sseld::Interpolation::kNearest;
  const auto index = sseld::ParseIndex(sseld::ReadTextFile(args.index));
  const auto clips = sseld::ParseManifest(sseld::ReadTextFile(args.manifest), config.clip_len_s);
  const auto summary = sseld::ConvertClips(index, clips, config, args.out_dir);
  std::cout << "converted " << summary.converted << "/" << clips.size() << " clips\n";
  if (summary.clipped_samples > 0) {
    std::cerr << "warning: " << summary.clipped_samples
              << " samples clipped to the 16-bit range (use --float32 to keep them)\n";
  }
  for (const auto& failure : summary.failures) {
    std::cerr << "failed " << failure.clip_id << ": " << failure.message << "\n";
  }
  if (!summary.failures.empty()) {
    std::cerr << summary.failures.size() << " failures listed in "
              << (fs::path(args.out_dir) / "failures.csv").string() << "\n";
    return kExitData;
  }
  return kExitOk;
}

int RunSynth(const sseld::PipelineConfig& config, SynthArgs args) {
  const auto bank = sseld::SampleBank::Load(args.bank, config.sample_rate);
  std::vector<std::pair<std::string, sseld::SceneSpec>> scenes;
  for (const auto& path : args.scenes) {
    scenes.emplace_back(fs::path(path).stem().string(),
                        sseld::ParseSceneSpec(sseld::ReadTextFile(path)));
  }
  for (size_t i = 0; i < args.count; ++i) {
    char id[64];
    std::snprintf(id, sizeof(id), "%s%05zu", args.prefix.c_str(), i);
    const uint64_t seed = sseld::Rng::Derive(config.seed, i).NextU64() >> 1;
    scenes.emplace_back(id, sseld::RandomScene(bank, seed, args.random));
  }
  const auto format =
      args.pcm16 ? sseld::WavSampleFormat::kPcm16 : sseld::WavSampleFormat::kFloat32;
  const auto summary = sseld::WriteScenes(scenes, bank, args.out_dir, format, config.jobs);
  std::cout << "rendered " << summary.scene_ids.size() << " scenes -> " << args.out_dir
            << "\n";
  if (summary.clipped_samples > 0) {
    std::cerr << "warning: " << summary.clipped_samples << " samples clipped\n";
  }
  return kExitOk;
}

int RunEval(const sseld::PipelineConfig& config, const EvalArgs& args) {
  if (!args.rank.empty()) {
    std::vector<sseld::RankedSystem> systems;
    for (const auto& path : args.rank) {
      systems.push_back({path, sseld::ParseReport(sseld::ReadTextFile(path))});
    }
    const auto ranked = sseld::RankSystems(std::move(systems));
    for (size_t i = 0; i < ranked.size(); ++i) {
      const auto f = ranked[i].report.ranking_f();
      std::cout << i + 1 << "\t" << (f ? sseld::FormatFixed(*f * 100.0, 2) : "N/A") << "\t"
                << ranked[i].name << "\n";
    }
    return kExitOk;
  }
  if (args.pred_dir.empty() || args.ref_dir.empty()) {
    std::cerr << "eval needs --pred-dir and --ref-dir (or --rank)\n";
    return kExitUsage;
  }
  const auto report = sseld::EvaluateDirs(args.pred_dir, args.ref_dir, MakeEvalOptions(config, args));
  PrintReport(report, args.report);
  return kExitOk;
}

int RunBiasBaseline(const sseld::PipelineConfig& config, const EvalArgs& args) {
  const auto result = sseld::RunBiasBaseline(args.train_ref_dir, args.pred_dir, args.ref_dir,
                                             MakeEvalOptions(config, args));
  std::cout << "class-mean distances:\n";
  for (size_t c = 0; c < result.class_means.size(); ++c) {
    std::cout << "  " << c << "\t"
              << (result.class_means[c] ? sseld::FormatNumber(*result.class_means[c])
                                        : std::string("absent"))
              << "\n";
  }
  std::cout << "\n== original predictions ==\n" << sseld::FormatReportTable(result.original);
  std::cout << "\n== class-mean distances substituted ==\n";
  PrintReport(result.substituted, args.report);
  if (!args.write_preds.empty()) {
    for (const auto& [id, records] : result.substituted_preds) {
      sseld::WriteTextFile(fs::path(args.write_preds) / (id + ".csv"),
                           sseld::SerializeMetadata(records, sseld::LabelSchema::kStereo));
    }
  }
  return kExitOk;
}

void InspectCsv(const fs::path& path, const std::string& schema) {
  const std::string text = sseld::ReadTextFile(path);
  size_t columns = 0;
  bool numeric_first = true;
  sseld::ForEachDataLine(text, [&](int, std::string_view line) {
    if (columns == 0) {
      const auto fields = sseld::SplitFields(line);
      columns = fields.size();
      numeric_first = sseld::ParseDouble(fields[0]).has_value();
    }
  });
  if (columns == 0) {
    std::cout << path.string() << ": empty\n";
    return;
  }
  if (!numeric_first && columns == 5 && schema == "auto") {
    try {
      const auto index = sseld::ParseIndex(text);
      double total = 0.0;
      for (const auto& e : index.entries) total += e.duration_s;
      std::cout << path.string() << ": recording index, " << index.entries.size()
                << " recordings, " << sseld::FormatFixed(total / 3600.0, 2) << " h\n";
      return;
    } catch (const sseld::Error&) {
    }
    const auto clips = sseld::ParseManifest(text);
    std::cout << path.string() << ": clip manifest, " << clips.size() << " clips\n";
    return;
  }
  std::vector<sseld::EventRecord> records;
  std::string used = schema;
  if (schema == "source") {
    records = sseld::ParseMetadata(text, sseld::LabelSchema::kSource);
  } else if (schema == "stereo") {
    records = sseld::ParseMetadata(text, sseld::LabelSchema::kStereo);
  } else {
    try {
      records = sseld::ParseMetadata(text, sseld::LabelSchema::kStereo);
      used = "stereo";
    } catch (const sseld::Error&) {
      records = sseld::ParseMetadata(text, sseld::LabelSchema::kSource);
      used = "source";
    }
  }
  std::map<int, size_t> per_class;
  size_t onscreen = 0;
  int last_frame = -1;
  for (const auto& r : records) {
    ++per_class[r.class_id];
    onscreen += r.onscreen.value_or(false) ? 1 : 0;
    last_frame = std::max(last_frame, r.frame);
  }
  std::cout << path.string() << ": " << used << " metadata, " << records.size()
            << " rows, frames 0.." << last_frame << "\n";
  for (const auto& [c, n] : per_class) {
    std::cout << "  " << c << " " << sseld::ClassName(c) << ": " << n << "\n";
  }
  if (used == "stereo" && !records.empty()) {
    std::cout << "  onscreen fraction: "
              << sseld::FormatFixed(static_cast<double>(onscreen) / records.size(), 3) << "\n";
  }
}

void InspectWav(const fs::path& path) {
  const auto info = sseld::ReadWavInfo(path);
  const auto audio = sseld::ReadWav(path);
  static const char* kFormats[] = {"pcm16", "pcm24", "pcm32", "float32"};
  std::cout << path.string() << ": " << info.num_channels << " ch, " << info.sample_rate
            << " Hz, " << kFormats[static_cast<int>(info.format)] << ", " << info.num_frames
            << " frames (" << sseld::FormatFixed(info.duration_s(), 3) << " s)\n";
  for (size_t c = 0; c < audio.channels.size(); ++c) {
    double peak = 0.0;
    double energy = 0.0;
    for (float s : audio.channels[c]) {
      peak = std::max(peak, static_cast<double>(std::abs(s)));
      energy += static_cast<double>(s) * s;
    }
    const double rms =
        audio.num_frames() ? std::sqrt(energy / static_cast<double>(audio.num_frames())) : 0.0;
    std::cout << "  ch" << c << " peak " << sseld::FormatFixed(peak, 4) << " rms "
              << sseld::FormatFixed(rms, 4) << "\n";
  }
}

int RunInspect(const InspectArgs& args) {
  for (const auto& p : args.paths) {
    const fs::path path(p);
    const std::string ext = path.extension().string();
    if (ext == ".wav") {
      InspectWav(path);
    } else if (ext == ".png") {
      const auto image = sseld::ReadPng(path);
      std::cout << path.string() << ": " << image.width << "x" << image.height << " RGB\n";
    } else if (ext == ".csv") {
      InspectCsv(path, args.schema);
    } else if (ext == ".txt" || ext == ".report") {
      const std::string text = sseld::ReadTextFile(path);
      if (text.find("f_macro") != std::string::npos) {
        std::cout << path.string() << ":\n"
                  << sseld::FormatReportTable(sseld::ParseReport(text));
      } else {
        const auto scene = sseld::ParseSceneSpec(text);
        std::cout << path.string() << ": scene, " << sseld::FormatNumber(scene.duration_s)
                  << " s, " << scene.events.size() << " events\n";
      }
    } else if (fs::is_directory(path)) {
      size_t frames = 0;
      for (const auto& entry : fs::directory_iterator(path)) {
        frames += entry.path().extension() == ".png" ? 1 : 0;
      }
      std::cout << path.string() << ": directory with " << frames << " PNG frames\n";
    } else {
      throw sseld::Error(sseld::ErrorKind::kInvalidInput,
                         "don't know how to inspect " + path.string());
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stereo SELD data construction, synthesis and evaluation toolkit", "sseld"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read `key = value` settings (any global flag name)");

  sseld::PipelineConfig config;
  app.add_option("--sample_rate", config.sample_rate, "Audio sample rate (Hz)")->capture_default_str();
  app.add_option("--clip_len_s", config.clip_len_s, "Clip length (s)")->capture_default_str();
  app.add_option("--label_frame_s", config.label_frame_s, "Label frame length (s), fixed")
      ->capture_default_str();
  app.add_option("--hfov_deg", config.hfov_deg, "Horizontal field of view (deg)")
      ->capture_default_str();
  app.add_option("--out_width", config.out_width, "Perspective frame width")->capture_default_str();
  app.add_option("--out_height", config.out_height, "Perspective frame height")
      ->capture_default_str();
  app.add_option("--fps", config.fps, "Video frame rate")->capture_default_str();
  app.add_option("--doa_threshold", config.doa_threshold_deg, "DOA gate (deg)")
      ->capture_default_str();
  app.add_option("--rde_threshold", config.rde_threshold, "Relative distance gate")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
  app.add_option("--jobs", config.jobs, "Worker threads (0 = all cores)")->capture_default_str();

  IndexArgs index_args;
  auto* index = app.add_subcommand("index", "Pair FOA recordings with metadata and frames");
  index->add_option("--audio-dir", index_args.audio_dir, "Directory of 4-channel FOA WAVs")
      ->required();
  index->add_option("--metadata-dir", index_args.metadata_dir, "Directory of source metadata CSVs")
      ->required();
  index->add_option("--frames-dir", index_args.frames_dir,
                    "Directory of per-recording equirect frame folders");
  index->add_option("--out", index_args.out, "Index CSV to write")->required();

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Draw clip definitions from an index");
  sample->add_option("--index", sample_args.index, "Index CSV")->required();
  sample->add_option("--count", sample_args.count, "Number of clips")->required();
  sample->add_option("--out", sample_args.out, "Manifest CSV to write")->required();
  sample->add_flag("--continuous-yaw", sample_args.continuous_yaw,
                   "Draw yaw continuously instead of whole degrees");

  ConvertArgs convert_args;
  auto* convert = app.add_subcommand("convert", "Build stereo clips, labels and frames");
  convert->add_option("--index", convert_args.index, "Index CSV")->required();
  convert->add_option("--manifest", convert_args.manifest, "Manifest CSV")->required();
  convert->add_option("--out-dir", convert_args.out_dir, "Output directory")->required();
  convert->add_flag("--no-video", convert_args.no_video, "Skip perspective frames");
  convert->add_flag("--float32", convert_args.float32, "Write 32-bit float WAVs");
  convert->add_flag("--nearest", convert_args.nearest, "Nearest-neighbour frame sampling");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Render synthetic FOA scenes with labels");
  synth->add_option("--bank", synth_args.bank, "Sample-bank manifest (class_id,wav_path)")
      ->required();
  synth->add_option("--scene", synth_args.scenes, "Scene description file(s)");
  synth->add_option("--count", synth_args.count, "Number of random scenes");
  synth->add_option("--out-dir", synth_args.out_dir, "Output directory")->required();
  synth->add_option("--prefix", synth_args.prefix, "Id prefix for random scenes");
  synth->add_option("--duration", synth_args.random.duration_s, "Random scene length (s)");
  synth->add_option("--max-events", synth_args.random.max_events, "Events per random scene");
  synth->add_option("--ambient", synth_args.random.ambient_noise_level, "Ambience level");
  synth->add_flag("--reverb", synth_args.random.reverb.enabled, "Add a diffuse tail");
  synth->add_flag("--pcm16", synth_args.pcm16, "Write 16-bit PCM instead of float");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Score prediction CSVs against references");
  eval->add_option("--pred-dir", eval_args.pred_dir, "Prediction CSV directory");
  eval->add_option("--ref-dir", eval_args.ref_dir, "Reference CSV directory");
  eval->add_option("--report", eval_args.report, "Write the key-value report here");
  eval->add_option("--rank", eval_args.rank, "Rank report files by macro F")->expected(1, -1);
  eval->add_flag("--onoff", eval_args.onoff, "Also require matching onscreen flags");
  eval->add_flag("--allow-missing", eval_args.allow_missing,
                 "Score absent prediction files as all-missed");

  EvalArgs bias_args;
  auto* bias = app.add_subcommand("bias-baseline",
                                  "Re-score with class-mean distances from training refs");
  bias->add_option("--train-ref-dir", bias_args.train_ref_dir, "Training reference CSVs")
      ->required();
  bias->add_option("--pred-dir", bias_args.pred_dir, "Prediction CSV directory")->required();
  bias->add_option("--ref-dir", bias_args.ref_dir, "Reference CSV directory")->required();
  bias->add_option("--report", bias_args.report, "Write the key-value report here");
  bias->add_option("--write-preds", bias_args.write_preds, "Write substituted predictions");
  bias->add_flag("--onoff", bias_args.onoff, "Also require matching onscreen flags");
  bias->add_flag("--allow-missing", bias_args.allow_missing,
                 "Score absent prediction files as all-missed");

  InspectArgs inspect_args;
  auto* inspect = app.add_subcommand("inspect", "Summarize WAV, CSV, PNG, report or scene files");
  inspect->add_option("paths", inspect_args.paths, "Files to inspect")->required();
  inspect->add_option("--schema", inspect_args.schema, "Metadata schema: auto|source|stereo")
      ->check(CLI::IsMember({"auto", "source", "stereo"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    config.Validate();
    if (*index) return RunIndex(index_args);
    if (*sample) return RunSample(config, sample_args);
    if (*convert) return RunConvert(config, convert_args);
    if (*synth) {
      if (synth_args.scenes.empty() && synth_args.count == 0) {
        std::cerr << "synth needs --scene or --count\n";
        return kExitUsage;
      }
      return RunSynth(config, synth_args);
    }
    if (*eval) return RunEval(config, eval_args);
    if (*bias) return RunBiasBaseline(config, bias_args);
    if (*inspect) return RunInspect(inspect_args);
  } catch (const sseld::Error& e) {
    std::cerr << "sseld: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "sseld: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
