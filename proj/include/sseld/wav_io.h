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

// RIFF/WAVE reading and writing. Reads 16/24/32-bit integer PCM and 32-bit
// float (plain or WAVE_FORMAT_EXTENSIBLE) normalized to [-1, 1]; writes
// 16-bit PCM or 32-bit float.

#ifndef SSELD_WAV_IO_H_
#define SSELD_WAV_IO_H_

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "sseld/core_audio.h"
#include "sseld/error.h"

namespace sseld {

enum class WavSampleFormat { kPcm16, kPcm24, kPcm32, kFloat32 };

struct WavInfo {
  int num_channels = 0;
  int sample_rate = 0;
  WavSampleFormat format = WavSampleFormat::kPcm16;
  size_t num_frames = 0;
  size_t data_offset = 0;  // byte offset of the first sample in the file

  int bytes_per_sample() const {
    switch (format) {
      case WavSampleFormat::kPcm16:
        return 2;
      case WavSampleFormat::kPcm24:
        return 3;
      case WavSampleFormat::kPcm32:
      case WavSampleFormat::kFloat32:
        return 4;
    }
    return 0;
  }
  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(num_frames) / sample_rate
                           : 0.0;
  }
};

// Planar float audio with any channel count.
struct WavAudio {
  int sample_rate = kDefaultSampleRate;
  std::vector<std::vector<float>> channels;

  size_t num_frames() const { return channels.empty() ? 0 : channels[0].size(); }
};

namespace wav_internal {

inline uint32_t ReadLe32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

inline uint16_t ReadLe16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

inline void AppendLe(std::vector<uint8_t>& out, uint32_t value, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    out.push_back(static_cast<uint8_t>((value >> (8 * i)) & 0xFF));
  }
}

inline float DecodeSample(const uint8_t* p, WavSampleFormat format) {
  switch (format) {
    case WavSampleFormat::kPcm16:
      return static_cast<float>(static_cast<int16_t>(ReadLe16(p)) / 32768.0);
    case WavSampleFormat::kPcm24: {
      int32_t v = static_cast<int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
      if (v & 0x800000) v -= 0x1000000;
      return static_cast<float>(v / 8388608.0);
    }
    case WavSampleFormat::kPcm32:
      return static_cast<float>(static_cast<int32_t>(ReadLe32(p)) /
                                2147483648.0);
    case WavSampleFormat::kFloat32:
      return std::bit_cast<float>(ReadLe32(p));
  }
  return 0.0f;
}

// Parses the RIFF header and chunk list. `header` must hold at least the
// bytes up to the start of the data chunk payload.
inline WavInfo ParseHeader(std::span<const uint8_t> header,
                           const std::string& name) {
  const auto fail = [&](const std::string& what) {
    return Error(ErrorKind::kIo, name + ": " + what);
  };
  if (header.size() < 12 || std::memcmp(header.data(), "RIFF", 4) != 0 ||
      std::memcmp(header.data() + 8, "WAVE", 4) != 0) {
    throw fail("not a RIFF/WAVE file");
  }
  WavInfo info;
  bool have_fmt = false;
  int bits = 0;
  int format_tag = 0;
  size_t pos = 12;
  while (pos + 8 <= header.size()) {
    const uint8_t* chunk = header.data() + pos;
    const uint32_t size = ReadLe32(chunk + 4);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || pos + 8 + size > header.size()) {
        throw fail("truncated fmt chunk");
      }
      const uint8_t* fmt = chunk + 8;
      format_tag = ReadLe16(fmt);
      info.num_channels = ReadLe16(fmt + 2);
      info.sample_rate = static_cast<int>(ReadLe32(fmt + 4));
      bits = ReadLe16(fmt + 14);
      if (format_tag == 0xFFFE) {
        if (size < 40) throw fail("truncated WAVE_FORMAT_EXTENSIBLE header");
        format_tag = ReadLe16(fmt + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw fail("data chunk before fmt chunk");
      if (format_tag == 1 && bits == 16) {
        info.format = WavSampleFormat::kPcm16;
      } else if (format_tag == 1 && bits == 24) {
        info.format = WavSampleFormat::kPcm24;
      } else if (format_tag == 1 && bits == 32) {
        info.format = WavSampleFormat::kPcm32;
      } else if (format_tag == 3 && bits == 32) {
        info.format = WavSampleFormat::kFloat32;
      } else {
        throw fail("unsupported sample format (tag " +
                   std::to_string(format_tag) + ", " + std::to_string(bits) +
                   " bits)");
      }
      if (info.num_channels <= 0 || info.sample_rate <= 0) {
        throw fail("invalid channel count or sample rate");
      }
      info.data_offset = pos + 8;
      info.num_frames =
          size / static_cast<size_t>(info.bytes_per_sample() * info.num_channels);
      return info;
    }
    pos += 8 + size + (size & 1);
  }
  throw fail("no data chunk found");
}

inline std::vector<uint8_t> ReadBytes(std::ifstream& stream, size_t offset,
                                      size_t count) {
  std::vector<uint8_t> bytes(count);
  stream.seekg(static_cast<std::streamoff>(offset));
  stream.read(reinterpret_cast<char*>(bytes.data()),
              static_cast<std::streamsize>(count));
  bytes.resize(static_cast<size_t>(std::max<std::streamsize>(stream.gcount(), 0)));
  stream.clear();
  return bytes;
}

}  // namespace wav_internal

inline WavInfo ParseWavHeader(std::span<const uint8_t> bytes,
                              const std::string& name = "<memory>") {
  return wav_internal::ParseHeader(bytes, name);
}

// Decodes an in-memory WAV image.
inline WavAudio DecodeWav(std::span<const uint8_t> bytes,
                          const std::string& name = "<memory>") {
  const WavInfo info = wav_internal::ParseHeader(bytes, name);
  const size_t stride =
      static_cast<size_t>(info.bytes_per_sample()) * info.num_channels;
  const size_t available = (bytes.size() - info.data_offset) / stride;
  const size_t frames = std::min(info.num_frames, available);
  WavAudio audio;
  audio.sample_rate = info.sample_rate;
  audio.channels.assign(info.num_channels, std::vector<float>(frames));
  for (size_t n = 0; n < frames; ++n) {
    const uint8_t* frame = bytes.data() + info.data_offset + n * stride;
    for (int c = 0; c < info.num_channels; ++c) {
      audio.channels[c][n] = wav_internal::DecodeSample(
          frame + c * info.bytes_per_sample(), info.format);
    }
  }
  return audio;
}

inline WavInfo ReadWavInfo(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  // Header chunks (fmt, LIST, bext, ...) normally sit in the first few KiB;
  // grow the window if the data chunk is further in.
  for (size_t window = 4096; window <= (size_t{1} << 24); window *= 8) {
    const auto bytes = wav_internal::ReadBytes(stream, 0, window);
    try {
      return wav_internal::ParseHeader(bytes, path.string());
    } catch (const Error&) {
      if (bytes.size() < window) throw;
    }
  }
  throw Error(ErrorKind::kIo, path.string() + ": data chunk not found");
}

// Reads `count` frames starting at `begin` without loading the whole file.
inline WavAudio ReadWavFrames(const std::filesystem::path& path, size_t begin,
                              size_t count) {
  const WavInfo info = ReadWavInfo(path);
  if (begin > info.num_frames || count > info.num_frames - begin) {
    throw Error(ErrorKind::kInvalidInput,
                path.string() + ": requested frames [" + std::to_string(begin) +
                    ", " + std::to_string(begin + count) + ") exceed length " +
                    std::to_string(info.num_frames));
  }
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  const size_t stride =
      static_cast<size_t>(info.bytes_per_sample()) * info.num_channels;
  const auto bytes = wav_internal::ReadBytes(
      stream, info.data_offset + begin * stride, count * stride);
  if (bytes.size() != count * stride) {
    throw Error(ErrorKind::kIo, path.string() + ": truncated data chunk");
  }
  WavAudio audio;
  audio.sample_rate = info.sample_rate;
  audio.channels.assign(info.num_channels, std::vector<float>(count));
  for (size_t n = 0; n < count; ++n) {
    for (int c = 0; c < info.num_channels; ++c) {
      audio.channels[c][n] = wav_internal::DecodeSample(
          bytes.data() + n * stride + c * info.bytes_per_sample(), info.format);
    }
  }
  return audio;
}

inline WavAudio ReadWav(const std::filesystem::path& path) {
  const WavInfo info = ReadWavInfo(path);
  return ReadWavFrames(path, 0, info.num_frames);
}

struct WavEncodeResult {
  std::vector<uint8_t> bytes;
  size_t clipped_samples = 0;  // integer formats only
};

inline WavEncodeResult EncodeWav(const WavAudio& audio, WavSampleFormat format) {
  using wav_internal::AppendLe;
  if (format != WavSampleFormat::kPcm16 && format != WavSampleFormat::kFloat32) {
    throw Error(ErrorKind::kInvalidInput,
                "only 16-bit PCM and 32-bit float output are supported");
  }
  if (audio.channels.empty()) {
    throw Error(ErrorKind::kInvalidInput, "cannot write audio with no channels");
  }
  const size_t frames = audio.num_frames();
  for (const auto& channel : audio.channels) {
    if (channel.size() != frames) {
      throw Error(ErrorKind::kInvalidInput, "channel lengths differ");
    }
  }
  const int channels = static_cast<int>(audio.channels.size());
  const int bytes_per_sample = format == WavSampleFormat::kPcm16 ? 2 : 4;
  const uint32_t data_size =
      static_cast<uint32_t>(frames * channels * bytes_per_sample);

  WavEncodeResult result;
  auto& out = result.bytes;
  out.reserve(44 + data_size);
  for (char c : std::string("RIFF")) out.push_back(static_cast<uint8_t>(c));
  AppendLe(out, 36 + data_size, 4);
  for (char c : std::string("WAVEfmt ")) out.push_back(static_cast<uint8_t>(c));
  AppendLe(out, 16, 4);
  AppendLe(out, format == WavSampleFormat::kPcm16 ? 1 : 3, 2);
  AppendLe(out, static_cast<uint32_t>(channels), 2);
  AppendLe(out, static_cast<uint32_t>(audio.sample_rate), 4);
  AppendLe(out, static_cast<uint32_t>(audio.sample_rate * channels * bytes_per_sample), 4);
  AppendLe(out, static_cast<uint32_t>(channels * bytes_per_sample), 2);
  AppendLe(out, static_cast<uint32_t>(bytes_per_sample * 8), 2);
  for (char c : std::string("data")) out.push_back(static_cast<uint8_t>(c));
  AppendLe(out, data_size, 4);

  for (size_t n = 0; n < frames; ++n) {
    for (int c = 0; c < channels; ++c) {
      const float sample = audio.channels[c][n];
      if (format == WavSampleFormat::kFloat32) {
        AppendLe(out, std::bit_cast<uint32_t>(sample), 4);
        continue;
      }
      double scaled = std::nearbyint(static_cast<double>(sample) * 32768.0);
      if (scaled > 32767.0 || scaled < -32768.0 || std::isnan(scaled)) {
        ++result.clipped_samples;
        scaled = std::isnan(scaled) ? 0.0 : std::clamp(scaled, -32768.0, 32767.0);
      }
      AppendLe(out, static_cast<uint16_t>(static_cast<int16_t>(scaled)), 2);
    }
  }
  return result;
}

// Returns the number of samples clipped to the 16-bit range.
inline size_t WriteWav(const std::filesystem::path& path, const WavAudio& audio,
                       WavSampleFormat format = WavSampleFormat::kPcm16) {
  const WavEncodeResult encoded = EncodeWav(audio, format);
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  stream.write(reinterpret_cast<const char*>(encoded.bytes.data()),
               static_cast<std::streamsize>(encoded.bytes.size()));
  if (!stream) throw Error(ErrorKind::kIo, "short write to " + path.string());
  return encoded.clipped_samples;
}

template <typename T, int kChannels>
WavAudio ToWavAudio(const PlanarClip<T, kChannels>& clip) {
  WavAudio audio;
  audio.sample_rate = clip.sample_rate();
  for (int c = 0; c < kChannels; ++c) {
    const auto channel = clip.channel(c);
    audio.channels.emplace_back(channel.begin(), channel.end());
  }
  return audio;
}

inline FoaClip ToFoaClip(WavAudio audio, const std::string& name = "<memory>") {
  if (audio.channels.size() != kNumFoaChannels) {
    throw Error(ErrorKind::kInvalidInput,
                name + ": expected 4 FOA channels, found " +
                    std::to_string(audio.channels.size()));
  }
  std::array<std::vector<float>, kNumFoaChannels> channels;
  for (int c = 0; c < kNumFoaChannels; ++c) channels[c] = std::move(audio.channels[c]);
  return FoaClip(std::move(channels), audio.sample_rate);
}

inline FoaClip ReadFoaWav(const std::filesystem::path& path) {
  return ToFoaClip(ReadWav(path), path.string());
}

}  // namespace sseld

#endif  // SSELD_WAV_IO_H_
