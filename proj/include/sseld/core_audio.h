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

// First-order Ambisonics buffers (ACN channel order, SN3D normalization),
// plane-wave encoding, yaw rotation and the mid-side stereo downmix.

#ifndef SSELD_CORE_AUDIO_H_
#define SSELD_CORE_AUDIO_H_

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sseld/angles.h"
#include "sseld/error.h"

namespace sseld {

inline constexpr int kDefaultSampleRate = 24000;

// ACN order for order 1.
enum FoaChannel : int { kW = 0, kY = 1, kZ = 2, kX = 3 };
inline constexpr int kNumFoaChannels = 4;

enum StereoChannel : int { kLeft = 0, kRight = 1 };

struct SphericalDirection {
  double azimuth_deg = 0.0;    // [-180, 180), left = +90
  double elevation_deg = 0.0;  // [-90, 90], up-positive

  bool IsValid() const {
    return std::isfinite(azimuth_deg) && std::isfinite(elevation_deg) &&
           azimuth_deg >= -180.0 && azimuth_deg < 180.0 &&
           elevation_deg >= -90.0 && elevation_deg <= 90.0;
  }
};

// Fixed-channel-count audio buffer with equal-length planar channels.
template <typename T, int kChannels>
class PlanarClip {
 public:
  using Sample = T;
  static constexpr int kNumChannels = kChannels;

  PlanarClip() = default;

  explicit PlanarClip(size_t num_samples,
                      int sample_rate = kDefaultSampleRate)
      : sample_rate_(sample_rate) {
    CheckRate(sample_rate);
    for (auto& channel : channels_) channel.assign(num_samples, T{0});
  }

  PlanarClip(std::array<std::vector<T>, kChannels> channels, int sample_rate)
      : channels_(std::move(channels)), sample_rate_(sample_rate) {
    CheckRate(sample_rate);
    for (const auto& channel : channels_) {
      if (channel.size() != channels_[0].size()) {
        throw Error(ErrorKind::kInvalidInput,
                    "channels must all have the same length");
      }
    }
  }

  size_t num_samples() const { return channels_[0].size(); }
  int sample_rate() const { return sample_rate_; }
  double duration_s() const {
    return static_cast<double>(num_samples()) / sample_rate_;
  }

  std::span<const T> channel(int index) const { return channels_.at(index); }
  std::span<T> channel(int index) { return channels_.at(index); }

  const std::array<std::vector<T>, kChannels>& channels() const {
    return channels_;
  }

  // Copies [begin, begin + count); the range must lie inside the clip.
  PlanarClip Slice(size_t begin, size_t count) const {
    if (begin > num_samples() || count > num_samples() - begin) {
      throw Error(ErrorKind::kInvalidInput, "slice exceeds clip length");
    }
    std::array<std::vector<T>, kChannels> out;
    for (int c = 0; c < kChannels; ++c) {
      const auto first = channels_[c].begin() + static_cast<long>(begin);
      out[c].assign(first, first + static_cast<long>(count));
    }
    return PlanarClip(std::move(out), sample_rate_);
  }

  // Sample-wise sum; lengths and rates must agree.
  PlanarClip& operator+=(const PlanarClip& other) {
    if (other.num_samples() != num_samples() ||
        other.sample_rate_ != sample_rate_) {
      throw Error(ErrorKind::kInvalidInput, "cannot mix clips of different shape");
    }
    for (int c = 0; c < kChannels; ++c) {
      for (size_t n = 0; n < num_samples(); ++n) {
        channels_[c][n] += other.channels_[c][n];
      }
    }
    return *this;
  }

  bool operator==(const PlanarClip&) const = default;

 private:
  static void CheckRate(int sample_rate) {
    if (sample_rate <= 0) {
      throw Error(ErrorKind::kInvalidInput, "sample rate must be positive");
    }
  }

  std::array<std::vector<T>, kChannels> channels_;
  int sample_rate_ = kDefaultSampleRate;
};

template <typename T = float>
using BasicFoaClip = PlanarClip<T, kNumFoaChannels>;
template <typename T = float>
using BasicStereoClip = PlanarClip<T, 2>;

using FoaClip = BasicFoaClip<float>;
using StereoClip = BasicStereoClip<float>;

// SN3D order-1 spherical harmonics scaled by `gain`, in ACN order.
inline std::array<double, kNumFoaChannels> Sn3dGains(
    const SphericalDirection& dir, double gain = 1.0) {
  const double cos_el = CosDeg(dir.elevation_deg);
  std::array<double, kNumFoaChannels> gains{};
  gains[kW] = gain;
  gains[kY] = gain * SinDeg(dir.azimuth_deg) * cos_el;
  gains[kZ] = gain * SinDeg(dir.elevation_deg);
  gains[kX] = gain * CosDeg(dir.azimuth_deg) * cos_el;
  return gains;
}

template <std::floating_point T>
BasicFoaClip<T> EncodePlaneWave(std::span<const T> signal,
                                const SphericalDirection& dir, double gain = 1.0,
                                int sample_rate = kDefaultSampleRate) {
  if (signal.empty()) {
    throw Error(ErrorKind::kInvalidInput, "cannot encode an empty signal");
  }
  if (!dir.IsValid()) {
    throw Error(ErrorKind::kInvalidInput, "direction out of range");
  }
  const auto gains = Sn3dGains(dir, gain);
  BasicFoaClip<T> out(signal.size(), sample_rate);
  for (int c = 0; c < kNumFoaChannels; ++c) {
    auto dst = out.channel(c);
    for (size_t n = 0; n < signal.size(); ++n) {
      dst[n] = static_cast<T>(static_cast<double>(signal[n]) * gains[c]);
    }
  }
  return out;
}

template <std::floating_point T>
BasicFoaClip<T> EncodePlaneWave(const std::vector<T>& signal,
                                const SphericalDirection& dir, double gain = 1.0,
                                int sample_rate = kDefaultSampleRate) {
  return EncodePlaneWave(std::span<const T>(signal), dir, gain, sample_rate);
}

// Rotates the sound field about the vertical axis so that the direction at
// azimuth `yaw_deg` becomes the new front: a plane wave at azimuth a ends up
// at a - yaw. W and Z pass through untouched.
template <std::floating_point T>
BasicFoaClip<T> RotateYaw(const BasicFoaClip<T>& foa, double yaw_deg) {
  if (!std::isfinite(yaw_deg)) {
    throw Error(ErrorKind::kInvalidInput, "yaw must be finite");
  }
  const double c = CosDeg(yaw_deg);
  const double s = SinDeg(yaw_deg);
  BasicFoaClip<T> out = foa;
  const auto x = foa.channel(kX);
  const auto y = foa.channel(kY);
  auto x_out = out.channel(kX);
  auto y_out = out.channel(kY);
  for (size_t n = 0; n < foa.num_samples(); ++n) {
    const double xn = x[n];
    const double yn = y[n];
    x_out[n] = static_cast<T>(c * xn + s * yn);
    y_out[n] = static_cast<T>(-s * xn + c * yn);
  }
  return out;
}

struct Orientation {
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
};

// Only yaw is supported; the viewing elevation of the pipeline is fixed at 0.
template <std::floating_point T>
BasicFoaClip<T> Rotate(const BasicFoaClip<T>& foa, const Orientation& o) {
  if (o.pitch_deg != 0.0 || o.roll_deg != 0.0) {
    throw Error(ErrorKind::kInvalidInput,
                "pitch/roll rotation is not supported (yaw only)");
  }
  return RotateYaw(foa, o.yaw_deg);
}

// Coincident mid-side pair of cardioids aimed at +90 (L) and -90 (R):
// L = W + Y, R = W - Y.
template <std::floating_point T>
BasicStereoClip<T> FoaToStereo(const BasicFoaClip<T>& foa) {
  BasicStereoClip<T> out(foa.num_samples(), foa.sample_rate());
  const auto w = foa.channel(kW);
  const auto y = foa.channel(kY);
  auto left = out.channel(kLeft);
  auto right = out.channel(kRight);
  for (size_t n = 0; n < foa.num_samples(); ++n) {
    left[n] = w[n] + y[n];
    right[n] = w[n] - y[n];
  }
  return out;
}

}  // namespace sseld

#endif  // SSELD_CORE_AUDIO_H_
