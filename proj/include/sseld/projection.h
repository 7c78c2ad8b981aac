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

// Equirectangular panorama to pinhole perspective view.
//
// Conventions shared with the audio labels:
//  * longitude is left-positive; equirect column c (continuous, pixel
//    centres at c + 0.5) has lon = 180 - (c + 0.5) * 360 / W, so the image
//    centre looks to lon 0 and the left half of the panorama is to the left;
//  * latitude row r has lat = 90 - (r + 0.5) * 180 / H;
//  * the perspective camera has its principal point at pixel index
//    (out_w / 2, out_h / 2) and focal length (out_w / 2) / tan(hfov / 2).

#ifndef SSELD_PROJECTION_H_
#define SSELD_PROJECTION_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sseld/angles.h"
#include "sseld/error.h"
#include "sseld/image.h"

namespace sseld {

inline constexpr int kDefaultOutWidth = 640;
inline constexpr int kDefaultOutHeight = 360;
inline constexpr double kDefaultHfovDeg = 100.0;
inline constexpr double kVideoFps = 29.97;

enum class Interpolation { kBilinear, kNearest };

struct LonLat {
  double lon_deg = 0.0;
  double lat_deg = 0.0;
};

struct PixelCoord {
  double col = 0.0;
  double row = 0.0;
};

inline double FocalLength(double hfov_deg, int out_w) {
  return (out_w / 2.0) / std::tan(hfov_deg / 2.0 * kDegToRad);
}

inline double ImpliedVerticalFov(double hfov_deg, int out_w, int out_h) {
  return 2.0 * std::atan(std::tan(hfov_deg / 2.0 * kDegToRad) * out_h / out_w) *
         kRadToDeg;
}

// Fractional equirect pixel coordinates of a direction.
inline PixelCoord EquirectCoord(const LonLat& dir, int eq_w, int eq_h) {
  return {(180.0 - dir.lon_deg) / 360.0 * eq_w - 0.5,
          (90.0 - dir.lat_deg) / 180.0 * eq_h - 0.5};
}

inline LonLat EquirectDirection(const PixelCoord& p, int eq_w, int eq_h) {
  return {WrapAzimuth(180.0 - (p.col + 0.5) * 360.0 / eq_w),
          90.0 - (p.row + 0.5) * 180.0 / eq_h};
}

// Precomputed sampling positions for one (yaw, hfov, size) combination.
class ProjectionMap {
 public:
  ProjectionMap(double yaw_deg, int eq_w, int eq_h,
                double hfov_deg = kDefaultHfovDeg, int out_w = kDefaultOutWidth,
                int out_h = kDefaultOutHeight)
      : yaw_deg_(yaw_deg), hfov_deg_(hfov_deg), out_w_(out_w), out_h_(out_h),
        eq_w_(eq_w), eq_h_(eq_h) {
    if (eq_h <= 0 || eq_w != 2 * eq_h) {
      throw Error(ErrorKind::kConfiguration,
                  "equirect frame must be 2:1, got " + std::to_string(eq_w) +
                      "x" + std::to_string(eq_h));
    }
    if (out_w <= 0 || out_h <= 0) {
      throw Error(ErrorKind::kConfiguration, "output dimensions must be positive");
    }
    if (!(hfov_deg > 0.0 && hfov_deg < 180.0)) {
      throw Error(ErrorKind::kConfiguration, "hfov must lie in (0, 180) degrees");
    }
    if (!std::isfinite(yaw_deg)) {
      throw Error(ErrorKind::kConfiguration, "yaw must be finite");
    }
    focal_ = FocalLength(hfov_deg, out_w);
    coords_.resize(static_cast<size_t>(out_w) * out_h);
    for (int v = 0; v < out_h; ++v) {
      for (int u = 0; u < out_w; ++u) {
        coords_[static_cast<size_t>(v) * out_w + u] =
            EquirectCoord(Direction(u, v), eq_w, eq_h);
      }
    }
  }

  // Viewing direction through output pixel (u, v).
  LonLat Direction(double u, double v) const {
    const double right = (u - out_w_ / 2.0) / focal_;
    const double down = (v - out_h_ / 2.0) / focal_;
    const double lon = yaw_deg_ - std::atan(right) * kRadToDeg;
    const double lat = std::atan2(-down, std::sqrt(1.0 + right * right)) * kRadToDeg;
    return {WrapAzimuth(lon), lat};
  }

  // Inverse pinhole: output pixel position of a direction in front of the
  // camera.
  PixelCoord PixelOf(const LonLat& dir) const {
    const double rel = WrapAzimuth(dir.lon_deg - yaw_deg_) * kDegToRad;
    const double right = -std::tan(rel);
    const double down =
        -std::tan(dir.lat_deg * kDegToRad) * std::sqrt(1.0 + right * right);
    return {out_w_ / 2.0 + focal_ * right, out_h_ / 2.0 + focal_ * down};
  }

  const PixelCoord& at(int u, int v) const {
    return coords_[static_cast<size_t>(v) * out_w_ + u];
  }

  double yaw_deg() const { return yaw_deg_; }
  double hfov_deg() const { return hfov_deg_; }
  double focal() const { return focal_; }
  double vfov_deg() const { return ImpliedVerticalFov(hfov_deg_, out_w_, out_h_); }
  int out_width() const { return out_w_; }
  int out_height() const { return out_h_; }
  int eq_width() const { return eq_w_; }
  int eq_height() const { return eq_h_; }

 private:
  double yaw_deg_;
  double hfov_deg_;
  int out_w_;
  int out_h_;
  int eq_w_;
  int eq_h_;
  double focal_ = 1.0;
  std::vector<PixelCoord> coords_;
};

namespace projection_internal {

inline int WrapColumn(long col, int width) {
  long c = col % width;
  if (c < 0) c += width;
  return static_cast<int>(c);
}

}  // namespace projection_internal

// Samples `frame` through `map`. Columns wrap around the seam, rows clamp at
// the poles.
inline RgbImage Project(const RgbImage& frame, const ProjectionMap& map,
                        Interpolation interp = Interpolation::kBilinear) {
  using projection_internal::WrapColumn;
  if (frame.width != map.eq_width() || frame.height != map.eq_height()) {
    throw Error(ErrorKind::kInvalidInput,
                "frame is " + std::to_string(frame.width) + "x" +
                    std::to_string(frame.height) + " but the map expects " +
                    std::to_string(map.eq_width()) + "x" +
                    std::to_string(map.eq_height()));
  }
  RgbImage out(map.out_width(), map.out_height());
  const int w = frame.width;
  const int h = frame.height;
  for (int v = 0; v < map.out_height(); ++v) {
    for (int u = 0; u < map.out_width(); ++u) {
      const PixelCoord& p = map.at(u, v);
      uint8_t* dst = out.at(u, v);
      if (interp == Interpolation::kNearest) {
        const int col = WrapColumn(std::lround(p.col), w);
        const int row = static_cast<int>(std::clamp<long>(std::lround(p.row), 0, h - 1));
        const uint8_t* src = frame.at(col, row);
        dst[0] = src[0];
        dst[1] = src[1];
        dst[2] = src[2];
        continue;
      }
      const double col_floor = std::floor(p.col);
      const double fx = p.col - col_floor;
      const int c0 = WrapColumn(static_cast<long>(col_floor), w);
      const int c1 = WrapColumn(static_cast<long>(col_floor) + 1, w);
      const double row = std::clamp(p.row, 0.0, static_cast<double>(h - 1));
      const double row_floor = std::floor(row);
      const double fy = row - row_floor;
      const int r0 = static_cast<int>(row_floor);
      const int r1 = std::min(r0 + 1, h - 1);
      for (int ch = 0; ch < 3; ++ch) {
        const double top = frame.at(c0, r0)[ch] * (1.0 - fx) + frame.at(c1, r0)[ch] * fx;
        const double bottom =
            frame.at(c0, r1)[ch] * (1.0 - fx) + frame.at(c1, r1)[ch] * fx;
        const double value = top * (1.0 - fy) + bottom * fy;
        dst[ch] = static_cast<uint8_t>(std::clamp(std::lround(value), 0L, 255L));
      }
    }
  }
  return out;
}

// --- video frame timing --------------------------------------------------

inline double FrameTime(long frame_index, double fps = kVideoFps) {
  return static_cast<double>(frame_index) / fps;
}

// Frames per clip: floor(len * fps) plus the frame at t = 0 (150 for 5 s).
inline int FramesPerClip(double clip_len_s, double fps = kVideoFps) {
  return static_cast<int>(std::floor(clip_len_s * fps + 1e-9)) + 1;
}

// Source frame index that is nearest to output frame `k` of a clip that
// starts at `start_s`.
inline long SourceFrameIndex(double start_s, int k, double fps = kVideoFps) {
  return std::lround(start_s * fps) + k;
}

inline std::string FrameFileName(long index) {
  char name[32];
  std::snprintf(name, sizeof(name), "%06ld.png", index);
  return name;
}

}  // namespace sseld

#endif  // SSELD_PROJECTION_H_
