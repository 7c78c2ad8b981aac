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


#include "sseld/projection.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>

#include "gtest/gtest.h"
#include "sseld/image.h"

namespace sseld {
namespace {

RgbImage RandomPanorama(int h, uint32_t seed) {
  std::mt19937 gen(seed);
  RgbImage image(2 * h, h);
  for (auto& p : image.pixels) p = static_cast<uint8_t>(gen() & 0xFF);
  return image;
}

// Column of the brightest pixel in row `v` (red channel).
int BrightestColumn(const RgbImage& image, int v) {
  int best = 0;
  for (int u = 1; u < image.width; ++u) {
    if (image.at(u, v)[0] > image.at(best, v)[0]) best = u;
  }
  return best;
}

int MaxAbsDifference(const RgbImage& a, int ua, const RgbImage& b, int ub, int v) {
  int worst = 0;
  for (int ch = 0; ch < 3; ++ch) {
    worst = std::max(worst, std::abs(a.at(ua, v)[ch] - b.at(ub, v)[ch]));
  }
  return worst;
}

TEST(ProjectionMap, CenterPixelIsOpticalAxis) {
  for (double yaw : {0.0, 37.0, -120.5, 179.0}) {
    const ProjectionMap map(yaw, 720, 360);
    const LonLat dir = map.Direction(320, 180);
    EXPECT_EQ(dir.lon_deg, yaw);
    EXPECT_EQ(dir.lat_deg, 0.0);
  }
}

TEST(ProjectionMap, LeftEdgeIsHalfFovLeft) {
  for (double yaw : {0.0, 20.0, -60.0}) {
    const ProjectionMap map(yaw, 720, 360);
    EXPECT_NEAR(map.Direction(0, 180).lon_deg, yaw + 50.0, 1e-9);
    EXPECT_NEAR(map.Direction(640, 180).lon_deg, yaw - 50.0, 1e-9);
    EXPECT_NEAR(map.Direction(0, 180).lat_deg, 0.0, 1e-12);
  }
}

TEST(ProjectionMap, ImpliedVerticalFov) {
  const double expected = 2.0 * std::atan(std::tan(50.0 * kDegToRad) * 0.5625) * kRadToDeg;
  const ProjectionMap map(0.0, 720, 360);
  EXPECT_NEAR(map.vfov_deg(), expected, 1e-12);
  EXPECT_NEAR(map.vfov_deg(), 67.7, 0.1);
  EXPECT_NEAR(map.Direction(320, 0).lat_deg, expected / 2.0, 1e-9);
  EXPECT_NEAR(map.focal(), 320.0 / std::tan(50.0 * kDegToRad), 1e-12);
}

TEST(ProjectionMap, RoundTripWithinHalfPixel) {
  const ProjectionMap map(-75.0, 720, 360);
  double worst = 0.0;
  for (int v = 0; v < 360; ++v) {
    for (int u = 0; u < 640; ++u) {
      const PixelCoord back = map.PixelOf(map.Direction(u, v));
      worst = std::max({worst, std::abs(back.col - u), std::abs(back.row - v)});
    }
  }
  EXPECT_LT(worst, 0.5);
  EXPECT_LT(worst, 1e-6);
}

TEST(ProjectionMap, EquirectCoordinatesInvert) {
  for (double lon : {-180.0, -91.5, 0.0, 45.25, 179.75}) {
    for (double lat : {-89.0, 0.0, 33.3}) {
      const LonLat back = EquirectDirection(EquirectCoord({lon, lat}, 1000, 500), 1000, 500);
      EXPECT_NEAR(back.lon_deg, lon, 1e-9);
      EXPECT_NEAR(back.lat_deg, lat, 1e-9);
    }
  }
  // Column 0 covers the longitudes just left of the back direction.
  const PixelCoord edge = EquirectCoord({180.0 - 0.25, 0.0}, 720, 360);
  EXPECT_NEAR(edge.col, 0.0, 1e-12);
  EXPECT_NEAR(edge.row, 179.5, 1e-12);
}

TEST(ProjectionMap, RejectsBadGeometry) {
  EXPECT_THROW(ProjectionMap(0.0, 700, 360), Error);
  EXPECT_THROW(ProjectionMap(0.0, 720, 360, 180.0), Error);
  EXPECT_THROW(ProjectionMap(0.0, 720, 360, 0.0), Error);
  EXPECT_THROW(ProjectionMap(0.0, 720, 360, 100.0, 0, 360), Error);
  EXPECT_THROW(ProjectionMap(std::nan(""), 720, 360), Error);
}

TEST(Project, ConstantColor) {
  const RgbImage pano(720, 360, 77);
  const auto out = Project(pano, ProjectionMap(123.0, 720, 360));
  EXPECT_EQ(out.width, 640);
  EXPECT_EQ(out.height, 360);
  EXPECT_EQ(out, RgbImage(640, 360, 77));
  EXPECT_EQ(Project(pano, ProjectionMap(5.0, 720, 360), Interpolation::kNearest), out);
}

TEST(Project, DimensionMismatch) {
  EXPECT_THROW(Project(RgbImage(800, 400), ProjectionMap(0.0, 720, 360)), Error);
}

TEST(Project, StripeLandsAtPredictedColumn) {
  const int h = 1800, w = 3600;
  for (double yaw : {0.0, 30.0, -100.0, 180.0}) {
    for (double offset : {0.0, 10.0, -25.0, 40.0}) {
      // Put a 1-pixel stripe on the column nearest the requested longitude.
      const long col = std::lround((180.0 - WrapAzimuth(yaw + offset)) / 360.0 * w - 0.5);
      const int stripe = projection_internal::WrapColumn(col, w);
      const double lon = EquirectDirection({static_cast<double>(stripe), 0.0}, w, h).lon_deg;
      RgbImage pano(w, h, 0);
      for (int row = 0; row < h; ++row) pano.at(stripe, row)[0] = 255;
      const ProjectionMap map(yaw, w, h);
      const auto out = Project(pano, map);
      const double predicted =
          320.0 - map.focal() * std::tan(WrapAzimuth(lon - yaw) * kDegToRad);
      EXPECT_LE(std::abs(BrightestColumn(out, 180) - predicted), 1.0)
          << "yaw " << yaw << " offset " << offset;
      if (offset == 0.0) {
        EXPECT_LE(std::abs(BrightestColumn(out, 180) - 320), 1);
      }
    }
  }
}

TEST(Project, MirroredPanoramaGivesMirroredView) {
  const int h = 360, w = 720;
  const auto pano = RandomPanorama(h, 1);
  // Reflect longitudes across the left-right axis: lon -> 180 - lon.
  RgbImage mirrored(w, h);
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      const int src = projection_internal::WrapColumn(w / 2 - 1 - col, w);
      std::copy_n(pano.at(src, row), 3, mirrored.at(col, row));
    }
  }
  const auto front = Project(pano, ProjectionMap(0.0, w, h));
  const auto back = Project(mirrored, ProjectionMap(180.0, w, h));
  int worst = 0;
  for (int v = 0; v < 360; ++v) {
    for (int u = 1; u < 640; ++u) worst = std::max(worst, MaxAbsDifference(front, 640 - u, back, u, v));
  }
  EXPECT_LE(worst, 1);
}

TEST(Project, SeamContinuityAtBack) {
  const int h = 360, w = 720;
  const auto pano = RandomPanorama(h, 2);
  RgbImage rolled(w, h);
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      std::copy_n(pano.at((col + w / 2) % w, row), 3, rolled.at(col, row));
    }
  }
  const auto across_seam = Project(pano, ProjectionMap(180.0, w, h));
  const auto reference = Project(rolled, ProjectionMap(0.0, w, h));
  int worst = 0;
  for (int v = 0; v < 360; ++v) {
    for (int u = 0; u < 640; ++u) worst = std::max(worst, MaxAbsDifference(across_seam, u, reference, u, v));
  }
  EXPECT_LE(worst, 1);
}

TEST(Project, NearestSamplesExistingPixels) {
  const auto pano = RandomPanorama(180, 3);
  const ProjectionMap map(42.0, 360, 180);
  const auto out = Project(pano, map, Interpolation::kNearest);
  for (int v = 0; v < 360; v += 37) {
    for (int u = 0; u < 640; u += 41) {
      const PixelCoord p = map.at(u, v);
      const int col = projection_internal::WrapColumn(std::lround(p.col), 360);
      const int row = static_cast<int>(std::clamp<long>(std::lround(p.row), 0, 179));
      EXPECT_TRUE(std::equal(out.at(u, v), out.at(u, v) + 3, pano.at(col, row)));
    }
  }
}

TEST(FrameTiming, ClipCounts) {
  EXPECT_EQ(FramesPerClip(5.0), 150);
  EXPECT_EQ(FramesPerClip(5.0, 30.0), 151);
  EXPECT_NEAR(FrameTime(2997), 100.0, 1e-9);
  EXPECT_EQ(SourceFrameIndex(0.0, 7), 7);
  EXPECT_EQ(SourceFrameIndex(10.0, 0), 300);
  EXPECT_EQ(FrameFileName(7), "000007.png");
  EXPECT_EQ(FrameFileName(123456), "123456.png");
}

TEST(Png, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "sseld_png_test";
  const auto image = RandomPanorama(31, 4);
  WritePng(dir / "x" / "a.png", image);
  EXPECT_EQ(ReadPng(dir / "x" / "a.png"), image);
  EXPECT_THROW(ReadPng(dir / "missing.png"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace sseld
