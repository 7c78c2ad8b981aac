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

#ifndef SSELD_ANGLES_H_
#define SSELD_ANGLES_H_

#include <cmath>
#include <numbers>

namespace sseld {

// Azimuth is counterclockwise-positive seen from above (left = +90 deg),
// elevation is up-positive. Everything public takes degrees.

inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Maps any finite angle onto [-180, 180).
inline double WrapAzimuth(double degrees) {
  double wrapped = std::fmod(degrees + 180.0, 360.0);
  if (wrapped < 0.0) wrapped += 360.0;
  wrapped -= 180.0;
  // fmod can round up to exactly +180 for tiny negative inputs.
  if (wrapped >= 180.0) wrapped -= 360.0;
  return wrapped;
}

// Maps any finite angle onto [0, 360).
inline double WrapYaw(double degrees) {
  double wrapped = std::fmod(degrees, 360.0);
  if (wrapped < 0.0) wrapped += 360.0;
  if (wrapped >= 360.0) wrapped -= 360.0;
  return wrapped;
}

namespace internal {

// Returns the quadrant index when |degrees| is an exact multiple of 90.
inline bool ExactQuadrant(double degrees, int* quadrant) {
  const double reduced = std::fmod(degrees, 360.0);
  const double q = reduced / 90.0;
  if (q != std::floor(q)) return false;
  int index = static_cast<int>(q) % 4;
  if (index < 0) index += 4;
  *quadrant = index;
  return true;
}

}  // namespace internal

// sin/cos in degrees that are exact at multiples of 90, so that cardinal
// directions encode without residual crosstalk.
inline double SinDeg(double degrees) {
  int quadrant = 0;
  if (internal::ExactQuadrant(degrees, &quadrant)) {
    constexpr double kTable[4] = {0.0, 1.0, 0.0, -1.0};
    return kTable[quadrant];
  }
  return std::sin(std::fmod(degrees, 360.0) * kDegToRad);
}

inline double CosDeg(double degrees) {
  int quadrant = 0;
  if (internal::ExactQuadrant(degrees, &quadrant)) {
    constexpr double kTable[4] = {1.0, 0.0, -1.0, 0.0};
    return kTable[quadrant];
  }
  return std::cos(std::fmod(degrees, 360.0) * kDegToRad);
}

}  // namespace sseld

#endif  // SSELD_ANGLES_H_
