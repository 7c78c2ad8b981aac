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

// 8-bit RGB frames and PNG file I/O (libpng).

#ifndef SSELD_IMAGE_H_
#define SSELD_IMAGE_H_

#include <png.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "sseld/error.h"

namespace sseld {

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // row-major, interleaved RGB

  RgbImage() = default;
  RgbImage(int w, int h, uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<size_t>(w) * h * 3, fill) {
    if (w <= 0 || h <= 0) {
      throw Error(ErrorKind::kInvalidInput, "image dimensions must be positive");
    }
  }

  uint8_t* at(int x, int y) {
    return pixels.data() + (static_cast<size_t>(y) * width + x) * 3;
  }
  const uint8_t* at(int x, int y) const {
    return pixels.data() + (static_cast<size_t>(y) * width + x) * 3;
  }

  bool operator==(const RgbImage&) const = default;
};

namespace png_internal {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline void ErrorHandler(png_structp png, png_const_charp message) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text) *text = message;
  png_longjmp(png, 1);
}

inline void WarningHandler(png_structp, png_const_charp) {}

}  // namespace png_internal

// Reads any PNG and converts it to 8-bit RGB (palette expanded, alpha and
// 16-bit depth stripped, grayscale widened).
inline RgbImage ReadPng(const std::filesystem::path& path) {
  png_internal::FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw Error(ErrorKind::kIo, "cannot open " + path.string());

  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message,
                                           png_internal::ErrorHandler,
                                           png_internal::WarningHandler);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorKind::kIo, "libpng initialisation failed");
  }
  RgbImage image;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorKind::kIo, path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_read_info(png, info);
  const png_byte color = png_get_color_type(png, info);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_expand_gray_1_2_4_to_8(png);
    png_set_gray_to_rgb(png);
  }
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  image = RgbImage(static_cast<int>(png_get_image_width(png, info)),
                   static_cast<int>(png_get_image_height(png, info)));
  rows.resize(image.height);
  for (int y = 0; y < image.height; ++y) rows[y] = image.at(0, y);
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

inline void WritePng(const std::filesystem::path& path, const RgbImage& image) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  png_internal::FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw Error(ErrorKind::kIo, "cannot write " + path.string());

  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message,
                                            png_internal::ErrorHandler,
                                            png_internal::WarningHandler);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorKind::kIo, "libpng initialisation failed");
  }
  std::vector<png_bytep> rows(image.height);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorKind::kIo, path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, image.width, image.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  for (int y = 0; y < image.height; ++y) {
    rows[y] = const_cast<png_bytep>(image.at(0, y));
  }
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace sseld

#endif  // SSELD_IMAGE_H_
