// Copyright 2026 The hwset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hwset/png_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include "hwset/error.hpp"
#include "hwset/manifest.hpp"

namespace hwset {

namespace {

GrayImage from_rgb(const png_image& info, const std::vector<std::uint8_t>& rgb) {
  const int w = static_cast<int>(info.width);
  const int h = static_cast<int>(info.height);
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < gray.size(); ++i)
    gray[i] = luma(rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]);
  return GrayImage(w, h, std::move(gray));
}

}  // namespace

GrayImage decode_png(std::span<const std::uint8_t> bytes) {
  png_image info;
  std::memset(&info, 0, sizeof(info));
  info.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&info, bytes.data(), bytes.size()))
    throw Error(ErrorCode::InvalidInput, std::string("not a PNG: ") + info.message);
  if (info.width == 0 || info.height == 0) {
    png_image_free(&info);
    throw Error(ErrorCode::InvalidInput, "PNG has zero size");
  }
  info.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> rgb(PNG_IMAGE_SIZE(info));
  const png_color white{255, 255, 255};
  if (!png_image_finish_read(&info, &white, rgb.data(), 0, nullptr)) {
    const std::string msg = info.message;
    png_image_free(&info);
    throw Error(ErrorCode::InvalidInput, "PNG decode failed: " + msg);
  }
  return from_rgb(info, rgb);
}

GrayImage read_png(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_png(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
  png_image info;
  std::memset(&info, 0, sizeof(info));
  info.version = PNG_IMAGE_VERSION;
  info.width = static_cast<png_uint_32>(img.width());
  info.height = static_cast<png_uint_32>(img.height());
  info.format = PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&info, nullptr, &size, 0, img.pixels().data(), 0, nullptr))
    throw Error(ErrorCode::Io, std::string("PNG encode failed: ") + info.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&info, out.data(), &size, 0, img.pixels().data(), 0, nullptr))
    throw Error(ErrorCode::Io, std::string("PNG encode failed: ") + info.message);
  out.resize(size);
  return out;
}

void write_png(const std::filesystem::path& path, const GrayImage& img) {
  const auto bytes = encode_png(img);
  write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace hwset
