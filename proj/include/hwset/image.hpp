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

#pragma once

// Grayscale image primitives. Intensities are 0 (ink) .. 255 (paper).

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hwset {

class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 255);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }
  std::span<const std::uint8_t> row(int y) const {
    return std::span<const std::uint8_t>(pixels_).subspan(static_cast<std::size_t>(y) * width_, width_);
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool ink(int x, int y) const { return mask_[static_cast<std::size_t>(y) * width_ + x] != 0; }
  void set(int x, int y, bool v) { mask_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0; }

  std::span<const std::uint8_t> mask() const noexcept { return mask_; }
  std::size_t ink_count() const;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> mask_;
};

/// Inclusive pixel bounds.
struct BBox {
  int x_min = 0;
  int x_max = -1;
  int y_min = 0;
  int y_max = -1;

  int width() const noexcept { return x_max - x_min + 1; }
  int height() const noexcept { return y_max - y_min + 1; }
  bool valid() const noexcept { return x_min <= x_max && y_min <= y_max; }
  void extend(int x, int y);
  void extend(const BBox& other);

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Leftmost and rightmost ink column of one row.
struct ColumnRange {
  int left = 0;
  int right = 0;
  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

using RowExtents = std::vector<std::optional<ColumnRange>>;

struct Component {
  BBox bbox;
  int pixel_count = 0;
  /// Per-row ink extent, indexed from bbox.y_min. An 8-connected component has
  /// ink on every row of its bbox, so no entry is empty.
  std::vector<ColumnRange> rows;

  /// Solid rectangle; convenient for tests and synthetic inputs.
  static Component rectangle(int x_min, int x_max, int y_min, int y_max);
};

using Histogram = std::array<std::uint64_t, 256>;

Histogram histogram(const GrayImage& img);

/// Level t maximising between-class variance of the split {<= t} vs {> t};
/// the smallest maximiser wins. A constant image yields its single value.
int otsu_threshold(const Histogram& hist);
int otsu_threshold(const GrayImage& img);

bool is_constant(const GrayImage& img);

/// mask = pixel <= t.
BinaryImage binarize(const GrayImage& img, int t);

/// Otsu binarisation, or nullopt for a constant (ink-free) image.
std::optional<BinaryImage> ink_mask(const GrayImage& img);

/// Maximal 8-connected ink regions sorted by (x_min, y_min).
std::vector<Component> connected_components(const BinaryImage& bin);

RowExtents row_ink_extent(const BinaryImage& bin);

/// Bounding box of all ink, or nullopt for an empty mask.
std::optional<BBox> ink_bounds(const BinaryImage& bin);

double mean_intensity(const GrayImage& img);
GrayImage invert(const GrayImage& img);
GrayImage crop(const GrayImage& img, const BBox& box);

/// Bilinear resample to the requested size (both >= 1).
GrayImage resize(const GrayImage& img, int width, int height);

/// Draw `src` onto `dst` at (x, y) keeping the darker pixel; clipped to dst.
void blit_darken(GrayImage& dst, const GrayImage& src, int x, int y);

/// 0.299 R + 0.587 G + 0.114 B, rounded half up.
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

}  // namespace hwset
