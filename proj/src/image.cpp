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

#include "hwset/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hwset/error.hpp"
#include "hwset/kernels.hpp"

namespace hwset {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidInput, "image dimensions must be >= 1");
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidInput, "image dimensions must be >= 1");
  if (pixels_.size() != static_cast<std::size_t>(width) * height)
    throw Error(ErrorCode::InvalidInput, "pixel count does not match width x height");
}

BinaryImage::BinaryImage(int width, int height)
    : width_(width), height_(height), mask_(static_cast<std::size_t>(width) * height, 0) {}

std::size_t BinaryImage::ink_count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

void BBox::extend(int x, int y) {
  if (!valid()) {
    *this = BBox{x, x, y, y};
    return;
  }
  x_min = std::min(x_min, x);
  x_max = std::max(x_max, x);
  y_min = std::min(y_min, y);
  y_max = std::max(y_max, y);
}

void BBox::extend(const BBox& other) {
  if (!other.valid()) return;
  if (!valid()) {
    *this = other;
    return;
  }
  x_min = std::min(x_min, other.x_min);
  x_max = std::max(x_max, other.x_max);
  y_min = std::min(y_min, other.y_min);
  y_max = std::max(y_max, other.y_max);
}

Component Component::rectangle(int x_min, int x_max, int y_min, int y_max) {
  Component c;
  c.bbox = BBox{x_min, x_max, y_min, y_max};
  c.pixel_count = c.bbox.width() * c.bbox.height();
  c.rows.assign(static_cast<std::size_t>(c.bbox.height()), ColumnRange{x_min, x_max});
  return c;
}

Histogram histogram(const GrayImage& img) { return kernels::histogram_serial(img.pixels()); }

namespace {

using u128 = unsigned __int128;

// Sign of a/b - c/d for b, d > 0, exact (Euclid-style expansion).
int compare_fractions(u128 a, u128 b, u128 c, u128 d) {
  for (;;) {
    const u128 qa = a / b;
    const u128 qc = c / d;
    if (qa != qc) return qa < qc ? -1 : 1;
    a -= qa * b;
    c -= qc * d;
    if (a == 0 || c == 0) {
      if (a == 0 && c == 0) return 0;
      return a == 0 ? -1 : 1;
    }
    // a/b < c/d  <=>  d/c < b/a
    const u128 na = d, nb = c, nc = b, nd = a;
    a = na;
    b = nb;
    c = nc;
    d = nd;
  }
}

}  // namespace

int otsu_threshold(const Histogram& hist) {
  std::uint64_t total = 0;
  std::uint64_t sum = 0;
  int distinct = 0;
  int only_level = 0;
  for (int v = 0; v < 256; ++v) {
    total += hist[v];
    sum += hist[v] * static_cast<std::uint64_t>(v);
    if (hist[v] != 0) {
      ++distinct;
      only_level = v;
    }
  }
  if (total == 0) throw Error(ErrorCode::InvalidInput, "otsu_threshold on an empty histogram");
  if (distinct == 1) return only_level;

  // Between-class variance at t is (N*S_t - T*C_t)^2 / (C_t * (N - C_t)) / N^2;
  // the common 1/N^2 factor is dropped and fractions are compared exactly.
  int best_t = 0;
  u128 best_num = 0;
  u128 best_den = 1;
  std::uint64_t count = 0;
  std::uint64_t partial = 0;
  for (int t = 0; t < 256; ++t) {
    count += hist[t];
    partial += hist[t] * static_cast<std::uint64_t>(t);
    if (count == 0 || count == total) continue;
    const u128 lhs = static_cast<u128>(total) * partial;
    const u128 rhs = static_cast<u128>(sum) * count;
    const u128 diff = lhs > rhs ? lhs - rhs : rhs - lhs;
    const u128 num = diff * diff;
    const u128 den = static_cast<u128>(count) * (total - count);
    if (compare_fractions(num, den, best_num, best_den) > 0) {
      best_num = num;
      best_den = den;
      best_t = t;
    }
  }
  return best_t;
}

int otsu_threshold(const GrayImage& img) {
  if (img.empty()) throw Error(ErrorCode::InvalidInput, "otsu_threshold on an empty image");
  return otsu_threshold(histogram(img));
}

bool is_constant(const GrayImage& img) {
  const auto px = img.pixels();
  return std::all_of(px.begin(), px.end(), [&](std::uint8_t v) { return v == px.front(); });
}

BinaryImage binarize(const GrayImage& img, int t) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out.set(x, y, img.at(x, y) <= t);
  return out;
}

std::optional<BinaryImage> ink_mask(const GrayImage& img) {
  if (img.empty() || is_constant(img)) return std::nullopt;
  return binarize(img, otsu_threshold(img));
}

namespace {

struct DisjointSet {
  std::vector<int> parent;

  int make() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  }
};

}  // namespace

std::vector<Component> connected_components(const BinaryImage& bin) {
  const int w = bin.width();
  const int h = bin.height();
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  DisjointSet sets;
  auto at = [&](int x, int y) -> int& { return label[static_cast<std::size_t>(y) * w + x]; };

  // First pass: provisional labels from the already-visited 8-neighbourhood.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!bin.ink(x, y)) continue;
      int current = -1;
      const int nx[4] = {x - 1, x - 1, x, x + 1};
      const int ny[4] = {y, y - 1, y - 1, y - 1};
      for (int k = 0; k < 4; ++k) {
        if (nx[k] < 0 || nx[k] >= w || ny[k] < 0) continue;
        const int l = at(nx[k], ny[k]);
        if (l < 0) continue;
        if (current < 0)
          current = l;
        else
          sets.unite(current, l);
      }
      at(x, y) = current < 0 ? sets.make() : current;
    }
  }

  // Second pass: resolve roots, accumulate bbox and counts.
  std::vector<int> dense(sets.parent.size(), -1);
  std::vector<Component> comps;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int& l = at(x, y);
      if (l < 0) continue;
      const int root = sets.find(l);
      if (dense[root] < 0) {
        dense[root] = static_cast<int>(comps.size());
        comps.emplace_back();
      }
      l = dense[root];
      Component& c = comps[l];
      c.bbox.extend(x, y);
      ++c.pixel_count;
    }
  }

  for (Component& c : comps)
    c.rows.assign(static_cast<std::size_t>(c.bbox.height()), ColumnRange{c.bbox.x_max, c.bbox.x_min});
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int l = at(x, y);
      if (l < 0) continue;
      Component& c = comps[l];
      ColumnRange& r = c.rows[static_cast<std::size_t>(y - c.bbox.y_min)];
      r.left = std::min(r.left, x);
      r.right = std::max(r.right, x);
    }
  }

  std::stable_sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    if (a.bbox.x_min != b.bbox.x_min) return a.bbox.x_min < b.bbox.x_min;
    return a.bbox.y_min < b.bbox.y_min;
  });
  return comps;
}

RowExtents row_ink_extent(const BinaryImage& bin) {
  RowExtents out(static_cast<std::size_t>(bin.height()));
  for (int y = 0; y < bin.height(); ++y) {
    int left = -1;
    int right = -1;
    for (int x = 0; x < bin.width(); ++x) {
      if (!bin.ink(x, y)) continue;
      if (left < 0) left = x;
      right = x;
    }
    if (left >= 0) out[static_cast<std::size_t>(y)] = ColumnRange{left, right};
  }
  return out;
}

std::optional<BBox> ink_bounds(const BinaryImage& bin) {
  BBox box;
  for (int y = 0; y < bin.height(); ++y)
    for (int x = 0; x < bin.width(); ++x)
      if (bin.ink(x, y)) box.extend(x, y);
  if (!box.valid()) return std::nullopt;
  return box;
}

double mean_intensity(const GrayImage& img) {
  const auto px = img.pixels();
  if (px.empty()) return 0.0;
  const auto total = std::accumulate(px.begin(), px.end(), std::uint64_t{0});
  return static_cast<double>(total) / static_cast<double>(px.size());
}

GrayImage invert(const GrayImage& img) {
  GrayImage out = img;
  for (auto& v : out.pixels()) v = static_cast<std::uint8_t>(255 - v);
  return out;
}

GrayImage crop(const GrayImage& img, const BBox& box) {
  if (!box.valid() || box.x_min < 0 || box.y_min < 0 || box.x_max >= img.width() ||
      box.y_max >= img.height())
    throw Error(ErrorCode::InvalidInput, "crop box outside image");
  GrayImage out(box.width(), box.height());
  for (int y = 0; y < box.height(); ++y)
    for (int x = 0; x < box.width(); ++x) out.at(x, y) = img.at(box.x_min + x, box.y_min + y);
  return out;
}

GrayImage resize(const GrayImage& img, int width, int height) {
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidInput, "resize target must be >= 1");
  if (width == img.width() && height == img.height()) return img;
  GrayImage out(width, height);
  const double sx = static_cast<double>(img.width()) / width;
  const double sy = static_cast<double>(img.height()) / height;
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(img.height() - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(img.width() - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, img.width() - 1);
      const double wx = fx - x0;
      const double top = img.at(x0, y0) * (1 - wx) + img.at(x1, y0) * wx;
      const double bottom = img.at(x0, y1) * (1 - wx) + img.at(x1, y1) * wx;
      out.at(x, y) = static_cast<std::uint8_t>(std::lround(top * (1 - wy) + bottom * wy));
    }
  }
  return out;
}

void blit_darken(GrayImage& dst, const GrayImage& src, int x, int y) {
  for (int sy = 0; sy < src.height(); ++sy) {
    const int dy = y + sy;
    if (dy < 0 || dy >= dst.height()) continue;
    for (int sx = 0; sx < src.width(); ++sx) {
      const int dx = x + sx;
      if (dx < 0 || dx >= dst.width()) continue;
      dst.at(dx, dy) = std::min(dst.at(dx, dy), src.at(sx, sy));
    }
  }
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

}  // namespace hwset
