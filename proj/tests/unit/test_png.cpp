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

#include <gtest/gtest.h>

#include <png.h>

#include "fixtures.hpp"
#include "hwset/error.hpp"
#include "hwset/png_io.hpp"

using namespace hwset;

TEST(Png, GrayRoundTrip) {
  GrayImage img(7, 5);
  for (std::size_t i = 0; i < img.pixels().size(); ++i) img.pixels()[i] = static_cast<std::uint8_t>(i * 7);
  EXPECT_EQ(decode_png(encode_png(img)), img);

  fixture::TempDir dir;
  write_png(dir / "a/b.png", img);
  EXPECT_EQ(read_png(dir / "a/b.png"), img);
}

TEST(Png, EncodingIsDeterministic) {
  const GrayImage img(16, 16, 99);
  EXPECT_EQ(encode_png(img), encode_png(img));
}

TEST(Png, RgbIsReducedByLuma) {
  png_image desc{};
  desc.version = PNG_IMAGE_VERSION;
  desc.width = 2;
  desc.height = 1;
  desc.format = PNG_FORMAT_RGB;
  const std::uint8_t px[] = {255, 0, 0, 0, 0, 255};
  png_alloc_size_t size = 0;
  ASSERT_TRUE(png_image_write_to_memory(&desc, nullptr, &size, 0, px, 0, nullptr));
  std::vector<std::uint8_t> bytes(size);
  ASSERT_TRUE(png_image_write_to_memory(&desc, bytes.data(), &size, 0, px, 0, nullptr));
  const auto g = decode_png(bytes);
  EXPECT_EQ(g.at(0, 0), luma(255, 0, 0));
  EXPECT_EQ(g.at(1, 0), luma(0, 0, 255));
}

TEST(Png, GarbageIsRejected) {
  const std::vector<std::uint8_t> junk = {'n', 'o', 't', ' ', 'p', 'n', 'g'};
  EXPECT_THROW(decode_png(junk), Error);
  EXPECT_THROW(read_png("/nonexistent/file.png"), Error);
}
