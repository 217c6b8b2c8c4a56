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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hwset/image.hpp"

namespace hwset {

/// Decodes 8-bit gray or RGB(A) PNG; colour is reduced with `luma`, alpha is
/// composited over white.
GrayImage decode_png(std::span<const std::uint8_t> bytes);
GrayImage read_png(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const GrayImage& img);
/// Writes atomically (temp file + rename).
void write_png(const std::filesystem::path& path, const GrayImage& img);

}  // namespace hwset
