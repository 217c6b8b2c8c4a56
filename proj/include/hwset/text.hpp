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

// Unicode helpers. Labels are UTF-8 on the wire and compared as code points.

#include <string>
#include <string_view>
#include <vector>

namespace hwset::text {

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view cps);

/// Length in code points.
std::size_t length(std::string_view utf8);

std::string trim(std::string_view s);
std::vector<std::string> split_words(std::string_view s);

bool is_space(char32_t c);
bool is_latin_letter(char32_t c);
bool is_digit(char32_t c);
bool is_punctuation(char32_t c);

/// True if any code point of `s` occurs in `letters` (exact code-point match).
bool contains_any_of(std::u32string_view s, std::u32string_view letters);

}  // namespace hwset::text
