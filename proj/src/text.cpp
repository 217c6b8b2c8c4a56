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

#include "hwset/text.hpp"

#include <algorithm>
#include <boost/locale/encoding_utf.hpp>

namespace hwset::text {

std::u32string to_u32(std::string_view utf8) {
  return boost::locale::conv::utf_to_utf<char32_t>(utf8.data(), utf8.data() + utf8.size());
}

std::string to_utf8(std::u32string_view cps) {
  return boost::locale::conv::utf_to_utf<char>(cps.data(), cps.data() + cps.size());
}

std::size_t length(std::string_view utf8) { return to_u32(utf8).size(); }

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
         c == 0x00A0 || c == 0x2009 || c == 0x202F || c == 0x3000;
}

std::string trim(std::string_view s) {
  auto u = to_u32(s);
  auto first = std::find_if_not(u.begin(), u.end(), is_space);
  auto last = std::find_if_not(u.rbegin(), u.rend(), is_space).base();
  if (first >= last) return {};
  return to_utf8(std::u32string_view(&*first, static_cast<std::size_t>(last - first)));
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::u32string current;
  for (char32_t c : to_u32(s)) {
    if (is_space(c)) {
      if (!current.empty()) out.push_back(to_utf8(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(to_utf8(current));
  return out;
}

bool is_latin_letter(char32_t c) {
  if ((c >= U'A' && c <= U'Z') || (c >= U'a' && c <= U'z')) return true;
  // Latin-1 supplement letters, Latin Extended-A/B, Latin Extended Additional.
  if (c >= 0x00C0 && c <= 0x024F) return c != 0x00D7 && c != 0x00F7;
  return c >= 0x1E00 && c <= 0x1EFF;
}

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_punctuation(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
           (c >= 0x7B && c <= 0x7E);
  }
  switch (c) {
    case 0x00AB:  // «
    case 0x00BB:  // »
    case 0x02BC:  // modifier apostrophe
    case 0x2039:
    case 0x203A:
      return true;
    default:
      break;
  }
  return c >= 0x2010 && c <= 0x2027;  // dashes, quotes, ellipsis
}

bool contains_any_of(std::u32string_view s, std::u32string_view letters) {
  return std::any_of(s.begin(), s.end(),
                     [&](char32_t c) { return letters.find(c) != std::u32string_view::npos; });
}

}  // namespace hwset::text
