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

#include "hwset/text.hpp"

using namespace hwset;

TEST(Text, RoundTripsCyrillic) {
  const std::string s = "м'яч ґанок Їжак";
  EXPECT_EQ(text::to_utf8(text::to_u32(s)), s);
  EXPECT_EQ(text::to_u32("їх"), U"їх");
}

TEST(Text, LengthCountsCodePoints) {
  EXPECT_EQ(text::length("слово"), 5u);
  EXPECT_EQ(text::length("м'яч"), 4u);
  EXPECT_EQ(text::length(""), 0u);
  EXPECT_EQ(text::length("abc"), 3u);
}

TEST(Text, TrimAndSplit) {
  EXPECT_EQ(text::trim("  слово \t"), "слово");
  EXPECT_EQ(text::trim("   "), "");
  const std::vector<std::string> want = {"три", "різні", "слова"};
  EXPECT_EQ(text::split_words("  три  різні\tслова "), want);
  EXPECT_TRUE(text::split_words("   ").empty());
}

TEST(Text, CharacterClasses) {
  EXPECT_TRUE(text::is_latin_letter(U'c'));
  EXPECT_TRUE(text::is_latin_letter(U'Z'));
  EXPECT_FALSE(text::is_latin_letter(U'с'));  // Cyrillic es
  EXPECT_FALSE(text::is_latin_letter(U'і'));  // Ukrainian i
  EXPECT_TRUE(text::is_digit(U'7'));
  EXPECT_FALSE(text::is_digit(U'з'));
  for (char32_t c : std::u32string(U",.:;!?-")) EXPECT_TRUE(text::is_punctuation(c)) << static_cast<int>(c);
  EXPECT_FALSE(text::is_punctuation(U'ю'));
  EXPECT_TRUE(text::is_space(U' '));
}

TEST(Text, ContainsAnyOfIsExactCodePointMatch) {
  EXPECT_TRUE(text::contains_any_of(U"Щука", U"Щ"));
  EXPECT_FALSE(text::contains_any_of(U"щука", U"Щ"));
  EXPECT_TRUE(text::contains_any_of(U"їжак", U"фї"));
  EXPECT_FALSE(text::contains_any_of(U"іжак", U"ї"));
}
