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

#include <set>

#include "hwset/image.hpp"
#include "hwset/synth.hpp"
#include "hwset/text.hpp"

using namespace hwset;

TEST(Synth, LinesAreSeeded) {
  const auto a = synth::make_line(42, "x", "w");
  const auto b = synth::make_line(42, "x", "w");
  EXPECT_EQ(*a.record.image, *b.record.image);
  EXPECT_EQ(a.record.transcript, b.record.transcript);
  EXPECT_NE(*synth::make_line(43, "x", "w").record.image, *a.record.image);
}

TEST(Synth, GroundTruthSpansCoverTheInk) {
  for (std::uint64_t s = 0; s < 80; ++s) {
    synth::LineOptions o;
    o.adversarial = s % 2 == 1;
    const auto l = synth::make_line(s, "l", "w", o);
    const auto& spans = *l.record.gt_spans;
    ASSERT_EQ(spans.size(), l.record.words().size());
    const auto mask = *ink_mask(*l.record.image);
    for (std::size_t i = 0; i < spans.size(); ++i) {
      EXPECT_LE(spans[i].x_left, spans[i].x_right);
      if (i > 0) { EXPECT_GE(spans[i].x_left - spans[i - 1].x_right - 1, 1); }
    }
    // Every ink column inside a span, every span edge on ink.
    for (int x = 0; x < mask.width(); ++x) {
      bool ink = false;
      for (int y = 0; y < mask.height() && !ink; ++y) ink = mask.ink(x, y);
      if (!ink) continue;
      bool inside = false;
      for (const auto& sp : spans) inside = inside || (x >= sp.x_left && x <= sp.x_right);
      EXPECT_TRUE(inside) << "seed " << s << " column " << x;
    }
    if (o.adversarial) { EXPECT_GE(l.joined_gaps, 1); }
  }
}

TEST(Synth, CorpusMixesAdversarialLines) {
  synth::CorpusOptions o;
  o.lines = 50;
  o.adversarial = 15;
  o.writers = 3;
  const auto c = synth::make_corpus(5, o);
  ASSERT_EQ(c.size(), 50u);
  std::size_t adv = 0;
  std::set<std::string> writers, ids;
  for (const auto& l : c) {
    adv += l.adversarial ? 1 : 0;
    writers.insert(l.record.writer_id);
    ids.insert(l.record.line_id);
  }
  EXPECT_EQ(adv, 15u);
  EXPECT_EQ(writers.size(), 3u);
  EXPECT_EQ(ids.size(), 50u);
}

TEST(Synth, WordsAndMarks) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto w = synth::make_word(s);
    EXPECT_FALSE(w.label.empty());
    EXPECT_LT(w.baseline, w.image.height());
    EXPECT_GT(w.x_height, 0);
    EXPECT_EQ(synth::make_word(s).image, w.image);
  }
  for (const char* g : {",", ".", "-"}) {
    const auto m = synth::make_mark(3, g);
    EXPECT_TRUE(ink_mask(m).has_value()) << g;
  }
}
