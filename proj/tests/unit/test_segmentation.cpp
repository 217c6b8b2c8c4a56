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

#include <algorithm>
#include <functional>
#include <random>

#include "fixtures.hpp"
#include "hwset/error.hpp"
#include "hwset/png_io.hpp"
#include "hwset/segmentation.hpp"
#include "hwset/synth.hpp"
#include "oracles.hpp"

using namespace hwset;

namespace {

void fill(GrayImage& img, int x0, int x1, int y0, int y1, std::uint8_t v = 20) {
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) img.at(x, y) = v;
}

WordGroup group_of(const Component& c) { return WordGroup{{c}, c.bbox, InkProfile::of(c)}; }

std::vector<WordGroup> groups_with_gaps(const std::vector<int>& gaps, int width = 5) {
  std::vector<WordGroup> out;
  int x = 0;
  for (std::size_t i = 0; i <= gaps.size(); ++i) {
    out.push_back(group_of(Component::rectangle(x, x + width - 1, 0, 9)));
    if (i < gaps.size()) x += width + gaps[i];
  }
  return out;
}

LineRecord line_with(GrayImage img, const std::string& transcript) {
  LineRecord l;
  l.line_id = "L1";
  l.writer_id = "w7";
  l.image = std::move(img);
  l.transcript = transcript;
  return l;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no hwset::Error thrown";
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST(HorizontalGap, BoxGapForSolidBlocks) {
  const auto a = InkProfile::of(Component::rectangle(0, 9, 0, 9));
  EXPECT_EQ(horizontal_gap(a, InkProfile::of(Component::rectangle(15, 20, 0, 9))), 5);
  EXPECT_EQ(horizontal_gap(a, InkProfile::of(Component::rectangle(10, 20, 0, 9))), 0);
  EXPECT_EQ(horizontal_gap(a, InkProfile::of(Component::rectangle(5, 20, 2, 4))), 0);  // overlap
}

TEST(HorizontalGap, DisjointRowsUseClosestRows) {
  // Dot above the next word, diagonally up-right of the previous blob.
  const auto body = InkProfile::of(Component::rectangle(0, 9, 10, 19));
  const auto dot = InkProfile::of(Component::rectangle(12, 13, 2, 3));
  EXPECT_EQ(horizontal_gap(body, dot), 6);  // 7 rows apart dominates 2 columns
  const auto near_dot = InkProfile::of(Component::rectangle(14, 15, 8, 9));
  EXPECT_EQ(horizontal_gap(body, near_dot), 4);
}

TEST(GroupComponents, MergeDistanceIsInclusive) {
  const std::vector<Component> five = {Component::rectangle(0, 9, 0, 9), Component::rectangle(15, 20, 0, 9)};
  EXPECT_EQ(group_components(five, 8).size(), 1u);
  const std::vector<Component> eight = {Component::rectangle(0, 9, 0, 9), Component::rectangle(18, 20, 0, 9)};
  EXPECT_EQ(group_components(eight, 8).size(), 1u);
  const std::vector<Component> nine = {Component::rectangle(0, 9, 0, 9), Component::rectangle(19, 20, 0, 9)};
  EXPECT_EQ(group_components(nine, 8).size(), 2u);
  const std::vector<Component> twelve = {Component::rectangle(0, 9, 0, 9), Component::rectangle(22, 30, 0, 9)};
  EXPECT_EQ(group_components(twelve, 8).size(), 2u);
  EXPECT_TRUE(group_components({}, 8).empty());
}

TEST(GroupComponents, ChainsAreTransitive) {
  const std::vector<Component> comps = {Component::rectangle(0, 4, 0, 9), Component::rectangle(10, 14, 0, 9),
                                        Component::rectangle(20, 24, 0, 9), Component::rectangle(40, 44, 0, 9)};
  const auto g = group_components(comps, 8);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].members.size(), 3u);
  EXPECT_EQ(g[0].bbox, (BBox{0, 24, 0, 9}));
  EXPECT_EQ(g[1].bbox, (BBox{40, 44, 0, 9}));
}

TEST(GroupComponents, TranslationInvariant) {
  std::mt19937_64 rng(12);
  std::vector<Component> comps;
  int x = 0;
  for (int i = 0; i < 20; ++i) {
    x += static_cast<int>(rng() % 14);
    const int w = 1 + static_cast<int>(rng() % 6);
    const int y = static_cast<int>(rng() % 10);
    comps.push_back(Component::rectangle(x, x + w, y, y + 4));
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.bbox.x_min < b.bbox.x_min; });
  auto shifted = comps;
  for (auto& c : shifted) c = Component::rectangle(c.bbox.x_min + 37, c.bbox.x_max + 37, c.bbox.y_min, c.bbox.y_max);
  const auto a = group_components(comps, 8);
  const auto b = group_components(shifted, 8);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(b[i].bbox.x_min, a[i].bbox.x_min + 37);
    EXPECT_EQ(b[i].bbox.x_max, a[i].bbox.x_max + 37);
  }
}

TEST(SelectBoundaries, WorkedExample) {
  const auto groups = groups_with_gaps({30, 4, 25, 6});
  const auto spans = select_boundaries(groups, 3);
  ASSERT_EQ(spans.size(), 3u);
  EXPECT_EQ(spans[0], (WordSpan{groups[0].bbox.x_min, groups[0].bbox.x_max}));
  EXPECT_EQ(spans[1], (WordSpan{groups[1].bbox.x_min, groups[2].bbox.x_max}));
  EXPECT_EQ(spans[2], (WordSpan{groups[3].bbox.x_min, groups[4].bbox.x_max}));
}

TEST(SelectBoundaries, IdentityAndUnderSegmented) {
  const auto groups = groups_with_gaps({10, 3, 7});
  const auto spans = select_boundaries(groups, 4);
  ASSERT_EQ(spans.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(spans[i], (WordSpan{groups[i].bbox.x_min, groups[i].bbox.x_max}));

  const auto two = groups_with_gaps({10});
  try {
    select_boundaries(two, 4);
    FAIL();
  } catch (const UnderSegmented& e) {
    EXPECT_EQ(e.groups(), 2);
    EXPECT_EQ(e.words(), 4);
    EXPECT_EQ(e.code(), ErrorCode::UnderSegmented);
  }
}

TEST(SelectBoundaries, TiesGoToTheLeftmostGap) {
  EXPECT_EQ(choose_separators(std::vector<int>{5, 9, 9, 9, 2}, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(choose_separators(std::vector<int>{4, 4, 4}, 1), (std::vector<std::size_t>{0}));
}

TEST(SelectBoundaries, MatchesSortOracle) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> gaps(rng() % 15);
    for (auto& g : gaps) g = static_cast<int>(rng() % 12);
    const auto n = 1 + rng() % (gaps.size() + 1);
    const auto seps = choose_separators(gaps, n - 1);
    ASSERT_EQ(seps, oracle::widest_gaps(gaps, n - 1));
    const auto spans = select_boundaries(groups_with_gaps(gaps, 3), static_cast<int>(n));
    for (std::size_t i = 1; i < spans.size(); ++i) EXPECT_LT(spans[i - 1].x_right, spans[i].x_left);
  }
}

TEST(SegmentLine, ThreeWordsWithGenerousSpacing) {
  GrayImage img(200, 40, 245);
  fill(img, 10, 40, 10, 25);
  fill(img, 70, 120, 8, 30);
  fill(img, 150, 185, 12, 25);
  const auto words = segment_line(line_with(img, "три різні слова"), PipelineConfig{});
  ASSERT_EQ(words.size(), 3u);
  EXPECT_EQ(words[0].crop.label, "три");
  EXPECT_EQ(words[1].crop.label, "різні");
  EXPECT_EQ(words[2].crop.label, "слова");
  EXPECT_EQ(words[1].crop.writer_id, "w7");
  EXPECT_EQ(words[1].crop.word_index, 1);
  EXPECT_EQ(words[1].crop.x_left, 70);
  EXPECT_EQ(words[1].crop.x_right, 120);
  EXPECT_EQ(words[1].image.width(), 51);
  EXPECT_EQ(words[1].image.height(), 30 - 8 + 1 + 4);  // 2 px margin each side
  EXPECT_EQ(words[0].image.height(), 25 - 10 + 1 + 4);
}

TEST(SegmentLine, MarginClampsToImage) {
  GrayImage img(200, 12, 245);
  fill(img, 5, 50, 0, 11);
  const auto words = segment_line(line_with(img, "слово"), PipelineConfig{});
  ASSERT_EQ(words.size(), 1u);
  EXPECT_EQ(words[0].image.height(), 12);
}

TEST(SegmentLine, OneWordSpansAllGroups) {
  GrayImage img(200, 40, 245);
  fill(img, 10, 40, 10, 25);
  fill(img, 90, 120, 8, 30);
  const auto words = segment_line(line_with(img, "слово"), PipelineConfig{});
  ASSERT_EQ(words.size(), 1u);
  EXPECT_EQ(words[0].crop.x_left, 10);
  EXPECT_EQ(words[0].crop.x_right, 120);
}

TEST(SegmentLine, BlankPageIsNoInk) {
  EXPECT_EQ(code_of([] { segment_line(line_with(GrayImage(100, 30, 255), "два слова"), PipelineConfig{}); }),
            ErrorCode::NoInk);
}

TEST(SegmentLine, InvertedScanIsFlipped) {
  GrayImage img(200, 40, 10);
  fill(img, 10, 40, 10, 25, 240);
  fill(img, 90, 120, 8, 30, 240);
  EXPECT_EQ(segment_line(line_with(img, "два слова"), PipelineConfig{}).size(), 2u);
}

TEST(SegmentLine, ExactlyNOnSyntheticLines) {
  synth::CorpusOptions o;
  o.lines = 150;
  o.adversarial = 40;
  for (const auto& l : synth::make_corpus(3, o)) {
    const auto words = segment_line(l.record, PipelineConfig{});
    ASSERT_EQ(words.size(), l.record.words().size()) << l.record.line_id;
  }
}

TEST(Projection, SameAsCcOnCleanLines) {
  synth::CorpusOptions o;
  o.lines = 40;
  const PipelineConfig cfg;
  for (const auto& l : synth::make_corpus(21, o)) {
    const auto p = prepare_line(*l.record.image, cfg.segmentation);
    const int n = static_cast<int>(l.record.words().size());
    EXPECT_EQ(projection_segment(p, n, cfg.segmentation), cc_segment(p, n, cfg.segmentation)) << l.record.line_id;
  }
}

TEST(Projection, DescenderUnderTheGapJoinsWords) {
  GrayImage img(200, 50, 245);
  fill(img, 10, 60, 10, 25);
  fill(img, 58, 60, 26, 40);  // descender stem
  fill(img, 58, 94, 39, 40);  // tail under the space
  fill(img, 100, 150, 10, 25);
  const PipelineConfig cfg;
  const auto spans = projection_segment(line_with(img, "два слова"), cfg.segmentation);
  EXPECT_EQ(spans.size(), 1u);
  const auto words = segment_line(line_with(img, "два слова"), cfg);
  ASSERT_EQ(words.size(), 2u);
  EXPECT_EQ(words[1].crop.x_left, 100);
}

TEST(Projection, SingleWordAndBlank) {
  GrayImage img(100, 30, 245);
  fill(img, 10, 60, 5, 20);
  EXPECT_EQ(projection_segment(line_with(img, "слово"), SegmentationConfig{}).size(), 1u);
  EXPECT_EQ(code_of([] { projection_segment(line_with(GrayImage(50, 20, 250), "а"), SegmentationConfig{}); }),
            ErrorCode::NoInk);
}

TEST(EvaluateBoundaries, Definition) {
  const std::vector<WordSpan> gt = {{0, 20}, {40, 60}, {80, 100}, {120, 140}};
  EXPECT_TRUE(evaluate_boundaries(gt, gt, 0).perfect);
  auto shifted = gt;
  shifted[2].x_left += 6;
  EXPECT_FALSE(evaluate_boundaries(shifted, gt, 5).perfect);
  shifted[2].x_left -= 1;
  EXPECT_TRUE(evaluate_boundaries(shifted, gt, 5).perfect);
  const std::vector<WordSpan> three(gt.begin(), gt.begin() + 3);
  const auto v = evaluate_boundaries(three, gt, 5);
  EXPECT_FALSE(v.perfect);
  EXPECT_EQ(v.detected, 3);
  EXPECT_EQ(v.expected, 4);
}

TEST(EvalCorpus, RatesAndErrors) {
  synth::CorpusOptions o;
  o.lines = 100;
  o.adversarial = 30;
  std::vector<LineRecord> lines;
  for (auto& l : synth::make_corpus(8, o)) lines.push_back(l.record);
  const PipelineConfig cfg;
  const auto cc = eval_corpus(lines, SegMethod::ConnectedComponents, cfg);
  const auto pr = eval_corpus(lines, SegMethod::Projection, cfg);
  EXPECT_EQ(cc.lines_evaluated, 100u);
  EXPECT_GT(cc.perfect_match_rate, pr.perfect_match_rate);
  EXPECT_DOUBLE_EQ(cc.mean_detected_words_per_line, cc.mean_gt_words_per_line);
  EXPECT_LT(pr.mean_detected_words_per_line, pr.mean_gt_words_per_line);
  EXPECT_TRUE(std::is_sorted(cc.per_line.begin(), cc.per_line.end(),
                             [](const auto& a, const auto& b) { return a.line_id < b.line_id; }));
  const auto serial = eval_corpus(lines, SegMethod::ConnectedComponents, cfg, ExecPolicy::serial());
  EXPECT_EQ(to_json(serial), to_json(cc));

  EXPECT_EQ(code_of([&] { eval_corpus({}, SegMethod::ConnectedComponents, cfg); }), ErrorCode::EmptyCorpus);
  auto no_gt = lines;
  no_gt[3].gt_spans.reset();
  EXPECT_EQ(code_of([&] { eval_corpus(no_gt, SegMethod::ConnectedComponents, cfg); }), ErrorCode::InvalidInput);
}

TEST(EvalCorpus, PerfectFixtureAndFourWordMean) {
  std::vector<LineRecord> lines;
  for (int i = 0; i < 5; ++i) {
    GrayImage img(300, 30, 245);
    std::vector<WordSpan> gt;
    for (int k = 0; k < 4; ++k) {
      fill(img, 10 + 70 * k, 50 + 70 * k, 5, 20);
      gt.push_back({10 + 70 * k, 50 + 70 * k});
    }
    auto l = line_with(img, "раз два три чотири");
    l.line_id = "l" + std::to_string(i);
    l.gt_spans = gt;
    lines.push_back(l);
  }
  const auto r = eval_corpus(lines, SegMethod::ConnectedComponents, PipelineConfig{});
  EXPECT_DOUBLE_EQ(r.perfect_match_rate, 1.0);
  EXPECT_DOUBLE_EQ(r.mean_detected_words_per_line, 4.0);
}

TEST(SegmentCorpus, FailuresAreRecordedInOrder) {
  std::vector<LineRecord> lines;
  GrayImage ok(100, 30, 245);
  fill(ok, 10, 40, 5, 20);
  lines.push_back(line_with(ok, "слово"));
  lines.push_back(line_with(GrayImage(100, 30, 255), "порожньо"));
  lines.push_back(line_with(ok, "два слова"));
  lines[1].line_id = "L2";
  lines[2].line_id = "L3";
  const auto out = segment_corpus(lines, PipelineConfig{});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_TRUE(out[0].error.empty());
  EXPECT_EQ(out[1].error, "NoInk");
  EXPECT_EQ(out[2].error, "UnderSegmented");
  EXPECT_EQ(out[2].line_id, "L3");
}

TEST(Corpus, ReadsJsonlWithRelativeImages) {
  fixture::TempDir dir;
  GrayImage img(100, 30, 245);
  fill(img, 10, 40, 5, 20);
  fill(img, 60, 90, 5, 20);
  std::filesystem::create_directories(dir / "lines");
  write_png(dir / "lines/a.png", img);
  fixture::write_text(dir / "corpus.jsonl",
                      R"({"line_id":"a","writer_id":"w","image":"lines/a.png","transcript":"два слова","gt_spans":[[10,40],[60,90]]})"
                      "\n");
  const auto lines = read_corpus(dir / "corpus.jsonl");
  ASSERT_EQ(lines.size(), 1u);
  ASSERT_TRUE(lines[0].gt_spans.has_value());
  EXPECT_EQ((*lines[0].gt_spans)[1], (WordSpan{60, 90}));
  EXPECT_EQ(lines[0].load_image(), img);
  const auto v = eval_corpus(lines, SegMethod::ConnectedComponents, PipelineConfig{});
  EXPECT_EQ(v.perfect_matches, 1u);
}
