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

// Sentence-strip assembly from word crops: body detection, baseline
// alignment, brightness normalisation, a sampled punctuation bank, and
// composition onto the training canvas.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hwset/config.hpp"
#include "hwset/image.hpp"

namespace hwset {

/// Rows of the x-height band, inclusive.
struct BodyProfile {
  int body_top = 0;
  int body_bottom = 0;
  bool has_descender = false;
  bool fallback = false;  // no row reached the span threshold; ink bounds used
  friend bool operator==(const BodyProfile&, const BodyProfile&) = default;
};

/// A row belongs to the body when its ink extent covers at least `span_frac`
/// of the word's ink width. Throws Error(NoInk) for a blank image.
BodyProfile detect_body(const GrayImage& word, double span_frac);

struct AlignedWords {
  std::vector<GrayImage> images;  // common height
  int target_row = 0;             // shared body_bottom
  std::vector<BodyProfile> profiles;  // in output coordinates
};

/// Pads each word vertically so all body bottoms land on one row. Padding uses
/// the median of the word's own background pixels.
AlignedWords align_baselines(std::span<const GrayImage> words, double span_frac);

/// Maps the darkest pixel to itself and the (100 - pct)-th percentile to 255,
/// linearly, clamping above. Idempotent.
GrayImage normalize_brightness(const GrayImage& img, double pct);

inline constexpr const char* kPunctGlyphs[] = {",", ".", "-"};
bool is_bank_glyph(std::string_view glyph);

struct PunctMark {
  std::string glyph;
  std::string source_id;
  GrayImage image;
};

struct PunctuationBank {
  std::map<std::string, std::vector<PunctMark>> marks;  // by glyph
  std::uint64_t seed = 0;

  std::size_t size() const;
  bool has(const std::string& glyph) const;
};

/// Samples up to `size` marks without replacement; each glyph's share is
/// proportional to its candidate count (largest remainder). Candidates with
/// other glyphs are ignored. Throws Error(EmptyBank) when nothing qualifies.
PunctuationBank build_punct_bank(std::span<const PunctMark> candidates, std::size_t size, std::uint64_t seed);

/// Directory of PNGs plus index.json.
void save_bank(const std::filesystem::path& dir, const PunctuationBank& bank);
PunctuationBank load_bank(const std::filesystem::path& dir);

struct PlanToken {
  enum class Kind { Word, Punct };
  Kind kind = Kind::Word;
  std::string value;  // crop id or glyph
  friend bool operator==(const PlanToken&, const PlanToken&) = default;
};

struct SentencePlan {
  std::string sentence_id;
  std::vector<PlanToken> tokens;

  std::vector<std::string> word_ids() const;
  /// Throws Error(EmptyPlan) without words, Error(InvalidInput) for a plan that
  /// opens with punctuation or has two punctuation tokens in a row.
  void validate() const;
};

/// {"sentence_id": ..., "tokens": [{"word": id} | {"punct": glyph}, ...]}
SentencePlan sentence_plan_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const SentencePlan& plan);
std::vector<SentencePlan> read_plans(const std::filesystem::path& path);

struct StripLayout {
  int gap = 0;
  int half_gap = 0;
  int target_row = 0;
  int body_height = 0;
  std::vector<int> word_x;  // left edge of each word
  std::vector<int> mark_x;  // left edge of each placed mark
};

struct Strip {
  GrayImage image;
  StripLayout layout;
  std::vector<std::string> warnings;
};

/// `words` holds the images of plan.word_ids() in order.
Strip compose_strip(const SentencePlan& plan, std::span<const GrayImage> words, const PunctuationBank* bank,
                    const AssemblyConfig& cfg, std::uint64_t seed);

/// Scales to canvas height (or down to canvas width if wider), then pads with
/// white to exactly canvas size.
GrayImage fit_canvas(const GrayImage& strip, const CanvasConfig& canvas);

}  // namespace hwset
