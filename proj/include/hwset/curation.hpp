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

// Filtering cascade (label script, trailing comma, size, OCR agreement,
// writer support) and rare-letter oversampling.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hwset/config.hpp"
#include "hwset/manifest.hpp"
#include "hwset/ocr_gate.hpp"
#include "hwset/parallel.hpp"

namespace hwset {

struct NormalizedLabel {
  std::string label;
  std::string stripped;  // trailing punctuation removed from the raw token
};

/// Trims whitespace and strips trailing , . : ; ! ? (internal apostrophes
/// survive). Throws Error(EmptyLabel) if nothing is left.
NormalizedLabel normalize_label(std::string_view raw);

struct StageDecision {
  bool keep = true;
  std::string reason;  // empty when kept

  static StageDecision kept() { return {}; }
  static StageDecision rejected(std::string why) { return {false, std::move(why)}; }
};

StageDecision stage1_label_filter(const WordCrop& crop);
StageDecision stage2_trailing_comma_filter(const WordCrop& crop);
StageDecision stage3_size_filter(const WordCrop& crop, const FilterConfig& cfg);

/// The stage 4 rule on a label length (code points) and similarity score.
bool stage4_keep(std::size_t label_length, double similarity, const FilterConfig& cfg);

/// Length-stratified OCR gate. Throws Error(MissingTranscription) when a
/// transcription is required but absent.
StageDecision stage4_ocr_gate(const WordCrop& crop, const std::optional<OcrResult>& ocr, const FilterConfig& cfg);

/// True when stage 4 keeps the crop without consulting OCR.
bool passes_unconditionally(const WordCrop& crop, const FilterConfig& cfg);

/// Drops every writer with fewer than min_writer_samples crops.
std::vector<WordCrop> stage5_writer_filter(std::vector<WordCrop> crops, const FilterConfig& cfg);

struct StageReport {
  int stage = 0;
  std::string name;
  std::size_t input = 0;
  std::size_t rejected = 0;
  std::size_t kept = 0;
  std::map<std::string, std::size_t> reasons;
};

struct FilterReport {
  std::vector<StageReport> stages;
  std::size_t input_samples = 0;
  std::size_t final_samples = 0;
  std::size_t final_writers = 0;
  std::size_t punctuation_pool = 0;
  std::vector<std::string> held_back;  // crop ids without a usable transcription
};

nlohmann::ordered_json to_json(const FilterReport& report);

struct PipelineResult {
  Manifest kept;
  FilterReport report;
  /// Punctuation-only crops rejected at stage 1, kept as bank candidates.
  std::vector<WordCrop> punctuation_pool;
};

/// Stages 1..5 in order. Per-crop problems are counted, never thrown.
PipelineResult run_pipeline(const Manifest& input, const OcrBackend& ocr, const PipelineConfig& cfg,
                            ExecPolicy policy = {});

/// Total multiplicity for a label: max configured factor over the rare letters
/// it contains, 1 if none.
int oversample_multiplicity(std::string_view label, const BalanceConfig& cfg);

struct BalanceReport {
  std::size_t input_samples = 0;
  std::size_t output_samples = 0;
  std::size_t duplicates_added = 0;
  std::size_t crops_with_rare_letters = 0;
  std::map<std::string, std::size_t> crops_per_letter;
};

nlohmann::ordered_json to_json(const BalanceReport& report);

/// Duplicates rare-letter crops in place (duplicates follow their original,
/// carry repeat_index 1..f-1 and crop id "<id>~r<k>").
Manifest oversample(const Manifest& input, const BalanceConfig& cfg, BalanceReport* report = nullptr);

}  // namespace hwset
