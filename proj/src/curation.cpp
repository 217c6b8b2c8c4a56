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

#include "hwset/curation.hpp"

#include <algorithm>
#include <set>

#include "hwset/error.hpp"
#include "hwset/text.hpp"

namespace hwset {

using nlohmann::ordered_json;

namespace {

bool is_strippable(char32_t c) {
  return c == U',' || c == U'.' || c == U':' || c == U';' || c == U'!' || c == U'?';
}

std::u32string raw_of(const WordCrop& crop) {
  return text::to_u32(text::trim(crop.raw_label.empty() ? crop.label : crop.raw_label));
}

// Floating similarity such as 1 - 4/5 lands a hair under 0.2.
constexpr double kThresholdSlack = 1e-12;

}  // namespace

NormalizedLabel normalize_label(std::string_view raw) {
  auto cps = text::to_u32(text::trim(raw));
  std::size_t end = cps.size();
  while (end > 0 && is_strippable(cps[end - 1])) --end;
  NormalizedLabel out;
  out.stripped = text::to_utf8(std::u32string_view(cps).substr(end));
  cps.resize(end);
  out.label = text::trim(text::to_utf8(cps));
  if (out.label.empty()) throw Error(ErrorCode::EmptyLabel, "label \"" + std::string(raw) + "\" is only punctuation");
  return out;
}

StageDecision stage1_label_filter(const WordCrop& crop) {
  const auto raw = raw_of(crop);
  if (std::any_of(raw.begin(), raw.end(), text::is_latin_letter)) return StageDecision::rejected("latin");
  const bool all_punct = std::all_of(raw.begin(), raw.end(), [](char32_t c) {
    return text::is_punctuation(c) || text::is_space(c);
  });
  if (all_punct) return StageDecision::rejected("punctuation");
  const bool numeric = std::all_of(raw.begin(), raw.end(), [](char32_t c) {
    return text::is_digit(c) || text::is_punctuation(c) || text::is_space(c);
  });
  if (numeric) return StageDecision::rejected("digits");
  return StageDecision::kept();
}

StageDecision stage2_trailing_comma_filter(const WordCrop& crop) {
  const auto raw = raw_of(crop);
  if (!raw.empty() && raw.back() == U',') return StageDecision::rejected("trailing_comma");
  return StageDecision::kept();
}

StageDecision stage3_size_filter(const WordCrop& crop, const FilterConfig& cfg) {
  if (crop.width < cfg.min_width_px) return StageDecision::rejected("too_narrow");
  if (crop.height > cfg.max_height_px) return StageDecision::rejected("too_tall");
  return StageDecision::kept();
}

bool passes_unconditionally(const WordCrop& crop, const FilterConfig& cfg) {
  return text::length(crop.label) <= static_cast<std::size_t>(cfg.short_len_max);
}

bool stage4_keep(std::size_t label_length, double similarity, const FilterConfig& cfg) {
  if (label_length <= static_cast<std::size_t>(cfg.short_len_max)) return true;
  const double threshold =
      label_length <= static_cast<std::size_t>(cfg.mid_len_max) ? cfg.ocr_threshold_mid : cfg.ocr_threshold_long;
  return similarity + kThresholdSlack >= threshold;
}

StageDecision stage4_ocr_gate(const WordCrop& crop, const std::optional<OcrResult>& ocr, const FilterConfig& cfg) {
  const std::size_t len = text::length(crop.label);
  if (len <= static_cast<std::size_t>(cfg.short_len_max)) return StageDecision::kept();
  if (!ocr) throw Error(ErrorCode::MissingTranscription, "no OCR result for " + crop.crop_id);
  if (stage4_keep(len, similarity(crop.label, ocr->text), cfg)) return StageDecision::kept();
  return StageDecision::rejected("ocr_similarity");
}

std::vector<WordCrop> stage5_writer_filter(std::vector<WordCrop> crops, const FilterConfig& cfg) {
  std::map<std::string, std::size_t> counts;
  for (const auto& c : crops) ++counts[c.writer_id];
  const auto min_samples = static_cast<std::size_t>(cfg.min_writer_samples);
  std::erase_if(crops, [&](const WordCrop& c) { return counts[c.writer_id] < min_samples; });
  return crops;
}

namespace {

class StageTracker {
 public:
  StageTracker(int stage, std::string name, std::size_t input) {
    report_.stage = stage;
    report_.name = std::move(name);
    report_.input = input;
  }
  void reject(const std::string& reason) {
    ++report_.rejected;
    ++report_.reasons[reason];
  }
  StageReport finish(std::size_t kept) {
    report_.kept = kept;
    return report_;
  }

 private:
  StageReport report_;
};

}  // namespace

PipelineResult run_pipeline(const Manifest& input, const OcrBackend& ocr, const PipelineConfig& cfg,
                            ExecPolicy policy) {
  const FilterConfig& fc = cfg.filtering;
  PipelineResult result;
  result.report.input_samples = input.crops.size();

  std::vector<WordCrop> crops = input.crops;
  for (auto& c : crops) {
    if (c.raw_label.empty()) c.raw_label = c.label;
    try {
      c.label = normalize_label(c.raw_label).label;
    } catch (const Error&) {
      c.label = text::trim(c.raw_label);  // punctuation-only; stage 1 rejects it
    }
  }

  // Stage 1: per-crop predicate, evaluated in parallel.
  std::vector<StageDecision> decisions(crops.size());
  for_each_index(crops.size(), policy, [&](std::size_t i) { decisions[i] = stage1_label_filter(crops[i]); });
  StageTracker s1(1, "label_script", crops.size());
  std::vector<WordCrop> after1;
  for (std::size_t i = 0; i < crops.size(); ++i) {
    if (decisions[i].keep) {
      after1.push_back(std::move(crops[i]));
      continue;
    }
    s1.reject(decisions[i].reason);
    if (decisions[i].reason == "punctuation") result.punctuation_pool.push_back(std::move(crops[i]));
  }
  result.report.stages.push_back(s1.finish(after1.size()));

  StageTracker s2(2, "trailing_comma", after1.size());
  std::vector<WordCrop> after2;
  for (auto& c : after1) {
    const auto d = stage2_trailing_comma_filter(c);
    if (d.keep)
      after2.push_back(std::move(c));
    else
      s2.reject(d.reason);
  }
  result.report.stages.push_back(s2.finish(after2.size()));

  StageTracker s3(3, "size", after2.size());
  std::vector<WordCrop> after3;
  for (auto& c : after2) {
    const auto d = stage3_size_filter(c, fc);
    if (d.keep)
      after3.push_back(std::move(c));
    else
      s3.reject(d.reason);
  }
  result.report.stages.push_back(s3.finish(after3.size()));

  // Stage 4: only labels longer than short_len_max reach the recogniser.
  std::vector<WordCrop> to_query;
  std::vector<std::size_t> query_slot(after3.size(), SIZE_MAX);
  for (std::size_t i = 0; i < after3.size(); ++i) {
    if (passes_unconditionally(after3[i], fc)) continue;
    query_slot[i] = to_query.size();
    to_query.push_back(after3[i]);
  }
  Manifest query_ctx;
  query_ctx.base_dir = input.base_dir;
  const auto outcomes = ocr.transcribe_all(to_query, query_ctx, policy.mode == Exec::Serial ? 1 : policy.jobs);

  StageTracker s4(4, "ocr_agreement", after3.size());
  std::vector<WordCrop> after4;
  for (std::size_t i = 0; i < after3.size(); ++i) {
    std::optional<OcrResult> ocr_result;
    if (query_slot[i] != SIZE_MAX) {
      const auto& o = outcomes[query_slot[i]];
      if (!o.ok()) {
        s4.reject(std::string("held_back:") + to_string(*o.error));
        result.report.held_back.push_back(after3[i].crop_id);
        continue;
      }
      ocr_result = o.result;
    }
    const auto d = stage4_ocr_gate(after3[i], ocr_result, fc);
    if (d.keep)
      after4.push_back(std::move(after3[i]));
    else
      s4.reject(d.reason);
  }
  result.report.stages.push_back(s4.finish(after4.size()));

  StageTracker s5(5, "writer_support", after4.size());
  auto after5 = stage5_writer_filter(after4, fc);
  for (std::size_t i = 0; i < after4.size() - after5.size(); ++i) s5.reject("few_writer_samples");
  result.report.stages.push_back(s5.finish(after5.size()));

  std::set<std::string> writers;
  for (const auto& c : after5) writers.insert(c.writer_id);
  result.report.final_samples = after5.size();
  result.report.final_writers = writers.size();
  result.report.punctuation_pool = result.punctuation_pool.size();

  result.kept.crops = std::move(after5);
  result.kept.base_dir = input.base_dir;
  result.kept.meta = input.meta;
  result.kept.meta.stage = "filtered";
  result.kept.meta.config_hash = config_hash(cfg);
  result.kept.meta.tool_version = tool_version();
  return result;
}

ordered_json to_json(const FilterReport& r) {
  ordered_json stages = ordered_json::array();
  for (const auto& s : r.stages) {
    ordered_json reasons = ordered_json::object();
    for (const auto& [k, v] : s.reasons) reasons[k] = v;
    stages.push_back(ordered_json{{"stage", s.stage},
                                  {"name", s.name},
                                  {"input", s.input},
                                  {"rejected", s.rejected},
                                  {"kept", s.kept},
                                  {"reasons", reasons}});
  }
  return ordered_json{{"input_samples", r.input_samples},
                      {"stages", stages},
                      {"final_samples", r.final_samples},
                      {"final_writers", r.final_writers},
                      {"punctuation_pool", r.punctuation_pool},
                      {"held_back", r.held_back}};
}

int oversample_multiplicity(std::string_view label, const BalanceConfig& cfg) {
  const auto cps = text::to_u32(label);
  int f = 1;
  for (const auto& letter : cfg.rare_letters) {
    const auto l = text::to_u32(letter);
    if (l.size() != 1 || cps.find(l[0]) == std::u32string::npos) continue;
    f = std::max(f, std::clamp(cfg.factor_for(letter), cfg.factor_min, cfg.factor_max));
  }
  return f;
}

Manifest oversample(const Manifest& input, const BalanceConfig& cfg, BalanceReport* report) {
  Manifest out;
  out.base_dir = input.base_dir;
  out.meta = input.meta;
  out.meta.stage = "balanced";
  BalanceReport r;
  r.input_samples = input.crops.size();
  for (const auto& c : input.crops) {
    const int f = oversample_multiplicity(c.label, cfg);
    out.crops.push_back(c);
    if (f > 1) ++r.crops_with_rare_letters;
    const auto cps = text::to_u32(c.label);
    for (const auto& letter : cfg.rare_letters) {
      const auto l = text::to_u32(letter);
      if (l.size() == 1 && cps.find(l[0]) != std::u32string::npos) ++r.crops_per_letter[letter];
    }
    for (int k = 1; k < f; ++k) {
      WordCrop dup = c;
      dup.crop_id = c.crop_id + "~r" + std::to_string(k);
      dup.repeat_index = k;
      out.crops.push_back(std::move(dup));
      ++r.duplicates_added;
    }
  }
  r.output_samples = out.crops.size();
  if (report) *report = r;
  return out;
}

ordered_json to_json(const BalanceReport& r) {
  ordered_json letters = ordered_json::object();
  for (const auto& [k, v] : r.crops_per_letter) letters[k] = v;
  return ordered_json{{"input_samples", r.input_samples},
                      {"output_samples", r.output_samples},
                      {"duplicates_added", r.duplicates_added},
                      {"crops_with_rare_letters", r.crops_with_rare_letters},
                      {"crops_per_letter", letters}};
}

}  // namespace hwset
