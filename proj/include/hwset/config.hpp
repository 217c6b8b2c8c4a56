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

// Every numeric constant of the pipeline lives here. Defaults reproduce the
// published dataset-construction settings; a JSON config file overrides any
// subset of them.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace hwset {

struct SegmentationConfig {
  int merge_px = 8;
  int boundary_tol_px = 5;
  int crop_margin_px = 2;
  int projection_min_gap_px = 8;
  bool auto_invert = true;
};

struct FilterConfig {
  int min_width_px = 20;
  int max_height_px = 100;
  double ocr_threshold_long = 0.4;
  double ocr_threshold_mid = 0.2;
  int short_len_max = 3;
  int mid_len_max = 5;
  int min_writer_samples = 50;
};

struct BalanceConfig {
  /// UTF-8, one letter per entry; matched on exact code points.
  std::vector<std::string> rare_letters = {"ф", "ґ", "Щ", "Є", "Ц", "ї"};
  int factor_min = 2;
  int factor_max = 5;
  int default_factor = 3;
  /// Per-letter total multiplicity; letters missing here use default_factor.
  std::map<std::string, int> factors;

  int factor_for(const std::string& letter) const;
};

struct AssemblyConfig {
  double body_span_frac = 0.35;
  double brightness_pct = 5.0;
  int punct_bank_size = 500;
  double word_gap_factor = 0.4;
  double punct_scale = 0.25;
  double hyphen_width_factor = 0.5;
};

struct CanvasConfig {
  int height = 64;
  int width = 256;
};

struct MetricsConfig {
  bool unbiased_covariance = true;
};

struct PipelineConfig {
  SegmentationConfig segmentation;
  FilterConfig filtering;
  BalanceConfig balancing;
  AssemblyConfig assembly;
  CanvasConfig canvas;
  MetricsConfig metrics;

  /// Throws Error(ConfigError) when a value is out of its documented range.
  void validate() const;
  std::u32string rare_letter_set() const;
};

struct OcrSettings {
  std::string backend = "echo";  // file | http | echo
  std::string endpoint;
  std::string table;
  double timeout_s = 10.0;
  int max_inflight = 4;
  int retries = 3;
  int backoff_ms = 100;
};

struct RunConfig {
  PipelineConfig pipeline;
  OcrSettings ocr;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string log_level = "info";
};

nlohmann::ordered_json to_json(const PipelineConfig& cfg);
nlohmann::ordered_json to_json(const RunConfig& cfg);

/// Missing keys keep their defaults; unknown keys are rejected.
PipelineConfig pipeline_config_from_json(const nlohmann::json& j);
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// SHA-256 (hex) of the canonical pipeline-config JSON. Run settings such as
/// paths, seed and job count do not enter the hash.
std::string config_hash(const PipelineConfig& cfg);

std::string tool_version();

}  // namespace hwset
