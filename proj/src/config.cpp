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

#include "hwset/config.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "hwset/error.hpp"
#include "hwset/text.hpp"

namespace hwset {

using nlohmann::json;
using nlohmann::ordered_json;

int BalanceConfig::factor_for(const std::string& letter) const {
  const auto it = factors.find(letter);
  return it == factors.end() ? default_factor : it->second;
}

std::u32string PipelineConfig::rare_letter_set() const {
  std::u32string out;
  for (const auto& letter : balancing.rare_letters) out += text::to_u32(letter);
  return out;
}

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) config_error(msg);
}

}  // namespace

void PipelineConfig::validate() const {
  const auto& s = segmentation;
  require(s.merge_px >= 0, "segmentation.merge_px must be >= 0");
  require(s.boundary_tol_px >= 0, "segmentation.boundary_tol_px must be >= 0");
  require(s.crop_margin_px >= 0, "segmentation.crop_margin_px must be >= 0");
  require(s.projection_min_gap_px >= 0, "segmentation.projection_min_gap_px must be >= 0");

  const auto& f = filtering;
  require(f.min_width_px >= 1, "filtering.min_width_px must be >= 1");
  require(f.max_height_px >= 1, "filtering.max_height_px must be >= 1");
  require(f.ocr_threshold_long >= 0.0 && f.ocr_threshold_long <= 1.0,
          "filtering.ocr_threshold_long must be in [0,1]");
  require(f.ocr_threshold_mid >= 0.0 && f.ocr_threshold_mid <= 1.0,
          "filtering.ocr_threshold_mid must be in [0,1]");
  require(f.short_len_max >= 0 && f.mid_len_max >= f.short_len_max,
          "filtering: need 0 <= short_len_max <= mid_len_max");
  require(f.min_writer_samples >= 0, "filtering.min_writer_samples must be >= 0");

  const auto& b = balancing;
  require(b.factor_min >= 1 && b.factor_min <= b.factor_max,
          "balancing: need 1 <= oversample_factor_min <= oversample_factor_max");
  require(b.default_factor >= b.factor_min && b.default_factor <= b.factor_max,
          "balancing.default_factor outside [oversample_factor_min, oversample_factor_max]");
  for (const auto& letter : b.rare_letters)
    require(text::length(letter) == 1, "balancing.rare_letters entries must be single letters: " + letter);
  for (const auto& [letter, factor] : b.factors)
    require(factor >= b.factor_min && factor <= b.factor_max,
            "balancing.factors[" + letter + "] = " + std::to_string(factor) + " outside [" +
                std::to_string(b.factor_min) + "," + std::to_string(b.factor_max) + "]");

  const auto& a = assembly;
  require(a.body_span_frac > 0.0 && a.body_span_frac <= 1.0, "assembly.body_span_frac must be in (0,1]");
  require(a.brightness_pct > 0.0 && a.brightness_pct < 50.0, "assembly.brightness_pct must be in (0,50)");
  require(a.punct_bank_size >= 0, "assembly.punct_bank_size must be >= 0");
  require(a.word_gap_factor >= 0.0, "assembly.word_gap_factor must be >= 0");
  require(a.punct_scale > 0.0, "assembly.punct_scale must be > 0");
  require(a.hyphen_width_factor > 0.0, "assembly.hyphen_width_factor must be > 0");

  require(canvas.height >= 1 && canvas.width >= 1, "canvas dimensions must be >= 1");
}

ordered_json to_json(const PipelineConfig& cfg) {
  ordered_json factors = ordered_json::object();
  for (const auto& letter : cfg.balancing.rare_letters) factors[letter] = cfg.balancing.factor_for(letter);
  for (const auto& [letter, factor] : cfg.balancing.factors)
    if (!factors.contains(letter)) factors[letter] = factor;

  return ordered_json{
      {"segmentation",
       {{"merge_px", cfg.segmentation.merge_px},
        {"boundary_tol_px", cfg.segmentation.boundary_tol_px},
        {"crop_margin_px", cfg.segmentation.crop_margin_px},
        {"projection_min_gap_px", cfg.segmentation.projection_min_gap_px},
        {"auto_invert", cfg.segmentation.auto_invert}}},
      {"filtering",
       {{"min_width_px", cfg.filtering.min_width_px},
        {"max_height_px", cfg.filtering.max_height_px},
        {"ocr_threshold_long", cfg.filtering.ocr_threshold_long},
        {"ocr_threshold_mid", cfg.filtering.ocr_threshold_mid},
        {"short_len_max", cfg.filtering.short_len_max},
        {"mid_len_max", cfg.filtering.mid_len_max},
        {"min_writer_samples", cfg.filtering.min_writer_samples}}},
      {"balancing",
       {{"rare_letters", cfg.balancing.rare_letters},
        {"oversample_factor_min", cfg.balancing.factor_min},
        {"oversample_factor_max", cfg.balancing.factor_max},
        {"default_factor", cfg.balancing.default_factor},
        {"factors", factors}}},
      {"assembly",
       {{"body_span_frac", cfg.assembly.body_span_frac},
        {"brightness_pct", cfg.assembly.brightness_pct},
        {"punct_bank_size", cfg.assembly.punct_bank_size},
        {"word_gap_factor", cfg.assembly.word_gap_factor},
        {"punct_scale", cfg.assembly.punct_scale},
        {"hyphen_width_factor", cfg.assembly.hyphen_width_factor}}},
      {"canvas", {{"height", cfg.canvas.height}, {"width", cfg.canvas.width}}},
      {"metrics", {{"unbiased_covariance", cfg.metrics.unbiased_covariance}}},
  };
}

ordered_json to_json(const RunConfig& cfg) {
  ordered_json j = to_json(cfg.pipeline);
  j["run"] = ordered_json{
      {"seed", cfg.seed},
      {"jobs", cfg.jobs},
      {"log_level", cfg.log_level},
      {"ocr",
       {{"backend", cfg.ocr.backend},
        {"endpoint", cfg.ocr.endpoint},
        {"table", cfg.ocr.table},
        {"timeout_s", cfg.ocr.timeout_s},
        {"max_inflight", cfg.ocr.max_inflight},
        {"retries", cfg.ocr.retries},
        {"backoff_ms", cfg.ocr.backoff_ms}}},
  };
  return j;
}

namespace {

// Reads known keys of one section and rejects anything else.
class Section {
 public:
  Section(const json& parent, const std::string& name) : name_(name) {
    if (!parent.contains(name)) return;
    node_ = &parent.at(name);
    if (!node_->is_object()) config_error(name + " must be an object");
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    if (node_ == nullptr || !node_->contains(key)) return;
    try {
      out = node_->at(key).get<T>();
    } catch (const json::exception& e) {
      config_error(name_ + "." + key + ": " + e.what());
    }
  }

  void finish() const {
    if (node_ == nullptr) return;
    for (const auto& item : node_->items())
      if (!seen_.count(item.key())) config_error("unknown config key " + name_ + "." + item.key());
  }

 private:
  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> seen_;
};

void check_top_level(const json& j, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) config_error("config must be a JSON object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) config_error("unknown config section " + item.key());
  }
}

PipelineConfig read_pipeline(const json& j) {
  PipelineConfig cfg;
  {
    Section s(j, "segmentation");
    s.read("merge_px", cfg.segmentation.merge_px);
    s.read("boundary_tol_px", cfg.segmentation.boundary_tol_px);
    s.read("crop_margin_px", cfg.segmentation.crop_margin_px);
    s.read("projection_min_gap_px", cfg.segmentation.projection_min_gap_px);
    s.read("auto_invert", cfg.segmentation.auto_invert);
    s.finish();
  }
  {
    Section s(j, "filtering");
    s.read("min_width_px", cfg.filtering.min_width_px);
    s.read("max_height_px", cfg.filtering.max_height_px);
    s.read("ocr_threshold_long", cfg.filtering.ocr_threshold_long);
    s.read("ocr_threshold_mid", cfg.filtering.ocr_threshold_mid);
    s.read("short_len_max", cfg.filtering.short_len_max);
    s.read("mid_len_max", cfg.filtering.mid_len_max);
    s.read("min_writer_samples", cfg.filtering.min_writer_samples);
    s.finish();
  }
  {
    Section s(j, "balancing");
    s.read("rare_letters", cfg.balancing.rare_letters);
    s.read("oversample_factor_min", cfg.balancing.factor_min);
    s.read("oversample_factor_max", cfg.balancing.factor_max);
    s.read("default_factor", cfg.balancing.default_factor);
    s.read("factors", cfg.balancing.factors);
    s.finish();
  }
  {
    Section s(j, "assembly");
    s.read("body_span_frac", cfg.assembly.body_span_frac);
    s.read("brightness_pct", cfg.assembly.brightness_pct);
    s.read("punct_bank_size", cfg.assembly.punct_bank_size);
    s.read("word_gap_factor", cfg.assembly.word_gap_factor);
    s.read("punct_scale", cfg.assembly.punct_scale);
    s.read("hyphen_width_factor", cfg.assembly.hyphen_width_factor);
    s.finish();
  }
  {
    Section s(j, "canvas");
    s.read("height", cfg.canvas.height);
    s.read("width", cfg.canvas.width);
    s.finish();
  }
  {
    Section s(j, "metrics");
    s.read("unbiased_covariance", cfg.metrics.unbiased_covariance);
    s.finish();
  }
  cfg.validate();
  return cfg;
}

}  // namespace

PipelineConfig pipeline_config_from_json(const json& j) {
  check_top_level(j, {"segmentation", "filtering", "balancing", "assembly", "canvas", "metrics"});
  return read_pipeline(j);
}

RunConfig run_config_from_json(const json& j) {
  check_top_level(j, {"segmentation", "filtering", "balancing", "assembly", "canvas", "metrics", "run"});
  RunConfig cfg;
  cfg.pipeline = read_pipeline(j);
  if (j.contains("run")) {
    Section run(j, "run");
    run.read("seed", cfg.seed);
    run.read("jobs", cfg.jobs);
    run.read("log_level", cfg.log_level);
    json ocr_node = json::object();
    run.read("ocr", ocr_node);
    run.finish();

    const json wrapper{{"ocr", ocr_node}};
    Section ocr(wrapper, "ocr");
    ocr.read("backend", cfg.ocr.backend);
    ocr.read("endpoint", cfg.ocr.endpoint);
    ocr.read("table", cfg.ocr.table);
    ocr.read("timeout_s", cfg.ocr.timeout_s);
    ocr.read("max_inflight", cfg.ocr.max_inflight);
    ocr.read("retries", cfg.ocr.retries);
    ocr.read("backoff_ms", cfg.ocr.backoff_ms);
    ocr.finish();
  }
  if (cfg.ocr.backend != "file" && cfg.ocr.backend != "http" && cfg.ocr.backend != "echo")
    config_error("run.ocr.backend must be file, http or echo");
  if (cfg.ocr.timeout_s <= 0) config_error("run.ocr.timeout_s must be > 0");
  if (cfg.ocr.max_inflight < 1) config_error("run.ocr.max_inflight must be >= 1");
  if (cfg.ocr.retries < 0) config_error("run.ocr.retries must be >= 0");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    config_error(path.string() + ": " + e.what());
  }
  return run_config_from_json(j);
}

std::string config_hash(const PipelineConfig& cfg) {
  const std::string canonical = json(to_json(cfg)).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::Io, "SHA-256 failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

std::string tool_version() { return HWSET_VERSION; }

}  // namespace hwset
