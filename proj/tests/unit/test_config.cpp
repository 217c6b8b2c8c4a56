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

#include <functional>

#include "fixtures.hpp"
#include "hwset/config.hpp"
#include "hwset/error.hpp"

using namespace hwset;
using nlohmann::json;

namespace {

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

TEST(Config, DefaultsAreThePublishedConstants) {
  const PipelineConfig c;
  EXPECT_EQ(c.segmentation.merge_px, 8);
  EXPECT_EQ(c.segmentation.boundary_tol_px, 5);
  EXPECT_EQ(c.filtering.min_width_px, 20);
  EXPECT_EQ(c.filtering.max_height_px, 100);
  EXPECT_DOUBLE_EQ(c.filtering.ocr_threshold_long, 0.4);
  EXPECT_DOUBLE_EQ(c.filtering.ocr_threshold_mid, 0.2);
  EXPECT_EQ(c.filtering.short_len_max, 3);
  EXPECT_EQ(c.filtering.mid_len_max, 5);
  EXPECT_EQ(c.filtering.min_writer_samples, 50);
  EXPECT_EQ(c.balancing.rare_letters, (std::vector<std::string>{"ф", "ґ", "Щ", "Є", "Ц", "ї"}));
  EXPECT_EQ(c.balancing.factor_min, 2);
  EXPECT_EQ(c.balancing.factor_max, 5);
  EXPECT_DOUBLE_EQ(c.assembly.body_span_frac, 0.35);
  EXPECT_DOUBLE_EQ(c.assembly.brightness_pct, 5.0);
  EXPECT_EQ(c.assembly.punct_bank_size, 500);
  EXPECT_EQ(c.canvas.height, 64);
  EXPECT_EQ(c.canvas.width, 256);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.rare_letter_set(), U"фґЩЄЦї");
}

TEST(Config, PartialOverrideKeepsOtherDefaults) {
  const auto c = pipeline_config_from_json(json::parse(R"({"segmentation": {"merge_px": 12}})"));
  EXPECT_EQ(c.segmentation.merge_px, 12);
  EXPECT_EQ(c.segmentation.boundary_tol_px, 5);
  EXPECT_EQ(c.filtering.min_writer_samples, 50);
}

TEST(Config, UnknownKeysAreRejected) {
  EXPECT_EQ(code_of([] { pipeline_config_from_json(json::parse(R"({"segmentation": {"merge": 1}})")); }),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { pipeline_config_from_json(json::parse(R"({"segmentaton": {}})")); }),
            ErrorCode::ConfigError);
}

TEST(Config, FactorOutsideRangeIsAConfigError) {
  EXPECT_EQ(code_of([] { pipeline_config_from_json(json::parse(R"({"balancing": {"factors": {"ф": 6}}})")); }),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { pipeline_config_from_json(json::parse(R"({"balancing": {"factors": {"ф": 1}}})")); }),
            ErrorCode::ConfigError);
  const auto ok = pipeline_config_from_json(json::parse(R"({"balancing": {"factors": {"ф": 5}}})"));
  EXPECT_EQ(ok.balancing.factor_for("ф"), 5);
  EXPECT_EQ(ok.balancing.factor_for("ґ"), 3);
}

TEST(Config, ValidationCatchesBadRanges) {
  PipelineConfig c;
  c.assembly.brightness_pct = 50.0;
  EXPECT_THROW(c.validate(), Error);
  c = PipelineConfig{};
  c.filtering.ocr_threshold_long = 1.5;
  EXPECT_THROW(c.validate(), Error);
  c = PipelineConfig{};
  c.balancing.rare_letters = {"фф"};
  EXPECT_THROW(c.validate(), Error);
}

TEST(Config, RunConfigRoundTripAndFile) {
  RunConfig r;
  r.seed = 42;
  r.jobs = 3;
  r.ocr.backend = "file";
  r.ocr.table = "t.jsonl";
  r.pipeline.filtering.min_width_px = 25;
  const auto j = to_json(r);
  EXPECT_EQ(to_json(run_config_from_json(json::parse(j.dump()))), j);

  fixture::TempDir dir;
  fixture::write_text(dir / "cfg.json", j.dump(2));
  const auto loaded = load_run_config(dir / "cfg.json");
  EXPECT_EQ(loaded.seed, 42u);
  EXPECT_EQ(loaded.pipeline.filtering.min_width_px, 25);
  EXPECT_THROW(load_run_config(dir / "missing.json"), Error);
  fixture::write_text(dir / "bad.json", "{not json");
  EXPECT_THROW(load_run_config(dir / "bad.json"), Error);
}

TEST(Config, HashCoversPipelineOnly) {
  const PipelineConfig a;
  PipelineConfig b;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 64u);
  b.segmentation.merge_px = 9;
  EXPECT_NE(config_hash(a), config_hash(b));
  RunConfig r1, r2;
  r2.seed = 7;
  r2.jobs = 2;
  EXPECT_EQ(config_hash(r1.pipeline), config_hash(r2.pipeline));
}
