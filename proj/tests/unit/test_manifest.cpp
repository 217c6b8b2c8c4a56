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

#include "fixtures.hpp"
#include "hwset/error.hpp"
#include "hwset/manifest.hpp"

using namespace hwset;
namespace fs = std::filesystem;

TEST(Manifest, RoundTripPreservesOrderAndMeta) {
  fixture::TempDir dir;
  Manifest m;
  m.meta = {"corpus.jsonl", "segmented", "abc", 9, "0.3.0"};
  for (const char* id : {"z", "a", "m"}) m.crops.push_back(fixture::crop(id, "w1", std::string("слово") + id));
  m.crops[1].x_left = 3;
  m.crops[1].x_right = 40;
  m.crops[2].repeat_index = 2;
  write_manifest(dir / "m.jsonl", m);
  EXPECT_TRUE(fs::exists(meta_path_for(dir / "m.jsonl")));

  const auto back = read_manifest(dir / "m.jsonl");
  EXPECT_EQ(back.crops, m.crops);
  EXPECT_EQ(back.meta, m.meta);
  EXPECT_EQ(back.base_dir, dir.path());
  EXPECT_EQ(back.resolve(back.crops[0]), dir.path() / "crops/z.png");

  write_manifest(dir / "again.jsonl", back);
  EXPECT_EQ(fixture::slurp(dir / "m.jsonl"), fixture::slurp(dir / "again.jsonl"));
}

TEST(Manifest, CheckRejectsDuplicatesAndEmptyLabels) {
  Manifest m;
  m.crops = {fixture::crop("a", "w", "x"), fixture::crop("a", "w", "y")};
  EXPECT_THROW(m.check(), Error);
  m.crops = {fixture::crop("a", "w", "")};
  EXPECT_THROW(m.check(), Error);
  m.crops = {fixture::crop("a", "w", "x"), fixture::crop("b", "w", "y")};
  EXPECT_NO_THROW(m.check());
}

TEST(Manifest, RebaseKeepsImagesReachable) {
  Manifest m;
  m.base_dir = "/data/run/seg";
  m.crops = {fixture::crop("a", "w", "x")};
  m.crops.push_back(fixture::crop("b", "w", "y"));
  m.crops.back().image = "/abs/b.png";
  const auto r = rebase(m, "/data/run/filt");
  EXPECT_EQ(r.crops[0].image, "../seg/crops/a.png");
  EXPECT_EQ(r.crops[1].image, "/abs/b.png");
  EXPECT_EQ(fs::path(r.resolve(r.crops[0])).lexically_normal(), fs::path("/data/run/seg/crops/a.png"));
}

TEST(Manifest, JsonlErrorsNameTheLine) {
  fixture::TempDir dir;
  fixture::write_text(dir / "bad.jsonl", "{\"crop_id\":\"a\"}\n\n{oops\n");
  try {
    read_jsonl(dir / "bad.jsonl");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(read_manifest(dir / "missing.jsonl"), Error);
}

TEST(Manifest, WordCropJsonRequiresCoreFields) {
  EXPECT_THROW(word_crop_from_json(nlohmann::json::parse(R"({"crop_id":"a"})")), Error);
  const auto c = fixture::crop("a", "w", "м'яч");
  EXPECT_EQ(word_crop_from_json(nlohmann::json::parse(to_json(c).dump())), c);
}
