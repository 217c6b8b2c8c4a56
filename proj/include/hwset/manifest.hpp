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

// Word-level manifests: one WordCrop JSON object per line, plus a sidecar
// `<manifest>.meta.json` carrying provenance.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hwset {

struct WordCrop {
  std::string crop_id;
  std::string writer_id;
  std::string label;
  std::string raw_label;
  std::string image;  // path, relative to the manifest directory unless absolute
  int width = 0;
  int height = 0;
  std::string line_id;
  int word_index = 0;
  int repeat_index = 0;
  std::optional<int> x_left;
  std::optional<int> x_right;

  friend bool operator==(const WordCrop&, const WordCrop&) = default;
};

nlohmann::ordered_json to_json(const WordCrop& crop);
WordCrop word_crop_from_json(const nlohmann::json& j);

struct ManifestMeta {
  std::string source;
  std::string stage;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string tool_version;

  friend bool operator==(const ManifestMeta&, const ManifestMeta&) = default;
};

struct Manifest {
  std::vector<WordCrop> crops;
  ManifestMeta meta;
  /// Directory that relative image paths resolve against.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const WordCrop& crop) const;
  /// Throws Error(InvalidInput) on duplicate crop ids or an empty label.
  void check() const;
};

Manifest read_manifest(const std::filesystem::path& path);

/// Rewrites relative image paths so they resolve against `new_base`.
Manifest rebase(Manifest manifest, const std::filesystem::path& new_base);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
std::filesystem::path meta_path_for(const std::filesystem::path& manifest_path);

/// Parses a JSON-lines file, skipping blank lines; errors carry the line number.
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);

void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
void write_json_atomic(const std::filesystem::path& path, const nlohmann::ordered_json& j);

}  // namespace hwset
