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

#include "hwset/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "hwset/error.hpp"

namespace hwset {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const WordCrop& c) {
  ordered_json j{{"crop_id", c.crop_id},   {"writer_id", c.writer_id},   {"label", c.label},
                 {"raw_label", c.raw_label}, {"image", c.image},         {"width", c.width},
                 {"height", c.height},     {"line_id", c.line_id},       {"word_index", c.word_index},
                 {"repeat_index", c.repeat_index}};
  if (c.x_left && c.x_right) j["span"] = {*c.x_left, *c.x_right};
  return j;
}

WordCrop word_crop_from_json(const json& j) {
  WordCrop c;
  try {
    c.crop_id = j.at("crop_id").get<std::string>();
    c.writer_id = j.at("writer_id").get<std::string>();
    c.raw_label = j.value("raw_label", std::string());
    c.label = j.value("label", c.raw_label);
    if (c.raw_label.empty()) c.raw_label = c.label;
    c.image = j.value("image", std::string());
    c.width = j.value("width", 0);
    c.height = j.value("height", 0);
    c.line_id = j.value("line_id", std::string());
    c.word_index = j.value("word_index", 0);
    c.repeat_index = j.value("repeat_index", 0);
    if (j.contains("span")) {
      const auto& s = j.at("span");
      c.x_left = s.at(0).get<int>();
      c.x_right = s.at(1).get<int>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad WordCrop record: ") + e.what());
  }
  if (c.repeat_index < 0) throw Error(ErrorCode::InvalidInput, "repeat_index must be >= 0");
  return c;
}

std::filesystem::path Manifest::resolve(const WordCrop& crop) const {
  std::filesystem::path p(crop.image);
  return p.is_absolute() ? p : base_dir / p;
}

void Manifest::check() const {
  std::set<std::string> ids;
  for (const auto& c : crops) {
    if (!ids.insert(c.crop_id).second) throw Error(ErrorCode::InvalidInput, "duplicate crop_id " + c.crop_id);
    if (c.label.empty()) throw Error(ErrorCode::InvalidInput, "empty label for " + c.crop_id);
  }
}

std::filesystem::path meta_path_for(const std::filesystem::path& manifest_path) {
  return manifest_path.string() + ".meta.json";
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidInput, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Manifest read_manifest(const std::filesystem::path& path) {
  Manifest m;
  m.base_dir = path.parent_path();
  for (const auto& j : read_jsonl(path)) m.crops.push_back(word_crop_from_json(j));
  const auto meta = meta_path_for(path);
  if (std::filesystem::exists(meta)) {
    std::ifstream in(meta);
    const json j = json::parse(in, nullptr, false);
    if (j.is_object()) {
      m.meta.source = j.value("source", std::string());
      m.meta.stage = j.value("stage", std::string());
      m.meta.config_hash = j.value("config_hash", std::string());
      m.meta.seed = j.value("seed", std::uint64_t{0});
      m.meta.tool_version = j.value("tool_version", std::string());
    }
  }
  return m;
}

Manifest rebase(Manifest manifest, const std::filesystem::path& new_base) {
  const auto from = std::filesystem::absolute(manifest.base_dir.empty() ? "." : manifest.base_dir);
  const auto to = std::filesystem::absolute(new_base.empty() ? "." : new_base);
  for (auto& c : manifest.crops) {
    const std::filesystem::path p(c.image);
    if (c.image.empty() || p.is_absolute()) continue;
    c.image = (from / p).lexically_normal().lexically_relative(to.lexically_normal()).generic_string();
  }
  manifest.base_dir = new_base;
  return manifest;
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  std::string body;
  for (const auto& c : manifest.crops) {
    body += to_json(c).dump();
    body += '\n';
  }
  write_file_atomic(path, body);
  write_json_atomic(meta_path_for(path), ordered_json{{"source", manifest.meta.source},
                                                     {"stage", manifest.meta.stage},
                                                     {"config_hash", manifest.meta.config_hash},
                                                     {"seed", manifest.meta.seed},
                                                     {"tool_version", manifest.meta.tool_version},
                                                     {"count", manifest.crops.size()}});
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::Io, "rename to " + path.string() + " failed: " + ec.message());
  }
}

void write_json_atomic(const std::filesystem::path& path, const ordered_json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace hwset
