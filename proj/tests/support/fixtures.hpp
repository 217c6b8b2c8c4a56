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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hwset/manifest.hpp"

namespace hwset::fixture {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "hwset");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Runs the hwset binary in `cwd`; stdout and stderr go to `cwd/cli.log`.
/// Returns the exit status.
int run_cli(const std::filesystem::path& cwd, const std::string& args);

WordCrop crop(const std::string& id, const std::string& writer, const std::string& label, int width = 40,
              int height = 30, const std::string& raw_label = "");

}  // namespace hwset::fixture
