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

#include <cstddef>
#include <functional>

namespace hwset {

enum class Exec { Serial, Parallel };

/// How a batch operation runs. `jobs` <= 0 means the OpenMP runtime default.
struct ExecPolicy {
  Exec mode = Exec::Parallel;
  int jobs = 0;

  static ExecPolicy serial() { return {Exec::Serial, 1}; }
  static ExecPolicy parallel(int jobs = 0) { return {Exec::Parallel, jobs}; }
};

int resolve_jobs(int jobs);

/// Calls fn(i) for i in [0, n). The parallel path uses a dynamic OpenMP
/// schedule; fn must not throw and must only write to slot i of its outputs.
void for_each_index(std::size_t n, ExecPolicy policy, const std::function<void(std::size_t)>& fn);

}  // namespace hwset
