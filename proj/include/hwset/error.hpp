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

#include <stdexcept>
#include <string>

namespace hwset {

enum class ErrorCode {
  InvalidInput,
  Io,
  ConfigError,
  NoInk,
  UnderSegmented,
  EmptyCorpus,
  EmptyLabel,
  MissingTranscription,
  BackendUnavailable,
  ProtocolError,
  ImageRejected,
  InvalidSample,
  NotSymmetric,
  DimensionMismatch,
  EmptyBank,
  EmptyPlan,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Fewer word groups were found than the transcript has words.
class UnderSegmented : public Error {
 public:
  UnderSegmented(int groups, int words);
  int groups() const noexcept { return groups_; }
  int words() const noexcept { return words_; }

 private:
  int groups_;
  int words_;
};

}  // namespace hwset
