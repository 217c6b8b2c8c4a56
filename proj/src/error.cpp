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

#include "hwset/error.hpp"

namespace hwset {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Io: return "Io";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::NoInk: return "NoInk";
    case ErrorCode::UnderSegmented: return "UnderSegmented";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::MissingTranscription: return "MissingTranscription";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::ImageRejected: return "ImageRejected";
    case ErrorCode::InvalidSample: return "InvalidSample";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyBank: return "EmptyBank";
    case ErrorCode::EmptyPlan: return "EmptyPlan";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

UnderSegmented::UnderSegmented(int groups, int words)
    : Error(ErrorCode::UnderSegmented,
            std::to_string(groups) + " word groups for " + std::to_string(words) + " words"),
      groups_(groups),
      words_(words) {}

}  // namespace hwset
