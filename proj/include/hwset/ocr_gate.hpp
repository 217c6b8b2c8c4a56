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

// OCR transcription backends (precomputed table, HTTP service, synthetic) and
// the label similarity consumed by filtering stage 4.

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hwset/config.hpp"
#include "hwset/error.hpp"
#include "hwset/manifest.hpp"

namespace hwset {

struct OcrResult {
  std::string text;
  std::optional<double> confidence;

  friend bool operator==(const OcrResult&, const OcrResult&) = default;
};

/// One crop's transcription, or the error that held it back.
struct OcrOutcome {
  std::optional<OcrResult> result;
  std::optional<ErrorCode> error;
  std::string message;

  bool ok() const { return result.has_value(); }
};

/// 1 - levenshtein(a, b) / max(|a|, |b|) over code points; 0 when b is empty.
double similarity(std::string_view a, std::string_view b);

class OcrBackend {
 public:
  virtual ~OcrBackend() = default;
  virtual std::string kind() const = 0;

  /// `manifest` supplies the base directory for image paths.
  virtual OcrResult transcribe(const WordCrop& crop, const Manifest& manifest) const = 0;

  /// Transcribes in parallel (up to `jobs`), returning outcomes in input order.
  virtual std::vector<OcrOutcome> transcribe_all(std::span<const WordCrop> crops, const Manifest& manifest,
                                                 int jobs) const;
};

/// Lookup table keyed by crop_id, one JSON object per line:
/// {"crop_id", "text", "confidence"?}.
class FileOcrBackend : public OcrBackend {
 public:
  explicit FileOcrBackend(std::map<std::string, OcrResult> table);
  static FileOcrBackend load(const std::filesystem::path& path);

  std::string kind() const override { return "file"; }
  OcrResult transcribe(const WordCrop& crop, const Manifest& manifest) const override;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, OcrResult> table_;
};

/// Test backend: echoes the label, or corrupts it with seeded substitutions.
class SyntheticOcrBackend : public OcrBackend {
 public:
  enum class Mode { Echo, Corrupt };

  static SyntheticOcrBackend echo() { return SyntheticOcrBackend(Mode::Echo, 0, 0.0); }
  static SyntheticOcrBackend corrupt(std::uint64_t seed, double rate) {
    return SyntheticOcrBackend(Mode::Corrupt, seed, rate);
  }

  std::string kind() const override { return "synthetic"; }
  OcrResult transcribe(const WordCrop& crop, const Manifest& manifest) const override;

 private:
  SyntheticOcrBackend(Mode mode, std::uint64_t seed, double rate) : mode_(mode), seed_(seed), rate_(rate) {}
  Mode mode_;
  std::uint64_t seed_;
  double rate_;
};

struct HttpOcrOptions {
  std::string endpoint;  // e.g. http://127.0.0.1:8080 or http://host:port/prefix
  std::chrono::milliseconds timeout{10000};
  int max_inflight = 4;
  int retries = 3;
  std::chrono::milliseconds backoff{100};
};

/// POST {endpoint}/transcribe with the crop PNG; expects 200 and
/// {"text": string, "confidence": number}. 422 is final (ImageRejected); 5xx
/// and transport failures are retried with exponential backoff before
/// BackendUnavailable.
class HttpOcrBackend : public OcrBackend {
 public:
  explicit HttpOcrBackend(HttpOcrOptions options);

  std::string kind() const override { return "http"; }
  OcrResult transcribe(const WordCrop& crop, const Manifest& manifest) const override;
  std::vector<OcrOutcome> transcribe_all(std::span<const WordCrop> crops, const Manifest& manifest,
                                         int jobs) const override;

  OcrResult transcribe_bytes(const std::vector<std::uint8_t>& png) const;

 private:
  HttpOcrOptions options_;
  std::string host_;
  std::string path_prefix_;
};

/// Parses a /transcribe response body; throws Error(ProtocolError).
OcrResult parse_ocr_response(const std::string& body);

std::unique_ptr<OcrBackend> make_ocr_backend(const OcrSettings& settings, std::uint64_t seed);

/// Writes successful outcomes as a file-backend table (record/replay).
void write_transcription_table(const std::filesystem::path& path, std::span<const WordCrop> crops,
                               std::span<const OcrOutcome> outcomes);

}  // namespace hwset
