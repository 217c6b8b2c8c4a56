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

#include "hwset/ocr_gate.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <random>
#include <thread>

#include "hwset/metrics.hpp"
#include "hwset/parallel.hpp"
#include "hwset/text.hpp"

// After Eigen: <resolv.h> (pulled in here) defines _res, which Eigen uses as an identifier.
#include <httplib.h>

namespace hwset {

using nlohmann::json;
using nlohmann::ordered_json;

double similarity(std::string_view a, std::string_view b) {
  const auto ua = text::to_u32(a);
  const auto ub = text::to_u32(b);
  if (ub.empty()) return ua.empty() ? 1.0 : 0.0;
  const auto longest = std::max(ua.size(), ub.size());
  return 1.0 - static_cast<double>(levenshtein(ua, ub)) / static_cast<double>(longest);
}

namespace {

OcrOutcome capture(const std::function<OcrResult()>& fn) {
  OcrOutcome o;
  try {
    o.result = fn();
  } catch (const Error& e) {
    o.error = e.code();
    o.message = e.what();
  } catch (const std::exception& e) {
    o.error = ErrorCode::BackendUnavailable;
    o.message = e.what();
  }
  return o;
}

}  // namespace

std::vector<OcrOutcome> OcrBackend::transcribe_all(std::span<const WordCrop> crops, const Manifest& manifest,
                                                   int jobs) const {
  std::vector<OcrOutcome> out(crops.size());
  for_each_index(crops.size(), ExecPolicy::parallel(jobs),
                 [&](std::size_t i) { out[i] = capture([&] { return transcribe(crops[i], manifest); }); });
  return out;
}

FileOcrBackend::FileOcrBackend(std::map<std::string, OcrResult> table) : table_(std::move(table)) {}

FileOcrBackend FileOcrBackend::load(const std::filesystem::path& path) {
  std::map<std::string, OcrResult> table;
  for (const auto& j : read_jsonl(path)) {
    OcrResult r;
    std::string id;
    try {
      id = j.at("crop_id").get<std::string>();
      r.text = j.at("text").get<std::string>();
      if (j.contains("confidence") && !j.at("confidence").is_null()) r.confidence = j.at("confidence").get<double>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidInput, path.string() + ": bad transcription record: " + e.what());
    }
    if (r.confidence && (*r.confidence < 0.0 || *r.confidence > 1.0))
      throw Error(ErrorCode::InvalidInput, path.string() + ": confidence outside [0,1] for " + id);
    if (!table.emplace(id, std::move(r)).second)
      throw Error(ErrorCode::InvalidInput, path.string() + ": duplicate crop_id " + id);
  }
  return FileOcrBackend(std::move(table));
}

OcrResult FileOcrBackend::transcribe(const WordCrop& crop, const Manifest&) const {
  const auto it = table_.find(crop.crop_id);
  if (it == table_.end()) throw Error(ErrorCode::MissingTranscription, "no transcription for " + crop.crop_id);
  return it->second;
}

OcrResult SyntheticOcrBackend::transcribe(const WordCrop& crop, const Manifest&) const {
  if (mode_ == Mode::Echo) return OcrResult{crop.label, 1.0};
  std::vector<std::uint32_t> seed_material(crop.crop_id.begin(), crop.crop_id.end());
  seed_material.push_back(static_cast<std::uint32_t>(seed_));
  seed_material.push_back(static_cast<std::uint32_t>(seed_ >> 32));
  std::seed_seq seq(seed_material.begin(), seed_material.end());
  std::mt19937_64 rng(seq);
  std::bernoulli_distribution flip(rate_);
  std::uniform_int_distribution<int> letter(0, 31);
  auto cps = text::to_u32(crop.label);
  std::size_t changed = 0;
  for (auto& c : cps) {
    if (!flip(rng)) continue;
    char32_t replacement = U'а' + static_cast<char32_t>(letter(rng));
    if (replacement == c) replacement = replacement == U'я' ? U'а' : replacement + 1;
    c = replacement;
    ++changed;
  }
  const double conf = cps.empty() ? 0.0 : 1.0 - static_cast<double>(changed) / static_cast<double>(cps.size());
  return OcrResult{text::to_utf8(cps), conf};
}

HttpOcrBackend::HttpOcrBackend(HttpOcrOptions options) : options_(std::move(options)) {
  if (options_.endpoint.empty()) throw Error(ErrorCode::ConfigError, "http OCR backend needs an endpoint");
  if (options_.timeout.count() <= 0) throw Error(ErrorCode::ConfigError, "http OCR timeout must be > 0");
  if (options_.max_inflight < 1) throw Error(ErrorCode::ConfigError, "max_inflight must be >= 1");
  std::string ep = options_.endpoint;
  while (!ep.empty() && ep.back() == '/') ep.pop_back();
  const auto scheme = ep.find("://");
  const auto slash = ep.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  host_ = slash == std::string::npos ? ep : ep.substr(0, slash);
  path_prefix_ = slash == std::string::npos ? "" : ep.substr(slash);
}

OcrResult parse_ocr_response(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ProtocolError, std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("text") || !j.at("text").is_string())
    throw Error(ErrorCode::ProtocolError, "response lacks a string \"text\" field");
  OcrResult r;
  r.text = j.at("text").get<std::string>();
  if (j.contains("confidence") && !j.at("confidence").is_null()) {
    if (!j.at("confidence").is_number()) throw Error(ErrorCode::ProtocolError, "\"confidence\" is not a number");
    const double c = j.at("confidence").get<double>();
    if (c < 0.0 || c > 1.0) throw Error(ErrorCode::ProtocolError, "confidence outside [0,1]");
    r.confidence = c;
  }
  return r;
}

OcrResult HttpOcrBackend::transcribe_bytes(const std::vector<std::uint8_t>& png) const {
  httplib::Client client(host_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  const std::string body(png.begin(), png.end());
  const std::string path = path_prefix_ + "/transcribe";
  std::string last_error;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options_.backoff * (1 << std::min(attempt - 1, 16)));
    auto res = client.Post(path, body, "image/png");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return parse_ocr_response(res->body);
    if (res->status == 422) throw Error(ErrorCode::ImageRejected, "service could not decode image: " + res->body);
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    throw Error(ErrorCode::ProtocolError, "unexpected HTTP " + std::to_string(res->status));
  }
  throw Error(ErrorCode::BackendUnavailable,
              last_error + " after " + std::to_string(options_.retries + 1) + " attempts");
}

OcrResult HttpOcrBackend::transcribe(const WordCrop& crop, const Manifest& manifest) const {
  const auto path = manifest.resolve(crop);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return transcribe_bytes(bytes);
}

std::vector<OcrOutcome> HttpOcrBackend::transcribe_all(std::span<const WordCrop> crops, const Manifest& manifest,
                                                       int /*jobs*/) const {
  // The in-flight cap bounds concurrency regardless of the CPU job count.
  std::vector<OcrOutcome> out(crops.size());
  const int cap = options_.max_inflight;
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(cap), crops.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < crops.size(); i = next++)
      out[i] = capture([&] { return transcribe(crops[i], manifest); });
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

std::unique_ptr<OcrBackend> make_ocr_backend(const OcrSettings& s, std::uint64_t) {
  if (s.backend == "echo") return std::make_unique<SyntheticOcrBackend>(SyntheticOcrBackend::echo());
  if (s.backend == "file") {
    if (s.table.empty()) throw Error(ErrorCode::ConfigError, "file OCR backend needs a table path");
    return std::make_unique<FileOcrBackend>(FileOcrBackend::load(s.table));
  }
  if (s.backend == "http") {
    HttpOcrOptions o;
    o.endpoint = s.endpoint;
    o.timeout = std::chrono::milliseconds(static_cast<long long>(s.timeout_s * 1000.0));
    o.max_inflight = s.max_inflight;
    o.retries = s.retries;
    o.backoff = std::chrono::milliseconds(s.backoff_ms);
    return std::make_unique<HttpOcrBackend>(o);
  }
  throw Error(ErrorCode::ConfigError, "unknown OCR backend " + s.backend);
}

void write_transcription_table(const std::filesystem::path& path, std::span<const WordCrop> crops,
                               std::span<const OcrOutcome> outcomes) {
  if (crops.size() != outcomes.size()) throw Error(ErrorCode::InvalidInput, "crops/outcomes size mismatch");
  std::string body;
  for (std::size_t i = 0; i < crops.size(); ++i) {
    if (!outcomes[i].ok()) continue;
    ordered_json j{{"crop_id", crops[i].crop_id}, {"text", outcomes[i].result->text}};
    if (outcomes[i].result->confidence) j["confidence"] = *outcomes[i].result->confidence;
    body += j.dump() + "\n";
  }
  write_file_atomic(path, body);
}

}  // namespace hwset
