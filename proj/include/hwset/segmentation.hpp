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

// Line image + transcript -> exactly one crop per word.
//
// Ink is decomposed into 8-connected components, components closer than
// `merge_px` are merged into word groups, and the N-1 widest gaps between
// consecutive groups become word boundaries (N = transcript word count).
//
// The horizontal gap between two ink blobs is the smallest ink-to-ink distance
// over the rows both occupy; blobs with no common row (a diacritic above a
// letter) use the chessboard distance between their closest rows. For solid
// blocks on shared rows this is the plain bbox gap, but a descender
// sweeping under the inter-word space no longer glues two words together the
// way it does for column projection.

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hwset/config.hpp"
#include "hwset/image.hpp"
#include "hwset/manifest.hpp"
#include "hwset/parallel.hpp"

namespace hwset {

struct WordSpan {
  int x_left = 0;
  int x_right = 0;
  friend bool operator==(const WordSpan&, const WordSpan&) = default;
};

struct LineRecord {
  std::string line_id;
  std::string writer_id;
  std::filesystem::path image_path;
  std::optional<GrayImage> image;  // takes precedence over image_path
  std::string transcript;
  std::optional<std::vector<WordSpan>> gt_spans;

  std::vector<std::string> words() const;
  GrayImage load_image() const;
};

/// Reads a corpus manifest (one JSON object per line); relative image paths
/// resolve against the manifest's directory.
std::vector<LineRecord> read_corpus(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const LineRecord& line);

/// Per-row ink extents of a blob, rows indexed from bbox.y_min.
struct InkProfile {
  BBox bbox;
  RowExtents rows;

  static InkProfile of(const Component& c);
  void merge(const InkProfile& other);
};

/// Gap from `left` to `right` (right starts at or after left's x_min); 0 when
/// they overlap.
int horizontal_gap(const InkProfile& left, const InkProfile& right);

struct WordGroup {
  std::vector<Component> members;
  BBox bbox;
  InkProfile profile;
};

/// Transitive merge of components whose horizontal gap is <= merge_px.
/// Output is sorted by bbox x_min.
std::vector<WordGroup> group_components(std::span<const Component> components, int merge_px);

/// Indices of the `count` widest gaps (leftmost wins ties), ascending.
std::vector<std::size_t> choose_separators(std::span<const int> gaps, std::size_t count);

/// Throws UnderSegmented if there are fewer groups than words.
std::vector<WordSpan> select_boundaries(std::span<const WordGroup> groups, int n_words);

/// Polarity-normalised line plus its ink mask. Throws Error(NoInk) for blank input.
struct PreparedLine {
  GrayImage image;
  BinaryImage mask;
};
PreparedLine prepare_line(const GrayImage& raw, const SegmentationConfig& cfg);

std::vector<WordSpan> cc_segment(const PreparedLine& line, int n_words, const SegmentationConfig& cfg);

/// Baseline: split at zero-ink column runs wider than projection_min_gap_px,
/// keeping the N-1 widest when there are more. May return != N spans.
std::vector<WordSpan> projection_segment(const PreparedLine& line, int n_words, const SegmentationConfig& cfg);
std::vector<WordSpan> projection_segment(const LineRecord& line, const SegmentationConfig& cfg);

struct SegmentedWord {
  WordCrop crop;  // image path left empty
  GrayImage image;
};

std::vector<SegmentedWord> segment_line(const LineRecord& line, const PipelineConfig& cfg);

struct LineVerdict {
  std::string line_id;
  bool perfect = false;
  int detected = 0;
  int expected = 0;
  std::string error;  // error code name when segmentation failed
};

LineVerdict evaluate_boundaries(std::span<const WordSpan> pred, std::span<const WordSpan> gt, int tol_px);

enum class SegMethod { ConnectedComponents, Projection };
const char* to_string(SegMethod m);
SegMethod seg_method_from_string(const std::string& s);

struct BoundaryEvalReport {
  SegMethod method = SegMethod::ConnectedComponents;
  std::size_t lines_evaluated = 0;
  std::size_t perfect_matches = 0;
  double perfect_match_rate = 0.0;
  double mean_detected_words_per_line = 0.0;
  double mean_gt_words_per_line = 0.0;
  std::map<std::string, std::size_t> errors;
  std::vector<LineVerdict> per_line;  // sorted by line_id
};

/// Throws Error(EmptyCorpus) for no lines and Error(InvalidInput) when a line
/// lacks gt_spans.
BoundaryEvalReport eval_corpus(std::span<const LineRecord> lines, SegMethod method, const PipelineConfig& cfg,
                               ExecPolicy policy = {});
nlohmann::ordered_json to_json(const BoundaryEvalReport& report);

struct LineOutcome {
  std::string line_id;
  std::vector<SegmentedWord> words;
  std::string error;  // empty on success
  std::string message;
};

/// segment_line over a corpus; per-line failures are recorded, not thrown.
/// Results come back in input order.
std::vector<LineOutcome> segment_corpus(std::span<const LineRecord> lines, const PipelineConfig& cfg,
                                        ExecPolicy policy = {});

}  // namespace hwset
