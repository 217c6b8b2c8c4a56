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

#include "hwset/segmentation.hpp"

#include <algorithm>
#include <climits>
#include <cstdio>
#include <numeric>

#include "hwset/curation.hpp"
#include "hwset/error.hpp"
#include "hwset/kernels.hpp"
#include "hwset/png_io.hpp"
#include "hwset/text.hpp"

namespace hwset {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::string> LineRecord::words() const { return text::split_words(transcript); }

GrayImage LineRecord::load_image() const {
  if (image) return *image;
  return read_png(image_path);
}

std::vector<LineRecord> read_corpus(const std::filesystem::path& path) {
  std::vector<LineRecord> lines;
  const auto base = path.parent_path();
  for (const auto& j : read_jsonl(path)) {
    LineRecord line;
    try {
      line.line_id = j.at("line_id").get<std::string>();
      line.writer_id = j.at("writer_id").get<std::string>();
      line.transcript = j.at("transcript").get<std::string>();
      std::filesystem::path img = j.at("image").get<std::string>();
      line.image_path = img.is_absolute() ? img : base / img;
      if (j.contains("gt_spans") && !j.at("gt_spans").is_null()) {
        std::vector<WordSpan> spans;
        for (const auto& s : j.at("gt_spans")) spans.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
        line.gt_spans = std::move(spans);
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidInput, path.string() + ": bad line record: " + e.what());
    }
    if (line.words().empty())
      throw Error(ErrorCode::InvalidInput, path.string() + ": empty transcript for " + line.line_id);
    lines.push_back(std::move(line));
  }
  return lines;
}

ordered_json to_json(const LineRecord& line) {
  ordered_json j{{"line_id", line.line_id},
                 {"writer_id", line.writer_id},
                 {"image", line.image_path.generic_string()},
                 {"transcript", line.transcript}};
  if (line.gt_spans) {
    ordered_json spans = ordered_json::array();
    for (const auto& s : *line.gt_spans) spans.push_back({s.x_left, s.x_right});
    j["gt_spans"] = spans;
  }
  return j;
}

InkProfile InkProfile::of(const Component& c) {
  InkProfile p;
  p.bbox = c.bbox;
  p.rows.reserve(c.rows.size());
  for (const auto& r : c.rows) p.rows.emplace_back(r);
  return p;
}

void InkProfile::merge(const InkProfile& other) {
  if (!other.bbox.valid()) return;
  if (!bbox.valid()) {
    *this = other;
    return;
  }
  BBox merged = bbox;
  merged.extend(other.bbox);
  RowExtents rows_out(static_cast<std::size_t>(merged.height()));
  auto fold = [&](const InkProfile& p) {
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      if (!p.rows[i]) continue;
      auto& dst = rows_out[static_cast<std::size_t>(p.bbox.y_min - merged.y_min) + i];
      if (!dst)
        dst = p.rows[i];
      else
        dst = ColumnRange{std::min(dst->left, p.rows[i]->left), std::max(dst->right, p.rows[i]->right)};
    }
  };
  fold(*this);
  fold(other);
  bbox = merged;
  rows = std::move(rows_out);
}

int horizontal_gap(const InkProfile& left, const InkProfile& right) {
  const int y0 = std::max(left.bbox.y_min, right.bbox.y_min);
  const int y1 = std::min(left.bbox.y_max, right.bbox.y_max);
  int best = INT_MAX;
  for (int y = y0; y <= y1; ++y) {
    const auto& a = left.rows[static_cast<std::size_t>(y - left.bbox.y_min)];
    const auto& b = right.rows[static_cast<std::size_t>(y - right.bbox.y_min)];
    if (a && b) best = std::min(best, b->left - a->right - 1);
  }
  if (best != INT_MAX) return std::max(best, 0);

  // No common row: chessboard distance between the closest pair of row extents.
  for (std::size_t i = 0; i < left.rows.size(); ++i) {
    const auto& a = left.rows[i];
    if (!a) continue;
    const int ya = left.bbox.y_min + static_cast<int>(i);
    for (std::size_t j = 0; j < right.rows.size(); ++j) {
      const auto& b = right.rows[j];
      if (!b) continue;
      const int dy = std::abs(right.bbox.y_min + static_cast<int>(j) - ya) - 1;
      best = std::min(best, std::max(b->left - a->right - 1, dy));
    }
  }
  if (best == INT_MAX) best = right.bbox.x_min - left.bbox.x_max - 1;
  return std::max(best, 0);
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<WordGroup> group_components(std::span<const Component> components, int merge_px) {
  if (merge_px < 0) throw Error(ErrorCode::InvalidInput, "merge_px must be >= 0");
  std::vector<std::size_t> order(components.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return components[a].bbox.x_min < components[b].bbox.x_min;
  });

  std::vector<InkProfile> profiles;
  profiles.reserve(components.size());
  for (const auto& c : components) profiles.push_back(InkProfile::of(c));

  // The row gap is never smaller than the bbox gap, so only pairs whose boxes
  // are within merge_px can link; x_min order lets the inner scan stop early.
  UnionFind sets(components.size());
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const std::size_t j = order[oj];
      if (components[j].bbox.x_min - components[i].bbox.x_max - 1 > merge_px) break;
      if (horizontal_gap(profiles[i], profiles[j]) <= merge_px) sets.unite(i, j);
    }
  }

  std::vector<WordGroup> groups;
  std::vector<long> slot(components.size(), -1);
  for (const std::size_t i : order) {
    const std::size_t root = sets.find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    WordGroup& g = groups[static_cast<std::size_t>(slot[root])];
    g.members.push_back(components[i]);
    g.bbox.extend(components[i].bbox);
    g.profile.merge(profiles[i]);
  }
  std::stable_sort(groups.begin(), groups.end(), [](const WordGroup& a, const WordGroup& b) {
    if (a.bbox.x_min != b.bbox.x_min) return a.bbox.x_min < b.bbox.x_min;
    return a.bbox.y_min < b.bbox.y_min;
  });
  return groups;
}

std::vector<std::size_t> choose_separators(std::span<const int> gaps, std::size_t count) {
  std::vector<std::size_t> idx(gaps.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return gaps[a] > gaps[b]; });
  idx.resize(std::min(count, idx.size()));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<WordSpan> select_boundaries(std::span<const WordGroup> groups, int n_words) {
  if (n_words < 1) throw Error(ErrorCode::InvalidInput, "n_words must be >= 1");
  if (groups.empty()) throw Error(ErrorCode::NoInk, "no word groups");
  if (groups.size() < static_cast<std::size_t>(n_words))
    throw UnderSegmented(static_cast<int>(groups.size()), n_words);

  std::vector<int> gaps;
  gaps.reserve(groups.size() - 1);
  for (std::size_t i = 0; i + 1 < groups.size(); ++i)
    gaps.push_back(horizontal_gap(groups[i].profile, groups[i + 1].profile));
  const auto separators = choose_separators(gaps, static_cast<std::size_t>(n_words - 1));

  std::vector<WordSpan> spans;
  spans.reserve(static_cast<std::size_t>(n_words));
  std::size_t begin = 0;
  auto emit = [&](std::size_t end) {  // groups [begin, end]
    BBox box;
    for (std::size_t g = begin; g <= end; ++g) box.extend(groups[g].bbox);
    spans.push_back({box.x_min, box.x_max});
    begin = end + 1;
  };
  for (const std::size_t s : separators) emit(s);
  emit(groups.size() - 1);
  return spans;
}

PreparedLine prepare_line(const GrayImage& raw, const SegmentationConfig& cfg) {
  if (raw.empty()) throw Error(ErrorCode::NoInk, "empty image");
  GrayImage img = (cfg.auto_invert && mean_intensity(raw) < 128.0) ? invert(raw) : raw;
  auto mask = ink_mask(img);
  if (!mask) throw Error(ErrorCode::NoInk, "blank line image");
  return PreparedLine{std::move(img), std::move(*mask)};
}

std::vector<WordSpan> cc_segment(const PreparedLine& line, int n_words, const SegmentationConfig& cfg) {
  const auto components = connected_components(line.mask);
  if (components.empty()) throw Error(ErrorCode::NoInk, "no ink components");
  const auto groups = group_components(components, cfg.merge_px);
  return select_boundaries(groups, n_words);
}

std::vector<WordSpan> projection_segment(const PreparedLine& line, int n_words, const SegmentationConfig& cfg) {
  if (n_words < 1) throw Error(ErrorCode::InvalidInput, "n_words must be >= 1");
  const auto cols = kernels::column_ink_serial(line.mask);
  const auto first = std::find_if(cols.begin(), cols.end(), [](int c) { return c > 0; });
  if (first == cols.end()) throw Error(ErrorCode::NoInk, "no ink columns");
  const int lo = static_cast<int>(first - cols.begin());
  const int hi = static_cast<int>(cols.rend() - std::find_if(cols.rbegin(), cols.rend(), [](int c) { return c > 0; })) - 1;

  struct Run {
    int begin;
    int end;
  };
  std::vector<Run> runs;
  for (int x = lo; x <= hi;) {
    if (cols[static_cast<std::size_t>(x)] > 0) {
      ++x;
      continue;
    }
    int e = x;
    while (e + 1 <= hi && cols[static_cast<std::size_t>(e + 1)] == 0) ++e;
    if (e - x + 1 > cfg.projection_min_gap_px) runs.push_back({x, e});
    x = e + 1;
  }

  std::vector<int> widths;
  for (const auto& r : runs) widths.push_back(r.end - r.begin + 1);
  const auto chosen = choose_separators(widths, static_cast<std::size_t>(n_words - 1));

  std::vector<WordSpan> spans;
  int left = lo;
  for (const std::size_t k : chosen) {
    spans.push_back({left, runs[k].begin - 1});
    left = runs[k].end + 1;
  }
  spans.push_back({left, hi});
  return spans;
}

std::vector<WordSpan> projection_segment(const LineRecord& line, const SegmentationConfig& cfg) {
  const auto prepared = prepare_line(line.load_image(), cfg);
  return projection_segment(prepared, static_cast<int>(line.words().size()), cfg);
}

namespace {

std::string crop_id_for(const std::string& line_id, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "_w%03zu", index);
  return line_id + buf;
}

}  // namespace

std::vector<SegmentedWord> segment_line(const LineRecord& line, const PipelineConfig& cfg) {
  const auto tokens = line.words();
  if (tokens.empty()) throw Error(ErrorCode::InvalidInput, "empty transcript for " + line.line_id);
  const auto prepared = prepare_line(line.load_image(), cfg.segmentation);
  const auto spans = cc_segment(prepared, static_cast<int>(tokens.size()), cfg.segmentation);

  const int margin = cfg.segmentation.crop_margin_px;
  const int h = prepared.image.height();
  std::vector<SegmentedWord> out;
  out.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const WordSpan& s = spans[i];
    int y_min = h;
    int y_max = -1;
    for (int y = 0; y < h; ++y) {
      for (int x = s.x_left; x <= s.x_right; ++x) {
        if (!prepared.mask.ink(x, y)) continue;
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
        break;
      }
    }
    const BBox box{s.x_left, s.x_right, std::max(0, y_min - margin), std::min(h - 1, y_max + margin)};

    SegmentedWord word;
    word.image = crop(prepared.image, box);
    WordCrop& c = word.crop;
    c.crop_id = crop_id_for(line.line_id, i);
    c.writer_id = line.writer_id;
    c.raw_label = tokens[i];
    try {
      c.label = normalize_label(tokens[i]).label;
    } catch (const Error&) {
      c.label = tokens[i];
    }
    c.width = word.image.width();
    c.height = word.image.height();
    c.line_id = line.line_id;
    c.word_index = static_cast<int>(i);
    c.x_left = s.x_left;
    c.x_right = s.x_right;
    out.push_back(std::move(word));
  }
  return out;
}

LineVerdict evaluate_boundaries(std::span<const WordSpan> pred, std::span<const WordSpan> gt, int tol_px) {
  if (tol_px < 0) throw Error(ErrorCode::InvalidInput, "tol_px must be >= 0");
  LineVerdict v;
  v.detected = static_cast<int>(pred.size());
  v.expected = static_cast<int>(gt.size());
  v.perfect = pred.size() == gt.size();
  for (std::size_t i = 0; v.perfect && i < pred.size(); ++i)
    v.perfect = std::abs(pred[i].x_left - gt[i].x_left) <= tol_px && std::abs(pred[i].x_right - gt[i].x_right) <= tol_px;
  return v;
}

const char* to_string(SegMethod m) { return m == SegMethod::Projection ? "projection" : "cc"; }

SegMethod seg_method_from_string(const std::string& s) {
  if (s == "cc") return SegMethod::ConnectedComponents;
  if (s == "projection") return SegMethod::Projection;
  throw Error(ErrorCode::InvalidInput, "unknown segmentation method " + s);
}

namespace {

LineVerdict evaluate_line(const LineRecord& line, SegMethod method, const PipelineConfig& cfg) {
  const auto& gt = *line.gt_spans;
  const int n_words = static_cast<int>(line.words().size());
  LineVerdict v;
  try {
    const auto prepared = prepare_line(line.load_image(), cfg.segmentation);
    const auto pred = method == SegMethod::Projection ? projection_segment(prepared, n_words, cfg.segmentation)
                                                      : cc_segment(prepared, n_words, cfg.segmentation);
    v = evaluate_boundaries(pred, gt, cfg.segmentation.boundary_tol_px);
  } catch (const UnderSegmented& e) {
    v.detected = e.groups();
    v.expected = static_cast<int>(gt.size());
    v.error = to_string(e.code());
  } catch (const Error& e) {
    v.detected = 0;
    v.expected = static_cast<int>(gt.size());
    v.error = to_string(e.code());
  } catch (const std::exception&) {
    v.detected = 0;
    v.expected = static_cast<int>(gt.size());
    v.error = "Internal";
  }
  v.line_id = line.line_id;
  return v;
}

}  // namespace

BoundaryEvalReport eval_corpus(std::span<const LineRecord> lines, SegMethod method, const PipelineConfig& cfg,
                               ExecPolicy policy) {
  if (lines.empty()) throw Error(ErrorCode::EmptyCorpus, "no lines to evaluate");
  for (const auto& line : lines)
    if (!line.gt_spans) throw Error(ErrorCode::InvalidInput, "line " + line.line_id + " has no gt_spans");

  std::vector<LineVerdict> verdicts(lines.size());
  for_each_index(lines.size(), policy, [&](std::size_t i) { verdicts[i] = evaluate_line(lines[i], method, cfg); });

  BoundaryEvalReport r;
  r.method = method;
  r.lines_evaluated = verdicts.size();
  std::size_t detected = 0;
  std::size_t expected = 0;
  for (const auto& v : verdicts) {
    r.perfect_matches += v.perfect ? 1 : 0;
    detected += static_cast<std::size_t>(v.detected);
    expected += static_cast<std::size_t>(v.expected);
    if (!v.error.empty()) ++r.errors[v.error];
  }
  const double n = static_cast<double>(verdicts.size());
  r.perfect_match_rate = static_cast<double>(r.perfect_matches) / n;
  r.mean_detected_words_per_line = static_cast<double>(detected) / n;
  r.mean_gt_words_per_line = static_cast<double>(expected) / n;
  std::stable_sort(verdicts.begin(), verdicts.end(),
                   [](const LineVerdict& a, const LineVerdict& b) { return a.line_id < b.line_id; });
  r.per_line = std::move(verdicts);
  return r;
}

ordered_json to_json(const BoundaryEvalReport& r) {
  ordered_json lines = ordered_json::array();
  for (const auto& v : r.per_line) {
    ordered_json j{{"line_id", v.line_id}, {"perfect", v.perfect}, {"detected", v.detected}, {"expected", v.expected}};
    if (!v.error.empty()) j["error"] = v.error;
    lines.push_back(std::move(j));
  }
  ordered_json errors = ordered_json::object();
  for (const auto& [code, count] : r.errors) errors[code] = count;
  return ordered_json{{"method", to_string(r.method)},
                      {"lines_evaluated", r.lines_evaluated},
                      {"perfect_matches", r.perfect_matches},
                      {"perfect_match_rate", r.perfect_match_rate},
                      {"mean_detected_words_per_line", r.mean_detected_words_per_line},
                      {"mean_gt_words_per_line", r.mean_gt_words_per_line},
                      {"errors", errors},
                      {"per_line", lines}};
}

std::vector<LineOutcome> segment_corpus(std::span<const LineRecord> lines, const PipelineConfig& cfg,
                                        ExecPolicy policy) {
  std::vector<LineOutcome> out(lines.size());
  for_each_index(lines.size(), policy, [&](std::size_t i) {
    LineOutcome& o = out[i];
    o.line_id = lines[i].line_id;
    try {
      o.words = segment_line(lines[i], cfg);
    } catch (const Error& e) {
      o.error = to_string(e.code());
      o.message = e.what();
    } catch (const std::exception& e) {
      o.error = "Internal";
      o.message = e.what();
    }
  });
  return out;
}

}  // namespace hwset
