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

#include "hwset/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>

#include "hwset/error.hpp"
#include "hwset/manifest.hpp"
#include "hwset/png_io.hpp"

namespace hwset {

using nlohmann::json;
using nlohmann::ordered_json;

BodyProfile detect_body(const GrayImage& word, double span_frac) {
  const auto mask = ink_mask(word);
  if (!mask) throw Error(ErrorCode::NoInk, "word image has no ink");
  const auto box = ink_bounds(*mask);
  if (!box) throw Error(ErrorCode::NoInk, "word image has no ink");
  const auto extents = row_ink_extent(*mask);
  const double need = span_frac * static_cast<double>(box->width());

  BodyProfile p;
  int first = -1;
  int last = -1;
  for (int y = box->y_min; y <= box->y_max; ++y) {
    const auto& e = extents[static_cast<std::size_t>(y)];
    if (!e || static_cast<double>(e->right - e->left + 1) < need) continue;
    if (first < 0) first = y;
    last = y;
  }
  if (first < 0) {
    p.body_top = box->y_min;
    p.body_bottom = box->y_max;
    p.fallback = true;
  } else {
    p.body_top = first;
    p.body_bottom = last;
  }
  p.has_descender = box->y_max > p.body_bottom;
  return p;
}

namespace {

std::uint8_t background_median(const GrayImage& img) {
  const auto mask = ink_mask(img);
  std::vector<std::uint8_t> bg;
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i)
    if (!mask || mask->mask()[i] == 0) bg.push_back(px[i]);
  if (bg.empty()) return 255;
  auto mid = bg.begin() + static_cast<std::ptrdiff_t>((bg.size() - 1) / 2);
  std::nth_element(bg.begin(), mid, bg.end());
  return *mid;
}

int lower_median(std::vector<int> v) {
  auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

AlignedWords align_baselines(std::span<const GrayImage> words, double span_frac) {
  AlignedWords out;
  if (words.empty()) return out;
  std::vector<BodyProfile> profiles;
  profiles.reserve(words.size());
  int target = 0;
  int below = 0;
  for (const auto& w : words) {
    profiles.push_back(detect_body(w, span_frac));
    target = std::max(target, profiles.back().body_bottom);
    below = std::max(below, w.height() - 1 - profiles.back().body_bottom);
  }
  const int height = target + 1 + below;
  out.target_row = target;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    const int dy = target - profiles[i].body_bottom;
    GrayImage padded(w.width(), height, background_median(w));
    for (int y = 0; y < w.height(); ++y)
      std::copy(w.row(y).begin(), w.row(y).end(),
                padded.pixels().begin() + static_cast<std::ptrdiff_t>(y + dy) * w.width());
    BodyProfile p = profiles[i];
    p.body_top += dy;
    p.body_bottom += dy;
    out.images.push_back(std::move(padded));
    out.profiles.push_back(p);
  }
  return out;
}

GrayImage normalize_brightness(const GrayImage& img, double pct) {
  if (img.empty()) return img;
  if (pct < 0.0 || pct >= 100.0) throw Error(ErrorCode::InvalidInput, "brightness percentile must be in [0,100)");
  std::vector<std::uint8_t> sorted(img.pixels().begin(), img.pixels().end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil((100.0 - pct) / 100.0 * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  const int q = sorted[rank - 1];
  const int lo = sorted.front();
  if (q <= lo) return img;

  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    if (v >= q) {
      lut[v] = 255;
    } else if (v <= lo) {
      lut[v] = static_cast<std::uint8_t>(v);
    } else {
      const int num = (v - lo) * (255 - lo);
      const int den = q - lo;
      lut[v] = static_cast<std::uint8_t>(lo + (2 * num + den) / (2 * den));
    }
  }
  GrayImage out = img;
  for (auto& p : out.pixels()) p = lut[p];
  return out;
}

bool is_bank_glyph(std::string_view glyph) {
  return std::any_of(std::begin(kPunctGlyphs), std::end(kPunctGlyphs), [&](const char* g) { return glyph == g; });
}

std::size_t PunctuationBank::size() const {
  std::size_t n = 0;
  for (const auto& [g, v] : marks) n += v.size();
  return n;
}

bool PunctuationBank::has(const std::string& glyph) const {
  const auto it = marks.find(glyph);
  return it != marks.end() && !it->second.empty();
}

namespace {

std::mt19937_64 seeded_rng(std::uint64_t seed, std::string_view salt) {
  std::vector<std::uint32_t> material(salt.begin(), salt.end());
  material.push_back(static_cast<std::uint32_t>(seed));
  material.push_back(static_cast<std::uint32_t>(seed >> 32));
  std::seed_seq seq(material.begin(), material.end());
  return std::mt19937_64(seq);
}

const char* glyph_file_stem(const std::string& glyph) {
  if (glyph == ",") return "comma";
  if (glyph == ".") return "period";
  return "hyphen";
}

}  // namespace

PunctuationBank build_punct_bank(std::span<const PunctMark> candidates, std::size_t size, std::uint64_t seed) {
  std::map<std::string, std::vector<const PunctMark*>> pools;
  for (const auto& c : candidates)
    if (is_bank_glyph(c.glyph)) pools[c.glyph].push_back(&c);
  std::size_t total = 0;
  for (const auto& [g, v] : pools) total += v.size();
  if (total == 0 || size == 0) throw Error(ErrorCode::EmptyBank, "no punctuation candidates");
  const std::size_t target = std::min(size, total);

  // Largest-remainder apportionment; ties go to the glyph listed first.
  struct Share {
    std::string glyph;
    std::size_t quota;
    std::size_t remainder;
  };
  std::vector<Share> shares;
  std::size_t assigned = 0;
  for (const char* g : kPunctGlyphs) {
    const auto it = pools.find(g);
    if (it == pools.end()) continue;
    const std::size_t scaled = target * it->second.size();
    shares.push_back({g, scaled / total, scaled % total});
    assigned += scaled / total;
  }
  std::vector<std::size_t> order(shares.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return shares[a].remainder > shares[b].remainder; });
  for (std::size_t k = 0; assigned < target; ++k, ++assigned) ++shares[order[k % order.size()]].quota;

  PunctuationBank bank;
  bank.seed = seed;
  for (const auto& s : shares) {
    auto pool = pools[s.glyph];
    auto rng = seeded_rng(seed, s.glyph);
    for (std::size_t i = 0; i < s.quota; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
      bank.marks[s.glyph].push_back(*pool[i]);
    }
  }
  return bank;
}

void save_bank(const std::filesystem::path& dir, const PunctuationBank& bank) {
  std::filesystem::create_directories(dir);
  ordered_json marks = ordered_json::array();
  for (const auto& [glyph, list] : bank.marks) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "%s_%03zu.png", glyph_file_stem(glyph), i);
      write_png(dir / name, list[i].image);
      marks.push_back(ordered_json{{"glyph", glyph}, {"file", name}, {"source_id", list[i].source_id}});
    }
  }
  write_json_atomic(dir / "index.json", ordered_json{{"seed", bank.seed}, {"marks", marks}});
}

PunctuationBank load_bank(const std::filesystem::path& dir) {
  std::ifstream in(dir / "index.json");
  if (!in) throw Error(ErrorCode::Io, "cannot open " + (dir / "index.json").string());
  PunctuationBank bank;
  try {
    const json j = json::parse(in);
    bank.seed = j.value("seed", std::uint64_t{0});
    for (const auto& m : j.at("marks")) {
      PunctMark mark;
      mark.glyph = m.at("glyph").get<std::string>();
      if (!is_bank_glyph(mark.glyph)) throw Error(ErrorCode::InvalidInput, "bank glyph " + mark.glyph);
      mark.source_id = m.value("source_id", std::string());
      mark.image = read_png(dir / m.at("file").get<std::string>());
      bank.marks[mark.glyph].push_back(std::move(mark));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "bad bank index: " + std::string(e.what()));
  }
  if (bank.size() == 0) throw Error(ErrorCode::EmptyBank, "bank at " + dir.string() + " is empty");
  return bank;
}

std::vector<std::string> SentencePlan::word_ids() const {
  std::vector<std::string> ids;
  for (const auto& t : tokens)
    if (t.kind == PlanToken::Kind::Word) ids.push_back(t.value);
  return ids;
}

void SentencePlan::validate() const {
  if (word_ids().empty()) throw Error(ErrorCode::EmptyPlan, "plan " + sentence_id + " has no words");
  if (tokens.front().kind != PlanToken::Kind::Word)
    throw Error(ErrorCode::InvalidInput, "plan " + sentence_id + " starts with punctuation");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].value.empty()) throw Error(ErrorCode::InvalidInput, "plan " + sentence_id + " has an empty token");
    if (i > 0 && tokens[i].kind == PlanToken::Kind::Punct && tokens[i - 1].kind == PlanToken::Kind::Punct)
      throw Error(ErrorCode::InvalidInput, "plan " + sentence_id + " has consecutive punctuation");
  }
}

SentencePlan sentence_plan_from_json(const json& j) {
  SentencePlan plan;
  try {
    plan.sentence_id = j.at("sentence_id").get<std::string>();
    for (const auto& t : j.at("tokens")) {
      if (t.size() != 1) throw Error(ErrorCode::InvalidInput, "plan token must have exactly one key");
      if (t.contains("word"))
        plan.tokens.push_back({PlanToken::Kind::Word, t.at("word").get<std::string>()});
      else if (t.contains("punct"))
        plan.tokens.push_back({PlanToken::Kind::Punct, t.at("punct").get<std::string>()});
      else
        throw Error(ErrorCode::InvalidInput, "plan token needs \"word\" or \"punct\"");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "bad sentence plan: " + std::string(e.what()));
  }
  plan.validate();
  return plan;
}

ordered_json to_json(const SentencePlan& plan) {
  ordered_json tokens = ordered_json::array();
  for (const auto& t : plan.tokens)
    tokens.push_back(ordered_json{{t.kind == PlanToken::Kind::Word ? "word" : "punct", t.value}});
  return ordered_json{{"sentence_id", plan.sentence_id}, {"tokens", tokens}};
}

std::vector<SentencePlan> read_plans(const std::filesystem::path& path) {
  std::vector<SentencePlan> plans;
  for (const auto& j : read_jsonl(path)) plans.push_back(sentence_plan_from_json(j));
  return plans;
}

namespace {

int round_pos(double v) { return std::max(1, static_cast<int>(std::lround(v))); }

struct PlacedMark {
  GrayImage image;
  int y = 0;
};

std::optional<PlacedMark> prepare_mark(const PunctMark& mark, const AssemblyConfig& cfg, int body_h, int target_row) {
  const GrayImage norm = normalize_brightness(mark.image, cfg.brightness_pct);
  const auto mask = ink_mask(norm);
  if (!mask) return std::nullopt;
  const GrayImage ink = crop(norm, *ink_bounds(*mask));
  PlacedMark out;
  if (mark.glyph == "-") {
    const int w = round_pos(cfg.hyphen_width_factor * body_h);
    const int h = round_pos(static_cast<double>(ink.height()) * w / ink.width());
    out.image = resize(ink, w, h);
    const int body_top = target_row - body_h + 1;
    out.y = (body_top + target_row) / 2 - h / 2;
  } else {
    const int h = round_pos(cfg.punct_scale * body_h);
    const int w = round_pos(static_cast<double>(ink.width()) * h / ink.height());
    out.image = resize(ink, w, h);
    out.y = target_row - h + 1;
  }
  return out;
}

}  // namespace

Strip compose_strip(const SentencePlan& plan, std::span<const GrayImage> words, const PunctuationBank* bank,
                    const AssemblyConfig& cfg, std::uint64_t seed) {
  plan.validate();
  if (words.size() != plan.word_ids().size())
    throw Error(ErrorCode::InvalidInput, "plan " + plan.sentence_id + " needs " +
                                             std::to_string(plan.word_ids().size()) + " word images");
  std::vector<GrayImage> normalized;
  normalized.reserve(words.size());
  for (const auto& w : words) normalized.push_back(normalize_brightness(w, cfg.brightness_pct));
  const auto aligned = align_baselines(normalized, cfg.body_span_frac);

  std::vector<int> heights;
  for (const auto& p : aligned.profiles) heights.push_back(p.body_bottom - p.body_top + 1);
  Strip strip;
  auto& layout = strip.layout;
  layout.body_height = lower_median(heights);
  layout.target_row = aligned.target_row;
  layout.gap = static_cast<int>(std::lround(cfg.word_gap_factor * layout.body_height));
  layout.half_gap = layout.gap / 2;

  auto rng = seeded_rng(seed, plan.sentence_id);
  std::vector<PlacedMark> marks;
  int x = 0;
  std::size_t wi = 0;
  for (const auto& t : plan.tokens) {
    if (t.kind == PlanToken::Kind::Word) {
      if (wi > 0) x += layout.gap;
      layout.word_x.push_back(x);
      x += aligned.images[wi++].width();
      continue;
    }
    if (!is_bank_glyph(t.value) || bank == nullptr || !bank->has(t.value)) {
      strip.warnings.push_back("no bank mark for '" + t.value + "' in " + plan.sentence_id + "; skipped");
      continue;
    }
    const auto& pool = bank->marks.at(t.value);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    auto placed = prepare_mark(pool[pick(rng)], cfg, layout.body_height, layout.target_row);
    if (!placed) {
      strip.warnings.push_back("blank bank mark for '" + t.value + "' in " + plan.sentence_id + "; skipped");
      continue;
    }
    x += layout.half_gap;
    layout.mark_x.push_back(x);
    x += placed->image.width();
    marks.push_back(std::move(*placed));
  }

  strip.image = GrayImage(std::max(x, 1), aligned.images.front().height(), 255);
  for (std::size_t i = 0; i < aligned.images.size(); ++i)
    blit_darken(strip.image, aligned.images[i], layout.word_x[i], 0);
  for (std::size_t i = 0; i < marks.size(); ++i)
    blit_darken(strip.image, marks[i].image, layout.mark_x[i], marks[i].y);
  return strip;
}

GrayImage fit_canvas(const GrayImage& strip, const CanvasConfig& canvas) {
  if (strip.empty()) throw Error(ErrorCode::InvalidInput, "empty strip");
  int w = round_pos(static_cast<double>(strip.width()) * canvas.height / strip.height());
  int h = canvas.height;
  if (w > canvas.width) {
    w = canvas.width;
    h = std::min(canvas.height, round_pos(static_cast<double>(strip.height()) * canvas.width / strip.width()));
  }
  const GrayImage scaled = resize(strip, w, h);
  GrayImage out(canvas.width, canvas.height, 255);
  blit_darken(out, scaled, 0, 0);
  return out;
}

}  // namespace hwset
