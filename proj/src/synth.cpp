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

#include "hwset/synth.hpp"

#include <algorithm>
#include <random>

#include "hwset/error.hpp"
#include "hwset/text.hpp"

namespace hwset::synth {

namespace {

constexpr std::u32string_view kAlphabet = U"абвгґдеєжзиіїйклмнопрстуфхцчшщьюяАБВГДЕЄЖЗИІКЛМНОПРСТУФХЦЧШЩЮЯ";
constexpr std::u32string_view kDescenders = U"рудщцфДЩЦ";
constexpr std::u32string_view kAscenders = U"бвґАБВГДЕЄЖЗИІКЛМНОПРСТУФХЦЧШЩЮЯ";
constexpr std::u32string_view kDotted = U"іїй";
constexpr std::u32string_view kBroken = U"кжхшы";
constexpr std::u32string_view kRound = U"оаеєсю";

enum class Shape { Arch, Round, Ascender, Descender, Dotted, Broken };

Shape shape_of(char32_t c) {
  if (kDescenders.find(c) != std::u32string_view::npos) return Shape::Descender;
  if (kDotted.find(c) != std::u32string_view::npos) return Shape::Dotted;
  if (kAscenders.find(c) != std::u32string_view::npos) return Shape::Ascender;
  if (kBroken.find(c) != std::u32string_view::npos) return Shape::Broken;
  if (kRound.find(c) != std::u32string_view::npos) return Shape::Round;
  return Shape::Arch;
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Ink layer in line coordinates; grown to the right on demand.
class Canvas {
 public:
  explicit Canvas(int height) : height_(height) {}

  int height() const { return height_; }
  int width() const { return width_; }

  void rect(int x0, int x1, int y0, int y1) {
    if (x1 >= width_) grow(x1 + 1);
    for (int y = std::max(0, y0); y <= std::min(height_ - 1, y1); ++y)
      for (int x = std::max(0, x0); x <= x1; ++x) ink_[static_cast<std::size_t>(y) * stride_ + x] = 1;
  }
  bool ink(int x, int y) const { return x < width_ && ink_[static_cast<std::size_t>(y) * stride_ + x] != 0; }

  /// Rightmost inked column on row y within [x0, x1], or -1.
  int rightmost(int y, int x0, int x1) const {
    for (int x = std::min(x1, width_ - 1); x >= x0; --x)
      if (ink(x, y)) return x;
    return -1;
  }

  GrayImage render(int width, std::mt19937_64& rng) const {
    GrayImage img(width, height_);
    const int paper = uniform(rng, 225, 245);
    const int pen = uniform(rng, 25, 70);
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width; ++x)
        img.at(x, y) = static_cast<std::uint8_t>(ink(x, y) ? pen + uniform(rng, -10, 20) : paper + uniform(rng, -10, 8));
    return img;
  }

 private:
  void grow(int w) {
    if (w <= stride_) {
      width_ = w;
      return;
    }
    const int new_stride = std::max(w, stride_ * 2);
    std::vector<std::uint8_t> next(static_cast<std::size_t>(new_stride) * height_, 0);
    for (int y = 0; y < height_; ++y)
      std::copy_n(ink_.begin() + static_cast<std::ptrdiff_t>(y) * stride_, stride_,
                  next.begin() + static_cast<std::ptrdiff_t>(y) * new_stride);
    ink_ = std::move(next);
    stride_ = new_stride;
    width_ = w;
  }

  int height_;
  int width_ = 0;
  int stride_ = 0;
  std::vector<std::uint8_t> ink_;
};

struct Metrics {
  int ascender;
  int x_height;
  int descender;
  int top;  // first ascender row
  int stroke;

  int body_top() const { return top + ascender; }
  int baseline() const { return body_top() + x_height - 1; }
  int bottom() const { return baseline() + descender; }
};

Metrics draw_metrics(std::mt19937_64& rng, int top) {
  Metrics m{};
  m.ascender = uniform(rng, 6, 10);
  m.x_height = uniform(rng, 12, 20);
  m.descender = uniform(rng, 5, 9);
  m.top = top;
  m.stroke = uniform(rng, 2, 3);
  return m;
}

/// Draws one letter with its left edge at x; returns its right edge.
int draw_letter(Canvas& c, char32_t letter, int x, const Metrics& m, std::mt19937_64& rng) {
  const int s = m.stroke;
  const int top = m.body_top();
  const int base = m.baseline();
  const Shape shape = shape_of(letter);
  if (shape == Shape::Dotted) {
    c.rect(x, x + s - 1, top, base);
    const int dot_y = top - 3;
    if (letter == U'ї') {
      c.rect(x - 2, x - 1, dot_y - 1, dot_y);
      c.rect(x + s, x + s + 1, dot_y - 1, dot_y);
    } else {
      c.rect(x, x + 1, dot_y - 1, dot_y);
    }
    return letter == U'ї' ? x + s + 1 : x + s - 1;
  }
  const int w = shape == Shape::Broken ? uniform(rng, 10, 12) : uniform(rng, 7, 11);
  const int right = x + w - 1;
  switch (shape) {
    case Shape::Round:
      c.rect(x, x + s - 1, top, base);
      c.rect(right - s + 1, right, top, base);
      c.rect(x, right, top, top + s - 1);
      c.rect(x, right, base - s + 1, base);
      break;
    case Shape::Ascender:
      c.rect(x, x + s - 1, m.top, base);
      c.rect(right - s + 1, right, top, base);
      c.rect(x, right, top + m.x_height / 2, top + m.x_height / 2 + s - 1);
      break;
    case Shape::Descender:
      c.rect(x, x + 1, top, m.bottom());
      c.rect(right - s + 1, right, top, base);
      c.rect(x, right, top, top + s - 1);
      break;
    case Shape::Broken: {
      const int split = x + w / 2;
      const int gap = uniform(rng, 1, 3);
      c.rect(x, x + s - 1, top, base);
      c.rect(x, split - gap, top + m.x_height / 3, top + m.x_height / 3 + s - 1);
      c.rect(split, std::max(split, right - s + 1), top, base);
      c.rect(split, right, top, top + s - 1);
      break;
    }
    default:
      c.rect(x, x + s - 1, top, base);
      c.rect(right - s + 1, right, top, base);
      c.rect(x, right, top, top + s - 1);
      break;
  }
  return right;
}

char32_t lower(char32_t c) { return c >= U'А' && c <= U'Я' ? c + 0x20 : c; }

/// Cyrillic label with at most one descender letter (none if !allow_descender).
std::u32string pick_label(std::mt19937_64& rng, int max_letters, bool allow_descender) {
  const int n = uniform(rng, 1, std::max(1, max_letters));
  std::u32string label;
  bool descender_used = !allow_descender;
  while (static_cast<int>(label.size()) < n) {
    char32_t c = kAlphabet[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(kAlphabet.size()) - 1))];
    if (!label.empty()) c = lower(c);
    const bool descends = shape_of(c) == Shape::Descender;
    if (descends && descender_used) continue;
    descender_used = descender_used || descends;
    label.push_back(c);
  }
  return label;
}

struct WordDraw {
  int x_left;
  int x_right;
  int last_letter_x;
};

WordDraw draw_word(Canvas& c, std::u32string_view label, int x, const Metrics& m, std::mt19937_64& rng) {
  WordDraw d{x, x, x};
  int cursor = x;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i > 0) cursor += uniform(rng, 1, 5);
    d.last_letter_x = cursor;
    d.x_right = draw_letter(c, label[i], cursor, m, rng);
    cursor = d.x_right + 1;
  }
  // Dots of a leading ї reach two columns left of the stem.
  if (!label.empty() && label.front() == U'ї') d.x_left = x - 2;
  return d;
}

void draw_mark(Canvas& c, char32_t glyph, int x, const Metrics& m) {
  const int base = m.baseline();
  switch (glyph) {
    case U',':
      c.rect(x + 1, x + 3, base - 2, base);
      c.rect(x, x + 1, base + 1, base + 3);
      break;
    case U'.':
      c.rect(x, x + 2, base - 2, base);
      break;
    default: {
      const int mid = m.body_top() + m.x_height / 2;
      c.rect(x, x + 7, mid - 1, mid);
      break;
    }
  }
}

int mark_width(char32_t glyph) { return glyph == U',' ? 4 : glyph == U'.' ? 3 : 8; }

}  // namespace

SynthLine make_line(std::uint64_t seed, const std::string& line_id, const std::string& writer_id,
                    const LineOptions& o) {
  if (o.min_words < 1 || o.max_words < o.min_words) throw Error(ErrorCode::InvalidInput, "bad word-count range");
  std::mt19937_64 rng(seed);
  const Metrics m = draw_metrics(rng, uniform(rng, 2, 4));
  Canvas canvas(m.bottom() + 1 + uniform(rng, 2, 4));

  const int min_words = o.adversarial ? std::max(2, o.min_words) : o.min_words;
  const int n = uniform(rng, min_words, std::max(min_words, o.max_words));

  // Which gaps get a descender tail: at least one on adversarial lines.
  std::vector<bool> tail(static_cast<std::size_t>(n), false);
  SynthLine line;
  line.adversarial = o.adversarial;
  if (o.adversarial) {
    tail[static_cast<std::size_t>(uniform(rng, 0, n - 2))] = true;
    // A word right after a tail carries no descender ink, so tails never touch.
    for (int i = 0; i + 1 < n; ++i) {
      const bool prev = i > 0 && tail[static_cast<std::size_t>(i - 1)];
      if (!prev && !tail[static_cast<std::size_t>(i + 1)] && chance(rng, 0.2)) tail[static_cast<std::size_t>(i)] = true;
    }
  }

  struct Token {
    std::string text;
    std::u32string ink;  // letters to draw, or one mark glyph
    bool mark = false;
  };
  std::vector<Token> tokens;
  for (int i = 0; i < n; ++i) {
    Token t;
    const bool after_tail = i > 0 && tail[static_cast<std::size_t>(i - 1)];
    if (o.punctuation && !after_tail && i > 0 && chance(rng, 0.06)) {
      t.mark = true;
      t.ink = std::u32string(1, U",.-"[uniform(rng, 0, 2)]);
      t.text = text::to_utf8(t.ink);
    } else {
      t.ink = pick_label(rng, o.max_letters, !after_tail);
      t.text = text::to_utf8(t.ink);
      if (o.mixed_labels && chance(rng, 0.05)) t.text = chance(rng, 0.5) ? "test" : std::to_string(uniform(rng, 1, 2030));
      if (o.punctuation && chance(rng, 0.12)) t.text += chance(rng, 0.5) ? "," : ".";
    }
    tokens.push_back(std::move(t));
  }

  std::vector<WordDraw> drawn;
  int x = uniform(rng, 6, 12);
  for (int i = 0; i < n; ++i) {
    const auto& t = tokens[static_cast<std::size_t>(i)];
    if (t.mark) {
      draw_mark(canvas, t.ink.front(), x, m);
      drawn.push_back({x, x + mark_width(t.ink.front()) - 1, x});
    } else {
      drawn.push_back(draw_word(canvas, t.ink, x, m, rng));
    }
    x = drawn.back().x_right + 1 + uniform(rng, 16, 30);
  }

  // Tails: down from the last letter's right stroke, then right under the gap.
  for (int i = 0; i + 1 < n; ++i) {
    if (!tail[static_cast<std::size_t>(i)] || tokens[static_cast<std::size_t>(i)].mark) continue;
    auto& d = drawn[static_cast<std::size_t>(i)];
    const int stem = canvas.rightmost(m.baseline(), d.last_letter_x, d.x_right);
    const int end = drawn[static_cast<std::size_t>(i + 1)].x_left - uniform(rng, 2, 6);
    const int y1 = m.bottom();
    canvas.rect(stem - 1, stem, m.baseline() + 1, y1);
    canvas.rect(stem - 1, end, y1 - 1, y1);
    d.x_right = std::max(d.x_right, end);
    ++line.joined_gaps;
  }

  const int width = drawn.back().x_right + 1 + uniform(rng, 6, 12);
  std::vector<std::string> words;
  std::vector<WordSpan> spans;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    words.push_back(tokens[i].text);
    spans.push_back({drawn[i].x_left, drawn[i].x_right});
  }
  std::string transcript;
  for (const auto& w : words) transcript += (transcript.empty() ? "" : " ") + w;

  line.record.line_id = line_id;
  line.record.writer_id = writer_id;
  line.record.transcript = std::move(transcript);
  line.record.gt_spans = std::move(spans);
  line.record.image = canvas.render(width, rng);
  return line;
}

std::vector<SynthLine> make_corpus(std::uint64_t seed, const CorpusOptions& o) {
  if (o.adversarial > o.lines) throw Error(ErrorCode::InvalidInput, "more adversarial lines than lines");
  if (o.writers == 0) throw Error(ErrorCode::InvalidInput, "writers must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<bool> adversarial(o.lines, false);
  std::fill_n(adversarial.begin(), o.adversarial, true);
  std::shuffle(adversarial.begin(), adversarial.end(), rng);

  std::vector<SynthLine> out;
  out.reserve(o.lines);
  for (std::size_t i = 0; i < o.lines; ++i) {
    char id[32];
    char writer[32];
    std::snprintf(id, sizeof id, "line%05zu", i);
    std::snprintf(writer, sizeof writer, "writer%02zu", i % o.writers);
    LineOptions lo = o.line;
    lo.adversarial = adversarial[i];
    out.push_back(make_line(rng(), id, writer, lo));
  }
  return out;
}

SynthWord make_word(std::uint64_t seed, int max_letters) {
  std::mt19937_64 rng(seed);
  const Metrics m = draw_metrics(rng, uniform(rng, 2, 5));
  Canvas canvas(m.bottom() + 1 + uniform(rng, 2, 5));
  const auto label = pick_label(rng, max_letters, true);
  const int x0 = uniform(rng, 3, 6);
  const auto d = draw_word(canvas, label, x0, m, rng);

  SynthWord w;
  w.label = text::to_utf8(label);
  w.baseline = m.baseline();
  w.x_height = m.x_height;
  w.has_descender = std::any_of(label.begin(), label.end(), [](char32_t c) { return shape_of(c) == Shape::Descender; });
  w.image = canvas.render(d.x_right + 1 + uniform(rng, 3, 6), rng);
  return w;
}

GrayImage make_mark(std::uint64_t seed, const std::string& glyph) {
  const auto cps = text::to_u32(glyph);
  if (cps.size() != 1) throw Error(ErrorCode::InvalidInput, "mark glyph must be one character");
  std::mt19937_64 rng(seed);
  const Metrics m = draw_metrics(rng, 1);
  Canvas canvas(m.bottom() + 2);
  const int x = uniform(rng, 2, 4);
  draw_mark(canvas, cps.front(), x, m);
  return canvas.render(x + mark_width(cps.front()) + uniform(rng, 2, 4), rng);
}

}  // namespace hwset::synth
