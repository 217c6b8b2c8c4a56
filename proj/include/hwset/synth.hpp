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

// Seeded synthetic handwriting-like lines and words with known word spans.
// Used by tests, benchmarks and `hwset synth` to build fixture corpora.
//
// Letters are stroke boxes covering the full x-height band, so every x-height
// row is a body row and the baseline is exact. Within a word letters sit 0-4 px apart (some
// broken into pieces, some with detached dots); words are 16-30 px apart.
// An adversarial line additionally gives a word a descender tail that sweeps
// under the following space and stops 2-6 px short of the next word.

#include <cstdint>
#include <string>
#include <vector>

#include "hwset/image.hpp"
#include "hwset/segmentation.hpp"

namespace hwset::synth {

struct LineOptions {
  int min_words = 2;
  int max_words = 7;
  int max_letters = 8;
  bool adversarial = false;
  /// Occasional trailing , . on tokens and standalone , - tokens.
  bool punctuation = false;
  /// Occasional Latin or numeric tokens.
  bool mixed_labels = false;
};

struct SynthLine {
  LineRecord record;  // image in memory, gt_spans set
  bool adversarial = false;
  int joined_gaps = 0;  // inter-word gaps bridged in column projection
};

SynthLine make_line(std::uint64_t seed, const std::string& line_id, const std::string& writer_id,
                    const LineOptions& options = {});

struct CorpusOptions {
  std::size_t lines = 100;
  std::size_t adversarial = 0;
  std::size_t writers = 4;
  LineOptions line;
};

/// Adversarial lines are spread over the corpus by a seeded shuffle.
std::vector<SynthLine> make_corpus(std::uint64_t seed, const CorpusOptions& options);

struct SynthWord {
  GrayImage image;
  std::string label;
  int baseline = 0;  // last x-height row
  int x_height = 0;
  bool has_descender = false;
};

SynthWord make_word(std::uint64_t seed, int max_letters = 8);

/// A single ',', '.' or '-' mark on paper.
GrayImage make_mark(std::uint64_t seed, const std::string& glyph);

}  // namespace hwset::synth
