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

// Legibility and distribution metrics: code-point edit distance, micro and
// writer-macro CER with length / vocabulary / rare-letter splits, and the
// Frechet distance between Gaussians fitted to embedding sets.

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hwset/parallel.hpp"

namespace hwset {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

enum class LengthBucket { Short, Medium, Long, VeryLong };  // 1-3, 4-6, 7-9, 10+

LengthBucket length_bucket(std::size_t length);
const char* bucket_label(LengthBucket b);

struct CerSample {
  std::string crop_id;
  std::string writer_id;
  std::string reference;
  std::string hypothesis;
  bool in_vocabulary = false;
  bool contains_rare_letter = false;
  LengthBucket bucket = LengthBucket::Short;
};

/// Fills the rare-letter flag and length bucket from the reference.
CerSample make_cer_sample(std::string crop_id, std::string writer_id, std::string reference,
                          std::string hypothesis, bool in_vocabulary, std::u32string_view rare_letters);

struct CerCell {
  std::size_t samples = 0;
  std::size_t reference_chars = 0;
  std::size_t edits = 0;

  /// Micro CER of the cell; nullopt when the cell is empty. May exceed 1.
  std::optional<double> cer() const;
  void add(std::size_t ref_len, std::size_t dist);
};

struct CerReport {
  CerCell overall;
  double writer_macro = 0.0;
  std::map<std::string, CerCell> per_writer;
  CerCell in_vocabulary;
  CerCell out_of_vocabulary;
  CerCell rare_letter;
  CerCell common_letter;
  std::array<CerCell, 4> by_length;
};

/// Throws Error(InvalidSample) for an empty reference.
CerReport cer(const std::vector<CerSample>& samples, ExecPolicy policy = {});

/// Rows in the order overall / IV / OOV / rare / common / 1-3 / 4-6 / 7-9 / 10+.
nlohmann::ordered_json to_json(const CerReport& report);

/// Mean and covariance of a set of fixed-dimension feature vectors.
class EmbeddingSet {
 public:
  /// `samples` is n x d, one vector per row; n >= 2.
  static EmbeddingSet from_samples(const Eigen::MatrixXd& samples, bool unbiased = true, ExecPolicy policy = {});
  /// Gaussian given directly; `covariance` must be d x d for a d-vector mean.
  static EmbeddingSet from_moments(Eigen::VectorXd mean, Eigen::MatrixXd covariance, Eigen::Index count = 2);

  Eigen::Index dimension() const { return mean_.size(); }
  Eigen::Index count() const { return count_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }

 private:
  Eigen::Index count_ = 0;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
};

/// Symmetric PSD square root via eigendecomposition; eigenvalues below zero
/// are clamped. Throws Error(NotSymmetric) if |M - M^T| exceeds 1e-8.
Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m);

/// ||mu_p - mu_q||^2 + Tr(S_p + S_q - 2 sqrt(sqrt(S_p) S_q sqrt(S_p))), floored at 0.
double frechet_distance(const EmbeddingSet& p, const EmbeddingSet& q);

/// Header line "d n" (text rows follow) or "d n f32|f64" (little-endian binary
/// payload of n*d values follows the newline).
Eigen::MatrixXd read_embeddings(const std::filesystem::path& path);
void write_embeddings_text(const std::filesystem::path& path, const Eigen::MatrixXd& samples);

}  // namespace hwset
