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

#include "hwset/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hwset/error.hpp"
#include "hwset/kernels.hpp"
#include "hwset/manifest.hpp"
#include "hwset/text.hpp"

namespace hwset {

using nlohmann::ordered_json;

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(text::to_u32(a), text::to_u32(b));
}

LengthBucket length_bucket(std::size_t length) {
  if (length <= 3) return LengthBucket::Short;
  if (length <= 6) return LengthBucket::Medium;
  if (length <= 9) return LengthBucket::Long;
  return LengthBucket::VeryLong;
}

const char* bucket_label(LengthBucket b) {
  switch (b) {
    case LengthBucket::Short: return "1-3 characters";
    case LengthBucket::Medium: return "4-6 characters";
    case LengthBucket::Long: return "7-9 characters";
    case LengthBucket::VeryLong: return "10+ characters";
  }
  return "?";
}

CerSample make_cer_sample(std::string crop_id, std::string writer_id, std::string reference,
                          std::string hypothesis, bool in_vocabulary, std::u32string_view rare_letters) {
  CerSample s;
  const auto ref = text::to_u32(reference);
  s.crop_id = std::move(crop_id);
  s.writer_id = std::move(writer_id);
  s.reference = std::move(reference);
  s.hypothesis = std::move(hypothesis);
  s.in_vocabulary = in_vocabulary;
  s.contains_rare_letter = text::contains_any_of(ref, rare_letters);
  s.bucket = length_bucket(ref.size());
  return s;
}

std::optional<double> CerCell::cer() const {
  if (samples == 0) return std::nullopt;
  return static_cast<double>(edits) / static_cast<double>(reference_chars);
}

void CerCell::add(std::size_t ref_len, std::size_t dist) {
  ++samples;
  reference_chars += ref_len;
  edits += dist;
}

CerReport cer(const std::vector<CerSample>& samples, ExecPolicy policy) {
  std::vector<std::u32string> refs(samples.size());
  std::vector<std::u32string> hyps(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    refs[i] = text::to_u32(samples[i].reference);
    if (refs[i].empty())
      throw Error(ErrorCode::InvalidSample, "empty reference for sample " + samples[i].crop_id);
    hyps[i] = text::to_u32(samples[i].hypothesis);
  }
  const auto dist = policy.mode == Exec::Serial ? kernels::edit_distances_serial(refs, hyps)
                                                : kernels::edit_distances_omp(refs, hyps, policy.jobs);

  CerReport r;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const std::size_t len = refs[i].size();
    r.overall.add(len, dist[i]);
    r.per_writer[s.writer_id].add(len, dist[i]);
    (s.in_vocabulary ? r.in_vocabulary : r.out_of_vocabulary).add(len, dist[i]);
    (s.contains_rare_letter ? r.rare_letter : r.common_letter).add(len, dist[i]);
    r.by_length[static_cast<std::size_t>(length_bucket(len))].add(len, dist[i]);
  }
  double macro = 0.0;
  for (const auto& [writer, cell] : r.per_writer) macro += *cell.cer();
  r.writer_macro = r.per_writer.empty() ? 0.0 : macro / static_cast<double>(r.per_writer.size());
  return r;
}

namespace {

ordered_json cell_json(const std::string& subset, const CerCell& cell) {
  ordered_json j{{"subset", subset}, {"samples", cell.samples}, {"reference_chars", cell.reference_chars},
                 {"edits", cell.edits}};
  if (const auto c = cell.cer()) {
    j["cer"] = *c;
    j["cer_percent"] = *c * 100.0;
  } else {
    j["cer"] = nullptr;
    j["cer_percent"] = nullptr;
  }
  return j;
}

}  // namespace

ordered_json to_json(const CerReport& r) {
  ordered_json rows = ordered_json::array();
  rows.push_back(cell_json("Overall", r.overall));
  rows.push_back(cell_json("In-vocabulary", r.in_vocabulary));
  rows.push_back(cell_json("Out-of-vocabulary", r.out_of_vocabulary));
  rows.push_back(cell_json("Rare-letter words", r.rare_letter));
  rows.push_back(cell_json("Common-letter words", r.common_letter));
  for (std::size_t b = 0; b < r.by_length.size(); ++b)
    rows.push_back(cell_json(bucket_label(static_cast<LengthBucket>(b)), r.by_length[b]));
  ordered_json writers = ordered_json::object();
  for (const auto& [writer, cell] : r.per_writer) writers[writer] = cell_json(writer, cell);
  return ordered_json{{"rows", rows},
                      {"micro_cer", r.overall.cer() ? ordered_json(*r.overall.cer()) : ordered_json(nullptr)},
                      {"writer_macro_cer", r.writer_macro},
                      {"writers", r.per_writer.size()},
                      {"per_writer", writers}};
}

EmbeddingSet EmbeddingSet::from_samples(const Eigen::MatrixXd& samples, bool unbiased, ExecPolicy policy) {
  if (samples.rows() < 2) throw Error(ErrorCode::InvalidInput, "embedding set needs at least 2 vectors");
  if (samples.cols() < 1) throw Error(ErrorCode::InvalidInput, "embedding dimension must be >= 1");
  EmbeddingSet set;
  set.count_ = samples.rows();
  if (policy.mode == Exec::Serial) {
    set.mean_ = kernels::column_mean_serial(samples);
    set.covariance_ = kernels::covariance_serial(samples, set.mean_, unbiased);
  } else {
    set.mean_ = kernels::column_mean_omp(samples, policy.jobs);
    set.covariance_ = kernels::covariance_omp(samples, set.mean_, unbiased, policy.jobs);
  }
  return set;
}

EmbeddingSet EmbeddingSet::from_moments(Eigen::VectorXd mean, Eigen::MatrixXd covariance, Eigen::Index count) {
  if (mean.size() < 1) throw Error(ErrorCode::InvalidInput, "embedding dimension must be >= 1");
  if (covariance.rows() != mean.size() || covariance.cols() != mean.size())
    throw Error(ErrorCode::DimensionMismatch, "covariance must be d x d");
  if (count < 2) throw Error(ErrorCode::InvalidInput, "embedding set needs at least 2 vectors");
  EmbeddingSet set;
  set.count_ = count;
  set.mean_ = std::move(mean);
  set.covariance_ = std::move(covariance);
  return set;
}

Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix_sqrt_psd needs a square matrix");
  if (m.size() == 0) return m;
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8) throw Error(ErrorCode::NotSymmetric, "asymmetry " + std::to_string(asym));
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::InvalidInput, "eigendecomposition failed");
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::MatrixXd s = v * roots.asDiagonal() * v.transpose();
  return 0.5 * (s + s.transpose());
}

double frechet_distance(const EmbeddingSet& p, const EmbeddingSet& q) {
  if (p.dimension() != q.dimension())
    throw Error(ErrorCode::DimensionMismatch, std::to_string(p.dimension()) + " vs " + std::to_string(q.dimension()));
  const double mean_term = (p.mean() - q.mean()).squaredNorm();
  const Eigen::MatrixXd root_p = matrix_sqrt_psd(p.covariance());
  Eigen::MatrixXd inner = root_p * q.covariance() * root_p;
  inner = 0.5 * (inner + inner.transpose());
  const double cross = matrix_sqrt_psd(inner).trace();
  const double d = mean_term + p.covariance().trace() + q.covariance().trace() - 2.0 * cross;
  return std::max(d, 0.0);
}

Eigen::MatrixXd read_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  long long d = 0;
  long long n = 0;
  std::string mode;
  if (!(hs >> d >> n) || d < 1 || n < 0)
    throw Error(ErrorCode::InvalidInput, path.string() + ": header must be \"d n\"");
  hs >> mode;
  Eigen::MatrixXd out(n, d);
  if (mode.empty()) {
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j < d; ++j)
        if (!(in >> out(i, j)))
          throw Error(ErrorCode::InvalidInput, path.string() + ": expected " + std::to_string(n * d) + " values");
    double extra = 0.0;
    if (in >> extra) throw Error(ErrorCode::InvalidInput, path.string() + ": trailing values after n rows");
  } else if (mode == "f64" || mode == "f32") {
    const std::size_t width = mode == "f64" ? 8 : 4;
    std::vector<char> buf(static_cast<std::size_t>(n * d) * width);
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
      throw Error(ErrorCode::InvalidInput, path.string() + ": truncated binary payload");
    for (long long i = 0; i < n; ++i) {
      for (long long j = 0; j < d; ++j) {
        const char* src = buf.data() + static_cast<std::size_t>(i * d + j) * width;
        if (width == 8) {
          double v;
          std::memcpy(&v, src, 8);
          out(i, j) = v;
        } else {
          float v;
          std::memcpy(&v, src, 4);
          out(i, j) = v;
        }
      }
    }
  } else {
    throw Error(ErrorCode::InvalidInput, path.string() + ": unknown payload type " + mode);
  }
  return out;
}

void write_embeddings_text(const std::filesystem::path& path, const Eigen::MatrixXd& samples) {
  std::ostringstream out;
  out.precision(17);
  out << samples.cols() << ' ' << samples.rows() << '\n';
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    for (Eigen::Index j = 0; j < samples.cols(); ++j) out << (j ? " " : "") << samples(i, j);
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

}  // namespace hwset
