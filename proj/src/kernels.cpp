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

#include "hwset/kernels.hpp"

#include <omp.h>

#include "hwset/error.hpp"
#include "hwset/metrics.hpp"
#include "hwset/parallel.hpp"

namespace hwset {

int resolve_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

void for_each_index(std::size_t n, ExecPolicy policy, const std::function<void(std::size_t)>& fn) {
  if (policy.mode == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_jobs(policy.jobs))
  for (std::int64_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

namespace kernels {

Histogram histogram_serial(std::span<const std::uint8_t> pixels) {
  Histogram h{};
  for (std::uint8_t v : pixels) ++h[v];
  return h;
}

Histogram histogram_omp(std::span<const std::uint8_t> pixels, int jobs) {
  Histogram h{};
  const auto n = static_cast<std::int64_t>(pixels.size());
  const std::uint8_t* data = pixels.data();
#pragma omp parallel num_threads(resolve_jobs(jobs))
  {
    Histogram local{};
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) ++local[data[i]];
#pragma omp critical
    for (int v = 0; v < 256; ++v) h[v] += local[v];
  }
  return h;
}

std::vector<int> column_ink_serial(const BinaryImage& bin) {
  std::vector<int> cols(static_cast<std::size_t>(bin.width()), 0);
  for (int y = 0; y < bin.height(); ++y)
    for (int x = 0; x < bin.width(); ++x) cols[static_cast<std::size_t>(x)] += bin.ink(x, y) ? 1 : 0;
  return cols;
}

std::vector<int> column_ink_omp(const BinaryImage& bin, int jobs) {
  std::vector<int> cols(static_cast<std::size_t>(bin.width()), 0);
  const int w = bin.width();
  const int h = bin.height();
#pragma omp parallel for schedule(static) num_threads(resolve_jobs(jobs))
  for (int x = 0; x < w; ++x) {
    int count = 0;
    for (int y = 0; y < h; ++y) count += bin.ink(x, y) ? 1 : 0;
    cols[static_cast<std::size_t>(x)] = count;
  }
  return cols;
}

Eigen::VectorXd column_mean_serial(const Eigen::MatrixXd& samples) {
  const Eigen::Index n = samples.rows();
  Eigen::VectorXd mean(samples.cols());
  for (Eigen::Index j = 0; j < samples.cols(); ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += samples(i, j);
    mean(j) = s / static_cast<double>(n);
  }
  return mean;
}

Eigen::VectorXd column_mean_omp(const Eigen::MatrixXd& samples, int jobs) {
  const Eigen::Index n = samples.rows();
  const Eigen::Index d = samples.cols();
  Eigen::VectorXd mean(d);
#pragma omp parallel for schedule(static) num_threads(resolve_jobs(jobs))
  for (Eigen::Index j = 0; j < d; ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += samples(i, j);
    mean(j) = s / static_cast<double>(n);
  }
  return mean;
}

namespace {

double covariance_denominator(Eigen::Index n, bool unbiased) {
  if (unbiased && n < 2) throw Error(ErrorCode::InvalidInput, "unbiased covariance needs n >= 2");
  if (n < 1) throw Error(ErrorCode::InvalidInput, "covariance needs n >= 1");
  return static_cast<double>(unbiased ? n - 1 : n);
}

}  // namespace

Eigen::MatrixXd covariance_serial(const Eigen::MatrixXd& samples, const Eigen::VectorXd& mean, bool unbiased) {
  const Eigen::Index n = samples.rows();
  const Eigen::Index d = samples.cols();
  const double denom = covariance_denominator(n, unbiased);
  const Eigen::MatrixXd centered = samples.rowwise() - mean.transpose();
  Eigen::MatrixXd cov(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a; b < d; ++b) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) s += centered(i, a) * centered(i, b);
      cov(a, b) = cov(b, a) = s / denom;
    }
  }
  return cov;
}

Eigen::MatrixXd covariance_omp(const Eigen::MatrixXd& samples, const Eigen::VectorXd& mean, bool unbiased,
                               int jobs) {
  const Eigen::Index n = samples.rows();
  const Eigen::Index d = samples.cols();
  const double denom = covariance_denominator(n, unbiased);
  const Eigen::MatrixXd centered = samples.rowwise() - mean.transpose();
  Eigen::MatrixXd cov(d, d);
  // Rows of the upper triangle shrink with a, hence the dynamic schedule.
#pragma omp parallel for schedule(dynamic, 4) num_threads(resolve_jobs(jobs))
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a; b < d; ++b) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) s += centered(i, a) * centered(i, b);
      cov(a, b) = cov(b, a) = s / denom;
    }
  }
  return cov;
}

std::vector<std::size_t> edit_distances_serial(std::span<const std::u32string> a,
                                               std::span<const std::u32string> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "edit_distances: size mismatch");
  std::vector<std::size_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = levenshtein(a[i], b[i]);
  return out;
}

std::vector<std::size_t> edit_distances_omp(std::span<const std::u32string> a, std::span<const std::u32string> b,
                                            int jobs) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "edit_distances: size mismatch");
  std::vector<std::size_t> out(a.size());
  const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(resolve_jobs(jobs))
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = levenshtein(a[i], b[i]);
  return out;
}

}  // namespace kernels
}  // namespace hwset
