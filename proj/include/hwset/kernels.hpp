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

// Data-parallel inner loops. Every OpenMP kernel has a serial reference that
// produces bit-identical output; tests pin the pair together and bench/
// compares their throughput.

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "hwset/image.hpp"

namespace hwset::kernels {

Histogram histogram_serial(std::span<const std::uint8_t> pixels);
Histogram histogram_omp(std::span<const std::uint8_t> pixels, int jobs = 0);

/// Ink pixels per column.
std::vector<int> column_ink_serial(const BinaryImage& bin);
std::vector<int> column_ink_omp(const BinaryImage& bin, int jobs = 0);

/// Column means of an n x d sample matrix (one sample per row).
Eigen::VectorXd column_mean_serial(const Eigen::MatrixXd& samples);
Eigen::VectorXd column_mean_omp(const Eigen::MatrixXd& samples, int jobs = 0);

/// Sample covariance (n - 1 denominator when unbiased, n otherwise).
Eigen::MatrixXd covariance_serial(const Eigen::MatrixXd& samples, const Eigen::VectorXd& mean,
                                  bool unbiased);
Eigen::MatrixXd covariance_omp(const Eigen::MatrixXd& samples, const Eigen::VectorXd& mean,
                               bool unbiased, int jobs = 0);

/// Pairwise code-point edit distances, a[i] vs b[i].
std::vector<std::size_t> edit_distances_serial(std::span<const std::u32string> a,
                                               std::span<const std::u32string> b);
std::vector<std::size_t> edit_distances_omp(std::span<const std::u32string> a,
                                            std::span<const std::u32string> b, int jobs = 0);

}  // namespace hwset::kernels
