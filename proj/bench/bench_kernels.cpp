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

// Serial reference vs OpenMP kernel throughput.

#include <benchmark/benchmark.h>

#include <random>

#include "hwset/kernels.hpp"
#include "hwset/segmentation.hpp"
#include "hwset/synth.hpp"

using namespace hwset;

namespace {

std::vector<std::uint8_t> random_pixels(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(0, 255);
  std::vector<std::uint8_t> v(n);
  for (auto& p : v) p = static_cast<std::uint8_t>(d(rng));
  return v;
}

BinaryImage random_mask(int w, int h) {
  std::mt19937_64 rng(2);
  std::bernoulli_distribution coin(0.2);
  BinaryImage b(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) b.set(x, y, coin(rng));
  return b;
}

std::vector<std::u32string> random_words(std::size_t n, std::uint64_t seed) {
  static const std::u32string alphabet = U"абвгґдеєжзиіїйклмнопрстуфхцчшщьюя";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(1, 14), pick(0, alphabet.size() - 1);
  std::vector<std::u32string> out(n);
  for (auto& w : out) {
    w.resize(len(rng));
    for (auto& c : w) c = alphabet[pick(rng)];
  }
  return out;
}

Eigen::MatrixXd random_samples(Eigen::Index n, Eigen::Index d) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  return m;
}

void BM_HistogramSerial(benchmark::State& s) {
  const auto px = random_pixels(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::histogram_serial(px));
  s.SetBytesProcessed(static_cast<int64_t>(s.iterations()) * s.range(0));
}
void BM_HistogramOmp(benchmark::State& s) {
  const auto px = random_pixels(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::histogram_omp(px));
  s.SetBytesProcessed(static_cast<int64_t>(s.iterations()) * s.range(0));
}
BENCHMARK(BM_HistogramSerial)->Arg(1 << 16)->Arg(1 << 22);
BENCHMARK(BM_HistogramOmp)->Arg(1 << 16)->Arg(1 << 22);

void BM_ColumnInkSerial(benchmark::State& s) {
  const auto b = random_mask(4000, 200);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::column_ink_serial(b));
}
void BM_ColumnInkOmp(benchmark::State& s) {
  const auto b = random_mask(4000, 200);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::column_ink_omp(b));
}
BENCHMARK(BM_ColumnInkSerial);
BENCHMARK(BM_ColumnInkOmp);

void BM_CovarianceSerial(benchmark::State& s) {
  const auto m = random_samples(5000, s.range(0));
  const auto mu = kernels::column_mean_serial(m);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::covariance_serial(m, mu, true));
}
void BM_CovarianceOmp(benchmark::State& s) {
  const auto m = random_samples(5000, s.range(0));
  const auto mu = kernels::column_mean_omp(m);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::covariance_omp(m, mu, true));
}
BENCHMARK(BM_CovarianceSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_CovarianceOmp)->Arg(64)->Arg(256);

void BM_EditDistancesSerial(benchmark::State& s) {
  const auto a = random_words(20000, 4), b = random_words(20000, 5);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::edit_distances_serial(a, b));
}
void BM_EditDistancesOmp(benchmark::State& s) {
  const auto a = random_words(20000, 4), b = random_words(20000, 5);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::edit_distances_omp(a, b));
}
BENCHMARK(BM_EditDistancesSerial);
BENCHMARK(BM_EditDistancesOmp);

std::vector<LineRecord> corpus() {
  synth::CorpusOptions o;
  o.lines = 200;
  o.adversarial = 50;
  std::vector<LineRecord> lines;
  for (auto& l : synth::make_corpus(9, o)) lines.push_back(std::move(l.record));
  return lines;
}

void BM_SegmentCorpusSerial(benchmark::State& s) {
  const auto lines = corpus();
  for (auto _ : s) benchmark::DoNotOptimize(segment_corpus(lines, PipelineConfig{}, ExecPolicy::serial()));
}
void BM_SegmentCorpusOmp(benchmark::State& s) {
  const auto lines = corpus();
  for (auto _ : s) benchmark::DoNotOptimize(segment_corpus(lines, PipelineConfig{}, ExecPolicy::parallel()));
}
BENCHMARK(BM_SegmentCorpusSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SegmentCorpusOmp)->Unit(benchmark::kMillisecond);

void BM_EvalCorpusSerial(benchmark::State& s) {
  const auto lines = corpus();
  for (auto _ : s)
    benchmark::DoNotOptimize(eval_corpus(lines, SegMethod::ConnectedComponents, PipelineConfig{}, ExecPolicy::serial()));
}
void BM_EvalCorpusOmp(benchmark::State& s) {
  const auto lines = corpus();
  for (auto _ : s)
    benchmark::DoNotOptimize(eval_corpus(lines, SegMethod::ConnectedComponents, PipelineConfig{}, ExecPolicy::parallel()));
}
BENCHMARK(BM_EvalCorpusSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvalCorpusOmp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
