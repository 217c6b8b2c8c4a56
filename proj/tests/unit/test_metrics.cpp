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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <fstream>
#include <functional>
#include <random>

#include "fixtures.hpp"
#include "hwset/error.hpp"
#include "hwset/metrics.hpp"
#include "hwset/text.hpp"
#include "oracles.hpp"

using namespace hwset;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no hwset::Error thrown";
  return ErrorCode::InvalidInput;
}

CerSample sample(const std::string& writer, const std::string& ref, const std::string& hyp, bool iv = true) {
  return make_cer_sample("c", writer, ref, hyp, iv, U"фґЩЄЦї");
}

Eigen::MatrixXd random_samples(std::mt19937_64& rng, int n, int d, double shift = 0.0) {
  std::normal_distribution<double> g(shift, 1.0);
  Eigen::MatrixXd m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = g(rng) * (1.0 + 0.3 * j);
  return m;
}

}  // namespace

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein(std::string_view("кіт"), std::string_view("кит")), 1u);
  EXPECT_EQ(levenshtein(std::string_view(""), std::string_view("abc")), 3u);
  EXPECT_EQ(levenshtein(std::string_view("слово"), std::string_view("слово")), 0u);
  EXPECT_EQ(levenshtein(std::string_view("з"), std::string_view("33")), 2u);
  EXPECT_EQ(levenshtein(std::string_view("kitten"), std::string_view("sitting")), 3u);
}

TEST(Levenshtein, MetricPropertiesAgainstOracle) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const auto a = testgen::cyrillic(rng, 10);
    const auto b = testgen::cyrillic(rng, 10);
    const auto c = testgen::cyrillic(rng, 10);
    const auto ab = levenshtein(a, b);
    ASSERT_EQ(ab, oracle::edit_distance(a, b));
    EXPECT_EQ(ab, levenshtein(b, a));
    EXPECT_LE(ab, levenshtein(a, c) + levenshtein(c, b));
    EXPECT_EQ(levenshtein(text::to_utf8(a), text::to_utf8(b)), ab);
  }
}

TEST(Cer, BucketsAndFlags) {
  EXPECT_EQ(length_bucket(1), LengthBucket::Short);
  EXPECT_EQ(length_bucket(3), LengthBucket::Short);
  EXPECT_EQ(length_bucket(4), LengthBucket::Medium);
  EXPECT_EQ(length_bucket(9), LengthBucket::Long);
  EXPECT_EQ(length_bucket(10), LengthBucket::VeryLong);
  const auto s = sample("w", "фото", "фото");
  EXPECT_TRUE(s.contains_rare_letter);
  EXPECT_EQ(s.bucket, LengthBucket::Medium);
  EXPECT_FALSE(sample("w", "Фото", "").contains_rare_letter);
}

TEST(Cer, CellsMicroAndMacro) {
  // Writer a: 1 edit over 10 chars. Writer b: 6 edits over 20 chars.
  const std::vector<CerSample> samples = {
      sample("a", "абвгдежзий", "абвгдежзиx"),
      sample("b", "абвгдежзий", "абвгxxxxxx", false),
      sample("b", "абвгдежзий", "абвгдежзий", false),
  };
  const auto r = cer(samples);
  EXPECT_DOUBLE_EQ(*r.overall.cer(), 7.0 / 30.0);
  EXPECT_DOUBLE_EQ(*r.per_writer.at("a").cer(), 0.10);
  EXPECT_DOUBLE_EQ(*r.per_writer.at("b").cer(), 0.30);
  EXPECT_DOUBLE_EQ(r.writer_macro, 0.20);
  EXPECT_DOUBLE_EQ(*r.in_vocabulary.cer(), 0.10);
  EXPECT_EQ(r.out_of_vocabulary.samples, 2u);
  EXPECT_FALSE(r.rare_letter.cer().has_value());
  EXPECT_EQ(r.by_length[static_cast<std::size_t>(LengthBucket::VeryLong)].samples, 3u);

  const auto j = to_json(r);
  EXPECT_EQ(j.at("rows").size(), 9u);
  EXPECT_EQ(j.at("rows")[0].at("subset"), "Overall");
  EXPECT_EQ(j.at("writers"), 2);
}

TEST(Cer, MacroExample) {
  const std::vector<CerSample> samples = {sample("a", "абвгдежзий", "абвгдежзиx"),
                                          sample("b", "абвгдежзий", "xxxгдежзий")};
  const auto r = cer(samples);
  EXPECT_DOUBLE_EQ(*r.per_writer.at("a").cer(), 0.10);
  EXPECT_DOUBLE_EQ(*r.per_writer.at("b").cer(), 0.30);
  EXPECT_DOUBLE_EQ(r.writer_macro, 0.20);
}

TEST(Cer, InsertionsCanExceedOne) {
  const auto r = cer({sample("a", "з", "33")});
  EXPECT_DOUBLE_EQ(*r.overall.cer(), 2.0);
}

TEST(Cer, EmptyReferenceIsInvalid) {
  EXPECT_EQ(code_of([] { cer({sample("a", "", "x")}); }), ErrorCode::InvalidSample);
  EXPECT_FALSE(cer({}).overall.cer().has_value());
}

TEST(Cer, SerialMatchesParallel) {
  std::mt19937_64 rng(4);
  std::vector<CerSample> samples;
  for (int i = 0; i < 500; ++i) {
    auto ref = testgen::cyrillic(rng, 12);
    if (ref.empty()) ref = U"я";
    samples.push_back(sample("w" + std::to_string(i % 7), text::to_utf8(ref),
                             text::to_utf8(testgen::cyrillic(rng, 12)), i % 3 == 0));
  }
  EXPECT_EQ(to_json(cer(samples, ExecPolicy::serial())), to_json(cer(samples, ExecPolicy::parallel(4))));
}

TEST(MatrixSqrt, DiagonalAndErrors) {
  Eigen::MatrixXd m = Eigen::Vector2d(4, 9).asDiagonal();
  const Eigen::MatrixXd r = matrix_sqrt_psd(m);
  EXPECT_NEAR(r(0, 0), 2.0, 1e-12);
  EXPECT_NEAR(r(1, 1), 3.0, 1e-12);
  EXPECT_NEAR(r(0, 1), 0.0, 1e-12);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 2, 0, 1;
  EXPECT_EQ(code_of([&] { matrix_sqrt_psd(asym); }), ErrorCode::NotSymmetric);
  EXPECT_EQ(code_of([] { matrix_sqrt_psd(Eigen::MatrixXd::Zero(2, 3)); }), ErrorCode::DimensionMismatch);
}

TEST(MatrixSqrt, SquaresBackOnRandomPsd) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_samples(rng, 12, 6);
    const Eigen::MatrixXd psd = a.transpose() * a;
    const Eigen::MatrixXd r = matrix_sqrt_psd(psd);
    EXPECT_LT((r * r - psd).norm() / psd.norm(), 1e-10);
    EXPECT_LT((r - r.transpose()).norm(), 1e-10);
  }
}

TEST(Frechet, Properties) {
  std::mt19937_64 rng(21);
  const auto p = EmbeddingSet::from_samples(random_samples(rng, 200, 5));
  const auto q = EmbeddingSet::from_samples(random_samples(rng, 200, 5, 0.5));
  EXPECT_NEAR(frechet_distance(p, p), 0.0, 1e-9);
  EXPECT_NEAR(frechet_distance(p, q), frechet_distance(q, p), 1e-9);
  EXPECT_GT(frechet_distance(p, q), 0.5);

  // Translating both sets leaves the distance unchanged.
  Eigen::VectorXd shift = Eigen::VectorXd::LinSpaced(5, -3, 7);
  const auto ps = EmbeddingSet::from_moments(p.mean() + shift, p.covariance());
  const auto qs = EmbeddingSet::from_moments(q.mean() + shift, q.covariance());
  EXPECT_NEAR(frechet_distance(ps, qs), frechet_distance(p, q), 1e-9);
}

TEST(Frechet, OneDimensionalClosedForm) {
  for (const auto& [m1, v1, m2, v2] : std::vector<std::array<double, 4>>{{0, 1, 1, 4}, {2, 0.25, -1, 9}, {0, 0, 0, 1}}) {
    const auto p = EmbeddingSet::from_moments(Eigen::VectorXd::Constant(1, m1), Eigen::MatrixXd::Constant(1, 1, v1));
    const auto q = EmbeddingSet::from_moments(Eigen::VectorXd::Constant(1, m2), Eigen::MatrixXd::Constant(1, 1, v2));
    EXPECT_NEAR(frechet_distance(p, q), oracle::frechet_1d(m1, v1, m2, v2), 1e-12);
  }
}

TEST(Frechet, CovarianceDenominators) {
  Eigen::MatrixXd s(2, 1);
  s << 1, 3;
  EXPECT_DOUBLE_EQ(EmbeddingSet::from_samples(s, true).covariance()(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(EmbeddingSet::from_samples(s, false).covariance()(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(EmbeddingSet::from_samples(s).mean()(0), 2.0);
}

TEST(Frechet, InputErrors) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(code_of([&] { EmbeddingSet::from_samples(random_samples(rng, 1, 3)); }), ErrorCode::InvalidInput);
  const auto a = EmbeddingSet::from_samples(random_samples(rng, 5, 3));
  const auto b = EmbeddingSet::from_samples(random_samples(rng, 5, 4));
  EXPECT_EQ(code_of([&] { frechet_distance(a, b); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { EmbeddingSet::from_moments(Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Zero(3, 3)); }),
            ErrorCode::DimensionMismatch);
}

TEST(Embeddings, TextAndBinaryFiles) {
  fixture::TempDir dir;
  std::mt19937_64 rng(6);
  const auto m = random_samples(rng, 7, 3);
  write_embeddings_text(dir / "e.txt", m);
  EXPECT_LT((read_embeddings(dir / "e.txt") - m).norm(), 1e-12);

  {
    std::ofstream out(dir / "e.bin", std::ios::binary);
    out << "2 2 f32\n";
    const float v[] = {1.5f, -2.0f, 0.25f, 8.0f};
    out.write(reinterpret_cast<const char*>(v), sizeof v);
  }
  Eigen::MatrixXd want(2, 2);
  want << 1.5, -2.0, 0.25, 8.0;
  EXPECT_EQ(read_embeddings(dir / "e.bin"), want);

  fixture::write_text(dir / "short.txt", "2 2\n1 2 3\n");
  EXPECT_EQ(code_of([&] { read_embeddings(dir / "short.txt"); }), ErrorCode::InvalidInput);
  fixture::write_text(dir / "long.txt", "1 1\n1 2\n");
  EXPECT_EQ(code_of([&] { read_embeddings(dir / "long.txt"); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([&] { read_embeddings(dir / "absent.txt"); }), ErrorCode::Io);
}
