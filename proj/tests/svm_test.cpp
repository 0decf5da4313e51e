#include "stance/svm.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "stance/error.hpp"
#include "stance/random.hpp"

namespace stance {
namespace {

Example ex(std::vector<std::uint32_t> idx, std::vector<double> vals, int y) {
  return Example{SparseVector{std::move(idx), std::move(vals)}, y};
}

std::vector<Example> one_d(double scale) {
  return {ex({0}, {scale}, +1), ex({0}, {-scale}, -1)};
}

TrainConfig no_bias() {
  TrainConfig cfg;
  cfg.C = 1.0;
  cfg.wi = 1.0;
  cfg.bias = false;
  cfg.tolerance = 1e-9;
  return cfg;
}

TEST(Train, OneDimensionalAnalyticCase) {
  const auto model = train(one_d(1.0), 1, no_bias());
  EXPECT_NEAR(model.weights[0], 1.0, 1e-3);
  EXPECT_EQ(model.bias(), 0.0);
  const auto p = predict(model, SparseVector{{0}, {1.0}});
  EXPECT_EQ(p.stance, Stance::Supporting);
  EXPECT_NEAR(p.margin, 1.0, 1e-3);
}

TEST(Train, ScalingThePointsHalvesTheWeight) {
  const auto model = train(one_d(2.0), 1, no_bias());
  EXPECT_NEAR(model.weights[0], 0.5, 1e-3);
  EXPECT_EQ(predict(model, SparseVector{{0}, {2.0}}).stance, Stance::Supporting);
  EXPECT_EQ(predict(model, SparseVector{{0}, {-2.0}}).stance, Stance::Opposing);
}

TEST(Train, RejectsBadInput) {
  EXPECT_THROW(train({ex({0}, {1}, +1), ex({0}, {2}, +1)}, 1, TrainConfig{}), Error);
  EXPECT_THROW(train({ex({0}, {NAN}, +1), ex({0}, {2}, -1)}, 1, TrainConfig{}), Error);
  EXPECT_THROW(train({ex({3}, {1}, +1), ex({0}, {2}, -1)}, 1, TrainConfig{}), Error);
  TrainConfig bad;
  bad.wi = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad.wi = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(DualObjective, Examples) {
  const auto data = one_d(1.0);
  EXPECT_EQ(dual_objective(data, {0.0, 0.0}, no_bias()), 0.0);
  EXPECT_DOUBLE_EQ(dual_objective(data, {0.5, 0.5}, no_bias()), -0.5);
  EXPECT_THROW(dual_objective(data, {1.5, 0.0}, no_bias()), std::invalid_argument);
  EXPECT_THROW(dual_objective(data, {-0.1, 0.0}, no_bias()), std::invalid_argument);
}

TEST(Predict, TieAndBias) {
  Model zero{{0.0, 0.0, 0.0}, 0, 0, {}};
  EXPECT_EQ(predict(zero, SparseVector{{1}, {1.0}}).stance, Stance::Supporting);
  EXPECT_EQ(predict(zero, SparseVector{{1}, {1.0}}).margin, 0.0);
  Model biased{{1.0, 2.0, -0.25}, 0, 0, {}};
  EXPECT_EQ(predict(biased, SparseVector{}).margin, -0.25);
  EXPECT_EQ(predict(biased, SparseVector{}).stance, Stance::Opposing);
  EXPECT_THROW(predict(biased, SparseVector{{2}, {1.0}}), Error);
}

TEST(Predict, DigestMismatchIsFatal) {
  const FeatureSet fs({{"a", 1, Stance::Supporting}});
  Model m{{1.0, 0.0}, fs.digest() + 1, 0, {}};
  const Document doc{"1", "u", Timestamp{}, {"a"}, std::nullopt};
  EXPECT_THROW(predict(m, fs, doc), Error);
  m.feature_digest = fs.digest();
  EXPECT_EQ(predict(m, fs, doc).margin, 1.0);
}

std::vector<Example> random_instance(Rng& rng, std::size_t n, std::size_t dim) {
  std::vector<Example> data;
  for (std::size_t i = 0; i < n; ++i) {
    Example e;
    for (std::uint32_t d = 0; d < dim; ++d) {
      e.x.indices.push_back(d);
      e.x.values.push_back(uniform_real(rng) * 4.0 - 2.0);
    }
    e.y = i % 2 == 0 ? +1 : -1;
    data.push_back(std::move(e));
  }
  return data;
}

TEST(Train, AlphasInBoxAndBeatRandomFeasiblePoints) {
  Rng rng(21);
  for (int inst = 0; inst < 20; ++inst) {
    const auto data = random_instance(rng, 12, 3);
    TrainConfig cfg;
    cfg.C = 0.5;
    cfg.wi = 0.3 + 0.7 * uniform_real(rng);
    cfg.tolerance = 1e-8;
    const auto sol = train_dual(data, 3, cfg);
    for (std::size_t i = 0; i < data.size(); ++i) {
      EXPECT_GE(sol.alphas[i], 0.0);
      EXPECT_LE(sol.alphas[i], cfg.cost(data[i].y));
    }
    const double best = dual_objective(data, sol.alphas, cfg);
    for (int draw = 0; draw < 200; ++draw) {
      std::vector<double> a(data.size());
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = uniform_real(rng) * cfg.cost(data[i].y);
      EXPECT_LE(best, dual_objective(data, a, cfg) + 1e-12);
    }
  }
}

TEST(Train, MatchesGridOracleOnFourPoints) {
  Rng rng(5);
  for (int inst = 0; inst < 3; ++inst) {
    const auto data = random_instance(rng, 4, 2);
    TrainConfig cfg;
    cfg.C = 0.03;
    cfg.wi = 0.5;
    cfg.tolerance = 1e-9;
    const auto sol = train_dual(data, 2, cfg);
    std::array<std::array<double, 4>, 4> q{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        double dot = 1.0;  // bias slot
        for (int d = 0; d < 2; ++d) dot += data[i].x.values[d] * data[j].x.values[d];
        q[i][j] = data[i].y * data[j].y * dot;
      }
    }
    std::array<double, 4> upper{};
    for (int i = 0; i < 4; ++i) upper[i] = cfg.cost(data[i].y);
    const double grid = oracle::grid_min_dual4(q, upper, 1e-3);
    EXPECT_NEAR(dual_objective(data, sol.alphas, cfg), grid, 1e-3);
  }
}

TEST(Train, DeterministicAndDuplicationInvariant) {
  Rng rng(8);
  const auto data = random_instance(rng, 30, 4);
  TrainConfig cfg;
  cfg.tolerance = 1e-9;
  cfg.max_epochs = 100000;
  const auto a = train(data, 4, cfg);
  const auto b = train(data, 4, cfg);
  EXPECT_EQ(a.weights, b.weights);

  auto doubled = data;
  doubled.insert(doubled.end(), data.begin(), data.end());
  TrainConfig half = cfg;
  half.C = cfg.C / 2;
  const auto c = train(doubled, 4, half);
  for (std::size_t i = 0; i < a.weights.size(); ++i) EXPECT_NEAR(a.weights[i], c.weights[i], 1e-4);
  Rng probe(9);
  for (const auto& e : random_instance(probe, 50, 4)) {
    const double ma = predict(a, e.x).margin;
    if (std::abs(ma) > 1e-3) EXPECT_EQ(predict(a, e.x).stance, predict(c, e.x).stance);
  }
}

TEST(ModelText, RoundTripIsExact) {
  Model m{{0.1, -1.0 / 3.0, 1e-300, 12345.678901234567}, 0xdeadbeefcafef00dULL, 7, {}};
  m.meta.C = 1.0;
  m.meta.wi = 0.9;
  const auto text = to_text(m);
  EXPECT_EQ(text.substr(0, 14), "stance-svm v1\n");
  const auto back = parse_model(text);
  EXPECT_EQ(back.weights, m.weights);
  EXPECT_EQ(back.feature_digest, m.feature_digest);
  EXPECT_EQ(back.seed, 7u);
  EXPECT_EQ(to_text(back), text);
  EXPECT_THROW(parse_model("stance-svm v2\n"), Error);
}

}  // namespace
}  // namespace stance
