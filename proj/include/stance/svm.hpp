#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stance/features.hpp"
#include "stance/stance.hpp"

namespace stance {

struct TrainConfig {
  double C = 1.0;
  // Cost multiplier for Supporting (majority) examples, in (0, 1].
  double wi = 0.9;
  double tolerance = 1e-4;
  std::size_t max_epochs = 1000;
  std::uint64_t seed = 42;
  // Augment every example with a constant 1 so the last weight is a bias.
  // With false the augmented slot is 0 and the bias stays 0.
  bool bias = true;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  // Upper bound of alpha for an example of class `y` (+1 / -1).
  double cost(int y) const { return y > 0 ? C * wi : C; }
};

struct Example {
  SparseVector x;
  int y = +1;  // +1 Supporting, -1 Opposing
};

struct TrainMeta {
  double C = 0.0;
  double wi = 0.0;
  std::size_t epochs = 0;
  double max_violation = 0.0;  // largest projected gradient in the last epoch
};

// w over the K features followed by the bias weight. +1 is Supporting.
struct Model {
  std::vector<double> weights;
  std::uint64_t feature_digest = 0;
  std::uint64_t seed = 0;
  TrainMeta meta;

  std::size_t dimension() const { return weights.empty() ? 0 : weights.size() - 1; }
  double bias() const { return weights.back(); }
};

struct Prediction {
  Stance stance = Stance::Supporting;
  double margin = 0.0;
};

struct DualSolution {
  Model model;
  std::vector<double> alphas;
};

// Minimises 0.5 * sum_ij a_i a_j y_i y_j <x_i, x_j> - sum_i a_i subject to
// 0 <= a_i <= cost(y_i), one coordinate at a time in a seeded random order per
// epoch. Throws Error on single-class data or non-finite values.
DualSolution train_dual(const std::vector<Example>& data, std::size_t dimension,
                        const TrainConfig& cfg, std::uint64_t feature_digest = 0);
Model train(const std::vector<Example>& data, std::size_t dimension, const TrainConfig& cfg,
            std::uint64_t feature_digest = 0);

// The objective above. Throws std::invalid_argument if alphas leave the box.
double dual_objective(const std::vector<Example>& data, const std::vector<double>& alphas,
                      const TrainConfig& cfg);

// Margin 0 resolves to Supporting.
Prediction predict(const Model& model, const SparseVector& x);
// Vectorises `doc` with `fs`; throws Error if the model was trained on a
// different vocabulary.
Prediction predict(const Model& model, const FeatureSet& fs, const Document& doc);

// "stance-svm v1", then K, C, wi, seed, digest, then K+1 weights with 17
// significant digits.
std::string to_text(const Model& model);
Model parse_model(std::string_view text);
void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace stance
