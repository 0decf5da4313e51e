#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stance/features.hpp"
#include "stance/supervision.hpp"
#include "stance/svm.hpp"

namespace stance {

struct ClassCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  bool operator==(const ClassCounts&) const = default;
};

// Indexed by to_index(Stance).
struct ConfusionCounts {
  std::array<ClassCounts, 2> per_class{};
  std::size_t total = 0;

  const ClassCounts& of(Stance s) const { return per_class[to_index(s)]; }
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsReport {
  std::array<ClassMetrics, 2> per_class{};
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;
  ConfusionCounts counts;
  // One entry per metric whose denominator was zero (reported as 0).
  std::vector<std::string> warnings;

  const ClassMetrics& of(Stance s) const { return per_class[to_index(s)]; }
};

using GoldPred = std::pair<Stance, Stance>;

// Throws std::invalid_argument on empty input.
MetricsReport compute_metrics(std::span<const GoldPred> pairs);

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Each class is shuffled with `seed` and dealt round-robin over the folds,
// the second class continuing where the first stopped. Indices are sorted
// within each fold. Throws Error if a class has fewer than k members.
std::vector<Fold> stratified_kfold(std::span<const Stance> labels, std::size_t k, std::uint64_t seed);

struct CvConfig {
  std::size_t num_features = 3000;
  TrainConfig train;
  std::size_t folds = 5;
  // Select features once on the whole dataset instead of per training fold.
  bool leaky_selection = false;
};

struct OutOfFold {
  std::size_t doc = 0;  // index into the dataset
  Stance gold = Stance::Supporting;
  Prediction pred;
};

struct CvResult {
  MetricsReport metrics;              // pooled over all folds
  std::vector<MetricsReport> per_fold;
  std::vector<OutOfFold> predictions;  // dataset order
};

// Trains a fold model: chi-square selection on `train_docs`, binary vectors,
// class-weighted SVM.
struct FittedModel {
  FeatureSet features;
  Model model;
};
FittedModel fit(const std::vector<Document>& train_docs, std::size_t num_features,
                const TrainConfig& cfg);

CvResult cross_validate(const LabeledDataset& dataset, const CvConfig& cfg);

struct UserPrediction {
  std::string user_id;
  std::string tweet_id;
  Stance stance = Stance::Supporting;

  bool operator==(const UserPrediction&) const = default;
};

struct UserVote {
  std::string user_id;
  std::size_t c_s = 0;
  std::size_t c_o = 0;
  double gamma = 0.5;
};

// max(c_s, c_o) / (c_s + c_o). Throws std::invalid_argument if both are 0.
double gamma_of(std::size_t c_s, std::size_t c_o);

// Per-user vote counts in first-seen user order.
std::vector<UserVote> user_votes(std::span<const UserPrediction> predictions);

// Relabels every tweet of a user with a strict majority whose gamma is at
// least gamma_min. Order and ids are preserved.
std::vector<UserPrediction> adjust(std::span<const UserPrediction> predictions, double gamma_min);

// Metrics of the out-of-fold predictions after per-user adjustment.
MetricsReport adjusted_metrics(const LabeledDataset& dataset, const CvResult& cv, double gamma_min);

enum class SweepAxis { FeatureCount, Wi, GammaMin };

struct SweepRow {
  double value = 0.0;
  MetricsReport metrics;
};

// One cross-validation per value (a single one for GammaMin, whose rows
// adjust the same out-of-fold predictions). Rows come back sorted by value.
std::vector<SweepRow> sweep(const LabeledDataset& dataset, SweepAxis axis, std::vector<double> values,
                            const CvConfig& base);

// "axis_value,class,precision,recall,f1,micro_f1,macro_f1", one row per
// class, 4 decimals.
std::string metrics_csv_header();
std::string metrics_csv_rows(const std::string& axis_value, const MetricsReport& report);
std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows);
std::string format_axis_value(SweepAxis axis, double value);

}  // namespace stance
