#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stance/evaluation.hpp"
#include "stance/features.hpp"
#include "stance/timestamp.hpp"

namespace stance {

// One classified tweet, as written by `predict` and `adjust`:
// "tweet_id<TAB>user_id<TAB>created_at<TAB>stance<TAB>margin".
struct PredictionRecord {
  std::string tweet_id;
  std::string user_id;
  Timestamp created_at{};
  Stance stance = Stance::Supporting;
  double margin = 0.0;

  bool operator==(const PredictionRecord&) const = default;
};

std::string predictions_tsv(const std::vector<PredictionRecord>& records);
std::vector<PredictionRecord> parse_predictions_tsv(std::string_view text);

// Applies `adjust` to the stances; everything else is kept.
std::vector<PredictionRecord> adjust_records(const std::vector<PredictionRecord>& records, double gamma_min);

enum class Granularity { Month, Day };

struct TimeBucket {
  std::string period;  // "YYYY-MM" or "YYYY-MM-DD"
  std::size_t count_support = 0;
  std::size_t count_oppose = 0;

  bool operator==(const TimeBucket&) const = default;
};

// Chronological, with empty buckets for gaps inside the observed range.
std::vector<TimeBucket> timeseries(const std::vector<PredictionRecord>& records, Granularity g);

// "period,count_support,count_oppose,log10_support,log10_oppose"; the log
// cells are empty for zero counts.
std::string timeseries_csv(const std::vector<TimeBucket>& buckets);

struct KeywordReport {
  std::vector<ScoredTerm> support;
  std::vector<ScoredTerm> oppose;
};

KeywordReport keyword_report(const FeatureSet& fs, std::size_t top_n);
// "class,rank,term,score".
std::string keyword_csv(const KeywordReport& report);

struct ChartSeries {
  std::string name;
  std::vector<double> values;
};

// Minimal standalone SVG line chart: axes, one polyline per series and a
// legend. Byte-identical for identical input.
std::string line_chart_svg(std::string_view title, const std::vector<std::string>& x_labels,
                           const std::vector<ChartSeries>& series, std::string_view y_label);

}  // namespace stance
