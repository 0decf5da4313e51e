#include "stance/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "stance/error.hpp"
#include "stance/random.hpp"

namespace stance {

namespace {

double ratio(std::size_t num, std::size_t den, const char* what, Stance s,
             std::vector<std::string>& warnings) {
  if (den == 0) {
    warnings.push_back(std::string(what) + " of " + std::string(to_string(s)) +
                       " has a zero denominator; reported as 0");
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

// 2PR / (P + R) written over the counts: a single rounding keeps it between
// the rounded P and R.
double f1_of(const ClassCounts& c) {
  return c.tp == 0 ? 0.0 : static_cast<double>(2 * c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
}

}  // namespace

MetricsReport compute_metrics(std::span<const GoldPred> pairs) {
  if (pairs.empty()) throw std::invalid_argument("compute_metrics needs at least one prediction");
  MetricsReport report;
  auto& counts = report.counts;
  counts.total = pairs.size();
  for (const auto& [gold, pred] : pairs) {
    if (gold == pred) {
      ++counts.per_class[to_index(gold)].tp;
    } else {
      ++counts.per_class[to_index(pred)].fp;
      ++counts.per_class[to_index(gold)].fn;
    }
  }
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (Stance s : kStances) {
    const auto& c = counts.of(s);
    auto& m = report.per_class[to_index(s)];
    m.precision = ratio(c.tp, c.tp + c.fp, "precision", s, report.warnings);
    m.recall = ratio(c.tp, c.tp + c.fn, "recall", s, report.warnings);
    m.f1 = f1_of(c);
    tp += c.tp;
    fp += c.fp;
  }
  // Single-label binary: pooled precision equals pooled recall.
  report.micro_f1 = static_cast<double>(tp) / static_cast<double>(tp + fp);
  report.macro_f1 = (report.per_class[0].f1 + report.per_class[1].f1) / 2.0;
  return report;
}

std::vector<Fold> stratified_kfold(std::span<const Stance> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  std::array<std::vector<std::size_t>, 2> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[to_index(labels[i])].push_back(i);
  for (Stance s : kStances) {
    if (members[to_index(s)].size() < k) {
      throw Error("class " + std::string(to_string(s)) + " has fewer than " + std::to_string(k) +
                  " examples");
    }
  }
  Rng rng(seed);
  std::vector<Fold> folds(k);
  std::size_t next = 0;
  for (auto& group : members) {
    shuffle(std::span(group), rng);
    for (std::size_t i : group) {
      folds[next].test.push_back(i);
      next = (next + 1) % k;
    }
  }
  for (std::size_t f = 0; f < k; ++f) {
    std::sort(folds[f].test.begin(), folds[f].test.end());
  }
  for (std::size_t f = 0; f < k; ++f) {
    for (std::size_t g = 0; g < k; ++g) {
      if (g != f) folds[f].train.insert(folds[f].train.end(), folds[g].test.begin(), folds[g].test.end());
    }
    std::sort(folds[f].train.begin(), folds[f].train.end());
  }
  return folds;
}

FittedModel fit(const std::vector<Document>& train_docs, std::size_t num_features,
                const TrainConfig& cfg) {
  FittedModel fm;
  fm.features = select_features(collect_stats(train_docs), num_features);
  std::vector<Example> data;
  data.reserve(train_docs.size());
  for (const auto& doc : train_docs) data.push_back(Example{vectorize(doc, fm.features), to_sign(*doc.label)});
  fm.model = train(data, fm.features.size(), cfg, fm.features.digest());
  return fm;
}

CvResult cross_validate(const LabeledDataset& dataset, const CvConfig& cfg) {
  const auto& docs = dataset.documents;
  std::vector<Stance> labels;
  labels.reserve(docs.size());
  for (const auto& d : docs) {
    if (!d.label) throw Error("cross_validate: unlabeled document " + d.tweet_id);
    labels.push_back(*d.label);
  }
  const auto folds = stratified_kfold(labels, cfg.folds, cfg.train.seed);

  FeatureSet leaky;
  if (cfg.leaky_selection) leaky = select_features(collect_stats(docs), cfg.num_features);

  CvResult result;
  result.predictions.resize(docs.size());
  for (const auto& fold : folds) {
    std::vector<Document> train_docs;
    train_docs.reserve(fold.train.size());
    for (std::size_t i : fold.train) train_docs.push_back(docs[i]);

    FittedModel fm;
    if (cfg.leaky_selection) {
      fm.features = leaky;
      std::vector<Example> data;
      for (const auto& doc : train_docs) data.push_back(Example{vectorize(doc, leaky), to_sign(*doc.label)});
      fm.model = train(data, leaky.size(), cfg.train, leaky.digest());
    } else {
      fm = fit(train_docs, cfg.num_features, cfg.train);
    }

    std::vector<GoldPred> pairs;
    for (std::size_t i : fold.test) {
      const auto pred = predict(fm.model, fm.features, docs[i]);
      result.predictions[i] = OutOfFold{i, labels[i], pred};
      pairs.emplace_back(labels[i], pred.stance);
    }
    result.per_fold.push_back(compute_metrics(pairs));
  }

  std::vector<GoldPred> pooled;
  pooled.reserve(docs.size());
  for (const auto& p : result.predictions) pooled.emplace_back(p.gold, p.pred.stance);
  result.metrics = compute_metrics(pooled);
  return result;
}

double gamma_of(std::size_t c_s, std::size_t c_o) {
  if (c_s + c_o == 0) throw std::invalid_argument("gamma undefined for a user without predictions");
  return static_cast<double>(std::max(c_s, c_o)) / static_cast<double>(c_s + c_o);
}

std::vector<UserVote> user_votes(std::span<const UserPrediction> predictions) {
  std::vector<UserVote> votes;
  std::unordered_map<std::string_view, std::size_t> position;
  for (const auto& p : predictions) {
    auto [it, fresh] = position.try_emplace(p.user_id, votes.size());
    if (fresh) votes.push_back(UserVote{p.user_id, 0, 0, 0.5});
    auto& v = votes[it->second];
    (p.stance == Stance::Supporting ? v.c_s : v.c_o) += 1;
  }
  for (auto& v : votes) v.gamma = gamma_of(v.c_s, v.c_o);
  return votes;
}

std::vector<UserPrediction> adjust(std::span<const UserPrediction> predictions, double gamma_min) {
  if (!(gamma_min >= 0.5 && gamma_min <= 1.0)) throw std::invalid_argument("gamma_min must be in [0.5, 1]");
  const auto votes = user_votes(predictions);
  std::unordered_map<std::string_view, const UserVote*> by_user;
  for (const auto& v : votes) by_user.emplace(v.user_id, &v);
  std::vector<UserPrediction> out(predictions.begin(), predictions.end());
  for (auto& p : out) {
    const UserVote& v = *by_user.at(p.user_id);
    if (v.c_s == v.c_o || v.gamma < gamma_min) continue;
    p.stance = v.c_s > v.c_o ? Stance::Supporting : Stance::Opposing;
  }
  return out;
}

MetricsReport adjusted_metrics(const LabeledDataset& dataset, const CvResult& cv, double gamma_min) {
  std::vector<UserPrediction> preds;
  preds.reserve(cv.predictions.size());
  for (const auto& p : cv.predictions) {
    const auto& doc = dataset.documents[p.doc];
    preds.push_back(UserPrediction{doc.user_id, doc.tweet_id, p.pred.stance});
  }
  const auto adjusted = adjust(preds, gamma_min);
  std::vector<GoldPred> pairs;
  pairs.reserve(adjusted.size());
  for (std::size_t i = 0; i < adjusted.size(); ++i) pairs.emplace_back(cv.predictions[i].gold, adjusted[i].stance);
  return compute_metrics(pairs);
}

namespace {

void check_axis_value(SweepAxis axis, double v) {
  switch (axis) {
    case SweepAxis::FeatureCount:
      if (!(v >= 1.0) || v != std::floor(v)) throw std::invalid_argument("feature counts must be positive integers");
      break;
    case SweepAxis::Wi:
      if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("wi values must be in (0, 1]");
      break;
    case SweepAxis::GammaMin:
      if (!(v >= 0.5 && v <= 1.0)) throw std::invalid_argument("gamma_min values must be in [0.5, 1]");
      break;
  }
}

}  // namespace

std::vector<SweepRow> sweep(const LabeledDataset& dataset, SweepAxis axis, std::vector<double> values,
                            const CvConfig& base) {
  if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
  for (double v : values) check_axis_value(axis, v);
  std::sort(values.begin(), values.end());

  std::vector<SweepRow> rows;
  if (axis == SweepAxis::GammaMin) {
    const auto cv = cross_validate(dataset, base);
    for (double g : values) rows.push_back(SweepRow{g, adjusted_metrics(dataset, cv, g)});
    return rows;
  }
  for (double v : values) {
    CvConfig cfg = base;
    if (axis == SweepAxis::FeatureCount) {
      cfg.num_features = static_cast<std::size_t>(v);
    } else {
      cfg.train.wi = v;
    }
    rows.push_back(SweepRow{v, cross_validate(dataset, cfg).metrics});
  }
  return rows;
}

std::string metrics_csv_header() { return "axis_value,class,precision,recall,f1,micro_f1,macro_f1\n"; }

std::string metrics_csv_rows(const std::string& axis_value, const MetricsReport& report) {
  std::string out;
  char buf[160];
  for (Stance s : kStances) {
    const auto& m = report.of(s);
    std::snprintf(buf, sizeof buf, ",%s,%.4f,%.4f,%.4f,%.4f,%.4f\n", std::string(to_string(s)).c_str(),
                  m.precision, m.recall, m.f1, report.micro_f1, report.macro_f1);
    out += axis_value;
    out += buf;
  }
  return out;
}

std::string format_axis_value(SweepAxis axis, double value) {
  char buf[64];
  if (axis == SweepAxis::FeatureCount) {
    std::snprintf(buf, sizeof buf, "%.0f", value);
  } else {
    std::snprintf(buf, sizeof buf, "%.4f", value);
  }
  return buf;
}

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows) {
  std::string out = metrics_csv_header();
  for (const auto& row : rows) out += metrics_csv_rows(format_axis_value(axis, row.value), row.metrics);
  return out;
}

}  // namespace stance
