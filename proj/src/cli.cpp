#include "stance/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stance/config.hpp"
#include "stance/corpus.hpp"
#include "stance/error.hpp"
#include "stance/evaluation.hpp"
#include "stance/features.hpp"
#include "stance/preprocess.hpp"
#include "stance/report.hpp"
#include "stance/supervision.hpp"
#include "stance/svm.hpp"
#include "stance/synth.hpp"
#include "stance/utf8.hpp"

namespace stance::cli {

namespace fs = std::filesystem;

std::vector<double> parse_values(std::string_view spec) {
  const auto number = [&](std::string_view s) {
    s = utf8::trim(s);
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(s), &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error("bad value list '" + std::string(spec) + "'");
  };
  std::vector<double> out;
  if (const auto dots = spec.find(".."); dots != std::string_view::npos) {
    const auto colon = spec.find(':', dots);
    if (colon == std::string_view::npos) throw Error("range needs a step: a..b:step");
    const double lo = number(spec.substr(0, dots));
    const double hi = number(spec.substr(dots + 2, colon - dots - 2));
    const double step = number(spec.substr(colon + 1));
    if (!(step > 0.0) || hi < lo) throw Error("bad range '" + std::string(spec) + "'");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) {
      // Rounded so that 0.1 + 2 * 0.1 prints and compares as 0.3.
      out.push_back(std::round((lo + step * static_cast<double>(i)) * 1e10) / 1e10);
    }
    return out;
  }
  std::string_view rest = spec;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(number(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

namespace {

struct Context {
  PipelineConfig cfg;
  bool print = false;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << body;
  if (!out) throw Error("write failed for " + path.string());
}

// CSV outputs are echoed to stdout in --print mode.
void write_csv(const Context& ctx, const fs::path& path, const std::string& body) {
  write_file(path, body);
  if (ctx.print) std::cout << body;
}

void warn_all(const MetricsReport& report) {
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
}

fs::path svg_path_for(const fs::path& csv, const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  fs::path p = csv;
  p.replace_extension(".svg");
  return p;
}

SweepAxis parse_axis(const std::string& axis) {
  if (axis == "k") return SweepAxis::FeatureCount;
  if (axis == "wi") return SweepAxis::Wi;
  if (axis == "gamma") return SweepAxis::GammaMin;
  throw Error("unknown axis '" + axis + "'");
}

std::string sweep_svg(SweepAxis axis, const std::vector<SweepRow>& rows) {
  std::vector<std::string> labels;
  ChartSeries sup{"F1 support", {}};
  ChartSeries opp{"F1 oppose", {}};
  ChartSeries micro{"micro-F1", {}};
  for (const auto& r : rows) {
    labels.push_back(format_axis_value(axis, r.value));
    sup.values.push_back(r.metrics.of(Stance::Supporting).f1);
    opp.values.push_back(r.metrics.of(Stance::Opposing).f1);
    micro.values.push_back(r.metrics.micro_f1);
  }
  const char* name = axis == SweepAxis::FeatureCount ? "feature count" : axis == SweepAxis::Wi ? "wi" : "gamma_min";
  return line_chart_svg(std::string("F1 vs ") + name, labels, {sup, opp, micro}, "F1");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Stance classification pipeline for topic-tagged microblog users", "stance"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> overrides;
  Context ctx;
  std::optional<std::size_t> k_opt, folds_opt;
  std::optional<double> c_opt, wi_opt, gamma_opt;
  std::optional<std::uint64_t> seed_opt;
  bool leaky = false;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--set", overrides, "override a config key (key=value), repeatable");
  app.add_flag("--print", ctx.print, "also write CSV output to stdout");
  app.add_option("--K", k_opt, "number of selected features");
  app.add_option("--C", c_opt, "SVM cost");
  app.add_option("--wi", wi_opt, "cost multiplier of supporting examples");
  app.add_option("--gamma-min", gamma_opt, "consistency threshold for adjustment");
  app.add_option("--folds", folds_opt, "cross-validation folds");
  app.add_option("--seed", seed_opt, "random seed");
  app.add_flag("--leaky-selection", leaky, "select features on the whole dataset in cv");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  std::string synth_dir;
  SynthConfig synth_cfg;
  synth->add_option("--out-dir", synth_dir, "output directory")->required();
  synth->add_option("--users-pos", synth_cfg.n_users_pos);
  synth->add_option("--users-neg", synth_cfg.n_users_neg);
  synth->add_option("--tweets-min", synth_cfg.tweets_min);
  synth->add_option("--tweets-max", synth_cfg.tweets_max);
  synth->add_option("--signal", synth_cfg.signal_strength);
  synth->add_option("--tag-noise", synth_cfg.tag_noise);
  synth->add_option("--label-noise", synth_cfg.label_noise);
  synth->add_option("--months", synth_cfg.months);

  auto* prep = app.add_subcommand("prep", "flatten and preprocess tweets into documents");
  std::string tweets_path, docs_out;
  prep->add_option("--tweets", tweets_path)->required();
  prep->add_option("--out", docs_out)->required();

  auto* label = app.add_subcommand("label", "topic-filter documents and label them from user tags");
  std::string docs_path, users_path, labeled_out, remainder_out;
  label->add_option("--docs", docs_path)->required();
  label->add_option("--users", users_path)->required();
  label->add_option("--out", labeled_out)->required();
  label->add_option("--remainder", remainder_out)->required();

  auto* train_cmd = app.add_subcommand("train", "select features and train the SVM");
  std::string labeled_path, model_path, features_path;
  train_cmd->add_option("--labeled", labeled_path)->required();
  train_cmd->add_option("--model", model_path)->required();
  train_cmd->add_option("--features", features_path)->required();

  auto* cv = app.add_subcommand("cv", "stratified cross-validation");
  std::string csv_out, oof_out;
  cv->add_option("--labeled", labeled_path)->required();
  cv->add_option("--out", csv_out)->required();
  cv->add_option("--predictions", oof_out, "write out-of-fold predictions");

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep over k, wi or gamma");
  std::string axis_name, values_spec, svg_out;
  sweep_cmd->add_option("--axis", axis_name)->required()->check(CLI::IsMember({"k", "wi", "gamma"}));
  sweep_cmd->add_option("--values", values_spec, "a..b:step or comma list")->required();
  sweep_cmd->add_option("--labeled", labeled_path)->required();
  sweep_cmd->add_option("--out", csv_out)->required();
  sweep_cmd->add_option("--svg", svg_out, "chart path (default: --out with .svg)");

  auto* predict_cmd = app.add_subcommand("predict", "classify documents");
  std::string predictions_out;
  predict_cmd->add_option("--model", model_path)->required();
  predict_cmd->add_option("--features", features_path)->required();
  predict_cmd->add_option("--docs", docs_path)->required();
  predict_cmd->add_option("--out", predictions_out)->required();

  auto* adjust_cmd = app.add_subcommand("adjust", "per-user majority adjustment of predictions");
  std::string predictions_path;
  adjust_cmd->add_option("--predictions", predictions_path)->required();
  adjust_cmd->add_option("--out", predictions_out)->required();

  auto* ts_cmd = app.add_subcommand("report-timeseries", "class counts per month or day");
  std::string granularity = "month";
  bool log_chart = false;
  ts_cmd->add_option("--predictions", predictions_path)->required();
  ts_cmd->add_option("--out", csv_out)->required();
  ts_cmd->add_option("--granularity", granularity)->check(CLI::IsMember({"month", "day"}));
  ts_cmd->add_option("--svg", svg_out, "chart path (default: --out with .svg)");
  ts_cmd->add_flag("--log", log_chart, "chart log10 counts");

  auto* kw_cmd = app.add_subcommand("report-keywords", "top chi-square terms per class");
  std::size_t top_n = 10;
  kw_cmd->add_option("--features", features_path)->required();
  kw_cmd->add_option("--out", csv_out)->required();
  kw_cmd->add_option("--top-n", top_n);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "stance: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (!config_path.empty()) ctx.cfg = load_config(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error("--set expects key=value");
      ctx.cfg.set(utf8::trim(std::string_view(kv).substr(0, eq)), utf8::trim(std::string_view(kv).substr(eq + 1)));
    }
    if (k_opt) ctx.cfg.num_features = *k_opt;
    if (c_opt) ctx.cfg.C = *c_opt;
    if (wi_opt) ctx.cfg.wi = *wi_opt;
    if (gamma_opt) ctx.cfg.gamma_min = *gamma_opt;
    if (folds_opt) ctx.cfg.k_folds = *folds_opt;
    if (seed_opt) ctx.cfg.seed = *seed_opt;
    if (leaky) ctx.cfg.leaky_selection = true;
    ctx.cfg.validate();
    const auto& cfg = ctx.cfg;

    if (synth->parsed()) {
      synth_cfg.seed = cfg.seed;
      const auto corpus = generate(synth_cfg, load_char_map(cfg.resources.char_map));
      write_synth(synth_dir, corpus);
      std::cerr << "synth: " << corpus.users.size() << " user records, " << corpus.tweets.size()
                << " tweets, " << corpus.gold.size() << " posts after splitting\n";
    } else if (prep->parsed()) {
      const auto loaded = load_tweets(tweets_path);
      const auto split = split_retweets(loaded.records);
      const auto resources = Resources::load(cfg.resources);
      std::vector<Document> docs;
      for (const auto& t : split.tweets) {
        if (auto doc = preprocess_tweet(t, resources)) docs.push_back(std::move(*doc));
      }
      save_documents(docs_out, docs);
      std::cerr << "prep: " << loaded.skipped << " malformed lines skipped, " << split.rejected
                << " records rejected, " << split.tweets.size() << " posts, " << docs.size()
                << " documents\n";
    } else if (label->parsed()) {
      const auto resources = Resources::load(cfg.resources);
      const auto users = load_users(users_path);
      const auto docs = filter_topic(load_documents(docs_path), resources.terminology);
      const auto result = label_corpus(docs, users.records, resources.tags);
      save_documents(labeled_out, result.labeled.documents);
      save_documents(remainder_out, result.remainder);
      std::cerr << "label: " << docs.size() << " on-topic documents, "
                << result.labeled.count(Stance::Supporting) << " support, "
                << result.labeled.count(Stance::Opposing) << " oppose, " << result.remainder.size()
                << " unlabeled\n";
    } else if (train_cmd->parsed()) {
      const auto dataset = dataset_from_documents(load_documents(labeled_path));
      const auto fitted = fit(dataset.documents, cfg.num_features, cfg.train_config());
      save_features(features_path, fitted.features);
      save_model(model_path, fitted.model);
      std::cerr << "train: " << fitted.features.size() << " features, " << fitted.model.meta.epochs
                << " epochs\n";
    } else if (cv->parsed()) {
      const auto dataset = dataset_from_documents(load_documents(labeled_path));
      const auto result = cross_validate(dataset, cfg.cv_config());
      const auto adjusted = adjusted_metrics(dataset, result, cfg.gamma_min);
      warn_all(result.metrics);
      write_csv(ctx, csv_out,
                metrics_csv_header() + metrics_csv_rows("raw", result.metrics) +
                    metrics_csv_rows("adjusted", adjusted));
      if (!oof_out.empty()) {
        std::vector<PredictionRecord> records;
        for (const auto& p : result.predictions) {
          const auto& d = dataset.documents[p.doc];
          records.push_back(PredictionRecord{d.tweet_id, d.user_id, d.created_at, p.pred.stance, p.pred.margin});
        }
        write_file(oof_out, predictions_tsv(records));
      }
    } else if (sweep_cmd->parsed()) {
      const auto axis = parse_axis(axis_name);
      const auto dataset = dataset_from_documents(load_documents(labeled_path));
      std::vector<SweepRow> rows;
      try {
        rows = sweep(dataset, axis, parse_values(values_spec), cfg.cv_config());
      } catch (const std::invalid_argument& e) {
        throw Error(e.what());
      }
      write_csv(ctx, csv_out, sweep_csv(axis, rows));
      write_file(svg_path_for(csv_out, svg_out), sweep_svg(axis, rows));
    } else if (predict_cmd->parsed()) {
      const auto model = load_model(model_path);
      const auto features = load_features(features_path);
      std::vector<PredictionRecord> records;
      for (const auto& doc : load_documents(docs_path)) {
        const auto p = predict(model, features, doc);
        records.push_back(PredictionRecord{doc.tweet_id, doc.user_id, doc.created_at, p.stance, p.margin});
      }
      write_file(predictions_out, predictions_tsv(records));
    } else if (adjust_cmd->parsed()) {
      const auto records = parse_predictions_tsv(read_file(predictions_path));
      write_file(predictions_out, predictions_tsv(adjust_records(records, cfg.gamma_min)));
    } else if (ts_cmd->parsed()) {
      const auto records = parse_predictions_tsv(read_file(predictions_path));
      const auto buckets = timeseries(records, granularity == "day" ? Granularity::Day : Granularity::Month);
      write_csv(ctx, csv_out, timeseries_csv(buckets));
      std::vector<std::string> labels;
      ChartSeries sup{"support", {}};
      ChartSeries opp{"oppose", {}};
      const auto value = [&](std::size_t n) {
        if (!log_chart) return static_cast<double>(n);
        return n == 0 ? std::nan("") : std::log10(static_cast<double>(n));
      };
      for (const auto& b : buckets) {
        labels.push_back(b.period);
        sup.values.push_back(value(b.count_support));
        opp.values.push_back(value(b.count_oppose));
      }
      write_file(svg_path_for(csv_out, svg_out),
                 line_chart_svg("Tweets per " + granularity, labels, {sup, opp}, log_chart ? "log10 tweets" : "tweets"));
    } else if (kw_cmd->parsed()) {
      const auto features = load_features(features_path);
      if (features.size() == 0) throw Error("feature file is empty");
      write_csv(ctx, csv_out, keyword_csv(keyword_report(features, top_n)));
    }
  } catch (const std::exception& e) {
    std::cerr << "stance: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace stance::cli
