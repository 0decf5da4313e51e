#include "stance/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "stance/error.hpp"
#include "stance/utf8.hpp"

namespace stance {

std::string predictions_tsv(const std::vector<PredictionRecord>& records) {
  std::string out;
  char margin[64];
  for (const auto& r : records) {
    std::snprintf(margin, sizeof margin, "%.6f", r.margin);
    out += r.tweet_id + '\t' + r.user_id + '\t' + format_timestamp(r.created_at) + '\t' +
           std::string(to_string(r.stance)) + '\t' + margin + '\n';
  }
  return out;
}

std::vector<PredictionRecord> parse_predictions_tsv(std::string_view text) {
  std::vector<PredictionRecord> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (utf8::trim(line).empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    for (auto tab = rest.find('\t'); tab != std::string_view::npos; tab = rest.find('\t')) {
      cells.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    cells.push_back(utf8::trim(rest));
    const auto bad = [&](const char* what) {
      return Error("predictions line " + std::to_string(line_no) + ": " + what);
    };
    if (cells.size() != 5) throw bad("expected 5 columns");
    const auto ts = parse_timestamp(cells[2]);
    if (!ts) throw bad("bad timestamp");
    const auto s = parse_stance(cells[3]);
    if (!s) throw bad("bad stance");
    PredictionRecord r{std::string(cells[0]), std::string(cells[1]), *ts, *s, 0.0};
    try {
      r.margin = std::stod(std::string(cells[4]));
    } catch (const std::exception&) {
      throw bad("bad margin");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PredictionRecord> adjust_records(const std::vector<PredictionRecord>& records, double gamma_min) {
  std::vector<UserPrediction> preds;
  preds.reserve(records.size());
  for (const auto& r : records) preds.push_back(UserPrediction{r.user_id, r.tweet_id, r.stance});
  const auto adjusted = adjust(preds, gamma_min);
  auto out = records;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].stance = adjusted[i].stance;
  return out;
}

namespace {

std::string month_label(std::chrono::year_month ym) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", static_cast<int>(ym.year()), static_cast<unsigned>(ym.month()));
  return buf;
}

std::string day_label(std::chrono::year_month_day d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

}  // namespace

std::vector<TimeBucket> timeseries(const std::vector<PredictionRecord>& records, Granularity g) {
  using namespace std::chrono;
  if (records.empty()) return {};
  // Bucket key: days since epoch of the bucket start.
  std::map<int, std::pair<std::size_t, std::size_t>> counts;
  const auto key_of = [g](Timestamp t) {
    const sys_days d = floor<days>(t);
    if (g == Granularity::Day) return static_cast<int>(d.time_since_epoch().count());
    const year_month_day ymd{d};
    return static_cast<int>(sys_days{ymd.year() / ymd.month() / 1}.time_since_epoch().count());
  };
  for (const auto& r : records) {
    auto& c = counts[key_of(r.created_at)];
    (r.stance == Stance::Supporting ? c.first : c.second) += 1;
  }
  std::vector<TimeBucket> out;
  const sys_days first{days{counts.begin()->first}};
  const sys_days last{days{counts.rbegin()->first}};
  if (g == Granularity::Day) {
    for (sys_days d = first; d <= last; d += days{1}) {
      const auto it = counts.find(static_cast<int>(d.time_since_epoch().count()));
      TimeBucket b{day_label(year_month_day{d}), 0, 0};
      if (it != counts.end()) std::tie(b.count_support, b.count_oppose) = it->second;
      out.push_back(std::move(b));
    }
  } else {
    const year_month_day f{first};
    const year_month_day l{last};
    for (year_month ym = f.year() / f.month(); ym <= l.year() / l.month(); ym += months{1}) {
      const auto it = counts.find(static_cast<int>(sys_days{ym / 1}.time_since_epoch().count()));
      TimeBucket b{month_label(ym), 0, 0};
      if (it != counts.end()) std::tie(b.count_support, b.count_oppose) = it->second;
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::string timeseries_csv(const std::vector<TimeBucket>& buckets) {
  std::string out = "period,count_support,count_oppose,log10_support,log10_oppose\n";
  const auto log_cell = [](std::size_t n) -> std::string {
    if (n == 0) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", std::log10(static_cast<double>(n)));
    return buf;
  };
  for (const auto& b : buckets) {
    out += b.period + ',' + std::to_string(b.count_support) + ',' + std::to_string(b.count_oppose) + ',' +
           log_cell(b.count_support) + ',' + log_cell(b.count_oppose) + '\n';
  }
  return out;
}

KeywordReport keyword_report(const FeatureSet& fs, std::size_t top_n) {
  KeywordReport report;
  for (const auto& t : fs.terms()) {
    auto& list = t.direction == Stance::Supporting ? report.support : report.oppose;
    if (list.size() < top_n) list.push_back(t);
  }
  // FeatureSet order is already score-descending; keep it stable for ties.
  const auto by_score = [](const ScoredTerm& a, const ScoredTerm& b) { return a.score > b.score; };
  std::stable_sort(report.support.begin(), report.support.end(), by_score);
  std::stable_sort(report.oppose.begin(), report.oppose.end(), by_score);
  return report;
}

std::string keyword_csv(const KeywordReport& report) {
  std::string out = "class,rank,term,score\n";
  char buf[64];
  const auto emit = [&](Stance s, const std::vector<ScoredTerm>& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6f", list[i].score);
      out += std::string(to_string(s)) + ',' + std::to_string(i + 1) + ',' + list[i].term + ',' + buf + '\n';
    }
  };
  emit(Stance::Supporting, report.support);
  emit(Stance::Opposing, report.oppose);
  return out;
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string line_chart_svg(std::string_view title, const std::vector<std::string>& x_labels,
                           const std::vector<ChartSeries>& series, std::string_view y_label) {
  constexpr double kWidth = 720, kHeight = 420;
  constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 60;
  constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double min_v = 0.0;
  double max_v = 1.0;
  bool any = false;
  for (const auto& s : series) {
    for (double v : s.values) {
      if (!std::isfinite(v)) continue;
      min_v = any ? std::min(min_v, v) : v;
      max_v = any ? std::max(max_v, v) : v;
      any = true;
    }
  }
  const double lo = std::min(0.0, min_v);
  double hi = any ? max_v : 1.0;
  if (hi <= lo) hi = lo + 1.0;

  const std::size_t n = x_labels.size();
  const auto x_at = [&](std::size_t i) { return kLeft + (n > 1 ? plot_w * i / (n - 1) : plot_w / 2); };
  const auto y_at = [&](double v) { return kTop + plot_h * (1.0 - (v - lo) / (hi - lo)); };

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\" font-size=\"12\">\n",
                kWidth, kHeight, kWidth, kHeight);
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">", kLeft + plot_w / 2);
  out += buf + xml_escape(title) + "</text>\n";

  // Axes.
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", kLeft,
                kTop, kLeft, kTop + plot_h);
  out += buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", kLeft,
                kTop + plot_h, kLeft + plot_w, kTop + plot_h);
  out += buf;
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%.3g</text>\n", kLeft - 6, y_at(v) + 4, v);
    out += buf;
  }
  const std::size_t label_step = n > 12 ? (n + 11) / 12 : 1;
  for (std::size_t i = 0; i < n; i += label_step) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">", x_at(i), kTop + plot_h + 18);
    out += buf + xml_escape(x_labels[i]) + "</text>\n";
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%.2f\" text-anchor=\"middle\" transform=\"rotate(-90 16 %.2f)\">",
                kTop + plot_h / 2, kTop + plot_h / 2);
  out += buf + xml_escape(y_label) + "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    std::string points;
    for (std::size_t i = 0; i < std::min(n, series[s].values.size()); ++i) {
      const double v = series[s].values[i];
      if (!std::isfinite(v)) continue;
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", points.empty() ? "" : " ", x_at(i), y_at(v));
      points += buf;
    }
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    const double ly = kTop + 14 + 20.0 * s;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"2\"/>\n",
                  kLeft + plot_w + 14, ly, kLeft + plot_w + 38, ly, color);
    out += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\">", kLeft + plot_w + 44, ly + 4);
    out += buf + xml_escape(series[s].name) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace stance
